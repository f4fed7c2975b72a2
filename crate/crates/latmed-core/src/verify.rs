//! Property-verification campaigns over enumerated and constructed lattices.

use crate::construct::{figure1, product, Lnk};
use crate::enumerate::enumerate_lattices;
use crate::lattice::Lattice;
use crate::median::{breadth, check_c1_property, median_set, remoteness, remoteness_row, Profile};
use itertools::Itertools;
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("size {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// One failed check, tied to the lattice and profile that produced it.
/// Rechecking is always possible by running `median_set` on the named
/// lattice with the recorded profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub lattice: String,
    pub profile: Vec<usize>,
    pub witness: usize,
    pub detail: String,
}

/// Aggregate outcome of one verification campaign.
#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub family: String,
    pub examined: usize,
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub max_size: usize,
    pub k_max: usize,
}

impl fmt::Display for CampaignResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {}", self.family)?;
        writeln!(
            f,
            "parameters: max-size {}, max-k {}",
            self.max_size, self.k_max
        )?;
        writeln!(f, "examined: {}", self.examined)?;
        writeln!(f, "holds: {}", self.holds)?;
        writeln!(f, "fails: {}", self.fails)?;
        writeln!(f, "skipped: {}", self.skipped)?;
        if self.violations.is_empty() {
            write!(f, "no violation up to kMax={}", self.k_max)
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(
                    f,
                    "violation: lattice {} profile ({}) witness {} ({})",
                    v.lattice,
                    v.profile.iter().join(", "),
                    v.witness,
                    v.detail
                )?;
            }
            Ok(())
        }
    }
}

fn lattice_label(l: &Lattice) -> String {
    l.name().unwrap_or("unnamed").to_string()
}

/// Checks that every enumerated semimodular lattice of breadth at most two
/// passes the bounded c1-median scan. Lattices outside that family are
/// tallied as skipped.
pub fn verify_theorem_a(max_n: usize, k_max: usize) -> Result<CampaignResult, HarnessError> {
    let mut pool = Vec::new();
    for n in 1..=max_n {
        pool.extend(enumerate_lattices(n)?);
    }
    let outcomes: Vec<Option<Option<Violation>>> = pool
        .par_iter()
        .map(|l| {
            if !(l.is_semimodular() && breadth(l) <= 2) {
                return None;
            }
            let report = check_c1_property(l, k_max);
            Some(report.violation.map(|v| Violation {
                lattice: lattice_label(l),
                profile: v.profile,
                witness: v.median,
                detail: "a median escapes the profile join".to_string(),
            }))
        })
        .collect();
    let mut result = CampaignResult {
        family: format!(
            "semimodular lattices of breadth at most 2 among all lattices with at most {max_n} elements"
        ),
        examined: pool.len(),
        holds: 0,
        fails: 0,
        skipped: 0,
        violations: Vec::new(),
        max_size: max_n,
        k_max,
    };
    for outcome in outcomes {
        match outcome {
            None => result.skipped += 1,
            Some(None) => result.holds += 1,
            Some(Some(v)) => {
                result.fails += 1;
                result.violations.push(v);
            }
        }
    }
    Ok(result)
}

/// First violated two-entry or majority-split invariant on one semimodular
/// lattice, scanning profiles of size 1..=k_max.
fn lemma_violation(l: &Lattice, k_max: usize) -> Option<Violation> {
    let n = l.n();
    for size in 1..=k_max {
        for entries in (0..n).combinations_with_replacement(size) {
            let row = remoteness_row(l, &entries);
            let min = *row.iter().min().expect("lattice is nonempty");
            let join = l.join_all(entries.iter().copied());
            if size == 2 {
                if let Some(m) = (0..n).find(|&y| row[y] == min && !l.leq(y, join)) {
                    return Some(Violation {
                        lattice: lattice_label(l),
                        profile: entries,
                        witness: m,
                        detail: "a two-entry profile has a median above neither entry's join"
                            .to_string(),
                    });
                }
            }
            for (z, &r) in row.iter().enumerate() {
                if l.leq(z, join) || r != min {
                    continue;
                }
                let below = entries.iter().filter(|&&x| l.lt(x, z)).count();
                let parallel = entries.len() - below;
                if parallel <= below {
                    return Some(Violation {
                        lattice: lattice_label(l),
                        profile: entries,
                        witness: z,
                        detail: format!(
                            "median escapes the profile join although only {parallel} entries are incomparable and {below} lie below it"
                        ),
                    });
                }
            }
        }
    }
    None
}

/// Checks the two-entry median bound and the majority-split exclusion on
/// every enumerated semimodular lattice; non-semimodular lattices are
/// skipped.
pub fn verify_lemmas(max_n: usize, k_max: usize) -> Result<CampaignResult, HarnessError> {
    let mut pool = Vec::new();
    for n in 1..=max_n {
        pool.extend(enumerate_lattices(n)?);
    }
    let outcomes: Vec<Option<Option<Violation>>> = pool
        .par_iter()
        .map(|l| {
            if !l.is_semimodular() {
                return None;
            }
            Some(lemma_violation(l, k_max.max(2)))
        })
        .collect();
    let mut result = CampaignResult {
        family: format!("semimodular lattices among all lattices with at most {max_n} elements"),
        examined: pool.len(),
        holds: 0,
        fails: 0,
        skipped: 0,
        violations: Vec::new(),
        max_size: max_n,
        k_max,
    };
    for outcome in outcomes {
        match outcome {
            None => result.skipped += 1,
            Some(None) => result.holds += 1,
            Some(Some(v)) => {
                result.fails += 1;
                result.violations.push(v);
            }
        }
    }
    Ok(result)
}

/// Sample parameters for the product-law campaign.
#[derive(Clone, Debug)]
pub struct ProductSampleSpec {
    /// Enumerated factors range over 2..=max_factor_size elements.
    pub max_factor_size: usize,
    /// Number of factor pairs taken from the sample order.
    pub pair_count: usize,
    pub k_max: usize,
}

impl Default for ProductSampleSpec {
    fn default() -> Self {
        ProductSampleSpec {
            max_factor_size: 5,
            pair_count: 24,
            k_max: 3,
        }
    }
}

fn product_pair_violation(a: &Lattice, b: &Lattice, k_max: usize) -> Option<Violation> {
    let prod = product(&[a.clone(), b.clone()]).expect("sampled products stay small");
    let l = prod.lattice();
    let label = lattice_label(l);

    for x in 0..l.n() {
        let cx = prod.decode(x);
        for y in 0..l.n() {
            let cy = prod.decode(y);
            let split = a.distance(cx[0], cy[0]) + b.distance(cx[1], cy[1]);
            if l.distance(x, y) != split {
                return Some(Violation {
                    lattice: label,
                    profile: vec![x, y],
                    witness: x,
                    detail: format!(
                        "distance {} differs from the coordinate sum {split}",
                        l.distance(x, y)
                    ),
                });
            }
        }
    }

    let (ba, bb, bp) = (breadth(a), breadth(b), breadth(l));
    if bp != ba + bb {
        return Some(Violation {
            lattice: label,
            profile: vec![],
            witness: l.bottom(),
            detail: format!("breadth {bp} differs from the factor sum {ba}+{bb}"),
        });
    }

    let factors_hold = check_c1_property(a, k_max).holds() && check_c1_property(b, k_max).holds();
    for size in 1..=k_max {
        for entries in (0..l.n()).combinations_with_replacement(size) {
            let profile = Profile::new(entries.clone(), l).expect("entries are in range");
            let report = median_set(l, &profile);
            if factors_hold {
                if let Some(m) = report.violation {
                    return Some(Violation {
                        lattice: label,
                        profile: entries,
                        witness: m,
                        detail: "product of clean factors has a median escaping the profile join"
                            .to_string(),
                    });
                }
            }
            let pa = Profile::new(entries.iter().map(|&x| prod.decode(x)[0]).collect(), a)
                .expect("coordinates are in range");
            let pb = Profile::new(entries.iter().map(|&x| prod.decode(x)[1]).collect(), b)
                .expect("coordinates are in range");
            let ma = median_set(a, &pa).medians;
            let mb = median_set(b, &pb).medians;
            for &m in &report.medians {
                let cm = prod.decode(m);
                if ma.binary_search(&cm[0]).is_err() || mb.binary_search(&cm[1]).is_err() {
                    return Some(Violation {
                        lattice: label,
                        profile: entries,
                        witness: m,
                        detail: "a product median does not project to factor medians".to_string(),
                    });
                }
            }
        }
    }
    None
}

/// Checks distance additivity, breadth additivity, componentwise median
/// membership, and preservation of the bounded c1 property on a
/// deterministic sample of factor pairs: all unordered pairs, in
/// enumeration order, from the enumerated lattices with 2..=max_factor_size
/// elements plus the nine-element fixture.
pub fn verify_product_laws(spec: &ProductSampleSpec) -> Result<CampaignResult, HarnessError> {
    let mut pool = Vec::new();
    for n in 2..=spec.max_factor_size {
        pool.extend(enumerate_lattices(n)?);
    }
    pool.push(figure1());
    let mut pairs = Vec::new();
    'outer: for i in 0..pool.len() {
        for j in i..pool.len() {
            if pairs.len() == spec.pair_count {
                break 'outer;
            }
            pairs.push((i, j));
        }
    }
    let outcomes: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(i, j)| product_pair_violation(&pool[i], &pool[j], spec.k_max))
        .collect();
    let mut result = CampaignResult {
        family: format!(
            "direct products of {} sampled factor pairs (factors up to {} elements)",
            pairs.len(),
            spec.max_factor_size.max(9)
        ),
        examined: pairs.len(),
        holds: 0,
        fails: 0,
        skipped: 0,
        violations: Vec::new(),
        max_size: spec.max_factor_size,
        k_max: spec.k_max,
    };
    for outcome in outcomes {
        match outcome {
            None => result.holds += 1,
            Some(v) => {
                result.fails += 1;
                result.violations.push(v);
            }
        }
    }
    Ok(result)
}

/// Human-readable dossier for one profile on one lattice: the profile, its
/// join, remoteness extremes, the median set, each median's comparability
/// with the join, the majority bounds, and, when the L(n,k) context is
/// supplied, the closed-form remoteness cross-check.
pub fn counterexample_report(lattice: &Lattice, profile: &Profile, lnk: Option<&Lnk>) -> String {
    use std::fmt::Write;

    let report = median_set(lattice, profile);
    let mut out = String::new();
    writeln!(
        out,
        "lattice: {}, {} elements",
        lattice_label(lattice),
        lattice.n()
    )
    .unwrap();
    writeln!(out, "profile: ({})", profile.entries().iter().join(", ")).unwrap();
    writeln!(out, "c1: {}", report.c1).unwrap();
    let max = *report.remoteness.iter().max().expect("lattice is nonempty");
    let argmax = report
        .remoteness
        .iter()
        .position(|&r| r == max)
        .expect("maximum is attained");
    writeln!(
        out,
        "remoteness: min {} (at {}), max {} (at {})",
        report.min_remoteness, report.medians[0], max, argmax
    )
    .unwrap();
    writeln!(out, "medians: ({})", report.medians.iter().join(", ")).unwrap();
    for &m in &report.medians {
        let rel = if lattice.leq(m, report.c1) {
            "below c1"
        } else {
            "not below c1"
        };
        writeln!(out, "median {m}: {rel}").unwrap();
    }
    writeln!(out, "m-lower: {}", report.m_lower).unwrap();
    writeln!(out, "m-upper: {}", report.m_upper).unwrap();
    match report.violation {
        Some(m) => writeln!(out, "verdict: violation, median {m} is not below c1").unwrap(),
        None => writeln!(out, "verdict: every median is below c1").unwrap(),
    }
    if let Some(lnk) = lnk {
        let mismatch = (0..lattice.n())
            .find(|&y| lnk.closed_form_remoteness(y) != remoteness(lattice, y, profile));
        match mismatch {
            None => writeln!(
                out,
                "closed-form remoteness: agrees with the graph metric at all {} elements",
                lattice.n()
            )
            .unwrap(),
            Some(y) => writeln!(
                out,
                "closed-form remoteness: disagrees at element {y}: formula {}, metric {}",
                lnk.closed_form_remoteness(y),
                remoteness(lattice, y, profile)
            )
            .unwrap(),
        }
        writeln!(
            out,
            "designated z: {} with remoteness {}",
            lnk.z,
            remoteness(lattice, lnk.z, profile)
        )
        .unwrap();
    }
    out
}
