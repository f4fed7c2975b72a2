//! Remoteness, median sets, majority bounds, and breadth.

use crate::lattice::Lattice;
use itertools::Itertools;
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MedianError {
    #[error("a profile needs at least one entry")]
    EmptyProfile,
    #[error("element index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("precondition failed: element {z} lies below the join of the profile")]
    ZBelowC1 { z: usize },
}

/// An ordered tuple of element indices, repetition allowed. Every derived
/// quantity depends only on the underlying multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    entries: Vec<usize>,
}

impl Profile {
    pub fn new(entries: Vec<usize>, lattice: &Lattice) -> Result<Profile, MedianError> {
        if entries.is_empty() {
            return Err(MedianError::EmptyProfile);
        }
        let n = lattice.n();
        for &index in &entries {
            if index >= n {
                return Err(MedianError::IndexOutOfRange { index, n });
            }
        }
        Ok(Profile { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }
}

/// Everything the median procedure yields for one profile.
#[derive(Clone, Debug)]
pub struct MedianReport {
    pub profile: Profile,
    /// Remoteness of every element, indexed by element.
    pub remoteness: Vec<usize>,
    pub min_remoteness: usize,
    /// All elements attaining the minimum remoteness, ascending.
    pub medians: Vec<usize>,
    /// Join of the profile.
    pub c1: usize,
    /// Join of majority meets.
    pub m_lower: usize,
    /// Meet of majority joins.
    pub m_upper: usize,
    /// Smallest median that is not below `c1`, if any.
    pub violation: Option<usize>,
}

/// Positions of a profile split by how their entries compare with a
/// designated element `z` that is not below the join of the profile:
/// incomparable entries land in `parallel`, entries strictly under `z` in
/// `below`. Together they cover every position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBPartition {
    pub z: usize,
    pub parallel: Vec<usize>,
    pub below: Vec<usize>,
}

/// Join of the profile entries.
pub fn c1(lattice: &Lattice, profile: &Profile) -> usize {
    lattice.join_all(profile.entries().iter().copied())
}

/// Sum of covering-graph distances from `y` to the profile entries.
pub fn remoteness(lattice: &Lattice, y: usize, profile: &Profile) -> usize {
    profile
        .entries()
        .iter()
        .map(|&x| lattice.distance(y, x))
        .sum()
}

pub(crate) fn remoteness_row(lattice: &Lattice, entries: &[usize]) -> Vec<usize> {
    let mut row = vec![0usize; lattice.n()];
    for &x in entries {
        for (y, r) in row.iter_mut().enumerate() {
            *r += lattice.distance(x, y);
        }
    }
    row
}

/// Exhaustive argmin of remoteness over all elements, with the majority
/// bounds and the violation witness filled in.
pub fn median_set(lattice: &Lattice, profile: &Profile) -> MedianReport {
    let remoteness = remoteness_row(lattice, profile.entries());
    let min_remoteness = *remoteness.iter().min().expect("lattice is nonempty");
    let medians: Vec<usize> = (0..lattice.n())
        .filter(|&y| remoteness[y] == min_remoteness)
        .collect();
    let c1 = c1(lattice, profile);
    let violation = medians.iter().copied().find(|&y| !lattice.leq(y, c1));
    MedianReport {
        profile: profile.clone(),
        remoteness,
        min_remoteness,
        medians,
        c1,
        m_lower: m_lower(lattice, profile),
        m_upper: m_upper(lattice, profile),
        violation,
    }
}

fn majority(k: usize) -> usize {
    k / 2 + 1
}

/// Join of the meets of all strict-majority subsets of the profile.
pub fn m_lower(lattice: &Lattice, profile: &Profile) -> usize {
    let entries = profile.entries();
    // meets of supersets only shrink, so minimum-size majorities suffice
    let meets = entries
        .iter()
        .combinations(majority(entries.len()))
        .map(|subset| lattice.meet_all(subset.into_iter().copied()));
    lattice.join_all(meets)
}

/// Meet of the joins of all strict-majority subsets of the profile.
pub fn m_upper(lattice: &Lattice, profile: &Profile) -> usize {
    let entries = profile.entries();
    let joins = entries
        .iter()
        .combinations(majority(entries.len()))
        .map(|subset| lattice.join_all(subset.into_iter().copied()));
    lattice.meet_all(joins)
}

/// Splits the profile positions against `z`, which must not lie below the
/// join of the profile.
pub fn pb_partition(
    lattice: &Lattice,
    profile: &Profile,
    z: usize,
) -> Result<PBPartition, MedianError> {
    if z >= lattice.n() {
        return Err(MedianError::IndexOutOfRange {
            index: z,
            n: lattice.n(),
        });
    }
    if lattice.leq(z, c1(lattice, profile)) {
        return Err(MedianError::ZBelowC1 { z });
    }
    let mut parallel = Vec::new();
    let mut below = Vec::new();
    for (i, &x) in profile.entries().iter().enumerate() {
        if lattice.lt(x, z) {
            below.push(i);
        } else {
            debug_assert!(lattice.parallel(x, z));
            parallel.push(i);
        }
    }
    Ok(PBPartition { z, parallel, below })
}

/// One offending profile found by [`check_c1_property`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Violation {
    /// Profile entries in non-decreasing order.
    pub profile: Vec<usize>,
    /// Smallest median not below the profile join.
    pub median: usize,
    /// Join of the profile.
    pub c1: usize,
}

/// Outcome of the bounded c1-median check. A `None` violation certifies
/// nothing beyond profiles of size `k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1CheckReport {
    pub k_max: usize,
    pub violation: Option<C1Violation>,
}

impl C1CheckReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for C1CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "no violation up to kMax={}", self.k_max),
            Some(v) => write!(
                f,
                "violation for profile ({}): median {} is not below the profile join {}",
                v.profile.iter().join(", "),
                v.median,
                v.c1
            ),
        }
    }
}

/// Scans every profile multiset of size 1..=k_max for a median that escapes
/// the profile join. Sizes are scanned in ascending order and each size in
/// lexicographic order; the first violation is returned, so the witness is
/// reproducible regardless of worker count.
pub fn check_c1_property(lattice: &Lattice, k_max: usize) -> C1CheckReport {
    for size in 1..=k_max {
        let found = (0..lattice.n()).into_par_iter().find_map_first(|x0| {
            let mut entries = vec![x0];
            let mut row = vec![0usize; lattice.n()];
            for (y, r) in row.iter_mut().enumerate() {
                *r += lattice.distance(x0, y);
            }
            scan_profiles(lattice, size, &mut entries, x0, &mut row)
        });
        if let Some(violation) = found {
            return C1CheckReport {
                k_max,
                violation: Some(violation),
            };
        }
    }
    C1CheckReport {
        k_max,
        violation: None,
    }
}

fn scan_profiles(
    lattice: &Lattice,
    size: usize,
    entries: &mut Vec<usize>,
    min_next: usize,
    row: &mut [usize],
) -> Option<C1Violation> {
    if entries.len() == size {
        let min = *row.iter().min().expect("lattice is nonempty");
        let c1 = lattice.join_all(entries.iter().copied());
        let median = (0..lattice.n()).find(|&y| row[y] == min && !lattice.leq(y, c1))?;
        return Some(C1Violation {
            profile: entries.clone(),
            median,
            c1,
        });
    }
    for x in min_next..lattice.n() {
        entries.push(x);
        for (y, r) in row.iter_mut().enumerate() {
            *r += lattice.distance(x, y);
        }
        let found = scan_profiles(lattice, size, entries, x, row);
        entries.pop();
        for (y, r) in row.iter_mut().enumerate() {
            *r -= lattice.distance(x, y);
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Maximum size of an irredundant join, searched over join-irreducible
/// elements; the singleton lattice has breadth 0.
pub fn breadth(lattice: &Lattice) -> usize {
    let cands = lattice.join_irreducibles();
    let cap = cands.len();
    max_irredundant(lattice, &cands, cap)
}

/// Maximum size, up to `size_cap`, of an irredundant join over arbitrary
/// element subsets. Agrees with [`breadth`] whenever the true breadth is at
/// most `size_cap`.
pub fn breadth_bruteforce(lattice: &Lattice, size_cap: usize) -> usize {
    let cands: Vec<usize> = (0..lattice.n()).collect();
    max_irredundant(lattice, &cands, size_cap)
}

fn max_irredundant(lattice: &Lattice, cands: &[usize], cap: usize) -> usize {
    let mut best = 0;
    grow_irredundant(lattice, cands, 0, lattice.bottom(), &[], cap, &mut best);
    best
}

fn grow_irredundant(
    lattice: &Lattice,
    cands: &[usize],
    from: usize,
    full: usize,
    drop_joins: &[usize],
    cap: usize,
    best: &mut usize,
) {
    *best = (*best).max(drop_joins.len());
    if drop_joins.len() >= cap {
        return;
    }
    for pos in from..cands.len() {
        let t = cands[pos];
        let grown = lattice.join(full, t);
        if grown == full {
            continue;
        }
        let mut next = Vec::with_capacity(drop_joins.len() + 1);
        for &d in drop_joins {
            let with_t = lattice.join(d, t);
            if with_t == grown {
                next.clear();
                break;
            }
            next.push(with_t);
        }
        if next.len() == drop_joins.len() {
            next.push(full);
            grow_irredundant(lattice, cands, pos + 1, grown, &next, cap, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean, build_gk, build_lnk, chain, figure1};
    use crate::lattice::Lattice;

    fn profile(l: &Lattice, entries: &[usize]) -> Profile {
        Profile::new(entries.to_vec(), l).unwrap()
    }

    #[test]
    fn profile_validation() {
        let c = chain(3);
        assert_eq!(
            Profile::new(vec![], &c).unwrap_err(),
            MedianError::EmptyProfile
        );
        assert_eq!(
            Profile::new(vec![0, 7], &c).unwrap_err(),
            MedianError::IndexOutOfRange { index: 7, n: 3 }
        );
    }

    #[test]
    fn singleton_profile_is_its_own_median() {
        let b = boolean(2);
        let p = profile(&b, &[2]);
        let report = median_set(&b, &p);
        assert_eq!(report.medians, vec![2]);
        assert_eq!(report.min_remoteness, 0);
        assert_eq!(report.c1, 2);
        assert_eq!(report.m_lower, 2);
        assert_eq!(report.m_upper, 2);
        assert_eq!(report.violation, None);
    }

    #[test]
    fn chain_medians_are_middle_elements() {
        let c = chain(3);
        let r = median_set(&c, &profile(&c, &[0, 2]));
        assert_eq!(r.medians, vec![0, 1, 2]);
        assert_eq!(r.min_remoteness, 2);
        assert_eq!((r.m_lower, r.m_upper), (0, 2));

        let r = median_set(&c, &profile(&c, &[0, 1, 2]));
        assert_eq!(r.medians, vec![1]);
        assert_eq!((r.m_lower, r.m_upper), (1, 1));
        assert_eq!(r.violation, None);
    }

    #[test]
    fn remoteness_is_profile_order_invariant() {
        let b = boolean(3);
        let p1 = profile(&b, &[1, 2, 4, 2]);
        let p2 = profile(&b, &[2, 4, 2, 1]);
        for y in 0..b.n() {
            assert_eq!(remoteness(&b, y, &p1), remoteness(&b, y, &p2));
        }
    }

    #[test]
    fn square_profile_ties_every_element() {
        let b = boolean(2);
        let r = median_set(&b, &profile(&b, &[1, 2]));
        assert_eq!(r.medians, vec![0, 1, 2, 3]);
        assert_eq!(r.c1, 3);
        assert_eq!((r.m_lower, r.m_upper), (0, 3));
        assert_eq!(r.violation, None);
    }

    #[test]
    fn lnk_counterexample_profile() {
        let lnk = build_lnk(4, 3).unwrap();
        let l = lnk.lattice();
        let p = profile(l, &lnk.profile);
        let report = median_set(l, &p);

        assert_eq!(remoteness(l, lnk.z, &p), 12);
        assert_eq!(report.c1, 99);
        assert_eq!(l.n() - 2, 99);
        assert!(report.medians.contains(&lnk.z));
        assert!(!l.leq(lnk.z, report.c1));
        assert!(report.violation.is_some());
        assert_eq!((report.m_lower, report.m_upper), (0, 0));
    }

    #[test]
    fn lnk_closed_form_matches_metric() {
        let lnk = build_lnk(4, 3).unwrap();
        let l = lnk.lattice();
        let p = profile(l, &lnk.profile);
        for y in 0..l.n() {
            assert_eq!(lnk.closed_form_remoteness(y), remoteness(l, y, &p));
        }
    }

    #[test]
    fn pb_partition_of_the_counterexample() {
        let lnk = build_lnk(4, 3).unwrap();
        let l = lnk.lattice();
        let p = profile(l, &lnk.profile);
        let pb = pb_partition(l, &p, lnk.z).unwrap();
        assert_eq!(pb.parallel, vec![1, 2]);
        assert_eq!(pb.below, vec![0]);
    }

    #[test]
    fn pb_partition_preconditions() {
        let c = chain(3);
        let p = profile(&c, &[0, 2]);
        assert_eq!(
            pb_partition(&c, &p, 1).unwrap_err(),
            MedianError::ZBelowC1 { z: 1 }
        );

        let p = profile(&c, &[0, 0]);
        let pb = pb_partition(&c, &p, 1).unwrap();
        assert!(pb.parallel.is_empty());
        assert_eq!(pb.below, vec![0, 1]);
    }

    #[test]
    fn c1_check_clean_families() {
        let report = check_c1_property(&chain(5), 3);
        assert!(report.holds());
        assert_eq!(report.to_string(), "no violation up to kMax=3");

        assert!(check_c1_property(&boolean(3), 3).holds());
        assert!(check_c1_property(&figure1(), 3).holds());
        assert!(check_c1_property(&chain(1), 2).holds());
    }

    #[test]
    fn c1_check_finds_the_lnk_violation() {
        let lnk = build_lnk(4, 3).unwrap();
        let report = check_c1_property(lnk.lattice(), 3);
        let v = report.violation.expect("violation exists at k=3");
        // no violation is possible below k=3
        assert_eq!(v.profile.len(), 3);
        let p = Profile::new(v.profile.clone(), lnk.lattice()).unwrap();
        let recheck = median_set(lnk.lattice(), &p);
        assert_eq!(recheck.violation, Some(v.median));
        assert!(!lnk.lattice().leq(v.median, v.c1));
    }

    #[test]
    fn gk_keeps_the_violation() {
        let g = build_gk(4).unwrap();
        let p = Profile::new(g.profile.clone(), &g.lattice).unwrap();
        let report = median_set(&g.lattice, &p);
        assert!(report.medians.contains(&g.z));
        assert!(report.violation.is_some());
    }

    #[test]
    fn breadth_of_basic_families() {
        assert_eq!(breadth(&chain(1)), 0);
        assert_eq!(breadth(&chain(2)), 1);
        assert_eq!(breadth(&chain(7)), 1);
        for k in 0..=4 {
            assert_eq!(breadth(&boolean(k)), k);
        }
        assert_eq!(breadth(&figure1()), 2);

        let n5 = Lattice::build_from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(breadth(&n5), 2);
        assert_eq!(breadth_bruteforce(&n5, 5), 2);

        let m3 = Lattice::build_from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap();
        assert_eq!(breadth(&m3), 2);
    }

    #[test]
    fn bruteforce_breadth_respects_its_cap() {
        let b3 = boolean(3);
        assert_eq!(breadth_bruteforce(&b3, 3), 3);
        assert_eq!(breadth_bruteforce(&b3, 2), 2);
        assert_eq!(breadth_bruteforce(&b3, 8), 3);
    }

    #[test]
    fn lnk_breadth() {
        let lnk = build_lnk(4, 3).unwrap();
        assert_eq!(breadth(lnk.lattice()), 3);
    }
}
