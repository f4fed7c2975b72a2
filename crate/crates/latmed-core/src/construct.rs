//! Lattice constructions: chains, boolean lattices, direct products, glued
//! sums, interval removal, the L(n,k) family, G(k), and a fixed nine-element
//! fixture.

use crate::lattice::{Lattice, LatticeError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("interval bottom must not be the least element")]
    ZeroForbidden,
    #[error("element {element} is not join-prime in the base lattice")]
    NotJoinPrime { element: usize },
    #[error("interval is empty: {e} is not below {f}")]
    NotComparable { e: usize, f: usize },
    #[error("parameters out of range: {0}")]
    BadParams(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The n-element chain 0 < 1 < ... < n-1, named `Cn`.
///
/// Panics when `n` is zero.
pub fn chain(n: usize) -> Lattice {
    assert!(n >= 1, "a chain needs at least one element");
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::build_from_covers(n, &covers)
        .expect("a chain is a lattice")
        .with_name(format!("C{n}"))
}

/// A direct product together with its coordinate encoding.
///
/// Flat indices use mixed-radix encoding with the last factor varying
/// fastest, so the flat index of a coordinate tuple is stable for a given
/// factor list.
#[derive(Clone, Debug)]
pub struct ProductLattice {
    lattice: Lattice,
    factors: Vec<Lattice>,
    sizes: Vec<usize>,
}

impl ProductLattice {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    pub fn factors(&self) -> &[Lattice] {
        &self.factors
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Flat index of a coordinate tuple.
    ///
    /// Panics when the tuple length or a coordinate is out of range.
    pub fn encode(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.sizes.len(), "coordinate arity mismatch");
        coords.iter().zip(&self.sizes).fold(0, |acc, (&c, &s)| {
            assert!(c < s, "coordinate out of range");
            acc * s + c
        })
    }

    /// Coordinate tuple of a flat index.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.lattice.n(), "index out of range");
        let mut coords = vec![0; self.sizes.len()];
        for (c, &s) in coords.iter_mut().zip(&self.sizes).rev() {
            *c = index % s;
            index /= s;
        }
        coords
    }

    /// For a nonzero join-prime element, the unique coordinate position
    /// (0-based) holding its single nonzero, join-prime component; `None`
    /// for every other element.
    pub fn join_prime_coordinate(&self, u: usize) -> Option<usize> {
        let coords = self.decode(u);
        let mut nonzero = coords
            .iter()
            .enumerate()
            .filter(|&(j, &c)| c != self.factors[j].bottom());
        match (nonzero.next(), nonzero.next()) {
            (Some((j, &c)), None) if self.factors[j].is_join_prime(c) => Some(j),
            _ => None,
        }
    }
}

const PRODUCT_SIZE_CAP: usize = 4096;

/// Direct product with coordinatewise order; an empty factor list gives the
/// singleton lattice. The result is capped at 4096 elements.
pub fn product(factors: &[Lattice]) -> Result<ProductLattice, ConstructError> {
    let sizes: Vec<usize> = factors.iter().map(Lattice::n).collect();
    let n: usize = sizes.iter().product();
    if n > PRODUCT_SIZE_CAP {
        return Err(ConstructError::BadParams(format!(
            "product has {n} elements, more than the cap of {PRODUCT_SIZE_CAP}"
        )));
    }
    let mut covers = Vec::new();
    let mut coords = vec![0; sizes.len()];
    for x in 0..n {
        for (j, factor) in factors.iter().enumerate() {
            for &c in factor.upper_covers(coords[j]) {
                let old = coords[j];
                coords[j] = c;
                let y = coords
                    .iter()
                    .zip(&sizes)
                    .fold(0, |acc, (&c, &s)| acc * s + c);
                coords[j] = old;
                covers.push((x, y));
            }
        }
        for (c, &s) in coords.iter_mut().zip(&sizes).rev() {
            *c += 1;
            if *c < s {
                break;
            }
            *c = 0;
        }
    }
    let mut lattice = Lattice::build_from_covers(n, &covers)?;
    if !factors.is_empty() && factors.iter().all(|f| f.name().is_some()) {
        let name: Vec<&str> = factors.iter().filter_map(Lattice::name).collect();
        lattice = lattice.with_name(name.join("x"));
    }
    Ok(ProductLattice {
        lattice,
        factors: factors.to_vec(),
        sizes,
    })
}

/// The 2^k-element boolean lattice as a k-fold product of 2-chains, named
/// `Bk`.
pub fn boolean(k: usize) -> Lattice {
    let factors = vec![chain(2); k];
    product(&factors)
        .expect("boolean lattices stay under the size cap for k <= 12")
        .into_lattice()
        .with_name(format!("B{k}"))
}

/// Stacks `upper` atop `lower`, identifying the top of `lower` with the
/// bottom of `upper`.
///
/// Lower-part indices are preserved; the remaining upper-part elements are
/// appended in their original relative order.
pub fn glued_sum(lower: &Lattice, upper: &Lattice) -> Lattice {
    let ln = lower.n();
    let un = upper.n();
    let ub = upper.bottom();
    let mut map_upper = vec![0usize; un];
    map_upper[ub] = lower.top();
    let mut next = ln;
    for (u, slot) in map_upper.iter_mut().enumerate() {
        if u != ub {
            *slot = next;
            next += 1;
        }
    }
    let mut covers: Vec<(usize, usize)> = lower.covers().to_vec();
    covers.extend(
        upper
            .covers()
            .iter()
            .map(|&(a, b)| (map_upper[a], map_upper[b])),
    );
    let glued = Lattice::build_from_covers(ln + un - 1, &covers)
        .expect("a glued sum of lattices is a lattice");
    match (lower.name(), upper.name()) {
        (Some(a), Some(b)) => glued.with_name(format!("{a}+{b}")),
        _ => glued,
    }
}

/// An interval `[e, f]` to delete from a base lattice.
#[derive(Clone, Debug)]
pub struct IntervalRemovalSpec {
    pub base: Lattice,
    pub e: usize,
    pub f: usize,
}

/// Deletes the interval `[e, f]` from the base lattice and rebuilds the
/// induced subposet, which is again a lattice whenever `e` is a nonzero
/// join-prime element below `f`.
///
/// Surviving elements keep their relative order and are renumbered
/// consecutively from 0. Meets are recomputed within the subposet; nothing
/// is assumed about their agreement with the base lattice.
pub fn remove_interval(spec: &IntervalRemovalSpec) -> Result<Lattice, ConstructError> {
    let base = &spec.base;
    let n = base.n();
    for index in [spec.e, spec.f] {
        if index >= n {
            return Err(LatticeError::IndexOutOfRange { index, n }.into());
        }
    }
    if spec.e == base.bottom() {
        return Err(ConstructError::ZeroForbidden);
    }
    if !base.leq(spec.e, spec.f) {
        return Err(ConstructError::NotComparable {
            e: spec.e,
            f: spec.f,
        });
    }
    if !base.is_join_prime(spec.e) {
        return Err(ConstructError::NotJoinPrime { element: spec.e });
    }

    let mut removed = base.up_set(spec.e).clone();
    removed.intersect_with(base.down_set(spec.f));
    let survivors: Vec<usize> = (0..n).filter(|&x| !removed.contains(x)).collect();

    let mut survivor_set = crate::bits::BitSet::new(n);
    for &x in &survivors {
        survivor_set.insert(x);
    }
    let mut covers = Vec::new();
    for (iy, &y) in survivors.iter().enumerate() {
        for (ix, &x) in survivors.iter().enumerate() {
            if !base.lt(x, y) {
                continue;
            }
            let mut between = base.up_set(x).clone();
            between.intersect_with(base.down_set(y));
            between.intersect_with(&survivor_set);
            if between.count() == 2 {
                covers.push((ix, iy));
            }
        }
    }
    Ok(Lattice::build_from_covers(survivors.len(), &covers)?)
}

/// The lattice L(n,k): the (k+1)-fold product of k copies of the n-chain
/// and one 2-chain, with the interval from `(0,..,0,1,0)` up to
/// `(n-2,..,n-2,n-1,0)` removed.
///
/// Carries the designated elements of the construction: the removed interval
/// bounds as product coordinates, and the flat indices (into the built
/// lattice) of the element `z = (0,..,0,n-1,1)` and of the three-element
/// profile whose medians escape the join of the profile.
#[derive(Clone, Debug)]
pub struct Lnk {
    pub n: usize,
    pub k: usize,
    lattice: Lattice,
    sizes: Vec<usize>,
    survivors: Vec<usize>,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub z: usize,
    pub profile: Vec<usize>,
}

impl Lnk {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    /// Flat index in L(n,k) of a surviving coordinate tuple; `None` when
    /// the tuple lies in the removed interval.
    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        assert_eq!(coords.len(), self.k + 1, "coordinate arity mismatch");
        let flat = coords.iter().zip(&self.sizes).fold(0, |acc, (&c, &s)| {
            assert!(c < s, "coordinate out of range");
            acc * s + c
        });
        self.survivors.binary_search(&flat).ok()
    }

    /// Coordinate tuple of a flat L(n,k) index.
    pub fn coords_of(&self, index: usize) -> Vec<usize> {
        let mut flat = self.survivors[index];
        let mut coords = vec![0; self.sizes.len()];
        for (c, &s) in coords.iter_mut().zip(&self.sizes).rev() {
            *c = flat % s;
            flat /= s;
        }
        coords
    }

    /// The closed-form remoteness of `y` with respect to the designated
    /// profile: `4(n-1) + y_1 + y_2 - y_k + 3y_{k+1} + sum_{i=3..k-1} 3y_i`
    /// (coordinates 1-based).
    pub fn closed_form_remoteness(&self, y: usize) -> usize {
        let c = self.coords_of(y);
        let k = self.k;
        let mut r = 4 * (self.n - 1) + c[0] + c[1] + 3 * c[k];
        for &ci in &c[2..k - 1] {
            r += 3 * ci;
        }
        r - c[k - 1]
    }
}

/// Builds L(n,k) for n >= 4 and k >= 3.
pub fn build_lnk(n: usize, k: usize) -> Result<Lnk, ConstructError> {
    if n < 4 || k < 3 {
        return Err(ConstructError::BadParams(format!(
            "L(n,k) needs n >= 4 and k >= 3, got n={n} and k={k}"
        )));
    }
    let mut factors = vec![chain(n); k];
    factors.push(chain(2));
    let base = product(&factors)?;
    let sizes = base.sizes().to_vec();

    let mut e = vec![0; k + 1];
    e[k - 1] = 1;
    let mut f = vec![n - 2; k + 1];
    f[k - 1] = n - 1;
    f[k] = 0;
    let spec = IntervalRemovalSpec {
        e: base.encode(&e),
        f: base.encode(&f),
        base: base.into_lattice(),
    };

    let mut removed = spec.base.up_set(spec.e).clone();
    removed.intersect_with(spec.base.down_set(spec.f));
    let survivors: Vec<usize> = (0..spec.base.n())
        .filter(|&x| !removed.contains(x))
        .collect();

    let lattice = remove_interval(&spec)?.with_name(format!("lnk-{n}-{k}"));

    let locate = |coords: &[usize]| -> usize {
        let flat = coords
            .iter()
            .zip(&sizes)
            .fold(0, |acc, (&c, &s)| acc * s + c);
        survivors
            .binary_search(&flat)
            .expect("designated element survives the removal")
    };
    let mut z = vec![0; k + 1];
    z[k - 1] = n - 1;
    z[k] = 1;
    let x0 = vec![0; k + 1];
    let mut x1 = vec![0; k + 1];
    x1[0] = n - 1;
    x1[k - 1] = n - 1;
    let mut x2 = vec![0; k + 1];
    x2[1] = n - 1;
    x2[k - 1] = n - 1;
    let profile = vec![locate(&x0), locate(&x1), locate(&x2)];
    let z = locate(&z);

    Ok(Lnk {
        n,
        k,
        lattice,
        sizes,
        survivors,
        e,
        f,
        z,
        profile,
    })
}

/// The glued sum of L(4,3) and the 2^k-element boolean lattice, with the
/// designated profile and z of L(4,3) carried over (lower-part indices are
/// preserved by the gluing).
#[derive(Clone, Debug)]
pub struct Gk {
    pub k: usize,
    pub lattice: Lattice,
    pub z: usize,
    pub profile: Vec<usize>,
}

/// Builds G(k) for k > 3.
pub fn build_gk(k: usize) -> Result<Gk, ConstructError> {
    if k <= 3 {
        return Err(ConstructError::BadParams(format!(
            "G(k) needs k > 3, got k={k}"
        )));
    }
    let lnk = build_lnk(4, 3)?;
    let lattice = glued_sum(lnk.lattice(), &boolean(k)).with_name(format!("G{k}"));
    Ok(Gk {
        k,
        lattice,
        z: lnk.z,
        profile: lnk.profile,
    })
}

/// A fixed nine-element graded semimodular lattice of breadth two whose
/// covering graph is nonplanar. Elements are indexed 0..=8 in
/// diagram-reading order, bottom first.
pub fn figure1() -> Lattice {
    let covers = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 5),
        (3, 7),
        (3, 8),
        (4, 7),
        (5, 7),
        (7, 6),
        (8, 6),
    ];
    Lattice::build_from_covers(9, &covers)
        .expect("the fixture is a lattice")
        .with_name("figure1")
}
