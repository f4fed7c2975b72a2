//! Finite lattices presented by their cover relations.

use crate::bits::BitSet;
use std::collections::VecDeque;
use thiserror::Error;

/// A sorted list of element indices.
pub type ElementSet = Vec<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cover relation contains a cycle")]
    Cycle,
    #[error("cover pair ({a}, {b}) is repeated or transitively implied")]
    RedundantCover { a: usize, b: usize },
    #[error("not a lattice: no unique bottom element")]
    NoUniqueBottom,
    #[error("not a lattice: no unique top element")]
    NoUniqueTop,
    #[error("not a lattice: elements {x} and {y} have no unique join")]
    NoJoin { x: usize, y: usize },
    #[error("not a lattice: elements {x} and {y} have no unique meet")]
    NoMeet { x: usize, y: usize },
    #[error("empty interval: {a} is not below {b}")]
    EmptyInterval { a: usize, b: usize },
}

/// Immutable finite lattice with precomputed order, join/meet, and
/// covering-graph distance tables.
///
/// Elements are the indices `0..n`. The stored cover list is transitively
/// reduced and sorted; input indexing is preserved.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    name: Option<String>,
    covers: Vec<(usize, usize)>,
    up_adj: Vec<Vec<usize>>,
    lo_adj: Vec<Vec<usize>>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    join_tab: Vec<u32>,
    meet_tab: Vec<u32>,
    dist: Vec<u32>,
    height: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Validates a cover relation and builds the lattice.
    ///
    /// The input must be acyclic, free of repeated or transitively implied
    /// pairs, and describe a poset with a unique bottom, a unique top, and
    /// a join and meet for every pair.
    pub fn build_from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Lattice, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= n {
                    return Err(LatticeError::IndexOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(LatticeError::Cycle);
            }
        }

        let mut up_adj = vec![Vec::new(); n];
        let mut lo_adj = vec![Vec::new(); n];
        for &(a, b) in covers {
            if up_adj[a].contains(&b) {
                return Err(LatticeError::RedundantCover { a, b });
            }
            up_adj[a].push(b);
            lo_adj[b].push(a);
        }
        for adj in up_adj.iter_mut().chain(lo_adj.iter_mut()) {
            adj.sort_unstable();
        }

        let topo = topo_sort(n, &up_adj, &lo_adj)?;
        let mut topo_pos = vec![0usize; n];
        for (pos, &x) in topo.iter().enumerate() {
            topo_pos[x] = pos;
        }

        let mut up = vec![BitSet::new(n); n];
        for &x in topo.iter().rev() {
            up[x].insert(x);
            for &y in &up_adj[x] {
                let (lower, upper) = if x < y {
                    let (a, b) = up.split_at_mut(y);
                    (&mut a[x], &b[0])
                } else {
                    let (a, b) = up.split_at_mut(x);
                    (&mut b[0], &a[y])
                };
                lower.union_with(upper);
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.iter() {
                down[y].insert(x);
            }
        }

        for &(a, b) in covers {
            for &c in &up_adj[a] {
                if c != b && up[c].contains(b) {
                    return Err(LatticeError::RedundantCover { a, b });
                }
            }
        }

        let minimals: Vec<usize> = (0..n).filter(|&x| lo_adj[x].is_empty()).collect();
        let bottom = match minimals[..] {
            [b] => b,
            _ => return Err(LatticeError::NoUniqueBottom),
        };
        let maximals: Vec<usize> = (0..n).filter(|&x| up_adj[x].is_empty()).collect();
        let top = match maximals[..] {
            [t] => t,
            _ => return Err(LatticeError::NoUniqueTop),
        };

        let mut join_tab = vec![0u32; n * n];
        let mut meet_tab = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let (j, m) = if up[x].contains(y) {
                    (y, x)
                } else if up[y].contains(x) {
                    (x, y)
                } else {
                    let mut bounds = up[x].clone();
                    bounds.intersect_with(&up[y]);
                    let j = bounds
                        .iter()
                        .min_by_key(|&u| topo_pos[u])
                        .expect("top is a common upper bound");
                    if !bounds.is_subset_of(&up[j]) {
                        return Err(LatticeError::NoJoin { x, y });
                    }
                    let mut bounds = down[x].clone();
                    bounds.intersect_with(&down[y]);
                    let m = bounds
                        .iter()
                        .max_by_key(|&u| topo_pos[u])
                        .expect("bottom is a common lower bound");
                    if !bounds.is_subset_of(&down[m]) {
                        return Err(LatticeError::NoMeet { x, y });
                    }
                    (j, m)
                };
                join_tab[x * n + y] = j as u32;
                join_tab[y * n + x] = j as u32;
                meet_tab[x * n + y] = m as u32;
                meet_tab[y * n + x] = m as u32;
            }
        }

        let dist = distance_matrix(n, &up_adj, &lo_adj);

        let mut height = vec![0u32; n];
        for &x in &topo {
            for &y in &up_adj[x] {
                height[y] = height[y].max(height[x] + 1);
            }
        }

        let mut covers: Vec<(usize, usize)> = covers.to_vec();
        covers.sort_unstable();

        Ok(Lattice {
            n,
            name: None,
            covers,
            up_adj,
            lo_adj,
            up,
            down,
            join_tab,
            meet_tab,
            dist,
            height,
            bottom,
            top,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Lattice {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Transitively reduced cover pairs `(a, b)` with `a` covered by `b`,
    /// sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// True when `x` and `y` are incomparable.
    pub fn parallel(&self, x: usize, y: usize) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up_adj[a].binary_search(&b).is_ok()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up_adj[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lo_adj[x]
    }

    /// Elements above `x`, including `x`.
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// Elements below `x`, including `x`.
    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join_tab[x * self.n + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet_tab[x * self.n + y] as usize
    }

    /// Join of any number of elements; the empty join is the bottom.
    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.bottom, |a, x| self.join(a, x))
    }

    /// Meet of any number of elements; the empty meet is the top.
    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |a, x| self.meet(a, x))
    }

    /// Shortest undirected path length between `x` and `y` in the covering
    /// graph.
    #[inline]
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.n + y] as usize
    }

    /// Length of a longest chain from the bottom up to `x`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x] as usize
    }

    /// Length of the lattice: longest chain size minus one.
    pub fn length(&self) -> usize {
        self.height(self.top)
    }

    /// True when every cover step raises height by exactly one, i.e. all
    /// maximal chains share the same length.
    pub fn is_graded(&self) -> bool {
        self.covers
            .iter()
            .all(|&(a, b)| self.height[b] == self.height[a] + 1)
    }

    /// Upper semimodularity: `x /\ y` covered by `x` implies `y` covered by
    /// `x \/ y`.
    pub fn is_semimodular(&self) -> bool {
        self.semimodular_violation().is_none()
    }

    pub(crate) fn semimodular_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.is_cover(self.meet(x, y), x) && !self.is_cover(y, self.join(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Lower semimodularity: `y` covered by `x \/ y` implies `x /\ y`
    /// covered by `x`.
    pub fn is_lower_semimodular(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.is_cover(y, self.join(x, y)) && !self.is_cover(self.meet(x, y), x) {
                    return false;
                }
            }
        }
        true
    }

    /// Modular law: `x <= z` implies `x \/ (y /\ z) = (x \/ y) /\ z`.
    pub fn is_modular(&self) -> bool {
        for x in 0..self.n {
            for z in self.up[x].iter() {
                for y in 0..self.n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Distributive law: `x /\ (y \/ z) = (x /\ y) \/ (x /\ z)`.
    pub fn is_distributive(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in y..self.n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The interval `[a, b]` as an ascending list of indices.
    pub fn interval(&self, a: usize, b: usize) -> Result<ElementSet, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::EmptyInterval { a, b });
        }
        let mut inside = self.up[a].clone();
        inside.intersect_with(&self.down[b]);
        Ok(inside.iter().collect())
    }

    /// Nonzero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> ElementSet {
        (0..self.n).filter(|&x| self.lo_adj[x].len() == 1).collect()
    }

    /// Join-primality: `u <= x \/ y` implies `u <= x` or `u <= y`.
    pub fn is_join_prime(&self, u: usize) -> bool {
        for x in 0..self.n {
            if self.leq(u, x) {
                continue;
            }
            for y in 0..self.n {
                if self.leq(u, self.join(x, y)) && !self.leq(u, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Codistributivity: `u /\ (x \/ y) = (u /\ x) \/ (u /\ y)` for all pairs.
    pub fn is_codistributive(&self, u: usize) -> bool {
        for x in 0..self.n {
            for y in x..self.n {
                if self.meet(u, self.join(x, y)) != self.join(self.meet(u, x), self.meet(u, y)) {
                    return false;
                }
            }
        }
        true
    }
}

fn topo_sort(
    n: usize,
    up_adj: &[Vec<usize>],
    lo_adj: &[Vec<usize>],
) -> Result<Vec<usize>, LatticeError> {
    let mut indegree: Vec<usize> = lo_adj.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &up_adj[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(LatticeError::Cycle)
    }
}

fn distance_matrix(n: usize, up_adj: &[Vec<usize>], lo_adj: &[Vec<usize>]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        let row = &mut dist[start * n..(start + 1) * n];
        row[start] = 0;
        queue.clear();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let next = row[x] + 1;
            for &y in up_adj[x].iter().chain(&lo_adj[x]) {
                if row[y] == u32::MAX {
                    row[y] = next;
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Lattice {
        Lattice::build_from_covers(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn boolean2() -> Lattice {
        Lattice::build_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn pentagon() -> Lattice {
        Lattice::build_from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn diamond() -> Lattice {
        Lattice::build_from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn chain_is_a_lattice() {
        let c = chain3();
        assert_eq!(c.join(0, 2), 2);
        assert_eq!(c.meet(0, 2), 0);
        assert_eq!(c.length(), 2);
        assert_eq!((c.bottom(), c.top()), (0, 2));
        assert!(c.is_graded());
        assert!(c.is_modular());
        assert!(c.is_distributive());
    }

    #[test]
    fn boolean_square() {
        let b = boolean2();
        assert_eq!(b.join(1, 2), 3);
        assert_eq!(b.meet(1, 2), 0);
        assert_eq!(b.distance(1, 2), 2);
        assert_eq!(b.length(), 2);
        assert!(b.parallel(1, 2));
        assert!(b.is_semimodular());
        assert!(b.is_distributive());
    }

    #[test]
    fn two_maximal_elements_rejected() {
        let err = Lattice::build_from_covers(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, LatticeError::NoUniqueTop);
        let err = Lattice::build_from_covers(4, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, LatticeError::NoUniqueBottom);
    }

    #[test]
    fn hexagon_poset_has_no_join() {
        // two minimal upper bounds for the atoms
        let err = Lattice::build_from_covers(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NoJoin { x: 1, y: 2 });
    }

    #[test]
    fn implied_and_repeated_covers_rejected() {
        let err = Lattice::build_from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, LatticeError::RedundantCover { a: 0, b: 2 });
        let err = Lattice::build_from_covers(2, &[(0, 1), (0, 1)]).unwrap_err();
        assert_eq!(err, LatticeError::RedundantCover { a: 0, b: 1 });
    }

    #[test]
    fn cycles_rejected() {
        assert_eq!(
            Lattice::build_from_covers(2, &[(0, 1), (1, 0)]).unwrap_err(),
            LatticeError::Cycle
        );
        assert_eq!(
            Lattice::build_from_covers(1, &[(0, 0)]).unwrap_err(),
            LatticeError::Cycle
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Lattice::build_from_covers(2, &[(0, 5)]).unwrap_err(),
            LatticeError::IndexOutOfRange { index: 5, n: 2 }
        );
    }

    #[test]
    fn pentagon_properties() {
        let p = pentagon();
        assert!(!p.is_graded());
        assert!(!p.is_semimodular());
        assert!(!p.is_lower_semimodular());
        assert!(!p.is_modular());
        assert_eq!(p.length(), 3);
    }

    #[test]
    fn diamond_is_modular_not_distributive() {
        let d = diamond();
        assert!(d.is_graded());
        assert!(d.is_semimodular());
        assert!(d.is_lower_semimodular());
        assert!(d.is_modular());
        assert!(!d.is_distributive());
    }

    #[test]
    fn intervals() {
        let b = boolean2();
        assert_eq!(b.interval(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(b.interval(1, 1).unwrap(), vec![1]);
        assert_eq!(
            b.interval(1, 2).unwrap_err(),
            LatticeError::EmptyInterval { a: 1, b: 2 }
        );
    }

    #[test]
    fn irreducibles_and_primes() {
        let c = Lattice::build_from_covers(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(c.join_irreducibles(), vec![1, 2, 3]);
        assert!((0..4).all(|u| c.is_join_prime(u)));

        let b = boolean2();
        assert_eq!(b.join_irreducibles(), vec![1, 2]);
        assert!(!b.is_join_prime(3));
        assert!(b.is_join_prime(1));
        assert!((0..4).all(|u| b.is_codistributive(u)));

        let d = diamond();
        assert!(!d.is_codistributive(1));
        assert!(!d.is_join_prime(1));
    }

    #[test]
    fn singleton_lattice() {
        let s = Lattice::build_from_covers(1, &[]).unwrap();
        assert_eq!(s.length(), 0);
        assert_eq!(s.bottom(), s.top());
        assert!(s.is_distributive());
        assert!(s.is_join_prime(0));
        assert!(s.join_irreducibles().is_empty());
    }

    #[test]
    fn distances_are_graph_metric() {
        let c4 = Lattice::build_from_covers(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(c4.distance(0, 3), 3);
        let p = pentagon();
        assert_eq!(p.distance(1, 2), 2);
        assert_eq!(p.distance(3, 2), 2);
        assert_eq!(p.distance(0, 4), 2);
        for x in 0..p.n() {
            for y in 0..p.n() {
                assert_eq!(p.distance(x, y), p.distance(y, x));
                assert_eq!(p.distance(x, y) == 0, x == y);
                assert_eq!(p.distance(x, y) == 1, p.is_cover(x, y) || p.is_cover(y, x));
            }
        }
    }

    #[test]
    fn arbitrary_labeling_preserved() {
        // same square lattice, bottom labeled 3
        let b = Lattice::build_from_covers(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(b.bottom(), 3);
        assert_eq!(b.top(), 0);
        assert_eq!(b.join(1, 2), 0);
        assert_eq!(b.covers(), &[(1, 0), (2, 0), (3, 1), (3, 2)]);
    }
}
