//! Exhaustive enumeration of small lattices, one representative per
//! isomorphism class.
//!
//! Lattices are grown as meet-semilattices: every down-set of a
//! meet-semilattice is one, so each class on m elements arises from a class
//! on m-1 elements by appending a maximal element whose strict down-set is
//! an ideal I such that I intersected with any principal down-set has a
//! unique maximum. Classes with a unique maximal element are exactly the
//! lattices. Duplicates are folded by a canonical form: iterated color
//! refinement, then the minimal order-relation bit matrix over all
//! color-preserving relabelings.

use crate::lattice::Lattice;
use crate::verify::HarnessError;
use itertools::Itertools;
use std::collections::BTreeMap;

/// Largest element count the enumeration accepts; 64-bit canonical keys
/// hold an 8x8 relation matrix exactly.
pub const ENUMERATION_CAP: usize = 8;

fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A new maximal element may take `ideal` as its strict down-set only when
/// the ideal is down-closed and meets every principal down-set in a set
/// with a unique maximum.
fn ideal_ok(down: &[u16], ideal: u16) -> bool {
    for v in bits(ideal) {
        if down[v] & !ideal != 0 {
            return false;
        }
    }
    for y in 0..down.len() {
        let common = ideal & down[y];
        if common == 0 {
            return false;
        }
        if !bits(common).any(|u| common & !down[u] == 0) {
            return false;
        }
    }
    true
}

fn lower_cover_masks(down: &[u16]) -> Vec<u16> {
    let m = down.len();
    let up: Vec<u16> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| down[j] >> i & 1 == 1)
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    (0..m)
        .map(|j| {
            let strict = down[j] & !(1u16 << j);
            bits(strict)
                .filter(|&v| strict & up[v] & !(1 << v) == 0)
                .fold(0, |acc, v| acc | 1 << v)
        })
        .collect()
}

fn refine_colors(down: &[u16], locov: &[u16], upcov: &[u16]) -> Vec<usize> {
    let m = down.len();
    let up_count = |i: usize| (0..m).filter(|&j| down[j] >> i & 1 == 1).count();
    let init: Vec<(usize, usize)> = (0..m)
        .map(|v| (down[v].count_ones() as usize, up_count(v)))
        .collect();
    let mut ranked: Vec<(usize, usize)> = init.clone();
    ranked.sort_unstable();
    ranked.dedup();
    let mut colors: Vec<usize> = init
        .iter()
        .map(|s| ranked.binary_search(s).unwrap())
        .collect();
    let mut distinct = ranked.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..m)
            .map(|v| {
                let mut lo: Vec<usize> = bits(locov[v]).map(|w| colors[w]).collect();
                lo.sort_unstable();
                let mut hi: Vec<usize> = bits(upcov[v]).map(|w| colors[w]).collect();
                hi.sort_unstable();
                (colors[v], lo, hi)
            })
            .collect();
        let mut ranked = sigs.clone();
        ranked.sort_unstable();
        ranked.dedup();
        if ranked.len() == distinct {
            return colors;
        }
        distinct = ranked.len();
        colors = sigs
            .iter()
            .map(|s| ranked.binary_search(s).unwrap())
            .collect();
    }
}

fn relation_key(down: &[u16], perm: &[usize]) -> u64 {
    let m = perm.len();
    let mut key = 0u64;
    for (i, &pi) in perm.iter().enumerate() {
        for (j, &pj) in perm.iter().enumerate() {
            if down[pj] >> pi & 1 == 1 {
                key |= 1 << (i * m + j);
            }
        }
    }
    key
}

fn minimize_over_classes(
    groups: &[Vec<usize>],
    gi: usize,
    perm: &mut Vec<usize>,
    down: &[u16],
    best: &mut Option<(u64, Vec<usize>)>,
) {
    if gi == groups.len() {
        let key = relation_key(down, perm);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, perm.clone()));
        }
        return;
    }
    let base = perm.len();
    for p in groups[gi].iter().permutations(groups[gi].len()) {
        perm.extend(p.into_iter().copied());
        minimize_over_classes(groups, gi + 1, perm, down, best);
        perm.truncate(base);
    }
}

/// Canonical key and canonically relabeled down-masks.
fn canonical_form(down: &[u16]) -> (u64, Vec<u16>) {
    let m = down.len();
    let locov = lower_cover_masks(down);
    let upcov: Vec<u16> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| locov[j] >> i & 1 == 1)
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    let colors = refine_colors(down, &locov, &upcov);
    let groups_count = colors.iter().max().map_or(0, |c| c + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); groups_count];
    for (v, &c) in colors.iter().enumerate() {
        groups[c].push(v);
    }
    let mut best = None;
    minimize_over_classes(&groups, 0, &mut Vec::with_capacity(m), down, &mut best);
    let (key, perm) = best.expect("at least the identity relabeling exists");
    let canon: Vec<u16> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| down[perm[i]] >> perm[j] & 1 == 1)
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    (key, canon)
}

fn covers_of(down: &[u16]) -> Vec<(usize, usize)> {
    let locov = lower_cover_masks(down);
    let mut covers = Vec::new();
    for (j, &mask) in locov.iter().enumerate() {
        for v in bits(mask) {
            covers.push((v, j));
        }
    }
    covers
}

/// All n-element lattices up to isomorphism, in canonical-key order, named
/// `enum<n>-<index>`. Deterministic across runs and worker counts.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>, HarnessError> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(HarnessError::CapExceeded {
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut classes: Vec<Vec<u16>> = vec![vec![1]];
    for size in 2..=n {
        let m = size - 1;
        let mut seen: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for down in &classes {
            for ideal in 1..(1u16 << m) {
                if !ideal_ok(down, ideal) {
                    continue;
                }
                let mut grown = down.clone();
                grown.push(ideal | (1 << m));
                let (key, canon) = canonical_form(&grown);
                seen.entry(key).or_insert(canon);
            }
        }
        classes = seen.into_values().collect();
    }
    let mut out = Vec::new();
    for down in &classes {
        let maximal = (0..n)
            .filter(|&v| (0..n).all(|j| j == v || down[j] >> v & 1 == 0))
            .count();
        if maximal != 1 {
            continue;
        }
        let index = out.len();
        let lattice = Lattice::build_from_covers(n, &covers_of(down))
            .expect("a meet-semilattice with a top is a lattice")
            .with_name(format!("enum{n}-{index}"));
        out.push(lattice);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_published_values() {
        let expected = [1usize, 1, 1, 2, 5, 15, 53];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(enumerate_lattices(n).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(
            enumerate_lattices(0).unwrap_err(),
            HarnessError::CapExceeded {
                requested: 0,
                cap: 8
            }
        );
        assert_eq!(
            enumerate_lattices(9).unwrap_err(),
            HarnessError::CapExceeded {
                requested: 9,
                cap: 8
            }
        );
    }

    #[test]
    fn output_is_deterministic_and_named() {
        let a = enumerate_lattices(5).unwrap();
        let b = enumerate_lattices(5).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.covers(), y.covers());
            assert_eq!(x.name(), y.name());
        }
        assert_eq!(a[0].name(), Some("enum5-0"));
        assert_eq!(a[4].name(), Some("enum5-4"));
    }

    #[test]
    fn small_families_appear() {
        let fours = enumerate_lattices(4).unwrap();
        assert_eq!(fours.len(), 2);
        let lengths: Vec<usize> = fours.iter().map(Lattice::length).collect();
        let mut sorted = lengths.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 3]);

        let fives = enumerate_lattices(5).unwrap();
        assert_eq!(fives.iter().filter(|l| !l.is_graded()).count(), 1);
        assert_eq!(fives.iter().filter(|l| l.is_modular()).count(), 4);
    }
}
