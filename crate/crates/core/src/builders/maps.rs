//! Strata of the space of degree-`d` maps `P^1 -> P^n` by root pattern.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::BivarPolynomial;
use crate::poset::{Arrangement, ArrangementMeta, Family, Space, Stratum};

/// `(d0, τ)`: a common factor of degree `d0` and the multiplicity pattern `τ`
/// (weakly decreasing, positive parts summing to `d - d0`) of the remaining
/// common roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPartitionPair {
    pub d0: u32,
    pub tau: Vec<u32>,
}

impl IntPartitionPair {
    /// Number of parts of `τ`.
    pub fn rho(&self) -> u32 {
        self.tau.len() as u32
    }

    /// `(n+1)(d0+1) - 1 + ρ(τ)`.
    pub fn dim(&self, n: u32) -> u32 {
        (n + 1) * (self.d0 + 1) - 1 + self.rho()
    }
}

impl fmt::Display for IntPartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tau.iter().map(|x| x.to_string()).collect();
        write!(f, "N[{};{}]", self.d0, parts.join(","))
    }
}

/// Integer partitions of `m` as weakly decreasing lists, in decreasing
/// lexicographic order (so `(m)` first, `(1, ..., 1)` last).
pub fn integer_partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `coarse` is obtained from `fine` by merging parts (equality included).
pub fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    if fine.iter().sum::<u32>() != coarse.iter().sum::<u32>() || fine.len() < coarse.len() {
        return false;
    }
    let mut items = fine.to_vec();
    items.sort_unstable_by(|a, b| b.cmp(a));
    let mut room = coarse.to_vec();
    fn place(k: usize, items: &[u32], room: &mut [u32]) -> bool {
        if k == items.len() {
            return room.iter().all(|&r| r == 0);
        }
        for b in 0..room.len() {
            // bins with equal remaining room are interchangeable
            if room[b] >= items[k] && !room[..b].contains(&room[b]) {
                room[b] -= items[k];
                if place(k + 1, items, room) {
                    return true;
                }
                room[b] += items[k];
            }
        }
        false
    }
    place(0, &items, &mut room)
}

fn strictly_above(a: &IntPartitionPair, b: &IntPartitionPair) -> bool {
    use std::cmp::Ordering::*;
    match a.d0.cmp(&b.d0) {
        Equal => a.tau != b.tau && refines(&a.tau, &b.tau),
        Greater => {
            let mut padded = a.tau.clone();
            padded.extend(std::iter::repeat(1).take((a.d0 - b.d0) as usize));
            refines(&padded, &b.tau)
        }
        Less => false,
    }
}

/// The poset of strata `N_{d0,τ}` for `0 <= d0 < d`, together with the pair
/// behind each stratum. Hodge fields are zero placeholders and the output is
/// marked conjectural: the strata need not be smooth.
pub fn maps_poset_with_pairs(n: u32, d: u32) -> Result<(Arrangement, Vec<IntPartitionPair>)> {
    if n == 0 || d == 0 {
        return Err(Error::Builder(format!("maps poset needs n, d >= 1, got n = {n}, d = {d}")));
    }
    let mut pairs: Vec<IntPartitionPair> = (0..d)
        .flat_map(|d0| {
            integer_partitions(d - d0)
                .into_iter()
                .map(move |tau| IntPartitionPair { d0, tau })
        })
        .collect();
    pairs.sort_by_key(|p| (p.dim(n), p.d0));

    let len = pairs.len();
    let mut above = vec![vec![false; len]; len];
    let mut relations = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if strictly_above(&pairs[j], &pairs[i]) {
                above[i][j] = true;
                relations.push((i, j));
            }
        }
    }
    // intersections: maximal common lower bounds
    let mut intersections = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if above[i][j] || above[j][i] {
                continue;
            }
            let common: Vec<usize> = (0..len).filter(|&k| above[k][i] && above[k][j]).collect();
            let maximal: Vec<usize> = common
                .iter()
                .copied()
                .filter(|&k| !common.iter().any(|&l| above[k][l]))
                .collect();
            if !maximal.is_empty() {
                intersections.push(((i, j), maximal));
            }
        }
    }
    let strata = pairs
        .iter()
        .map(|p| Stratum::new(p.to_string(), p.dim(n), BivarPolynomial::zero()))
        .collect();
    let ambient_dim = (n + 1) * (d + 1) - 1;
    let arr = Arrangement::new(
        ambient_dim,
        BivarPolynomial::projective_space(ambient_dim),
        strata,
        relations,
        intersections,
    )?
    .with_meta(ArrangementMeta {
        family: Some(Family::Maps),
        space: Some(Space::Projective),
        conjectural: true,
    });
    Ok((arr, pairs))
}

/// Stratum ids are `N[d0;τ]`, e.g. `N[0;1,1]`.
pub fn build_maps_poset(n: u32, d: u32) -> Result<Arrangement> {
    maps_poset_with_pairs(n, d).map(|(arr, _)| arr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(integer_partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(integer_partitions(10).len(), 42);
    }

    #[test]
    fn refinement() {
        assert!(refines(&[1, 1], &[2]));
        assert!(refines(&[2, 1], &[2, 1]));
        assert!(refines(&[2, 2, 1, 1], &[3, 3]));
        assert!(!refines(&[2, 2, 2], &[3, 3]));
        assert!(!refines(&[2], &[1, 1]));
    }

    #[test]
    fn n1_d2() {
        let arr = build_maps_poset(1, 2).unwrap();
        assert_eq!(arr.len(), 3);
        let ids: Vec<&str> = arr.strata().iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, vec!["N[0;2]", "N[0;1,1]", "N[1;1]"]);
        let dims: Vec<u32> = arr.strata().iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![2, 3, 4]);
        assert_eq!(arr.ambient_dim(), 5);
        assert!(arr.less(0, 1) && arr.less(1, 2) && arr.less(0, 2));
        assert_eq!(arr.ranks(), &[0, 1, 2]);
        assert!(arr.meta().conjectural);
    }

    #[test]
    fn d1_single_divisor() {
        for n in 1..4 {
            let arr = build_maps_poset(n, 1).unwrap();
            assert_eq!(arr.len(), 1);
            assert_eq!(arr.stratum(0).dim, n + 1);
            assert_eq!(arr.ambient_dim(), 2 * n + 1);
        }
    }

    #[test]
    fn bottom_below_everything_and_dims_monotone() {
        for (n, d) in [(1, 3), (2, 4), (1, 5)] {
            let arr = build_maps_poset(n, d).unwrap();
            let bottom = arr.index_of(&format!("N[0;{d}]")).unwrap();
            for i in 0..arr.len() {
                if i != bottom {
                    assert!(arr.less(bottom, i), "{}", arr.stratum(i).id);
                }
                for j in arr.above_set(i).iter() {
                    assert!(arr.stratum(i).dim < arr.stratum(j).dim);
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(build_maps_poset(0, 2).is_err());
        assert!(build_maps_poset(1, 0).is_err());
    }
}
