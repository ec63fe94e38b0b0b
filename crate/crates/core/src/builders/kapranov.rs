use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::BivarPolynomial;
use crate::poset::{Arrangement, ArrangementMeta, Family, Space, Stratum};

/// Subsets of `{1, ..., m}` with `lo <= |S| <= hi`, by size then lexicographically.
fn subsets(m: u32, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in lo..=hi.min(m) {
        let mut s: Vec<u32> = (1..=k).collect();
        loop {
            out.push(s.clone());
            // advance to the next k-combination
            let Some(pos) = (0..k as usize).rev().find(|&p| s[p] < m - (k - 1 - p as u32)) else {
                break;
            };
            s[pos] += 1;
            for q in pos + 1..k as usize {
                s[q] = s[q - 1] + 1;
            }
        }
    }
    out
}

fn subset_id(s: &[u32], m: u32) -> String {
    let sep = if m >= 10 { "." } else { "" };
    let body: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("S{}", body.join(sep))
}

/// The arrangement in `P^n` whose blowup is the moduli space of stable
/// `(n+3)`-pointed rational curves: spans of every set of at most `n` among
/// the points `e_1, ..., e_{n+1}, (1:...:1)`. Stratum ids are `S` followed by
/// the subset, e.g. `S13`.
///
/// The order is subset inclusion and the recorded meet of `span(S)` and
/// `span(S')` is `span(S ∩ S')`. Spans are not closed under intersection:
/// when `S ∪ S'` is all of `[n+2]` the spans meet in a larger subspace
/// outside the arrangement (two lines of `P^2` through disjoint pairs meet at
/// a point). Such pairs are recorded as transverse pairs instead of being
/// closed up as [`build_linear`](super::build_linear) would.
pub fn build_kapranov(n: u32) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::Builder("Kapranov arrangement needs n >= 1".into()));
    }
    let m = n + 2;
    let sets = subsets(m, 1, n);
    let index: HashMap<&[u32], usize> = sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let strata = sets
        .iter()
        .map(|s| {
            let dim = s.len() as u32 - 1;
            Stratum::new(subset_id(s, m), dim, BivarPolynomial::projective_space(dim))
        })
        .collect();
    let subset = |a: &[u32], b: &[u32]| a.iter().all(|x| b.contains(x));
    let mut relations = Vec::new();
    let mut intersections = Vec::new();
    let mut transverse = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if subset(a, b) {
                relations.push((i, j));
            } else if subset(b, a) {
                relations.push((j, i));
            } else {
                let common: Vec<u32> = a.iter().copied().filter(|x| b.contains(x)).collect();
                if !common.is_empty() {
                    intersections.push(((i, j), vec![index[common.as_slice()]]));
                }
                // S and S' together use all n + 2 points: the spans meet in
                // dimension |S ∩ S'|, one more than span(S ∩ S')
                if a.len() + b.len() - common.len() == m as usize {
                    transverse.push((i, j));
                }
            }
        }
    }
    Arrangement::new(n, BivarPolynomial::projective_space(n), strata, relations, intersections)?
        .with_meta(ArrangementMeta {
            family: Some(Family::Kapranov),
            space: Some(Space::Projective),
            conjectural: false,
        })
        .with_transverse_pairs(transverse)
}

/// The points `e_1, ..., e_{n+1}, (1:...:1)` as vectors of `Q^{n+1}`.
pub fn kapranov_points(n: u32) -> Vec<Vec<BigRational>> {
    (1..=n + 2)
        .map(|k| {
            (1..=n + 1)
                .map(|c| {
                    if k == n + 2 || c == k {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 1, 2).len(), 10);
        assert_eq!(subsets(3, 2, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn counts() {
        for n in 1..=4u32 {
            let arr = build_kapranov(n).unwrap();
            let want: u64 = (1..=n as u64).map(|k| binom(n as u64 + 2, k)).sum();
            assert_eq!(arr.len() as u64, want, "n = {n}");
            assert!(arr.is_regular(), "n = {n}");
        }
    }

    #[test]
    fn n2_order_is_inclusion() {
        let arr = build_kapranov(2).unwrap();
        assert_eq!(arr.len(), 10);
        let l = arr.index_of("S14").unwrap();
        let below: Vec<&str> = arr.below_set(l).iter().map(|i| arr.stratum(i).id.as_str()).collect();
        assert_eq!(below, vec!["S1", "S4"]);
        assert_eq!(arr.rank_of("S2").unwrap(), 0);
        assert_eq!(arr.rank_of("S23").unwrap(), 1);
        assert_eq!(arr.meta().family, Some(Family::Kapranov));
    }

    #[test]
    fn order_matches_linear_containment() {
        use crate::builders::LinearSubspace;
        for n in 2..=3u32 {
            let arr = build_kapranov(n).unwrap();
            let pts = kapranov_points(n);
            let spans: Vec<LinearSubspace> = subsets(n + 2, 1, n)
                .iter()
                .map(|s| {
                    let rows = s.iter().map(|&k| pts[k as usize - 1].clone()).collect();
                    LinearSubspace::projective_span(n, rows).unwrap()
                })
                .collect();
            for i in 0..arr.len() {
                assert_eq!(spans[i].dim(), arr.stratum(i).dim);
                for j in 0..arr.len() {
                    assert_eq!(i != j && spans[j].contains(&spans[i]), arr.less(i, j));
                }
            }
        }
    }

    #[test]
    fn transverse_pairs_meet_outside() {
        use crate::builders::LinearSubspace;
        let n = 3;
        let arr = build_kapranov(n).unwrap();
        let pts = kapranov_points(n);
        let spans: Vec<LinearSubspace> = subsets(n + 2, 1, n)
            .iter()
            .map(|s| LinearSubspace::projective_span(n, s.iter().map(|&k| pts[k as usize - 1].clone()).collect()).unwrap())
            .collect();
        for i in 0..arr.len() {
            for j in i + 1..arr.len() {
                if arr.comparable(i, j) {
                    continue;
                }
                let actual = spans[i].intersect(&spans[j]).map(|x| x.dim() as i64).unwrap_or(-1);
                let recorded = match arr.meet(i, j) {
                    crate::poset::Meet::Components(c) => c.first().map(|&c| arr.stratum(c).dim as i64).unwrap_or(-1),
                    _ => unreachable!(),
                };
                assert_eq!(actual > recorded, arr.meets_transversally(i, j));
            }
        }
        let two = build_kapranov(2).unwrap();
        assert_eq!(two.transverse_pairs().count(), 3);
        assert_eq!(two.validate(), Ok(()));
    }

    #[test]
    fn n1_three_points() {
        let arr = build_kapranov(1).unwrap();
        assert_eq!(arr.len(), 3);
        assert!(arr.strata().iter().all(|s| s.dim == 0));
    }

    #[test]
    fn complementary_planes_refused_from_n4() {
        use crate::hodge::{blowup_hodge, HodgeMode};
        // S123 and S456 are planes of P^4 meeting in a point outside the arrangement
        let arr = build_kapranov(4).unwrap();
        let err = blowup_hodge(&arr, HodgeMode::Dp).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)), "{err}");
        for n in 1..=3 {
            assert!(blowup_hodge(&build_kapranov(n).unwrap(), HodgeMode::Dp).is_ok());
        }
    }
}
