use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{leading_monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{RationalMultiPoly, UnivarPolynomial, VarList};

/// Hilbert series `numerator(t) / Π (1 - t^w)` of a graded quotient. For
/// Artinian quotients the expansion is a polynomial, kept in `finite`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: UnivarPolynomial,
    weights: Vec<u32>,
    finite: Option<Vec<BigInt>>,
}

impl HilbertSeries {
    pub fn numerator(&self) -> &UnivarPolynomial {
        &self.numerator
    }

    /// Exponents `w` of the denominator factors `1 - t^w`.
    pub fn denominator_weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_some()
    }

    /// Dimensions of all graded pieces, when finitely many are nonzero.
    pub fn coefficients(&self) -> Option<&[BigInt]> {
        self.finite.as_deref()
    }

    /// Dimensions of the graded pieces of degree `0..len`.
    pub fn first(&self, len: usize) -> Vec<BigInt> {
        let mut series: Vec<BigInt> = (0..len).map(|k| self.numerator.coeff(k)).collect();
        for &w in &self.weights {
            let w = w as usize;
            for k in w..len {
                let prev = series[k - w].clone();
                series[k] += prev;
            }
        }
        series
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[BigInt]| xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        match &self.finite {
            Some(c) => write!(f, "[{}]", show(c)),
            None => write!(f, "[{}, ...]", show(&self.first(8))),
        }
    }
}

/// Numerator of the Hilbert series of `R / (monomials)`, by pivoting on the
/// most frequent variable: `N(I) = N(I + (x)) + t^{w(x)} N(I : x)`.
fn numerator(mut gens: Vec<Vec<u32>>, weights: &[u32]) -> UnivarPolynomial {
    minimalize(&mut gens);
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return UnivarPolynomial::zero();
    }
    let support = |g: &Vec<u32>| g.iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|g| support(g) == 1) {
        // pairwise coprime pure powers
        let mut n = UnivarPolynomial::one();
        for g in &gens {
            let deg: usize = g.iter().zip(weights).map(|(&e, &w)| (e * w) as usize).sum();
            n = &n * &(&UnivarPolynomial::one() - &UnivarPolynomial::monomial(deg));
        }
        return n;
    }
    let nvars = weights.len();
    let pivot = (0..nvars)
        .max_by_key(|&x| (gens.iter().filter(|g| g[x] > 0 && support(g) > 1).count(), std::cmp::Reverse(x)))
        .expect("nonempty variable list");
    let mut with_x = gens.clone();
    let mut unit = vec![0; nvars];
    unit[pivot] = 1;
    with_x.push(unit);
    let colon: Vec<Vec<u32>> = gens
        .into_iter()
        .map(|mut g| {
            g[pivot] = g[pivot].saturating_sub(1);
            g
        })
        .collect();
    let shifted = &UnivarPolynomial::monomial(weights[pivot] as usize) * &numerator(colon, weights);
    &numerator(with_x, weights) + &shifted
}

fn minimalize(gens: &mut Vec<Vec<u32>>) {
    gens.sort();
    gens.dedup();
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let all = gens.clone();
    gens.retain(|g| !all.iter().any(|h| h != g && divides(h, g)));
}

/// Hilbert series of `R / I` where `basis` is a Gröbner basis of `I` for the
/// degree-reverse-lexicographic order and `R` is graded by variable degrees.
pub fn hilbert_series(basis: &[RationalMultiPoly], vars: &VarList) -> Result<HilbertSeries> {
    let weights: Vec<u32> = vars.iter().map(|v| v.degree).collect();
    let mut leads = Vec::with_capacity(basis.len());
    for g in basis {
        if g.variables() != vars {
            return Err(Error::Grading("basis element over a different variable list".into()));
        }
        if !g.is_homogeneous() {
            return Err(Error::Grading(format!("{g} is not homogeneous")));
        }
        if let Some(m) = leading_monomial(g, MonomialOrder::DegRevLex) {
            leads.push(m);
        }
    }
    let artinian = (0..weights.len()).all(|x| {
        leads.iter().any(|m| m[x] > 0 && m.iter().enumerate().all(|(y, &e)| y == x || e == 0))
    }) || leads.iter().any(|m| m.iter().all(|&e| e == 0));
    let numerator = numerator(leads, &weights);
    let finite = artinian.then(|| {
        let len = numerator.degree().map_or(1, |d| d + 1);
        let mut c = HilbertSeries {
            numerator: numerator.clone(),
            weights: weights.clone(),
            finite: None,
        }
        .first(len);
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        c
    });
    Ok(HilbertSeries { numerator, weights, finite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::poly::{rat, var_list, Variable};
    use num_traits::One;

    fn ring(names: &[&str]) -> VarList {
        var_list(names.iter().map(|n| Variable::new(*n, 1)))
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    /// Counts standard monomials of each degree directly.
    fn enumerate(leads: &[Vec<u32>], weights: &[u32], len: usize) -> Vec<BigInt> {
        let mut counts = vec![BigInt::zero(); len];
        fn go(k: usize, cur: &mut Vec<u32>, deg: usize, w: &[u32], leads: &[Vec<u32>], counts: &mut [BigInt]) {
            if k == w.len() {
                if !leads.iter().any(|m| m.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
                    counts[deg] += 1;
                }
                return;
            }
            let mut e = 0;
            while deg + e * (w[k] as usize) < counts.len() {
                cur.push(e as u32);
                go(k + 1, cur, deg + e * w[k] as usize, w, leads, counts);
                cur.pop();
                e += 1;
            }
        }
        go(0, &mut Vec::new(), 0, weights, leads, &mut counts);
        counts
    }

    #[test]
    fn x2_xy() {
        let r = ring(&["x", "y"]);
        let (x, y) = (RationalMultiPoly::var(&r, 0), RationalMultiPoly::var(&r, 1));
        let hs = hilbert_series(&[&x * &x, &x * &y], &r).unwrap();
        assert!(!hs.is_finite());
        assert_eq!(hs.first(6), ints(&[1, 2, 1, 1, 1, 1]));
        assert_eq!(hs.first(6), enumerate(&[vec![2, 0], vec![1, 1]], &[1, 1], 6));
    }

    #[test]
    fn small_presentation() {
        let r = ring(&["T", "h"]);
        let (t, h) = (RationalMultiPoly::var(&r, 0), RationalMultiPoly::var(&r, 1));
        let rels = vec![
            h.pow(3),
            &h * &t,
            &(&(&t * &t) - &(&h * &t).scale(&rat(2))) + &(&h * &h),
        ];
        let gb = buchberger(&rels, MonomialOrder::DegRevLex);
        let hs = hilbert_series(&gb, &r).unwrap();
        assert_eq!(hs.coefficients(), Some(ints(&[1, 2, 1]).as_slice()));
        assert_eq!(hs.to_string(), "[1, 2, 1]");
    }

    #[test]
    fn free_ring_is_binomial() {
        for k in 1..5usize {
            let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let r = ring(&refs);
            let hs = hilbert_series(&[], &r).unwrap();
            let want: Vec<BigInt> = (0..6u64)
                .map(|n| {
                    // C(k-1+n, n)
                    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(k as u64 - 1 + i) / BigInt::from(i))
                })
                .collect();
            assert_eq!(hs.first(6), want);
        }
    }

    #[test]
    fn weighted_grading() {
        let r = var_list([Variable::new("a", 1), Variable::new("b", 2)]);
        let (a, b) = (RationalMultiPoly::var(&r, 0), RationalMultiPoly::var(&r, 1));
        let hs = hilbert_series(&[a.pow(2), b.pow(2)], &r).unwrap();
        assert_eq!(hs.coefficients(), Some(ints(&[1, 1, 1, 1]).as_slice()));
        assert_eq!(hs.first(7), enumerate(&[vec![2, 0], vec![0, 2]], &[1, 2], 7));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = ring(&["x"]);
        let x = RationalMultiPoly::var(&r, 0);
        let g = &x + &RationalMultiPoly::one(&r);
        assert!(matches!(hilbert_series(&[g], &r), Err(Error::Grading(_))));
    }

    #[test]
    fn pivot_recursion_matches_enumeration() {
        let leads = vec![vec![2, 1, 0, 0], vec![0, 3, 1, 0], vec![1, 0, 2, 1], vec![0, 0, 0, 3], vec![1, 1, 1, 1]];
        let w = [1, 1, 2, 1];
        let n = numerator(leads.clone(), &w);
        let hs = HilbertSeries { numerator: n, weights: w.to_vec(), finite: None };
        assert_eq!(hs.first(10), enumerate(&leads, &w, 10));
    }
}
