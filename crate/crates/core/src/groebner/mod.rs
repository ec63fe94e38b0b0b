//! Buchberger's algorithm over `Q` and Hilbert series of graded quotients.

mod hilbert;

pub use hilbert::{hilbert_series, HilbertSeries};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{RationalMultiPoly, VarList};

/// Monomial orders on exponent vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically: the
    /// monomial with the smaller exponent in the last differing variable wins.
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32], weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => {
                let deg = |m: &[u32]| -> u64 {
                    m.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
                };
                deg(a).cmp(&deg(b)).then_with(|| {
                    for k in (0..a.len()).rev() {
                        if a[k] != b[k] {
                            return b[k].cmp(&a[k]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Exponent vector with the degrevlex order baked into `Ord`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mono {
    deg: u64,
    exps: Vec<u32>,
}

impl Mono {
    fn new(exps: Vec<u32>, weights: &[u32]) -> Self {
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
        Self { deg, exps }
    }

    fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Mono, weights: &[u32]) -> Mono {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Mono::new(exps, weights)
    }

    fn coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self / other`, assuming divisibility.
    fn quotient(&self, other: &Mono, weights: &[u32]) -> Mono {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Mono::new(exps, weights)
    }

    fn times(&self, other: &Mono) -> Mono {
        Mono {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for k in (0..self.exps.len()).rev() {
                if self.exps[k] != other.exps[k] {
                    return other.exps[k].cmp(&self.exps[k]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Working polynomial: terms keyed by monomial, leading term last.
type Poly = BTreeMap<Mono, BigRational>;

fn leading(p: &Poly) -> (&Mono, &BigRational) {
    p.last_key_value().expect("nonzero polynomial")
}

fn make_monic(p: &mut Poly) {
    let inv = BigRational::one() / leading(p).1;
    for c in p.values_mut() {
        *c = &*c * &inv;
    }
}

/// `p -= c * m * q`.
fn sub_multiple(p: &mut Poly, c: &BigRational, m: &Mono, q: &Poly) {
    for (qm, qc) in q {
        let key = qm.times(m);
        let delta = c * qc;
        match p.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(-delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() -= delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Full reduction of `p` modulo the monic polynomials `basis`.
fn reduce(mut p: Poly, basis: &[Poly], weights: &[u32]) -> Poly {
    let mut rem = Poly::new();
    while let Some((m, c)) = p.pop_last() {
        match basis.iter().find(|g| leading(g).0.divides(&m)) {
            Some(g) => {
                let q = m.quotient(leading(g).0, weights);
                // put the leading term back so the subtraction cancels it
                p.insert(m, c.clone());
                sub_multiple(&mut p, &c, &q, g);
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Poly, g: &Poly, weights: &[u32]) -> Poly {
    let (fm, _) = leading(f);
    let (gm, _) = leading(g);
    let l = fm.lcm(gm, weights);
    let mut s = Poly::new();
    sub_multiple(&mut s, &-BigRational::one(), &l.quotient(fm, weights), f);
    sub_multiple(&mut s, &BigRational::one(), &l.quotient(gm, weights), g);
    s
}

/// Clears denominators and content; the leading coefficient becomes positive.
fn primitive(p: &RationalMultiPoly, order: MonomialOrder) -> RationalMultiPoly {
    let weights: Vec<u32> = p.variables().iter().map(|v| v.degree).collect();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let lead = p
        .terms()
        .max_by(|a, b| order.cmp(a.0, b.0, &weights))
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    let mut factor = BigRational::new(den, num);
    if lead {
        factor = -factor;
    }
    p.scale(&factor)
}

/// Leading exponent vector of a nonzero polynomial.
pub fn leading_monomial(p: &RationalMultiPoly, order: MonomialOrder) -> Option<Vec<u32>> {
    let weights: Vec<u32> = p.variables().iter().map(|v| v.degree).collect();
    p.terms()
        .map(|(e, _)| e)
        .max_by(|a, b| order.cmp(a, b, &weights))
        .map(<[u32]>::to_vec)
}

/// The reduced Gröbner basis of the ideal generated by `generators`, each
/// element integral and primitive with positive leading coefficient, sorted
/// by increasing leading monomial.
///
/// Pairs are processed by smallest lcm degree, ties by creation order; pairs
/// are skipped by the coprime-leading-monomial and chain criteria.
pub fn buchberger(generators: &[RationalMultiPoly], order: MonomialOrder) -> Vec<RationalMultiPoly> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let vars: VarList = first.variables().clone();
    assert!(
        generators.iter().all(|g| g.variables() == &vars),
        "generators must share one variable list"
    );
    let weights: Vec<u32> = vars.iter().map(|v| v.degree).collect();
    let to_poly = |p: &RationalMultiPoly| -> Poly {
        p.terms()
            .map(|(e, c)| (Mono::new(e.to_vec(), &weights), c.clone()))
            .collect()
    };

    // inter-reduce the input first so the pair set starts small
    let mut basis: Vec<Poly> = Vec::new();
    let mut inputs: Vec<Poly> = generators.iter().map(to_poly).filter(|p| !p.is_empty()).collect();
    inputs.sort_by(|a, b| leading(a).0.cmp(leading(b).0));
    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let add = |p: Poly, basis: &mut Vec<Poly>, pairs: &mut BTreeSet<(u64, usize, usize)>| {
        let mut p = p;
        make_monic(&mut p);
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let deg = leading(g).0.lcm(leading(&p).0, &weights).deg;
            pairs.insert((deg, i, j));
        }
        basis.push(p);
    };
    for p in inputs {
        let r = reduce(p, &basis, &weights);
        if !r.is_empty() {
            add(r, &mut basis, &mut pairs);
        }
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let (fi, fj) = (leading(&basis[i]).0, leading(&basis[j]).0);
        if fi.coprime(fj) {
            continue;
        }
        let l = fi.lcm(fj, &weights);
        let pending = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            let d = leading(&basis[a]).0.lcm(leading(&basis[b]).0, &weights).deg;
            pairs.contains(&(d, a, b))
        };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && leading(&basis[k]).0.divides(&l) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &weights);
        let r = reduce(s, &basis, &weights);
        if !r.is_empty() {
            add(r, &mut basis, &mut pairs);
        }
    }

    // minimal basis, then interreduce
    let mut keep: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = leading(g).0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let hm = leading(h).0;
            o != k && hm.divides(lm) && (hm != lm || o < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| leading(a).0.cmp(leading(b).0));
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = leading(&keep[k]);
        let mut tail = keep[k].clone();
        tail.remove(lm);
        let mut r = reduce(tail, &others, &weights);
        r.insert(lm.clone(), lc.clone());
        reduced.push(r);
    }
    reduced
        .into_iter()
        .map(|p| {
            let q = RationalMultiPoly::from_terms(&vars, p.into_iter().map(|(m, c)| (m.exps, c)));
            primitive(&q, order)
        })
        .collect()
}

/// Normal form of `p` modulo a Gröbner basis.
pub fn normal_form(p: &RationalMultiPoly, basis: &[RationalMultiPoly]) -> RationalMultiPoly {
    let vars = p.variables().clone();
    let weights: Vec<u32> = vars.iter().map(|v| v.degree).collect();
    let to_poly = |p: &RationalMultiPoly| -> Poly {
        p.terms()
            .map(|(e, c)| (Mono::new(e.to_vec(), &weights), c.clone()))
            .collect()
    };
    let gs: Vec<Poly> = basis
        .iter()
        .map(|g| {
            let mut g = to_poly(g);
            make_monic(&mut g);
            g
        })
        .collect();
    let r = reduce(to_poly(p), &gs, &weights);
    RationalMultiPoly::from_terms(&vars, r.into_iter().map(|(m, c)| (m.exps, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, var_list, Variable};

    fn ring(names: &[&str]) -> VarList {
        var_list(names.iter().map(|n| Variable::new(*n, 1)))
    }

    fn v(vars: &VarList, i: usize) -> RationalMultiPoly {
        RationalMultiPoly::var(vars, i)
    }

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::DegRevLex;
        let w = [1, 1, 1];
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for pair in seq.windows(2) {
            assert_eq!(o.cmp(&pair[0], &pair[1], &w), Ordering::Greater);
        }
        assert_eq!(o.cmp(&[0, 0, 1], &[2, 0, 0], &[3, 1, 1]), Ordering::Less);
    }

    #[test]
    fn linear_elimination() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let gb = buchberger(&[&x + &y, &x - &y], MonomialOrder::DegRevLex);
        assert_eq!(gb, vec![y.clone(), x.clone()]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let gens = vec![&x * &x, &x * &y];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex);
        assert_eq!(gb, vec![&x * &y, &x * &x]);
    }

    #[test]
    fn empty_and_unit() {
        assert!(buchberger(&[], MonomialOrder::DegRevLex).is_empty());
        let r = ring(&["x"]);
        let gb = buchberger(&[&v(&r, 0) + &RationalMultiPoly::one(&r), RationalMultiPoly::zero(&r)], MonomialOrder::DegRevLex);
        assert_eq!(gb, vec![&v(&r, 0) + &RationalMultiPoly::one(&r)]);
    }

    #[test]
    fn coefficients_primitive() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let g = (&x.scale(&rat(-2)) + &y.scale(&BigRational::new(4.into(), 3.into()))).pow(1);
        let gb = buchberger(&[g], MonomialOrder::DegRevLex);
        assert_eq!(gb[0].to_string(), "3*x - 2*y");
    }

    #[test]
    fn twisted_cubic() {
        // ideal of the twisted cubic: 2x2 minors of [[x, y, z], [y, z, w]]
        let r = ring(&["x", "y", "z", "w"]);
        let (x, y, z, w) = (v(&r, 0), v(&r, 1), v(&r, 2), v(&r, 3));
        let gens = vec![&(&x * &z) - &(&y * &y), &(&x * &w) - &(&y * &z), &(&y * &w) - &(&z * &z)];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex);
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
        assert!(!normal_form(&(&x * &y), &gb).is_zero());
    }

    #[test]
    fn permutation_invariant() {
        let r = ring(&["x", "y", "z"]);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let mut gens = vec![
            &(&x * &x) - &(&y * &z),
            &(&x * &y) + &(&z * &z),
            &(&y * &y) - &(&x * &z),
        ];
        let base = buchberger(&gens, MonomialOrder::DegRevLex);
        gens.reverse();
        assert_eq!(buchberger(&gens, MonomialOrder::DegRevLex), base);
        gens.swap(0, 1);
        assert_eq!(buchberger(&gens, MonomialOrder::DegRevLex), base);
    }
}
