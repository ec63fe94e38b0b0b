use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::groebner::MonomialOrder;

/// A named polynomial variable with a positive grading degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        assert!(degree > 0, "variable degrees must be positive");
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// Shared, ordered variable list.
pub type VarList = Arc<[Variable]>;

pub fn var_list(vars: impl IntoIterator<Item = Variable>) -> VarList {
    vars.into_iter().collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial over the rationals.
///
/// All polynomials taking part in one arithmetic operation must share the
/// same variable list; mixing lists is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMultiPoly {
    vars: VarList,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RationalMultiPoly {
    pub fn zero(vars: &VarList) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarList, c: BigRational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn monomial(vars: &VarList, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut poly = Self::zero(vars);
        poly.add_term(exps, c);
        poly
    }

    /// The variable at position `idx`.
    pub fn var(vars: &VarList, idx: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Self::monomial(vars, exps, BigRational::one())
    }

    /// Looks a variable up by name.
    pub fn var_named(vars: &VarList, name: &str) -> Option<Self> {
        vars.iter()
            .position(|v| v.name == name)
            .map(|idx| Self::var(vars, idx))
    }

    pub fn from_terms<I>(vars: &VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut poly = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            poly.add_term(exps, c);
        }
        poly
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &VarList {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Weighted degree of an exponent vector under the declared variable degrees.
    pub fn monomial_degree(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(self.vars.iter())
            .map(|(e, v)| e * v.degree)
            .sum()
    }

    /// `Some(d)` when every term has weighted degree `d`; the zero polynomial
    /// is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| self.monomial_degree(e));
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the polynomial over a larger variable list, mapping each
    /// current variable to the position `positions[i]` in `target`.
    pub fn embed(&self, target: &VarList, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.vars.len());
        let mut out = Self::zero(target);
        for (exps, c) in &self.terms {
            let mut new = vec![0; target.len()];
            for (i, &e) in exps.iter().enumerate() {
                new[positions[i]] += e;
            }
            out.add_term(new, c.clone());
        }
        out
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }
}

impl Add for &RationalMultiPoly {
    type Output = RationalMultiPoly;

    fn add(self, rhs: &RationalMultiPoly) -> RationalMultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RationalMultiPoly {
    type Output = RationalMultiPoly;

    fn sub(self, rhs: &RationalMultiPoly) -> RationalMultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &RationalMultiPoly {
    type Output = RationalMultiPoly;

    fn mul(self, rhs: &RationalMultiPoly) -> RationalMultiPoly {
        self.check_vars(rhs);
        let mut out = RationalMultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &RationalMultiPoly {
    type Output = RationalMultiPoly;

    fn neg(self) -> RationalMultiPoly {
        RationalMultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RationalMultiPoly {
    /// Terms in descending degree-reverse-lexicographic order, e.g.
    /// `T_p^2 - 2*h*T_p + h^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::DegRevLex;
        let weights: Vec<u32> = self.vars.iter().map(|v| v.degree).collect();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0, &weights));
        for (i, (exps, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = exps
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(&e, v)| {
                    if e == 1 {
                        v.name.clone()
                    } else {
                        format!("{}^{}", v.name, e)
                    }
                })
                .collect();
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Converts an integer to a rational coefficient.
pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}
