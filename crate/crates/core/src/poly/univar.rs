use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bivar::{fmt_power, fmt_signed_terms};
use super::BivarPolynomial;

/// Dense polynomial in one variable `t`; index `k` holds the coefficient of `t^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivarPolynomial {
    coeffs: Vec<BigInt>,
}

impl UnivarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coefficients(vec![BigInt::one()])
    }

    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        let mut poly = Self { coeffs };
        poly.trim();
        poly
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients of `(t^2)^k` if every odd coefficient vanishes.
    pub fn even_part(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Value at `t = 1` (the Euler characteristic for a Poincaré polynomial
    /// with only even-degree classes, the total Betti number in general).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// Substitutes `u = v = -t`, turning a Hodge polynomial into a Poincaré polynomial.
pub fn poincare_from_hodge(e: &BivarPolynomial) -> UnivarPolynomial {
    let top = e.total_degree().map_or(0, |d| d as usize + 1);
    let mut coeffs = vec![BigInt::zero(); top];
    for (p, q, c) in e.terms() {
        let k = (p + q) as usize;
        if k % 2 == 0 {
            coeffs[k] += c;
        } else {
            coeffs[k] -= c;
        }
    }
    UnivarPolynomial::from_coefficients(coeffs)
}

impl Add for &UnivarPolynomial {
    type Output = UnivarPolynomial;

    fn add(self, rhs: &UnivarPolynomial) -> UnivarPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UnivarPolynomial::from_coefficients(coeffs)
    }
}

impl Sub for &UnivarPolynomial {
    type Output = UnivarPolynomial;

    fn sub(self, rhs: &UnivarPolynomial) -> UnivarPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UnivarPolynomial::from_coefficients(coeffs)
    }
}

impl Mul for &UnivarPolynomial {
    type Output = UnivarPolynomial;

    fn mul(self, rhs: &UnivarPolynomial) -> UnivarPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivarPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivarPolynomial::from_coefficients(coeffs)
    }
}

impl fmt::Display for UnivarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, fmt_power("t", k as u32)));
        fmt_signed_terms(f, terms)
    }
}

impl Serialize for UnivarPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnivarPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<super::Coeff> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| c.parse().map_err(D::Error::custom))
            .collect::<Result<Vec<BigInt>, _>>()?;
        Ok(Self::from_coefficients(coeffs))
    }
}
