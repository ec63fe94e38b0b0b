use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// A polynomial `Σ c_{p,q} u^p v^q` with arbitrary-precision integer coefficients.
///
/// Terms are kept in a sorted map with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(p: u32, q: u32, c: impl Into<BigInt>) -> Self {
        let mut poly = Self::zero();
        poly.add_term(p, q, c.into());
        poly
    }

    /// `(uv)^k`.
    pub fn uv_pow(k: u32) -> Self {
        Self::monomial(k, k, 1)
    }

    /// Builds `Σ c_k (uv)^k` from a coefficient list indexed by `k`.
    pub fn from_uv_coefficients<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut poly = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            poly.add_term(k as u32, k as u32, c.clone().into());
        }
        poly
    }

    /// The q-integer `[c]_q = 1 + uv + ... + (uv)^{c-1}`, the Hodge polynomial
    /// of `P^{c-1}`. Zero when `c = 0`.
    pub fn q_integer(c: u32) -> Self {
        let mut poly = Self::zero();
        for k in 0..c {
            poly.add_term(k, k, BigInt::one());
        }
        poly
    }

    /// Hodge polynomial of projective space `P^k`.
    pub fn projective_space(k: u32) -> Self {
        Self::q_integer(k + 1)
    }

    /// Hodge polynomial of affine space `C^k`.
    pub fn affine_space(k: u32) -> Self {
        Self::uv_pow(k)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut poly = Self::zero();
        for (p, q, c) in terms {
            poly.add_term(p, q, c.into());
        }
        poly
    }

    fn add_term(&mut self, p: u32, q: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> BigInt {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Terms in ascending lexicographic `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every term is a power of `uv`.
    pub fn is_uv_pure(&self) -> bool {
        self.terms.keys().all(|&(p, q)| p == q)
    }

    /// Coefficients of `(uv)^k` for `k = 0..`, or `None` if the polynomial
    /// has a term with `p != q`.
    pub fn uv_coefficients(&self) -> Option<Vec<BigInt>> {
        if !self.is_uv_pure() {
            return None;
        }
        let top = self.terms.keys().map(|&(p, _)| p as usize).max();
        let mut out = vec![BigInt::zero(); top.map_or(0, |t| t + 1)];
        for (&(p, _), c) in &self.terms {
            out[p as usize] = c.clone();
        }
        Some(out)
    }

    /// Largest `p + q` over the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(p, q)| p + q).max()
    }

    /// Value at `u = v = 0`.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Substitutes `(u, v) -> (N - p, N - q)` exponent-wise; `None` if some
    /// exponent exceeds `n`.
    pub fn dual(&self, n: u32) -> Option<Self> {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            if p > n || q > n {
                return None;
            }
            out.add_term(n - p, n - q, c.clone());
        }
        Some(out)
    }

    /// Exact division in `Z[u, v]`.
    ///
    /// Uses lexicographic long division on `(p, q)`; any leftover or
    /// non-integral quotient coefficient is reported as a divisibility error.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (&(dp, dq), dc) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&(rp, rq), rc)) = rem.terms.iter().next_back() {
            if rp < dp || rq < dq {
                return Err(PolyError::NotDivisible);
            }
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let step = Self::monomial(rp - dp, rq - dq, c);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }
}

/// `(uv)^1 + ... + (uv)^{delta-1}`, i.e. `((uv)^delta - uv) / (uv - 1)`.
///
/// This is the contribution of blowing up a center of codimension `delta`
/// (per unit of Hodge polynomial of the center). A divisorial center
/// (`delta = 1`) contributes zero.
pub fn blowup_factor(delta: u32) -> Result<BivarPolynomial, PolyError> {
    if delta == 0 {
        return Err(PolyError::ZeroDimensionGap);
    }
    let mut poly = BivarPolynomial::zero();
    for k in 1..delta {
        poly.add_term(k, k, BigInt::one());
    }
    Ok(poly)
}

impl Add for &BivarPolynomial {
    type Output = BivarPolynomial;

    fn add(self, rhs: &BivarPolynomial) -> BivarPolynomial {
        let mut out = self.clone();
        for (&(p, q), c) in &rhs.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl Sub for &BivarPolynomial {
    type Output = BivarPolynomial;

    fn sub(self, rhs: &BivarPolynomial) -> BivarPolynomial {
        let mut out = self.clone();
        for (&(p, q), c) in &rhs.terms {
            out.add_term(p, q, -c);
        }
        out
    }
}

impl Mul for &BivarPolynomial {
    type Output = BivarPolynomial;

    fn mul(self, rhs: &BivarPolynomial) -> BivarPolynomial {
        let mut out = BivarPolynomial::zero();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &rhs.terms {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPolynomial {
    type Output = BivarPolynomial;

    fn neg(self) -> BivarPolynomial {
        BivarPolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for BivarPolynomial {
            type Output = BivarPolynomial;

            fn $method(self, rhs: BivarPolynomial) -> BivarPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for BivarPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    monomial: &str,
) -> fmt::Result {
    let abs = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    match (monomial.is_empty(), abs.is_one()) {
        (true, _) => write!(f, "{abs}"),
        (false, true) => write!(f, "{monomial}"),
        (false, false) => write!(f, "{abs} {monomial}"),
    }
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ if var.len() > 1 => format!("({var})^{e}"),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for BivarPolynomial {
    /// Ascending `(p, q)` order; diagonal terms print as powers of `uv`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(p, q), c)) in self.terms.iter().enumerate() {
            let monomial = if p == q {
                power("uv", p)
            } else {
                [power("u", p), power("v", q)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            write_term(f, i == 0, c, &monomial)?;
        }
        Ok(())
    }
}

pub(crate) fn fmt_signed_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a BigInt, String)>,
{
    let mut first = true;
    for (c, monomial) in terms {
        write_term(f, first, c, &monomial)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn fmt_power(var: &str, e: u32) -> String {
    power(var, e)
}

impl Serialize for BivarPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(u32, u32, String)> = self
            .terms
            .iter()
            .map(|(&(p, q), c)| (p, q, c.to_string()))
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<(u32, u32, super::Coeff)> = Vec::deserialize(deserializer)?;
        let mut poly = Self::zero();
        for (p, q, c) in rows {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            poly.add_term(p, q, c);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv_poly(coeffs: &[i64]) -> BivarPolynomial {
        BivarPolynomial::from_uv_coefficients(coeffs)
    }

    #[test]
    fn additive_identity() {
        let a = uv_poly(&[1, 1]);
        assert_eq!(&a + &BivarPolynomial::zero(), a);
    }

    #[test]
    fn binomial_square() {
        let a = uv_poly(&[1, 1]);
        assert_eq!(&a * &a, uv_poly(&[1, 2, 1]));
    }

    #[test]
    fn exact_division_recovers_quotient() {
        // ((uv)^3 - uv) / (uv - 1) = uv + (uv)^2
        let num = uv_poly(&[0, -1, 0, 1]);
        let den = uv_poly(&[-1, 1]);
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, uv_poly(&[0, 1, 1]));
        assert_eq!(&quot * &den, num);
    }

    #[test]
    fn exact_division_rejects_non_divisor() {
        let num = uv_poly(&[1, 0, 1]);
        let den = uv_poly(&[-1, 1]);
        assert_eq!(num.exact_div(&den), Err(PolyError::NotDivisible));
        let two = BivarPolynomial::constant(2);
        assert_eq!(
            BivarPolynomial::constant(3).exact_div(&two),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            num.exact_div(&BivarPolynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn exact_division_mixed_terms() {
        let a = BivarPolynomial::from_terms([(1, 0, 2), (0, 1, -3), (2, 2, 1)]);
        let b = BivarPolynomial::from_terms([(0, 0, 1), (1, 0, -1), (0, 2, 5)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
    }

    #[test]
    fn blowup_factor_values() {
        assert_eq!(blowup_factor(1).unwrap(), BivarPolynomial::zero());
        assert_eq!(blowup_factor(2).unwrap(), uv_poly(&[0, 1]));
        assert_eq!(blowup_factor(3).unwrap(), uv_poly(&[0, 1, 1]));
        assert_eq!(blowup_factor(0), Err(PolyError::ZeroDimensionGap));
    }

    #[test]
    fn blowup_factor_matches_rational_division() {
        let uv = BivarPolynomial::uv_pow(1);
        let den = &uv - &BivarPolynomial::one();
        for delta in 1..8 {
            let num = &BivarPolynomial::uv_pow(delta) - &uv;
            assert_eq!(num.exact_div(&den).unwrap(), blowup_factor(delta).unwrap());
        }
    }

    #[test]
    fn display_ascending() {
        assert_eq!(uv_poly(&[1, 5, 1]).to_string(), "1 + 5 uv + (uv)^2");
        assert_eq!(uv_poly(&[2, -3, 0, 1]).to_string(), "2 - 3 uv + (uv)^3");
        let curve = BivarPolynomial::from_terms([(0, 0, 1), (1, 0, -2), (0, 1, -2), (1, 1, 1)]);
        assert_eq!(curve.to_string(), "1 - 2 v - 2 u + uv");
        assert_eq!(BivarPolynomial::zero().to_string(), "0");
        assert_eq!((-&uv_poly(&[0, 1])).to_string(), "-uv");
    }

    #[test]
    fn json_form() {
        let p = BivarPolynomial::from_terms([(1, 1, 5), (0, 0, 1), (2, 2, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[0,0,"1"],[1,1,"5"],[2,2,"1"]]"#);
        let back: BivarPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        // zero coefficients are dropped, repeated exponents are summed
        let loose: BivarPolynomial =
            serde_json::from_str(r#"[[1,1,"2"],[1,1,-2],[0,0,0],[3,0,"7"]]"#).unwrap();
        assert_eq!(loose, BivarPolynomial::monomial(3, 0, 7));
    }

    #[test]
    fn huge_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = BivarPolynomial::constant(big.clone());
        let s = serde_json::to_string(&p).unwrap();
        let back: BivarPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back.constant_term(), big);
    }
}
