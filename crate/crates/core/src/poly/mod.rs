//! Exact polynomial arithmetic: bivariate Hodge polynomials in `u, v`,
//! univariate Poincaré polynomials in `t`, and rational multivariate
//! polynomials for ring presentations.

mod bivar;
mod multi;
mod univar;

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;

pub use bivar::{blowup_factor, BivarPolynomial};
pub use multi::{rat, var_list, RationalMultiPoly, VarList, Variable};
pub use univar::{poincare_from_hodge, UnivarPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("blowup factor needs a strict dimension gap (delta >= 1)")]
    ZeroDimensionGap,
}

/// A JSON coefficient: a decimal string, or a plain integer for hand-written input.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum Coeff {
    Text(String),
    Int(i64),
}

impl Coeff {
    pub(crate) fn parse(&self) -> Result<BigInt, String> {
        match self {
            Coeff::Text(s) => {
                BigInt::from_str(s.trim()).map_err(|e| format!("bad coefficient {s:?}: {e}"))
            }
            Coeff::Int(n) => Ok(BigInt::from(*n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_bivar() -> impl Strategy<Value = BivarPolynomial> {
        proptest::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6)
            .prop_map(BivarPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn blowup_factor_identity(delta in 1u32..30) {
            // (uv - 1) * factor(delta) + uv = (uv)^delta
            let uv = BivarPolynomial::uv_pow(1);
            let lhs = &(&(&uv - &BivarPolynomial::one()) * &blowup_factor(delta).unwrap()) + &uv;
            prop_assert_eq!(lhs, BivarPolynomial::uv_pow(delta));
        }

        #[test]
        fn poincare_is_ring_homomorphism(a in arb_bivar(), b in arb_bivar()) {
            let pa = poincare_from_hodge(&a);
            let pb = poincare_from_hodge(&b);
            prop_assert_eq!(poincare_from_hodge(&(&a + &b)), &pa + &pb);
            prop_assert_eq!(poincare_from_hodge(&(&a * &b)), &pa * &pb);
        }

        #[test]
        fn json_round_trip(a in arb_bivar()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<BivarPolynomial>(&s).unwrap(), a.clone());
            let p = poincare_from_hodge(&a);
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<UnivarPolynomial>(&s).unwrap(), p);
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_bivar(), b in arb_bivar()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }
    }
}
