//! Internal consistency checks on one arrangement.

use std::fmt;

use serde::Serialize;

use crate::chow::linear_presentation;
use crate::error::Result;
use crate::error::Error;
use crate::hodge::{blowup_hodge, blowup_poincare, stage_unchecked, transform_unchecked, HodgeMode};
use crate::poly::{blowup_factor, poincare_from_hodge, BivarPolynomial};
use crate::poset::{Arrangement, Family, Space};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "PASS {}", c.name)?,
                Outcome::Fail(why) => writeln!(f, "FAIL {}: {why}", c.name)?,
                Outcome::Skip(why) => writeln!(f, "SKIP {}: {why}", c.name)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest chain count for which the chain-by-chain sum is evaluated.
    pub max_chains: u128,
    /// Largest number of strata for which the Gröbner cross-check runs.
    pub max_groebner_strata: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_chains: 200_000, max_groebner_strata: 32 }
    }
}

fn compare<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T, what: &str) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{what}: {lhs} != {rhs}"))
    }
}

/// `e(stage r) = e(stage r-1) + Σ_{rank i = r} e(transform of D_i) · factor(codim D_i)`.
pub fn check_telescoping(arr: &Arrangement) -> Result<Outcome> {
    arr.validate().map_err(Error::Invalid)?;
    arr.check_meetings()?;
    let Some(top) = arr.poset_rank() else {
        return Ok(Outcome::Pass);
    };
    let mut prev = stage_unchecked(arr, -1)?;
    for r in 0..=top {
        let mut expect = prev.clone();
        for i in (0..arr.len()).filter(|&i| arr.rank(i) == r) {
            let transform = transform_unchecked(arr, i, r as i64 - 1)?;
            let factor = blowup_factor(arr.ambient_dim() - arr.stratum(i).dim)?;
            expect = &expect + &(&transform * &factor);
        }
        let stage = stage_unchecked(arr, r as i64)?;
        if stage != expect {
            return Ok(Outcome::Fail(format!("stage {r}: {stage} != {expect}")));
        }
        prev = stage;
    }
    Ok(Outcome::Pass)
}

/// Coefficient of `u^p v^q` equals that of `u^{N-p} v^{N-q}`.
pub fn is_palindromic(e: &BivarPolynomial, n: u32) -> bool {
    e.dual(n).as_ref() == Some(e)
}

/// Runs every applicable check. Fails only if the arrangement is invalid.
pub fn verify(arr: &Arrangement, limits: Limits) -> Result<Report> {
    let dp = blowup_hodge(arr, HodgeMode::Dp)?;
    let mut checks = Vec::new();
    let meta = arr.meta();

    let chains = arr.chain_count();
    checks.push(Check {
        name: "dp-vs-bruteforce",
        outcome: if chains > limits.max_chains {
            Outcome::Skip(format!("{chains} chains exceed the limit {}", limits.max_chains))
        } else {
            compare(&dp, &blowup_hodge(arr, HodgeMode::BruteForce)?, "dp vs chain sum")
        },
    });

    checks.push(Check {
        name: "palindromicity",
        outcome: if meta.space != Some(Space::Projective) {
            Outcome::Skip("ambient space not marked projective".into())
        } else if meta.conjectural {
            Outcome::Skip("conjectural arrangement with placeholder Hodge data".into())
        } else if is_palindromic(&dp, arr.ambient_dim()) {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("{dp} is not symmetric in dimension {}", arr.ambient_dim()))
        },
    });

    checks.push(Check {
        name: "poincare",
        outcome: compare(&poincare_from_hodge(&dp), &blowup_poincare(arr)?, "u = v = -t"),
    });

    checks.push(Check { name: "stage-telescoping", outcome: check_telescoping(arr)? });

    let linear = matches!(meta.family, Some(Family::Linear | Family::Kapranov));
    let outcome = if !(linear && meta.space == Some(Space::Projective)) {
        Outcome::Skip("not a projective linear arrangement".into())
    } else if !arr.is_regular() {
        Outcome::Skip("arrangement is not regular and simple".into())
    } else if arr.len() > limits.max_groebner_strata {
        Outcome::Skip(format!(
            "{} strata exceed the limit {}",
            arr.len(),
            limits.max_groebner_strata
        ))
    } else {
        chow_hilbert(arr)?
    };
    checks.push(Check { name: "chow-hilbert", outcome });
    Ok(Report { checks })
}

/// Hilbert series of the Chow presentation against the Betti numbers.
pub fn chow_hilbert(arr: &Arrangement) -> Result<Outcome> {
    let pres = linear_presentation(arr, false)?;
    let hs = pres.hilbert_series()?;
    let betti = blowup_poincare(arr)?
        .even_part()
        .expect("Poincaré polynomial of a projective blowup is even");
    Ok(match hs.coefficients() {
        Some(c) if c == betti.as_slice() => Outcome::Pass,
        _ => Outcome::Fail(format!("Hilbert series {hs} against Betti numbers {betti:?}")),
    })
}
