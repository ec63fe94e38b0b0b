//! Hodge and Poincaré polynomials of blowups along arrangements.
//!
//! Everything here rests on the chain sum
//!
//! ```text
//! e(Bl X) = e(X) + Σ_{D_1 < ... < D_r < D_{r+1} := X} e(D_1) Π_j F(dim D_{j+1} - dim D_j)
//! ```
//!
//! where `F(δ) = uv + (uv)^2 + ... + (uv)^{δ-1}` is [`blowup_factor`]. The
//! ambient `X` closes every chain but is never stored as a stratum.

use std::collections::HashMap;

use crate::builders::maps::{maps_poset_with_pairs, IntPartitionPair};
use crate::error::{Error, Result};
use crate::poly::{blowup_factor, poincare_from_hodge, BivarPolynomial, UnivarPolynomial};
use crate::poset::Arrangement;

/// How [`blowup_hodge`] evaluates the chain sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HodgeMode {
    /// Memoized over poset elements; `O(|D|^2)` polynomial operations.
    #[default]
    Dp,
    /// Literal enumeration of every chain.
    BruteForce,
}

struct FactorCache<T> {
    cache: HashMap<u32, T>,
    make: fn(u32) -> T,
}

impl<T: Clone> FactorCache<T> {
    fn new(make: fn(u32) -> T) -> Self {
        Self {
            cache: HashMap::new(),
            make,
        }
    }

    fn get(&mut self, delta: u32) -> T {
        let make = self.make;
        self.cache.entry(delta).or_insert_with(|| make(delta)).clone()
    }
}

fn hodge_factor(delta: u32) -> BivarPolynomial {
    blowup_factor(delta).expect("strict dimension gaps in a validated arrangement")
}

/// `t^2 + t^4 + ... + t^{2(δ-1)}`.
fn poincare_factor(delta: u32) -> UnivarPolynomial {
    poincare_from_hodge(&hodge_factor(delta))
}

/// `g(D) = Σ` over chains starting at `D` (ending at the ambient) of the
/// product of gap factors, for every stratum.
fn chain_weights<T, FAdd, FMul>(
    arr: &Arrangement,
    factor: fn(u32) -> T,
    add: FAdd,
    mul: FMul,
) -> Vec<T>
where
    T: Clone,
    FAdd: Fn(&T, &T) -> T,
    FMul: Fn(&T, &T) -> T,
{
    let mut factors = FactorCache::new(factor);
    let mut order: Vec<usize> = (0..arr.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(arr.rank(i)));
    let mut g: Vec<Option<T>> = vec![None; arr.len()];
    let top = arr.ambient_dim();
    for &i in &order {
        let dim = arr.stratum(i).dim;
        let mut acc = factors.get(top - dim);
        for j in arr.above_set(i).iter() {
            let gj = g[j].as_ref().expect("upper strata processed first");
            let step = factors.get(arr.stratum(j).dim - dim);
            acc = add(&acc, &mul(&step, gj));
        }
        g[i] = Some(acc);
    }
    g.into_iter().map(|x| x.expect("all strata visited")).collect()
}

pub(crate) fn dp_hodge(arr: &Arrangement) -> BivarPolynomial {
    let g = chain_weights(
        arr,
        hodge_factor,
        |a, b| a + b,
        |a, b| a * b,
    );
    let mut total = arr.ambient_hodge().clone();
    for (i, gi) in g.iter().enumerate() {
        total = &total + &(&arr.stratum(i).hodge * gi);
    }
    total
}

fn brute_force_hodge(arr: &Arrangement) -> BivarPolynomial {
    let mut factors = FactorCache::new(hodge_factor);
    let mut total = arr.ambient_hodge().clone();
    for chain in arr.chains() {
        let idx = chain.indices();
        let mut term = arr.stratum(idx[0]).hodge.clone();
        for w in idx.windows(2) {
            term = &term * &factors.get(arr.stratum(w[1]).dim - arr.stratum(w[0]).dim);
        }
        let last = arr.stratum(*idx.last().expect("chains are nonempty")).dim;
        term = &term * &factors.get(arr.ambient_dim() - last);
        total = &total + &term;
    }
    total
}

fn ensure_valid(arr: &Arrangement) -> Result<()> {
    arr.validate().map_err(Error::Invalid)?;
    arr.check_meetings()
}

/// Hodge polynomial of the blowup of the ambient space along `arr`.
pub fn blowup_hodge(arr: &Arrangement, mode: HodgeMode) -> Result<BivarPolynomial> {
    ensure_valid(arr)?;
    Ok(match mode {
        HodgeMode::Dp => dp_hodge(arr),
        HodgeMode::BruteForce => brute_force_hodge(arr),
    })
}

/// Poincaré polynomial of the blowup, computed directly with `t^2` factors.
pub fn blowup_poincare(arr: &Arrangement) -> Result<UnivarPolynomial> {
    ensure_valid(arr)?;
    let g = chain_weights(
        arr,
        poincare_factor,
        |a, b| a + b,
        |a, b| a * b,
    );
    let mut total = poincare_from_hodge(arr.ambient_hodge());
    for (i, gi) in g.iter().enumerate() {
        total = &total + &(&poincare_from_hodge(&arr.stratum(i).hodge) * gi);
    }
    Ok(total)
}

/// Hodge polynomial of the intermediate blowup along the strata of rank
/// `<= r`. Stage `-1` is the ambient space itself.
pub fn stage_hodge(arr: &Arrangement, r: i64) -> Result<BivarPolynomial> {
    ensure_valid(arr)?;
    stage_unchecked(arr, r)
}

pub(crate) fn stage_unchecked(arr: &Arrangement, r: i64) -> Result<BivarPolynomial> {
    if r < -1 {
        return Err(Error::Stage(format!("stage {r} is below -1")));
    }
    Ok(dp_hodge(&arr.truncate_signed(r)))
}

/// Hodge polynomial of the proper transform of stratum `i` in the stage-`r`
/// blowup, i.e. of `D_i` blown up along the strata below it of rank `<= r`.
///
/// Requires `rank(i) >= r + 1`; stage `-1` returns `e(D_i)` itself.
pub fn proper_transform_hodge(arr: &Arrangement, i: usize, r: i64) -> Result<BivarPolynomial> {
    ensure_valid(arr)?;
    transform_unchecked(arr, i, r)
}

pub(crate) fn transform_unchecked(arr: &Arrangement, i: usize, r: i64) -> Result<BivarPolynomial> {
    check_index(arr, i)?;
    if r < -1 || arr.rank(i) as i64 <= r {
        return Err(Error::Stage(format!(
            "{:?} has rank {}; its proper transform is not defined after stage {r}",
            arr.stratum(i).id,
            arr.rank(i)
        )));
    }
    Ok(dp_hodge(&arr.below(i).truncate_signed(r)))
}

/// Hodge polynomial of the exceptional divisor over stratum `i` in the
/// stage-`r` blowup, `rank(i) <= r <= rank(arr)`.
///
/// At its birth stage `m = rank(i)` the divisor is the projectivized normal
/// bundle of the stage-`(m-1)` transform of `D_i`. Later stages blow it up
/// along its intersections with the transforms of the strata `D_j > D_i`
/// already blown up (those of rank `<= r`); each such intersection is the
/// projectivized normal bundle of `D_i` in `D_j`.
pub fn exceptional_divisor_hodge(arr: &Arrangement, i: usize, r: u32) -> Result<BivarPolynomial> {
    ensure_valid(arr)?;
    check_index(arr, i)?;
    let m = arr.rank(i);
    let top = arr.poset_rank().unwrap_or(0);
    if r < m || r > top {
        return Err(Error::Stage(format!(
            "exceptional divisor of {:?} (rank {m}) exists for stages {m}..={top}, not {r}",
            arr.stratum(i).id
        )));
    }
    let dim_i = arr.stratum(i).dim;
    let transform = dp_hodge(&arr.below(i).truncate_signed(m as i64 - 1));
    let base = &transform * &BivarPolynomial::q_integer(arr.ambient_dim() - dim_i);
    let keep: Vec<usize> = arr
        .above_set(i)
        .iter()
        .filter(|&j| arr.rank(j) <= r)
        .collect();
    let induced = arr
        .restrict(&keep, arr.ambient_dim() - 1, base)
        .map_strata(|_, s| {
            s.hodge = &transform * &BivarPolynomial::q_integer(s.dim - dim_i);
            s.dim -= 1;
        });
    Ok(dp_hodge(&induced))
}

/// Hodge polynomial of the complement of all strata.
pub fn complement_hodge(arr: &Arrangement) -> Result<BivarPolynomial> {
    ensure_valid(arr)?;
    Ok(arr.open_strata_hodge().complement)
}

fn check_index(arr: &Arrangement, i: usize) -> Result<()> {
    if i < arr.len() {
        Ok(())
    } else {
        Err(Error::UnknownId(format!("#{i}")))
    }
}

/// Output of [`maps_space_hodge`]; never a certified invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentalHodge {
    pub value: BivarPolynomial,
    pub experimental: bool,
    pub interpretation: &'static str,
}

pub const MAPS_INTERPRETATION: &str = "sum over nonempty chains of strata N_{d0,tau} closed by \
the top (d, empty); each chain is prefixed by two virtual bottoms (-1, tau_1) and (d_1, empty), \
both below its first element, and contributes the product of gap factors \
((uv)^k - uv)/(uv - 1) with k = (n+1)(d' - d) + rho(tau') - rho(tau) over the two bottom steps \
and all consecutive steps up to the top; no ambient term and no normalization are added";

/// Mechanical evaluation of the conjectural chain sum for the
/// space-of-maps strata `N_{d0,τ} ⊂ N_d(P^n)`.
///
/// The strata are not known to form an arrangement of smooth subvarieties,
/// so the value carries no geometric meaning; it is flagged experimental.
pub fn maps_space_hodge(n: u32, d: u32) -> Result<ExperimentalHodge> {
    let (arr, pairs) = maps_poset_with_pairs(n, d)?;
    let mut factors = FactorCache::new(hodge_factor);
    let gap = |a: (i64, u32), b: (i64, u32)| -> u32 {
        // (d0, rho) pairs; d0 = -1 allowed for the virtual bottom
        let k = (n as i64 + 1) * (b.0 - a.0) + b.1 as i64 - a.1 as i64;
        u32::try_from(k).expect("chain steps increase the exponent")
    };
    let key = |p: &IntPartitionPair| (p.d0 as i64, p.tau.len() as u32);
    let mut value = BivarPolynomial::zero();
    for chain in arr.chains() {
        let idx = chain.indices();
        let first = key(&pairs[idx[0]]);
        let mut term = &factors.get(gap((-1, first.1), first)) * &factors.get(gap((first.0, 0), first));
        for w in idx.windows(2) {
            term = &term * &factors.get(gap(key(&pairs[w[0]]), key(&pairs[w[1]])));
        }
        let last = key(&pairs[*idx.last().expect("nonempty")]);
        term = &term * &factors.get(gap(last, (d as i64, 0)));
        value = &value + &term;
    }
    Ok(ExperimentalHodge {
        value,
        experimental: true,
        interpretation: MAPS_INTERPRETATION,
    })
}
