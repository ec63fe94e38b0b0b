//! Polynomial presentations of the Chow ring of a wonderful blowup.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, hilbert_series, HilbertSeries, MonomialOrder};
use crate::poly::{var_list, RationalMultiPoly, VarList, Variable};
use crate::poset::{Arrangement, Family, Space};

/// Presentation of the Chow ring of the ambient variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePresentation {
    vars: VarList,
    relations: Vec<RationalMultiPoly>,
}

impl BasePresentation {
    /// Fails unless every relation lives over `vars` and is homogeneous.
    pub fn new(vars: VarList, relations: Vec<RationalMultiPoly>) -> Result<Self> {
        for r in &relations {
            check_homogeneous(r, &vars)?;
        }
        Ok(Self { vars, relations })
    }

    /// `Q[h] / (h^{n+1})`.
    pub fn projective_space(n: u32) -> Self {
        let vars = var_list([Variable::new("h", 1)]);
        let rel = RationalMultiPoly::var(&vars, 0).pow(n + 1);
        Self { vars, relations: vec![rel] }
    }

    pub fn variables(&self) -> &VarList {
        &self.vars
    }

    pub fn relations(&self) -> &[RationalMultiPoly] {
        &self.relations
    }
}

fn check_homogeneous(p: &RationalMultiPoly, vars: &VarList) -> Result<()> {
    if p.variables() != vars {
        return Err(Error::Grading(format!("{p} is not over the declared variables")));
    }
    if !p.is_homogeneous() {
        return Err(Error::Grading(format!("{p} is not homogeneous")));
    }
    Ok(())
}

/// Normal-bundle data of one stratum: the Chern polynomial
/// `t^d + a_1 t^{d-1} + ... + a_d` with `a_d` the class of the stratum, and
/// generators of the kernel of restriction to the stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernDatum {
    pub stratum_id: String,
    pub codim: u32,
    /// `a_1, ..., a_d` over the base variables.
    pub coefficients: Vec<RationalMultiPoly>,
    pub kernel_generators: Vec<RationalMultiPoly>,
}

/// Chern polynomial of the normal bundle of `D_j` inside `D_i` for a pair
/// `D_j < D_i`, with coefficients lifted to the base ring and `a_d` lifting
/// the class of `D_j` in `D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeChernDatum {
    pub lower_id: String,
    pub upper_id: String,
    pub coefficients: Vec<RationalMultiPoly>,
}

/// Everything [`presentation`] consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub base: BasePresentation,
    pub strata: Vec<ChernDatum>,
    pub relative: Vec<RelativeChernDatum>,
}

fn binomial_coefficients(h: &RationalMultiPoly, d: u32) -> Vec<RationalMultiPoly> {
    (1..=d)
        .map(|i| h.pow(i).scale(&BigRational::from_integer(binomial(d, i))))
        .collect()
}

/// Chern data of linear subspaces of `P^n`: the normal bundle of `P^k` has
/// total Chern class `(1 + h)^{n-k}`, so `a_i = C(n-k, i) h^i`, and the
/// restriction kernel is `(h^{k+1})`. Likewise `P^l ⊂ P^k` has relative
/// coefficients `C(k-l, i) h^i`.
pub fn linear_chern_data(arr: &Arrangement) -> Result<ChernData> {
    let meta = arr.meta();
    let linear = matches!(meta.family, Some(Family::Linear | Family::Kapranov));
    if !linear || meta.space != Some(Space::Projective) {
        return Err(Error::Unsupported(
            "built-in Chern data covers projective linear arrangements only \
             (build linear --space projective, build kapranov)"
                .into(),
        ));
    }
    let n = arr.ambient_dim();
    let base = BasePresentation::projective_space(n);
    let h = RationalMultiPoly::var(base.variables(), 0);
    let data = arr
        .strata()
        .iter()
        .map(|s| {
            let d = n - s.dim;
            ChernDatum {
                stratum_id: s.id.clone(),
                codim: d,
                coefficients: binomial_coefficients(&h, d),
                kernel_generators: vec![h.pow(s.dim + 1)],
            }
        })
        .collect();
    let mut relative = Vec::new();
    for (i, upper) in arr.strata().iter().enumerate() {
        for j in arr.below_set(i).iter() {
            let lower = arr.stratum(j);
            relative.push(RelativeChernDatum {
                lower_id: lower.id.clone(),
                upper_id: upper.id.clone(),
                coefficients: binomial_coefficients(&h, upper.dim - lower.dim),
            });
        }
    }
    Ok(ChernData { base, strata: data, relative })
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The ring `A(X)[T_1, ..., T_N] / I`. Variables are `T_<id>` in stratum
/// order followed by the base variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowPresentation {
    pub variables: VarList,
    pub relations: Vec<RationalMultiPoly>,
    pub regular: bool,
    pub taints: Vec<String>,
}

#[derive(Serialize)]
struct VariableJson<'a> {
    name: &'a str,
    degree: u32,
}

#[derive(Serialize)]
struct MetaJson<'a> {
    regular: bool,
    taints: &'a [String],
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    variables: Vec<VariableJson<'a>>,
    relations: Vec<String>,
    meta: MetaJson<'a>,
}

impl ChowPresentation {
    /// Reduced Gröbner basis of the relation ideal, degrevlex.
    pub fn groebner_basis(&self) -> Vec<RationalMultiPoly> {
        buchberger(&self.relations, MonomialOrder::DegRevLex)
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        hilbert_series(&self.groebner_basis(), &self.variables)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = PresentationJson {
            variables: self
                .variables
                .iter()
                .map(|v| VariableJson { name: &v.name, degree: v.degree })
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            meta: MetaJson { regular: self.regular, taints: &self.taints },
        };
        serde_json::to_value(doc).expect("presentation serializes")
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Relations: the base relations, `T_i T_j` for incomparable pairs (except
/// transverse pairs, whose proper transforms still meet),
/// `g T_i` for kernel generators `g` of stratum `i`, the Chern polynomial
/// of stratum `i` evaluated at `-Σ_{j <= i} T_j`, and finally, for every
/// relative datum `D_j < D_i`, the relative Chern polynomial evaluated at
/// `-Σ_{k <= j} T_k`, times `T_i`.
///
/// The last family is the part of the kernel of restriction to the proper
/// transform of `D_i` contributed by blowing up `D_j`. It is implied by the
/// others when some stratum meets `D_i` transversally along `D_j`, but not in
/// general (a plane and a line through one point of `P^4`). With no relative
/// data the relation set reduces to the first four families.
///
/// Non-regular arrangements are refused unless `allow_nonregular` is set, in
/// which case the output is tainted.
pub fn presentation(arr: &Arrangement, data: &ChernData, allow_nonregular: bool) -> Result<ChowPresentation> {
    let base = &data.base;
    arr.validate()?;
    arr.check_meetings()?;
    let regular = arr.is_regular();
    let mut taints = Vec::new();
    if !regular {
        if !allow_nonregular {
            return Err(Error::Hypothesis(
                "the presentation needs a regular simple arrangement; this one is not \
                 (pass the override to compute it anyway)"
                    .into(),
            ));
        }
        taints.push("non-regular arrangement: relations may not present the Chow ring".into());
    }
    let by_id: HashMap<&str, &ChernDatum> = data.strata.iter().map(|c| (c.stratum_id.as_str(), c)).collect();

    let nt = arr.len();
    let nb = base.vars.len();
    let vars = var_list(
        arr.strata()
            .iter()
            .map(|s| Variable::new(format!("T_{}", s.id), 1))
            .chain(base.vars.iter().cloned()),
    );
    let lift = |p: &RationalMultiPoly| p.embed(&vars, &(nt..nt + nb).collect::<Vec<_>>());
    let t = |i: usize| RationalMultiPoly::var(&vars, i);
    let minus_sum = |i: usize| {
        std::iter::once(i)
            .chain(arr.below_set(i).iter())
            .fold(RationalMultiPoly::zero(&vars), |acc, j| &acc - &t(j))
    };
    // P(x) = Σ_k a_{d-k} x^k with a_0 = 1
    let eval_chern = |coefficients: &[RationalMultiPoly], x: &RationalMultiPoly| {
        let d = coefficients.len();
        let mut p = x.pow(d as u32);
        for k in 0..d {
            p = &p + &(&lift(&coefficients[d - k - 1]) * &x.pow(k as u32));
        }
        p
    };

    let mut relations: Vec<RationalMultiPoly> = base.relations.iter().map(lift).collect();
    for i in 0..nt {
        for j in i + 1..nt {
            if !arr.comparable(i, j) && !arr.meets_transversally(i, j) {
                relations.push(&t(i) * &t(j));
            }
        }
    }
    let mut chern = Vec::with_capacity(nt);
    for (i, s) in arr.strata().iter().enumerate() {
        let datum = by_id
            .get(s.id.as_str())
            .ok_or_else(|| Error::MissingData(format!("no Chern datum for stratum {}", s.id)))?;
        if datum.codim != arr.ambient_dim() - s.dim || datum.coefficients.len() != datum.codim as usize {
            return Err(Error::MissingData(format!(
                "Chern datum for {} has codimension {} with {} coefficients; expected {}",
                s.id,
                datum.codim,
                datum.coefficients.len(),
                arr.ambient_dim() - s.dim
            )));
        }
        check_coefficients(&datum.coefficients, &base.vars, &s.id)?;
        for g in &datum.kernel_generators {
            check_homogeneous(g, &base.vars)?;
            relations.push(&lift(g) * &t(i));
        }
        chern.push(eval_chern(&datum.coefficients, &minus_sum(i)));
    }
    relations.extend(chern);
    for rel in &data.relative {
        let (j, i) = (arr.index_of(&rel.lower_id)?, arr.index_of(&rel.upper_id)?);
        if !arr.less(j, i) {
            return Err(Error::MissingData(format!(
                "relative Chern datum for {} inside {}, which do not form a pair of strata",
                rel.lower_id, rel.upper_id
            )));
        }
        let codim = arr.stratum(i).dim - arr.stratum(j).dim;
        if rel.coefficients.len() != codim as usize {
            return Err(Error::MissingData(format!(
                "relative Chern datum for {} inside {} has {} coefficients; expected {codim}",
                rel.lower_id,
                rel.upper_id,
                rel.coefficients.len()
            )));
        }
        check_coefficients(&rel.coefficients, &base.vars, &rel.lower_id)?;
        relations.push(&eval_chern(&rel.coefficients, &minus_sum(j)) * &t(i));
    }
    relations.retain(|r| !r.is_zero());
    Ok(ChowPresentation { variables: vars, relations, regular, taints })
}

fn check_coefficients(coefficients: &[RationalMultiPoly], vars: &VarList, id: &str) -> Result<()> {
    for (k, a) in coefficients.iter().enumerate() {
        check_homogeneous(a, vars)?;
        if !a.is_zero() && a.homogeneous_degree() != Some(k as u32 + 1) {
            return Err(Error::Grading(format!("a_{} = {a} for {id} has the wrong degree", k + 1)));
        }
    }
    Ok(())
}

/// Presentation with the built-in data for projective linear arrangements.
pub fn linear_presentation(arr: &Arrangement, allow_nonregular: bool) -> Result<ChowPresentation> {
    presentation(arr, &linear_chern_data(arr)?, allow_nonregular)
}

/// Incomparable-product, kernel and Chern families only, without the relative family.
pub fn linear_theorem_presentation(arr: &Arrangement, allow_nonregular: bool) -> Result<ChowPresentation> {
    let data = ChernData { relative: Vec::new(), ..linear_chern_data(arr)? };
    presentation(arr, &data, allow_nonregular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_kapranov, build_linear, LinearSubspace, NamedSubspace};
    use crate::poly::rat;

    fn point_in_plane() -> Arrangement {
        let p = LinearSubspace::projective_span(2, vec![vec![rat(1), rat(0), rat(0)]]).unwrap();
        build_linear(
            vec![NamedSubspace { id: "p".into(), label: "p".into(), subspace: p }],
            Space::Projective,
            2,
        )
        .unwrap()
    }

    #[test]
    fn chern_data_of_linear_subspaces() {
        let data = linear_chern_data(&point_in_plane()).unwrap();
        assert_eq!(data.base.relations()[0].to_string(), "h^3");
        assert!(data.relative.is_empty());
        let d = &data.strata[0];
        assert_eq!(d.codim, 2);
        let shown: Vec<String> = d.coefficients.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, vec!["2*h", "h^2"]);
        assert_eq!(d.kernel_generators[0].to_string(), "h");
    }

    #[test]
    fn point_in_plane_relations() {
        let pres = linear_presentation(&point_in_plane(), false).unwrap();
        let names: Vec<&str> = pres.variables.iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, vec!["T_p", "h"]);
        let shown: Vec<String> = pres.relations.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, vec!["h^3", "T_p*h", "T_p^2 - 2*T_p*h + h^2"]);
        assert_eq!(pres.hilbert_series().unwrap().to_string(), "[1, 2, 1]");
    }

    #[test]
    fn kapranov2_line_relation() {
        let arr = build_kapranov(2).unwrap();
        let pres = linear_presentation(&arr, false).unwrap();
        let shown: Vec<String> = pres.relations.iter().map(|r| r.to_string()).collect();
        assert!(shown.contains(&"-T_S1 - T_S2 - T_S12 + h".to_string()), "{shown:?}");
        assert!(shown.contains(&"T_S12*h^2".to_string()));
        assert!(shown.contains(&"T_S1*T_S2".to_string()));
        let degree_one = pres.relations.iter().filter(|r| r.homogeneous_degree() == Some(1)).count();
        assert_eq!(degree_one, 6);
        assert!(pres.relations.iter().all(|r| r.is_homogeneous()));
    }

    fn span(points: &[[i64; 5]]) -> LinearSubspace {
        LinearSubspace::projective_span(4, points.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn plane_and_line_through_a_point() {
        // no stratum meets the plane transversally along the point, so the
        // theorem's relations leave the ring too large
        let plane = span(&[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]);
        let line = span(&[[1, 0, 0, 0, 0], [0, 0, 0, 1, 0]]);
        let arr = build_linear(
            vec![
                NamedSubspace { id: "P".into(), label: "P".into(), subspace: plane },
                NamedSubspace { id: "L".into(), label: "L".into(), subspace: line },
            ],
            Space::Projective,
            4,
        )
        .unwrap();
        assert!(arr.is_regular());
        let verbatim = linear_theorem_presentation(&arr, false).unwrap();
        assert_eq!(verbatim.hilbert_series().unwrap().to_string(), "[1, 4, 7, 6, 1]");
        let full = linear_presentation(&arr, false).unwrap();
        assert_eq!(full.relations.len(), verbatim.relations.len() + 2);
        assert!(full.relations.starts_with(&verbatim.relations));
        assert_eq!(full.hilbert_series().unwrap().to_string(), "[1, 4, 6, 4, 1]");
    }

    #[test]
    fn relative_family_redundant_for_kapranov2() {
        let arr = build_kapranov(2).unwrap();
        let verbatim = linear_theorem_presentation(&arr, false).unwrap();
        let full = linear_presentation(&arr, false).unwrap();
        assert_eq!(full.relations.len(), verbatim.relations.len() + 12);
        assert_eq!(full.groebner_basis(), verbatim.groebner_basis());
    }

    #[test]
    fn empty_arrangement_gives_base() {
        let arr = Arrangement::empty(3, crate::poly::BivarPolynomial::projective_space(3))
            .with_meta(crate::poset::ArrangementMeta {
                family: Some(Family::Linear),
                space: Some(Space::Projective),
                conjectural: false,
            });
        let pres = linear_presentation(&arr, false).unwrap();
        assert_eq!(pres.relations.len(), 1);
        assert_eq!(pres.hilbert_series().unwrap().to_string(), "[1, 1, 1, 1]");
    }

    #[test]
    fn refusals() {
        use crate::poset::fixtures::axes;
        assert!(matches!(linear_presentation(&axes(), false), Err(Error::Unsupported(_))));
        let arr = point_in_plane();
        let data = ChernData { strata: Vec::new(), ..linear_chern_data(&arr).unwrap() };
        assert!(matches!(presentation(&arr, &data, false), Err(Error::MissingData(_))));
        let kap = build_kapranov(2).unwrap();
        let mut data = linear_chern_data(&kap).unwrap();
        data.relative[0].coefficients.clear();
        assert!(matches!(presentation(&kap, &data, false), Err(Error::MissingData(_))));
    }

    #[test]
    fn json_shape() {
        let pres = linear_presentation(&point_in_plane(), false).unwrap();
        let v = pres.to_json_value();
        assert_eq!(v["variables"][0]["name"], "T_p");
        assert_eq!(v["relations"][2], "T_p^2 - 2*T_p*h + h^2");
        assert_eq!(v["meta"]["regular"], true);
    }
}
