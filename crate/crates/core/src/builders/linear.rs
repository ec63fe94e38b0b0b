use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use super::linalg::{self, Row};
use crate::error::{Error, Result};
use crate::poly::{BivarPolynomial, Coeff};
use crate::poset::{Arrangement, ArrangementMeta, Family, Space, Stratum};

/// A linear subspace of `P^n` or `C^n`, stored as the canonical RREF basis of
/// its cone in `Q^{n+1}` (coordinate 0 is the homogenizing one for `C^n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    kind: Space,
    n: u32,
    basis: Vec<Row>,
}

impl LinearSubspace {
    /// Span of the given points of `P^n`, each a vector in `Q^{n+1}`.
    pub fn projective_span(n: u32, points: Vec<Row>) -> Result<Self> {
        check_lengths(&points, n as usize + 1)?;
        let basis = linalg::rref(&points, n as usize + 1);
        if basis.is_empty() {
            return Err(Error::Builder("subspace spanned by zero vectors is empty".into()));
        }
        Ok(Self { kind: Space::Projective, n, basis })
    }

    /// `offset + span(directions)` inside `C^n`.
    pub fn affine(n: u32, offset: Row, directions: Vec<Row>) -> Result<Self> {
        check_lengths(std::slice::from_ref(&offset), n as usize)?;
        check_lengths(&directions, n as usize)?;
        let mut rows = Vec::with_capacity(directions.len() + 1);
        rows.push(std::iter::once(BigRational::one()).chain(offset).collect());
        rows.extend(
            directions
                .into_iter()
                .map(|d| std::iter::once(BigRational::zero()).chain(d).collect()),
        );
        Ok(Self {
            kind: Space::Affine,
            n,
            basis: linalg::rref(&rows, n as usize + 1),
        })
    }

    pub fn kind(&self) -> Space {
        self.kind
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    /// Canonical basis of the cone (homogenized for affine subspaces).
    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32 - 1
    }

    pub fn is_ambient(&self) -> bool {
        self.dim() == self.n
    }

    pub fn contains(&self, other: &LinearSubspace) -> bool {
        linalg::contained(&other.basis, &self.basis, self.n as usize + 1)
    }

    /// `None` when the intersection is empty.
    pub fn intersect(&self, other: &LinearSubspace) -> Option<LinearSubspace> {
        let basis = linalg::intersect(&self.basis, &other.basis, self.n as usize + 1);
        let nonempty = match self.kind {
            Space::Projective => !basis.is_empty(),
            // the cone must leave the hyperplane at infinity
            Space::Affine => basis.first().is_some_and(|r| !r[0].is_zero()),
        };
        nonempty.then(|| LinearSubspace { kind: self.kind, n: self.n, basis })
    }

    pub fn hodge(&self) -> BivarPolynomial {
        match self.kind {
            Space::Projective => BivarPolynomial::projective_space(self.dim()),
            Space::Affine => BivarPolynomial::affine_space(self.dim()),
        }
    }
}

fn check_lengths(rows: &[Row], len: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != len) {
        Some(r) => Err(Error::Builder(format!(
            "vector of length {} where {len} coordinates were expected",
            r.len()
        ))),
        None => Ok(()),
    }
}

/// A subspace together with its stratum id and label.
#[derive(Clone, Debug)]
pub struct NamedSubspace {
    pub id: String,
    pub label: String,
    pub subspace: LinearSubspace,
}

/// Closes the named generators under pairwise intersection. Generators keep
/// their ids; new subspaces get ids `I1, I2, ...`. Duplicates are dropped.
pub fn close_under_intersection(generators: Vec<NamedSubspace>) -> Result<Vec<NamedSubspace>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let (kind, n) = (first.subspace.kind, first.subspace.n);
    let mut out: Vec<NamedSubspace> = Vec::new();
    let mut seen: HashMap<Vec<Row>, usize> = HashMap::new();
    for g in generators {
        if g.subspace.kind != kind || g.subspace.n != n {
            return Err(Error::Builder("generators live in different ambient spaces".into()));
        }
        if g.subspace.is_ambient() {
            return Err(Error::Builder(format!("generator {} is the whole ambient space", g.id)));
        }
        if !seen.contains_key(&g.subspace.basis) {
            seen.insert(g.subspace.basis.clone(), out.len());
            out.push(g);
        }
    }
    let mut fresh = 0;
    let mut i = 0;
    while i < out.len() {
        for j in 0..i {
            let (a, b) = (&out[j].subspace, &out[i].subspace);
            if a.contains(b) || b.contains(a) {
                continue;
            }
            if let Some(c) = a.intersect(b) {
                if !seen.contains_key(&c.basis) {
                    fresh += 1;
                    let label = format!("{} ∩ {}", out[j].id, out[i].id);
                    seen.insert(c.basis.clone(), out.len());
                    out.push(NamedSubspace { id: format!("I{fresh}"), label, subspace: c });
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

/// The arrangement of all nonempty intersections of the generators, ordered by
/// containment.
pub fn build_linear(generators: Vec<NamedSubspace>, kind: Space, n: u32) -> Result<Arrangement> {
    if generators.iter().any(|g| g.subspace.kind != kind || g.subspace.n != n) {
        return Err(Error::Builder(format!(
            "every generator must be a subspace of the {} space of dimension {n}",
            kind.name()
        )));
    }
    let subs = close_under_intersection(generators)?;
    let index: HashMap<&[Row], usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.subspace.basis.as_slice(), i))
        .collect();
    let mut relations = Vec::new();
    let mut intersections = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            let (a, b) = (&subs[i].subspace, &subs[j].subspace);
            if b.contains(a) {
                relations.push((i, j));
            } else if a.contains(b) {
                relations.push((j, i));
            } else if let Some(c) = a.intersect(b) {
                intersections.push(((i, j), vec![index[c.basis.as_slice()]]));
            }
        }
    }
    let strata = subs
        .iter()
        .map(|s| Stratum::new(s.id.clone(), s.subspace.dim(), s.subspace.hodge()).with_label(&s.label))
        .collect();
    let ambient_hodge = match kind {
        Space::Projective => BivarPolynomial::projective_space(n),
        Space::Affine => BivarPolynomial::affine_space(n),
    };
    Ok(Arrangement::new(n, ambient_hodge, strata, relations, intersections)?.with_meta(
        ArrangementMeta {
            family: Some(Family::Linear),
            space: Some(kind),
            conjectural: false,
        },
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    #[serde(default)]
    space: Option<Space>,
    #[serde(default)]
    dim: Option<u32>,
    generators: Vec<GeneratorJson>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GeneratorJson {
    Span {
        #[serde(default)]
        id: Option<String>,
        points: Vec<Vec<Coeff>>,
    },
    Affine {
        #[serde(default)]
        id: Option<String>,
        offset: Vec<Coeff>,
        #[serde(default)]
        directions: Vec<Vec<Coeff>>,
    },
}

struct ResolvedFile {
    space: Space,
    dim: u32,
    generators: Vec<GeneratorJson>,
}

fn parse_rational(c: &Coeff) -> Result<BigRational> {
    let bad = |s: &str| Error::Schema(format!("invalid rational entry {s:?}"));
    match c {
        Coeff::Int(n) => Ok(BigRational::from_integer((*n).into())),
        Coeff::Text(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let num = num.trim().parse().map_err(|_| bad(s))?;
            let den: num_bigint::BigInt = den.trim().parse().map_err(|_| bad(s))?;
            if den.is_zero() {
                return Err(bad(s));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

fn parse_rows(rows: &[Vec<Coeff>]) -> Result<Vec<Row>> {
    rows.iter()
        .map(|r| r.iter().map(parse_rational).collect())
        .collect()
}

/// Parses a generator file and builds the arrangement. Generator ids default
/// to `H1, H2, ...`. The space and dimension come from the arguments, the
/// file, or both (then they must agree). Entries are integers or `"p/q"`.
///
/// ```json
/// {"space": "projective", "dim": 2, "generators": [{"id": "p", "points": [[1, 0, 0]]}]}
/// {"generators": [{"offset": [0, 0, 0], "directions": [[1, 0, 0]]}]}
/// ```
pub fn build_linear_from_json(text: &str, space: Option<Space>, dim: Option<u32>) -> Result<Arrangement> {
    let raw: GeneratorFile =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    fn pick<T: PartialEq + std::fmt::Debug>(arg: Option<T>, file: Option<T>, what: &str) -> Result<T> {
        match (arg, file) {
            (Some(a), Some(f)) if a != f => Err(Error::Schema(format!(
                "{what} {a:?} given on the command line but {f:?} in the generator file"
            ))),
            (Some(a), _) => Ok(a),
            (None, Some(f)) => Ok(f),
            (None, None) => Err(Error::Schema(format!("{what} not specified"))),
        }
    }
    let file = ResolvedFile {
        space: pick(space, raw.space, "space")?,
        dim: pick(dim, raw.dim, "dimension")?,
        generators: raw.generators,
    };
    let mut gens = Vec::with_capacity(file.generators.len());
    for (k, g) in file.generators.iter().enumerate() {
        let default_id = || format!("H{}", k + 1);
        let (id, subspace) = match (g, file.space) {
            (GeneratorJson::Span { id, points }, Space::Projective) => (
                id.clone().unwrap_or_else(default_id),
                LinearSubspace::projective_span(file.dim, parse_rows(points)?)?,
            ),
            (GeneratorJson::Affine { id, offset, directions }, Space::Affine) => {
                let offset = offset.iter().map(parse_rational).collect::<Result<Row>>()?;
                (
                    id.clone().unwrap_or_else(default_id),
                    LinearSubspace::affine(file.dim, offset, parse_rows(directions)?)?,
                )
            }
            _ => {
                return Err(Error::Schema(format!(
                    "generator {} does not match space {}: projective generators use \
                     \"points\", affine ones \"offset\" and \"directions\"",
                    k + 1,
                    file.space.name()
                )))
            }
        };
        gens.push(NamedSubspace { label: id.clone(), id, subspace });
    }
    build_linear(gens, file.space, file.dim)
}
