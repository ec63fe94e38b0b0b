use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use super::Diagnostic;
use crate::error::{Error, Result};
use crate::poly::BivarPolynomial;

/// One closed stratum `D_i` of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: String,
    pub label: String,
    pub dim: u32,
    pub hodge: BivarPolynomial,
}

impl Stratum {
    pub fn new(id: impl Into<String>, dim: u32, hodge: BivarPolynomial) -> Self {
        let id = id.into();
        Self {
            label: id.clone(),
            id,
            dim,
            hodge,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Projective,
    Affine,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Projective => "projective",
            Space::Affine => "affine",
        }
    }
}

/// Which builder produced an arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Linear,
    Kapranov,
    Diagonal,
    Maps,
}

/// Provenance carried alongside an arrangement: which builder made it, what
/// kind of ambient space it lives in, and whether it is certified.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<Space>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjectural: bool,
}

impl ArrangementMeta {
    pub fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

/// How two strata meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet<'a> {
    /// The strata are comparable; the meet is the smaller one.
    Comparable(usize),
    /// Incomparable strata; the (possibly empty) list of components.
    Components(&'a [usize]),
}

/// A finite poset of strata inside an ambient smooth variety.
///
/// Strata are addressed by their position (canonical insertion order) or by
/// id. The strict order is stored transitively closed as bit rows:
/// `below[i] = { j : D_j ⊊ D_i }`, `above[i] = { j : D_i ⊊ D_j }`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient_dim: u32,
    ambient_hodge: BivarPolynomial,
    strata: Vec<Stratum>,
    index: HashMap<String, usize>,
    below: Vec<BitSet>,
    above: Vec<BitSet>,
    intersections: BTreeMap<(usize, usize), Vec<usize>>,
    ranks: Vec<u32>,
    transverse: BTreeSet<(usize, usize)>,
    meta: ArrangementMeta,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.ambient_hodge == other.ambient_hodge
            && self.strata == other.strata
            && self.below == other.below
            && self.intersections == other.intersections
            && self.transverse == other.transverse
            && self.meta == other.meta
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    /// Builds an arrangement from strata, a generating set of order relations
    /// `(i, j)` meaning `D_i ⊊ D_j`, and intersection components for
    /// incomparable pairs. Pairs not listed intersect emptily.
    ///
    /// Only structural problems are rejected here (bad indices, duplicate
    /// ids or entries); order and closure axioms are checked by [`validate`].
    ///
    /// [`validate`]: Arrangement::validate
    pub fn new<R, I>(
        ambient_dim: u32,
        ambient_hodge: BivarPolynomial,
        strata: Vec<Stratum>,
        relations: R,
        intersections: I,
    ) -> Result<Self>
    where
        R: IntoIterator<Item = (usize, usize)>,
        I: IntoIterator<Item = ((usize, usize), Vec<usize>)>,
    {
        let n = strata.len();
        let mut index = HashMap::with_capacity(n);
        for (i, s) in strata.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(s.id.clone()));
            }
        }
        let check = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(Error::Schema(format!("stratum index {i} out of range")))
            }
        };

        let mut below = vec![BitSet::new(n); n];
        for (lo, hi) in relations {
            below[check(hi)?].insert(check(lo)?);
        }
        // Warshall closure over rows.
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }

        let mut table = BTreeMap::new();
        for ((a, b), mut comps) in intersections {
            let (a, b) = (check(a)?, check(b)?);
            if a == b {
                return Err(Error::Schema(format!(
                    "intersection entry pairs {:?} with itself",
                    strata[a].id
                )));
            }
            for &c in &comps {
                check(c)?;
            }
            comps.sort_unstable();
            comps.dedup();
            let key = (a.min(b), a.max(b));
            if table.insert(key, comps).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate intersection entry for ({:?}, {:?})",
                    strata[key.0].id, strata[key.1].id
                )));
            }
        }

        Ok(Self::from_parts(
            ambient_dim,
            ambient_hodge,
            strata,
            index,
            below,
            table,
            ArrangementMeta::default(),
        ))
    }

    /// An arrangement with no strata.
    pub fn empty(ambient_dim: u32, ambient_hodge: BivarPolynomial) -> Self {
        Self::from_parts(
            ambient_dim,
            ambient_hodge,
            Vec::new(),
            HashMap::new(),
            Vec::new(),
            BTreeMap::new(),
            ArrangementMeta::default(),
        )
    }

    fn from_parts(
        ambient_dim: u32,
        ambient_hodge: BivarPolynomial,
        strata: Vec<Stratum>,
        index: HashMap<String, usize>,
        below: Vec<BitSet>,
        intersections: BTreeMap<(usize, usize), Vec<usize>>,
        meta: ArrangementMeta,
    ) -> Self {
        let n = strata.len();
        let mut above = vec![BitSet::new(n); n];
        for (i, row) in below.iter().enumerate() {
            for j in row.iter() {
                above[j].insert(i);
            }
        }
        let ranks = compute_ranks(&below);
        Self {
            ambient_dim,
            ambient_hodge,
            strata,
            index,
            below,
            above,
            intersections,
            ranks,
            transverse: BTreeSet::new(),
            meta,
        }
    }

    pub fn with_meta(mut self, meta: ArrangementMeta) -> Self {
        self.meta = meta;
        self
    }

    /// Marks incomparable pairs whose intersection is strictly larger than
    /// the union of its recorded components: the two strata also meet
    /// transversally away from the arrangement, so their proper transforms
    /// still meet after the blowup.
    pub fn with_transverse_pairs(mut self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        for (a, b) in pairs {
            if a >= self.len() || b >= self.len() || a == b {
                return Err(Error::Schema(format!("transverse pair ({a}, {b}) is out of range")));
            }
            self.transverse.insert((a.min(b), a.max(b)));
        }
        Ok(self)
    }

    pub fn transverse_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.transverse.iter().copied()
    }

    pub fn meets_transversally(&self, i: usize, j: usize) -> bool {
        self.transverse.contains(&(i.min(j), i.max(j)))
    }

    /// Refuses transverse pairs in which neither stratum is a divisor. Their
    /// extra intersection is never blown up, so the proper transform of the
    /// one blown up later is itself blown up there, which the chain sum and
    /// the Chow presentation do not account for. A divisor is never a
    /// genuine center, so pairs involving one are harmless.
    pub fn check_meetings(&self) -> Result<()> {
        let codim = |i: usize| self.ambient_dim - self.strata[i].dim;
        match self.transverse.iter().find(|&&(i, j)| codim(i) >= 2 && codim(j) >= 2) {
            Some(&(i, j)) => Err(Error::Hypothesis(format!(
                "{} and {} meet away from the arrangement and neither is a divisor; \
                 the arrangement is not closed under intersection",
                self.strata[i].id, self.strata[j].id
            ))),
            None => Ok(()),
        }
    }

    pub fn meta(&self) -> &ArrangementMeta {
        &self.meta
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn ambient_hodge(&self) -> &BivarPolynomial {
        &self.ambient_hodge
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// `D_i ⊊ D_j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j) || self.less(j, i)
    }

    /// Strata strictly contained in `D_i`.
    pub fn below_set(&self, i: usize) -> &BitSet {
        &self.below[i]
    }

    /// Strata strictly containing `D_i`.
    pub fn above_set(&self, i: usize) -> &BitSet {
        &self.above[i]
    }

    pub fn meet(&self, i: usize, j: usize) -> Meet<'_> {
        if i == j || self.less(i, j) {
            return Meet::Comparable(i);
        }
        if self.less(j, i) {
            return Meet::Comparable(j);
        }
        let key = (i.min(j), i.max(j));
        Meet::Components(self.intersections.get(&key).map_or(&[], |v| v.as_slice()))
    }

    /// Stored intersection entries, keyed by index pairs `(a, b)` with `a < b`.
    pub fn intersection_entries(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.intersections.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Cover relations `(lower, upper)` of the order, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for hi in 0..self.len() {
            for lo in self.lower_covers(hi) {
                out.push((lo, hi));
            }
        }
        out
    }

    fn lower_covers(&self, i: usize) -> Vec<usize> {
        let mut covers = self.below[i].clone();
        for k in self.below[i].iter() {
            covers.difference_with(&self.below[k]);
        }
        covers.iter().collect()
    }

    /// Checks every arrangement invariant and reports the first violation.
    pub fn validate(&self) -> Result<(), Diagnostic> {
        let id = |i: usize| self.strata[i].id.clone();
        for s in &self.strata {
            if s.dim >= self.ambient_dim {
                return Err(Diagnostic::DimensionNotBelowAmbient {
                    id: s.id.clone(),
                    dim: s.dim,
                    ambient: self.ambient_dim,
                });
            }
        }
        for i in 0..self.len() {
            if self.below[i].contains(i) {
                return Err(Diagnostic::OrderCycle { id: id(i) });
            }
        }
        for hi in 0..self.len() {
            for lo in self.below[hi].iter() {
                if self.strata[lo].dim >= self.strata[hi].dim {
                    return Err(Diagnostic::DimensionNotMonotone {
                        lower: id(lo),
                        upper: id(hi),
                    });
                }
            }
        }
        for &(a, b) in &self.transverse {
            if self.comparable(a, b) {
                return Err(Diagnostic::IntersectionOnComparablePair { a: id(a), b: id(b) });
            }
        }
        for (&(a, b), comps) in &self.intersections {
            if self.comparable(a, b) {
                return Err(Diagnostic::IntersectionOnComparablePair { a: id(a), b: id(b) });
            }
            for &c in comps {
                if !(self.less(c, a) && self.less(c, b)) {
                    return Err(Diagnostic::ComponentNotContained {
                        a: id(a),
                        b: id(b),
                        component: id(c),
                    });
                }
            }
            for (x, &c1) in comps.iter().enumerate() {
                for &c2 in &comps[x + 1..] {
                    if self.comparable(c1, c2) {
                        return Err(Diagnostic::ComponentsComparable {
                            a: id(a),
                            b: id(b),
                            first: id(c1),
                            second: id(c2),
                        });
                    }
                    if let Meet::Components(m) = self.meet(c1, c2) {
                        if !m.is_empty() {
                            return Err(Diagnostic::ComponentsNotDisjoint {
                                a: id(a),
                                b: id(b),
                                first: id(c1),
                                second: id(c2),
                            });
                        }
                    }
                }
            }
        }
        // Closure: every stratum inside both D_a and D_b lies in a listed component.
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.comparable(a, b) {
                    continue;
                }
                let common = self.below[a].intersection(&self.below[b]);
                if common.is_empty() {
                    continue;
                }
                let comps = self.intersections.get(&(a, b)).map_or(&[][..], |v| v);
                let mut covered = BitSet::new(self.len());
                for &c in comps {
                    covered.insert(c);
                    covered.union_with(&self.below[c]);
                }
                let stray = common.iter().find(|&l| !covered.contains(l));
                if let Some(stray) = stray {
                    return Err(Diagnostic::IntersectionNotClosed {
                        a: id(a),
                        b: id(b),
                        stratum: id(stray),
                    });
                }
            }
        }
        Ok(())
    }

    /// Rank of every stratum, in index order: the length of the longest chain
    /// ending at it, minimal strata having rank 0.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> u32 {
        self.ranks[i]
    }

    pub fn rank_of(&self, id: &str) -> Result<u32> {
        Ok(self.ranks[self.index_of(id)?])
    }

    /// Rank of the poset itself; `None` when there are no strata.
    pub fn poset_rank(&self) -> Option<u32> {
        self.ranks.iter().copied().max()
    }

    /// Induced arrangement on the listed strata (given in ascending index
    /// order) inside a new ambient space. Intersection components outside the
    /// selection are dropped.
    pub(crate) fn restrict(
        &self,
        keep: &[usize],
        ambient_dim: u32,
        ambient_hodge: BivarPolynomial,
    ) -> Arrangement {
        let mut new_index = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            new_index[old] = new;
        }
        let strata: Vec<Stratum> = keep.iter().map(|&i| self.strata[i].clone()).collect();
        let index = strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.clone(), i))
            .collect();
        let below = keep
            .iter()
            .map(|&old| {
                let mut row = BitSet::new(keep.len());
                for j in self.below[old].iter() {
                    if new_index[j] != usize::MAX {
                        row.insert(new_index[j]);
                    }
                }
                row
            })
            .collect();
        let mut intersections = BTreeMap::new();
        for (&(a, b), comps) in &self.intersections {
            let (na, nb) = (new_index[a], new_index[b]);
            if na == usize::MAX || nb == usize::MAX {
                continue;
            }
            let mut kept: Vec<usize> = comps
                .iter()
                .map(|&c| new_index[c])
                .filter(|&c| c != usize::MAX)
                .collect();
            kept.sort_unstable();
            if !kept.is_empty() {
                intersections.insert((na.min(nb), na.max(nb)), kept);
            }
        }
        let transverse = self
            .transverse
            .iter()
            .map(|&(a, b)| (new_index[a], new_index[b]))
            .filter(|&(a, b)| a != usize::MAX && b != usize::MAX)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let mut out = Self::from_parts(
            ambient_dim,
            ambient_hodge,
            strata,
            index,
            below,
            intersections,
            self.meta.clone(),
        );
        out.transverse = transverse;
        out
    }

    /// Replaces the Hodge polynomial of each stratum.
    pub(crate) fn map_hodge(self, f: impl Fn(usize) -> BivarPolynomial) -> Self {
        self.map_strata(|i, s| s.hodge = f(i))
    }

    /// Edits strata in place; ids must stay unchanged.
    pub(crate) fn map_strata(mut self, f: impl Fn(usize, &mut Stratum)) -> Self {
        for (i, s) in self.strata.iter_mut().enumerate() {
            f(i, s);
        }
        self
    }

    /// The sub-arrangement of strata of rank at most `r`.
    pub fn truncate(&self, r: u32) -> Arrangement {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.ranks[i] <= r).collect();
        if keep.len() == self.len() {
            return self.clone();
        }
        self.restrict(&keep, self.ambient_dim, self.ambient_hodge.clone())
    }

    /// Truncation allowing `r = -1`, which yields the empty arrangement.
    pub fn truncate_signed(&self, r: i64) -> Arrangement {
        if r < 0 {
            self.restrict(&[], self.ambient_dim, self.ambient_hodge.clone())
        } else {
            self.truncate(u32::try_from(r).unwrap_or(u32::MAX))
        }
    }

    /// Strata strictly below `D_i`, as an arrangement inside `D_i`.
    pub fn below(&self, i: usize) -> Arrangement {
        let keep: Vec<usize> = self.below[i].iter().collect();
        let s = &self.strata[i];
        self.restrict(&keep, s.dim, s.hodge.clone())
    }

    pub fn below_id(&self, id: &str) -> Result<Arrangement> {
        Ok(self.below(self.index_of(id)?))
    }

    /// Every nonempty chain, in lexicographic order of index sequences.
    pub fn chains(&self) -> Chains<'_> {
        Chains {
            arr: self,
            stack: Vec::new(),
            next_root: 0,
        }
    }

    /// Number of nonempty chains, counted without enumerating them
    /// (saturates at `u128::MAX`).
    pub fn chain_count(&self) -> u128 {
        // starting[i] = chains whose least element is i
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.ranks[i]));
        let mut starting = vec![0u128; self.len()];
        for &i in &order {
            let mut total = 1u128;
            for j in self.above[i].iter() {
                total = total.saturating_add(starting[j]);
            }
            starting[i] = total;
        }
        starting.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// Every pairwise intersection is empty or a single stratum.
    pub fn is_simple(&self) -> bool {
        self.intersections.values().all(|c| c.len() <= 1)
    }

    /// Simple, and every `D_l < D_i` is cut out as `D_i ∩ D_j` for some
    /// `D_j > D_l`.
    pub fn is_regular(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        (0..self.len()).all(|i| {
            self.below[i].iter().all(|l| {
                self.above[l]
                    .iter()
                    .any(|j| matches!(self.meet(i, j), Meet::Components([c]) if *c == l))
            })
        })
    }

    /// Decomposes each stratum into its open part `D_i°` (points not in any
    /// smaller stratum) and returns the Hodge polynomials of those parts along
    /// with that of the complement of all strata.
    pub fn open_strata_hodge(&self) -> OpenStrata {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.ranks[i]);
        let mut open = vec![BivarPolynomial::zero(); self.len()];
        for &i in &order {
            let mut e = self.strata[i].hodge.clone();
            for j in self.below[i].iter() {
                e = &e - &open[j];
            }
            open[i] = e;
        }
        let mut complement = self.ambient_hodge.clone();
        for e in &open {
            complement = &complement - e;
        }
        OpenStrata { open, complement }
    }
}

/// Result of [`Arrangement::open_strata_hodge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenStrata {
    /// `e(D_i°)` in stratum index order.
    pub open: Vec<BivarPolynomial>,
    /// `e(X \ ∪ D_i)`.
    pub complement: BivarPolynomial,
}

fn compute_ranks(below: &[BitSet]) -> Vec<u32> {
    let n = below.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| below[i].len());
    let mut ranks = vec![0u32; n];
    for &i in &order {
        ranks[i] = below[i]
            .iter()
            .filter(|&j| j != i)
            .map(|j| ranks[j] + 1)
            .max()
            .unwrap_or(0);
    }
    ranks
}

/// A strictly ascending sequence of strata, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn ids<'a>(&self, arr: &'a Arrangement) -> Vec<&'a str> {
        self.0.iter().map(|&i| arr.strata[i].id.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Depth-first chain enumerator; see [`Arrangement::chains`].
pub struct Chains<'a> {
    arr: &'a Arrangement,
    stack: Vec<(usize, std::vec::IntoIter<usize>)>,
    next_root: usize,
}

impl Chains<'_> {
    fn push(&mut self, i: usize) -> Chain {
        let ext: Vec<usize> = self.arr.above[i].iter().collect();
        self.stack.push((i, ext.into_iter()));
        Chain(self.stack.iter().map(|(e, _)| *e).collect())
    }
}

impl Iterator for Chains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        loop {
            let Some((_, ext)) = self.stack.last_mut() else {
                if self.next_root >= self.arr.len() {
                    return None;
                }
                let root = self.next_root;
                self.next_root += 1;
                return Some(self.push(root));
            };
            match ext.next() {
                Some(j) => return Some(self.push(j)),
                None => {
                    self.stack.pop();
                }
            }
        }
    }
}
