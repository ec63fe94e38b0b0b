use super::Arrangement;

/// Abstract simplicial complex on stratum indices, stored by its facets.
///
/// For an arrangement this is the nerve of the boundary divisors of the
/// blowup: a set of divisors meets exactly when the strata form a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: usize,
    /// Maximal faces, each sorted ascending, listed in lexicographic order.
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// True when `face` is a subset of some facet (the empty set included).
    pub fn contains(&self, face: &[usize]) -> bool {
        self.facets
            .iter()
            .any(|facet| face.iter().all(|v| facet.binary_search(v).is_ok()))
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len()).max().map(|k| k - 1)
    }

    /// All nonempty faces, each sorted ascending, without duplicates.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut out = std::collections::BTreeSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| facet[b])
                    .collect();
                out.insert(face);
            }
        }
        out.into_iter().collect()
    }
}

impl Arrangement {
    /// The boundary nerve: faces are exactly the chains of the poset, so the
    /// facets are the maximal chains.
    pub fn boundary_nerve(&self) -> SimplicialComplex {
        let mut facets = Vec::new();
        let mut path = Vec::new();
        for i in 0..self.len() {
            if self.below_set(i).is_empty() {
                self.extend_maximal(i, &mut path, &mut facets);
            }
        }
        for f in &mut facets {
            f.sort_unstable();
        }
        facets.sort();
        facets.dedup();
        SimplicialComplex {
            vertices: self.len(),
            facets,
        }
    }

    fn extend_maximal(&self, i: usize, path: &mut Vec<usize>, facets: &mut Vec<Vec<usize>>) {
        path.push(i);
        let ups: Vec<usize> = self
            .above_set(i)
            .iter()
            .filter(|&j| {
                // j covers i
                !self.above_set(i).iter().any(|k| self.less(k, j))
            })
            .collect();
        if ups.is_empty() {
            facets.push(path.clone());
        }
        for j in ups {
            self.extend_maximal(j, path, facets);
        }
        path.pop();
    }
}
