use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::BivarPolynomial;
use crate::poset::{Arrangement, ArrangementMeta, Family, Space, Stratum};

/// A set partition of `{1, ..., n}`, blocks sorted internally and by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Normalizes the blocks; fails unless they are disjoint, nonempty and
    /// cover `1..=n` for `n` the largest element.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let ok = blocks.iter().all(|b| !b.is_empty())
            && all.iter().enumerate().all(|(k, &x)| x == k as u32 + 1);
        if !ok {
            return Err(Error::Builder(format!("{blocks:?} is not a set partition")));
        }
        Ok(Self { blocks })
    }

    /// From a restricted growth string: element `k+1` lies in block `rgs[k]`.
    fn from_rgs(rgs: &[u32]) -> Self {
        let nblocks = rgs.iter().max().map_or(0, |m| m + 1) as usize;
        let mut blocks = vec![Vec::new(); nblocks];
        for (k, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(k as u32 + 1);
        }
        Self { blocks }
    }

    pub fn n(&self) -> u32 {
        self.blocks.iter().map(|b| b.len() as u32).sum()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Number of blocks, `ρ(π)`.
    pub fn num_blocks(&self) -> u32 {
        self.blocks.len() as u32
    }

    /// All blocks are singletons.
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n() as usize + 1];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x as usize] = bi;
            }
        }
        owner
    }

    /// Every block of `finer` lies inside a block of `self`.
    pub fn is_coarsening_of(&self, finer: &SetPartition) -> bool {
        let owner = self.block_of();
        finer
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| owner[x as usize] == owner[b[0] as usize]))
    }

    /// Finest common coarsening: the partition generated by both merge patterns.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let n = self.n() as usize;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for b in self.blocks.iter().chain(&other.blocks) {
            for w in b.windows(2) {
                let (a, c) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                if a != c {
                    parent[a.max(c)] = a.min(c);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for x in 1..=n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x as u32);
        }
        let mut blocks: Vec<Vec<u32>> = groups.into_values().collect();
        blocks.sort();
        SetPartition { blocks }
    }
}

impl fmt::Display for SetPartition {
    /// `12|3|4` style; elements are separated by `.` once `n >= 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() >= 10 { "." } else { "" };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// All set partitions of `{1, ..., n}` in restricted-growth-string order.
pub fn set_partitions(n: u32) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0u32; n as usize];
    loop {
        out.push(SetPartition::from_rgs(&rgs));
        // next restricted growth string
        let mut k = n as usize - 1;
        loop {
            if k == 0 {
                return out;
            }
            let max_prev = rgs[..k].iter().max().copied().unwrap_or(0);
            if rgs[k] <= max_prev {
                rgs[k] += 1;
                for x in rgs.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
            k -= 1;
        }
    }
}

/// The diagonal arrangement in `X^n`: one stratum `Δ_π ≅ X^{ρ(π)}` for every
/// set partition `π` with a non-singleton block, ordered so that coarser
/// partitions give smaller diagonals.
pub fn build_diagonal(n: u32, dim_x: u32, e_x: &BivarPolynomial) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::Builder(format!("diagonal arrangement needs n >= 2, got {n}")));
    }
    if dim_x == 0 {
        return Err(Error::Builder("X must have positive dimension".into()));
    }
    if e_x.constant_term() != 1.into() {
        return Err(Error::Builder(format!(
            "e(X) = {e_x} must have constant term 1 (X connected, smooth, projective)"
        )));
    }
    let mut parts: Vec<SetPartition> = set_partitions(n)
        .into_iter()
        .filter(|p| !p.is_discrete())
        .collect();
    parts.sort_by_key(|p| p.num_blocks());
    let index: HashMap<&SetPartition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let strata = parts
        .iter()
        .map(|p| {
            Stratum::new(p.to_string(), dim_x * p.num_blocks(), e_x.pow(p.num_blocks()))
        })
        .collect();

    let mut relations = Vec::new();
    let mut intersections = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate().skip(i + 1) {
            if a == b {
                continue;
            }
            if a.is_coarsening_of(b) {
                relations.push((i, j));
            } else if b.is_coarsening_of(a) {
                relations.push((j, i));
            } else {
                let meet = index[&a.join(b)];
                intersections.push(((i, j), vec![meet]));
            }
        }
    }
    Ok(Arrangement::new(n * dim_x, e_x.pow(n), strata, relations, intersections)?.with_meta(
        ArrangementMeta {
            family: Some(Family::Diagonal),
            space: Some(Space::Projective),
            conjectural: false,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: u32) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    #[test]
    fn partition_counts_match_bell() {
        for n in 1..=7 {
            assert_eq!(set_partitions(n).len(), bell(n), "n = {n}");
        }
        assert_eq!(bell(7), 877);
    }

    #[test]
    fn join_by_union_find() {
        let a = SetPartition::new(vec![vec![1, 2], vec![3]]).unwrap();
        let b = SetPartition::new(vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(a.join(&b), SetPartition::new(vec![vec![1, 2, 3]]).unwrap());
        assert!(a.join(&b).is_coarsening_of(&a));
        assert_eq!(a.to_string(), "12|3");
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(SetPartition::new(vec![vec![1, 2], vec![2]]).is_err());
        assert!(SetPartition::new(vec![vec![1], vec![3]]).is_err());
    }

    #[test]
    fn n2_single_stratum() {
        let e = BivarPolynomial::projective_space(1);
        let arr = build_diagonal(2, 1, &e).unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(arr.stratum(0).dim, 1);
        assert_eq!(arr.stratum(0).hodge, e);
    }

    #[test]
    fn n3_structure() {
        let arr = build_diagonal(3, 1, &BivarPolynomial::projective_space(1)).unwrap();
        assert_eq!(arr.len(), 4);
        let small = arr.index_of("123").unwrap();
        assert_eq!(arr.rank(small), 0);
        for id in ["12|3", "13|2", "1|23"] {
            assert_eq!(arr.rank_of(id).unwrap(), 1);
        }
        let (a, b) = (arr.index_of("12|3").unwrap(), arr.index_of("13|2").unwrap());
        assert_eq!(arr.meet(a, b), crate::poset::Meet::Components(&[small]));
        assert_eq!(arr.validate(), Ok(()));
    }

    #[test]
    fn n4_simple_and_regular() {
        let arr = build_diagonal(4, 1, &BivarPolynomial::projective_space(1)).unwrap();
        assert_eq!(arr.len(), 14);
        assert_eq!(arr.validate(), Ok(()));
        assert!(arr.is_simple());
        assert!(arr.is_regular());
        assert_eq!(arr.rank_of("12|3|4").unwrap(), 2);
        assert_eq!(arr.rank_of("12|34").unwrap(), 1);
    }

    #[test]
    fn builder_errors() {
        let e = BivarPolynomial::projective_space(1);
        assert!(build_diagonal(1, 1, &e).is_err());
        assert!(build_diagonal(3, 0, &e).is_err());
        assert!(build_diagonal(3, 1, &BivarPolynomial::constant(2)).is_err());
    }
}
