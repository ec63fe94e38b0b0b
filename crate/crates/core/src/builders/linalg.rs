//! Exact linear algebra over `Q` on row-vector matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Row = Vec<BigRational>;

/// Reduced row echelon form with zero rows removed. Canonical for the row space.
pub fn rref(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = BigRational::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Column index of the leading entry of each row of an RREF matrix.
pub fn pivots(rref_rows: &[Row]) -> Vec<usize> {
    rref_rows
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let r = rref(rows, ncols);
    let piv = pivots(&r);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Row space of the intersection of two row spaces.
pub fn intersect(a: &[Row], b: &[Row], ncols: usize) -> Vec<Row> {
    let mut ann = nullspace(a, ncols);
    ann.extend(nullspace(b, ncols));
    rref(&nullspace(&ann, ncols), ncols)
}

/// Row space of `a` lies inside the row space of `b`.
pub fn contained(a: &[Row], b: &[Row], ncols: usize) -> bool {
    let mut both = b.to_vec();
    both.extend_from_slice(a);
    rref(&both, ncols).len() == rref(b, ncols).len()
}
