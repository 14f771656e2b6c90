use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::engine::{enumerate_basis, Engine, Mode, NormalMonomial};
use crate::exactnum::Rat;

/// Dense exact matrix of a linear map between weight spaces.
///
/// Column `j` holds the coordinates of the image of `col_basis[j]` in `row_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Rat>>,
    pub row_basis: Vec<NormalMonomial>,
    pub col_basis: Vec<NormalMonomial>,
}

impl ExactMatrix {
    pub fn from_rows(entries: Vec<Vec<Rat>>, cols: usize) -> Self {
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix {
            rows: entries.len(),
            cols,
            entries,
            row_basis: Vec::new(),
            col_basis: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        ExactMatrix::from_rows(entries, n)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::from_rows(vec![vec![Rat::zero(); cols]; rows], cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    /// Row-wise concatenation; column bases must agree.
    pub fn stack(blocks: &[ExactMatrix]) -> ExactMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "column counts differ");
        let mut entries = Vec::new();
        let mut row_basis = Vec::new();
        for b in blocks {
            entries.extend(b.entries.iter().cloned());
            row_basis.extend(b.row_basis.iter().cloned());
        }
        ExactMatrix {
            rows: entries.len(),
            cols,
            entries,
            row_basis,
            col_basis: blocks.first().map(|b| b.col_basis.clone()).unwrap_or_default(),
        }
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.cols - kernel(self).len()
    }
}

/// Matrix of `op` from the weight-`h` basis to the weight-`(h − index)` basis.
///
/// A negative target weight is the zero space, giving a matrix with no rows.
pub fn mode_matrix(op: Mode, h: u32) -> ExactMatrix {
    mode_matrix_with(Engine::global(), op, h)
}

pub fn mode_matrix_with(engine: &Engine, op: Mode, h: u32) -> ExactMatrix {
    let target = i64::from(h) - op.index;
    let col_basis = enumerate_basis(h);
    let row_basis = u32::try_from(target).map(enumerate_basis).unwrap_or_default();
    let columns: Vec<Vec<Rat>> = col_basis
        .par_iter()
        .map(|m| engine.apply_monomial(op, m).coordinates(&row_basis))
        .collect();
    let rows = row_basis.len();
    let cols = col_basis.len();
    let entries = (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    ExactMatrix { rows, cols, entries, row_basis, col_basis }
}

/// Integer echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Bareiss elimination with first-nonzero pivoting; every division is exact.
fn bareiss_echelon(m: &ExactMatrix) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .map(|row| {
            let l = Rat::lcm_denominators(row.iter());
            row.iter()
                .map(|x| (x.numer() * (&l / x.denom())).clone())
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        bottom.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &piv * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss step");
                row[j] = q;
            }
        });
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Basis of the right kernel, one vector per free column in ascending order.
///
/// Each vector has a 1 in its free column and 0 in the other free columns.
pub fn kernel(m: &ExactMatrix) -> Vec<Vec<Rat>> {
    let ech = bareiss_echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let rows: Vec<Vec<Rat>> = ech
        .rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_bigint(x.clone())).collect())
        .collect();
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![Rat::zero(); m.cols];
            x[free] = Rat::one();
            for (i, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &rows[i];
                let s: Rat = (pc + 1..m.cols)
                    .filter(|&j| !x[j].is_zero() && !row[j].is_zero())
                    .map(|j| &row[j] * &x[j])
                    .sum();
                x[pc] = -(s / row[pc].clone());
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(kernel(&ExactMatrix::zeros(1, 1)).len(), 1);
        assert!(kernel(&ExactMatrix::identity(4)).is_empty());
    }

    #[test]
    fn rank_deficient_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Rat::is_zero));
        assert_eq!(k[0], vec![Rat::int(-1), Rat::int(-1), Rat::int(1)]);
    }

    #[test]
    fn skipped_pivot_columns() {
        let m = mat(&[&[0, 3, 1, 4], &[0, 6, 2, 9], &[0, 0, 0, 5]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn small_mode_matrices() {
        let e = Engine::new();
        let m = mode_matrix_with(&e, Mode::l(1), 2);
        assert_eq!((m.rows, m.cols), (0, 1));
        assert_eq!(kernel(&m).len(), 1);
        let m = mode_matrix_with(&e, Mode::l(2), 2);
        assert_eq!(m.entries, vec![vec![Rat::frac(3, 5)]]);
    }
}
