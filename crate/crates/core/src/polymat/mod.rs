//! Square matrices over `Z[t]`: the family matrices, their determinant and
//! permanent engines, Kronecker products and the block-diagonalizing
//! relabelings.

mod build;
mod det;
mod permanent;
mod relabel;
mod tridiag;

use std::fmt;
use std::ops::{Index, IndexMut};

pub use build::{build_a, build_a_derangement, build_b, build_d, build_m, congruence_matrix};
pub use det::{det, det_checked, det_cofactor};
pub use permanent::{permanent, permanent_expansion, permanent_with};
pub use relabel::{relabel, relabeled_d_form, relabeled_m_form};
pub use tridiag::{tridiag_det, tridiagonal};

use crate::poly::IntPoly;

/// Size bounds for the exponential and near-cubic engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub permanent_max: usize,
    pub det_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            permanent_max: 12,
            det_max: 64,
        }
    }
}

/// Row-major square matrix with polynomial entries. Indices are 0-based.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(size: usize) -> Self {
        PolyMatrix {
            size,
            entries: vec![IntPoly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| {
            if i == j {
                IntPoly::one()
            } else {
                IntPoly::zero()
            }
        })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { size, entries }
    }

    /// From integer rows; panics on ragged input.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        Self::from_fn(size, |i, j| IntPoly::constant(rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, i: usize) -> &[IntPoly] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[IntPoly]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    pub(crate) fn to_rows(&self) -> Vec<Vec<IntPoly>> {
        self.rows().map(<[IntPoly]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self[(j, i)].clone())
    }

    /// Square submatrix on rows and columns `start..start+len`.
    pub fn principal_block(&self, start: usize, len: usize) -> Self {
        self.block(start, start, len)
    }

    /// `len x len` block with top-left corner at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, len: usize) -> Self {
        Self::from_fn(len, |i, j| self[(row + i, col + j)].clone())
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn direct_sum(blocks: &[PolyMatrix]) -> Self {
        let size = blocks.iter().map(PolyMatrix::size).sum();
        let mut out = Self::zeros(size);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.size {
                for j in 0..b.size {
                    out[(offset + i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.size;
        }
        out
    }

    /// Simultaneous row and column permutation: entry `(i, j)` moves to
    /// `(sigma[i], sigma[j])`. `sigma` is 0-based.
    pub fn conjugate_by(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.size);
        let mut out = Self::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out[(sigma[i], sigma[j])] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(IntPoly::is_zero)
    }

    /// Renders entries in human polynomial form, one row per line, columns aligned.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.size {
            let line: Vec<String> = (0..self.size)
                .map(|j| format!("{:>width$}", cells[i * self.size + j]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = IntPoly;
    fn index(&self, (i, j): (usize, usize)) -> &IntPoly {
        assert!(
            i < self.size && j < self.size,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut IntPoly {
        assert!(
            i < self.size && j < self.size,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.size + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.size, self.size)?;
        f.write_str(&self.render())
    }
}

/// Kronecker product `[a_ij B]`.
pub fn kronecker(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let p = b.size;
    PolyMatrix::from_fn(a.size * p, |i, j| &a[(i / p, j / p)] * &b[(i % p, j % p)])
}
