use super::{Limits, PolyMatrix};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each step's division by the previous pivot is exact in `Z[t]`. Pivots are
/// the lowest-degree nonzero entry of the column; a column with no nonzero
/// candidate makes the determinant zero.
pub fn det(m: &PolyMatrix) -> IntPoly {
    let n = m.size();
    if n == 0 {
        return IntPoly::one();
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].degree(), i));
        let Some(p) = pivot else {
            return IntPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let num = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = if prev.is_one() {
                    num
                } else {
                    num.exact_div(&prev)
                        .expect("Bareiss quotient is exact over an integral domain")
                };
            }
            row[k] = IntPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// [`det`] with the configured size bound enforced.
pub fn det_checked(m: &PolyMatrix, limits: &Limits) -> Result<IntPoly> {
    if m.size() > limits.det_max {
        return Err(Error::SizeLimit {
            what: "determinant",
            size: m.size() as u128,
            limit: limits.det_max as u128,
        });
    }
    Ok(det(m))
}

/// Determinant by Laplace expansion along the sparsest remaining line.
///
/// Exponential in the worst case; an independent check on [`det`] for small
/// or very sparse matrices.
pub fn det_cofactor(m: &PolyMatrix) -> IntPoly {
    let rows: Vec<usize> = (0..m.size()).collect();
    let cols = rows.clone();
    laplace(m, &rows, &cols)
}

fn laplace(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> IntPoly {
    match rows.len() {
        0 => return IntPoly::one(),
        1 => return m[(rows[0], cols[0])].clone(),
        _ => {}
    }
    let zeros_in_row = |r: usize| cols.iter().filter(|&&c| m[(r, c)].is_zero()).count();
    let zeros_in_col = |c: usize| rows.iter().filter(|&&r| m[(r, c)].is_zero()).count();
    let (best_row, row_zeros) = rows
        .iter()
        .enumerate()
        .map(|(pos, &r)| (pos, zeros_in_row(r)))
        .max_by_key(|&(pos, z)| (z, std::cmp::Reverse(pos)))
        .unwrap();
    let (best_col, col_zeros) = cols
        .iter()
        .enumerate()
        .map(|(pos, &c)| (pos, zeros_in_col(c)))
        .max_by_key(|&(pos, z)| (z, std::cmp::Reverse(pos)))
        .unwrap();
    if row_zeros == cols.len() || col_zeros == rows.len() {
        return IntPoly::zero();
    }

    let mut total = IntPoly::zero();
    if row_zeros >= col_zeros {
        let r = rows[best_row];
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = &m[(r, c)];
            if entry.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * laplace(m, &sub_rows, &sub_cols);
            if (best_row + pos) % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
    } else {
        let c = cols[best_col];
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        for (pos, &r) in rows.iter().enumerate() {
            let entry = &m[(r, c)];
            if entry.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = entry * laplace(m, &sub_rows, &sub_cols);
            if (best_col + pos) % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_perms;
    use crate::polymat::{build_a, build_a_derangement, build_b, build_d, build_m};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Leibniz sum over all of `S_n`.
    fn det_leibniz(m: &PolyMatrix) -> IntPoly {
        all_perms(m.size())
            .map(|pi| {
                let term: IntPoly = (0..m.size())
                    .map(|i| m[(i, pi.at(i + 1) - 1)].clone())
                    .product();
                if pi.sgn() > 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn identity_det() {
        for n in 0..6 {
            assert_eq!(det(&PolyMatrix::identity(n)), IntPoly::one());
        }
    }

    #[test]
    fn family_matrix_examples() {
        let one_minus_t = p(&[1, -1]);
        assert_eq!(det(&build_m(5, 3, 1).unwrap()), one_minus_t.pow(2));
        assert_eq!(det(&build_m(6, 3, 2).unwrap()), one_minus_t.pow(3).shift(2));
        assert_eq!(det(&build_d(3, 1)), p(&[0, 1, 1]));
    }

    #[test]
    fn block_matrix_dets() {
        let one_minus_t = p(&[1, -1]);
        for k in 1..=8 {
            assert_eq!(det(&build_a(k)), one_minus_t.pow(k as u32 - 1));
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                det(&build_b(k)),
                one_minus_t.pow(k as u32 - 1).shift(1).scale(&sign.into())
            );
            assert_eq!(
                det(&build_a_derangement(k)),
                IntPoly::q_bracket(k - 1).shift(1).scale(&sign.into())
            );
        }
    }

    #[test]
    fn zero_column_gives_zero() {
        let m = PolyMatrix::from_int_rows(&[vec![1, 0], vec![2, 0]]);
        assert!(det(&m).is_zero());
        assert!(det_cofactor(&m).is_zero());
    }

    #[test]
    fn needs_row_swap() {
        let m = PolyMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&m), p(&[-1]));
        assert_eq!(det_cofactor(&m), p(&[-1]));
    }

    #[test]
    fn size_limit() {
        let limits = Limits {
            det_max: 3,
            ..Limits::default()
        };
        assert!(det_checked(&PolyMatrix::identity(3), &limits).is_ok());
        assert!(matches!(
            det_checked(&PolyMatrix::identity(4), &limits),
            Err(Error::SizeLimit { .. })
        ));
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (0..=max).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-2i64..=2, 0..=2), n * n).prop_map(
                move |cells| PolyMatrix::from_fn(n, |i, j| IntPoly::from_i64s(&cells[i * n + j])),
            )
        })
    }

    proptest! {
        #[test]
        fn engines_agree(m in matrix_strategy(5)) {
            let d = det(&m);
            prop_assert_eq!(&d, &det_cofactor(&m));
            prop_assert_eq!(&d, &det_leibniz(&m));
        }

        #[test]
        fn transpose_invariant(m in matrix_strategy(5)) {
            prop_assert_eq!(det(&m), det(&m.transpose()));
        }
    }
}
