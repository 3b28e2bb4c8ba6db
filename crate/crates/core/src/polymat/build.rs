use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// The `n x n` matrix with entry `(i, j)` (1-based) equal to `0` unless
/// `j - i ≡ r - 1 (mod k)`, and then `1` for `i >= j` and `t` for `i < j`.
/// With `zero_diagonal` the diagonal is cleared as well.
///
/// Its determinant (permanent) is the signed (unsigned) excedance enumerator
/// of the family, or of its derangements when the diagonal is cleared. This
/// holds for every `(n, k, r)`, including the empty families.
pub fn congruence_matrix(n: usize, k: usize, r: usize, zero_diagonal: bool) -> PolyMatrix {
    assert!(k >= 1 && (1..=k).contains(&r), "need 1 <= r <= k");
    let shift = (r - 1) as i64;
    let k = k as i64;
    PolyMatrix::from_fn(n, |i, j| {
        let diff = j as i64 - i as i64;
        if (diff - shift).rem_euclid(k) != 0 || (zero_diagonal && i == j) {
            IntPoly::zero()
        } else if i >= j {
            IntPoly::one()
        } else {
            IntPoly::t()
        }
    })
}

/// `M_{n,r}`. For `r >= 2` the matrix is only defined when `k | n`.
pub fn build_m(n: usize, k: usize, r: usize) -> Result<PolyMatrix> {
    if n == 0 || k == 0 || r == 0 || r > k {
        return Err(Error::InvalidSpec(format!(
            "need n >= 1, k >= 1, 1 <= r <= k (got n={n}, k={k}, r={r})"
        )));
    }
    if r >= 2 && !n.is_multiple_of(k) {
        return Err(Error::InvalidSpec(format!(
            "M_(n,r) with r = {r} >= 2 requires k | n (n={n}, k={k})"
        )));
    }
    Ok(congruence_matrix(n, k, r, false))
}

/// `D_n`: `M_{n,1}` with zero diagonal.
pub fn build_d(n: usize, k: usize) -> PolyMatrix {
    congruence_matrix(n, k, 1, true)
}

/// Ones on and below the diagonal, `t` above. Its permanent is `A_m(t)`.
pub fn build_a(m: usize) -> PolyMatrix {
    congruence_matrix(m, 1, 1, false)
}

/// `t` on and above the diagonal, ones below.
pub fn build_b(m: usize) -> PolyMatrix {
    PolyMatrix::from_fn(m, |i, j| if i > j { IntPoly::one() } else { IntPoly::t() })
}

/// Zero diagonal, ones below, `t` above.
pub fn build_a_derangement(m: usize) -> PolyMatrix {
    congruence_matrix(m, 1, 1, true)
}
