use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn check_lengths(c: &[IntPoly], a: &[IntPoly], b: &[IntPoly]) -> Result<()> {
    let off = c.len().saturating_sub(1);
    if a.len() != off || b.len() != off {
        return Err(Error::LengthMismatch(format!(
            "diagonal has {} entries, so super- and subdiagonal need {off} (got {} and {})",
            c.len(),
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Determinant of the tridiagonal matrix with diagonal `c_1..c_n`,
/// superdiagonal `a_1..a_{n-1}` and subdiagonal `b_2..b_n`, via
/// `f_i = c_i f_{i-1} - b_i a_{i-1} f_{i-2}`, `f_0 = 1`, `f_{-1} = 0`.
///
/// `b[0]` holds `b_2`.
pub fn tridiag_det(c: &[IntPoly], a: &[IntPoly], b: &[IntPoly]) -> Result<IntPoly> {
    check_lengths(c, a, b)?;
    let mut before = IntPoly::zero();
    let mut current = IntPoly::one();
    for (i, ci) in c.iter().enumerate() {
        let mut next = ci * &current;
        if i > 0 {
            next -= &(&b[i - 1] * &a[i - 1] * &before);
        }
        before = std::mem::replace(&mut current, next);
    }
    Ok(current)
}

/// The dense tridiagonal matrix for the same inputs as [`tridiag_det`].
pub fn tridiagonal(c: &[IntPoly], a: &[IntPoly], b: &[IntPoly]) -> Result<PolyMatrix> {
    check_lengths(c, a, b)?;
    Ok(PolyMatrix::from_fn(c.len(), |i, j| {
        if i == j {
            c[i].clone()
        } else if j == i + 1 {
            a[i].clone()
        } else if i == j + 1 {
            b[j].clone()
        } else {
            IntPoly::zero()
        }
    }))
}
