use super::{Limits, PolyMatrix};
use crate::error::{Error, Result};
use crate::perm::all_perms;
use crate::poly::IntPoly;

/// Permanent with the default size bound.
pub fn permanent(m: &PolyMatrix) -> Result<IntPoly> {
    permanent_with(m, &Limits::default())
}

/// Ryser's inclusion-exclusion formula
/// `perm(A) = (-1)^n Σ_S (-1)^{|S|} Π_i Σ_{j∈S} a_ij`,
/// visiting column subsets in Gray-code order so each step adds or removes
/// one column from the running row sums.
pub fn permanent_with(m: &PolyMatrix, limits: &Limits) -> Result<IntPoly> {
    let n = m.size();
    if n > limits.permanent_max || n >= 64 {
        return Err(Error::SizeLimit {
            what: "permanent",
            size: n as u128,
            limit: limits.permanent_max as u128,
        });
    }
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut row_sums = vec![IntPoly::zero(); n];
    let mut total = IntPoly::zero();
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        gray ^= 1 << col;
        let adding = gray & (1 << col) != 0;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            let entry = &m[(i, col)];
            if entry.is_zero() {
                continue;
            }
            if adding {
                *sum += entry;
            } else {
                *sum -= entry;
            }
        }
        if row_sums.iter().any(IntPoly::is_zero) {
            continue;
        }
        let prod: IntPoly = row_sums.iter().cloned().product();
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += &prod;
        } else {
            total -= &prod;
        }
    }
    Ok(total)
}

/// The defining sum `Σ_{π∈S_n} Π_i a_{i,π_i}`; the reference for Ryser.
pub fn permanent_expansion(m: &PolyMatrix) -> IntPoly {
    all_perms(m.size())
        .map(|pi| {
            (0..m.size())
                .map(|i| m[(i, pi.at(i + 1) - 1)].clone())
                .product::<IntPoly>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::{build_a, build_m};
    use proptest::prelude::*;

    #[test]
    fn identity_permanent() {
        for n in 0..6 {
            assert_eq!(permanent(&PolyMatrix::identity(n)).unwrap(), IntPoly::one());
        }
    }

    #[test]
    fn examples() {
        assert_eq!(permanent(&build_a(2)).unwrap(), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(
            permanent(&build_m(5, 3, 1).unwrap()).unwrap(),
            IntPoly::from_i64s(&[1, 1]).pow(2)
        );
    }

    #[test]
    fn permanent_of_a_is_eulerian() {
        // A_4(t) = 1 + 11t + 11t^2 + t^3
        assert_eq!(
            permanent(&build_a(4)).unwrap(),
            IntPoly::from_i64s(&[1, 11, 11, 1])
        );
    }

    #[test]
    fn all_ones_is_factorial() {
        let ones = PolyMatrix::from_fn(6, |_, _| IntPoly::one());
        assert_eq!(permanent(&ones).unwrap(), IntPoly::constant(720));
    }

    #[test]
    fn size_limit_is_configurable() {
        let big = PolyMatrix::identity(13);
        assert!(matches!(permanent(&big), Err(Error::SizeLimit { .. })));
        let limits = Limits {
            permanent_max: 13,
            ..Limits::default()
        };
        assert_eq!(permanent_with(&big, &limits).unwrap(), IntPoly::one());
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
        fn ryser_matches_expansion(m in matrix_strategy(6)) {
            prop_assert_eq!(permanent(&m).unwrap(), permanent_expansion(&m));
        }
    }
}
