//! Closed forms for the excedance enumerators over `MP^k_{n,r}` and
//! `MPD^k_{n,r}`, the Eulerian polynomials, and the brute-force sums they are
//! checked against.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{ambient_count, enumerate, shards, FamilyIter, FamilySpec};
use crate::perm::{all_perms, des_of, exc_of, sgn_of};
use crate::poly::IntPoly;
use crate::polymat::{congruence_matrix, det_checked, permanent_with, Limits};

/// Default cap on the number of family members a brute-force sum may visit.
pub const DEFAULT_BRUTE_BUDGET: u128 = 20_000_000;

/// Families larger than this are summed shard by shard in parallel.
const PARALLEL_THRESHOLD: u128 = 50_000;

fn one_minus_t() -> IntPoly {
    IntPoly::from_i64s(&[1, -1])
}

/// Eulerian polynomial `A_n(t)` from the triangle
/// `A_{n,k} = (k+1) A_{n-1,k} + (n-k) A_{n-1,k-1}`; `A_0 = 1`.
pub fn eulerian(n: usize) -> IntPoly {
    let mut row: Vec<num_bigint::BigInt> = vec![1.into()];
    for m in 2..=n {
        let mut next = vec![num_bigint::BigInt::from(0); m];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * (k + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * (m - k);
            }
        }
        row = next;
    }
    IntPoly::from_coeffs(row)
}

/// Excedance enumerators of one family, split by sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcEnumerators {
    /// `Σ t^exc` over even members.
    pub even: IntPoly,
    /// `Σ t^exc` over odd members.
    pub odd: IntPoly,
}

impl ExcEnumerators {
    pub fn unsigned(&self) -> IntPoly {
        &self.even + &self.odd
    }

    pub fn signed(&self) -> IntPoly {
        &self.even - &self.odd
    }
}

#[derive(Default)]
struct Histogram {
    even: Vec<u64>,
    odd: Vec<u64>,
}

impl Histogram {
    fn new(n: usize) -> Self {
        Histogram {
            even: vec![0; n.max(1)],
            odd: vec![0; n.max(1)],
        }
    }

    fn absorb(mut self, mut iter: FamilyIter) -> Self {
        while let Some(w) = iter.next_word() {
            let e = exc_of(w);
            if sgn_of(w) > 0 {
                self.even[e] += 1;
            } else {
                self.odd[e] += 1;
            }
        }
        self
    }

    fn merge(mut self, other: Histogram) -> Self {
        for (a, b) in self.even.iter_mut().zip(other.even) {
            *a += b;
        }
        for (a, b) in self.odd.iter_mut().zip(other.odd) {
            *a += b;
        }
        self
    }

    fn into_polys(self) -> ExcEnumerators {
        let to_poly = |h: Vec<u64>| IntPoly::from_coeffs(h.into_iter().map(Into::into).collect());
        ExcEnumerators {
            even: to_poly(self.even),
            odd: to_poly(self.odd),
        }
    }
}

/// Family cardinality (ignoring the derangement filter), or `SizeLimit` when it
/// exceeds `budget`.
pub fn check_budget(spec: &FamilySpec, budget: u128) -> Result<u128> {
    let size = ambient_count(spec);
    match size.to_u128() {
        Some(s) if s <= budget => Ok(s),
        _ => Err(Error::SizeLimit {
            what: "family enumeration",
            size: size.to_u128().unwrap_or(u128::MAX),
            limit: budget,
        }),
    }
}

/// Brute-force excedance enumerators by walking every member of the family.
pub fn brute_enumerators(spec: &FamilySpec, budget: u128) -> Result<ExcEnumerators> {
    let size = check_budget(spec, budget)?;
    let n = spec.n();
    let hist = if size > PARALLEL_THRESHOLD {
        shards(spec)
            .into_par_iter()
            .map(|shard| Histogram::new(n).absorb(shard))
            .reduce(|| Histogram::new(n), Histogram::merge)
    } else {
        Histogram::new(n).absorb(enumerate(spec))
    };
    Ok(hist.into_polys())
}

/// `Σ (sgn π)? t^{exc π}` over the family, with the default budget.
pub fn brute_exc_poly(spec: &FamilySpec, signed: bool) -> Result<IntPoly> {
    brute_exc_poly_with(spec, signed, DEFAULT_BRUTE_BUDGET)
}

pub fn brute_exc_poly_with(spec: &FamilySpec, signed: bool, budget: u128) -> Result<IntPoly> {
    let e = brute_enumerators(spec, budget)?;
    Ok(if signed { e.signed() } else { e.unsigned() })
}

/// `Σ_{π∈S_n} (sgn π)? t^{des π}` by walking `S_n`.
pub fn brute_des_poly(n: usize, signed: bool) -> IntPoly {
    let mut hist = vec![0i64; n.max(1)];
    for p in all_perms(n) {
        let w = p.word();
        hist[des_of(w)] += if signed { i64::from(sgn_of(w)) } else { 1 };
    }
    IntPoly::from_i64s(&hist)
}

/// `SgnMPE^k_{n,r}(t)`.
///
/// `r = 1`: `(1-t)^{n-k}`, or `1` when `n < k` (the family is `{id}`).
/// `r >= 2`, `n = mk`: `(-1)^{(mr-1)(k-r+1)} t^{k-r+1} (1-t)^{n-k}`.
/// `r >= 2`, `k ∤ n`: zero (empty family).
pub fn sgn_mpe(spec: &FamilySpec) -> IntPoly {
    let (n, k, r) = (spec.n(), spec.k(), spec.r());
    if r == 1 {
        return match n.checked_sub(k) {
            Some(d) => one_minus_t().pow(d as u32),
            None => IntPoly::one(),
        };
    }
    if !spec.k_divides_n() {
        return IntPoly::zero();
    }
    let m = n / k;
    let base = one_minus_t().pow((n - k) as u32).shift(k - r + 1);
    if ((m * r - 1) * (k - r + 1)) % 2 == 0 {
        base
    } else {
        -base
    }
}

/// `MPE^k_{n,r}(t)`.
///
/// `r = 1`, `n = mk + j`: `A_{m+1}(t)^j A_m(t)^{k-j}`.
/// `r >= 2`, `n = mk`: `t^{k+1-r} A_m(t)^k`; zero when `k ∤ n`.
pub fn mpe(spec: &FamilySpec) -> IntPoly {
    let (n, k, r) = (spec.n(), spec.k(), spec.r());
    let (m, j) = spec.quot_rem();
    if r == 1 {
        return eulerian(m + 1).pow(j as u32) * eulerian(m).pow((k - j) as u32);
    }
    if n % k != 0 {
        return IntPoly::zero();
    }
    eulerian(m).pow(k as u32).shift(k + 1 - r)
}

/// `SgnMPDE^k_{n,r}(t)`.
///
/// `r = 1`, `n = mk + j`: `(-1)^n (-t)^k [m]_t^j [m-1]_t^{k-j}`.
/// `r >= 2`: equal to [`sgn_mpe`], every member being fixed-point free.
pub fn sgn_mpde(spec: &FamilySpec) -> IntPoly {
    let (n, k, r) = (spec.n(), spec.k(), spec.r());
    if r >= 2 {
        return sgn_mpe(spec);
    }
    let (m, j) = spec.quot_rem();
    if m == 0 {
        // n < k: only the identity, which has fixed points ([0]_t = 0)
        return IntPoly::zero();
    }
    let body = IntPoly::q_bracket(m).pow(j as u32) * IntPoly::q_bracket(m - 1).pow((k - j) as u32);
    // (-1)^n (-t)^k = (-1)^{n+k} t^k
    let body = body.shift(k);
    if (n + k) % 2 == 0 {
        body
    } else {
        -body
    }
}

/// Signed descent enumerator over `S_n`: `(1-t)^m A_m(t)` for `n = 2m` and
/// `(1-t)^m A_{m+1}(t)` for `n = 2m + 1`.
pub fn sgn_des_closed(n: usize) -> IntPoly {
    let m = n / 2;
    let a = if n.is_multiple_of(2) {
        eulerian(m)
    } else {
        eulerian(m + 1)
    };
    one_minus_t().pow(m as u32) * a
}

/// The closed form matching `spec` and `signed`, if one exists.
///
/// Unsigned derangement enumerators have no closed form for `r = 1`.
pub fn closed_exc_poly(spec: &FamilySpec, signed: bool) -> Option<IntPoly> {
    match (spec.is_derangement(), signed) {
        (false, true) => Some(sgn_mpe(spec)),
        (false, false) => Some(mpe(spec)),
        (true, true) => Some(sgn_mpde(spec)),
        (true, false) if spec.r() >= 2 => Some(mpe(spec)),
        (true, false) => None,
    }
}

/// Determinant (signed) or permanent (unsigned) of the family's congruence
/// matrix, with the diagonal cleared for derangement families.
pub fn matrix_exc_poly(spec: &FamilySpec, signed: bool, limits: &Limits) -> Result<IntPoly> {
    let m = congruence_matrix(spec.n(), spec.k(), spec.r(), spec.is_derangement());
    if signed {
        det_checked(&m, limits)
    } else {
        permanent_with(&m, limits)
    }
}
