use super::{build_a, build_a_derangement, build_b, kronecker, PolyMatrix};
use crate::error::{Error, Result};
use crate::families::proof_relabeling;

fn check_params(n: usize, k: usize, r: usize) -> Result<()> {
    if n == 0 || k == 0 || r == 0 || r > k {
        return Err(Error::InvalidSpec(format!(
            "need n >= 1, k >= 1, 1 <= r <= k (got n={n}, k={k}, r={r})"
        )));
    }
    if r >= 2 && !n.is_multiple_of(k) {
        return Err(Error::InvalidSpec(format!(
            "relabeling for r = {r} >= 2 requires k | n (n={n}, k={k})"
        )));
    }
    Ok(())
}

/// Applies the residue-class relabeling to rows and columns simultaneously,
/// so index `q` becomes `σ(q)` from [`proof_relabeling`].
pub fn relabel(m: &PolyMatrix, n: usize, k: usize, r: usize) -> Result<PolyMatrix> {
    check_params(n, k, r)?;
    if m.size() != n {
        return Err(Error::InvalidSpec(format!(
            "matrix has size {}, expected {n}",
            m.size()
        )));
    }
    let sigma: Vec<usize> = proof_relabeling(n, k).into_iter().map(|q| q - 1).collect();
    Ok(m.conjugate_by(&sigma))
}

fn repeated(block: &PolyMatrix, times: usize) -> PolyMatrix {
    kronecker(&PolyMatrix::identity(times), block)
}

/// The form `relabel(build_m(n, k, r))` takes.
///
/// For `r = 1`, with `n = mk + j`: block diagonal with `j` copies of `A_{m+1}`
/// followed by `k - j` copies of `A_m`. For `r >= 2` (so `n = mk`): zero
/// diagonal blocks, `k - r + 1` copies of `B_m` in the upper-right block and
/// `r - 1` copies of `A_m` in the lower-left block.
pub fn relabeled_m_form(n: usize, k: usize, r: usize) -> Result<PolyMatrix> {
    check_params(n, k, r)?;
    let (m, j) = (n / k, n % k);
    if r == 1 {
        return Ok(PolyMatrix::direct_sum(&[
            repeated(&build_a(m + 1), j),
            repeated(&build_a(m), k - j),
        ]));
    }
    let upper = repeated(&build_b(m), k - r + 1);
    let lower = repeated(&build_a(m), r - 1);
    let (p, q) = (upper.size(), lower.size());
    let mut out = PolyMatrix::zeros(n);
    for i in 0..p {
        for c in 0..p {
            out[(i, q + c)] = upper[(i, c)].clone();
        }
    }
    for i in 0..q {
        for c in 0..q {
            out[(p + i, c)] = lower[(i, c)].clone();
        }
    }
    Ok(out)
}

/// The form `relabel(build_d(n, k))` takes: block diagonal with `j` copies of
/// the size-`m+1` derangement block and `k - j` copies of the size-`m` one.
pub fn relabeled_d_form(n: usize, k: usize) -> Result<PolyMatrix> {
    check_params(n, k, 1)?;
    let (m, j) = (n / k, n % k);
    Ok(PolyMatrix::direct_sum(&[
        repeated(&build_a_derangement(m + 1), j),
        repeated(&build_a_derangement(m), k - j),
    ]))
}
