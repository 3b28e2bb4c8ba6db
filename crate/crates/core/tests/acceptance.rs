//! End-to-end identity checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::cell::RefCell;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use modalt_core::closed::{
    brute_des_poly, brute_exc_poly, mpe, sgn_des_closed, sgn_mpde, sgn_mpe, DEFAULT_BRUTE_BUDGET,
};
use modalt_core::gamma::{certify_with, mpe_even_odd, shifted_center, CertifyOptions, Parity};
use modalt_core::polymat::{
    build_a, build_a_derangement, build_b, build_d, build_m, congruence_matrix, det, det_cofactor,
    kronecker, permanent, relabel, relabeled_m_form, tridiag_det, tridiagonal,
};
use modalt_core::{FamilySpec, IntPoly, PolyMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Criteria that cannot pass as stated. They still run and print FAIL, but do
/// not fail the suite. See the README section on the gamma centers.
const DOCUMENTED_FAILURES: &[usize] = &[6];

thread_local! {
    // every matrix of size <= 7 that criteria 1-5 take a determinant or permanent of
    static SEEN: RefCell<Vec<PolyMatrix>> = const { RefCell::new(Vec::new()) };
}

fn record(m: &PolyMatrix) {
    if m.size() <= 7 {
        SEEN.with(|s| s.borrow_mut().push(m.clone()));
    }
}

fn tracked_det(m: &PolyMatrix) -> IntPoly {
    record(m);
    det(m)
}

fn tracked_permanent(m: &PolyMatrix) -> IntPoly {
    record(m);
    permanent(m).expect("grid matrices fit the permanent bound")
}

fn grid() -> impl Iterator<Item = FamilySpec> {
    (1..=4usize).flat_map(|k| {
        (k..=8usize).flat_map(move |n| (1..=k).map(move |r| FamilySpec::new(n, k, r).unwrap()))
    })
}

/// `build_m` where it is defined, the congruence matrix otherwise
/// (`r >= 2` with `k ∤ n`, where every determinant and permanent vanishes).
fn grid_matrix(s: &FamilySpec) -> PolyMatrix {
    build_m(s.n(), s.k(), s.r()).unwrap_or_else(|_| congruence_matrix(s.n(), s.k(), s.r(), false))
}

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn signed_theorem() -> Outcome {
    let mut cases = 0;
    for s in grid() {
        let brute = brute_exc_poly(&s, true).map_err(|e| e.to_string())?;
        let closed = sgn_mpe(&s);
        let matrix = tracked_det(&grid_matrix(&s));
        check(brute == closed && closed == matrix, || {
            format!("{s:?}: brute {brute}, closed {closed}, det {matrix}")
        })?;
        cases += 1;
    }
    Ok(format!("{cases} grid points"))
}

fn unsigned_theorem() -> Outcome {
    let mut cases = 0;
    for s in grid() {
        let brute = brute_exc_poly(&s, false).map_err(|e| e.to_string())?;
        let closed = mpe(&s);
        let matrix = tracked_permanent(&grid_matrix(&s));
        check(brute == closed && closed == matrix, || {
            format!("{s:?}: brute {brute}, closed {closed}, permanent {matrix}")
        })?;
        cases += 1;
    }
    Ok(format!("{cases} grid points"))
}

fn derangement_theorem() -> Outcome {
    let (mut cases, mut zeros) = (0, 0);
    for s in grid().map(|s| s.with_derangement(true)) {
        let brute = brute_exc_poly(&s, true).map_err(|e| e.to_string())?;
        let closed = sgn_mpde(&s);
        check(brute == closed, || {
            format!("{s:?}: brute {brute}, closed {closed}")
        })?;
        if s.r() == 1 {
            let matrix = tracked_det(&build_d(s.n(), s.k()));
            check(matrix == closed, || {
                format!("{s:?}: det(D) {matrix}, closed {closed}")
            })?;
        }
        zeros += usize::from(closed.is_zero());
        cases += 1;
    }
    let forced = sgn_mpde(&FamilySpec::derangements(3, 2, 1).unwrap());
    check(forced.is_zero(), || {
        format!("(3,2,1) derangements gave {forced}")
    })?;
    Ok(format!("{cases} grid points, {zeros} zero"))
}

fn specializations() -> Outcome {
    for n in 2..=9usize {
        let s = FamilySpec::new(n, 1, 1).unwrap();
        let want = p(&[1, -1]).pow(n as u32 - 1);
        check(sgn_mpe(&s) == want, || {
            format!("sgn_mpe({n},1,1) = {}", sgn_mpe(&s))
        })?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let want = IntPoly::q_bracket(n - 1).shift(1).scale(&sign.into());
        let got = sgn_mpde(&s.with_derangement(true));
        check(got == want, || {
            format!("sgn_mpde({n},1,1) = {got}, want {want}")
        })?;
    }
    for n in 0..=7 {
        let (closed, brute) = (sgn_des_closed(n), brute_des_poly(n, true));
        check(closed == brute, || {
            format!("descents n={n}: {closed} vs {brute}")
        })?;
    }
    Ok("n = 2..9 and descents n <= 7".into())
}

fn machinery() -> Outcome {
    for s in 1..=8usize {
        let sign = if s % 2 == 1 { 1 } else { -1 };
        let one_minus_t = p(&[1, -1]);
        let got = tracked_det(&build_a(s));
        let want = one_minus_t.pow(s as u32 - 1);
        check(got == want, || format!("det A_{s} = {got}"))?;
        let got = tracked_det(&build_b(s));
        let want = one_minus_t.pow(s as u32 - 1).shift(1).scale(&sign.into());
        check(got == want, || format!("det B_{s} = {got}"))?;
        let got = tracked_det(&build_a_derangement(s));
        let want = IntPoly::q_bracket(s - 1).shift(1).scale(&sign.into());
        check(got == want, || format!("det A'_{s} = {got}"))?;
    }

    let mut relabeled = 0;
    for s in grid() {
        let Ok(m) = build_m(s.n(), s.k(), s.r()) else {
            continue;
        };
        let rel = relabel(&m, s.n(), s.k(), s.r()).map_err(|e| e.to_string())?;
        let form = relabeled_m_form(s.n(), s.k(), s.r()).map_err(|e| e.to_string())?;
        check(rel == form, || {
            format!("{s:?}: relabeled matrix has the wrong block form")
        })?;
        check(tracked_det(&rel) == tracked_det(&m), || {
            format!("{s:?}: det changed")
        })?;
        check(tracked_permanent(&rel) == tracked_permanent(&m), || {
            format!("{s:?}: permanent changed")
        })?;
        relabeled += 1;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let rand_poly = |rng: &mut StdRng| {
        let len = rng.gen_range(0..=3);
        IntPoly::from_i64s(&(0..len).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())
    };
    for case in 0..100 {
        let (pa, qb) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let a = PolyMatrix::from_fn(pa, |_, _| rand_poly(&mut rng));
        let b = PolyMatrix::from_fn(qb, |_, _| rand_poly(&mut rng));
        let lhs = tracked_det(&kronecker(&a, &b));
        let rhs = tracked_det(&a).pow(qb as u32) * tracked_det(&b).pow(pa as u32);
        check(lhs == rhs, || {
            format!("Kronecker case {case}: {lhs} vs {rhs}")
        })?;
    }
    for case in 0..100 {
        let size = rng.gen_range(1..=6usize);
        let c: Vec<IntPoly> = (0..size).map(|_| rand_poly(&mut rng)).collect();
        let a: Vec<IntPoly> = (1..size).map(|_| rand_poly(&mut rng)).collect();
        let b: Vec<IntPoly> = (1..size).map(|_| rand_poly(&mut rng)).collect();
        let fast = tridiag_det(&c, &a, &b).map_err(|e| e.to_string())?;
        let dense = tracked_det(&tridiagonal(&c, &a, &b).map_err(|e| e.to_string())?);
        check(fast == dense, || {
            format!("tridiagonal case {case}: {fast} vs {dense}")
        })?;
    }
    Ok(format!(
        "block dets to size 8, {relabeled} relabelings, 100 Kronecker, 100 tridiagonal"
    ))
}

fn gamma_theorem() -> Outcome {
    let mut timings = Vec::new();
    let mut off_center = Vec::new();
    for (n, k) in [(5, 1), (7, 1), (9, 1), (10, 2), (15, 3)] {
        let started = Instant::now();
        let opts = CertifyOptions {
            force: false,
            brute_budget: Some(DEFAULT_BRUTE_BUDGET),
        };
        let report = certify_with(n, k, &opts).map_err(|e| e.to_string())?;
        for row in &report.rows {
            let at = format!("({n},{k}) r={} {}", row.r, row.parity);
            check(row.gamma_positive, || {
                format!("{at}: gamma vector {:?}", row.gamma)
            })?;
            check(row.brute_agrees == Some(true), || {
                format!("{at}: brute force disagrees")
            })?;
            let observed = row
                .observed_center
                .ok_or_else(|| format!("{at}: zero polynomial"))?;
            check(observed == shifted_center(n, k, row.r), || {
                format!("{at}: center {observed}")
            })?;
            if !row.center_matches {
                off_center.push(format!("{at} at {observed} not {}", row.expected_center));
            }
        }
        timings.push(format!("({n},{k}) {:.1}s", started.elapsed().as_secs_f64()));
    }
    let summary = format!(
        "all gamma vectors nonnegative, brute force agrees; {}",
        timings.join(", ")
    );
    if off_center.is_empty() {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; {} halves with r >= 2 miss the stated center (n+1-r)/2 and sit at \
             (n+k+2-2r)/2 instead: {}",
            off_center.len(),
            off_center.join("; ")
        ))
    }
}

fn parity_split() -> Outcome {
    let mut cases = 0;
    for s in grid() {
        let even = mpe_even_odd(&s, Parity::Even).map_err(|e| format!("{s:?}: {e}"))?;
        let odd = mpe_even_odd(&s, Parity::Odd).map_err(|e| format!("{s:?}: {e}"))?;
        check(&even + &odd == mpe(&s), || {
            format!("{s:?}: even + odd != mpe")
        })?;
        check(&even - &odd == sgn_mpe(&s), || {
            format!("{s:?}: even - odd != sgn_mpe")
        })?;
        cases += 1;
    }
    Ok(format!("{cases} grid points"))
}

fn cross_engine() -> Outcome {
    let seen = SEEN.with(|s| std::mem::take(&mut *s.borrow_mut()));
    check(!seen.is_empty(), || "no matrices recorded".into())?;
    for (i, m) in seen.iter().enumerate() {
        let (a, b) = (det(m), det_cofactor(m));
        check(a == b, || {
            format!("matrix #{i} (size {}): {a} vs {b}", m.size())
        })?;
    }
    Ok(format!("{} matrices", seen.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("signed enumerator = closed form = det", signed_theorem),
        (
            "unsigned enumerator = closed form = permanent",
            unsigned_theorem,
        ),
        (
            "signed derangement enumerator = closed form = det(D)",
            derangement_theorem,
        ),
        ("k = 1 specializations and signed descents", specializations),
        (
            "block determinants, relabeling, Kronecker, tridiagonal",
            machinery,
        ),
        ("gamma-positivity of the even and odd halves", gamma_theorem),
        ("even/odd split sums to the enumerators", parity_split),
        ("Bareiss = cofactor on every matrix up to 7x7", cross_engine),
    ];
    panic::set_hook(Box::new(|_| {}));
    let (mut failed, mut documented) = (0, 0);
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) if DOCUMENTED_FAILURES.contains(&(i + 1)) => {
                documented += 1;
                println!(
                    "FAIL criterion {} (documented): {name}: {why} ({secs:.2}s)",
                    i + 1
                );
            }
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {documented} documented failure(s)",
        criteria.len() - failed - documented
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
