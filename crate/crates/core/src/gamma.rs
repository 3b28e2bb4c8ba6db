//! Palindromicity, gamma-vector decomposition and gamma-positivity, and the
//! even/odd split of the excedance enumerators.
//!
//! A polynomial with lowest exponent `r` and degree `n` is palindromic when
//! `a_{r+i} = a_{n-i}`; it then has a unique expansion
//! `Σ_i γ_i t^{r+i} (1+t)^{n-r-2i}` and is gamma-positive when every `γ_i >= 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::closed::{brute_enumerators, mpe, sgn_mpe};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::poly::IntPoly;

/// An exact half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Center {
    twice: u64,
}

impl Center {
    pub fn from_twice(twice: u64) -> Self {
        Center { twice }
    }

    pub fn twice(&self) -> u64 {
        self.twice
    }

    pub fn is_integral(&self) -> bool {
        self.twice.is_multiple_of(2)
    }

    pub fn scaled(&self, r: u64) -> Self {
        Center {
            twice: self.twice * r,
        }
    }
}

impl std::ops::Add for Center {
    type Output = Center;
    fn add(self, rhs: Center) -> Center {
        Center {
            twice: self.twice + rhs.twice,
        }
    }
}

/// `4` or `9/2`.
impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for Center {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Lowest exponent, degree and center of a palindromic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub r_min: usize,
    pub n_max: usize,
    pub center: Center,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Palindromicity {
    /// The zero polynomial.
    Vacuous,
    Palindromic(Profile),
    NotPalindromic,
}

impl Palindromicity {
    pub fn profile(&self) -> Option<Profile> {
        match self {
            Palindromicity::Palindromic(p) => Some(*p),
            _ => None,
        }
    }

    /// Palindromic or vacuous.
    pub fn holds(&self) -> bool {
        !matches!(self, Palindromicity::NotPalindromic)
    }
}

pub fn palindromic_profile(f: &IntPoly) -> Palindromicity {
    let (Some(r), Some(n)) = (f.low_degree(), f.degree()) else {
        return Palindromicity::Vacuous;
    };
    let c = f.coeffs();
    if (0..=(n - r) / 2).all(|i| c[r + i] == c[n - i]) {
        Palindromicity::Palindromic(Profile {
            r_min: r,
            n_max: n,
            center: Center::from_twice((r + n) as u64),
        })
    } else {
        Palindromicity::NotPalindromic
    }
}

fn serialize_numbers<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums: Vec<serde_json::Number> = v
        .iter()
        .map(|x| {
            x.to_string()
                .parse()
                .expect("integer is a valid JSON number")
        })
        .collect();
    nums.serialize(s)
}

/// Coefficients of a palindromic polynomial in the basis
/// `t^{r_min+i} (1+t)^{n_max-r_min-2i}`. Empty for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub r_min: usize,
    pub n_max: usize,
    #[serde(serialize_with = "serialize_numbers")]
    pub gammas: Vec<BigInt>,
}

impl GammaVector {
    pub fn is_vacuous(&self) -> bool {
        self.gammas.is_empty()
    }

    /// `(n_max + r_min)/2`, or `None` for the zero polynomial.
    pub fn center(&self) -> Option<Center> {
        (!self.is_vacuous()).then(|| Center::from_twice((self.r_min + self.n_max) as u64))
    }

    /// First index with `γ_i < 0`.
    pub fn first_negative(&self) -> Option<usize> {
        self.gammas.iter().position(Signed::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn reconstruct(&self) -> IntPoly {
        let one_plus_t = IntPoly::from_i64s(&[1, 1]);
        self.gammas
            .iter()
            .enumerate()
            .map(|(i, g)| {
                one_plus_t
                    .pow((self.n_max - self.r_min - 2 * i) as u32)
                    .shift(self.r_min + i)
                    .scale(g)
            })
            .sum()
    }
}

/// Peels basis terms from the lowest exponent upward: `γ_i` is the
/// coefficient of `t^{r+i}` once the earlier terms are subtracted.
pub fn gamma_decompose(f: &IntPoly) -> Result<GammaVector> {
    let profile = match palindromic_profile(f) {
        Palindromicity::Vacuous => {
            return Ok(GammaVector {
                r_min: 0,
                n_max: 0,
                gammas: Vec::new(),
            })
        }
        Palindromicity::NotPalindromic => return Err(Error::NotPalindromic),
        Palindromicity::Palindromic(p) => p,
    };
    let (r, n) = (profile.r_min, profile.n_max);
    let one_plus_t = IntPoly::from_i64s(&[1, 1]);
    let mut rest = f.clone();
    let mut gammas = Vec::with_capacity((n - r) / 2 + 1);
    for i in 0..=(n - r) / 2 {
        let g = rest.coeff(r + i);
        if !g.is_zero() {
            rest -= &one_plus_t
                .pow((n - r - 2 * i) as u32)
                .shift(r + i)
                .scale(&g);
        }
        gammas.push(g);
    }
    if !rest.is_zero() {
        return Err(Error::NotPalindromic);
    }
    Ok(GammaVector {
        r_min: r,
        n_max: n,
        gammas,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaVerdict {
    /// All `γ_i >= 0`; the zero polynomial qualifies vacuously.
    Positive(GammaVector),
    /// Palindromic, with a negative entry at `index`.
    Negative {
        gammas: GammaVector,
        index: usize,
    },
    NotPalindromic,
}

impl GammaVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, GammaVerdict::Positive(_))
    }

    pub fn gammas(&self) -> Option<&GammaVector> {
        match self {
            GammaVerdict::Positive(g) | GammaVerdict::Negative { gammas: g, .. } => Some(g),
            GammaVerdict::NotPalindromic => None,
        }
    }
}

pub fn is_gamma_positive(f: &IntPoly) -> GammaVerdict {
    match gamma_decompose(f) {
        Err(_) => GammaVerdict::NotPalindromic,
        Ok(g) => match g.first_negative() {
            None => GammaVerdict::Positive(g),
            Some(index) => GammaVerdict::Negative { gammas: g, index },
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `MPE^{k,±}_{n,r}(t) = (MPE ± SgnMPE)/2`, the excedance enumerator over the
/// even (odd) members of `MP^k_{n,r}`. The derangement flag of `spec` is ignored.
pub fn mpe_even_odd(spec: &FamilySpec, parity: Parity) -> Result<IntPoly> {
    let spec = spec.ambient();
    let (u, s) = (mpe(&spec), sgn_mpe(&spec));
    let sum = match parity {
        Parity::Even => u + s,
        Parity::Odd => u - s,
    };
    sum.exact_div_by_int(&BigInt::from(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertifyOptions {
    /// Run even when `(n, k)` falls outside the theorem's hypothesis.
    pub force: bool,
    /// Cross-check each half against brute-force enumeration when the family
    /// fits this budget.
    pub brute_budget: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaRow {
    pub r: usize,
    pub parity: Parity,
    pub expected_center: Center,
    pub observed_center: Option<Center>,
    pub center_matches: bool,
    pub gamma: Option<GammaVector>,
    pub gamma_positive: bool,
    /// `None` when no brute-force cross-check ran.
    pub brute_agrees: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub n: usize,
    pub k: usize,
    pub hypothesis_holds: bool,
    pub rows: Vec<GammaRow>,
    /// Observations that do not affect the verdict.
    pub findings: Vec<String>,
}

impl GammaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Checks `n ≡ k (mod 2k)` and `n >= 5k`.
pub fn gamma_hypothesis(n: usize, k: usize) -> Result<()> {
    let violated = |reason: String| Err(Error::HypothesisViolated { n, k, reason });
    if k == 0 {
        return violated("k must be positive".into());
    }
    if n % (2 * k) != k % (2 * k) {
        return violated(format!("n is not congruent to k modulo {}", 2 * k));
    }
    if n < 5 * k {
        return violated(format!("n < 5k = {}", 5 * k));
    }
    Ok(())
}

/// Stated center of `MPE^{k,±}_{n,r}`: `(n-k)/2` for `r = 1`, `(n+1-r)/2` otherwise.
pub fn expected_center(n: usize, k: usize, r: usize) -> Center {
    if r == 1 {
        Center::from_twice((n - k) as u64)
    } else {
        Center::from_twice((n + 1 - r) as u64)
    }
}

/// Center the halves actually have when `k | n`: `(n-k)/2` for `r = 1`, and
/// `(n-k)/2 + (k+1-r)` for `r >= 2`, since multiplying by `t^{k+1-r}` moves the
/// center by `k+1-r`. For `r >= 2` this exceeds [`expected_center`] by `(k+1-r)/2`.
pub fn shifted_center(n: usize, k: usize, r: usize) -> Center {
    if r == 1 {
        Center::from_twice((n - k) as u64)
    } else {
        Center::from_twice((n + k + 2 - 2 * r) as u64)
    }
}

/// Certifies that both halves `MPE^{k,±}_{n,r}` are gamma-positive with the
/// expected centers, for every `1 <= r <= k`.
pub fn certify_main_gamma_theorem(n: usize, k: usize) -> Result<GammaReport> {
    certify_with(n, k, &CertifyOptions::default())
}

pub fn certify_with(n: usize, k: usize, opts: &CertifyOptions) -> Result<GammaReport> {
    let hypothesis = gamma_hypothesis(n, k);
    let hypothesis_holds = hypothesis.is_ok();
    if !opts.force {
        hypothesis?;
    } else if n == 0 || k == 0 || n < k {
        return Err(Error::InvalidSpec(format!(
            "need n >= k >= 1 (n={n}, k={k})"
        )));
    }

    let mut rows = Vec::new();
    let mut findings = Vec::new();
    for r in 1..=k {
        let spec = FamilySpec::new(n, k, r)?;
        // an over-budget family just goes without the cross-check
        let brute = match opts.brute_budget.map(|b| brute_enumerators(&spec, b)) {
            Some(Ok(b)) => Some(b),
            None | Some(Err(Error::SizeLimit { .. })) => None,
            Some(Err(e)) => return Err(e),
        };
        for parity in Parity::BOTH {
            let poly = mpe_even_odd(&spec, parity)?;
            let expected = expected_center(n, k, r);
            let verdict = is_gamma_positive(&poly);
            let gamma = verdict.gammas().cloned();
            let observed_center = gamma.as_ref().and_then(GammaVector::center);
            let brute_agrees = brute.as_ref().map(|b| match parity {
                Parity::Even => b.even == poly,
                Parity::Odd => b.odd == poly,
            });
            let center_matches = observed_center == Some(expected);
            if !center_matches && parity == Parity::Even {
                if let Some(c) = observed_center {
                    let note = if c == shifted_center(n, k, r) {
                        format!("r={r}: center is {c} = (n+k+2-2r)/2, not the stated {expected}")
                    } else {
                        format!("r={r}: center is {c}, not the stated {expected}")
                    };
                    findings.push(note);
                }
            }
            let pass = verdict.is_positive() && center_matches && brute_agrees != Some(false);
            rows.push(GammaRow {
                r,
                parity,
                expected_center: expected,
                observed_center,
                center_matches,
                gamma,
                gamma_positive: verdict.is_positive(),
                brute_agrees,
                pass,
            });
        }
        if r >= 2 && hypothesis_holds {
            if let Some(note) = proof_sign_finding(n, k, r) {
                findings.push(note);
            }
        }
    }
    Ok(GammaReport {
        n,
        k,
        hypothesis_holds,
        rows,
        findings,
    })
}

/// Compares the parity of the sign exponent `(mr-1)(k-r+1)`, with `m = n/k`,
/// against `(m'^2 r-1)(k+1-r)` read with `n = 2m'k + k`. Reading `m'` as `n/k`
/// instead makes the two agree, since `m^2 ≡ m (mod 2)`.
fn proof_sign_finding(n: usize, k: usize, r: usize) -> Option<String> {
    let m = n / k;
    let m_half = (n - k) / (2 * k);
    let stated = ((m * r - 1) * (k - r + 1)) % 2;
    let variant = ((m_half * m_half * r - 1) * (k + 1 - r)) % 2;
    let word = |e: usize| if e == 0 { "even" } else { "odd" };
    (stated != variant).then(|| {
        format!(
            "r={r}: sign exponent (mr-1)(k-r+1) with m={m} is {}, \
             but (m'^2 r-1)(k+1-r) with m'={m_half} is {}",
            word(stated),
            word(variant),
        )
    })
}

/// Gamma-positivity is preserved by products, with centers adding.
///
/// Errors with `PreconditionUnmet` unless both inputs are gamma-positive.
pub fn check_product_lemma(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    let cf = require_positive(f, "f")?;
    let cg = require_positive(g, "g")?;
    let product = f * g;
    let verdict = is_gamma_positive(&product);
    Ok(match (cf, cg) {
        (Some(a), Some(b)) => {
            verdict.is_positive() && verdict.gammas().and_then(GammaVector::center) == Some(a + b)
        }
        // a zero factor makes the product vacuously gamma-positive
        _ => product.is_zero(),
    })
}

/// If `f + g` and `f - g` are gamma-positive with a common center `a`, then
/// `f^r + g^r` and `f^r - g^r` are gamma-positive with center `r·a`.
pub fn check_power_lemma(f: &IntPoly, g: &IntPoly, r: u32) -> Result<bool> {
    if r == 0 {
        return Err(Error::PreconditionUnmet("r must be positive".into()));
    }
    let c_sum = require_positive(&(f + g), "f + g")?;
    let c_diff = require_positive(&(f - g), "f - g")?;
    let a = match (c_sum, c_diff) {
        (Some(x), Some(y)) if x != y => {
            return Err(Error::PreconditionUnmet(format!(
                "f + g has center {x} but f - g has center {y}"
            )))
        }
        (Some(x), _) | (_, Some(x)) => x,
        // f = g = 0
        (None, None) => return Ok(true),
    };
    let want = a.scaled(u64::from(r));
    let (fr, gr) = (f.pow(r), g.pow(r));
    let ok = |p: IntPoly| {
        let v = is_gamma_positive(&p);
        v.is_positive()
            && match v.gammas().and_then(GammaVector::center) {
                Some(c) => c == want,
                None => true,
            }
    };
    Ok(ok(&fr + &gr) && ok(&fr - &gr))
}

fn require_positive(p: &IntPoly, name: &str) -> Result<Option<Center>> {
    match is_gamma_positive(p) {
        GammaVerdict::Positive(g) => Ok(g.center()),
        GammaVerdict::Negative { index, .. } => Err(Error::PreconditionUnmet(format!(
            "{name} has a negative gamma coefficient at index {index}"
        ))),
        GammaVerdict::NotPalindromic => Err(Error::PreconditionUnmet(format!(
            "{name} is not palindromic"
        ))),
    }
}
