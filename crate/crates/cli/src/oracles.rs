use modalt_core::closed::{
    brute_des_poly, brute_exc_poly_with, closed_exc_poly, eulerian, matrix_exc_poly, sgn_des_closed,
};
use modalt_core::polymat::{build_a, permanent_with};
use modalt_core::{Error, FamilySpec, IntPoly, Limits};
use serde::Serialize;

use crate::args::{Oracle, Which};
use crate::CliResult;

/// One oracle's answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Value(IntPoly),
    /// The oracle does not apply to this polynomial.
    NotApplicable,
    /// Skipped for exceeding the enumeration budget or a matrix size bound.
    OverBudget(String),
}

impl Answer {
    pub fn value(&self) -> Option<&IntPoly> {
        match self {
            Answer::Value(p) => Some(p),
            _ => None,
        }
    }
}

fn from_result(r: Result<IntPoly, Error>) -> CliResult<Answer> {
    match r {
        Ok(p) => Ok(Answer::Value(p)),
        Err(e @ Error::SizeLimit { .. }) => Ok(Answer::OverBudget(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

/// What a polynomial is computed over.
#[derive(Debug, Clone, Copy)]
pub enum Target {
    Family {
        spec: FamilySpec,
        signed: bool,
    },
    /// Descents over `S_n`.
    Descents {
        n: usize,
        signed: bool,
    },
}

impl Target {
    pub fn new(which: Which, n: usize, k: Option<usize>, r: usize) -> CliResult<Self> {
        let family = |derangement: bool, signed: bool| -> CliResult<Target> {
            let k = crate::require_k(k, which.name())?;
            let spec = FamilySpec::new(n, k, r)?.with_derangement(derangement);
            Ok(Target::Family { spec, signed })
        };
        match which {
            Which::Sgnmpe => family(false, true),
            Which::Mpe => family(false, false),
            Which::Sgnmpde => family(true, true),
            Which::Mpde => family(true, false),
            Which::Eulerian => Ok(Target::Descents { n, signed: false }),
            Which::Sgndes => Ok(Target::Descents { n, signed: true }),
        }
    }

    pub fn compute(&self, oracle: Oracle, budget: u128) -> CliResult<Answer> {
        match (*self, oracle) {
            (Target::Family { spec, signed }, Oracle::Brute) => {
                from_result(brute_exc_poly_with(&spec, signed, budget))
            }
            (Target::Family { spec, signed }, Oracle::Matrix) => {
                from_result(matrix_exc_poly(&spec, signed, &Limits::default()))
            }
            (Target::Family { spec, signed }, Oracle::Closed) => {
                Ok(closed_exc_poly(&spec, signed).map_or(Answer::NotApplicable, Answer::Value))
            }
            (Target::Descents { n, signed }, Oracle::Brute) => {
                let factorial = (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i));
                match factorial {
                    Some(size) if size <= budget => Ok(Answer::Value(brute_des_poly(n, signed))),
                    _ => Ok(Answer::OverBudget(format!(
                        "S_{n} exceeds the enumeration budget {budget}"
                    ))),
                }
            }
            (Target::Descents { n, signed: false }, Oracle::Matrix) => {
                from_result(permanent_with(&build_a(n), &Limits::default()))
            }
            (Target::Descents { signed: true, .. }, Oracle::Matrix) => Ok(Answer::NotApplicable),
            (Target::Descents { n, signed }, Oracle::Closed) => Ok(Answer::Value(if signed {
                sgn_des_closed(n)
            } else {
                eulerian(n)
            })),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }

    pub fn status(self) -> crate::Status {
        match self {
            Verdict::Pass => crate::Status::Success,
            Verdict::Fail => crate::Status::Failed,
            Verdict::Skip => crate::Status::Skipped,
        }
    }
}

/// PASS when at least two oracles answered and all answers agree, FAIL when
/// two answers differ, SKIP otherwise.
pub fn compare<'a>(answers: impl IntoIterator<Item = &'a Answer>) -> Verdict {
    let values: Vec<&IntPoly> = answers.into_iter().filter_map(Answer::value).collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        Verdict::Fail
    } else if values.len() >= 2 {
        Verdict::Pass
    } else {
        Verdict::Skip
    }
}
