use std::collections::BTreeSet;
use std::io::Write;

use modalt_core::closed::{brute_enumerators, matrix_exc_poly};
use modalt_core::gamma::{expected_center, gamma_hypothesis, mpe_even_odd, Parity};
use modalt_core::{Error, FamilySpec, IntPoly, Limits};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{Format, Oracle, VerifyArgs, VerifyWhich, Which};
use crate::gamma::Analysis;
use crate::oracles::{compare, Answer, Target, Verdict};
use crate::{grid_points, output, thread_pool, CliError, CliResult, Status};

struct Row {
    spec: FamilySpec,
    which: &'static str,
    verdict: Verdict,
    /// Labelled polynomials, `None` where the oracle gave no value.
    values: Vec<(&'static str, Option<IntPoly>)>,
    detail: String,
}

fn which_name(w: VerifyWhich) -> &'static str {
    match w {
        VerifyWhich::Sgnmpe => "sgnmpe",
        VerifyWhich::Mpe => "mpe",
        VerifyWhich::Sgnmpde => "sgnmpde",
        VerifyWhich::Mpde => "mpde",
        VerifyWhich::Gamma => "gamma",
    }
}

fn family_row(
    spec: FamilySpec,
    which: VerifyWhich,
    oracles: &[Oracle],
    budget: u128,
) -> CliResult<Row> {
    let w = match which {
        VerifyWhich::Sgnmpe => Which::Sgnmpe,
        VerifyWhich::Mpe => Which::Mpe,
        VerifyWhich::Sgnmpde => Which::Sgnmpde,
        VerifyWhich::Mpde => Which::Mpde,
        VerifyWhich::Gamma => unreachable!("handled by gamma_row"),
    };
    let target = Target::new(w, spec.n(), Some(spec.k()), spec.r())?;
    let answers = oracles
        .iter()
        .map(|&o| Ok((o, target.compute(o, budget)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let verdict = compare(answers.iter().map(|(_, a)| a));
    Ok(Row {
        spec,
        which: w.name(),
        verdict,
        values: answers
            .iter()
            .map(|(o, a)| (o.name(), a.value().cloned()))
            .collect(),
        detail: describe_answers(&answers),
    })
}

/// `brute=matrix=closed`, or the reasons oracles were left out.
fn describe_answers(answers: &[(Oracle, Answer)]) -> String {
    let answered: Vec<&str> = answers
        .iter()
        .filter(|(_, a)| a.value().is_some())
        .map(|(o, _)| o.name())
        .collect();
    let mut parts = Vec::new();
    if compare(answers.iter().map(|(_, a)| a)) == Verdict::Fail {
        parts.push(format!("{} disagree", answered.join(",")));
    } else if !answered.is_empty() {
        parts.push(answered.join("="));
    }
    for (o, a) in answers {
        match a {
            Answer::NotApplicable => parts.push(format!("{} n/a", o.name())),
            Answer::OverBudget(why) => parts.push(format!("{} skipped: {why}", o.name())),
            Answer::Value(_) => {}
        }
    }
    parts.join("; ")
}

fn over_budget(e: Error) -> CliResult<Option<String>> {
    match e {
        Error::SizeLimit { .. } => Ok(Some(e.to_string())),
        e => Err(e.into()),
    }
}

/// Both halves by every selected oracle, then palindromicity and
/// gamma-positivity of the agreed halves. Under the theorem's hypothesis the
/// halves must also be gamma-positive about the stated center.
fn gamma_row(spec: FamilySpec, oracles: &[Oracle], budget: u128) -> CliResult<Row> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &o in oracles {
        let pair: Result<(IntPoly, IntPoly), Error> = match o {
            Oracle::Closed => mpe_even_odd(&spec, Parity::Even)
                .and_then(|e| Ok((e, mpe_even_odd(&spec, Parity::Odd)?))),
            Oracle::Brute => brute_enumerators(&spec, budget).map(|b| (b.even, b.odd)),
            Oracle::Matrix => {
                let limits = Limits::default();
                matrix_exc_poly(&spec, false, &limits).and_then(|u| {
                    let s = matrix_exc_poly(&spec, true, &limits)?;
                    let two = 2.into();
                    Ok((
                        (&u + &s).exact_div_by_int(&two)?,
                        (&u - &s).exact_div_by_int(&two)?,
                    ))
                })
            }
        };
        let (e, d) = match pair {
            Ok((e, d)) => (Answer::Value(e), Answer::Value(d)),
            Err(err) => {
                let why = over_budget(err)?.unwrap_or_default();
                (Answer::OverBudget(why.clone()), Answer::OverBudget(why))
            }
        };
        even.push((o, e));
        odd.push((o, d));
    }
    let mut verdict = worst(
        compare(even.iter().map(|(_, a)| a)),
        compare(odd.iter().map(|(_, a)| a)),
    );
    let mut detail = describe_answers(&even);

    let pick = |v: &[(Oracle, Answer)]| v.iter().find_map(|(_, a)| a.value().cloned());
    let halves = [("even", pick(&even)), ("odd", pick(&odd))];
    let hypothesis = gamma_hypothesis(spec.n(), spec.k()).is_ok();
    if verdict != Verdict::Fail {
        let stated = expected_center(spec.n(), spec.k(), spec.r()).to_string();
        for (label, half) in &halves {
            let Some(half) = half else { continue };
            let a = Analysis::of(half);
            detail.push_str(&format!("; {label}: {}", a.describe()));
            if hypothesis && !(a.gamma_positive && a.center.as_deref() == Some(stated.as_str())) {
                verdict = Verdict::Fail;
                detail.push_str(&format!(" (stated: gamma-positive about {stated})"));
            }
        }
        if hypothesis {
            detail.push_str("; theorem hypothesis holds");
        }
    }
    Ok(Row {
        spec,
        which: "gamma",
        verdict,
        values: halves.into_iter().collect(),
        detail,
    })
}

fn worst(a: Verdict, b: Verdict) -> Verdict {
    if a == Verdict::Fail || b == Verdict::Fail {
        Verdict::Fail
    } else if a == Verdict::Skip || b == Verdict::Skip {
        Verdict::Skip
    } else {
        Verdict::Pass
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<Status> {
    let oracles: Vec<Oracle> = args
        .oracles
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if oracles.len() < 2 {
        return Err(CliError::Usage(
            "verify needs at least two distinct oracles".into(),
        ));
    }
    let points = grid_points(&args.grid)?;
    let mut w = output::open(&args.out)?;
    let pool = thread_pool(args.grid.jobs)?;
    let rows: Vec<Row> = pool.install(|| {
        points
            .par_iter()
            .map(|&spec| match args.which {
                VerifyWhich::Gamma => gamma_row(spec, &oracles, args.budget),
                w => family_row(spec, w, &oracles, args.budget),
            })
            .collect::<CliResult<Vec<_>>>()
    })?;

    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, skip) = (
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Skip),
    );
    match args.format {
        Format::Text => {
            for row in &rows {
                let shown = row
                    .values
                    .iter()
                    .find_map(|(_, p)| p.as_ref())
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "-".into());
                let shown = if row.which == "gamma" {
                    String::new()
                } else {
                    format!("  {shown}")
                };
                writeln!(
                    w,
                    "{} n={} k={} r={} {}{shown}  [{}]",
                    row.verdict.as_str(),
                    row.spec.n(),
                    row.spec.k(),
                    row.spec.r(),
                    row.which,
                    row.detail
                )?;
            }
            writeln!(w, "summary: {pass} PASS, {fail} FAIL, {skip} SKIP")?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(row_json).collect();
            let summary = json!({ "pass": pass, "fail": fail, "skip": skip });
            output::write_json(
                &mut w,
                &json!({ "which": which_name(args.which), "rows": rows, "summary": summary }),
            )?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["n", "k", "r", "which", "status", "values", "detail"])?;
            for row in &rows {
                let values: Vec<String> = row
                    .values
                    .iter()
                    .map(|(l, p)| match p {
                        Some(p) => format!("{l}={}", p.coeff_list()),
                        None => format!("{l}=n/a"),
                    })
                    .collect();
                csv.write_record([
                    row.spec.n().to_string(),
                    row.spec.k().to_string(),
                    row.spec.r().to_string(),
                    row.which.to_string(),
                    row.verdict.as_str().to_string(),
                    values.join(";"),
                    row.detail.clone(),
                ])?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(rows
        .iter()
        .map(|r| r.verdict.status())
        .fold(Status::Success, Status::worst))
}

fn row_json(row: &Row) -> Value {
    let mut values = Map::new();
    for (label, p) in &row.values {
        values.insert(
            (*label).into(),
            p.as_ref().map_or(Value::Null, IntPoly::to_json),
        );
    }
    json!({
        "n": row.spec.n(),
        "k": row.spec.k(),
        "r": row.spec.r(),
        "which": row.which,
        "status": row.verdict,
        "values": values,
        "detail": row.detail,
    })
}
