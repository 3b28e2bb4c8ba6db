use std::io::Write;

use modalt_core::closed::mpe;
use modalt_core::gamma::{
    certify_with, is_gamma_positive, mpe_even_odd, palindromic_profile, CertifyOptions,
    GammaReport, Palindromicity, Parity,
};
use modalt_core::{FamilySpec, IntPoly};
use serde::Serialize;

use crate::args::{Format, GammaArgs, ParityArg};
use crate::{output, require_k, CliError, CliResult, Status};

#[derive(Debug, Serialize)]
pub(crate) struct Analysis {
    pub palindromic: bool,
    /// `None` for the zero polynomial.
    pub center: Option<String>,
    pub gamma: Vec<serde_json::Value>,
    pub gamma_positive: bool,
}

impl Analysis {
    pub fn of(f: &IntPoly) -> Self {
        let verdict = is_gamma_positive(f);
        let gammas = verdict.gammas();
        Analysis {
            palindromic: palindromic_profile(f) != Palindromicity::NotPalindromic,
            center: gammas.and_then(|g| g.center()).map(|c| c.to_string()),
            gamma: gammas
                .map(|g| g.gammas.iter().map(|x| number(&x.to_string())).collect())
                .unwrap_or_default(),
            gamma_positive: verdict.is_positive(),
        }
    }

    /// `gamma (1,7,16), center 2, gamma-positive`.
    pub fn describe(&self) -> String {
        if !self.palindromic {
            return "not palindromic".into();
        }
        let Some(center) = &self.center else {
            return "zero polynomial".into();
        };
        let gammas: Vec<String> = self.gamma.iter().map(|g| g.to_string()).collect();
        format!(
            "gamma ({}), center {center}, {}",
            gammas.join(","),
            if self.gamma_positive {
                "gamma-positive"
            } else {
                "not gamma-positive"
            }
        )
    }
}

fn number(s: &str) -> serde_json::Value {
    serde_json::Value::Number(s.parse().expect("integer is a valid JSON number"))
}

pub(crate) fn parity(p: ParityArg) -> Parity {
    match p {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    }
}

pub fn run(args: &GammaArgs) -> CliResult<Status> {
    if args.certify {
        return certify(args);
    }
    let poly = match (&args.coeffs, args.n) {
        (Some(text), _) => IntPoly::parse_coeff_list(text)?,
        (None, Some(n)) => {
            let spec = FamilySpec::new(n, require_k(args.k, "a family")?, args.r)?;
            match args.parity {
                Some(p) => mpe_even_odd(&spec, parity(p))?,
                None => mpe(&spec),
            }
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give --coeffs, or --n and --k (optionally with --certify)".into(),
            ))
        }
    };
    let analysis = Analysis::of(&poly);
    let mut w = output::open(&args.out)?;
    match args.format {
        Format::Json => output::write_json(&mut w, &analysis)?,
        Format::Text => writeln!(w, "{poly}: {}", analysis.describe())?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["palindromic", "center", "gamma", "gamma_positive"])?;
            let gammas: Vec<String> = analysis.gamma.iter().map(|g| g.to_string()).collect();
            csv.write_record([
                analysis.palindromic.to_string(),
                analysis.center.clone().unwrap_or_default(),
                gammas.join(","),
                analysis.gamma_positive.to_string(),
            ])?;
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(Status::Success)
}

fn certify(args: &GammaArgs) -> CliResult<Status> {
    let n = args
        .n
        .ok_or_else(|| CliError::Usage("--certify needs --n".into()))?;
    let k = require_k(args.k, "--certify")?;
    let opts = CertifyOptions {
        force: args.force,
        brute_budget: (args.budget > 0).then_some(args.budget),
    };
    let report = certify_with(n, k, &opts)?;
    let mut w = output::open(&args.out)?;
    match args.format {
        Format::Json => output::write_json(&mut w, &report)?,
        Format::Text => write_report_text(&mut w, &report)?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record([
                "n",
                "k",
                "r",
                "parity",
                "expected_center",
                "observed_center",
                "gamma",
                "gamma_positive",
                "brute_agrees",
                "pass",
            ])?;
            for row in &report.rows {
                csv.write_record([
                    n.to_string(),
                    k.to_string(),
                    row.r.to_string(),
                    row.parity.to_string(),
                    row.expected_center.to_string(),
                    row.observed_center
                        .map(|c| c.to_string())
                        .unwrap_or_default(),
                    gamma_list(row.gamma.as_ref().map(|g| &g.gammas[..])),
                    row.gamma_positive.to_string(),
                    row.brute_agrees.map(|b| b.to_string()).unwrap_or_default(),
                    row.pass.to_string(),
                ])?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(if report.passed() {
        Status::Success
    } else {
        Status::Failed
    })
}

fn gamma_list<T: ToString>(g: Option<&[T]>) -> String {
    g.map(|g| {
        g.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    })
    .unwrap_or_default()
}

fn write_report_text(w: &mut dyn Write, report: &GammaReport) -> CliResult<()> {
    writeln!(
        w,
        "n={} k={}{}",
        report.n,
        report.k,
        if report.hypothesis_holds {
            ""
        } else {
            " (outside the hypothesis, forced)"
        }
    )?;
    for row in &report.rows {
        let gamma = match &row.gamma {
            Some(g) => format!("gamma ({})", gamma_list(Some(&g.gammas[..]))),
            None => "not palindromic".into(),
        };
        let brute = match row.brute_agrees {
            Some(true) => "brute agrees",
            Some(false) => "brute DISAGREES",
            None => "brute skipped",
        };
        writeln!(
            w,
            "{} r={} {:<4} center {} (stated {})  {gamma}  {brute}",
            if row.pass { "PASS" } else { "FAIL" },
            row.r,
            row.parity.to_string(),
            row.observed_center
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into()),
            row.expected_center,
        )?;
    }
    for note in &report.findings {
        writeln!(w, "finding: {note}")?;
    }
    Ok(())
}
