use std::io::Write;

use serde_json::{json, Map, Value};

use crate::args::{Format, Oracle, PolyArgs};
use crate::oracles::{compare, Answer, Target};
use crate::{output, CliError, CliResult, Status};

pub fn run(args: &PolyArgs) -> CliResult<Status> {
    let target = Target::new(args.which, args.n, args.k, args.r)?;
    let mut w = output::open(&args.out)?;
    if args.verify {
        verify(args, &target, &mut w)
    } else {
        single(args, &target, &mut w)
    }
}

/// Prints the first oracle that answers, closed form first.
fn single(args: &PolyArgs, target: &Target, w: &mut dyn Write) -> CliResult<Status> {
    let mut skipped = Vec::new();
    for oracle in [Oracle::Closed, Oracle::Matrix, Oracle::Brute] {
        match target.compute(oracle, args.budget)? {
            Answer::Value(p) => {
                match args.format {
                    Format::Json => output::write_json(w, &p)?,
                    Format::Text => writeln!(w, "{p}")?,
                    Format::Csv => {
                        let mut csv = csv::Writer::from_writer(&mut *w);
                        csv.write_record(["which", "coeffs"])?;
                        csv.write_record([args.which.name(), p.coeff_list().as_str()])?;
                        csv.flush()?;
                    }
                }
                w.flush()?;
                return Ok(Status::Success);
            }
            Answer::OverBudget(why) => skipped.push(why),
            Answer::NotApplicable => {}
        }
    }
    Err(CliError::Budget(skipped.join("; ")))
}

fn verify(args: &PolyArgs, target: &Target, w: &mut dyn Write) -> CliResult<Status> {
    let mut answers = Vec::new();
    for oracle in [Oracle::Closed, Oracle::Brute, Oracle::Matrix] {
        answers.push((oracle, target.compute(oracle, args.budget)?));
    }
    let verdict = compare(answers.iter().map(|(_, a)| a));
    let equal = verdict == crate::oracles::Verdict::Pass;
    match args.format {
        Format::Json => {
            let mut obj = Map::new();
            for (oracle, answer) in &answers {
                let v = answer.value().map_or(Value::Null, |p| p.to_json());
                obj.insert(oracle.name().into(), v);
            }
            obj.insert("equal".into(), json!(equal));
            let skipped: Vec<&str> = answers
                .iter()
                .filter(|(_, a)| matches!(a, Answer::OverBudget(_)))
                .map(|(o, _)| o.name())
                .collect();
            if !skipped.is_empty() {
                obj.insert("skipped".into(), json!(skipped));
            }
            output::write_json(w, &Value::Object(obj))?;
        }
        Format::Text => {
            for (oracle, answer) in &answers {
                let shown = match answer {
                    Answer::Value(p) => p.to_string(),
                    Answer::NotApplicable => "n/a".into(),
                    Answer::OverBudget(why) => format!("skipped ({why})"),
                };
                writeln!(w, "{:<7} {shown}", format!("{}:", oracle.name()))?;
            }
            writeln!(w, "equal:  {equal}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *w);
            csv.write_record(["oracle", "coeffs"])?;
            for (oracle, answer) in &answers {
                let cell = answer.value().map_or("n/a".to_string(), |p| p.coeff_list());
                csv.write_record([oracle.name(), cell.as_str()])?;
            }
            csv.write_record(["equal", if equal { "true" } else { "false" }])?;
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(verdict.status())
}
