use std::io::Write;

use modalt_core::polymat::{
    build_a, build_a_derangement, build_b, build_d, build_m, det_checked, permanent, relabel,
};
use modalt_core::{Limits, PolyMatrix};
use serde_json::json;

use crate::args::{Format, MatrixArgs, MatrixKind, MatrixOp};
use crate::{output, require_k, CliError, CliResult, Status};

fn build(args: &MatrixArgs) -> CliResult<PolyMatrix> {
    let m = match args.kind {
        MatrixKind::M => build_m(args.n, require_k(args.k, "kind m")?, args.r)?,
        MatrixKind::D => build_d(args.n, require_k(args.k, "kind d")?),
        MatrixKind::A => build_a(args.n),
        MatrixKind::B => build_b(args.n),
        MatrixKind::ADerangement => build_a_derangement(args.n),
    };
    if !args.relabel {
        return Ok(m);
    }
    match args.kind {
        MatrixKind::M | MatrixKind::D => {
            let k = require_k(args.k, "--relabel")?;
            let r = if args.kind == MatrixKind::D {
                1
            } else {
                args.r
            };
            Ok(relabel(&m, args.n, k, r)?)
        }
        _ => Err(CliError::Usage("--relabel applies to kinds m and d".into())),
    }
}

pub fn run(args: &MatrixArgs) -> CliResult<Status> {
    if args.kind == MatrixKind::D && args.r != 1 {
        return Err(CliError::Usage("kind d is defined for r = 1 only".into()));
    }
    let m = build(args)?;
    let format = args.format.unwrap_or(match args.op {
        MatrixOp::Show => Format::Text,
        _ => Format::Json,
    });
    let mut w = output::open(&args.out)?;
    match args.op {
        MatrixOp::Show => match format {
            Format::Text => write!(w, "{}", m.render())?,
            Format::Json => {
                let rows: Vec<Vec<_>> = m
                    .rows()
                    .map(|row| row.iter().map(|p| p.to_json()).collect())
                    .collect();
                output::write_json(&mut w, &json!({ "size": m.size(), "entries": rows }))?;
            }
            Format::Csv => {
                let mut csv = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(&mut w);
                for row in m.rows() {
                    csv.write_record(row.iter().map(|p| p.to_string()))?;
                }
                csv.flush()?;
            }
        },
        MatrixOp::Det | MatrixOp::Permanent => {
            let value = if args.op == MatrixOp::Det {
                det_checked(&m, &Limits::default())?
            } else {
                permanent(&m)?
            };
            match format {
                Format::Text => writeln!(w, "{value}")?,
                Format::Json => output::write_json(&mut w, &value)?,
                Format::Csv => writeln!(w, "coeffs\n\"{}\"", value.coeff_list())?,
            }
        }
    }
    w.flush()?;
    Ok(Status::Success)
}
