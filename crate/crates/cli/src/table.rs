use std::io::Write;

use modalt_core::closed::{mpe, sgn_mpde, sgn_mpe};
use modalt_core::families::count;
use modalt_core::gamma::gamma_decompose;
use modalt_core::{FamilySpec, IntPoly};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Format, TableArgs};
use crate::{grid_points, output, thread_pool, CliResult, Status};

const COLUMNS: [&str; 8] = [
    "n", "k", "r", "count", "mpe", "sgn_mpe", "sgn_mpde", "gamma",
];

struct Row {
    spec: FamilySpec,
    count: String,
    mpe: IntPoly,
    sgn_mpe: IntPoly,
    sgn_mpde: IntPoly,
    /// Gamma vector of `mpe`; `None` when it is zero.
    gamma: Option<Vec<String>>,
}

impl Row {
    fn new(spec: FamilySpec) -> Self {
        let mpe = mpe(&spec);
        let gamma = gamma_decompose(&mpe)
            .ok()
            .filter(|g| !g.is_vacuous())
            .map(|g| g.gammas.iter().map(|x| x.to_string()).collect());
        Row {
            count: count(&spec).to_string(),
            sgn_mpe: sgn_mpe(&spec),
            sgn_mpde: sgn_mpde(&spec.with_derangement(true)),
            mpe,
            gamma,
            spec,
        }
    }

    fn gamma_cell(&self) -> String {
        self.gamma
            .as_ref()
            .map_or_else(|| "n/a".into(), |g| g.join(","))
    }

    fn cells(&self) -> [String; 8] {
        [
            self.spec.n().to_string(),
            self.spec.k().to_string(),
            self.spec.r().to_string(),
            self.count.clone(),
            self.mpe.coeff_list(),
            self.sgn_mpe.coeff_list(),
            self.sgn_mpde.coeff_list(),
            self.gamma_cell(),
        ]
    }

    fn json(&self) -> Value {
        let gamma = match &self.gamma {
            Some(g) => Value::Array(
                g.iter()
                    .map(|x| Value::Number(x.parse().expect("integer is a valid JSON number")))
                    .collect(),
            ),
            None => Value::String("n/a".into()),
        };
        json!({
            "n": self.spec.n(),
            "k": self.spec.k(),
            "r": self.spec.r(),
            "count": Value::Number(self.count.parse().expect("integer is a valid JSON number")),
            "mpe": self.mpe.to_json(),
            "sgn_mpe": self.sgn_mpe.to_json(),
            "sgn_mpde": self.sgn_mpde.to_json(),
            "gamma": gamma,
        })
    }
}

fn meta_line(args: &TableArgs) -> String {
    let r = args
        .grid
        .r
        .map_or_else(|| "all".to_string(), |r| r.to_string());
    format!(
        "modalt {} table n={} k={} r={r}",
        env!("CARGO_PKG_VERSION"),
        args.grid.n,
        args.grid.k
    )
}

pub fn run(args: &TableArgs) -> CliResult<Status> {
    let points = grid_points(&args.grid)?;
    let mut w = output::open(&args.out)?;
    let pool = thread_pool(args.grid.jobs)?;
    let rows: Vec<Row> = pool.install(|| points.into_par_iter().map(Row::new).collect());
    match args.format {
        Format::Csv => {
            if args.meta {
                writeln!(w, "# {}", meta_line(args))?;
            }
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(COLUMNS)?;
            for row in &rows {
                csv.write_record(row.cells())?;
            }
            csv.flush()?;
        }
        Format::Json => {
            let body: Vec<Value> = rows.iter().map(Row::json).collect();
            if args.meta {
                output::write_json(&mut w, &json!({ "meta": meta_line(args), "rows": body }))?;
            } else {
                output::write_json_array(&mut w, &body)?;
            }
        }
        Format::Text => {
            if args.meta {
                writeln!(w, "# {}", meta_line(args))?;
            }
            let cells: Vec<[String; 8]> = rows.iter().map(Row::cells).collect();
            let widths: Vec<usize> = (0..COLUMNS.len())
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([COLUMNS[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |w: &mut dyn Write, fields: &[&str]| -> std::io::Result<()> {
                let padded: Vec<String> = fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, &width)| format!("{f:<width$}"))
                    .collect();
                writeln!(w, "{}", padded.join("  ").trim_end())
            };
            line(&mut w, &COLUMNS)?;
            for row in &cells {
                let fields: Vec<&str> = row.iter().map(String::as_str).collect();
                line(&mut w, &fields)?;
            }
        }
    }
    w.flush()?;
    Ok(Status::Success)
}
