use std::io::Write;

use modalt_core::closed::check_budget;
use modalt_core::families::enumerate;
use modalt_core::FamilySpec;

use crate::args::{EnumerateArgs, FamilyArgs, Format};
use crate::{output, CliResult, Status};

pub(crate) fn family_spec(f: &FamilyArgs) -> CliResult<FamilySpec> {
    Ok(FamilySpec::new(f.n, f.k, f.r)?.with_derangement(f.derangement))
}

pub fn run(args: &EnumerateArgs) -> CliResult<Status> {
    let spec = family_spec(&args.family)?;
    check_budget(&spec, args.budget)?;
    let mut w = output::open(&args.out)?;
    match args.format {
        Format::Text => {
            for p in enumerate(&spec) {
                writeln!(w, "{p}")?;
            }
        }
        Format::Json => {
            let mut first = true;
            write!(w, "[")?;
            for p in enumerate(&spec) {
                write!(w, "{}", if first { "\n  " } else { ",\n  " })?;
                serde_json::to_writer(&mut w, p.word())?;
                first = false;
            }
            writeln!(w, "{}]", if first { "" } else { "\n" })?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["perm", "exc", "inv", "sgn", "des"])?;
            for p in enumerate(&spec) {
                csv.write_record([
                    p.to_string(),
                    p.exc().to_string(),
                    p.inv().to_string(),
                    p.sgn().to_string(),
                    p.des().to_string(),
                ])?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(Status::Success)
}
