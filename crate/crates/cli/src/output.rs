use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use crate::args::OutputArgs;
use crate::{CliError, CliResult};

/// Opens `--output` (or stdout). Done before any computation so that an
/// unwritable path fails fast.
pub fn open(out: &OutputArgs) -> CliResult<Box<dyn Write>> {
    match &out.output {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

/// One compact JSON document per line.
pub fn write_json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

/// A JSON array with one compact element per line.
pub fn write_json_array<T: Serialize>(w: &mut dyn Write, items: &[T]) -> CliResult<()> {
    write!(w, "[")?;
    for (i, item) in items.iter().enumerate() {
        write!(w, "{}", if i == 0 { "\n" } else { ",\n" })?;
        serde_json::to_writer(&mut *w, item)?;
    }
    writeln!(w, "{}]", if items.is_empty() { "" } else { "\n" })?;
    Ok(())
}
