//! CSV artifacts with a single header line and 17 significant digits.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use super::{CliError, CliResult};
use crate::spectrum::Spectrum;

pub const SPECTRUM_HEADER: &str = "omega_over_omega_q,S";
pub const BLOCH_HEADER: &str = "t,X,Y,Z";

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::with_capacity(48 * s.len());
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for (w, v) in s.omega().iter().zip(s.values()) {
        let _ = writeln!(out, "{w:.16e},{v:.16e}");
    }
    out
}

/// One row per time with the Bloch vector `(X, Y, Z)`.
pub fn bloch_csv(rows: &[(f64, [f64; 3])]) -> String {
    let mut out = String::with_capacity(96 * rows.len());
    out.push_str(BLOCH_HEADER);
    out.push('\n');
    for (t, [x, y, z]) in rows {
        let _ = writeln!(out, "{t:.16e},{x:.16e},{y:.16e},{z:.16e}");
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Parses a two-column spectrum file back, checking the header.
pub fn read_spectrum_csv(text: &str) -> Result<Spectrum, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(SPECTRUM_HEADER) => {}
        other => return Err(format!("expected header `{SPECTRUM_HEADER}`, got {other:?}")),
    }
    let mut omega = Vec::new();
    let mut values = Vec::new();
    for (k, line) in lines.enumerate() {
        let (a, b) = line.split_once(',').ok_or_else(|| format!("row {}: expected two columns", k + 2))?;
        omega.push(a.parse::<f64>().map_err(|e| format!("row {}: {e}", k + 2))?);
        values.push(b.parse::<f64>().map_err(|e| format!("row {}: {e}", k + 2))?);
    }
    Ok(Spectrum::new(omega, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_round_trip_is_exact() {
        let s = Spectrum::new(vec![-0.1, 0.0, 1.0 / 3.0], vec![1e-300, 0.7, std::f64::consts::PI]);
        assert_eq!(read_spectrum_csv(&spectrum_csv(&s)).unwrap(), s);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a/b.csv");
        write_atomic(&p, "x\n").unwrap();
        write_atomic(&p, "y\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "y\n");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
