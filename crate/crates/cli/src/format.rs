//! CSV rendering shared by all commands.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Significant digits kept in every numeric field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] and prints the shortest text that reads
/// back as the rounded value.  Very small or very large magnitudes switch to
/// exponent notation; negative zero prints as `0`.
pub fn number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if !(1e-6..1e15).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// Like [`number`], padded to at least `decimals` digits after the point.
pub fn number_min_decimals(x: f64, decimals: usize) -> String {
    let s = number(x);
    if s.contains('e') {
        return s;
    }
    let have = s.split_once('.').map_or(0, |(_, frac)| frac.len());
    if have >= decimals {
        s
    } else if have == 0 {
        format!("{s}.{}", "0".repeat(decimals))
    } else {
        format!("{s}{}", "0".repeat(decimals - have))
    }
}

/// Writes `header` and `rows` with `\n` line endings, either to standard
/// output or atomically to `path` (a sibling temporary file is renamed into
/// place, and removed if anything fails).
pub fn write_csv(path: Option<&Path>, header: &str, rows: &[String]) -> io::Result<()> {
    match path {
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            emit(&mut out, header, rows)?;
            out.flush()
        }
        Some(path) => {
            let tmp = partial_path(path);
            let result = fs::File::create(&tmp).and_then(|f| {
                let mut out = BufWriter::new(f);
                emit(&mut out, header, rows)?;
                out.into_inner().map_err(|e| e.into_error())?.sync_all()
            });
            match result.and_then(|_| fs::rename(&tmp, path)) {
                Ok(()) => Ok(()),
                Err(e) => {
                    let _ = fs::remove_file(&tmp);
                    Err(e)
                }
            }
        }
    }
}

fn emit(out: &mut impl Write, header: &str, rows: &[String]) -> io::Result<()> {
    out.write_all(header.as_bytes())?;
    out.write_all(b"\n")?;
    for row in rows {
        out.write_all(row.as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn partial_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}
