//! Reporting helpers for the acceptance suite in `tests/acceptance.rs`.

use std::fmt::Display;
use std::io::Write;

/// Prints one `PASS`/`FAIL` line for a criterion and returns `ok`.
///
/// The line goes straight to the process's standard output, bypassing the
/// test harness's capture, so it shows up for passing tests too.
pub fn verdict(criterion: &str, ok: bool, detail: impl Display) -> bool {
    let line = format!(
        "{} {criterion}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    ok
}
