//! Time-series CSV: `#` metadata lines, then `t,gt,concurrence` rows with 17
//! significant digits.

use std::fmt::Write as _;

use djc_core::ScanResult;

pub const HEADER: &str = "t,gt,concurrence";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders a scan. `extra` lines are emitted as additional comments.
pub fn render(scan: &ScanResult, mode: &str, extra: &[String]) -> String {
    let p = &scan.params;
    let mut out = String::with_capacity(64 * (scan.times.len() + 4));
    for line in extra {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(
        out,
        "# family={} theta={} g_a={} g_b={} omega_atom={} omega_cavity={} mode={} shift={}",
        scan.family,
        num(scan.theta),
        num(p.g_a()),
        num(p.g_b()),
        num(p.omega_atom()),
        num(p.omega_cavity()),
        mode,
        num(scan.shift),
    );
    let _ = writeln!(out, "# g_ref=g_b");
    let _ = writeln!(out, "{HEADER}");
    let g_ref = p.g_b();
    for (t, v) in scan.times.iter().zip(scan.values.iter()) {
        let _ = writeln!(out, "{},{},{}", num(*t), num(g_ref * t), num(*v));
    }
    out
}
