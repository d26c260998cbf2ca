use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use djc_core::oracle::{default_dt, embed, integrate_full_at, integrate_subspace_at, project};
use djc_core::{
    build_full_hamiltonian, evolve, initial_state, q_envelope, reduce,
    subsystem_populations, verify_shift_identity, wootters, BellFamily, CouplingParams,
    LawVerdict, Picture, PreparedState, QubitPair, RatioKind, ScanMode,
};
use serde_json::json;

use crate::args::{
    Axis, CouplingArgs, FigureArgs, Mode, PeriodArgs, ScanArgs, Suite, VerifyArgs, OUT_DIR_ENV,
};
use crate::csv;
use crate::error::CliError;
use crate::figures::{self, Curve};

fn coupling(c: &CouplingArgs) -> Result<CouplingParams, CliError> {
    Ok(CouplingParams::new(c.ga, c.gb, c.omega_atom, c.omega_cavity)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn scan(a: &ScanArgs) -> Result<(), CliError> {
    let params = coupling(&a.coupling)?;
    let t_max = match a.axis {
        Axis::Absolute => a.tmax,
        Axis::Dimensionless => a.tmax / params.g_b(),
    };
    let (mode, label) = match a.mode {
        Mode::Closed => (ScanMode::Closed, "closed"),
        Mode::Oracle => (
            ScanMode::Oracle { cutoff: a.cutoff, dt: a.dt.unwrap_or_else(|| default_dt(&params)) },
            "oracle",
        ),
    };
    let result = djc_core::scan(a.family, a.theta, &params, t_max, a.points, mode)?;
    write_output(a.out.as_deref(), &csv::render(&result, label, &[]))
}

pub fn period(a: &PeriodArgs) -> Result<(), CliError> {
    let params = coupling(&a.coupling)?;
    let ratio = djc_core::classify_ratio(&params, a.tol, a.max_den)?;
    let report = match ratio.kind {
        RatioKind::Rational { .. } => djc_core::count_zeros_with(a.family, &params, ratio)?,
        RatioKind::Irrational => djc_core::period_with(&params, ratio)?,
    };
    let verdict = match report.law_verdict {
        LawVerdict::Holds => "holds",
        LawVerdict::Violated => "violated",
        LawVerdict::NotApplicable => "not_applicable",
    };
    let value = json!({
        "family": a.family.label(),
        "g_a": params.g_a(),
        "g_b": params.g_b(),
        "ratio": ratio.to_string(),
        "residual": ratio.residual,
        "best_convergent": format!("{}/{}", ratio.best.0, ratio.best.1),
        "period": report.period,
        "minimal_period": report.minimal_period,
        "zeros": report.zeros,
        "zero_count": report.zero_count,
        "identically_zero": report.identically_zero || a.family.atoms_never_entangled(),
        "law_verdict": verdict,
    });
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::Io(format!("cannot encode report: {e}")))?;
    text.push('\n');
    write_output(a.out.as_deref(), &text)
}

struct Check {
    name: String,
    value: f64,
    limit: f64,
    /// Passes when `value < limit`.
    pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, pass: value < limit }
    }
}

fn verify_oracle(a: &VerifyArgs, params: &CouplingParams) -> Result<Vec<Check>, CliError> {
    let dt = a.dt.unwrap_or_else(|| default_dt(params));
    let t_max = a.tmax.unwrap_or(20.0 * PI / params.g_min());
    let times: Vec<f64> = (0..=400).map(|i| t_max * i as f64 / 400.0).collect();
    let h = build_full_hamiltonian(params, a.cutoff, Picture::Lab)?;
    let (mut amp, mut modulus, mut leak, mut conc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for fam in BellFamily::ALL {
        let s0 = initial_state(PreparedState::new(fam, a.theta))?;
        let sub = integrate_subspace_at(&s0, params, &times, dt)?;
        let full = integrate_full_at(&embed(&s0, a.cutoff)?, &h, &times, dt)?;
        for ((t, s), f) in times.iter().zip(&sub).zip(&full) {
            let exact = evolve(&s0, params, *t)?;
            amp = amp.max(s.max_abs_diff(&exact));
            let (proj, l) = project(f);
            leak = leak.max(l);
            for (x, y) in proj.amplitudes().iter().zip(exact.amplitudes()) {
                modulus = modulus.max((x.norm() - y.norm()).abs());
            }
            let c = wootters(&reduce(&proj, QubitPair::AB)?)?;
            conc = conc.max((c - q_envelope(fam, a.theta, params, *t)?).abs());
        }
    }
    Ok(vec![
        Check::below("oracle.subspace_amplitude", amp, 1e-8),
        Check::below("oracle.full_modulus", modulus, 1e-8),
        Check::below("oracle.full_leakage", leak, 1e-10),
        Check::below("oracle.full_concurrence", conc, 1e-7),
    ])
}

fn verify_shift(a: &VerifyArgs, params: &CouplingParams) -> Result<Vec<Check>, CliError> {
    let report = verify_shift_identity(params, a.theta)?;
    let parity = if report.ratio % 2 == 1 { "odd" } else { "even" };
    println!("shift: ratio n = {} ({parity}), shift = {:e}", report.ratio, report.shift);
    for c in &report.opposite {
        println!(
            "shift: other-parity pairing {}(t+Δ) vs {}(t): max mismatch {:e}",
            c.shifted, c.reference, c.max_mismatch
        );
    }
    Ok(report
        .predicted
        .iter()
        .map(|c| {
            Check::below(
                format!("shift.{}_to_{}", c.shifted, c.reference),
                c.max_mismatch,
                djc_core::analysis::SHIFT_TOL,
            )
        })
        .collect())
}

fn verify_conservation(a: &VerifyArgs, params: &CouplingParams) -> Result<Vec<Check>, CliError> {
    let dt = a.dt.unwrap_or_else(|| default_dt(params));
    let t_max = a.tmax.unwrap_or(20.0 * PI / params.g_min());
    let times: Vec<f64> = (0..=200).map(|i| t_max * i as f64 / 200.0).collect();
    let mut checks = Vec::new();
    for picture in [Picture::Lab, Picture::Interaction] {
        let tag = match picture {
            Picture::Lab => "lab",
            Picture::Interaction => "interaction",
        };
        let h = build_full_hamiltonian(params, a.cutoff, picture)?;
        checks.push(Check::below(format!("conservation.{tag}.hermiticity"), h.hermiticity_error(), 1e-12));
        checks.push(Check::below(
            format!("conservation.{tag}.commutator"),
            h.excitation_commutator_norm(),
            1e-10,
        ));
        let (mut leak, mut n_drift, mut pop_drift) = (0.0f64, 0.0f64, 0.0f64);
        for fam in BellFamily::ALL {
            let s0 = initial_state(PreparedState::new(fam, a.theta))?;
            let (pa0, _) = subsystem_populations(&s0);
            let full0 = embed(&s0, a.cutoff)?;
            let n0 = full0.excitation_expectation();
            for f in integrate_full_at(&full0, &h, &times, dt)? {
                let (proj, l) = project(&f);
                leak = leak.max(l);
                n_drift = n_drift.max((f.excitation_expectation() - n0).abs());
                pop_drift = pop_drift.max((subsystem_populations(&proj).0 - pa0).abs());
            }
        }
        checks.push(Check::below(format!("conservation.{tag}.leakage"), leak, 1e-10));
        checks.push(Check::below(format!("conservation.{tag}.excitation_drift"), n_drift, 1e-9));
        checks.push(Check::below(format!("conservation.{tag}.population_drift"), pop_drift, 1e-9));
    }
    Ok(checks)
}

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let mut c = a.coupling.clone();
    if let Some(n) = a.ratio {
        if n == 0 {
            return Err(CliError::Usage("--ratio must be >= 1".into()));
        }
        c.ga = n as f64 * c.gb;
    }
    let params = coupling(&c)?;
    if a.cutoff < 1 {
        return Err(CliError::Usage("--cutoff must be >= 1".into()));
    }
    let mut checks = Vec::new();
    if matches!(a.suite, Suite::Oracle | Suite::All) {
        checks.extend(verify_oracle(a, &params)?);
    }
    if matches!(a.suite, Suite::Shift | Suite::All) {
        checks.extend(verify_shift(a, &params)?);
    }
    if matches!(a.suite, Suite::Conservation | Suite::All) {
        checks.extend(verify_conservation(a, &params)?);
    }
    for c in &checks {
        println!(
            "{}: {} max_error={:e} (limit {:e})",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.value,
            c.limit
        );
    }
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    if failed.is_empty() {
        println!("all {} checks passed", checks.len());
        Ok(())
    } else {
        Err(CliError::Verification(failed))
    }
}

fn render_curve(curve: &Curve, gt_max: f64, points: usize) -> Result<String, CliError> {
    let params = CouplingParams::on_resonance(curve.ratio, 1.0)?;
    let shift = if curve.shifted { PI / (2.0 * params.g_b()) } else { 0.0 };
    let result = djc_core::scan_shifted(
        curve.family,
        curve.theta,
        &params,
        gt_max / params.g_b(),
        points,
        shift,
        ScanMode::Closed,
    )?;
    let meta = vec![format!(
        "figure={} panel={} curve={} ratio={:.16e}",
        curve.figure, curve.panel, curve.name, curve.ratio
    )];
    Ok(csv::render(&result, "closed", &meta))
}

pub fn figure_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn figure(a: &FigureArgs) -> Result<(), CliError> {
    let curves = figures::recipe(&a.name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown figure {:?} (expected one of {})",
            a.name,
            figures::FIGURES.join(", ")
        ))
    })?;
    if !a.gt_max.is_finite() || a.gt_max <= 0.0 {
        return Err(CliError::Usage(format!("--gt-max must be > 0, got {}", a.gt_max)));
    }
    let dir = figure_dir(a.out_dir.as_deref());
    fs::create_dir_all(&dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    for curve in &curves {
        let text = render_curve(curve, a.gt_max, a.points)?;
        let path = dir.join(curve.file_name());
        write_output(Some(&path), &text)?;
        // a closed pipe on stdout must not abort the remaining files
        let _ = writeln!(std::io::stdout(), "{}", path.display());
    }
    Ok(())
}
