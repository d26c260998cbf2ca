//! Periodicity, zero structure and phase-shift relations of the atom-atom
//! concurrence, plus uniform time scans.
//!
//! For a coupling ratio `g_a/g_b = p/q` in lowest terms both JC systems
//! return to their initial state after `T = pπ/g_a = qπ/g_b`. For an
//! irrational ratio no such time exists; numerically the distinction is made
//! by a continued-fraction search with a tolerance and a denominator cap.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::closed_form::q_envelope;
use crate::concurrence::{reduce, wootters, QubitPair};
use crate::error::{Error, Result};
use crate::model::{initial_state, BellFamily, CouplingParams, PreparedState};
use crate::oracle::{build_full_hamiltonian, embed, integrate_full_at, project, Picture};

pub const DEFAULT_RATIO_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DEN: u64 = 64;

/// Shift identities are asserted to this absolute accuracy.
pub const SHIFT_TOL: f64 = 1e-12;

/// Grid size used by [`verify_shift_identity`].
pub const SHIFT_GRID: usize = 10_000;

const MIN_PERIOD_GRID: usize = 4096;
const MIN_PERIOD_MAX_DIVISOR: usize = 64;
const MIN_PERIOD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioKind {
    Rational { p: u64, q: u64 },
    Irrational,
}

/// Outcome of classifying `g_a/g_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioClass {
    pub kind: RatioKind,
    pub tolerance: f64,
    /// `|r − p/q| / r` for the accepted (or best rejected) convergent.
    pub residual: f64,
    /// Closest convergent with denominator within the cap.
    pub best: (u64, u64),
}

impl RatioClass {
    pub fn is_rational(&self) -> bool {
        matches!(self.kind, RatioKind::Rational { .. })
    }

    /// `n` when the ratio is the integer `n/1`.
    pub fn integer(&self) -> Option<u64> {
        match self.kind {
            RatioKind::Rational { p, q: 1 } => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for RatioClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RatioKind::Rational { p, q } => write!(f, "{p}/{q}"),
            RatioKind::Irrational => f.write_str("irrational"),
        }
    }
}

/// Continued-fraction classification of `g_a/g_b`.
///
/// Walks the convergents `p/q` with `q ≤ max_den` and accepts the first one
/// with `|r − p/q| ≤ tol·r`.
pub fn classify_ratio(params: &CouplingParams, tol: f64, max_den: u64) -> Result<RatioClass> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {tol}")));
    }
    if max_den < 1 {
        return Err(Error::InvalidArgument("max_den must be >= 1".into()));
    }
    let r = params.g_a() / params.g_b();
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut x = r;
    let mut best: Option<(u64, u64, f64)> = None;

    for _ in 0..64 {
        let a = x.floor();
        if a > u32::MAX as f64 {
            break;
        }
        let a = a as u64;
        let (Some(h_next), Some(k_next)) = (
            a.checked_mul(h).and_then(|v| v.checked_add(h_prev)),
            a.checked_mul(k).and_then(|v| v.checked_add(k_prev)),
        ) else {
            break;
        };
        if k_next > max_den {
            break;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if h >= 1 {
            let residual = (r - h as f64 / k as f64).abs() / r;
            if best.is_none_or(|(_, _, b)| residual < b) {
                best = Some((h, k, residual));
            }
            if residual <= tol {
                return Ok(RatioClass {
                    kind: RatioKind::Rational { p: h, q: k },
                    tolerance: tol,
                    residual,
                    best: (h, k),
                });
            }
        }
        let frac = x - a as f64;
        if frac <= f64::EPSILON * x.max(1.0) {
            break;
        }
        x = 1.0 / frac;
    }

    let (bp, bq, residual) = best.unwrap_or((1, 1, (r - 1.0).abs() / r));
    Ok(RatioClass { kind: RatioKind::Irrational, tolerance: tol, residual, best: (bp, bq) })
}

/// Whether the zero-count law applies and, if so, whether it held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawVerdict {
    Holds,
    Violated,
    NotApplicable,
}

/// Periodicity and zero structure of one concurrence envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    pub ratio: RatioClass,
    /// State-revival period `pπ/g_a`; absent for irrational ratios.
    pub period: Option<f64>,
    /// Smallest `T/m` (m ≤ 64) under which the envelope repeats on a dense
    /// grid. Can be shorter than `period`.
    pub minimal_period: Option<f64>,
    /// Distinct zeros in `[0, T)`; absent when not computed or when the
    /// envelope vanishes identically.
    pub zeros: Option<Vec<f64>>,
    pub zero_count: Option<usize>,
    pub identically_zero: bool,
    pub law_verdict: LawVerdict,
}

fn revival_period(params: &CouplingParams, ratio: &RatioClass) -> Option<f64> {
    match ratio.kind {
        RatioKind::Rational { p, .. } => Some(p as f64 * PI / params.g_a()),
        RatioKind::Irrational => None,
    }
}

/// Revival period with default classification settings, plus the minimal
/// numerical period of the AB envelope.
pub fn period(params: &CouplingParams) -> Result<PeriodReport> {
    let ratio = classify_ratio(params, DEFAULT_RATIO_TOL, DEFAULT_MAX_DEN)?;
    period_with(params, ratio)
}

pub fn period_with(params: &CouplingParams, ratio: RatioClass) -> Result<PeriodReport> {
    let period = revival_period(params, &ratio);
    let minimal_period = match period {
        Some(t) => minimal_period(BellFamily::AB, params, t)?,
        None => None,
    };
    Ok(PeriodReport {
        ratio,
        period,
        minimal_period,
        zeros: None,
        zero_count: None,
        identically_zero: false,
        law_verdict: LawVerdict::NotApplicable,
    })
}

/// Largest `m ≤ 64` such that shifting by `T/m` leaves the envelope
/// unchanged on a dense grid; returns `T/m`. `None` for envelopes that vanish
/// identically.
pub fn minimal_period(
    family: BellFamily,
    params: &CouplingParams,
    revival: f64,
) -> Result<Option<f64>> {
    if family.atoms_never_entangled() {
        return Ok(None);
    }
    let theta = PI / 4.0;
    let grid: Vec<f64> =
        (0..MIN_PERIOD_GRID).map(|i| revival * i as f64 / MIN_PERIOD_GRID as f64).collect();
    for m in (1..=MIN_PERIOD_MAX_DIVISOR).rev() {
        let shift = revival / m as f64;
        let mut worst = 0.0f64;
        for &t in &grid {
            let a = q_envelope(family, theta, params, t + shift)?;
            let b = q_envelope(family, theta, params, t)?;
            worst = worst.max((a - b).abs());
            if worst > MIN_PERIOD_TOL {
                break;
            }
        }
        if worst <= MIN_PERIOD_TOL {
            return Ok(Some(shift));
        }
    }
    Ok(Some(revival))
}

#[derive(Clone, Copy)]
enum Factor {
    Sin,
    Cos,
}

/// The two trigonometric factors of a family's envelope (A factor, B factor).
fn factors(family: BellFamily) -> Option<(Factor, Factor)> {
    match family {
        BellFamily::AB => Some((Factor::Cos, Factor::Cos)),
        BellFamily::ab => Some((Factor::Sin, Factor::Sin)),
        BellFamily::Ab => Some((Factor::Cos, Factor::Sin)),
        BellFamily::Ba => Some((Factor::Sin, Factor::Cos)),
        BellFamily::Aa | BellFamily::Bb => None,
    }
}

/// Zeros of `sin(g t)` (at `jπ/g`) or `cos(g t)` (at `(2j+1)π/(2g)`) in
/// `[0, T)`, where `T g / π` is the integer `cycles`.
fn factor_zeros(factor: Factor, g: f64, cycles: u64) -> impl Iterator<Item = f64> {
    (0..cycles).map(move |j| match factor {
        Factor::Sin => j as f64 * PI / g,
        Factor::Cos => (2 * j + 1) as f64 * PI / (2.0 * g),
    })
}

/// Zero structure of the envelope over one revival period, with the default
/// ratio classification.
pub fn count_zeros(family: BellFamily, params: &CouplingParams) -> Result<PeriodReport> {
    let ratio = classify_ratio(params, DEFAULT_RATIO_TOL, DEFAULT_MAX_DEN)?;
    count_zeros_with(family, params, ratio)
}

/// Zeros in `[0, T)` taken as the union of the two factor lattices, merged
/// when closer than `1e-12·T`.
pub fn count_zeros_with(
    family: BellFamily,
    params: &CouplingParams,
    ratio: RatioClass,
) -> Result<PeriodReport> {
    let RatioKind::Rational { p, q } = ratio.kind else {
        return Err(Error::UnsupportedConfiguration(format!(
            "g_a/g_b = {} is not classified as rational (residual {:e}); no period to count zeros in",
            params.g_a() / params.g_b(),
            ratio.residual
        )));
    };
    let mut report = period_with(params, ratio)?;
    let t_rev = report.period.expect("rational ratio has a period");
    report.minimal_period = minimal_period(family, params, t_rev)?;

    let Some((fa, fb)) = factors(family) else {
        report.identically_zero = true;
        return Ok(report);
    };
    let mut zeros: Vec<f64> = factor_zeros(fa, params.g_a(), p)
        .chain(factor_zeros(fb, params.g_b(), q))
        .collect();
    zeros.sort_by(f64::total_cmp);
    let eps = 1e-12 * t_rev;
    zeros.dedup_by(|later, earlier| (*later - *earlier).abs() <= eps);

    report.law_verdict = match (family, ratio.integer()) {
        (BellFamily::AB, Some(n)) => {
            let expected = if n % 2 == 1 { n } else { n + 1 };
            if zeros.len() as u64 == expected {
                LawVerdict::Holds
            } else {
                LawVerdict::Violated
            }
        }
        _ => LawVerdict::NotApplicable,
    };
    report.zero_count = Some(zeros.len());
    report.zeros = Some(zeros);
    Ok(report)
}

/// `max_t |Q_shifted(t + shift) − Q_reference(t)|` over `n` points of
/// `[0, t_max)`.
pub fn max_shift_mismatch(
    shifted: BellFamily,
    reference: BellFamily,
    theta: f64,
    params: &CouplingParams,
    shift: f64,
    t_max: f64,
    n: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..n {
        let t = t_max * i as f64 / n as f64;
        let a = q_envelope(shifted, theta, params, t + shift)?;
        let b = q_envelope(reference, theta, params, t)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// One tested relation `Q_shifted(t + Δ) = Q_reference(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCheck {
    pub shifted: BellFamily,
    pub reference: BellFamily,
    pub max_mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftReport {
    /// Integer coupling ratio `g_a/g_b`.
    pub ratio: u64,
    pub theta: f64,
    /// `Δ = π/(2 g_b)`.
    pub shift: f64,
    /// Pairings expected to coincide for this parity of the ratio.
    pub predicted: [PairCheck; 2],
    /// Pairings expected for the other parity.
    pub opposite: [PairCheck; 2],
    /// All predicted mismatches below [`SHIFT_TOL`].
    pub holds: bool,
}

const ODD_PAIRS: [(BellFamily, BellFamily); 2] =
    [(BellFamily::AB, BellFamily::ab), (BellFamily::Ab, BellFamily::Ba)];
const EVEN_PAIRS: [(BellFamily, BellFamily); 2] =
    [(BellFamily::AB, BellFamily::Ab), (BellFamily::ab, BellFamily::Ba)];

/// Checks the half-period shift relations for an integer ratio `n`.
///
/// Shifting by `Δ = π/(2g_b)` turns the B factor from cos to sin (and back);
/// the A factor advances by `nπ/2` and swaps likewise only for odd `n`. So odd
/// `n` pairs AB with ab and Ab with Ba, while even `n` pairs AB with Ab and
/// ab with Ba.
pub fn verify_shift_identity(params: &CouplingParams, theta: f64) -> Result<ShiftReport> {
    let ratio = classify_ratio(params, DEFAULT_RATIO_TOL, DEFAULT_MAX_DEN)?;
    let Some(n) = ratio.integer() else {
        return Err(Error::UnsupportedConfiguration(format!(
            "shift identities need an integer ratio g_a/g_b, got {ratio}"
        )));
    };
    let shift = PI / (2.0 * params.g_b());
    let t_rev = PI / params.g_b();
    let check = |pairs: [(BellFamily, BellFamily); 2]| -> Result<[PairCheck; 2]> {
        let run = |(shifted, reference): (BellFamily, BellFamily)| -> Result<PairCheck> {
            Ok(PairCheck {
                shifted,
                reference,
                max_mismatch: max_shift_mismatch(
                    shifted, reference, theta, params, shift, t_rev, SHIFT_GRID,
                )?,
            })
        };
        Ok([run(pairs[0])?, run(pairs[1])?])
    };
    let (pred, opp) = if n % 2 == 1 { (ODD_PAIRS, EVEN_PAIRS) } else { (EVEN_PAIRS, ODD_PAIRS) };
    let predicted = check(pred)?;
    let opposite = check(opp)?;
    let holds = predicted.iter().all(|c| c.max_mismatch < SHIFT_TOL);
    Ok(ShiftReport { ratio: n, theta, shift, predicted, opposite, holds })
}

/// For each candidate period, the largest `|Q(t + T_c) − Q(t)|` over `n`
/// grid points of `[0, t_max)`. A value well above zero for every candidate
/// witnesses the absence of a period among them.
pub fn aperiodicity_witness(
    family: BellFamily,
    theta: f64,
    params: &CouplingParams,
    candidates: &[f64],
    t_max: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    candidates
        .iter()
        .map(|&tc| {
            max_shift_mismatch(family, family, theta, params, tc, t_max, n).map(|m| (tc, m))
        })
        .collect()
}

/// How scan values are produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Analytic envelope.
    Closed,
    /// Full truncated-space integration (lab frame) followed by projection,
    /// partial trace and the general Wootters formula.
    Oracle { cutoff: usize, dt: f64 },
}

/// A sampled concurrence curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub family: BellFamily,
    pub theta: f64,
    pub params: CouplingParams,
    /// The curve is `Q(t + shift)`; zero for plain scans.
    pub shift: f64,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Concurrence on the uniform grid of `n_points` over `[0, t_max]`.
pub fn scan(
    family: BellFamily,
    theta: f64,
    params: &CouplingParams,
    t_max: f64,
    n_points: usize,
    mode: ScanMode,
) -> Result<ScanResult> {
    scan_shifted(family, theta, params, t_max, n_points, 0.0, mode)
}

/// Like [`scan`] but samples `Q(t + shift)` at each grid time `t`.
pub fn scan_shifted(
    family: BellFamily,
    theta: f64,
    params: &CouplingParams,
    t_max: f64,
    n_points: usize,
    shift: f64,
    mode: ScanMode,
) -> Result<ScanResult> {
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {n_points}")));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidArgument(format!("t_max must be finite and > 0, got {t_max}")));
    }
    if !shift.is_finite() || shift < 0.0 {
        return Err(Error::InvalidArgument(format!("shift must be finite and >= 0, got {shift}")));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    let last = (n_points - 1) as f64;
    let times: Vec<f64> = (0..n_points).map(|i| t_max * i as f64 / last).collect();
    let values = match mode {
        ScanMode::Closed => times
            .iter()
            .map(|&t| q_envelope(family, theta, params, t + shift))
            .collect::<Result<Vec<_>>>()?,
        ScanMode::Oracle { cutoff, dt } => {
            let psi0 = initial_state(PreparedState::new(family, theta))?;
            let h = build_full_hamiltonian(params, cutoff, Picture::Lab)?;
            let sample_at: Vec<f64> = times.iter().map(|t| t + shift).collect();
            integrate_full_at(&embed(&psi0, cutoff)?, &h, &sample_at, dt)?
                .iter()
                .map(|full| wootters(&reduce(&project(full).0, QubitPair::AB)?))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(ScanResult { family, theta, params: *params, shift, times, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::default_dt;
    use std::f64::consts::SQRT_2;

    fn params(ga: f64, gb: f64) -> CouplingParams {
        CouplingParams::on_resonance(ga, gb).unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = classify_ratio(&params(2.0, 1.0), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 2, q: 1 });
        assert_eq!(r.to_string(), "2/1");
        let r = classify_ratio(&params(0.7, 0.7), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 1, q: 1 });
        let r = classify_ratio(&params(SQRT_2, 1.0), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Irrational);
        assert_eq!(r.best, (41, 29));
        assert!(r.residual > 1e-4);
    }

    #[test]
    fn classify_fractions_and_small_ratios() {
        let r = classify_ratio(&params(5.0 / 3.0, 1.0), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 5, q: 3 });
        let r = classify_ratio(&params(1.0, 4.0), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 1, q: 4 });
        let r = classify_ratio(&params(1.5, 1.0), 1e-9, 64).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 3, q: 2 });
        // 99/70 is a convergent of √2 but exceeds a cap of 64
        let r = classify_ratio(&params(SQRT_2, 1.0), 1e-4, 100).unwrap();
        assert_eq!(r.kind, RatioKind::Rational { p: 99, q: 70 });
        assert!(classify_ratio(&params(1.0, 1.0), 0.0, 64).is_err());
        assert!(classify_ratio(&params(1.0, 1.0), 1e-9, 0).is_err());
    }

    #[test]
    fn period_examples() {
        let r = period(&params(2.0, 1.0)).unwrap();
        assert!((r.period.unwrap() - PI).abs() < 1e-15);
        let g = 1.7;
        let r = period(&params(g, g)).unwrap();
        assert!((r.period.unwrap() - PI / g).abs() < 1e-15);
        assert!((r.minimal_period.unwrap() - PI / g).abs() < 1e-15);
        let r = period(&params(SQRT_2, 1.0)).unwrap();
        assert!(r.period.is_none() && r.minimal_period.is_none());
    }

    #[test]
    fn revival_period_repeats_envelope() {
        for (ga, gb) in [(1.0, 1.0), (2.0, 1.0), (1.5, 1.0), (5.0 / 3.0, 1.0), (1.0, 3.0)] {
            let p = params(ga, gb);
            let t = period(&p).unwrap().period.unwrap();
            // p·π/g_a and q·π/g_b agree
            let RatioKind::Rational { q, .. } = classify_ratio(&p, 1e-9, 64).unwrap().kind else {
                panic!()
            };
            assert!((t - q as f64 * PI / gb).abs() <= 1e-12 * t);
            for fam in BellFamily::ENTANGLING {
                let m = max_shift_mismatch(fam, fam, 0.6, &p, t, 3.0 * t, 10_000).unwrap();
                assert!(m < 1e-12, "{fam} at ratio {ga}/{gb}: {m}");
            }
        }
    }

    #[test]
    fn zero_examples() {
        let r = count_zeros(BellFamily::AB, &params(3.0, 1.0)).unwrap();
        let want = [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0];
        let zeros = r.zeros.unwrap();
        assert_eq!(zeros.len(), 3);
        for (z, w) in zeros.iter().zip(want) {
            assert!((z - w).abs() < 1e-14);
        }
        assert_eq!(r.law_verdict, LawVerdict::Holds);

        let r = count_zeros(BellFamily::AB, &params(2.0, 1.0)).unwrap();
        let zeros = r.zeros.unwrap();
        for (z, w) in zeros.iter().zip([PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]) {
            assert!((z - w).abs() < 1e-14);
        }
        assert_eq!(r.zero_count, Some(3));

        let g = 0.8;
        let r = count_zeros(BellFamily::AB, &params(g, g)).unwrap();
        assert_eq!(r.zero_count, Some(1));
        assert!((r.zeros.unwrap()[0] - PI / (2.0 * g)).abs() < 1e-14);
    }

    #[test]
    fn zero_count_law_for_integer_ratios() {
        for n in 1..=7u64 {
            let r = count_zeros(BellFamily::AB, &params(n as f64, 1.0)).unwrap();
            let expected = if n % 2 == 1 { n } else { n + 1 };
            assert_eq!(r.zero_count, Some(expected as usize), "n = {n}");
            assert_eq!(r.law_verdict, LawVerdict::Holds);
        }
    }

    #[test]
    fn zeros_are_touchpoints_with_recoveries_between() {
        for (ga, gb) in [(3.0, 1.0), (4.0, 1.0), (1.5, 1.0), (5.0 / 3.0, 1.0)] {
            let p = params(ga, gb);
            for fam in BellFamily::ENTANGLING {
                let r = count_zeros(fam, &p).unwrap();
                let zeros = r.zeros.unwrap();
                let t_rev = r.period.unwrap();
                for z in &zeros {
                    assert!(q_envelope(fam, PI / 4.0, &p, *z).unwrap() < 1e-12);
                }
                let mut bounds = zeros.clone();
                bounds.push(zeros[0] + t_rev);
                for w in bounds.windows(2) {
                    let mid = 0.5 * (w[0] + w[1]);
                    assert!(q_envelope(fam, PI / 4.0, &p, mid).unwrap() > 1e-3);
                }
            }
        }
    }

    #[test]
    fn zeros_need_rational_ratio() {
        assert!(matches!(
            count_zeros(BellFamily::AB, &params(SQRT_2, 1.0)),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn trivial_families_are_identically_zero() {
        for fam in [BellFamily::Aa, BellFamily::Bb] {
            let r = count_zeros(fam, &params(1.0, 1.0)).unwrap();
            assert!(r.identically_zero);
            assert!(r.zeros.is_none() && r.zero_count.is_none());
        }
    }

    #[test]
    fn shift_examples() {
        let r = verify_shift_identity(&params(3.0, 1.0), PI / 6.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.predicted[0].shifted, BellFamily::AB);
        assert_eq!(r.predicted[0].reference, BellFamily::ab);

        let r = verify_shift_identity(&params(2.0, 1.0), PI / 6.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.predicted[0].reference, BellFamily::Ab);
        let ab_pair = r.opposite.iter().find(|c| c.reference == BellFamily::ab).unwrap();
        assert!(ab_pair.max_mismatch >= 0.1);

        let r = verify_shift_identity(&params(1.0, 1.0), PI / 4.0).unwrap();
        assert!(r.holds);
        assert!(r.predicted.iter().all(|c| c.max_mismatch < 1e-12));

        assert!(matches!(
            verify_shift_identity(&params(1.5, 1.0), PI / 6.0),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn irrational_ratio_witness_values() {
        // The revival candidates mπ/g_b leave the B factor untouched, so the
        // mismatch is bounded by sin(π·dist(m√2, ℤ)). Near-misses such as
        // m = 12 (12√2 ≈ 16.97) give a small but nonzero mismatch.
        let p = params(SQRT_2, 1.0);
        let cands: Vec<f64> = (1..=20).map(|m| m as f64 * PI).collect();
        let w = aperiodicity_witness(BellFamily::AB, PI / 4.0, &p, &cands, 20.0 * PI, 100_000)
            .unwrap();
        for (m, (_, mismatch)) in (1..=20).zip(w) {
            let frac = (m as f64 * SQRT_2).fract();
            let bound = (PI * frac.min(1.0 - frac)).sin();
            assert!(mismatch <= bound + 1e-9, "m={m}: {mismatch} > {bound}");
            assert!(mismatch > 0.9 * bound, "m={m}: {mismatch} vs {bound}");
        }
    }

    #[test]
    fn scan_examples() {
        let r = scan(BellFamily::AB, PI / 4.0, &params(1.0, 1.0), 2.0 * PI, 9, ScanMode::Closed)
            .unwrap();
        let want = [1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0];
        for (v, w) in r.values.iter().zip(want) {
            assert!((v - w).abs() < 1e-15);
        }
        let r = scan(BellFamily::ab, 0.3, &params(1.3, 0.2), 5.0, 2, ScanMode::Closed).unwrap();
        assert_eq!(r.values[0], 0.0);
        assert!(r.times.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn scan_relabeling_symmetry() {
        let a = scan(BellFamily::Ba, PI / 12.0, &params(2.0, 1.0), 10.0, 500, ScanMode::Closed)
            .unwrap();
        let b = scan(BellFamily::Ab, PI / 12.0, &params(1.0, 2.0), 10.0, 500, ScanMode::Closed)
            .unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let p = params(1.0, 1.0);
        assert!(scan(BellFamily::AB, 0.3, &p, 1.0, 1, ScanMode::Closed).is_err());
        assert!(scan(BellFamily::AB, 0.3, &p, 0.0, 5, ScanMode::Closed).is_err());
        assert!(scan(BellFamily::AB, 0.3, &p, f64::NAN, 5, ScanMode::Closed).is_err());
    }

    #[test]
    fn oracle_scan_matches_closed_scan() {
        let p = params(2.0, 1.0);
        let mode = ScanMode::Oracle { cutoff: 2, dt: default_dt(&p) };
        for fam in BellFamily::ALL {
            let closed = scan(fam, PI / 6.0, &p, 2.0 * PI, 50, ScanMode::Closed).unwrap();
            let oracle = scan(fam, PI / 6.0, &p, 2.0 * PI, 50, mode).unwrap();
            for (a, b) in closed.values.iter().zip(oracle.values.iter()) {
                assert!((a - b).abs() < 1e-7, "{fam}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn oracle_scan_accepts_detuning() {
        let p = CouplingParams::new(1.0, 1.0, 1.5, 1.0).unwrap();
        let mode = ScanMode::Oracle { cutoff: 2, dt: 1e-3 };
        let r = scan(BellFamily::AB, PI / 4.0, &p, 5.0, 20, mode).unwrap();
        assert!(r.values.iter().all(|v| (0.0..=1.0 + 1e-12).contains(v)));
        assert!(scan(BellFamily::AB, PI / 4.0, &p, 5.0, 20, ScanMode::Closed).is_err());
    }
}
