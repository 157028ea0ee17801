//! Direct Fresnel propagation compared against the closed-form beam.

use std::f64::consts::PI;

use mayerfield::beam::{
    beam_width, out_of_plane_factor, single_beam, slit_field, BeamParams, CurvatureFormula,
};
use mayerfield::fresnel::{propagate, TransverseField};
use mayerfield::trajectory::{central_fringe_width, scan_extrema};
use mayerfield::ComplexValue;

use super::{sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::{csv_artifact, fmt_float, Artifact};

pub const WIDTH_LIMIT: f64 = 0.005;
pub const SEMIGROUP_LIMIT: f64 = 1e-6;
pub const ENERGY_LIMIT: f64 = 0.005;
pub const ORACLE_LIMIT: f64 = 0.01;
pub const SLIT_PERIOD_LIMIT: f64 = 0.02;
/// Distances, in Rayleigh ranges, of the width sweep.
pub const SWEEP: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq)]
pub struct FresnelSuite {
    pub z: f64,
    pub input: TransverseField,
    pub output: TransverseField,
    pub analytic: Vec<ComplexValue>,
    pub width_sweep: Vec<(f64, f64, f64)>,
    pub energy_error: f64,
    pub oracle_error: f64,
    pub semigroup_error: f64,
    pub slit_period: Option<(f64, f64)>,
}

/// 1D-transverse analytic beam at `z` (carrier included).
fn analytic_1d(x: f64, z: f64, p: &BeamParams) -> ComplexValue {
    single_beam(x, z, 0.0, p, CurvatureFormula::Standard) * ComplexValue::cis(p.k() * z)
        / out_of_plane_factor(z, p)
}

fn waist(p: &BeamParams, n: usize, half: f64) -> mayerfield::Result<TransverseField> {
    TransverseField::from_fn(n, -half, half, p.k(), |x| {
        ComplexValue::new((-x * x / (p.w0() * p.w0())).exp(), 0.0)
    })
}

fn width_error(out: &TransverseField, z: f64, p: &BeamParams) -> (f64, f64) {
    let measured = out.intensity_half_width().unwrap_or(f64::NAN);
    (measured, (measured / beam_width(z, p) - 1.0).abs())
}

pub fn run_suite(cfg: &RunConfig) -> CommandResult<FresnelSuite> {
    let p = cfg.beam()?;
    let n: usize = cfg.get("fresnel.samples")?;
    let half: f64 = cfg.get_or("fresnel.half_window", 20.0 * p.w0())?;
    let z: f64 = cfg.get_or("fresnel.z", p.z0())?;
    let input = waist(&p, n, half)?;
    let output = propagate(&input, z)?;
    let analytic: Vec<ComplexValue> = (0..output.len())
        .map(|i| analytic_1d(output.x(i), z, &p))
        .collect();
    let peak = output.peak_modulus();
    let interior = n / 10..n - n / 10;
    let oracle_error = interior
        .map(|i| (output.samples[i] - analytic[i]).norm() / peak)
        .fold(0.0, f64::max);
    let energy_error = (output.energy() / input.energy() - 1.0).abs();
    let twice = propagate(&propagate(&input, 0.5 * z)?, 0.5 * z)?;
    let semigroup_error = output
        .samples
        .iter()
        .zip(&twice.samples)
        .map(|(a, b)| (a - b).norm() / peak)
        .fold(0.0, f64::max);
    let mut width_sweep = Vec::new();
    for f in SWEEP {
        let zf = f * p.z0();
        let (w, err) = width_error(&propagate(&input, zf)?, zf, &p);
        width_sweep.push((zf, w, err));
    }

    let slits = cfg.slits()?;
    let slit_period = if slits.a > 0.0 {
        let zs = cfg.integrator()?.z_screen;
        let sh: f64 = cfg.get_or("fresnel.slit_half_window", 60.0 * p.w0())?;
        let two = TransverseField::from_fn(n, -sh, sh, p.k(), |x| slit_field(x, 0.0, &p, &slits))?;
        let far = propagate(&two, zs)?;
        let intensity = |x: f64| far.samples[((x - far.x0) / far.hx).round() as usize].norm_sqr();
        let ext = scan_extrema(intensity, far.x0, far.x(far.len() - 1), far.len());
        central_fringe_width(&ext, 0.0).map(|w| (w, PI * zs / (p.k() * slits.a)))
    } else {
        None
    };
    Ok(FresnelSuite {
        z,
        input,
        output,
        analytic,
        width_sweep,
        energy_error,
        oracle_error,
        semigroup_error,
        slit_period,
    })
}

/// The width sweep and semigroup checks.
pub fn oracle_checks(s: &FresnelSuite) -> Vec<Check> {
    let worst = s.width_sweep.iter().map(|w| w.2).fold(0.0, f64::max);
    let zs: Vec<String> = s.width_sweep.iter().map(|w| format!("{}", w.0)).collect();
    vec![
        Check::new(
            "gaussian width",
            worst < WIDTH_LIMIT,
            format!(
                "max relative width error {} at z in [{}]",
                sci(worst),
                zs.join(", ")
            ),
        ),
        Check::new(
            "semigroup",
            s.semigroup_error <= SEMIGROUP_LIMIT,
            format!(
                "max |P(z/2)P(z/2) - P(z)| / peak = {}",
                sci(s.semigroup_error)
            ),
        ),
    ]
}

pub fn suite_checks(s: &FresnelSuite, p: &BeamParams) -> Vec<Check> {
    let (w, err) = width_error(&s.output, s.z, p);
    let mut checks = vec![Check::new(
        format!("width at z = {}", s.z),
        err < WIDTH_LIMIT,
        format!(
            "half-width {} vs W(z) = {} (rel. error {})",
            sci(w),
            sci(beam_width(s.z, p)),
            sci(err)
        ),
    )];
    checks.extend(oracle_checks(s));
    checks.push(Check::new(
        "energy",
        s.energy_error < ENERGY_LIMIT,
        format!("relative change {}", sci(s.energy_error)),
    ));
    checks.push(Check::new(
        "analytic oracle",
        s.oracle_error <= ORACLE_LIMIT,
        format!(
            "max |numeric - analytic| / peak over interior 80% = {}",
            sci(s.oracle_error)
        ),
    ));
    if let Some((w, expect)) = s.slit_period {
        let e = (w / expect - 1.0).abs();
        checks.push(Check::new(
            "two-slit fringe period",
            e < SLIT_PERIOD_LIMIT,
            format!(
                "central fringe {} vs pi z/(k a) = {} (rel. error {})",
                sci(w),
                sci(expect),
                sci(e)
            ),
        ));
    }
    checks
}

pub fn artifacts(cfg: &RunConfig, s: &FresnelSuite) -> CommandResult<CommandOutput> {
    let header = cfg.header("fresnel")?;
    let p = cfg.beam()?;
    let input_rows = s.input.samples.iter().enumerate().map(|(i, v)| {
        vec![
            i.to_string(),
            fmt_float(s.input.x(i)),
            fmt_float(v.re),
            fmt_float(v.im),
        ]
    });
    let input = csv_artifact(
        "fresnel_input.csv",
        &header,
        &["i", "x", "re", "im"],
        input_rows,
    )?;
    let output_rows = s
        .output
        .samples
        .iter()
        .zip(&s.analytic)
        .enumerate()
        .map(|(i, (v, a))| {
            vec![
                i.to_string(),
                fmt_float(s.output.x(i)),
                fmt_float(v.re),
                fmt_float(v.im),
                fmt_float(a.re),
                fmt_float(a.im),
            ]
        });
    let output = csv_artifact(
        "fresnel_output.csv",
        &header,
        &["i", "x", "re", "im", "analytic_re", "analytic_im"],
        output_rows,
    )?;
    let mut report = Report::default();
    report.line(format!("propagation distance z = {}", fmt_float(s.z)));
    for (z, w, e) in &s.width_sweep {
        report.line(format!(
            "z = {}: half-width {} (rel. error {})",
            fmt_float(*z),
            fmt_float(*w),
            sci(*e)
        ));
    }
    for c in suite_checks(s, &p) {
        report.check(c);
    }
    Ok(CommandOutput {
        artifacts: vec![
            input,
            output,
            Artifact::text("report.txt", report.render(&header)),
        ],
        checks: report.checks,
    })
}

pub fn run(cfg: &RunConfig) -> CommandResult<CommandOutput> {
    artifacts(cfg, &run_suite(cfg)?)
}
