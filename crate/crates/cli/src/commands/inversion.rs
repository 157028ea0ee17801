//! Velocity recovery from a probability current and the determinant check.

use mayerfield::inversion::{build_m, det_m, recover_velocity, CurrentSample, DeterminantReport};
use mayerfield::minkowski::{boost_x, dot, FourVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::{fmt_float, Artifact};

pub const SCALES: [f64; 3] = [0.1, 1.0, 10.0];
pub const DET_LIMIT: f64 = 1e-12;
/// Round trip `ρ·v = π` allowed deviation, in units of machine epsilon.
pub const ROUND_TRIP_ULPS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct InversionSuite {
    pub sample: CurrentSample,
    pub matrix: [[f64; 4]; 4],
    pub determinant: DeterminantReport,
    pub recovered: Vec<Result<(FourVector, f64), String>>,
    pub det_max_error: f64,
    pub round_trip_max: f64,
    pub solvability_mismatches: usize,
}

fn configured_current(cfg: &RunConfig, n0c: f64) -> CommandResult<FourVector> {
    if cfg.raw("inversion.pi") == crate::config::AUTO {
        let chi: f64 = cfg.get("inversion.rapidity")?;
        Ok(boost_x([n0c, 0.0, 0.0, 0.0], chi))
    } else {
        Ok(cfg.get_four("inversion.pi")?)
    }
}

pub fn run_suite(cfg: &RunConfig) -> CommandResult<InversionSuite> {
    let n0c: f64 = cfg.get("inversion.n0c")?;
    let tol: f64 = cfg.get("inversion.tol")?;
    let samples: usize = cfg.get("inversion.samples")?;
    let sample = CurrentSample::new(configured_current(cfg, n0c)?, n0c)?;
    let recovered = SCALES
        .iter()
        .map(|&s| recover_velocity(&sample, s, tol).map_err(|e| format!("{e:?}")))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seeding.rng_seed")?);
    let mut det_max_error = 0.0f64;
    let mut round_trip_max = 0.0f64;
    let mut solvability_mismatches = 0;
    for _ in 0..samples {
        let pi: FourVector = std::array::from_fn(|_| rng.gen_range(-2.0..2.0) * n0c);
        let random = CurrentSample::new(pi, n0c)?;
        let det = det_m(&random);
        det_max_error = det_max_error.max(det.relative_error(n0c));
        let solvable = recover_velocity(&random, 1.0, tol).is_ok();
        if solvable != (det.closed_form.abs() <= tol * n0c.powi(8)) {
            solvability_mismatches += 1;
        }
        // an on-shell current along a random boost
        let on_shell = boost_x([n0c, 0.0, 0.0, 0.0], rng.gen_range(-2.0..2.0));
        let on_shell = CurrentSample::new(on_shell, n0c)?;
        for s in SCALES {
            let (v, rho) = recover_velocity(&on_shell, s, tol)?;
            for (vm, pm) in v.iter().zip(on_shell.pi) {
                let scale = pm.abs().max(f64::MIN_POSITIVE);
                round_trip_max = round_trip_max.max((rho * vm - pm).abs() / scale / f64::EPSILON);
            }
        }
    }
    Ok(InversionSuite {
        matrix: build_m(&sample),
        determinant: det_m(&sample),
        sample,
        recovered,
        det_max_error,
        round_trip_max,
        solvability_mismatches,
    })
}

pub fn suite_checks(s: &InversionSuite) -> Vec<Check> {
    vec![
        Check::new(
            "det M identity",
            s.det_max_error <= DET_LIMIT,
            format!(
                "max relative error {} (numeric vs closed form)",
                sci(s.det_max_error)
            ),
        ),
        Check::new(
            "round trip",
            s.round_trip_max <= ROUND_TRIP_ULPS,
            format!(
                "max |rho v - pi| = {:.1} ulp for s in {:?}",
                s.round_trip_max, SCALES
            ),
        ),
        Check::new(
            "solvability",
            s.solvability_mismatches == 0,
            format!(
                "{} mismatches between recovery and det M = 0",
                s.solvability_mismatches
            ),
        ),
    ]
}

pub fn artifacts(cfg: &RunConfig, suite: &InversionSuite) -> CommandResult<CommandOutput> {
    let header = cfg.header("invert-current")?;
    let mut report = Report::default();
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| fmt_float(*x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    report.line(format!(
        "pi = ({})  n0c = {}",
        join(&suite.sample.pi),
        fmt_float(suite.sample.n0c)
    ));
    report.line(format!(
        "pi.pi = {}",
        fmt_float(dot(suite.sample.pi, suite.sample.pi))
    ));
    report.line("M =");
    for row in &suite.matrix {
        report.line(format!("  [{}]", join(row)));
    }
    report.line(format!(
        "det M numeric = {}",
        fmt_float(suite.determinant.numeric)
    ));
    report.line(format!(
        "det M closed form = {}",
        fmt_float(suite.determinant.closed_form)
    ));
    for (s, r) in SCALES.iter().zip(&suite.recovered) {
        match r {
            Ok((v, rho)) => report.line(format!(
                "s = {s}: v = ({})  rho = {}",
                join(v),
                fmt_float(*rho)
            )),
            Err(e) => report.line(format!("s = {s}: {e}")),
        }
    }
    for c in suite_checks(suite) {
        report.check(c);
    }
    Ok(CommandOutput {
        artifacts: vec![Artifact::text("report.txt", report.render(&header))],
        checks: report.checks,
    })
}

pub fn run(cfg: &RunConfig) -> CommandResult<CommandOutput> {
    artifacts(cfg, &run_suite(cfg)?)
}
