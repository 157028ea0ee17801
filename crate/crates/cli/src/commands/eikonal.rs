//! Closed-form solutions of the real/imaginary splittings, plus the
//! convergence of the Gaussian quantum potential.

use mayerfield::eikonal::{
    hj_continuity_check, optical_split_residuals, quantum_potential, schrodinger_split_residuals,
    shortwave_split_residuals, TXZ_SIGNATURE,
};
use mayerfield::grid::{ScalarGrid2, ScalarGrid3};
use mayerfield::ResidualReport;

use super::{ratio_in_band, sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::Artifact;

pub const EXACT_LIMIT: f64 = 1e-12;
const MASS: f64 = 1.3;
const HBAR: f64 = 0.7;
const SIGMA: f64 = 0.8;

#[derive(Debug, Clone, PartialEq)]
pub struct EikonalSuite {
    pub exact: Vec<(&'static str, f64)>,
    pub quantum_potential_error: (f64, f64),
}

fn worst(pair: (ResidualReport, ResidualReport)) -> f64 {
    pair.0.max_abs.max(pair.1.max_abs)
}

pub fn run_suite(cfg: &RunConfig) -> CommandResult<EikonalSuite> {
    let n: usize = cfg.get("eikonal.n")?;
    let h: f64 = cfg.get("eikonal.h")?;
    let origin = (-0.5 * h * (n - 1) as f64, 0.0);
    let grid = |f: &dyn Fn(f64, f64) -> f64| ScalarGrid2::from_fn(n, n, h, h, origin, f);
    let one = grid(&|_, _| 1.0)?;
    let zero = grid(&|_, _| 0.0)?;
    let p = 0.9;
    let mut exact = vec![
        (
            "optical plane wave",
            worst(optical_split_residuals(
                &one,
                &grid(&|_, z| z)?,
                &one,
                0.01,
            )?),
        ),
        (
            "free particle",
            worst(schrodinger_split_residuals(
                &one,
                &grid(&|_, z| p * z)?,
                &zero,
                MASS,
                HBAR,
                p * p / (2.0 * MASS),
            )?),
        ),
        (
            "constant potential",
            worst(schrodinger_split_residuals(
                &one,
                &zero,
                &grid(&|_, _| 0.4)?,
                MASS,
                HBAR,
                0.4,
            )?),
        ),
    ];
    let g3 = |f: &dyn Fn([f64; 3]) -> f64| {
        ScalarGrid3::from_fn([9, 9, 9], [h; 3], [0.0, -4.0 * h, 0.0], f)
    };
    let rho1 = g3(&|_| 1.0)?;
    let chi: f64 = 0.7;
    let rest = g3(&|x| x[0])?;
    let boosted = g3(&|x| x[0] * chi.cosh() - x[1] * chi.sinh())?;
    let profile = g3(&|x| (-x[1] * x[1]).exp())?;
    exact.push((
        "short-wave rest frame",
        worst(shortwave_split_residuals(&rho1, &rest, 0.3, TXZ_SIGNATURE)?),
    ));
    exact.push((
        "short-wave boosted",
        worst(shortwave_split_residuals(
            &rho1,
            &boosted,
            0.3,
            TXZ_SIGNATURE,
        )?),
    ));
    exact.push((
        "hj/continuity boosted",
        worst(hj_continuity_check(&rho1, &boosted, TXZ_SIGNATURE)?),
    ));
    exact.push((
        "hj/continuity transverse profile",
        worst(hj_continuity_check(&profile, &rest, TXZ_SIGNATURE)?),
    ));
    let q_const = quantum_potential(&grid(&|_, _| 3.0)?, MASS, HBAR)?;
    exact.push((
        "quantum potential of constant",
        q_const.values.iter().fold(0.0, |m, v| m.max(v.abs())),
    ));

    let closed =
        |x: f64| HBAR * HBAR / (2.0 * MASS * SIGMA * SIGMA) * (1.0 - x * x / (SIGMA * SIGMA));
    let mut errors = Vec::new();
    for (count, step) in [(n, h), (2 * n - 1, 0.5 * h)] {
        let o = (-0.5 * step * (count - 1) as f64, 0.0);
        let r = ScalarGrid2::from_fn(count, 5, step, step, o, |x, _| {
            (-x * x / (2.0 * SIGMA * SIGMA)).exp()
        })?;
        let q = quantum_potential(&r, MASS, HBAR)?;
        errors.push(
            (1..count - 1)
                .map(|i| (q.at(i, 2) - closed(q.x(i))).abs())
                .fold(0.0, f64::max),
        );
    }
    Ok(EikonalSuite {
        exact,
        quantum_potential_error: (errors[0], errors[1]),
    })
}

pub fn suite_checks(s: &EikonalSuite) -> Vec<Check> {
    let worst = s.exact.iter().map(|e| e.1).fold(0.0, f64::max);
    let (coarse, fine) = s.quantum_potential_error;
    vec![
        Check::new(
            "closed-form residuals",
            worst <= EXACT_LIMIT,
            format!(
                "max residual {} over {} closed-form solutions",
                sci(worst),
                s.exact.len()
            ),
        ),
        Check::new(
            "quantum potential convergence",
            ratio_in_band(coarse / fine),
            format!(
                "max error {} -> {} (ratio {:.4})",
                sci(coarse),
                sci(fine),
                coarse / fine
            ),
        ),
    ]
}

pub fn artifacts(cfg: &RunConfig, suite: &EikonalSuite) -> CommandResult<CommandOutput> {
    let header = cfg.header("eikonal")?;
    let mut report = Report::default();
    for (name, v) in &suite.exact {
        report.line(format!("{name}: max residual {}", sci(*v)));
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
