//! Free-particle fundamental equations, straightness and Euler–Lagrange
//! residuals under rescaling of the velocity field.

use std::sync::Arc;

use mayerfield::minkowski::{boost_x, lower_index, FourVector};
use mayerfield::variational::{
    euler_lagrange_residual, fundamental_residuals, hj_residual, straightness_check, LinearAux,
    VelocitySpec,
};

use super::{sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::Artifact;

pub const SCALES: [f64; 3] = [0.5, 1.0, 7.3];
const PROBES: [FourVector; 4] = [
    [0.0, 0.0, 0.0, 0.0],
    [1.0, -2.0, 0.5, 3.0],
    [-4.0, 0.3, 2.2, -1.1],
    [10.0, 7.0, -6.0, 0.25],
];
pub const FUNDAMENTAL_LIMIT: f64 = 1e-12;
pub const STRAIGHTNESS_LIMIT: f64 = 1e-12;
pub const EULER_LAGRANGE_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CaratheodorySuite {
    pub hj: f64,
    pub fundamental_max: f64,
    pub straightness_max: f64,
    pub euler_lagrange_max: f64,
    pub counterexample: (f64, f64),
}

pub fn run_suite(cfg: &RunConfig) -> CommandResult<CaratheodorySuite> {
    let m: f64 = cfg.get("caratheodory.m")?;
    let c: f64 = cfg.get("caratheodory.c")?;
    let chi: f64 = cfg.get("caratheodory.rapidity")?;
    let s_max: f64 = cfg.get("caratheodory.s_max")?;
    let steps: usize = cfg.get("caratheodory.steps")?;
    let aux = LinearAux {
        p: lower_index(boost_x([m * c, 0.0, 0.0, 0.0], chi)),
    };
    let mut fundamental_max = 0.0f64;
    let mut straightness_max = 0.0f64;
    let mut euler_lagrange_max = 0.0f64;
    for s in SCALES {
        let spec = VelocitySpec::from_aux(aux, s, m, c)?;
        for x in PROBES {
            let (first, second) = fundamental_residuals(&spec, &aux, x, m, c)?;
            fundamental_max = second
                .iter()
                .fold(fundamental_max.max(first.abs()), |a, v| a.max(v.abs()));
        }
        for seed in PROBES {
            straightness_max = straightness_max.max(straightness_check(&spec, seed, s_max, steps)?);
            euler_lagrange_max = euler_lagrange_max
                .max(euler_lagrange_residual(&spec, seed, s_max, steps, m, c)?.max_abs);
        }
    }
    let bent = VelocitySpec::Custom(Arc::new(|x: FourVector| [1.0, 0.2 * x[0], 0.0, 0.0]));
    let counterexample = (
        straightness_check(&bent, PROBES[0], 3.0, steps)?,
        euler_lagrange_residual(&bent, PROBES[0], 3.0, steps, m, c)?.rms,
    );
    Ok(CaratheodorySuite {
        hj: hj_residual(&aux, m, c),
        fundamental_max,
        straightness_max,
        euler_lagrange_max,
        counterexample,
    })
}

pub fn suite_checks(s: &CaratheodorySuite) -> Vec<Check> {
    vec![
        Check::new(
            "fundamental equations",
            s.fundamental_max <= FUNDAMENTAL_LIMIT,
            format!(
                "max residual {} over scales {:?}",
                sci(s.fundamental_max),
                SCALES
            ),
        ),
        Check::new(
            "straight extremals",
            s.straightness_max <= STRAIGHTNESS_LIMIT,
            format!("max chord deviation {}", sci(s.straightness_max)),
        ),
        Check::new(
            "euler-lagrange",
            s.euler_lagrange_max <= EULER_LAGRANGE_LIMIT,
            format!("max residual {}", sci(s.euler_lagrange_max)),
        ),
    ]
}

pub fn artifacts(cfg: &RunConfig, suite: &CaratheodorySuite) -> CommandResult<CommandOutput> {
    let header = cfg.header("caratheodory")?;
    let mut report = Report::default();
    report.line(format!(
        "hamilton-jacobi residual p.p - (mc)^2 = {}",
        sci(suite.hj)
    ));
    report.line(format!(
        "non-gradient field v = (1, 0.2 x0, 0, 0): chord deviation {}, euler-lagrange rms {}",
        sci(suite.counterexample.0),
        sci(suite.counterexample.1)
    ));
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
