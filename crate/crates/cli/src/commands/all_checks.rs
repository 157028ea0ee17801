//! The full acceptance suite: every subcommand's checks grouped into the
//! ten numbered criteria, plus a byte-for-byte rerun.

use std::time::{Duration, Instant};

use super::{
    caratheodory, eikonal, fresnel, inversion, lattice, slits, Check, CommandOutput, CommandResult,
};
use crate::config::RunConfig;
use crate::output::Artifact;

/// One numbered acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub runtime: Option<(Duration, Duration)>,
}

impl Criterion {
    fn new(number: usize, title: &'static str, checks: Vec<Check>) -> Self {
        Criterion {
            number,
            title,
            checks,
            runtime: None,
        }
    }

    fn timed(mut self, elapsed: Duration, limit_secs: u64) -> Self {
        self.runtime = Some((elapsed, Duration::from_secs(limit_secs)));
        self
    }

    fn within_time(&self) -> bool {
        self.runtime.is_none_or(|(t, limit)| t < limit)
    }

    pub fn passed(&self) -> bool {
        self.within_time() && self.checks.iter().all(|c| c.passed)
    }

    /// Verdict line. Elapsed time is left out so the line is reproducible.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut parts: Vec<String> = self.checks.iter().map(Check::line).collect();
        if !self.within_time() {
            parts.push("FAIL runtime limit exceeded".to_string());
        }
        format!(
            "{verdict} criterion {} ({}): {}",
            self.number,
            self.title,
            parts.join("; ")
        )
    }

    pub fn runtime_line(&self) -> Option<String> {
        let (t, limit) = self.runtime?;
        Some(format!(
            "criterion {} runtime {:.2} s (limit {} s)",
            self.number,
            t.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

#[derive(Debug)]
pub struct AllChecks {
    pub criteria: Vec<Criterion>,
    pub artifacts: Vec<Artifact>,
}

impl AllChecks {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }
}

fn timed<T>(f: impl FnOnce() -> CommandResult<T>) -> CommandResult<(T, Duration)> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed()))
}

fn select(checks: &[Check], labels: &[&str]) -> Vec<Check> {
    checks
        .iter()
        .filter(|c| labels.contains(&c.label.as_str()))
        .cloned()
        .collect()
}

/// Runs every suite once, returning the criteria 1–9 and all files.
fn single_pass(cfg: &RunConfig) -> CommandResult<(Vec<Criterion>, Vec<Artifact>)> {
    let (uniform, t_uniform) = timed(|| slits::run_uniform(cfg))?;
    let (equi, t_equi) = timed(|| slits::run_equivariance(cfg))?;
    let (lat, t_lat) = timed(|| lattice::run_suite(cfg))?;
    let inv = inversion::run_suite(cfg)?;
    let car = caratheodory::run_suite(cfg)?;
    let (fres, t_fres) = timed(|| fresnel::run_suite(cfg))?;
    let eik = eikonal::run_suite(cfg)?;

    let slit_checks = slits::uniform_checks(&uniform);
    let (lattice_residuals, kappa) = lattice::suite_checks(&lat);
    let criteria = vec![
        Criterion::new(
            1,
            "two-slit structure",
            select(&slit_checks, &["fringe count", "fringe period"]),
        )
        .timed(t_uniform, 30),
        Criterion::new(2, "equivariance", vec![slits::equivariance_check(&equi)]).timed(t_equi, 60),
        Criterion::new(3, "no crossing", select(&slit_checks, &["no crossing"])),
        Criterion::new(4, "lattice residual convergence", lattice_residuals).timed(t_lat, 20),
        Criterion::new(5, "kappa estimators", kappa),
        Criterion::new(6, "current inversion", inversion::suite_checks(&inv)),
        Criterion::new(
            7,
            "free-particle fundamental equations",
            caratheodory::suite_checks(&car),
        ),
        Criterion::new(8, "fresnel oracle", fresnel::oracle_checks(&fres)).timed(t_fres, 30),
        Criterion::new(
            9,
            "madelung and eikonal residuals",
            eikonal::suite_checks(&eik),
        ),
    ];

    let outputs: Vec<CommandOutput> = vec![
        slits::artifacts(cfg, &uniform, Some(&equi))?.nested("slits"),
        lattice::artifacts(cfg, &lat)?.nested("lattice"),
        inversion::artifacts(cfg, &inv)?.nested("inversion"),
        caratheodory::artifacts(cfg, &car)?.nested("caratheodory"),
        fresnel::artifacts(cfg, &fres)?.nested("fresnel"),
        eikonal::artifacts(cfg, &eik)?.nested("eikonal"),
    ];
    Ok((
        criteria,
        outputs.into_iter().flat_map(|o| o.artifacts).collect(),
    ))
}

fn determinism(first: &[Artifact], second: &[Artifact]) -> Check {
    let differing: Vec<&str> = first
        .iter()
        .zip(second)
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.name.as_str())
        .collect();
    let same_set = first.len() == second.len();
    let detail = if differing.is_empty() && same_set {
        format!("{} files byte-identical across two runs", first.len())
    } else {
        format!("differing files: [{}]", differing.join(", "))
    };
    Check::new(
        "byte-identical rerun",
        same_set && differing.is_empty(),
        detail,
    )
}

pub fn run(cfg: &RunConfig) -> CommandResult<AllChecks> {
    let (mut criteria, mut artifacts) = single_pass(cfg)?;
    let (_, rerun) = single_pass(cfg)?;
    criteria.push(Criterion::new(
        10,
        "determinism",
        vec![determinism(&artifacts, &rerun)],
    ));

    let mut summary = cfg.header("all-checks")?;
    for c in &criteria {
        summary.push_str(&c.line());
        summary.push('\n');
    }
    artifacts.push(Artifact::text("acceptance.txt", summary));
    Ok(AllChecks {
        criteria,
        artifacts,
    })
}
