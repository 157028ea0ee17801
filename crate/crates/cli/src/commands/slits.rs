//! Two-slit trajectories, screen density and the equivariance histogram.

use std::f64::consts::PI;

use mayerfield::beam::SlitVelocityField;
use mayerfield::trajectory::{
    basin_occupancy, central_fringe_width, density_bin_masses, integrate_many, landing_histogram,
    normalize, ordering_violations, scan_extrema, seed_density_sampled, seed_uniform,
    total_variation, Extrema, IntegratorConfig, Termination, Trajectory,
};

use super::{sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::{csv_artifact, fmt_float, pgm_artifact, Artifact};

/// Samples used to locate density extrema on the screen.
const SCREEN_SCAN_SAMPLES: usize = 60_001;
/// Simpson panels per histogram bin for the density oracle.
const BIN_PANELS: usize = 64;
pub const FRINGE_TOLERANCE: f64 = 0.05;
pub const TV_LIMIT: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct UniformRun {
    pub trajectories: Vec<Trajectory>,
    pub rejected_seeds: Vec<(f64, String)>,
    pub screen: Extrema,
    pub occupancy: Vec<usize>,
    pub fringe_width: Option<f64>,
    pub predicted_period: Option<f64>,
    pub violations: usize,
}

impl UniformRun {
    pub fn bands(&self) -> usize {
        self.occupancy.iter().filter(|&&n| n > 0).count()
    }

    pub fn count(&self, t: Termination) -> usize {
        self.trajectories
            .iter()
            .filter(|tr| tr.terminated_by == t)
            .count()
    }

    pub fn fringe_error(&self) -> Option<f64> {
        Some((self.fringe_width? / self.predicted_period? - 1.0).abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceRun {
    pub histogram: Vec<usize>,
    pub expected: Vec<f64>,
    pub landed: usize,
    pub seeded: usize,
    pub total_variation: f64,
}

fn landings(trajs: &[Trajectory]) -> Vec<f64> {
    trajs
        .iter()
        .filter(|t| t.terminated_by == Termination::ReachedScreen)
        .map(|t| t.last().0)
        .collect()
}

pub fn run_uniform(cfg: &RunConfig) -> CommandResult<UniformRun> {
    let field = cfg.velocity_field()?;
    let integ = cfg.integrator()?;
    let seeds = seed_uniform(
        cfg.get("seeding.n_uniform")?,
        cfg.get("seeding.x_min")?,
        cfg.get("seeding.x_max")?,
        0.0,
    )?;
    let mut trajectories = Vec::new();
    let mut rejected_seeds = Vec::new();
    for (seed, result) in seeds.iter().zip(integrate_many(&seeds, &field, &integ)) {
        match result {
            Ok(t) => trajectories.push(t),
            Err(e) => rejected_seeds.push((seed.0, e.to_string())),
        }
    }
    let zs = integ.z_screen;
    let screen = scan_extrema(
        |x| field.rho(x, zs),
        -integ.x_bounds,
        integ.x_bounds,
        SCREEN_SCAN_SAMPLES,
    );
    let occupancy = basin_occupancy(&landings(&trajectories), &screen.minima);
    let a = field.slits.a;
    let predicted_period = (a > 0.0).then(|| PI * zs / (field.params.k() * a));
    Ok(UniformRun {
        violations: ordering_violations(&trajectories),
        fringe_width: central_fringe_width(&screen, 0.0),
        trajectories,
        rejected_seeds,
        screen,
        occupancy,
        predicted_period,
    })
}

pub fn run_equivariance(cfg: &RunConfig) -> CommandResult<EquivarianceRun> {
    let field = cfg.velocity_field()?;
    let mut integ = cfg.integrator()?;
    integ.record_every = 0;
    let n: usize = cfg.get("seeding.n_sampled")?;
    let bins: usize = cfg.get("seeding.bins")?;
    let xb = integ.x_bounds;
    let seeds = seed_density_sampled(
        n,
        -xb,
        xb,
        0.0,
        |x| field.rho(x, 0.0),
        cfg.get("seeding.rng_seed")?,
    )?;
    // seeds below the density floor cannot be integrated; they count as not landed
    let trajs: Vec<Trajectory> = integrate_many(&seeds, &field, &integ)
        .into_iter()
        .flatten()
        .collect();
    let histogram = landing_histogram(&trajs, bins, -xb, xb);
    let landed: usize = histogram.iter().sum();
    let observed = normalize(&histogram.iter().map(|&c| c as f64).collect::<Vec<_>>());
    let expected = density_bin_masses(|x| field.rho(x, integ.z_screen), bins, -xb, xb, BIN_PANELS);
    Ok(EquivarianceRun {
        total_variation: total_variation(&observed, &expected),
        histogram,
        expected,
        landed,
        seeded: n,
    })
}

fn step_index(z: f64, integ: &IntegratorConfig) -> usize {
    (z / integ.dz).round() as usize
}

fn trajectories_csv(
    run: &UniformRun,
    integ: &IntegratorConfig,
    header: &str,
) -> CommandResult<Artifact> {
    let rows = run.trajectories.iter().enumerate().flat_map(|(id, t)| {
        t.points.iter().map(move |&(x, z)| {
            vec![
                id.to_string(),
                step_index(z, integ).to_string(),
                fmt_float(x),
                fmt_float(z),
                fmt_float(t.weight),
            ]
        })
    });
    Ok(csv_artifact(
        "trajectories.csv",
        header,
        &["traj_id", "step", "x", "z", "weight"],
        rows,
    )?)
}

fn density_artifacts(
    field: &SlitVelocityField,
    integ: &IntegratorConfig,
    cfg: &RunConfig,
    header: &str,
) -> CommandResult<[Artifact; 2]> {
    let nx: usize = cfg.get("output.density_nx")?;
    let nz: usize = cfg.get("output.density_nz")?;
    let xb = integ.x_bounds;
    let x_at = |i: usize| -xb + 2.0 * xb * i as f64 / (nx.max(2) - 1) as f64;
    let z_at = |j: usize| integ.z_screen * j as f64 / (nz.max(2) - 1) as f64;
    let mut rows = Vec::with_capacity(nx * nz);
    let mut amplitude = Vec::with_capacity(nx * nz);
    // z down, x across
    for j in 0..nz {
        for i in 0..nx {
            let (x, z) = (x_at(i), z_at(j));
            let rho = field.rho(x, z);
            amplitude.push(rho.sqrt());
            rows.push(vec![
                i.to_string(),
                j.to_string(),
                fmt_float(x),
                fmt_float(z),
                fmt_float(rho),
            ]);
        }
    }
    let csv = csv_artifact("density.csv", header, &["i", "j", "x", "z", "rho"], rows)?;
    Ok([csv, pgm_artifact("density.pgm", header, nx, &amplitude)])
}

pub fn uniform_checks(run: &UniformRun) -> Vec<Check> {
    let maxima = run.screen.maxima.len();
    let mut checks = vec![Check::new(
        "fringe count",
        maxima == run.bands(),
        format!(
            "{} density maxima, {} occupied landing bands",
            maxima,
            run.bands()
        ),
    )];
    if let Some(err) = run.fringe_error() {
        checks.push(Check::new(
            "fringe period",
            err < FRINGE_TOLERANCE,
            format!(
                "central fringe width {} vs pi z/(k a) = {} (rel. error {})",
                sci(run.fringe_width.unwrap_or(f64::NAN)),
                sci(run.predicted_period.unwrap_or(f64::NAN)),
                sci(err)
            ),
        ));
    }
    checks.push(Check::new(
        "no crossing",
        run.violations == 0,
        format!(
            "{} ordering violations among {} trajectories",
            run.violations,
            run.trajectories.len()
        ),
    ));
    checks
}

pub fn equivariance_check(run: &EquivarianceRun) -> Check {
    Check::new(
        "equivariance",
        run.total_variation < TV_LIMIT,
        format!(
            "total variation {} over {} bins ({} of {} landed)",
            sci(run.total_variation),
            run.histogram.len(),
            run.landed,
            run.seeded
        ),
    )
}

pub fn artifacts(
    cfg: &RunConfig,
    uniform: &UniformRun,
    equi: Option<&EquivarianceRun>,
) -> CommandResult<CommandOutput> {
    let header = cfg.header("slits")?;
    let field = cfg.velocity_field()?;
    let integ = cfg.integrator()?;
    let mut report = Report::default();
    report.line(format!("screen z = {}", fmt_float(integ.z_screen)));
    report.line(format!("density maxima ({}):", uniform.screen.maxima.len()));
    for x in &uniform.screen.maxima {
        report.line(format!(
            "  x = {}  rho = {}",
            fmt_float(*x),
            fmt_float(field.rho(*x, integ.z_screen))
        ));
    }
    report.line(format!("density minima ({}):", uniform.screen.minima.len()));
    for x in &uniform.screen.minima {
        report.line(format!("  x = {}", fmt_float(*x)));
    }
    report.line(format!("basin occupancy: {:?}", uniform.occupancy));
    for t in [
        Termination::ReachedScreen,
        Termination::LeftDomain,
        Termination::DensityFloor,
        Termination::MaxSteps,
    ] {
        report.line(format!("terminated by {t}: {}", uniform.count(t)));
    }
    for (x, reason) in &uniform.rejected_seeds {
        report.line(format!("rejected seed x = {}: {reason}", fmt_float(*x)));
    }
    for c in uniform_checks(uniform) {
        report.check(c);
    }
    if let Some(e) = equi {
        report.line(format!("landing histogram: {:?}", e.histogram));
        let expected: Vec<String> = e.expected.iter().map(|p| format!("{p:.6}")).collect();
        report.line(format!("density bin masses: [{}]", expected.join(", ")));
        report.check(equivariance_check(e));
    }
    let mut files = vec![trajectories_csv(uniform, &integ, &header)?];
    files.extend(density_artifacts(&field, &integ, cfg, &header)?);
    files.push(Artifact::text("report.txt", report.render(&header)));
    Ok(CommandOutput {
        artifacts: files,
        checks: report.checks,
    })
}

/// Full slits command; the equivariance ensemble is skipped when
/// `seeding.n_sampled = 0`.
pub fn run(cfg: &RunConfig) -> CommandResult<CommandOutput> {
    let uniform = run_uniform(cfg)?;
    let n_sampled: usize = cfg.get("seeding.n_sampled")?;
    let equi = if n_sampled > 0 {
        Some(run_equivariance(cfg)?)
    } else {
        None
    };
    artifacts(cfg, &uniform, equi.as_ref())
}
