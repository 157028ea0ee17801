//! Plane-wave residual suite on a periodic lattice and its refinement.

use std::f64::consts::TAU;

use mayerfield::lattice::{
    bianchi_residual, divergence, field_tensor, kappa_k1, kappa_k2, make_plane_wave,
    maxwell_residual, plane_wave_tensor, proca_residual, proca_residual_tensor, Lattice4,
};
use mayerfield::minkowski::dot;
use mayerfield::residual::rms;

use super::{ratio_in_band, sci, Check, CommandOutput, CommandResult, Report};
use crate::config::RunConfig;
use crate::output::Artifact;

/// Covariant wave vector of the Proca suite, in units of `lattice.k_scale`.
const PROCA_K: [f64; 4] = [3.0, 2.0, 1.0, 0.0];
const PROCA_EPS: [f64; 4] = [1.0, -1.0, -1.0, 0.0];
/// Second wave, sampled with equal spacings so its discrete divergence is
/// not identically zero.
const MIXED_K: [f64; 4] = [2.0, 1.0, 1.0, 0.0];
const MIXED_EPS: [f64; 4] = [1.0, -1.0, -1.0, 1.0];
pub const KAPPA_GAP_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub name: &'static str,
    pub coarse: f64,
    pub fine: f64,
}

impl Convergence {
    pub fn ratio(&self) -> f64 {
        self.coarse / self.fine
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KappaLevel {
    pub k1: f64,
    pub k2: f64,
}

impl KappaLevel {
    pub fn gap(&self) -> f64 {
        ((self.k1 - self.k2) / self.k1).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSuite {
    pub dims: usize,
    pub residuals: Vec<Convergence>,
    pub kappa_exact: f64,
    pub kappa: [KappaLevel; 2],
    pub curl_bianchi_max: f64,
}

impl LatticeSuite {
    pub fn kappa_error(&self) -> Convergence {
        Convergence {
            name: "kappa_k1 error",
            coarse: (self.kappa[0].k1 - self.kappa_exact).abs(),
            fine: (self.kappa[1].k1 - self.kappa_exact).abs(),
        }
    }
}

/// Spacings giving every non-zero axis of `PROCA_K` the same phase step.
fn proca_lattice(n: usize, scale: f64) -> mayerfield::Result<Lattice4> {
    let step = TAU / n as f64;
    let h = std::array::from_fn(|mu| {
        if PROCA_K[mu] != 0.0 {
            step / (scale * PROCA_K[mu])
        } else {
            step / scale
        }
    });
    Lattice4::periodic([n; 4], h)
}

pub fn run_suite(cfg: &RunConfig) -> CommandResult<LatticeSuite> {
    let n: usize = cfg.get("lattice.n")?;
    let scale: f64 = cfg.get("lattice.k_scale")?;
    let phase: f64 = cfg.get("lattice.phase")?;
    let k = PROCA_K.map(|c| c * scale);
    let kk = dot(k, k);
    let lambda = 1.0 / kk.sqrt();
    let kappa_exact = -kk;

    let coarse = proca_lattice(n, scale)?;
    let mut proca = Vec::new();
    let mut maxwell = Vec::new();
    let mut proca_k = Vec::new();
    let mut kappa = Vec::new();
    let mut curl_bianchi_max = 0.0f64;
    for lat in [coarse, coarse.refined()] {
        let pi = make_plane_wave(PROCA_EPS, k, phase, lat)?;
        let tensor = field_tensor(&pi);
        proca.push(proca_residual(&pi, lambda)?.rms);
        maxwell.push(maxwell_residual(&tensor, &pi, kappa_exact)?.rms);
        proca_k.push(proca_residual_tensor(&tensor, lambda)?.rms);
        curl_bianchi_max = curl_bianchi_max.max(bianchi_residual(&tensor).max_abs);
        kappa.push(KappaLevel {
            k1: kappa_k1(&pi)?.value,
            k2: kappa_k2(&pi)?.value,
        });
    }

    let mixed = Lattice4::periodic([n; 4], [TAU / (n as f64 * scale); 4])?;
    let km = MIXED_K.map(|c| c * scale);
    let mut div = Vec::new();
    let mut bianchi = Vec::new();
    for lat in [mixed, mixed.refined()] {
        div.push(rms(&divergence(&make_plane_wave(
            MIXED_EPS, km, phase, lat,
        )?)
        .values));
        bianchi.push(bianchi_residual(&plane_wave_tensor(MIXED_EPS, km, phase, lat)?).rms);
    }
    let conv = |name, v: Vec<f64>| Convergence {
        name,
        coarse: v[0],
        fine: v[1],
    };
    let [k_coarse, k_fine]: [KappaLevel; 2] = kappa.try_into().expect("two levels");
    Ok(LatticeSuite {
        dims: n,
        residuals: vec![
            conv("proca_residual", proca),
            conv("maxwell_residual", maxwell),
            conv("proca_residual_tensor", proca_k),
            conv("divergence", div),
            conv("bianchi_residual", bianchi),
        ],
        kappa_exact,
        kappa: [k_coarse, k_fine],
        curl_bianchi_max,
    })
}

pub fn suite_checks(s: &LatticeSuite) -> (Vec<Check>, Vec<Check>) {
    let residual_checks = s
        .residuals
        .iter()
        .map(|c| {
            Check::new(
                format!("{} convergence", c.name),
                ratio_in_band(c.ratio()),
                format!(
                    "rms {} -> {} (ratio {:.4})",
                    sci(c.coarse),
                    sci(c.fine),
                    c.ratio()
                ),
            )
        })
        .collect();
    let err = s.kappa_error();
    let kappa_checks = vec![
        Check::new(
            "kappa agreement",
            s.kappa.iter().all(|k| k.gap() < KAPPA_GAP_LIMIT),
            format!(
                "relative gap {} (coarse), {} (fine)",
                sci(s.kappa[0].gap()),
                sci(s.kappa[1].gap())
            ),
        ),
        Check::new(
            "kappa_k1 convergence",
            ratio_in_band(err.ratio()),
            format!(
                "|kappa_k1 + k.k| {} -> {} (ratio {:.4}, exact {})",
                sci(err.coarse),
                sci(err.fine),
                err.ratio(),
                sci(s.kappa_exact)
            ),
        ),
    ];
    (residual_checks, kappa_checks)
}

pub fn artifacts(cfg: &RunConfig, suite: &LatticeSuite) -> CommandResult<CommandOutput> {
    let header = cfg.header("lattice-verify")?;
    let mut report = Report::default();
    report.line(format!(
        "lattice {0}^4 and {1}^4 (periodic)",
        suite.dims,
        2 * suite.dims
    ));
    for (level, k) in ["coarse", "fine"].iter().zip(&suite.kappa) {
        report.line(format!(
            "kappa_k1 {level} = {}  kappa_k2 {level} = {}",
            sci(k.k1),
            sci(k.k2)
        ));
    }
    report.line(format!(
        "bianchi_residual of field_tensor output: max {} (identity holds exactly for central stencils)",
        sci(suite.curl_bianchi_max)
    ));
    let (residual, kappa) = suite_checks(suite);
    for c in residual.into_iter().chain(kappa) {
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
