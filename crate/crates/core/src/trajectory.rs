//! Integral curves of planar velocity fields: Bohmian trajectories in the
//! x–z plane and eikonal light rays, plus seeding and landing statistics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::beam::MadelungSample;
use crate::error::{Error, Result};
use crate::residual::pairwise_sum;

/// Anything that yields density and velocity at a point of the x–z plane.
pub trait PlanarVelocityField: Sync {
    fn sample(&self, x: f64, z: f64) -> MadelungSample;
}

impl<F> PlanarVelocityField for F
where
    F: Fn(f64, f64) -> MadelungSample + Sync,
{
    fn sample(&self, x: f64, z: f64) -> MadelungSample {
        self(x, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    ReachedScreen,
    LeftDomain,
    /// The density dropped below the floor, or the forward velocity fell
    /// under `vz_min`.
    DensityFloor,
    MaxSteps,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Termination::ReachedScreen => "reached_screen",
            Termination::LeftDomain => "left_domain",
            Termination::DensityFloor => "density_floor",
            Termination::MaxSteps => "max_steps",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `(x, z)` pairs in integration order.
    pub points: Vec<(f64, f64)>,
    /// `ρ^{1/2}` at the seed.
    pub weight: f64,
    pub terminated_by: Termination,
}

impl Trajectory {
    pub fn last(&self) -> (f64, f64) {
        *self
            .points
            .last()
            .expect("trajectory has at least the seed point")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dz: f64,
    pub z_screen: f64,
    pub x_bounds: f64,
    pub max_steps: usize,
    pub vz_min: f64,
    /// Keep every n-th step in `points` (0 keeps only the two ends). The
    /// final point is always kept.
    pub record_every: usize,
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dz > 0.0) || self.max_steps == 0 || !(self.vz_min > 0.0) {
            return Err(Error::InvalidParameter(
                "integrator needs dz > 0, max_steps > 0 and vz_min > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Fixed-step RK4 in `z` for `dx/dz = v_x / v_z`.
pub fn integrate_bohmian<F: PlanarVelocityField + ?Sized>(
    seed_x: f64,
    z_start: f64,
    field: &F,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    let seed = field.sample(seed_x, z_start);
    if !seed.valid {
        return Err(Error::SeedInvalid {
            x: seed_x,
            z: z_start,
            reason: format!("density {:e} below floor", seed.rho),
        });
    }
    if !(seed.vz >= cfg.vz_min) {
        return Err(Error::SeedInvalid {
            x: seed_x,
            z: z_start,
            reason: format!("forward velocity {} below {}", seed.vz, cfg.vz_min),
        });
    }

    let slope = |x: f64, z: f64| -> Option<f64> {
        let s = field.sample(x, z);
        (s.valid && s.vz >= cfg.vz_min).then(|| s.vx / s.vz)
    };

    let mut points = vec![(seed_x, z_start)];
    let mut x = seed_x;
    let mut z = z_start;
    let mut k1 = seed.vx / seed.vz;
    let span = cfg.z_screen - z_start;
    let mut step = 0usize;
    let terminated_by = loop {
        if cfg.z_screen - z <= 1e-9 * cfg.dz {
            break Termination::ReachedScreen;
        }
        if step == cfg.max_steps {
            break Termination::MaxSteps;
        }
        // Step ends are computed from the step index so every trajectory
        // shares the same z grid.
        let z_next = if (step + 1) as f64 * cfg.dz >= span - 1e-9 * cfg.dz {
            cfg.z_screen
        } else {
            z_start + (step + 1) as f64 * cfg.dz
        };
        let h = z_next - z;
        let Some(k2) = slope(x + 0.5 * h * k1, z + 0.5 * h) else {
            break Termination::DensityFloor;
        };
        let Some(k3) = slope(x + 0.5 * h * k2, z + 0.5 * h) else {
            break Termination::DensityFloor;
        };
        let Some(k4) = slope(x + h * k3, z_next) else {
            break Termination::DensityFloor;
        };
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        z = z_next;
        step += 1;
        let done = cfg.z_screen - z <= 1e-9 * cfg.dz;
        if x.abs() > cfg.x_bounds {
            points.push((x, z));
            break Termination::LeftDomain;
        }
        if done || (cfg.record_every > 0 && step.is_multiple_of(cfg.record_every)) {
            points.push((x, z));
        }
        if done {
            continue;
        }
        match slope(x, z) {
            Some(k) => k1 = k,
            None => {
                if points.last() != Some(&(x, z)) {
                    points.push((x, z));
                }
                break Termination::DensityFloor;
            }
        }
    };
    if points.last() != Some(&(x, z)) {
        points.push((x, z));
    }
    Ok(Trajectory {
        points,
        weight: seed.rho.sqrt(),
        terminated_by,
    })
}

/// Integrates many seeds concurrently; results keep the seed order.
pub fn integrate_many<F: PlanarVelocityField + ?Sized>(
    seeds: &[(f64, f64)],
    field: &F,
    cfg: &IntegratorConfig,
) -> Vec<Result<Trajectory>> {
    seeds
        .par_iter()
        .map(|&(x, z)| integrate_bohmian(x, z, field, cfg))
        .collect()
}

/// RK4 in arclength for `dr/ds = ∇S̃ / n`.
///
/// Uses `cfg.dz` as the arclength step; stops when `z` reaches
/// `cfg.z_screen`, `|x|` exceeds `cfg.x_bounds` or after `cfg.max_steps`.
pub fn integrate_eikonal_ray<G, N>(
    seed: (f64, f64),
    grad: G,
    index: N,
    cfg: &IntegratorConfig,
) -> Result<Trajectory>
where
    G: Fn(f64, f64) -> (f64, f64),
    N: Fn(f64, f64) -> f64,
{
    cfg.validate()?;
    let n0 = index(seed.0, seed.1);
    if !(n0 > 0.0) {
        return Err(Error::SeedInvalid {
            x: seed.0,
            z: seed.1,
            reason: format!("refractive index {n0} is not positive"),
        });
    }
    let rhs = |x: f64, z: f64| -> Option<(f64, f64)> {
        let n = index(x, z);
        if !(n > 0.0) {
            return None;
        }
        let (gx, gz) = grad(x, z);
        Some((gx / n, gz / n))
    };
    let h = cfg.dz;
    let (mut x, mut z) = seed;
    let mut points = vec![seed];
    let mut steps = 0usize;
    let terminated_by = loop {
        if z >= cfg.z_screen {
            break Termination::ReachedScreen;
        }
        if x.abs() > cfg.x_bounds {
            break Termination::LeftDomain;
        }
        if steps == cfg.max_steps {
            break Termination::MaxSteps;
        }
        let stage = || -> Option<(f64, f64)> {
            let a = rhs(x, z)?;
            let b = rhs(x + 0.5 * h * a.0, z + 0.5 * h * a.1)?;
            let c = rhs(x + 0.5 * h * b.0, z + 0.5 * h * b.1)?;
            let d = rhs(x + h * c.0, z + h * c.1)?;
            Some((
                x + h / 6.0 * (a.0 + 2.0 * b.0 + 2.0 * c.0 + d.0),
                z + h / 6.0 * (a.1 + 2.0 * b.1 + 2.0 * c.1 + d.1),
            ))
        };
        let Some((nx, nz)) = stage() else {
            break Termination::DensityFloor;
        };
        x = nx;
        z = nz;
        steps += 1;
        if cfg.record_every == 0 || steps.is_multiple_of(cfg.record_every) {
            points.push((x, z));
        }
    };
    if points.last() != Some(&(x, z)) {
        points.push((x, z));
    }
    Ok(Trajectory {
        points,
        weight: 1.0,
        terminated_by,
    })
}

/// `n` equally spaced seeds on `[x_min, x_max]`, endpoints included; a single
/// seed sits at the midpoint.
pub fn seed_uniform(n: usize, x_min: f64, x_max: f64, z_start: f64) -> Result<Vec<(f64, f64)>> {
    if n == 0 || !(x_min < x_max) {
        return Err(Error::InvalidParameter(format!(
            "seed_uniform needs n >= 1 and x_min < x_max (n={n}, [{x_min}, {x_max}])"
        )));
    }
    if n == 1 {
        return Ok(vec![(0.5 * (x_min + x_max), z_start)]);
    }
    let step = (x_max - x_min) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let x = if i == n - 1 {
                x_max
            } else {
                x_min + i as f64 * step
            };
            (x, z_start)
        })
        .collect())
}

/// Number of table points for inverse-CDF sampling.
pub const CDF_TABLE_SIZE: usize = 4096;

/// `n` draws from `ρ(·, z_start)` restricted to `[x_min, x_max]`, by
/// inverse-CDF on a tabulated, trapezoid-integrated density.
pub fn seed_density_sampled<R: Fn(f64) -> f64>(
    n: usize,
    x_min: f64,
    x_max: f64,
    z_start: f64,
    rho: R,
    rng_seed: u64,
) -> Result<Vec<(f64, f64)>> {
    if n == 0 || !(x_min < x_max) {
        return Err(Error::InvalidParameter(format!(
            "seed_density_sampled needs n >= 1 and x_min < x_max (n={n}, [{x_min}, {x_max}])"
        )));
    }
    let m = CDF_TABLE_SIZE;
    let hx = (x_max - x_min) / (m - 1) as f64;
    let xs: Vec<f64> = (0..m).map(|j| x_min + j as f64 * hx).collect();
    let mut dens = Vec::with_capacity(m);
    for &x in &xs {
        let r = rho(x);
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("density {r} at x = {x}")));
        }
        dens.push(r);
    }
    let mut cdf = Vec::with_capacity(m);
    cdf.push(0.0);
    for j in 1..m {
        cdf.push(cdf[j - 1] + 0.5 * hx * (dens[j - 1] + dens[j]));
    }
    let total = cdf[m - 1];
    if !(total > 0.0) {
        return Err(Error::ZeroDensityRange);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok((0..n)
        .map(|_| {
            let target = rng.gen::<f64>() * total;
            // first index with cdf >= target
            let j = cdf.partition_point(|&c| c < target).clamp(1, m - 1);
            let (c0, c1) = (cdf[j - 1], cdf[j]);
            let t = if c1 > c0 {
                (target - c0) / (c1 - c0)
            } else {
                0.5
            };
            (xs[j - 1] + t * hx, z_start)
        })
        .collect())
}

/// Counts final `x` of screen-reaching trajectories in `bins` equal bins.
pub fn landing_histogram(trajs: &[Trajectory], bins: usize, x_min: f64, x_max: f64) -> Vec<usize> {
    let mut counts = vec![0usize; bins.max(1)];
    let width = (x_max - x_min) / counts.len() as f64;
    for t in trajs {
        if t.terminated_by != Termination::ReachedScreen {
            continue;
        }
        let x = t.last().0;
        if x < x_min || x > x_max {
            continue;
        }
        let i = (((x - x_min) / width) as usize).min(counts.len() - 1);
        counts[i] += 1;
    }
    counts
}

/// Mass of `rho` in each of `bins` equal bins, composite Simpson with
/// `sub` (even) panels per bin, normalised to unit total.
pub fn density_bin_masses<R: Fn(f64) -> f64>(
    rho: R,
    bins: usize,
    x_min: f64,
    x_max: f64,
    sub: usize,
) -> Vec<f64> {
    let sub = (sub.max(2) + 1) & !1;
    let width = (x_max - x_min) / bins as f64;
    let h = width / sub as f64;
    let masses: Vec<f64> = (0..bins)
        .map(|b| {
            let a = x_min + b as f64 * width;
            let terms: Vec<f64> = (0..=sub)
                .map(|j| {
                    let w = if j == 0 || j == sub {
                        1.0
                    } else if j % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    w * rho(a + j as f64 * h)
                })
                .collect();
            pairwise_sum(&terms) * h / 3.0
        })
        .collect();
    normalize(&masses)
}

pub fn normalize(values: &[f64]) -> Vec<f64> {
    let total = pairwise_sum(values);
    if total > 0.0 {
        values.iter().map(|v| v / total).collect()
    } else {
        values.to_vec()
    }
}

/// `½ Σ |p_i − q_i|` for two distributions on the same bins.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let d: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a - b).abs()).collect();
    0.5 * pairwise_sum(&d)
}

/// Number of adjacent trajectory pairs (in seed order) whose `x` ordering
/// flips at some shared step. Trajectories must come from seeds sorted by
/// `x` and share the same recorded z grid.
pub fn ordering_violations(trajs: &[Trajectory]) -> usize {
    let mut violations = 0;
    for pair in trajs.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        for (pa, pb) in a.points.iter().zip(&b.points) {
            if pa.1 != pb.1 {
                break;
            }
            if pa.0 > pb.0 {
                violations += 1;
            }
        }
    }
    violations
}

/// Local extrema of a sampled 1D profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrema {
    pub maxima: Vec<f64>,
    pub minima: Vec<f64>,
}

/// Scans `f` on `samples` equally spaced points over `[x_min, x_max]` and
/// reports strict interior local maxima and minima, each refined by a
/// parabola through the neighbouring samples.
pub fn scan_extrema<F: Fn(f64) -> f64>(f: F, x_min: f64, x_max: f64, samples: usize) -> Extrema {
    let h = (x_max - x_min) / (samples - 1) as f64;
    let ys: Vec<f64> = (0..samples).map(|i| f(x_min + i as f64 * h)).collect();
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    for i in 1..samples - 1 {
        let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
        let is_max = c > l && c >= r;
        let is_min = c < l && c <= r;
        if !(is_max || is_min) {
            continue;
        }
        let denom = l - 2.0 * c + r;
        let shift = if denom != 0.0 {
            0.5 * (l - r) / denom
        } else {
            0.0
        };
        let x = x_min + (i as f64 + shift) * h;
        if is_max {
            maxima.push(x);
        } else {
            minima.push(x);
        }
    }
    Extrema { maxima, minima }
}

/// Number of landing positions in each basin delimited by `minima`
/// (`minima.len() + 1` basins, left to right).
pub fn basin_occupancy(landings: &[f64], minima: &[f64]) -> Vec<usize> {
    let mut counts = vec![0usize; minima.len() + 1];
    for &x in landings {
        counts[minima.partition_point(|&m| m < x)] += 1;
    }
    counts
}

/// Width of the fringe holding the maximum nearest `center`: the distance
/// between the two minima that flank it.
pub fn central_fringe_width(ext: &Extrema, center: f64) -> Option<f64> {
    let peak = ext
        .maxima
        .iter()
        .copied()
        .min_by(|a, b| (a - center).abs().total_cmp(&(b - center).abs()))?;
    let right = ext.minima.iter().copied().find(|&m| m > peak)?;
    let left = ext.minima.iter().copied().rev().find(|&m| m < peak)?;
    Some(right - left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::{
        BeamParams, CurvatureFormula, SlitConfig, SlitVelocityField, VelocityMethod,
    };

    fn cfg(z_screen: f64, dz: f64) -> IntegratorConfig {
        IntegratorConfig {
            dz,
            z_screen,
            x_bounds: 30.0,
            max_steps: 1_000_000,
            vz_min: 0.1,
            record_every: 1,
        }
    }

    fn field(a: f64) -> SlitVelocityField {
        SlitVelocityField {
            params: BeamParams::from_waist_and_wavenumber(1.0, 100.0).unwrap(),
            slits: SlitConfig::new(a, CurvatureFormula::Standard).unwrap(),
            floor: 1e-12,
            method: VelocityMethod::Analytic,
        }
    }

    fn uniform_flow(vx: f64) -> impl Fn(f64, f64) -> MadelungSample + Sync {
        move |_x, _z| MadelungSample {
            rho: 1.0,
            vx,
            vz: 1.0,
            valid: true,
        }
    }

    #[test]
    fn uniform_flow_lands_exactly() {
        let t = integrate_bohmian(0.5, 0.0, &uniform_flow(0.25), &cfg(10.0, 0.3)).unwrap();
        assert_eq!(t.terminated_by, Termination::ReachedScreen);
        let (x, z) = t.last();
        assert_eq!(z, 10.0);
        assert!((x - 3.0).abs() < 1e-12);
        assert!(t.points.windows(2).all(|w| w[1].1 > w[0].1));
        assert_eq!(t.weight, 1.0);
    }

    #[test]
    fn terminations() {
        let c = IntegratorConfig {
            x_bounds: 1.0,
            ..cfg(10.0, 0.1)
        };
        let t = integrate_bohmian(0.0, 0.0, &uniform_flow(1.0), &c).unwrap();
        assert_eq!(t.terminated_by, Termination::LeftDomain);
        let c = IntegratorConfig {
            max_steps: 5,
            ..cfg(10.0, 0.1)
        };
        let t = integrate_bohmian(0.0, 0.0, &uniform_flow(0.0), &c).unwrap();
        assert_eq!(t.terminated_by, Termination::MaxSteps);
        assert_eq!(t.points.len(), 6);
        let walls = |x: f64, _z: f64| {
            if x > 0.5 {
                MadelungSample::below_floor(0.0)
            } else {
                MadelungSample {
                    rho: 1.0,
                    vx: 1.0,
                    vz: 1.0,
                    valid: true,
                }
            }
        };
        let t = integrate_bohmian(0.0, 0.0, &walls, &cfg(10.0, 0.1)).unwrap();
        assert_eq!(t.terminated_by, Termination::DensityFloor);
        assert!(t.last().0 <= 0.5 + 1e-12);
    }

    #[test]
    fn invalid_seeds() {
        let f = field(3.0);
        let e = integrate_bohmian(25.0, 0.0, &f, &cfg(10.0, 0.1)).unwrap_err();
        assert!(matches!(e, Error::SeedInvalid { .. }));
        let slow = |_x: f64, _z: f64| MadelungSample {
            rho: 1.0,
            vx: 0.0,
            vz: 0.01,
            valid: true,
        };
        assert!(matches!(
            integrate_bohmian(0.0, 0.0, &slow, &cfg(10.0, 0.1)),
            Err(Error::SeedInvalid { .. })
        ));
    }

    #[test]
    fn on_axis_stays_on_axis() {
        let f = field(0.0);
        let t = integrate_bohmian(0.0, 0.0, &f, &cfg(100.0, 0.25)).unwrap();
        assert_eq!(t.terminated_by, Termination::ReachedScreen);
        assert!(t.points.iter().all(|p| p.0.abs() <= 1e-10));
    }

    #[test]
    fn mirror_seeds_give_mirror_trajectories() {
        let f = field(3.0);
        let c = cfg(200.0, 0.25);
        for x0 in [0.3, 1.7, 3.0, 4.4] {
            let a = integrate_bohmian(x0, 0.0, &f, &c).unwrap();
            let b = integrate_bohmian(-x0, 0.0, &f, &c).unwrap();
            assert_eq!(a.points.len(), b.points.len());
            for (p, q) in a.points.iter().zip(&b.points) {
                assert!((p.0 + q.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn finite_difference_and_analytic_fields_agree() {
        let mut fd = field(3.0);
        fd.method = VelocityMethod::FiniteDifference {
            h_fd: fd.params.default_fd_step(),
        };
        let c = cfg(100.0, 0.5);
        let a = integrate_bohmian(2.2, 0.0, &field(3.0), &c).unwrap();
        let b = integrate_bohmian(2.2, 0.0, &fd, &c).unwrap();
        assert!((a.last().0 - b.last().0).abs() < 1e-4);
    }

    #[test]
    fn ray_examples() {
        let c = IntegratorConfig {
            x_bounds: 100.0,
            ..cfg(10.0, 0.01)
        };
        let one = |_x: f64, _z: f64| 1.0;
        let t = integrate_eikonal_ray((0.7, 0.0), |_, _| (0.0, 1.0), one, &c).unwrap();
        assert_eq!(t.terminated_by, Termination::ReachedScreen);
        assert!(t.points.iter().all(|p| (p.0 - 0.7).abs() < 1e-14));

        let d = std::f64::consts::FRAC_1_SQRT_2;
        let t = integrate_eikonal_ray((0.0, 0.0), move |_, _| (d, d), one, &c).unwrap();
        assert!(t.points.iter().all(|p| (p.0 - p.1).abs() < 1e-12));

        let radial = |x: f64, z: f64| {
            let r = (x * x + z * z).sqrt();
            (x / r, z / r)
        };
        for seed in [(0.3, 1.0), (-2.0, 0.5), (1.0, -0.2)] {
            let t = integrate_eikonal_ray(seed, radial, one, &c).unwrap();
            let r0 = (seed.0 * seed.0 + seed.1 * seed.1).sqrt();
            let (ux, uz) = (seed.0 / r0, seed.1 / r0);
            for p in &t.points {
                // distance from the line through the origin and the seed
                let resid = (p.0 * uz - p.1 * ux).abs();
                assert!(resid <= 1e-9, "resid {resid}");
            }
        }
        assert!(integrate_eikonal_ray((0.0, 0.0), |_, _| (0.0, 1.0), |_, _| -1.0, &c).is_err());
    }

    #[test]
    fn uniform_seed_examples() {
        assert_eq!(seed_uniform(1, -1.0, 3.0, 0.0).unwrap(), vec![(1.0, 0.0)]);
        let s: Vec<f64> = seed_uniform(3, -1.0, 1.0, 0.0)
            .unwrap()
            .iter()
            .map(|p| p.0)
            .collect();
        assert_eq!(s, vec![-1.0, 0.0, 1.0]);
        let s: Vec<f64> = seed_uniform(5, 0.0, 1.0, 0.0)
            .unwrap()
            .iter()
            .map(|p| p.0)
            .collect();
        for w in s.windows(2) {
            assert!((w[1] - w[0] - 0.25).abs() < 1e-15);
        }
        assert!(seed_uniform(0, 0.0, 1.0, 0.0).is_err());
        assert!(seed_uniform(3, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn density_seed_examples() {
        let n = 20_000;
        let s = seed_density_sampled(n, -1.0, 3.0, 0.0, |_| 2.0, 7).unwrap();
        let mean = s.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let sigma = 4.0 / 12f64.sqrt() / (n as f64).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * sigma, "uniform mean {mean}");

        let (mu, sd) = (0.7, 0.4);
        let s = seed_density_sampled(
            n,
            -5.0,
            5.0,
            2.0,
            |x| (-(x - mu) * (x - mu) / (2.0 * sd * sd)).exp(),
            11,
        )
        .unwrap();
        let mean = s.iter().map(|p| p.0).sum::<f64>() / n as f64;
        assert!(
            (mean - mu).abs() < 3.0 * sd / (n as f64).sqrt(),
            "gauss mean {mean}"
        );
        assert!(s.iter().all(|p| p.1 == 2.0));

        let a = seed_density_sampled(100, -1.0, 1.0, 0.0, |x| 1.0 + x * x, 42).unwrap();
        let b = seed_density_sampled(100, -1.0, 1.0, 0.0, |x| 1.0 + x * x, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            seed_density_sampled(10, -1.0, 1.0, 0.0, |_| 0.0, 1).unwrap_err(),
            Error::ZeroDensityRange
        );
    }

    fn landed_at(x: f64) -> Trajectory {
        Trajectory {
            points: vec![(0.0, 0.0), (x, 1.0)],
            weight: 1.0,
            terminated_by: Termination::ReachedScreen,
        }
    }

    #[test]
    fn histogram_examples() {
        let trajs: Vec<_> = (0..9).map(|_| landed_at(0.0)).collect();
        assert_eq!(landing_histogram(&trajs, 3, -1.0, 1.0), vec![0, 9, 0]);

        let mut sym: Vec<_> = [-0.9, -0.6, -0.1, 0.1, 0.6, 0.9]
            .iter()
            .map(|&x| landed_at(x))
            .collect();
        let h = landing_histogram(&sym, 4, -1.0, 1.0);
        assert_eq!(h, h.iter().rev().copied().collect::<Vec<_>>());

        sym[0].terminated_by = Termination::LeftDomain;
        assert_eq!(
            landing_histogram(&sym, 4, -1.0, 1.0).iter().sum::<usize>(),
            5
        );
        assert_eq!(
            landing_histogram(&[landed_at(1.0)], 4, -1.0, 1.0),
            vec![0, 0, 0, 1]
        );
    }

    #[test]
    fn bin_masses_and_tv() {
        let m = density_bin_masses(|x| x, 2, 0.0, 2.0, 8);
        assert!((m[0] - 0.25).abs() < 1e-14 && (m[1] - 0.75).abs() < 1e-14);
        assert_eq!(total_variation(&[0.5, 0.5], &[1.0, 0.0]), 0.5);
    }

    #[test]
    fn crossings_detected() {
        let a = Trajectory {
            points: vec![(0.0, 0.0), (0.5, 1.0), (0.9, 2.0)],
            weight: 1.0,
            terminated_by: Termination::ReachedScreen,
        };
        let mut b = a.clone();
        b.points = vec![(0.1, 0.0), (0.6, 1.0), (0.8, 2.0)];
        assert_eq!(ordering_violations(&[a.clone(), b.clone()]), 1);
        b.points[2].0 = 1.0;
        assert_eq!(ordering_violations(&[a, b]), 0);
    }

    #[test]
    fn extrema_of_cosine() {
        let e = scan_extrema(|x| x.cos(), -4.0, 10.0, 2001);
        let pi = std::f64::consts::PI;
        assert_eq!(e.maxima.len(), 2);
        assert!((e.maxima[0]).abs() < 1e-6 && (e.maxima[1] - 2.0 * pi).abs() < 1e-6);
        assert_eq!(e.minima.len(), 3);
        assert!((central_fringe_width(&e, 0.0).unwrap() - 2.0 * pi).abs() < 1e-5);
        assert_eq!(
            basin_occupancy(&[-1.0, 0.0, 4.0, 9.0], &e.minima),
            vec![0, 2, 2, 0]
        );
    }
}
