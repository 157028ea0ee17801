//! One-dimensional paraxial propagation by direct quadrature of the Fresnel
//! convolution.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::residual::pairwise_sum;
use crate::ComplexValue;

/// Edge modulus allowed relative to the peak before a window is rejected.
pub const EDGE_TOLERANCE: f64 = 1e-6;

const MIN_SAMPLES: usize = 16;

/// Complex field sampled on a uniform transverse grid `x_i = x0 + i·hx`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseField {
    pub samples: Vec<ComplexValue>,
    pub hx: f64,
    pub x0: f64,
    pub k: f64,
}

impl TransverseField {
    pub fn new(samples: Vec<ComplexValue>, hx: f64, x0: f64, k: f64) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "transverse field needs at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if !(hx > 0.0 && hx.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "hx must be positive, got {hx}"
            )));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "k must be positive, got {k}"
            )));
        }
        Ok(TransverseField { samples, hx, x0, k })
    }

    /// Samples `f` on `n` points spanning `[x_min, x_max]` inclusive.
    pub fn from_fn<F: Fn(f64) -> ComplexValue>(
        n: usize,
        x_min: f64,
        x_max: f64,
        k: f64,
        f: F,
    ) -> Result<Self> {
        if n < 2 || !(x_max > x_min) {
            return Err(Error::InvalidParameter(format!(
                "bad window [{x_min}, {x_max}] with {n} samples"
            )));
        }
        let hx = (x_max - x_min) / (n - 1) as f64;
        let samples = (0..n).map(|i| f(x_min + i as f64 * hx)).collect();
        Self::new(samples, hx, x_min, k)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }

    pub fn peak_modulus(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// `Σ|E|²·hx`.
    pub fn energy(&self) -> f64 {
        let terms: Vec<f64> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        pairwise_sum(&terms) * self.hx
    }

    fn check_window(&self) -> Result<()> {
        let peak = self.peak_modulus();
        let edge = self.samples[0]
            .norm()
            .max(self.samples[self.len() - 1].norm());
        if !(peak > 0.0) || edge > EDGE_TOLERANCE * peak {
            return Err(Error::WindowTooNarrow { edge, peak });
        }
        Ok(())
    }

    /// Half-width at which `|E|²` falls to `e⁻²` of its peak, measured
    /// outward from the peak on both sides and averaged. Crossings are
    /// located by linear interpolation of `ln|E|`.
    pub fn intensity_half_width(&self) -> Option<f64> {
        let mods: Vec<f64> = self.samples.iter().map(|s| s.norm()).collect();
        let (ipk, &peak) = mods.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
        let target = (peak * (-1.0f64).exp()).ln();
        let crossing = |step: isize| -> Option<f64> {
            let mut i = ipk as isize;
            loop {
                let next = i + step;
                if next < 0 || next as usize >= mods.len() {
                    return None;
                }
                let (a, b) = (mods[i as usize].ln(), mods[next as usize].ln());
                if b <= target {
                    let t = (a - target) / (a - b);
                    return Some(self.x(i as usize) + step as f64 * t * self.hx);
                }
                i = next;
            }
        };
        let right = crossing(1)?;
        let left = crossing(-1)?;
        Some(0.5 * (right - left))
    }
}

/// `G(dx, z) = sqrt(k/2πz)·exp(i(k dx²/2z − π/4))`.
pub fn fresnel_kernel(dx: f64, z: f64, k: f64) -> Result<ComplexValue> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveDistance(z));
    }
    Ok(kernel_unchecked(dx, z, k))
}

fn kernel_unchecked(dx: f64, z: f64, k: f64) -> ComplexValue {
    let modulus = (k / (2.0 * std::f64::consts::PI * z)).sqrt();
    ComplexValue::from_polar(
        modulus,
        k * dx * dx / (2.0 * z) - std::f64::consts::FRAC_PI_4,
    )
}

/// Propagates `field` a distance `z` onto the same grid:
/// `E(x, z) = e^{ikz} ∫ G(x − x′, z) E(x′, 0) dx′` by the trapezoid rule.
pub fn propagate(field: &TransverseField, z: f64) -> Result<TransverseField> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveDistance(z));
    }
    field.check_window()?;
    let n = field.len();
    let (hx, k) = (field.hx, field.k);
    // kernel[n - 1 + d] = G(d·hx)
    let kernel: Vec<ComplexValue> = (0..2 * n - 1)
        .map(|m| kernel_unchecked((m as f64 - (n - 1) as f64) * hx, z, k))
        .collect();
    let mut weighted: Vec<ComplexValue> = field.samples.iter().map(|s| s * hx).collect();
    weighted[0] *= 0.5;
    weighted[n - 1] *= 0.5;
    let carrier = ComplexValue::cis(k * z);
    let samples: Vec<ComplexValue> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row = &kernel[n - 1 - i..2 * n - 1 - i];
            // row[j] = G((i − j)·hx); the kernel is even in dx
            let sum = row
                .iter()
                .rev()
                .zip(&weighted)
                .fold(ComplexValue::new(0.0, 0.0), |acc, (g, e)| acc + g * e);
            sum * carrier
        })
        .collect();
    TransverseField::new(samples, hx, field.x0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::{
        beam_width, out_of_plane_factor, single_beam, slit_field, BeamParams, CurvatureFormula,
        SlitConfig,
    };
    use crate::trajectory::{central_fringe_width, scan_extrema};

    fn params() -> BeamParams {
        BeamParams::from_waist_and_wavenumber(1.0, 100.0).unwrap()
    }

    fn waist(p: &BeamParams, n: usize, half: f64) -> TransverseField {
        TransverseField::from_fn(n, -half, half, p.k(), |x| {
            ComplexValue::new((-x * x / (p.w0() * p.w0())).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn kernel_examples() {
        let (z, k) = (7.0, 30.0);
        let m = (k / (2.0 * std::f64::consts::PI * z)).sqrt();
        for dx in [0.0, 0.3, -2.0, 11.0] {
            assert!((fresnel_kernel(dx, z, k).unwrap().norm() - m).abs() < 1e-14);
        }
        assert!(
            (fresnel_kernel(0.0, z, k).unwrap().arg() + std::f64::consts::FRAC_PI_4).abs() < 1e-15
        );
        assert_eq!(
            fresnel_kernel(0.0, 0.0, k),
            Err(Error::NonpositiveDistance(0.0))
        );
        assert_eq!(
            fresnel_kernel(0.0, -1.0, k),
            Err(Error::NonpositiveDistance(-1.0))
        );
    }

    fn kernel_mass(half: f64, z: f64, k: f64, n: usize) -> f64 {
        let h = 2.0 * half / (n - 1) as f64;
        let terms: Vec<ComplexValue> = (0..n)
            .map(|i| {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                fresnel_kernel(-half + i as f64 * h, z, k).unwrap() * (w * h)
            })
            .collect();
        terms.iter().sum::<ComplexValue>().norm()
    }

    #[test]
    fn kernel_integrates_to_unit_modulus() {
        let (z, k) = (25.0f64, 100.0);
        let scale = (z / k).sqrt();
        // a sharp cut at half-width H leaves a tail of modulus ≤ sqrt(2z/k)/(H·sqrt(π))
        for half in [20.0 * scale, 40.0 * scale, 70.0 * scale] {
            let bound = (2.0 * z / k).sqrt() / (half * std::f64::consts::PI.sqrt());
            let mass = kernel_mass(half, z, k, 40001);
            assert!((mass - 1.0).abs() <= 1.05 * bound, "H {half}: {mass}");
        }
        let mass = kernel_mass(200.0 * scale, z, k, 80001);
        assert!((mass - 1.0).abs() < 0.01, "{mass}");
    }

    #[test]
    fn rejects_narrow_window_and_bad_distance() {
        let p = params();
        let narrow = waist(&p, 64, 2.0);
        assert!(matches!(
            propagate(&narrow, 10.0),
            Err(Error::WindowTooNarrow { .. })
        ));
        let ok = waist(&p, 256, 8.0);
        assert_eq!(
            propagate(&ok, 0.0).unwrap_err(),
            Error::NonpositiveDistance(0.0)
        );
        assert!(
            TransverseField::new(vec![ComplexValue::new(1.0, 0.0); 15], 0.1, 0.0, 1.0).is_err()
        );
    }

    #[test]
    fn waist_width_energy_and_semigroup() {
        let p = params();
        let input = waist(&p, 4096, 20.0);
        for z in [0.5 * p.z0(), p.z0()] {
            let out = propagate(&input, z).unwrap();
            let w = out.intensity_half_width().unwrap();
            let expect = beam_width(z, &p);
            assert!((w / expect - 1.0).abs() < 0.005, "z {z}: {w} vs {expect}");
            assert!((out.energy() / input.energy() - 1.0).abs() < 0.005);
        }
        let z = p.z0();
        let once = propagate(&input, z).unwrap();
        let twice = propagate(&propagate(&input, 0.5 * z).unwrap(), 0.5 * z).unwrap();
        let peak = once.peak_modulus();
        for (a, b) in once.samples.iter().zip(&twice.samples) {
            assert!((a - b).norm() <= 1e-6 * peak);
        }
    }

    #[test]
    fn matches_analytic_beam() {
        let p = params();
        let input = waist(&p, 4096, 20.0);
        let z = p.z0();
        let out = propagate(&input, z).unwrap();
        let analytic = |x: f64| {
            single_beam(x, z, 0.0, &p, CurvatureFormula::Standard) * ComplexValue::cis(p.k() * z)
                / out_of_plane_factor(z, &p)
        };
        let peak = out.peak_modulus();
        let (lo, hi) = (out.len() / 10, out.len() - out.len() / 10);
        for i in lo..hi {
            assert!((out.samples[i] - analytic(out.x(i))).norm() <= 0.01 * peak);
        }
    }

    #[test]
    fn two_slit_fringe_period() {
        let p = params();
        let slits = SlitConfig::new(3.0, CurvatureFormula::Standard).unwrap();
        let input =
            TransverseField::from_fn(4096, -60.0, 60.0, p.k(), |x| slit_field(x, 0.0, &p, &slits))
                .unwrap();
        let z = 500.0;
        let out = propagate(&input, z).unwrap();
        let intensity = |x: f64| out.samples[((x - out.x0) / out.hx).round() as usize].norm_sqr();
        let ext = scan_extrema(intensity, out.x0, out.x(out.len() - 1), out.len());
        let width = central_fringe_width(&ext, 0.0).unwrap();
        let expect = std::f64::consts::PI * z / (p.k() * 3.0);
        assert!((width / expect - 1.0).abs() < 0.02, "{width} vs {expect}");
    }
}
