//! Closed-form two-slit Gaussian field and its Madelung decomposition.
//!
//! The field is the sum of two paraxial Gaussian beams with common waist
//! plane `z = 0`, centred at `x = ±a`:
//!
//! ```text
//! v(x,z) = W0/W(z) Σ± exp[-(x∓a)²/W²(z)] exp[i k (x∓a)² C(z)/2 - i ζ(z)]
//! ```
//!
//! with `C = 1/R` the inverse wavefront curvature. The full stationary wave
//! is `u = v·exp(ikz)`; its density `ρ = |u|²` and phase `S̃ = λ·arg u` define
//! the planar velocity field `v_i = ∂_i S̃`.
//!
//! `v` is the `y = 0` slice of a beam that is Gaussian in both transverse
//! directions, which is why the amplitude falls as `W0/W` and the axial
//! phase lag is the full `ζ`. A beam that is Gaussian in `x` alone carries
//! `sqrt(W0/W)·exp(-iζ/2)` instead; see [`out_of_plane_factor`].

use crate::error::{Error, Result};
use crate::trajectory::PlanarVelocityField;
use crate::ComplexValue;

/// Relative tolerance on `W0 = sqrt(2 z0 / k)`.
const CONSISTENCY_TOL: f64 = 1e-12;

/// Gaussian beam parameters: waist radius, Rayleigh range, wavenumber and the
/// phase length scale `λ` used to turn phase into `S̃ = λ·phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    w0: f64,
    z0: f64,
    k: f64,
    lambda: f64,
}

impl BeamParams {
    pub fn from_waist_and_wavenumber(w0: f64, k: f64) -> Result<Self> {
        Self::checked(w0, 0.5 * k * w0 * w0, k)
    }

    pub fn from_waist_and_rayleigh(w0: f64, z0: f64) -> Result<Self> {
        Self::checked(w0, z0, 2.0 * z0 / (w0 * w0))
    }

    pub fn from_rayleigh_and_wavenumber(z0: f64, k: f64) -> Result<Self> {
        Self::checked((2.0 * z0 / k).sqrt(), z0, k)
    }

    /// All three values given explicitly; they must satisfy
    /// `W0 = sqrt(2 z0 / k)` to 1e-12 relative.
    pub fn new(w0: f64, z0: f64, k: f64) -> Result<Self> {
        Self::checked(w0, z0, k)
    }

    fn checked(w0: f64, z0: f64, k: f64) -> Result<Self> {
        for (name, v) in [("w0", w0), ("z0", z0), ("k", k)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let derived = (2.0 * z0 / k).sqrt();
        if ((w0 - derived) / w0).abs() > CONSISTENCY_TOL {
            return Err(Error::InvalidParameter(format!(
                "w0 = {w0} inconsistent with sqrt(2 z0 / k) = {derived}"
            )));
        }
        Ok(BeamParams {
            w0,
            z0,
            k,
            lambda: 1.0 / k,
        })
    }

    /// Overrides the default `λ = 1/k`.
    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Default finite-difference step `min(W0, λ)/100`.
    pub fn default_fd_step(&self) -> f64 {
        self.w0.min(self.lambda) / 100.0
    }

    /// Default density floor: 1e-12 of the on-axis waist density of a single
    /// beam (which is 1 for unit amplitude).
    pub fn default_density_floor(&self) -> f64 {
        1e-12
    }
}

/// Which expression to use for the wavefront radius `R(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurvatureFormula {
    /// `R = z (1 + z0²/z²)`, i.e. `C = z / (z² + z0²)`.
    #[default]
    Standard,
    /// `R = z (1 + z²/z0²)`. Singular at the waist; `C(0)` is taken as 0.
    Cubic,
}

impl std::str::FromStr for CurvatureFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(CurvatureFormula::Standard),
            "cubic" => Ok(CurvatureFormula::Cubic),
            other => Err(Error::InvalidParameter(format!(
                "unknown curvature formula '{other}' (expected standard|cubic)"
            ))),
        }
    }
}

impl std::fmt::Display for CurvatureFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvatureFormula::Standard => f.write_str("standard"),
            CurvatureFormula::Cubic => f.write_str("cubic"),
        }
    }
}

/// Slit geometry: the two beams sit at `x = ±a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitConfig {
    pub a: f64,
    pub curvature_formula: CurvatureFormula,
}

impl SlitConfig {
    pub fn new(a: f64, curvature_formula: CurvatureFormula) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "slit half-separation must be >= 0, got {a}"
            )));
        }
        Ok(SlitConfig {
            a,
            curvature_formula,
        })
    }
}

/// Density and planar velocity at one point. When `valid` is false the
/// density fell below the floor and both velocity components are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MadelungSample {
    pub rho: f64,
    pub vx: f64,
    pub vz: f64,
    pub valid: bool,
}

impl MadelungSample {
    pub fn below_floor(rho: f64) -> Self {
        MadelungSample {
            rho,
            vx: f64::NAN,
            vz: f64::NAN,
            valid: false,
        }
    }
}

pub fn beam_width(z: f64, p: &BeamParams) -> f64 {
    let t = z / p.z0;
    p.w0 * (1.0 + t * t).sqrt()
}

/// Inverse wavefront radius `C = 1/R`, finite everywhere.
pub fn inverse_curvature(z: f64, p: &BeamParams, f: CurvatureFormula) -> f64 {
    match f {
        CurvatureFormula::Standard => z / (z * z + p.z0 * p.z0),
        CurvatureFormula::Cubic => {
            if z == 0.0 {
                0.0
            } else {
                1.0 / (z * (1.0 + z * z / (p.z0 * p.z0)))
            }
        }
    }
}

fn inverse_curvature_dz(z: f64, p: &BeamParams, f: CurvatureFormula) -> f64 {
    let z0s = p.z0 * p.z0;
    let d = z * z + z0s;
    match f {
        CurvatureFormula::Standard => (z0s - z * z) / (d * d),
        CurvatureFormula::Cubic => {
            if z == 0.0 {
                0.0
            } else {
                -z0s * (z0s + 3.0 * z * z) / (z * z * d * d)
            }
        }
    }
}

pub fn gouy_phase(z: f64, p: &BeamParams) -> f64 {
    (z / p.z0).atan()
}

/// Per-plane quantities shared by both beam terms.
struct Plane {
    amp: f64,
    inv_w2: f64,
    curv: f64,
    gouy: f64,
}

impl Plane {
    fn at(z: f64, p: &BeamParams, f: CurvatureFormula) -> Self {
        let w = beam_width(z, p);
        Plane {
            amp: p.w0 / w,
            inv_w2: 1.0 / (w * w),
            curv: inverse_curvature(z, p, f),
            gouy: gouy_phase(z, p),
        }
    }

    /// Complex Gaussian coefficient `β` with `term = amp·exp(-β d² - iζ)`.
    fn beta(&self, k: f64) -> ComplexValue {
        ComplexValue::new(self.inv_w2, -0.5 * k * self.curv)
    }

    fn term(&self, d: f64, k: f64) -> ComplexValue {
        let q = -self.beta(k) * (d * d) - ComplexValue::new(0.0, self.gouy);
        q.exp() * self.amp
    }
}

/// One Gaussian beam centred at `x = center`.
pub fn single_beam(
    x: f64,
    z: f64,
    center: f64,
    p: &BeamParams,
    f: CurvatureFormula,
) -> ComplexValue {
    Plane::at(z, p, f).term(x - center, p.k)
}

/// The two-slit field `v(x, z)` without the carrier.
pub fn slit_field(x: f64, z: f64, p: &BeamParams, s: &SlitConfig) -> ComplexValue {
    let plane = Plane::at(z, p, s.curvature_formula);
    plane.term(x - s.a, p.k) + plane.term(x + s.a, p.k)
}

/// `u = v·exp(ikz)`; the `exp(-iωt)` factor is dropped.
pub fn carrier_field(x: f64, z: f64, p: &BeamParams, s: &SlitConfig) -> ComplexValue {
    slit_field(x, z, p, s) * ComplexValue::cis(p.k * z)
}

/// `x`-independent factor separating the slice of the two-dimensional-waist
/// beam from a beam that is Gaussian in `x` only:
/// `slit_field = out_of_plane_factor · line_field`.
pub fn out_of_plane_factor(z: f64, p: &BeamParams) -> ComplexValue {
    let amp = (p.w0 / beam_width(z, p)).sqrt();
    ComplexValue::from_polar(amp, -0.5 * gouy_phase(z, p))
}

/// Density and velocity from central differences of [`carrier_field`].
///
/// `v_i = λ Im(ū ∂_i u)/|u|²`, which equals `∂_i S̃` wherever `u ≠ 0`
/// without any phase unwrapping.
pub fn madelung(
    x: f64,
    z: f64,
    p: &BeamParams,
    s: &SlitConfig,
    h_fd: f64,
    floor: f64,
) -> MadelungSample {
    let u = carrier_field(x, z, p, s);
    let rho = u.norm_sqr();
    if !(rho >= floor) || rho == 0.0 {
        return MadelungSample::below_floor(rho);
    }
    let inv_2h = 0.5 / h_fd;
    let dux = (carrier_field(x + h_fd, z, p, s) - carrier_field(x - h_fd, z, p, s)) * inv_2h;
    let duz = (carrier_field(x, z + h_fd, p, s) - carrier_field(x, z - h_fd, p, s)) * inv_2h;
    let uc = u.conj();
    MadelungSample {
        rho,
        vx: p.lambda * (uc * dux).im / rho,
        vz: p.lambda * (uc * duz).im / rho,
        valid: true,
    }
}

/// `v`, `∂v/∂x` and `∂v/∂z` in closed form.
pub fn slit_field_gradient(
    x: f64,
    z: f64,
    p: &BeamParams,
    s: &SlitConfig,
) -> (ComplexValue, ComplexValue, ComplexValue) {
    let f = s.curvature_formula;
    let plane = Plane::at(z, p, f);
    let beta = plane.beta(p.k);
    let z0s = p.z0 * p.z0;
    let d2 = z * z + z0s;
    let dlog_amp = -z / d2;
    let dinv_w2 = -2.0 * z * z0s / (p.w0 * p.w0 * d2 * d2);
    let dbeta = ComplexValue::new(dinv_w2, -0.5 * p.k * inverse_curvature_dz(z, p, f));
    let dgouy = p.z0 / d2;

    let mut v = ComplexValue::new(0.0, 0.0);
    let mut vx = v;
    let mut vz = v;
    for d in [x - s.a, x + s.a] {
        let t = plane.term(d, p.k);
        v += t;
        vx += t * (-2.0 * d) * beta;
        vz += t * (-dbeta * (d * d) + ComplexValue::new(dlog_amp, -dgouy));
    }
    (v, vx, vz)
}

/// Madelung sample from the closed-form gradient (no differencing).
pub fn madelung_analytic(
    x: f64,
    z: f64,
    p: &BeamParams,
    s: &SlitConfig,
    floor: f64,
) -> MadelungSample {
    let (v, dvx, dvz) = slit_field_gradient(x, z, p, s);
    let rho = v.norm_sqr();
    if !(rho >= floor) || rho == 0.0 {
        return MadelungSample::below_floor(rho);
    }
    let vc = v.conj();
    MadelungSample {
        rho,
        vx: p.lambda * (vc * dvx).im / rho,
        vz: p.lambda * ((vc * dvz).im / rho + p.k),
        valid: true,
    }
}

/// Velocity field of the two-slit beam, evaluated either by central
/// differences on the carrier or from the closed-form gradient.
#[derive(Debug, Clone, Copy)]
pub struct SlitVelocityField {
    pub params: BeamParams,
    pub slits: SlitConfig,
    pub floor: f64,
    pub method: VelocityMethod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VelocityMethod {
    FiniteDifference { h_fd: f64 },
    Analytic,
}

impl SlitVelocityField {
    pub fn rho(&self, x: f64, z: f64) -> f64 {
        slit_field(x, z, &self.params, &self.slits).norm_sqr()
    }
}

impl PlanarVelocityField for SlitVelocityField {
    fn sample(&self, x: f64, z: f64) -> MadelungSample {
        match self.method {
            VelocityMethod::FiniteDifference { h_fd } => {
                madelung(x, z, &self.params, &self.slits, h_fd, self.floor)
            }
            VelocityMethod::Analytic => {
                madelung_analytic(x, z, &self.params, &self.slits, self.floor)
            }
        }
    }
}
