//! Finite-difference tensor calculus on uniform 4D Minkowski lattices.
//!
//! Sites are stored with the last axis fastest. Derivatives are
//! second-order central differences; periodic axes wrap, the others use
//! one-sided second-order stencils on their first and last planes.
//! Vector fields hold contravariant components; contravariant derivatives
//! `∂^μ = η^{μν}∂_ν` are the covariant ones with spatial signs flipped.

mod kappa;
mod ops;
mod waves;

pub use kappa::{kappa_k1, kappa_k2, KappaEstimate, DIVERGENCE_TOLERANCE};
pub use ops::{
    bianchi_residual, dalembertian, divergence, field_tensor, first_model_residuals,
    maxwell_residual, proca_residual, proca_residual_tensor, wave_residual,
};
pub use waves::{make_plane_wave, plane_wave_tensor};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::minkowski::METRIC;

const MIN_POINTS: usize = 5;

/// Index pairs `(α, β)`, `α < β`, of the stored tensor components.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Uniform lattice with coordinates `x^μ = origin_μ + i_μ h_μ` (`x⁰ = ct`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice4 {
    pub dims: [usize; 4],
    pub h: [f64; 4],
    pub origin: [f64; 4],
    pub periodic: [bool; 4],
}

impl Lattice4 {
    pub fn new(dims: [usize; 4], h: [f64; 4], periodic: [bool; 4]) -> Result<Self> {
        for mu in 0..4 {
            if dims[mu] < MIN_POINTS {
                return Err(Error::InvalidParameter(format!(
                    "lattice axis {mu} has {} points, need at least {MIN_POINTS}",
                    dims[mu]
                )));
            }
            if !(h[mu] > 0.0 && h[mu].is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "lattice spacing h{mu} must be positive, got {}",
                    h[mu]
                )));
            }
        }
        Ok(Lattice4 {
            dims,
            h,
            origin: [0.0; 4],
            periodic,
        })
    }

    pub fn periodic(dims: [usize; 4], h: [f64; 4]) -> Result<Self> {
        Self::new(dims, h, [true; 4])
    }

    /// Same extent, twice the points per axis, half the spacing.
    pub fn refined(&self) -> Self {
        let mut fine = *self;
        for mu in 0..4 {
            fine.dims[mu] *= 2;
            fine.h[mu] *= 0.5;
        }
        fine
    }

    pub fn is_fully_periodic(&self) -> bool {
        self.periodic.iter().all(|&p| p)
    }

    pub fn site_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Extent `n_μ h_μ` (the period on a periodic axis).
    pub fn length(&self, mu: usize) -> f64 {
        self.dims[mu] as f64 * self.h[mu]
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.iter().product()
    }

    fn stride(&self, mu: usize) -> usize {
        self.dims[mu + 1..].iter().product()
    }

    pub fn coords_of(&self, site: usize) -> [usize; 4] {
        let mut c = [0; 4];
        let mut rest = site;
        for mu in (0..4).rev() {
            c[mu] = rest % self.dims[mu];
            rest /= self.dims[mu];
        }
        c
    }

    pub fn position(&self, site: usize) -> [f64; 4] {
        let c = self.coords_of(site);
        std::array::from_fn(|mu| self.origin[mu] + c[mu] as f64 * self.h[mu])
    }

    /// Samples `f(x)` at every site.
    pub fn sample<F: Fn([f64; 4]) -> f64 + Sync>(&self, f: F) -> Vec<f64> {
        (0..self.site_count())
            .into_par_iter()
            .map(|s| f(self.position(s)))
            .collect()
    }

    /// Discrete `∂_μ` of a site array.
    pub fn partial(&self, values: &[f64], mu: usize) -> Vec<f64> {
        let (n, stride, h) = (self.dims[mu], self.stride(mu), self.h[mu]);
        let periodic = self.periodic[mu];
        (0..values.len())
            .into_par_iter()
            .map(|s| {
                let i = (s / stride) % n;
                let at = |j: usize| values[s - i * stride + j * stride];
                if periodic {
                    (at((i + 1) % n) - at((i + n - 1) % n)) / (2.0 * h)
                } else if i == 0 {
                    (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
                } else if i == n - 1 {
                    (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * h)
                } else {
                    (at(i + 1) - at(i - 1)) / (2.0 * h)
                }
            })
            .collect()
    }

    /// Discrete `∂^μ = η^{μμ}∂_μ`.
    pub fn partial_upper(&self, values: &[f64], mu: usize) -> Vec<f64> {
        let mut d = self.partial(values, mu);
        if METRIC[mu] < 0.0 {
            d.par_iter_mut().for_each(|v| *v = -*v);
        }
        d
    }

    /// Discrete `∂_μ∂_μ` with the compact three-point stencil.
    pub fn second_partial(&self, values: &[f64], mu: usize) -> Vec<f64> {
        let (n, stride, h) = (self.dims[mu], self.stride(mu), self.h[mu]);
        let periodic = self.periodic[mu];
        let h2 = h * h;
        (0..values.len())
            .into_par_iter()
            .map(|s| {
                let i = (s / stride) % n;
                let at = |j: usize| values[s - i * stride + j * stride];
                if periodic {
                    (at((i + 1) % n) - 2.0 * at(i) + at((i + n - 1) % n)) / h2
                } else if i == 0 {
                    (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2
                } else if i == n - 1 {
                    (2.0 * at(i) - 5.0 * at(i - 1) + 4.0 * at(i - 2) - at(i - 3)) / h2
                } else {
                    (at(i + 1) - 2.0 * at(i) + at(i - 1)) / h2
                }
            })
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.site_count() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarLattice {
    pub lattice: Lattice4,
    pub values: Vec<f64>,
}

impl ScalarLattice {
    pub fn new(lattice: Lattice4, values: Vec<f64>) -> Result<Self> {
        lattice.check_len(values.len())?;
        Ok(ScalarLattice { lattice, values })
    }

    pub fn from_fn<F: Fn([f64; 4]) -> f64 + Sync>(lattice: Lattice4, f: F) -> Self {
        ScalarLattice {
            values: lattice.sample(f),
            lattice,
        }
    }
}

/// Contravariant vector field `π^μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VecFieldLattice {
    pub lattice: Lattice4,
    pub components: [Vec<f64>; 4],
}

impl VecFieldLattice {
    pub fn new(lattice: Lattice4, components: [Vec<f64>; 4]) -> Result<Self> {
        for c in &components {
            lattice.check_len(c.len())?;
        }
        Ok(VecFieldLattice {
            lattice,
            components,
        })
    }

    pub fn from_fn<F: Fn([f64; 4]) -> [f64; 4] + Sync>(lattice: Lattice4, f: F) -> Self {
        let components = std::array::from_fn(|mu| lattice.sample(|x| f(x)[mu]));
        VecFieldLattice {
            lattice,
            components,
        }
    }

    pub fn constant(lattice: Lattice4, value: [f64; 4]) -> Self {
        let n = lattice.site_count();
        VecFieldLattice {
            lattice,
            components: value.map(|v| vec![v; n]),
        }
    }

    pub fn at(&self, site: usize) -> [f64; 4] {
        std::array::from_fn(|mu| self.components[mu][site])
    }

    /// Pools every component of every site (Euclidean RMS).
    pub fn rms(&self) -> f64 {
        let all: Vec<f64> = self.components.concat();
        crate::residual::rms(&all)
    }
}

/// Antisymmetric `K^{αβ}`; only the six components in [`PAIRS`] are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymTensorLattice {
    pub lattice: Lattice4,
    pub components: [Vec<f64>; 6],
}

impl AntisymTensorLattice {
    pub fn new(lattice: Lattice4, components: [Vec<f64>; 6]) -> Result<Self> {
        for c in &components {
            lattice.check_len(c.len())?;
        }
        Ok(AntisymTensorLattice {
            lattice,
            components,
        })
    }

    pub fn zeros(lattice: Lattice4) -> Self {
        let n = lattice.site_count();
        AntisymTensorLattice {
            lattice,
            components: std::array::from_fn(|_| vec![0.0; n]),
        }
    }

    /// Storage slot and sign of `K^{αβ}`; `None` on the diagonal.
    pub fn slot(alpha: usize, beta: usize) -> Option<(usize, f64)> {
        if alpha == beta {
            return None;
        }
        let (lo, hi, sign) = if alpha < beta {
            (alpha, beta, 1.0)
        } else {
            (beta, alpha, -1.0)
        };
        PAIRS.iter().position(|&p| p == (lo, hi)).map(|k| (k, sign))
    }

    /// `K^{αβ}` at a site, honouring antisymmetry.
    pub fn get(&self, alpha: usize, beta: usize, site: usize) -> f64 {
        match Self::slot(alpha, beta) {
            Some((k, sign)) => sign * self.components[k][site],
            None => 0.0,
        }
    }

    pub fn rms(&self) -> f64 {
        let all: Vec<f64> = self.components.concat();
        crate::residual::rms(&all)
    }
}
