use rayon::prelude::*;

use super::{AntisymTensorLattice, Lattice4, ScalarLattice, VecFieldLattice, PAIRS};
use crate::error::{Error, Result};
use crate::minkowski::METRIC;
use crate::residual::ResidualReport;

fn add_into(acc: &mut [f64], term: &[f64], weight: f64) {
    acc.par_iter_mut()
        .zip(term)
        .for_each(|(a, t)| *a += weight * t);
}

/// `∂_μπ^μ`.
pub fn divergence(pi: &VecFieldLattice) -> ScalarLattice {
    let lat = pi.lattice;
    let mut div = vec![0.0; lat.site_count()];
    for mu in 0..4 {
        add_into(&mut div, &lat.partial(&pi.components[mu], mu), 1.0);
    }
    ScalarLattice {
        lattice: lat,
        values: div,
    }
}

fn box_values(lat: &Lattice4, values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for mu in 0..4 {
        add_into(&mut out, &lat.second_partial(values, mu), METRIC[mu]);
    }
    out
}

/// `□f = ∂₀²f − ∂₁²f − ∂₂²f − ∂₃²f`.
pub fn dalembertian(f: &ScalarLattice) -> ScalarLattice {
    ScalarLattice {
        lattice: f.lattice,
        values: box_values(&f.lattice, &f.values),
    }
}

/// `K^{αβ} = ∂^απ^β − ∂^βπ^α`.
pub fn field_tensor(pi: &VecFieldLattice) -> AntisymTensorLattice {
    let lat = pi.lattice;
    let components = PAIRS.map(|(a, b)| {
        let mut k = lat.partial_upper(&pi.components[b], a);
        add_into(&mut k, &lat.partial_upper(&pi.components[a], b), -1.0);
        k
    });
    AntisymTensorLattice {
        lattice: lat,
        components,
    }
}

/// `∂_αK^{αβ} − κπ^β`, pooled over the four free indices.
pub fn maxwell_residual(
    k: &AntisymTensorLattice,
    pi: &VecFieldLattice,
    kappa: f64,
) -> Result<ResidualReport> {
    if k.lattice != pi.lattice {
        return Err(Error::GridMismatch);
    }
    let lat = k.lattice;
    let mut all = Vec::with_capacity(4 * lat.site_count());
    for beta in 0..4 {
        let mut r: Vec<f64> = pi.components[beta].par_iter().map(|p| -kappa * p).collect();
        for alpha in (0..4).filter(|&a| a != beta) {
            let (slot, sign) = AntisymTensorLattice::slot(alpha, beta).expect("off-diagonal");
            add_into(&mut r, &lat.partial(&k.components[slot], alpha), sign);
        }
        all.extend(r);
    }
    Ok(ResidualReport::from_values(&all))
}

/// Cyclic sums `∂^αK^{βγ} + ∂^βK^{γα} + ∂^γK^{αβ}` for the four triples
/// `α < β < γ` (repeated indices cancel identically).
pub fn bianchi_residual(k: &AntisymTensorLattice) -> ResidualReport {
    let lat = k.lattice;
    let get = |a: usize, b: usize| {
        let (slot, sign) = AntisymTensorLattice::slot(a, b).expect("off-diagonal");
        (slot, sign)
    };
    let mut all = Vec::with_capacity(4 * lat.site_count());
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        let mut r = vec![0.0; lat.site_count()];
        for (d, (x, y)) in [(a, (b, c)), (b, (c, a)), (c, (a, b))] {
            let (slot, sign) = get(x, y);
            add_into(&mut r, &lat.partial_upper(&k.components[slot], d), sign);
        }
        all.extend(r);
    }
    ResidualReport::from_values(&all)
}

/// `□π^ν`, pooled over components.
pub fn wave_residual(pi: &VecFieldLattice) -> ResidualReport {
    let all: Vec<f64> = pi
        .components
        .iter()
        .flat_map(|c| box_values(&pi.lattice, c))
        .collect();
    ResidualReport::from_values(&all)
}

fn proca_pooled(lat: &Lattice4, comps: &[Vec<f64>], lambda: f64) -> Result<ResidualReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let mass = 1.0 / (lambda * lambda);
    let mut all = Vec::with_capacity(comps.len() * lat.site_count());
    for c in comps {
        let mut r = box_values(lat, c);
        add_into(&mut r, c, mass);
        all.extend(r);
    }
    Ok(ResidualReport::from_values(&all))
}

/// `(□ + 1/λ²)π^μ`, pooled over components.
pub fn proca_residual(pi: &VecFieldLattice, lambda: f64) -> Result<ResidualReport> {
    proca_pooled(&pi.lattice, &pi.components, lambda)
}

/// `(□ + 1/λ²)K^{αβ}` over the six stored components.
pub fn proca_residual_tensor(k: &AntisymTensorLattice, lambda: f64) -> Result<ResidualReport> {
    proca_pooled(&k.lattice, &k.components, lambda)
}

/// Builds `π^μ = ρv^μ` with `ρ = n0c (v·v)^{-1/2}` and returns the
/// `□π^μ` and `∂_μπ^μ` residuals.
pub fn first_model_residuals(
    v: &VecFieldLattice,
    n0c: f64,
) -> Result<(ResidualReport, ResidualReport)> {
    let lat = v.lattice;
    let n = lat.site_count();
    let mut rho = vec![0.0; n];
    for (s, r) in rho.iter_mut().enumerate() {
        let norm = crate::minkowski::norm_sq(v.at(s));
        if !(norm > 0.0) {
            return Err(Error::NotTimelike { norm });
        }
        *r = n0c / norm.sqrt();
    }
    let components = std::array::from_fn(|mu| {
        v.components[mu]
            .iter()
            .zip(&rho)
            .map(|(c, r)| c * r)
            .collect()
    });
    let pi = VecFieldLattice {
        lattice: lat,
        components,
    };
    Ok((
        wave_residual(&pi),
        ResidualReport::from_values(&divergence(&pi).values),
    ))
}
