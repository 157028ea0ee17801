use std::f64::consts::TAU;

use super::{AntisymTensorLattice, Lattice4, VecFieldLattice, PAIRS};
use crate::error::{Error, Result};
use crate::minkowski::METRIC;

const COMMENSURATE_TOL: f64 = 1e-9;

fn check_commensurate(k: [f64; 4], lattice: &Lattice4) -> Result<()> {
    for mu in 0..4 {
        if !lattice.periodic[mu] {
            continue;
        }
        let cycles = k[mu] * lattice.length(mu) / TAU;
        if (cycles - cycles.round()).abs() > COMMENSURATE_TOL * cycles.abs().max(1.0) {
            return Err(Error::IncommensurateWave { axis: mu });
        }
    }
    Ok(())
}

fn phase_at(k: [f64; 4], phase: f64, x: [f64; 4]) -> f64 {
    k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3] + phase
}

/// `π^μ = ε^μ cos(k_ν x^ν + phase)` with covariant `k`.
pub fn make_plane_wave(
    eps: [f64; 4],
    k: [f64; 4],
    phase: f64,
    lattice: Lattice4,
) -> Result<VecFieldLattice> {
    check_commensurate(k, &lattice)?;
    Ok(VecFieldLattice::from_fn(lattice, |x| {
        let c = phase_at(k, phase, x).cos();
        eps.map(|e| e * c)
    }))
}

/// Exact field tensor of [`make_plane_wave`]:
/// `K^{αβ} = −(η^{αα}k_α ε^β − η^{ββ}k_β ε^α) sin(k·x + phase)`.
pub fn plane_wave_tensor(
    eps: [f64; 4],
    k: [f64; 4],
    phase: f64,
    lattice: Lattice4,
) -> Result<AntisymTensorLattice> {
    check_commensurate(k, &lattice)?;
    let components = PAIRS.map(|(a, b)| {
        let amp = -(METRIC[a] * k[a] * eps[b] - METRIC[b] * k[b] * eps[a]);
        lattice.sample(|x| amp * phase_at(k, phase, x).sin())
    });
    Ok(AntisymTensorLattice {
        lattice,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{divergence, field_tensor};
    use super::*;

    #[test]
    fn plane_wave_examples() {
        let lat = Lattice4::periodic([8; 4], [0.5; 4]).unwrap();
        let c = make_plane_wave([1.0, 0.0, 0.0, 0.0], [0.0; 4], 0.0, lat).unwrap();
        assert!(c.components[0].iter().all(|&v| v == 1.0));
        assert!(c.components[1..]
            .iter()
            .all(|v| v.iter().all(|&x| x == 0.0)));
        assert_eq!(
            make_plane_wave([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], 0.0, lat).unwrap_err(),
            Error::IncommensurateWave { axis: 1 }
        );
        let open = Lattice4::new([8; 4], [0.5; 4], [false; 4]).unwrap();
        assert!(make_plane_wave([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], 0.0, open).is_ok());
    }

    #[test]
    fn transverse_wave_has_small_divergence() {
        // unequal phase steps, so the discrete divergence is O(h²) rather than zero
        let base = Lattice4::periodic([16; 4], [TAU / 16.0; 4]).unwrap();
        let eps = [1.0, -1.0, -1.0, 1.0];
        let k = [2.0, 1.0, 1.0, 0.0];
        let mut rms = Vec::new();
        for l in [base, base.refined()] {
            let pi = make_plane_wave(eps, k, 0.4, l).unwrap();
            rms.push(crate::residual::rms(&divergence(&pi).values));
        }
        assert!(rms[0] < 0.2);
        let ratio = rms[0] / rms[1];
        assert!(ratio > 3.5 && ratio < 4.5, "{ratio}");
    }

    #[test]
    fn analytic_tensor_matches_discrete_curl() {
        let base = Lattice4::periodic([16; 4], [TAU / 16.0; 4]).unwrap();
        let (eps, k) = ([1.0, -1.0, -1.0, 1.0], [2.0, 1.0, 1.0, 0.0]);
        let mut err = Vec::new();
        for l in [base, base.refined()] {
            let exact = plane_wave_tensor(eps, k, 0.4, l).unwrap();
            let discrete = field_tensor(&make_plane_wave(eps, k, 0.4, l).unwrap());
            let diff: Vec<f64> = exact
                .components
                .concat()
                .iter()
                .zip(discrete.components.concat())
                .map(|(a, b)| a - b)
                .collect();
            err.push(crate::residual::rms(&diff));
        }
        let ratio = err[0] / err[1];
        assert!(ratio > 3.5 && ratio < 4.5, "{ratio}");
    }
}
