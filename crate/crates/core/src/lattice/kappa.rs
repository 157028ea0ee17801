use super::{field_tensor, Lattice4, VecFieldLattice, PAIRS};
use crate::error::{Error, Result};
use crate::minkowski::METRIC;
use crate::residual::pairwise_sum;

/// `κ₂` refuses fields whose RMS divergence exceeds this multiple of the
/// RMS of all first partials.
pub const DIVERGENCE_TOLERANCE: f64 = 1e-6;

/// Denominators below this multiple of the Euclidean `Σ|π|²ΔV` count as zero.
const VANISHING_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaEstimate {
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
}

fn sum_of_squares(values: &[f64]) -> f64 {
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    pairwise_sum(&sq)
}

/// `Σ π_μπ^μ ΔV`, checked against the Euclidean norm.
fn denominator(pi: &VecFieldLattice) -> Result<f64> {
    if !pi.lattice.is_fully_periodic() {
        return Err(Error::NonPeriodicLattice);
    }
    let dv = pi.lattice.cell_volume();
    let per_axis: Vec<f64> = pi
        .components
        .iter()
        .map(|c| sum_of_squares(c) * dv)
        .collect();
    let signed: f64 = (0..4).map(|mu| METRIC[mu] * per_axis[mu]).sum();
    let euclid: f64 = per_axis.iter().sum();
    if !(signed.abs() > VANISHING_TOLERANCE * euclid) {
        return Err(Error::VanishingDenominator(signed));
    }
    Ok(signed)
}

/// `κ = −Σ(∂_σπ_μ)(∂^σπ^μ)ΔV / Σπ_μπ^μΔV`.
pub fn kappa_k1(pi: &VecFieldLattice) -> Result<KappaEstimate> {
    let den = denominator(pi)?;
    let lat = pi.lattice;
    let mut terms = Vec::with_capacity(16);
    for sigma in 0..4 {
        for mu in 0..4 {
            let d = lat.partial(&pi.components[mu], sigma);
            terms.push(METRIC[sigma] * METRIC[mu] * sum_of_squares(&d));
        }
    }
    let num = terms.iter().sum::<f64>() * lat.cell_volume();
    Ok(KappaEstimate {
        value: -num / den,
        numerator: num,
        denominator: den,
    })
}

fn check_divergence(pi: &VecFieldLattice, lat: &Lattice4) -> Result<()> {
    let mut partial_sq = Vec::with_capacity(16);
    let mut div = vec![0.0; lat.site_count()];
    for mu in 0..4 {
        for sigma in 0..4 {
            let d = lat.partial(&pi.components[mu], sigma);
            partial_sq.push(sum_of_squares(&d));
            if sigma == mu {
                div.iter_mut().zip(&d).for_each(|(a, b)| *a += b);
            }
        }
    }
    let n = lat.site_count() as f64;
    let scale = (partial_sq.iter().sum::<f64>() / (16.0 * n)).sqrt();
    let rms = (sum_of_squares(&div) / n).sqrt();
    let limit = DIVERGENCE_TOLERANCE * scale;
    if rms > limit {
        return Err(Error::DivergenceTooLarge { rms, limit });
    }
    Ok(())
}

/// `κ = −½ ΣK_{σμ}K^{σμ}ΔV / Σπ_μπ^μΔV` with `K` from [`field_tensor`].
pub fn kappa_k2(pi: &VecFieldLattice) -> Result<KappaEstimate> {
    let den = denominator(pi)?;
    let lat = pi.lattice;
    check_divergence(pi, &lat)?;
    let k = field_tensor(pi);
    // K_{σμ}K^{σμ} = 2 Σ_{σ<μ} η^{σσ}η^{μμ}(K^{σμ})²
    let terms: Vec<f64> = PAIRS
        .iter()
        .zip(&k.components)
        .map(|(&(s, m), c)| 2.0 * METRIC[s] * METRIC[m] * sum_of_squares(c))
        .collect();
    let num = terms.iter().sum::<f64>() * lat.cell_volume();
    Ok(KappaEstimate {
        value: -0.5 * num / den,
        numerator: num,
        denominator: den,
    })
}
