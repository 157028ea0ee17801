//! Free-particle checks of the fundamental equations of the calculus of
//! variations for the Lagrangian `L = mc (η_{μν}v^μv^ν)^{1/2}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::minkowski::{dot, lower_index, raise_index, FourVector};
use crate::residual::ResidualReport;

/// Linear auxiliary function `S(x) = p_μ x^μ` with covariant `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAux {
    pub p: FourVector,
}

impl LinearAux {
    pub fn value(&self, x: FourVector) -> f64 {
        self.p.iter().zip(x.iter()).map(|(p, x)| p * x).sum()
    }

    /// `∂_μS = p_μ`.
    pub fn gradient(&self) -> FourVector {
        self.p
    }
}

pub type VelocityFn = Arc<dyn Fn(FourVector) -> FourVector + Send + Sync>;

/// Contravariant velocity field `v^μ(x)`.
#[derive(Clone)]
pub enum VelocitySpec {
    /// `v^μ = s·p^μ/(mc)` for the stored `m·c`.
    FromAux {
        aux: LinearAux,
        scale: f64,
        mc: f64,
    },
    ExplicitConstant(FourVector),
    Custom(VelocityFn),
}

impl fmt::Debug for VelocitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VelocitySpec::FromAux { aux, scale, mc } => f
                .debug_struct("FromAux")
                .field("aux", aux)
                .field("scale", scale)
                .field("mc", mc)
                .finish(),
            VelocitySpec::ExplicitConstant(v) => {
                f.debug_tuple("ExplicitConstant").field(v).finish()
            }
            VelocitySpec::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl VelocitySpec {
    pub fn from_aux(aux: LinearAux, scale: f64, m: f64, c: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive, got {scale}"
            )));
        }
        Ok(VelocitySpec::FromAux {
            aux,
            scale,
            mc: m * c,
        })
    }

    pub fn velocity(&self, x: FourVector) -> FourVector {
        match self {
            VelocitySpec::FromAux { aux, scale, mc } => raise_index(aux.p).map(|p| scale * p / mc),
            VelocitySpec::ExplicitConstant(v) => *v,
            VelocitySpec::Custom(f) => f(x),
        }
    }

    fn timelike_velocity(&self, x: FourVector) -> Result<FourVector> {
        let v = self.velocity(x);
        let norm = dot(v, v);
        if norm > 0.0 {
            Ok(v)
        } else {
            Err(Error::NotTimelike { norm })
        }
    }
}

/// `(L, φ)` with `φ = (v·v)^{1/2}` and `L = mcφ`.
pub fn free_lagrangian(v: FourVector, m: f64, c: f64) -> Result<(f64, f64)> {
    let norm = dot(v, v);
    if !(norm > 0.0) {
        return Err(Error::NotTimelike { norm });
    }
    let phi = norm.sqrt();
    Ok((m * c * phi, phi))
}

/// Canonical momentum `∂L/∂v^μ = mc v_μ/φ`.
pub fn canonical_momentum(v: FourVector, m: f64, c: f64) -> Result<FourVector> {
    let (_, phi) = free_lagrangian(v, m, c)?;
    Ok(lower_index(v).map(|vl| m * c * vl / phi))
}

/// `L − v^μ∂_μS` and `∂L/∂v^μ − ∂_μS` at `x`.
pub fn fundamental_residuals(
    spec: &VelocitySpec,
    aux: &LinearAux,
    x: FourVector,
    m: f64,
    c: f64,
) -> Result<(f64, FourVector)> {
    let v = spec.timelike_velocity(x)?;
    let (lagrangian, _) = free_lagrangian(v, m, c)?;
    let grad = aux.gradient();
    let first = lagrangian - v.iter().zip(grad.iter()).map(|(v, g)| v * g).sum::<f64>();
    let momentum = canonical_momentum(v, m, c)?;
    let second = std::array::from_fn(|mu| momentum[mu] - grad[mu]);
    Ok((first, second))
}

/// `η^{μν}p_μp_ν − m²c²`.
pub fn hj_residual(aux: &LinearAux, m: f64, c: f64) -> f64 {
    dot(aux.p, aux.p) - (m * c) * (m * c)
}

/// RK4 integration of `dx^μ/ds = v^μ(x)`; returns `steps + 1` points.
pub fn integrate_extremal(
    spec: &VelocitySpec,
    seed: FourVector,
    s_max: f64,
    steps: usize,
) -> Result<Vec<FourVector>> {
    if steps == 0 || !(s_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need s_max > 0 and steps > 0, got {s_max} and {steps}"
        )));
    }
    let ds = s_max / steps as f64;
    let axpy = |x: FourVector, a: f64, k: FourVector| -> FourVector {
        std::array::from_fn(|i| x[i] + a * k[i])
    };
    let mut points = Vec::with_capacity(steps + 1);
    let mut x = seed;
    points.push(x);
    for _ in 0..steps {
        let k1 = spec.timelike_velocity(x)?;
        let k2 = spec.timelike_velocity(axpy(x, 0.5 * ds, k1))?;
        let k3 = spec.timelike_velocity(axpy(x, 0.5 * ds, k2))?;
        let k4 = spec.timelike_velocity(axpy(x, ds, k3))?;
        x = std::array::from_fn(|i| x[i] + ds / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        points.push(x);
    }
    Ok(points)
}

fn euclid(a: FourVector) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest coordinate-space distance of the integrated curve from the
/// chord through its endpoints, divided by the curve length.
pub fn straightness_check(
    spec: &VelocitySpec,
    seed: FourVector,
    s_max: f64,
    steps: usize,
) -> Result<f64> {
    let pts = integrate_extremal(spec, seed, s_max, steps)?;
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let chord: FourVector = std::array::from_fn(|i| b[i] - a[i]);
    let chord_len = euclid(chord);
    let length: f64 = pts
        .windows(2)
        .map(|w| euclid(std::array::from_fn(|i| w[1][i] - w[0][i])))
        .sum();
    if !(length > 0.0) || !(chord_len > 0.0) {
        return Ok(0.0);
    }
    let dir = chord.map(|c| c / chord_len);
    let max = pts
        .iter()
        .map(|p| {
            let rel: FourVector = std::array::from_fn(|i| p[i] - a[i]);
            let along: f64 = rel.iter().zip(dir.iter()).map(|(r, d)| r * d).sum();
            euclid(std::array::from_fn(|i| rel[i] - along * dir[i]))
        })
        .fold(0.0, f64::max);
    Ok(max / length)
}

/// Central-difference `d/ds(∂L/∂ẋ^μ)` along the integrated curve, minus
/// `∂L/∂x^μ` (zero for the free Lagrangian), pooled over interior steps.
pub fn euler_lagrange_residual(
    spec: &VelocitySpec,
    seed: FourVector,
    s_max: f64,
    steps: usize,
    m: f64,
    c: f64,
) -> Result<ResidualReport> {
    let pts = integrate_extremal(spec, seed, s_max, steps)?;
    let ds = s_max / steps as f64;
    let momenta = pts
        .iter()
        .map(|&x| canonical_momentum(spec.velocity(x), m, c))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = momenta
        .windows(3)
        .flat_map(|w| (0..4).map(move |mu| (w[2][mu] - w[0][mu]) / (2.0 * ds)))
        .collect();
    Ok(ResidualReport::from_values(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::boost_x;
    use proptest::prelude::*;

    fn on_shell(m: f64, c: f64, chi: f64) -> LinearAux {
        LinearAux {
            p: [m * c * chi.cosh(), -m * c * chi.sinh(), 0.0, 0.0],
        }
    }

    #[test]
    fn lagrangian_examples() {
        assert_eq!(
            free_lagrangian([1.0, 0.0, 0.0, 0.0], 1.0, 1.0).unwrap(),
            (1.0, 1.0)
        );
        assert_eq!(
            free_lagrangian([2.0, 0.0, 0.0, 0.0], 1.0, 1.0).unwrap().0,
            2.0
        );
        for chi in [-2.0f64, 0.0, 0.3, 1.7] {
            let (_, phi) = free_lagrangian([chi.cosh(), chi.sinh(), 0.0, 0.0], 1.0, 1.0).unwrap();
            assert!((phi - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            free_lagrangian([1.0, 1.0, 0.0, 0.0], 1.0, 1.0),
            Err(Error::NotTimelike { .. })
        ));
    }

    #[test]
    fn fundamental_examples() {
        let (m, c) = (1.0, 1.0);
        let aux = on_shell(m, c, 0.0);
        let x = [0.3, -1.2, 2.0, 0.5];
        for s in [1.0, 7.3] {
            let spec = VelocitySpec::from_aux(aux, s, m, c).unwrap();
            let (a, b) = fundamental_residuals(&spec, &aux, x, m, c).unwrap();
            assert!(a.abs() <= 1e-14 * s && b.iter().all(|v| v.abs() <= 1e-14));
        }
        let heavy = LinearAux {
            p: [2f64.sqrt() * m * c, 0.0, 0.0, 0.0],
        };
        let spec = VelocitySpec::from_aux(heavy, 1.0, m, c).unwrap();
        let (a, _) = fundamental_residuals(&spec, &heavy, x, m, c).unwrap();
        // L = √2 mc, v·∂S = 2mc
        assert!((a - (2f64.sqrt() - 2.0) * m * c).abs() < 1e-14);
        let spacelike = VelocitySpec::ExplicitConstant([0.0, 1.0, 0.0, 0.0]);
        assert!(fundamental_residuals(&spacelike, &aux, x, m, c).is_err());
    }

    #[test]
    fn hj_examples() {
        let (m, c) = (2.0, 3.0);
        assert_eq!(
            hj_residual(
                &LinearAux {
                    p: [m * c, 0.0, 0.0, 0.0]
                },
                m,
                c
            ),
            0.0
        );
        assert!(hj_residual(&on_shell(m, c, 1.1), m, c).abs() < 1e-12);
        assert_eq!(
            hj_residual(
                &LinearAux {
                    p: [2.0 * m * c, 0.0, 0.0, 0.0]
                },
                m,
                c
            ),
            3.0 * (m * c) * (m * c)
        );
    }

    #[test]
    fn straightness_and_euler_lagrange() {
        let (m, c) = (1.0, 1.0);
        let seed = [0.0, 0.5, -0.2, 1.0];
        let aux = on_shell(m, c, 0.6);
        for s in [1.0, 3.0] {
            let spec = VelocitySpec::from_aux(aux, s, m, c).unwrap();
            assert!(straightness_check(&spec, seed, 5.0, 200).unwrap() <= 1e-12);
            assert!(
                euler_lagrange_residual(&spec, seed, 5.0, 200, m, c)
                    .unwrap()
                    .max_abs
                    <= 1e-10
            );
        }
        let konst = VelocitySpec::ExplicitConstant([1.5, 0.3, 0.0, 0.0]);
        assert!(straightness_check(&konst, seed, 5.0, 200).unwrap() <= 1e-12);

        let bent = VelocitySpec::Custom(Arc::new(|x: FourVector| [1.0, 0.2 * x[0], 0.0, 0.0]));
        assert!(straightness_check(&bent, seed, 3.0, 200).unwrap() > 1e-3);
        assert!(
            euler_lagrange_residual(&bent, seed, 3.0, 200, m, c)
                .unwrap()
                .rms
                > 1e-3
        );

        let runaway = VelocitySpec::Custom(Arc::new(|x: FourVector| [1.0, x[0], 0.0, 0.0]));
        assert!(matches!(
            straightness_check(&runaway, seed, 3.0, 100),
            Err(Error::NotTimelike { .. })
        ));
    }

    proptest! {
        #[test]
        fn rescaling_and_boosts_keep_residuals_zero(
            chi in -2.0f64..2.0,
            s in 0.05f64..20.0,
            x in prop::array::uniform4(-10.0f64..10.0),
        ) {
            let (m, c) = (1.3, 0.8);
            // boost the rest-frame contravariant momentum, then lower it
            let p_up = boost_x([m * c, 0.0, 0.0, 0.0], chi);
            let aux = LinearAux { p: lower_index(p_up) };
            let spec = VelocitySpec::from_aux(aux, s, m, c).unwrap();
            let (a, b) = fundamental_residuals(&spec, &aux, x, m, c).unwrap();
            let scale = (m * c) * chi.cosh().powi(2) * s.max(1.0);
            prop_assert!(a.abs() <= 1e-12 * scale);
            prop_assert!(b.iter().all(|v| v.abs() <= 1e-12 * scale));
        }

        #[test]
        fn lagrangian_is_homogeneous(
            lam in 0.01f64..100.0,
            chi in -3.0f64..3.0,
            t in 0.5f64..4.0,
        ) {
            let v = [t * chi.cosh(), t * chi.sinh(), 0.0, 0.0];
            let (l1, _) = free_lagrangian(v, 1.7, 2.1).unwrap();
            let (l2, _) = free_lagrangian(v.map(|c| lam * c), 1.7, 2.1).unwrap();
            // v·v cancels cosh² against sinh²
            prop_assert!((l2 - lam * l1).abs() <= 1e-14 * (lam * l1).abs() * chi.cosh().powi(2));
        }
    }
}
