//! Recovering the velocity family from a probability current `π^ν` under
//! `ρ = n0c/φ`, together with the squared linear system for the `(v^ν)²`
//! and its determinant.

use crate::error::{Error, Result};
use crate::minkowski::{dot, FourVector};

/// Default relative tolerance on `π·π = (n0c)²`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type Matrix4 = [[f64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentSample {
    pub pi: FourVector,
    pub n0c: f64,
}

impl CurrentSample {
    pub fn new(pi: FourVector, n0c: f64) -> Result<Self> {
        if !(n0c > 0.0 && n0c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "n0c must be positive, got {n0c}"
            )));
        }
        Ok(CurrentSample { pi, n0c })
    }
}

/// The one-parameter family `v = s·π`, `ρ = 1/s`, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityFamily {
    pub direction: FourVector,
    pub n0c: f64,
}

impl VelocityFamily {
    pub fn velocity(&self, s: f64) -> FourVector {
        self.direction.map(|p| s * p)
    }

    pub fn rho(&self, s: f64) -> f64 {
        1.0 / s
    }
}

/// Coefficient matrix of `M·((v⁰)², (v¹)², (v²)², (v³)²) = 0`, obtained by
/// squaring `n0c v^ν = φ π^ν` componentwise.
pub fn build_m(c: &CurrentSample) -> Matrix4 {
    let n2 = c.n0c * c.n0c;
    let sq = c.pi.map(|p| p * p);
    let mut m = [[0.0; 4]; 4];
    m[0] = [n2 - sq[0], sq[0], sq[0], sq[0]];
    for i in 1..4 {
        m[i] = [-sq[i], sq[i], sq[i], sq[i]];
        m[i][i] += n2;
    }
    m
}

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(mut a: Matrix4) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// `(n0c)⁶ [(n0c)² − π·π]`.
pub fn det_m_closed_form(c: &CurrentSample) -> f64 {
    let n2 = c.n0c * c.n0c;
    n2 * n2 * n2 * (n2 - dot(c.pi, c.pi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantReport {
    pub numeric: f64,
    pub closed_form: f64,
}

impl DeterminantReport {
    /// `|numeric − closed|` over `max(|closed|, (n0c)⁸)`.
    pub fn relative_error(&self, n0c: f64) -> f64 {
        let scale = self.closed_form.abs().max(n0c.powi(8));
        (self.numeric - self.closed_form).abs() / scale
    }
}

pub fn det_m(c: &CurrentSample) -> DeterminantReport {
    DeterminantReport {
        numeric: determinant(build_m(c)),
        closed_form: det_m_closed_form(c),
    }
}

/// `v = s·π`, `ρ = 1/s`, provided `π` is timelike and normalised to
/// `(n0c)²` within `tol` relative.
pub fn recover_velocity(c: &CurrentSample, s: f64, tol: f64) -> Result<(FourVector, f64)> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scale must be positive, got {s}"
        )));
    }
    let norm = dot(c.pi, c.pi);
    if !(norm > 0.0) {
        return Err(Error::NotTimelike { norm });
    }
    let expected = c.n0c * c.n0c;
    if (norm - expected).abs() > tol * expected {
        return Err(Error::NoNontrivialSolution { norm, expected });
    }
    let family = VelocityFamily {
        direction: c.pi,
        n0c: c.n0c,
    };
    let v = family.velocity(s);
    let phi = dot(v, v).sqrt();
    debug_assert!((phi - s * c.n0c).abs() <= 4.0 * tol.max(f64::EPSILON) * s * c.n0c);
    Ok((v, family.rho(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion along the first row.
    fn laplace(m: &Matrix4) -> f64 {
        fn minor3(m: &Matrix4, skip_col: usize) -> [[f64; 3]; 3] {
            let mut out = [[0.0; 3]; 3];
            for r in 1..4 {
                let mut k = 0;
                for col in 0..4 {
                    if col != skip_col {
                        out[r - 1][k] = m[r][col];
                        k += 1;
                    }
                }
            }
            out
        }
        fn det3(a: &[[f64; 3]; 3]) -> f64 {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        (0..4)
            .map(|col| {
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][col] * det3(&minor3(m, col))
            })
            .sum()
    }

    #[test]
    fn matrix_examples() {
        let n0c = 1.7;
        let n2 = n0c * n0c;
        let zero = CurrentSample::new([0.0; 4], n0c).unwrap();
        let m = build_m(&zero);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], if i == j { n2 } else { 0.0 });
            }
        }
        let rest = CurrentSample::new([n0c, 0.0, 0.0, 0.0], n0c).unwrap();
        let m = build_m(&rest);
        assert!(m[0][0].abs() < 1e-15 && m[0][1..].iter().all(|&v| v == n2));
        let d = det_m(&rest);
        assert!(
            d.numeric.abs() <= 1e-10 * n0c.powi(8) && d.closed_form.abs() <= 1e-10 * n0c.powi(8)
        );
        let d = det_m(&zero);
        assert!((d.numeric - n0c.powi(8)).abs() < 1e-12 * n0c.powi(8));
        assert!((d.closed_form - n0c.powi(8)).abs() < 1e-12 * n0c.powi(8));
        let pi = [0.3, -1.1, 0.4, 2.0];
        let flipped = CurrentSample::new(pi.map(|p| -p), n0c).unwrap();
        assert_eq!(
            build_m(&CurrentSample::new(pi, n0c).unwrap()),
            build_m(&flipped)
        );
    }

    #[test]
    fn determinant_matches_closed_form_on_random_currents() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n0c = rng.gen_range(0.2..5.0);
            let pi = std::array::from_fn(|_| rng.gen_range(-2.0..2.0) * n0c);
            let c = CurrentSample::new(pi, n0c).unwrap();
            let d = det_m(&c);
            let oracle = laplace(&build_m(&c));
            assert!(d.relative_error(n0c) < 1e-12, "{d:?}");
            let vs_oracle = DeterminantReport {
                numeric: oracle,
                closed_form: d.closed_form,
            };
            assert!(vs_oracle.relative_error(n0c) < 1e-12);
        }
    }

    #[test]
    fn recovery_examples() {
        let n0c = 2.5;
        let rest = CurrentSample::new([n0c, 0.0, 0.0, 0.0], n0c).unwrap();
        let (v, rho) = recover_velocity(&rest, 1.0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((v, rho), ([n0c, 0.0, 0.0, 0.0], 1.0));
        for chi in [-1.5f64, 0.2, 2.0] {
            let c =
                CurrentSample::new([n0c * chi.cosh(), n0c * chi.sinh(), 0.0, 0.0], n0c).unwrap();
            for s in [0.1, 1.0, 10.0] {
                let (v, rho) = recover_velocity(&c, s, DEFAULT_TOLERANCE).unwrap();
                for mu in 0..4 {
                    assert!((rho * v[mu] - c.pi[mu]).abs() <= 2.0 * f64::EPSILON * c.pi[mu].abs());
                }
                let phi = dot(v, v).sqrt();
                assert!((phi / (s * n0c) - 1.0).abs() < 1e-12 * chi.cosh().powi(2));
            }
        }
        let heavy = CurrentSample::new([2f64.sqrt() * n0c, 0.0, 0.0, 0.0], n0c).unwrap();
        assert!(matches!(
            recover_velocity(&heavy, 1.0, DEFAULT_TOLERANCE),
            Err(Error::NoNontrivialSolution { .. })
        ));
        let spacelike = CurrentSample::new([0.0, n0c, 0.0, 0.0], n0c).unwrap();
        assert!(matches!(
            recover_velocity(&spacelike, 1.0, DEFAULT_TOLERANCE),
            Err(Error::NotTimelike { .. })
        ));
        assert!(CurrentSample::new([0.0; 4], 0.0).is_err());
    }

    proptest! {
        #[test]
        fn solvable_iff_determinant_vanishes(
            n0c in 0.3f64..4.0,
            rapidity in prop::array::uniform3(-1.0f64..1.0),
            stretch in prop_oneof![Just(1.0f64), 0.5f64..2.0],
        ) {
            // unit timelike direction from successive boosts, scaled to n0c·stretch
            let u = crate::minkowski::boost_x([1.0, 0.0, 0.0, 0.0], rapidity[0]);
            let u = [u[0] * rapidity[1].cosh(), u[1], u[0] * rapidity[1].sinh(), 0.0];
            let norm = dot(u, u).sqrt();
            let pi = u.map(|x| x / norm * n0c * stretch.sqrt());
            let c = CurrentSample::new(pi, n0c).unwrap();
            let tol = DEFAULT_TOLERANCE;
            let solvable = recover_velocity(&c, 1.0, tol).is_ok();
            let closed = det_m_closed_form(&c).abs() <= tol * n0c.powi(8);
            prop_assert_eq!(solvable, closed);
        }
    }
}
