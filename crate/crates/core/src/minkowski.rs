//! Flat-space index gymnastics with signature (+,−,−,−).

/// A four-tuple of components. Whether it is co- or contravariant is up to
/// the caller.
pub type FourVector = [f64; 4];

/// Diagonal of the Minkowski metric; `η_{μν} = η^{μν}`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Lowers or raises an index. The metric is its own inverse, so the same map
/// does both.
pub fn raise_index(w: FourVector) -> FourVector {
    [w[0], -w[1], -w[2], -w[3]]
}

/// Lowers a contravariant index.
pub fn lower_index(w: FourVector) -> FourVector {
    raise_index(w)
}

/// `η_{μν} a^μ b^ν` (equally `η^{μν} a_μ b_ν`).
pub fn dot(a: FourVector, b: FourVector) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// `a·a` with the Minkowski metric.
pub fn norm_sq(a: FourVector) -> f64 {
    dot(a, a)
}

/// Plain contraction `a^μ b_μ` of a contravariant with a covariant tuple.
pub fn contract(upper: FourVector, lower: FourVector) -> f64 {
    upper.iter().zip(lower.iter()).map(|(u, l)| u * l).sum()
}

pub fn scale(a: FourVector, s: f64) -> FourVector {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

/// Boost along x¹ with rapidity `chi`, acting on contravariant components.
pub fn boost_x(a: FourVector, chi: f64) -> FourVector {
    let (sh, ch) = (chi.sinh(), chi.cosh());
    [ch * a[0] + sh * a[1], sh * a[0] + ch * a[1], a[2], a[3]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raise_examples() {
        assert_eq!(raise_index([1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(raise_index([0.0, 1.0, 2.0, 3.0]), [0.0, -1.0, -2.0, -3.0]);
    }

    #[test]
    fn boost_preserves_norm() {
        let a = [2.0, 0.3, -0.7, 1.1];
        let b = boost_x(a, 0.83);
        assert!((norm_sq(a) - norm_sq(b)).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn raise_is_an_involution(w in proptest::array::uniform4(-1e6f64..1e6)) {
            proptest::prop_assert_eq!(raise_index(raise_index(w)), w);
        }

        #[test]
        fn dot_matches_contraction(a in proptest::array::uniform4(-10f64..10.0),
                                   b in proptest::array::uniform4(-10f64..10.0)) {
            let lhs = dot(a, b);
            let rhs = contract(a, lower_index(b));
            proptest::prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
