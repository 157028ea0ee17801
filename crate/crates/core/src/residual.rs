//! Residual summaries and reproducible reductions.

/// RMS / max-abs summary of a residual field over the points it was
/// evaluated on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub rms: f64,
    pub max_abs: f64,
    pub interior_count: usize,
}

impl ResidualReport {
    pub const ZERO: ResidualReport = ResidualReport {
        rms: 0.0,
        max_abs: 0.0,
        interior_count: 0,
    };

    /// Summarises the given residual values. The sum of squares is reduced
    /// pairwise so the result does not depend on chunking.
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self::ZERO;
        }
        let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
        let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let rms = (pairwise_sum(&squares) / values.len() as f64).sqrt();
        ResidualReport {
            // Rounding in the mean can push rms a hair above max_abs.
            rms: rms.min(max_abs),
            max_abs,
            interior_count: values.len(),
        }
    }

    /// Merges several reports as if their values had been pooled.
    pub fn combine(parts: &[ResidualReport]) -> Self {
        let count: usize = parts.iter().map(|p| p.interior_count).sum();
        if count == 0 {
            return Self::ZERO;
        }
        let weighted: Vec<f64> = parts
            .iter()
            .map(|p| p.rms * p.rms * p.interior_count as f64)
            .collect();
        let max_abs = parts.iter().fold(0.0f64, |m, p| m.max(p.max_abs));
        ResidualReport {
            rms: (pairwise_sum(&weighted) / count as f64).sqrt().min(max_abs),
            max_abs,
            interior_count: count,
        }
    }
}

const PAIRWISE_BLOCK: usize = 64;

/// Pairwise (cascade) summation with a fixed split order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Root mean square of a slice (0 for an empty slice).
pub fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
    (pairwise_sum(&squares) / values.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_of_constant() {
        let r = ResidualReport::from_values(&[-3.0; 10]);
        assert_eq!(r.max_abs, 3.0);
        assert!((r.rms - 3.0).abs() < 1e-15);
        assert_eq!(r.interior_count, 10);
    }

    #[test]
    fn combine_matches_pooled() {
        let a = [1.0, 2.0, 3.0];
        let b = [-4.0, 0.5];
        let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
        let c = ResidualReport::combine(&[
            ResidualReport::from_values(&a),
            ResidualReport::from_values(&b),
        ]);
        let p = ResidualReport::from_values(&pooled);
        assert!((c.rms - p.rms).abs() < 1e-14);
        assert_eq!(c.max_abs, p.max_abs);
        assert_eq!(c.interior_count, 5);
    }

    #[test]
    fn pairwise_is_accurate() {
        let v = vec![0.1; 100_000];
        assert!((pairwise_sum(&v) - 10_000.0).abs() < 1e-9);
    }

    proptest::proptest! {
        #[test]
        fn rms_never_exceeds_max(v in proptest::collection::vec(-1e3f64..1e3, 1..200)) {
            let r = ResidualReport::from_values(&v);
            proptest::prop_assert!(r.rms <= r.max_abs);
            proptest::prop_assert!(r.rms >= 0.0);
        }
    }
}
