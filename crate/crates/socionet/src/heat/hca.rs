//! Heat-content-asymptotics estimation.
//!
//! A sampled heat-content curve is projected onto an orthonormal
//! polynomial basis built by Gram-Schmidt over the monomials
//! `s^0 .. s^(N-1)`, under the L2 inner product evaluated by composite
//! Simpson quadrature on the sample grid. The projection is read either as
//! the orthonormal coefficient vector (numerically stable at large N) or
//! expanded into monomial coefficients (the asymptotics themselves, well
//! conditioned only at small N). The pseudometric between two graphs is
//! the Euclidean distance between coefficient vectors taken in the same
//! basis.

use super::curve::HeatCurveSamples;
use crate::error::{Error, Result};
use crate::real::Real;

/// Which representation a coefficient vector is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HcaBasis {
    Monomial,
    #[default]
    Orthonormal,
}

/// Coefficient vector tagged with its basis; vectors in different bases
/// never mix in a distance.
#[derive(Debug, Clone, PartialEq)]
pub struct HcaCoefficients<T> {
    values: Vec<T>,
    basis: HcaBasis,
}

impl<T: Real> HcaCoefficients<T> {
    pub fn new(values: Vec<T>, basis: HcaBasis) -> Self {
        HcaCoefficients { values, basis }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn basis(&self) -> HcaBasis {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Both readings of one curve's projection.
#[derive(Debug, Clone)]
pub struct HcaEstimate<T> {
    orthonormal: Vec<T>,
    monomial: Vec<T>,
}

impl<T: Real> HcaEstimate<T> {
    pub fn coefficients(&self, basis: HcaBasis) -> HcaCoefficients<T> {
        let values = match basis {
            HcaBasis::Orthonormal => self.orthonormal.clone(),
            HcaBasis::Monomial => self.monomial.clone(),
        };
        HcaCoefficients::new(values, basis)
    }

    pub fn orthonormal(&self) -> HcaCoefficients<T> {
        self.coefficients(HcaBasis::Orthonormal)
    }

    pub fn monomial(&self) -> HcaCoefficients<T> {
        self.coefficients(HcaBasis::Monomial)
    }

    /// Reconstructed polynomial evaluated at `s`.
    pub fn evaluate(&self, s: T) -> T {
        let mut acc = T::zero();
        let mut power = T::one();
        for &c in &self.monomial {
            acc += c * power;
            power *= s;
        }
        acc
    }
}

/// Composite Simpson weights for an odd-length uniform grid of step `h`.
pub(crate) fn simpson_weights<T: Real>(m: usize, h: T) -> Result<Vec<T>> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::BadSampleCount { m });
    }
    let third = h / T::of(3.0);
    Ok((0..m)
        .map(|i| {
            let factor = if i == 0 || i == m - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            third * T::of(factor)
        })
        .collect())
}

struct GridBasis<T> {
    /// Basis polynomial values on the grid, one row per degree.
    values: Vec<Vec<T>>,
    /// Monomial coefficients of each basis polynomial.
    mono: Vec<Vec<T>>,
    weights: Vec<T>,
}

impl<T: Real> GridBasis<T> {
    /// Gram-Schmidt over `s^0 .. s^(n-1)` sampled on `points`, with a
    /// re-orthogonalization pass for stability at larger n.
    fn build(points: &[T], weights: Vec<T>, n: usize) -> Result<Self> {
        let m = points.len();
        let mut values: Vec<Vec<T>> = Vec::with_capacity(n);
        let mut mono: Vec<Vec<T>> = Vec::with_capacity(n);
        for degree in 0..n {
            let mut v: Vec<T> = points.iter().map(|&s| s.powi(degree as i32)).collect();
            let mut c = vec![T::zero(); n];
            c[degree] = T::one();
            for _ in 0..2 {
                for (bv, bc) in values.iter().zip(&mono) {
                    let r = dot(&weights, bv, &v);
                    for i in 0..m {
                        v[i] -= r * bv[i];
                    }
                    for j in 0..n {
                        c[j] -= r * bc[j];
                    }
                }
            }
            let norm = dot(&weights, &v, &v).sqrt();
            if !(norm > T::zero()) || !norm.is_finite() {
                return Err(Error::DegenerateBasis { degree });
            }
            for x in &mut v {
                *x /= norm;
            }
            for x in &mut c {
                *x /= norm;
            }
            values.push(v);
            mono.push(c);
        }
        Ok(GridBasis {
            values,
            mono,
            weights,
        })
    }
}

fn dot<T: Real>(weights: &[T], a: &[T], b: &[T]) -> T {
    weights
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&w, (&x, &y))| w * x * y)
        .sum()
}

/// Project a sampled curve onto the first `n` heat-content-asymptotics
/// coefficients. Requires `m >= 2n + 1` samples so the quadrature can
/// resolve the basis.
pub fn hca_estimate<T: Real>(samples: &HeatCurveSamples<T>, n: usize) -> Result<HcaEstimate<T>> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "coefficient count must be at least 1".to_string(),
        ));
    }
    let m = samples.len();
    let needed = 2 * n + 1;
    if m < needed {
        return Err(Error::QuadratureTooCoarse { m, n, needed });
    }
    let points = samples.points();
    let weights = simpson_weights(m, samples.grid_step())?;
    let basis = GridBasis::build(&points, weights, n)?;

    let orthonormal: Vec<T> = basis
        .values
        .iter()
        .map(|bv| dot(&basis.weights, bv, samples.values()))
        .collect();
    let monomial: Vec<T> = (0..n)
        .map(|j| {
            orthonormal
                .iter()
                .zip(&basis.mono)
                .map(|(&c, bc)| c * bc[j])
                .sum()
        })
        .collect();
    Ok(HcaEstimate {
        orthonormal,
        monomial,
    })
}

/// Euclidean distance between two coefficient vectors of equal length and
/// basis.
pub fn d_hca<T: Real>(a: &HcaCoefficients<T>, b: &HcaCoefficients<T>) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::CoefficientCountMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if a.basis() != b.basis() {
        return Err(Error::BasisMismatch);
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(s_max: f64, m: usize, f: impl Fn(f64) -> f64) -> HeatCurveSamples<f64> {
        let h = s_max / (m - 1) as f64;
        let values = (0..m).map(|i| f(h * i as f64)).collect();
        HeatCurveSamples::from_values(s_max, values, 1).unwrap()
    }

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact through degree 3.
        let w = simpson_weights::<f64>(11, 0.5).unwrap();
        let pts: Vec<f64> = (0..11).map(|i| 0.5 * i as f64).collect();
        let integral: f64 = w.iter().zip(&pts).map(|(&wi, &s)| wi * s * s * s).sum();
        assert!((integral - 5.0f64.powi(4) / 4.0).abs() < 1e-9);
        assert!(simpson_weights::<f64>(10, 0.5).is_err());
    }

    #[test]
    fn constant_curve_has_trivial_coefficients() {
        let c = sampled(5.0, 21, |_| 1.0);
        let est = hca_estimate(&c, 3).unwrap();
        let mono = est.monomial();
        assert!((mono.values()[0] - 1.0).abs() < 1e-10);
        assert!(mono.values()[1].abs() < 1e-10);
        assert!(mono.values()[2].abs() < 1e-10);
    }

    #[test]
    fn polynomial_round_trip() {
        let c = sampled(5.0, 101, |s| 1.0 - 0.5 * s + 0.25 * s * s);
        let est = hca_estimate(&c, 3).unwrap();
        let mono = est.monomial();
        assert!((mono.values()[0] - 1.0).abs() < 1e-8);
        assert!((mono.values()[1] + 0.5).abs() < 1e-8);
        assert!((mono.values()[2] - 0.25).abs() < 1e-8);
    }

    #[test]
    fn projection_matches_weighted_least_squares() {
        // Independent oracle: solve the weighted normal equations for a
        // degree-(n-1) fit under the same Simpson weights.
        let curve = sampled(5.0, 41, |s| (-0.7 * s).exp());
        let n = 4;
        let est = hca_estimate(&curve, n).unwrap();

        let pts = curve.points();
        let w = simpson_weights::<f64>(curve.len(), curve.grid_step()).unwrap();
        let mut ata = vec![vec![0.0f64; n]; n];
        let mut atb = vec![0.0f64; n];
        for (i, &s) in pts.iter().enumerate() {
            let phi: Vec<f64> = (0..n).map(|j| s.powi(j as i32)).collect();
            for r in 0..n {
                for c in 0..n {
                    ata[r][c] += w[i] * phi[r] * phi[c];
                }
                atb[r] += w[i] * phi[r] * curve.values()[i];
            }
        }
        // Gaussian elimination with partial pivoting.
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&a, &b| ata[a][col].abs().partial_cmp(&ata[b][col].abs()).unwrap())
                .unwrap();
            ata.swap(col, piv);
            atb.swap(col, piv);
            for row in col + 1..n {
                let f = ata[row][col] / ata[col][col];
                for c in col..n {
                    ata[row][c] -= f * ata[col][c];
                }
                atb[row] -= f * atb[col];
            }
        }
        let mut beta = vec![0.0f64; n];
        for row in (0..n).rev() {
            let mut acc = atb[row];
            for c in row + 1..n {
                acc -= ata[row][c] * beta[c];
            }
            beta[row] = acc / ata[row][row];
        }

        for (i, &s) in pts.iter().enumerate() {
            let ls: f64 = (0..n).map(|j| beta[j] * s.powi(j as i32)).sum();
            assert!(
                (est.evaluate(s) - ls).abs() < 1e-8,
                "grid point {i}: {} vs {ls}",
                est.evaluate(s)
            );
        }
    }

    #[test]
    fn distance_basics() {
        let a = HcaCoefficients::new(vec![1.0f64, 0.0], HcaBasis::Monomial);
        let b = HcaCoefficients::new(vec![0.0f64, 1.0], HcaBasis::Monomial);
        assert_eq!(d_hca(&a, &a).unwrap(), 0.0);
        assert!((d_hca(&a, &b).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);

        let short = HcaCoefficients::new(vec![1.0f64], HcaBasis::Monomial);
        assert!(matches!(
            d_hca(&a, &short),
            Err(Error::CoefficientCountMismatch { .. })
        ));
        let other = HcaCoefficients::new(vec![1.0f64, 0.0], HcaBasis::Orthonormal);
        assert!(matches!(d_hca(&a, &other), Err(Error::BasisMismatch)));
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let c = sampled(5.0, 11, |s| (-s).exp());
        assert!(matches!(
            hca_estimate(&c, 6),
            Err(Error::QuadratureTooCoarse { .. })
        ));
    }

    #[test]
    fn closed_form_curves_are_separated() {
        // exp(-s/2) (triangle domain, normalized) vs exp(-s): distinct
        // coefficient vectors at N = 3.
        let a = hca_estimate(&sampled(5.0, 101, |s| (-s / 2.0).exp()), 3).unwrap();
        let b = hca_estimate(&sampled(5.0, 101, |s| (-s).exp()), 3).unwrap();
        let d = d_hca(&a.orthonormal(), &b.orthonormal()).unwrap();
        assert!(d > 0.1, "distance {d}");
        let dm = d_hca(&a.monomial(), &b.monomial()).unwrap();
        assert!(dm > 0.1);
    }

    #[test]
    fn paper_fidelity_settings_still_produce_finite_coefficients() {
        // N = 20 on a 41-point grid: ill conditioned in the monomial
        // reading but the orthonormal vector stays well behaved.
        let c = sampled(5.0, 41, |s| (-s / 2.0).exp());
        let est = hca_estimate(&c, 20).unwrap();
        assert!(est.orthonormal().values().iter().all(|v| v.is_finite()));
        assert!(est.monomial().values().iter().all(|v| v.is_finite()));
    }
}
