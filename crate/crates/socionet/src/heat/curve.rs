//! Whole-graph heat-content curves: each connected component is analyzed
//! as its own domain, per-domain curves are summed, and the total is
//! normalized by the interior node count so every curve starts at 1.

use super::{
    approx_heat_content_with, make_domains, DirichletForm, GraphDomain, HeatWalkConfig,
    SpectralDecomposition, SqrtOrientation,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::real::Real;

/// Route used to evaluate per-domain heat content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurveMode {
    /// Dense spectral oracle; capped interior size.
    Exact,
    /// Lazy-random-walk matrix powers.
    #[default]
    Walk,
}

/// Normalized heat-content curve sampled on a uniform grid over
/// `[0, s_max]`. The sample count is odd so composite Simpson quadrature
/// applies directly.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatCurveSamples<T> {
    s_max: T,
    values: Vec<T>,
    interior_total: usize,
}

impl<T: Real> HeatCurveSamples<T> {
    pub fn from_values(s_max: T, values: Vec<T>, interior_total: usize) -> Result<Self> {
        let m = values.len();
        if m < 3 || m % 2 == 0 {
            return Err(Error::BadSampleCount { m });
        }
        Ok(HeatCurveSamples {
            s_max,
            values,
            interior_total,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn s_max(&self) -> T {
        self.s_max
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Interior node count the curve was normalized by.
    pub fn interior_total(&self) -> usize {
        self.interior_total
    }

    pub fn grid_step(&self) -> T {
        self.s_max / T::of_usize(self.values.len() - 1)
    }

    /// Sample points `s_i`, ascending.
    pub fn points(&self) -> Vec<T> {
        let h = self.grid_step();
        (0..self.values.len()).map(|i| h * T::of_usize(i)).collect()
    }
}

/// Sample the normalized heat-content curve of `g` at `m` uniform points
/// on `[0, s_max]`, with the boundary of each component chosen as its
/// lowest-degree 2% (at least one node).
pub fn heat_content_curve<T: Real>(
    g: &Graph,
    s_max: T,
    m: usize,
    cfg: &HeatWalkConfig,
    mode: CurveMode,
) -> Result<HeatCurveSamples<T>> {
    heat_content_curve_with(
        g,
        s_max,
        m,
        cfg,
        mode,
        DEFAULT_BOUNDARY_FRACTION,
        DirichletForm::Escaping,
    )
}

/// Fraction of each component assigned to the boundary by default.
pub const DEFAULT_BOUNDARY_FRACTION: f64 = 0.02;

pub fn heat_content_curve_with<T: Real>(
    g: &Graph,
    s_max: T,
    m: usize,
    cfg: &HeatWalkConfig,
    mode: CurveMode,
    boundary_fraction: f64,
    form: DirichletForm,
) -> Result<HeatCurveSamples<T>> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::BadSampleCount { m });
    }
    if s_max <= T::zero() {
        return Err(Error::InvalidConfig("s_max must be positive".to_string()));
    }
    let domains = make_domains(g, boundary_fraction);
    let interior_total: usize = domains.iter().map(GraphDomain::interior_len).sum();
    if interior_total == 0 {
        return Err(Error::NoInterior);
    }

    let h = s_max / T::of_usize(m - 1);
    let mut totals = vec![T::zero(); m];
    for domain in &domains {
        match mode {
            CurveMode::Exact => {
                let dec = SpectralDecomposition::with_form(domain, form)?;
                for (i, total) in totals.iter_mut().enumerate() {
                    *total += dec.heat_content(h * T::of_usize(i))?;
                }
            }
            CurveMode::Walk => {
                for (i, total) in totals.iter_mut().enumerate() {
                    *total += approx_heat_content_with(
                        domain,
                        h * T::of_usize(i),
                        cfg,
                        form,
                        SqrtOrientation::default(),
                    )?;
                }
            }
        }
    }
    let norm = T::of_usize(interior_total);
    for total in &mut totals {
        *total /= norm;
    }
    HeatCurveSamples::from_values(s_max, totals, interior_total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges([], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn curve_starts_at_one() {
        let c: HeatCurveSamples<f64> =
            heat_content_curve(&triangle(), 5.0, 21, &HeatWalkConfig::default(), CurveMode::Exact)
                .unwrap();
        assert_eq!(c.values()[0], 1.0);
        assert_eq!(c.len(), 21);
        assert_eq!(c.interior_total(), 2);
        let pts = c.points();
        assert_eq!(pts[0], 0.0);
        assert!((pts[20] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_copies_reduce_to_one_copy() {
        // Two triangles: summed curve over doubled interior equals the
        // single-copy normalized curve exp(-s/2).
        let two = Graph::from_edges([], [(0, 1), (1, 2), (0, 2), (10, 11), (11, 12), (10, 12)])
            .unwrap();
        let c: HeatCurveSamples<f64> =
            heat_content_curve(&two, 5.0, 11, &HeatWalkConfig::default(), CurveMode::Exact)
                .unwrap();
        for (s, &v) in c.points().iter().zip(c.values()) {
            assert!((v - (-s / 2.0).exp()).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn exact_and_walk_agree_pointwise() {
        let g = Graph::from_edges(
            [],
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (1, 3),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        let exact: HeatCurveSamples<f64> =
            heat_content_curve(&g, 5.0, 11, &HeatWalkConfig::default(), CurveMode::Exact).unwrap();
        let walk: HeatCurveSamples<f64> =
            heat_content_curve(&g, 5.0, 11, &HeatWalkConfig::new(1000), CurveMode::Walk).unwrap();
        for (a, b) in exact.values().iter().zip(walk.values()) {
            assert!((a - b).abs() <= 1e-2);
        }
    }

    #[test]
    fn error_cases() {
        let isolated = Graph::from_edges([1, 2, 3], []).unwrap();
        assert!(matches!(
            heat_content_curve::<f64>(
                &isolated,
                5.0,
                11,
                &HeatWalkConfig::default(),
                CurveMode::Exact
            ),
            Err(Error::NoInterior)
        ));
        assert!(matches!(
            heat_content_curve::<f64>(
                &triangle(),
                5.0,
                10,
                &HeatWalkConfig::default(),
                CurveMode::Exact
            ),
            Err(Error::BadSampleCount { m: 10 })
        ));
    }

    #[test]
    fn oracle_curve_is_non_increasing() {
        let g = Graph::from_edges([], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let c: HeatCurveSamples<f64> =
            heat_content_curve(&g, 5.0, 21, &HeatWalkConfig::default(), CurveMode::Exact).unwrap();
        for pair in c.values().windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12);
        }
    }
}
