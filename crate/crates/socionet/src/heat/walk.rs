//! Lazy-random-walk approximation of the heat content.
//!
//! With `M` the (substochastic) interior transition matrix and
//! `M_L = (1 - delta) I + delta M`, `k` steps at laziness `delta = s / k`
//! approximate the heat semigroup; the heat content is recovered as
//! `sum_{v,w} M_L^k(v, w) sqrt(d_v / d_w)`. Everything here is plain
//! matrix-vector iteration, fully independent of the spectral oracle.

use super::{DirichletForm, GraphDomain};
use crate::error::{Error, Result};
use crate::real::Real;

/// Step count for the walk; laziness per evaluation point is `s / steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeatWalkConfig {
    pub steps: usize,
}

impl HeatWalkConfig {
    pub fn new(steps: usize) -> Self {
        HeatWalkConfig { steps }
    }

    /// Default step count for a grid reaching `s_max`: at least 2000, and
    /// enough to keep the laziness at or below 0.05 at the largest time.
    pub fn for_s_max(s_max: f64) -> Self {
        HeatWalkConfig {
            steps: 2000usize.max((s_max / 0.05).ceil() as usize),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::ZeroWalkSteps);
        }
        Ok(())
    }
}

impl Default for HeatWalkConfig {
    fn default() -> Self {
        HeatWalkConfig { steps: 2000 }
    }
}

/// Which way the square-root degree ratio is oriented in the double sum.
/// Detailed balance makes the aggregate identical either way; both are
/// kept so that invariance is checkable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SqrtOrientation {
    /// `sqrt(d_v / d_w)` with `v` the row index.
    #[default]
    RowOverColumn,
    /// `sqrt(d_w / d_v)`.
    ColumnOverRow,
}

/// Walk approximation of the heat content of one domain at time `s`.
pub fn approx_heat_content<T: Real>(
    domain: &GraphDomain,
    s: T,
    cfg: &HeatWalkConfig,
) -> Result<T> {
    approx_heat_content_with(
        domain,
        s,
        cfg,
        DirichletForm::Escaping,
        SqrtOrientation::default(),
    )
}

pub fn approx_heat_content_with<T: Real>(
    domain: &GraphDomain,
    s: T,
    cfg: &HeatWalkConfig,
    form: DirichletForm,
    orientation: SqrtOrientation,
) -> Result<T> {
    cfg.validate()?;
    if s < T::zero() {
        return Err(Error::NegativeTime(s.to_f64().unwrap_or(f64::NAN)));
    }
    let n = domain.interior_len();
    if n == 0 {
        return Ok(T::zero());
    }
    let delta = s / T::of_usize(cfg.steps);
    if delta > T::one() {
        return Err(Error::LazinessOutOfRange {
            delta: delta.to_f64().unwrap_or(f64::NAN),
        });
    }

    let sqrt_deg: Vec<T> = domain
        .degrees(form)
        .iter()
        .map(|&d| T::of_u64(d as u64).sqrt())
        .collect();
    // q = a^T (M_L)^k b with a = sqrt(d), b = 1/sqrt(d) (or swapped).
    let mut state: Vec<T> = match orientation {
        SqrtOrientation::RowOverColumn => sqrt_deg.iter().map(|&r| r.recip()).collect(),
        SqrtOrientation::ColumnOverRow => sqrt_deg.clone(),
    };
    if delta > T::zero() {
        let keep = T::one() - delta;
        let mut next = vec![T::zero(); n];
        for _ in 0..cfg.steps {
            for v in 0..n {
                let mut acc = T::zero();
                for &w in domain.interior_neighbors(v) {
                    acc += state[w as usize];
                }
                // M(v, w) = A(v, w) / d_v: rows are substochastic, heat
                // leaking to the boundary is killed.
                next[v] = keep * state[v] + delta * acc / (sqrt_deg[v] * sqrt_deg[v]);
            }
            std::mem::swap(&mut state, &mut next);
        }
    }
    let total = match orientation {
        SqrtOrientation::RowOverColumn => (0..n).map(|v| sqrt_deg[v] * state[v]).sum(),
        SqrtOrientation::ColumnOverRow => (0..n).map(|v| state[v] / sqrt_deg[v]).sum(),
    };
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::heat::{exact_heat_content, make_domains};

    fn triangle_domain() -> GraphDomain {
        let g = Graph::from_edges([], [(0, 1), (1, 2), (0, 2)]).unwrap();
        make_domains(&g, 0.02).remove(0)
    }

    #[test]
    fn zero_time_returns_interior_size() {
        let d = triangle_domain();
        let q: f64 = approx_heat_content(&d, 0.0, &HeatWalkConfig::new(5)).unwrap();
        assert_eq!(q, d.interior_len() as f64);
    }

    #[test]
    fn converges_to_closed_form() {
        let d = triangle_domain();
        let q: f64 = approx_heat_content(&d, 1.0, &HeatWalkConfig::new(1000)).unwrap();
        assert!((q - 1.21306).abs() < 5e-3, "got {q}");
    }

    #[test]
    fn orientation_is_immaterial() {
        let g = Graph::from_edges([], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4)]).unwrap();
        let d = make_domains(&g, 0.02).remove(0);
        let cfg = HeatWalkConfig::new(64);
        for &s in &[0.5, 2.0, 5.0] {
            let a: f64 = approx_heat_content_with(
                &d,
                s,
                &cfg,
                DirichletForm::Escaping,
                SqrtOrientation::RowOverColumn,
            )
            .unwrap();
            let b: f64 = approx_heat_content_with(
                &d,
                s,
                &cfg,
                DirichletForm::Escaping,
                SqrtOrientation::ColumnOverRow,
            )
            .unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_excessive_laziness() {
        let d = triangle_domain();
        let r: Result<f64> = approx_heat_content(&d, 3.0, &HeatWalkConfig::new(2));
        assert!(matches!(r, Err(Error::LazinessOutOfRange { .. })));
        let r: Result<f64> = approx_heat_content(&d, 1.0, &HeatWalkConfig::new(0));
        assert!(matches!(r, Err(Error::ZeroWalkSteps)));
    }

    #[test]
    fn agrees_with_oracle_on_an_irregular_domain() {
        let g = Graph::from_edges(
            [],
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4), (2, 5)],
        )
        .unwrap();
        let d = make_domains(&g, 0.02).remove(0);
        for &s in &[0.25, 1.0, 3.0] {
            let exact: f64 = exact_heat_content(&d, s).unwrap();
            let walk: f64 = approx_heat_content(&d, s, &HeatWalkConfig::new(4000)).unwrap();
            assert!((exact - walk).abs() < 5e-3, "s={s}: {exact} vs {walk}");
        }
    }
}
