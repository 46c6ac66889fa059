//! Distances between static graphs and between whole runs.
//!
//! Per-day graphs are compared with Wasserstein-1 on degree or
//! shortest-path distributions, the portrait divergence, or the
//! heat-content-asymptotics pseudometric; runs are compared by the 2-norm
//! of the per-day values over aligned timesteps, and scenario grids
//! aggregate into all-pairs distance matrices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Distribution, Graph, Portrait, WeightedSocialGraph};
use crate::heat::{
    d_hca, hca_estimate, heat_content_curve_with, CurveMode, DirichletForm, HcaBasis,
    HeatWalkConfig, DEFAULT_BOUNDARY_FRACTION,
};
use crate::real::Real;

/// Wasserstein-1 distance between two normalized integer histograms,
/// computed in closed form as the integral of the absolute CDF difference
/// over the value axis.
pub fn wasserstein1<T: Real>(u: &Distribution, v: &Distribution) -> Result<T> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let tot_u = T::of_u64(u.total());
    let tot_v = T::of_u64(v.total());

    let mut iu = u.iter().peekable();
    let mut iv = v.iter().peekable();
    let mut cum_u = T::zero();
    let mut cum_v = T::zero();
    let mut prev: Option<u64> = None;
    let mut acc = T::zero();
    loop {
        let next = match (iu.peek(), iv.peek()) {
            (Some(&(a, _)), Some(&(b, _))) => a.min(b),
            (Some(&(a, _)), None) => a,
            (None, Some(&(b, _))) => b,
            (None, None) => break,
        };
        if let Some(p) = prev {
            acc += (cum_u / tot_u - cum_v / tot_v).abs() * T::of_u64(next - p);
        }
        if let Some(&(a, c)) = iu.peek() {
            if a == next {
                cum_u += T::of_u64(c);
                iu.next();
            }
        }
        if let Some(&(b, c)) = iv.peek() {
            if b == next {
                cum_v += T::of_u64(c);
                iv.next();
            }
        }
        prev = Some(next);
    }
    Ok(acc)
}

/// Joint distribution a portrait induces: cell `(l, k)` carries mass
/// proportional to `k * B[l][k]`, normalized over all rows and `k >= 1`.
fn portrait_mass<T: Real>(p: &Portrait) -> Result<Vec<((usize, usize), T)>> {
    let mut cells = Vec::new();
    let mut total = T::zero();
    for l in 0..p.num_rows() {
        for (k, &count) in p.row(l).iter().enumerate() {
            if k >= 1 && count > 0 {
                let mass = T::of_usize(k) * T::of_u64(count);
                total += mass;
                cells.push(((l, k), mass));
            }
        }
    }
    if !(total > T::zero()) {
        return Err(Error::ZeroMassPortrait);
    }
    for (_, mass) in &mut cells {
        *mass /= total;
    }
    Ok(cells)
}

/// Jensen-Shannon divergence (base-2 logarithm) between the joint
/// distributions of two portraits; bounded by 1, zero iff the induced
/// distributions coincide.
pub fn portrait_divergence<T: Real>(a: &Portrait, b: &Portrait) -> Result<T> {
    let pa = portrait_mass::<T>(a)?;
    let pb = portrait_mass::<T>(b)?;

    let mut cells: std::collections::BTreeMap<(usize, usize), (T, T)> =
        std::collections::BTreeMap::new();
    for (cell, mass) in pa {
        cells.entry(cell).or_insert((T::zero(), T::zero())).0 = mass;
    }
    for (cell, mass) in pb {
        cells.entry(cell).or_insert((T::zero(), T::zero())).1 = mass;
    }

    let half = T::of(0.5);
    let ln2 = T::of(std::f64::consts::LN_2);
    let h = |x: T| {
        if x > T::zero() {
            -x * x.ln() / ln2
        } else {
            T::zero()
        }
    };
    let mut div = T::zero();
    for &(x, y) in cells.values() {
        let m = half * (x + y);
        div += h(m) - half * (h(x) + h(y));
    }
    Ok(div.max(T::zero()))
}

/// Per-day comparison selected by [`run_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMetric {
    /// Wasserstein-1 on degree distributions.
    Degree,
    /// Wasserstein-1 on shortest-path distributions.
    Spd,
    /// Portrait divergence.
    Portrait,
    /// Heat-content-asymptotics pseudometric.
    Hca,
}

impl RunMetric {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "degree" => Some(RunMetric::Degree),
            "spd" => Some(RunMetric::Spd),
            "portrait" => Some(RunMetric::Portrait),
            "hca" => Some(RunMetric::Hca),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RunMetric::Degree => "degree",
            RunMetric::Spd => "spd",
            RunMetric::Portrait => "portrait",
            RunMetric::Hca => "hca",
        }
    }
}

/// Curve and projection settings shared by every HCA comparison inside one
/// matrix, so coefficient vectors are commensurable.
#[derive(Debug, Clone)]
pub struct HcaSettings<T> {
    pub s_max: T,
    pub samples: usize,
    pub coefficients: usize,
    pub walk: HeatWalkConfig,
    pub mode: CurveMode,
    pub basis: HcaBasis,
    pub boundary_fraction: f64,
    pub form: DirichletForm,
}

impl<T: Real> Default for HcaSettings<T> {
    fn default() -> Self {
        HcaSettings {
            s_max: T::of(5.0),
            samples: 101,
            coefficients: 20,
            walk: HeatWalkConfig::for_s_max(5.0),
            mode: CurveMode::Walk,
            basis: HcaBasis::Orthonormal,
            boundary_fraction: DEFAULT_BOUNDARY_FRACTION,
            form: DirichletForm::Escaping,
        }
    }
}

impl<T: Real> HcaSettings<T> {
    /// Settings mirroring the published recipe as closely as the
    /// quadrature-adequacy rule allows: a 21-point grid (the odd count
    /// nearest the original twenty) reading monomial coefficients, with
    /// the coefficient count capped at the 10 such a grid can resolve.
    pub fn paper_fidelity() -> Self {
        HcaSettings {
            samples: 21,
            coefficients: 10,
            basis: HcaBasis::Monomial,
            ..Self::default()
        }
    }

    pub fn graph_coefficients(&self, g: &Graph) -> Result<crate::heat::HcaCoefficients<T>> {
        let curve = heat_content_curve_with(
            g,
            self.s_max,
            self.samples,
            &self.walk,
            self.mode,
            self.boundary_fraction,
            self.form,
        )?;
        Ok(hca_estimate(&curve, self.coefficients)?.coefficients(self.basis))
    }
}

/// Ordered daily snapshots from one scenario/seed run.
#[derive(Debug, Clone)]
pub struct RunSeries {
    pub scenario_id: u32,
    pub seed: u64,
    pub snapshots: Vec<Graph>,
    /// Weighted graphs retained when the run came from the simulator.
    pub weighted_snapshots: Option<Vec<WeightedSocialGraph>>,
}

impl RunSeries {
    pub fn days(&self) -> usize {
        self.snapshots.len()
    }

    pub fn label(&self) -> String {
        format!("s{:02}-seed{}", self.scenario_id, self.seed)
    }
}

/// Run-level distance: per-day distances and their 2-norm.
#[derive(Debug, Clone)]
pub struct RunDistance<T> {
    pub total: T,
    pub per_day: Vec<T>,
}

fn day_distance<T: Real>(
    a: &Graph,
    b: &Graph,
    metric: RunMetric,
    hca: &HcaSettings<T>,
) -> Result<T> {
    match metric {
        RunMetric::Degree => wasserstein1(&a.degree_distribution(), &b.degree_distribution()),
        RunMetric::Spd => wasserstein1(
            &a.shortest_path_distribution(),
            &b.shortest_path_distribution(),
        ),
        RunMetric::Portrait => portrait_divergence(&a.portrait(), &b.portrait()),
        RunMetric::Hca => {
            let ca = hca.graph_coefficients(a)?;
            let cb = hca.graph_coefficients(b)?;
            d_hca(&ca, &cb)
        }
    }
}

/// Compare two runs day by day and aggregate with the Euclidean norm over
/// `t = 0 .. T-1`. Any per-day failure propagates with the day attached.
pub fn run_distance<T: Real>(
    a: &RunSeries,
    b: &RunSeries,
    metric: RunMetric,
    hca: &HcaSettings<T>,
) -> Result<RunDistance<T>> {
    if a.days() != b.days() {
        return Err(Error::RunLengthMismatch {
            a: a.days(),
            b: b.days(),
        });
    }
    let per_day = a
        .snapshots
        .par_iter()
        .zip(&b.snapshots)
        .enumerate()
        .map(|(day, (ga, gb))| day_distance(ga, gb, metric, hca).map_err(|e| e.at_day(day)))
        .collect::<Result<Vec<T>>>()?;
    let total = per_day.iter().map(|&d| d * d).sum::<T>().sqrt();
    Ok(RunDistance { total, per_day })
}

/// Symmetric all-pairs matrix of run distances with a zero diagonal.
#[derive(Debug, Clone)]
pub struct DistanceMatrix<T> {
    pub labels: Vec<String>,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> DistanceMatrix<T> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i][j]
    }
}

/// All-pairs [`run_distance`] over a set of equal-length runs.
pub fn distance_matrix<T: Real>(
    runs: &[RunSeries],
    metric: RunMetric,
    hca: &HcaSettings<T>,
) -> Result<DistanceMatrix<T>> {
    if runs.len() < 2 {
        return Err(Error::TooFewRuns(runs.len()));
    }
    let n = runs.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let distances = pairs
        .par_iter()
        .map(|&(i, j)| run_distance(&runs[i], &runs[j], metric, hca).map(|d| d.total))
        .collect::<Result<Vec<T>>>()?;
    let mut values = vec![vec![T::zero(); n]; n];
    for (&(i, j), &d) in pairs.iter().zip(&distances) {
        values[i][j] = d;
        values[j][i] = d;
    }
    Ok(DistanceMatrix {
        labels: runs.iter().map(RunSeries::label).collect(),
        values,
    })
}
