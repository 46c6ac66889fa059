//! Heat content on graph domains.
//!
//! A domain is a connected piece of a graph split into a nonempty interior
//! and a Dirichlet boundary where heat is pinned to zero. The interior
//! starts at temperature 1 everywhere; the heat content `q(s)` is the total
//! heat remaining at diffusion time `s`. Two evaluation routes are
//! provided and kept independent of each other:
//!
//! * [`exact_heat_content`] — dense eigendecomposition of the normalized
//!   Dirichlet operator (the oracle; capped interior size);
//! * [`approx_heat_content`] — powers of the lazy-random-walk transition
//!   matrix, which converge to the exact value as the step count grows and
//!   need no spectrum.
//!
//! [`heat_content_curve`] samples the normalized curve over all domains of
//! a graph, and [`hca`] turns curves into heat-content-asymptotics
//! coefficient vectors and distances between them.

mod curve;
mod hca;
mod spectral;
mod walk;

pub use curve::{heat_content_curve, heat_content_curve_with, CurveMode, HeatCurveSamples};
pub use hca::{d_hca, hca_estimate, HcaBasis, HcaCoefficients, HcaEstimate};
pub use spectral::{exact_heat_content, exact_heat_content_with, SpectralDecomposition};
pub use walk::{approx_heat_content, approx_heat_content_with, HeatWalkConfig, SqrtOrientation};

use crate::graph::{Graph, NodeId};

/// Which Dirichlet operator the interior carries.
///
/// `Escaping` gives every interior node its full component degree on the
/// diagonal, so heat leaks out through boundary-adjacent nodes; this is the
/// default. `Conservative` restricts the degree to interior neighbors
/// only, which conserves heat on regular interiors; it is kept behind this
/// switch for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirichletForm {
    #[default]
    Escaping,
    Conservative,
}

/// One connected component of a graph, split into interior and boundary.
#[derive(Debug, Clone)]
pub struct GraphDomain {
    interior_ids: Vec<NodeId>,
    boundary_ids: Vec<NodeId>,
    /// Adjacency among interior nodes, positions into `interior_ids`.
    interior_adj: Vec<Vec<u32>>,
    /// Degree of each interior node within the full component, boundary
    /// neighbors included.
    domain_degree: Vec<u32>,
}

impl GraphDomain {
    pub fn interior_len(&self) -> usize {
        self.interior_ids.len()
    }

    pub fn interior_ids(&self) -> &[NodeId] {
        &self.interior_ids
    }

    pub fn boundary_ids(&self) -> &[NodeId] {
        &self.boundary_ids
    }

    pub fn interior_neighbors(&self, pos: usize) -> &[u32] {
        &self.interior_adj[pos]
    }

    pub fn domain_degree(&self, pos: usize) -> u32 {
        self.domain_degree[pos]
    }

    /// Per-node degrees entering the operator under `form`.
    pub(crate) fn degrees(&self, form: DirichletForm) -> Vec<u32> {
        match form {
            DirichletForm::Escaping => self.domain_degree.clone(),
            DirichletForm::Conservative => {
                self.interior_adj.iter().map(|l| l.len() as u32).collect()
            }
        }
    }
}

/// Split a graph into one domain per connected component. Within each
/// component the boundary is the `max(1, round(fraction * size))`
/// lowest-degree nodes, ties broken by ascending id; components whose
/// interior would come out empty are skipped entirely.
pub fn make_domains(g: &Graph, boundary_fraction: f64) -> Vec<GraphDomain> {
    assert!(
        boundary_fraction > 0.0 && boundary_fraction < 1.0,
        "boundary fraction must lie in (0, 1)"
    );
    let mut domains = Vec::new();
    for comp in g.components() {
        let size = comp.len();
        let num_boundary = ((boundary_fraction * size as f64).round() as usize).max(1);
        if num_boundary >= size {
            continue;
        }
        // Sort by (degree, id); the first num_boundary become the boundary.
        let mut order: Vec<usize> = comp.clone();
        order.sort_by_key(|&p| (g.degree(p), g.node_id(p)));
        let boundary: Vec<usize> = order[..num_boundary].to_vec();
        let mut interior: Vec<usize> = order[num_boundary..].to_vec();
        interior.sort_unstable();

        let index: std::collections::HashMap<usize, u32> = interior
            .iter()
            .enumerate()
            .map(|(local, &p)| (p, local as u32))
            .collect();
        let interior_adj = interior
            .iter()
            .map(|&p| {
                let mut list: Vec<u32> = g
                    .neighbors(p)
                    .iter()
                    .filter_map(|&q| index.get(&(q as usize)).copied())
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let mut boundary_ids: Vec<NodeId> = boundary.iter().map(|&p| g.node_id(p)).collect();
        boundary_ids.sort_unstable();
        domains.push(GraphDomain {
            interior_ids: interior.iter().map(|&p| g.node_id(p)).collect(),
            boundary_ids,
            interior_adj,
            domain_degree: interior.iter().map(|&p| g.degree(p) as u32).collect(),
        });
    }
    domains
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_budget_per_component() {
        // Single 100-node path: 2% of 100 -> 2 boundary nodes.
        let g = Graph::from_edges([], (0..99u32).map(|i| (i, i + 1))).unwrap();
        let doms = make_domains(&g, 0.02);
        assert_eq!(doms.len(), 1);
        assert_eq!(doms[0].boundary_ids().len(), 2);
        assert_eq!(doms[0].interior_len(), 98);
        // Path endpoints have the lowest degree.
        assert_eq!(doms[0].boundary_ids(), &[0, 99]);

        // 10-node component: max(1, round(0.2)) = 1.
        let g = Graph::from_edges([], (0..9u32).map(|i| (i, i + 1))).unwrap();
        let doms = make_domains(&g, 0.02);
        assert_eq!(doms[0].boundary_ids().len(), 1);
    }

    #[test]
    fn isolated_components_are_skipped() {
        let g = Graph::from_edges([7], [(0, 1), (1, 2)]).unwrap();
        let doms = make_domains(&g, 0.02);
        assert_eq!(doms.len(), 1);
        assert_eq!(doms[0].interior_len(), 2);
        assert!(make_domains(&Graph::from_edges([1, 2, 3], []).unwrap(), 0.02).is_empty());
    }

    #[test]
    fn empty_graph_yields_no_domains() {
        assert!(make_domains(&Graph::empty(), 0.02).is_empty());
    }

    #[test]
    fn domain_degree_includes_boundary_neighbors() {
        // Triangle: one node becomes boundary, the interior edge keeps
        // domain degree 2 on both endpoints.
        let g = Graph::from_edges([], [(0, 1), (1, 2), (0, 2)]).unwrap();
        let doms = make_domains(&g, 0.02);
        assert_eq!(doms.len(), 1);
        let d = &doms[0];
        assert_eq!(d.boundary_ids(), &[0]);
        assert_eq!(d.interior_ids(), &[1, 2]);
        assert_eq!(d.domain_degree(0), 2);
        assert_eq!(d.domain_degree(1), 2);
        assert_eq!(d.interior_neighbors(0), &[1]);
        // Conservative form sees only the interior edge.
        assert_eq!(d.degrees(DirichletForm::Conservative), vec![1, 1]);
    }
}
