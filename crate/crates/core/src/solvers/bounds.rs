//! Degree/edge bounds on the largest Z-eigenvalue and the closed forms for
//! regular and complete m-graphs.

use serde::{Deserialize, Serialize};

use super::eigenpair::EigenPair;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph};
use crate::tensor::SymmetricTensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// `sum deg(i) / (n^{m/2} (m-1)!)`.
    pub lower_degree_sum: f64,
    /// `A x^m` at the uniform unit vector.
    pub lower_sharp: f64,
    /// `D sqrt(n)` with `D` the maximum degree.
    pub upper_degree: f64,
    /// `|E|`.
    pub upper_edges: f64,
}

impl BoundsReport {
    pub fn upper(&self) -> f64 {
        self.upper_degree.min(self.upper_edges)
    }

    /// Whether `lambda` sits inside the bounds, with `slack` absolute tolerance.
    pub fn sandwiches(&self, lambda: f64, slack: f64) -> bool {
        self.lower_degree_sum <= self.lower_sharp + slack
            && self.lower_sharp <= lambda + slack
            && lambda <= self.upper() + slack
    }
}

pub fn z_bounds(h: &Hypergraph) -> BoundsReport {
    let n = h.vertex_count() as f64;
    let m = h.order();
    let degrees = h.degrees();
    let degree_sum: usize = degrees.iter().sum();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let fact: f64 = (1..m).map(|i| i as f64).product();
    let a = SymmetricTensor::adjacency(h);
    let uniform = vec![1.0 / n.sqrt(); h.vertex_count()];
    BoundsReport {
        lower_degree_sum: degree_sum as f64 / (n.powf(m as f64 / 2.0) * fact),
        lower_sharp: a.poly_eval(&uniform).expect("dimension matches"),
        upper_degree: max_degree as f64 * n.sqrt(),
        upper_edges: h.edge_count() as f64,
    }
}

/// `(r n^{-(m-2)/2}, 1/sqrt(n))` for a simple r-regular m-graph with at least
/// one edge; `None` otherwise.
pub fn closed_form_regular_z(h: &Hypergraph) -> Result<Option<EigenPair>> {
    if !h.is_simple() || h.edge_count() == 0 {
        return Ok(None);
    }
    let Some(r) = h.is_regular() else {
        return Ok(None);
    };
    let n = h.vertex_count() as f64;
    let value = r as f64 * n.powf(-(h.order() as f64 - 2.0) / 2.0);
    let a = SymmetricTensor::adjacency(h);
    let pair = EigenPair::z(&a, value, vec![1.0; h.vertex_count()])?;
    if pair.residual > 1e-10 {
        return Err(Error::Certification {
            residual: pair.residual,
            bound: 1e-10,
        });
    }
    Ok(Some(pair))
}

/// `C(n-1, m-1) n^{-(m-2)/2}`, the Z-eigenvalue of the complete m-graph on `n`
/// vertices carried by the uniform vector.
pub fn complete_graph_z(n: usize, m: usize) -> f64 {
    let r = binomial(n - 1, m - 1).expect("binomial fits in u128") as f64;
    r * (n as f64).powf(-(m as f64 - 2.0) / 2.0)
}
