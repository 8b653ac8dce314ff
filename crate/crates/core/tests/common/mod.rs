//! Helpers shared by the integration tests. The contraction here is a dense,
//! permutation-by-permutation evaluation kept independent of the library's
//! sparse contraction plan.
#![allow(dead_code)]

use std::path::PathBuf;

use hyperspectra::cli::parse_hgr;
use hyperspectra::Hypergraph;
use itertools::Itertools;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn fixture(name: &str) -> Hypergraph {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture exists");
    parse_hgr(&text).expect("fixture parses")
}

pub fn complete(n: usize, m: usize) -> Hypergraph {
    Hypergraph::build(n, m, (1..=n).combinations(m)).unwrap()
}

/// `(A x^{m-1})_i` summed over every distinct ordering of every edge, each
/// edge occurrence weighted `1/(m-1)!`.
pub fn dense_contract(h: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let m = h.order();
    let weight = 1.0 / (1..m).map(|k| k as f64).product::<f64>();
    let mut out = vec![0.0; h.vertex_count()];
    for edge in h.edges() {
        for tuple in edge.indices().iter().copied().permutations(m).unique() {
            out[tuple[0]] += weight * tuple[1..].iter().map(|&j| x[j]).product::<f64>();
        }
    }
    out
}

/// `max(||A x^{m-1} - lambda x||, | ||x|| - 1 |)`.
pub fn z_defect(h: &Hypergraph, lambda: f64, x: &[f64]) -> f64 {
    let g = dense_contract(h, x);
    let residual = g
        .iter()
        .zip(x)
        .map(|(gi, xi)| (gi - lambda * xi).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    residual.max((norm - 1.0).abs())
}

/// `max(||A x^{m-1} - lambda x^{[m-1]}||, | sum |x_i|^m - 1 |)`.
pub fn h_defect(h: &Hypergraph, lambda: f64, x: &[f64]) -> f64 {
    let m = h.order() as i32;
    let g = dense_contract(h, x);
    let residual = g
        .iter()
        .zip(x)
        .map(|(gi, xi)| (gi - lambda * xi.powi(m - 1)).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm: f64 = x.iter().map(|v| v.abs().powi(m)).sum();
    residual.max((norm - 1.0).abs())
}

/// Connectivity by breadth-first search over vertex-edge incidences.
pub fn bfs_connected(h: &Hypergraph) -> bool {
    let n = h.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = vec![0];
    seen[0] = true;
    while let Some(v) = queue.pop() {
        for e in h.edges().iter().filter(|e| e.indices().contains(&v)) {
            for &u in e.indices() {
                if !seen[u] {
                    seen[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}
