//! Shifted symmetric higher-order power method for Z-eigenpairs, and the
//! multi-start driver for the largest Z-eigenvalue of an adjacency tensor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{z_bounds, BoundsReport};
use super::eigenpair::EigenPair;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tensor::{Contraction, SymmetricTensor};

/// How the shift `alpha` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ShiftPolicy {
    /// `ceil(m * sum of all entries)`.
    Ceiling,
    /// `(m - 1) * max_i sum_{i2..im} |a_{i i2..im}|`, a bound on the curvature
    /// of `A x^m` on the sphere. Smaller than `Ceiling`, so convergence is faster.
    RowSum,
    Fixed(f64),
}

impl ShiftPolicy {
    pub fn resolve(self, a: &SymmetricTensor) -> f64 {
        let m = a.order() as f64;
        match self {
            ShiftPolicy::Ceiling => (m * a.total_sum()).ceil(),
            ShiftPolicy::RowSum => {
                let abs = SymmetricTensor::from_entries(
                    a.order(),
                    a.dim(),
                    a.entries().iter().map(|(k, v)| (k.clone(), v.abs())),
                )
                .expect("entries of a valid tensor");
                (m - 1.0) * abs.row_sums().into_iter().fold(0.0, f64::max)
            }
            ShiftPolicy::Fixed(alpha) => alpha,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SshopmConfig {
    pub shift: ShiftPolicy,
    pub start: Vec<f64>,
    /// Bound on `|lambda_{k+1} - lambda_k|`.
    pub tol: f64,
    /// Bound on `||A x^{m-1} - lambda x||`; `sqrt(tol)` when absent.
    pub residual_tol: Option<f64>,
    pub max_iter: usize,
}

impl SshopmConfig {
    pub fn new(start: Vec<f64>) -> Self {
        SshopmConfig {
            shift: ShiftPolicy::Ceiling,
            start,
            tol: 1e-10,
            residual_tol: Some(1e-9),
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SshopmResult {
    pub pair: EigenPair,
    pub shift: f64,
    pub iterations: usize,
    /// `A x_k^m` for every iterate, starting with the initial vector.
    pub trace: Vec<f64>,
}

/// Iterates `x <- (A x^{m-1} + alpha x) / ||.||` from a nonnegative start.
pub fn sshopm(a: &SymmetricTensor, cfg: &SshopmConfig) -> Result<SshopmResult> {
    let n = a.dim();
    if cfg.start.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cfg.start.len(),
        });
    }
    if cfg.start.iter().any(|&v| !(v >= 0.0)) {
        return Err(Error::InvalidArgument("start vector must be nonnegative".into()));
    }
    let norm = cfg.start.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("start vector is zero".into()));
    }
    let alpha = cfg.shift.resolve(a);
    let residual_tol = cfg.residual_tol.unwrap_or(cfg.tol.sqrt());

    let mut x: Vec<f64> = cfg.start.iter().map(|v| v / norm).collect();
    let mut g = vec![0.0; n];
    let mut trace = Vec::new();
    let mut previous = f64::NAN;
    let mut residual = f64::INFINITY;
    for k in 0..=cfg.max_iter {
        a.contract_into(&x, &mut g);
        let lambda: f64 = x.iter().zip(&g).map(|(xi, gi)| xi * gi).sum();
        trace.push(lambda);
        residual = x
            .iter()
            .zip(&g)
            .map(|(xi, gi)| (gi - lambda * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if (lambda - previous).abs() <= cfg.tol && residual <= residual_tol {
            let pair = EigenPair::z(a, lambda, x)?;
            return Ok(SshopmResult {
                pair,
                shift: alpha,
                iterations: k,
                trace,
            });
        }
        if k == cfg.max_iter {
            break;
        }
        previous = lambda;
        let mut y: Vec<f64> = g.iter().zip(&x).map(|(gi, xi)| gi + alpha * xi).collect();
        let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(ynorm > 0.0) {
            return Err(Error::DegenerateShift);
        }
        y.iter_mut().for_each(|v| *v /= ynorm);
        x = y;
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iter,
        value: *trace.last().unwrap_or(&f64::NAN),
        gap: residual,
    })
}

/// Settings for [`z_spectral_radius`].
#[derive(Debug, Clone)]
pub struct ZStarConfig {
    /// Random nonnegative starts in addition to the uniform vector.
    pub n_starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub residual_tol: f64,
    pub max_iter: usize,
    pub shift: ShiftPolicy,
}

impl Default for ZStarConfig {
    fn default() -> Self {
        ZStarConfig {
            n_starts: 32,
            seed: 0,
            tol: 1e-10,
            residual_tol: 1e-9,
            max_iter: 10_000,
            shift: ShiftPolicy::Ceiling,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZStarResult {
    pub lambda_star: f64,
    pub pair: EigenPair,
    pub bounds: BoundsReport,
    /// `lower_degree_sum <= lower_sharp <= lambda_star <= min(upper_degree, upper_edges)`.
    pub bounds_hold: bool,
    pub starts: usize,
    pub converged_starts: usize,
    /// Index of the winning start; 0 is the uniform vector.
    pub best_start: usize,
}

/// Start `index` of a multi-start run: the uniform vector for 0, otherwise
/// uniform random coordinates in `[0, 1)` from a stream keyed by `(seed, index)`.
pub fn nonnegative_start(n: usize, seed: u64, index: usize) -> Vec<f64> {
    if index == 0 {
        return vec![1.0; n];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        if v.iter().any(|&c| c > 0.0) {
            return v;
        }
    }
}

/// Multi-start SS-HOPM over nonnegative starts; the largest converged value is
/// the estimate of the largest Z-eigenvalue.
pub fn z_spectral_radius(h: &Hypergraph, cfg: &ZStarConfig) -> Result<ZStarResult> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidArgument("hypergraph has no edges".into()));
    }
    let a = SymmetricTensor::adjacency(h);
    let n = h.vertex_count();
    let total = cfg.n_starts + 1;
    let outcomes: Vec<Option<EigenPair>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let start = nonnegative_start(n, cfg.seed, idx);
            let run = SshopmConfig {
                shift: cfg.shift,
                start,
                tol: cfg.tol,
                residual_tol: Some(cfg.residual_tol),
                max_iter: cfg.max_iter,
            };
            sshopm(&a, &run).ok().map(|r| r.pair)
        })
        .collect();

    let converged_starts = outcomes.iter().filter(|o| o.is_some()).count();
    // Ties within 1e-12 go to the lowest start index, so the result does not
    // depend on scheduling.
    let mut best: Option<(usize, &EigenPair)> = None;
    for (idx, pair) in outcomes.iter().enumerate() {
        let Some(pair) = pair else { continue };
        if best.is_none_or(|(_, b)| pair.value > b.value + 1e-12) {
            best = Some((idx, pair));
        }
    }
    let Some((best_start, pair)) = best else {
        return Err(Error::NotConverged {
            iterations: cfg.max_iter,
            value: f64::NAN,
            gap: f64::NAN,
        });
    };
    let bounds = z_bounds(h);
    let bounds_hold = bounds.sandwiches(pair.value, 1e-9);
    Ok(ZStarResult {
        lambda_star: pair.value,
        pair: pair.clone(),
        bounds,
        bounds_hold,
        starts: total,
        converged_starts,
        best_start,
    })
}
