//! Collatz-Wielandt power iteration for the H-spectral radius of a nonnegative
//! tensor.
//!
//! The tensor is made positive with a small multiple of the all-ones tensor, the
//! iteration runs for a short schedule of perturbations, and the limit is
//! extrapolated linearly to zero perturbation. The last iterate is then refined
//! on `A + sI`, which has the same eigenvectors as `A` and is weakly primitive
//! when `A` is weakly irreducible. Reducible tensors are split into blocks first.

use serde::{Deserialize, Serialize};

use super::eigenpair::EigenPair;
use crate::error::{Error, Result};
use crate::tensor::{Contraction, IdentityShift, SymmetricTensor, UnitTensorPerturbation};

#[derive(Debug, Clone)]
pub struct NqzConfig {
    /// Perturbations of the all-ones tensor, run in the given order.
    pub mu_schedule: Vec<f64>,
    /// Stop when `upper - lower <= tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Identity shift used for the final refinement on the unperturbed tensor.
    pub polish_shift: f64,
}

impl Default for NqzConfig {
    fn default() -> Self {
        NqzConfig {
            mu_schedule: vec![1e-3, 1e-4, 1e-5],
            tol: 1e-10,
            max_iter: 10_000,
            polish_shift: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

/// Iterate, contracted iterate and brackets after `iteration` steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NqzState {
    pub iteration: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

/// One run of the iteration on a fixed operator.
#[derive(Debug, Clone, Serialize)]
pub struct NqzRun {
    /// Perturbation for schedule runs; identity shift for the refinement run.
    pub parameter: f64,
    pub history: Vec<Bracket>,
    pub state: NqzState,
    pub converged: bool,
}

impl NqzRun {
    pub fn estimate(&self) -> f64 {
        0.5 * (self.state.lower + self.state.upper)
    }

    /// True if the lower bracket never decreases, the upper never increases and
    /// they never cross, each up to `slack`.
    pub fn brackets_monotone(&self, slack: f64) -> bool {
        self.history.iter().all(|b| b.lower <= b.upper + slack)
            && self.history.windows(2).all(|w| {
                w[1].lower >= w[0].lower - slack && w[1].upper <= w[0].upper + slack
            })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NqzResult {
    /// Best estimate of the H-spectral radius.
    pub rho: f64,
    /// Zero-perturbation extrapolation of the schedule runs.
    pub extrapolated: f64,
    pub pair: EigenPair,
    pub runs: Vec<NqzRun>,
    pub polish: Option<NqzRun>,
    pub converged: bool,
}

impl NqzResult {
    /// Bracket of the smallest perturbation in the schedule.
    pub fn certificate(&self) -> Option<Bracket> {
        self.runs.last().map(|r| Bracket {
            lower: r.state.lower,
            upper: r.state.upper,
        })
    }

    pub fn iterations(&self) -> usize {
        self.runs.iter().map(|r| r.state.iteration).sum::<usize>()
            + self.polish.as_ref().map_or(0, |p| p.state.iteration)
    }
}

fn brackets(x: &[f64], y: &[f64], order: usize) -> Option<Bracket> {
    let p = order as i32 - 1;
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for (&xi, &yi) in x.iter().zip(y) {
        if !(xi > 0.0) {
            return None;
        }
        let ratio = yi / xi.powi(p);
        lower = lower.min(ratio);
        upper = upper.max(ratio);
    }
    Some(Bracket { lower, upper })
}

/// Runs the iteration on `op` from `start` (strictly positive).
pub fn nqz_run<C: Contraction>(
    op: &C,
    start: &[f64],
    parameter: f64,
    tol: f64,
    max_iter: usize,
) -> NqzRun {
    let m = op.order();
    let root = 1.0 / (m as f64 - 1.0);
    let mut x = start.to_vec();
    let mut y = op.contract(&x);
    let mut history = Vec::new();
    let mut iteration = 0;
    let mut converged = false;
    loop {
        let Some(b) = brackets(&x, &y, m) else { break };
        history.push(b);
        if b.upper - b.lower <= tol {
            converged = true;
            break;
        }
        if iteration >= max_iter {
            break;
        }
        let mut next: Vec<f64> = y.iter().map(|v| v.max(0.0).powf(root)).collect();
        let norm = next
            .iter()
            .map(|v| v.powi(m as i32))
            .sum::<f64>()
            .powf(1.0 / m as f64);
        if !(norm > 0.0) {
            break;
        }
        next.iter_mut().for_each(|v| *v /= norm);
        x = next;
        op.contract_into(&x, &mut y);
        iteration += 1;
    }
    let last = history.last().copied().unwrap_or(Bracket {
        lower: f64::NAN,
        upper: f64::NAN,
    });
    NqzRun {
        parameter,
        history,
        state: NqzState {
            iteration,
            x,
            y,
            lower: last.lower,
            upper: last.upper,
        },
        converged,
    }
}

/// Least-squares line through `(mu, rho)`, evaluated at zero.
fn extrapolate(points: &[(f64, f64)]) -> f64 {
    match points {
        [] => f64::NAN,
        [(_, rho)] => *rho,
        _ => {
            let k = points.len() as f64;
            let mean_mu = points.iter().map(|p| p.0).sum::<f64>() / k;
            let mean_rho = points.iter().map(|p| p.1).sum::<f64>() / k;
            let sxx: f64 = points.iter().map(|p| (p.0 - mean_mu).powi(2)).sum();
            if sxx == 0.0 {
                return mean_rho;
            }
            let sxy: f64 = points
                .iter()
                .map(|p| (p.0 - mean_mu) * (p.1 - mean_rho))
                .sum();
            mean_rho - sxy / sxx * mean_mu
        }
    }
}

/// H-spectral radius of a nonnegative tensor, starting from the all-ones vector.
///
/// A tensor that splits into diagonal blocks is solved block by block; the
/// radius is the largest block radius and the eigenvector is that block's,
/// padded with zeros. `runs` and `polish` then describe the winning block.
pub fn nqz_h_spectral_radius(a: &SymmetricTensor, cfg: &NqzConfig) -> Result<NqzResult> {
    if !a.is_nonnegative() {
        return Err(Error::NegativeEntries);
    }
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if cfg.mu_schedule.is_empty() || cfg.mu_schedule.iter().any(|&mu| !(mu >= 0.0)) {
        return Err(Error::InvalidArgument(
            "perturbation schedule must be nonempty and nonnegative".into(),
        ));
    }
    let blocks = a.support_components();
    if blocks.len() == 1 && blocks[0].len() == a.dim() {
        return nqz_irreducible(a, cfg);
    }
    let mut best: Option<(Vec<usize>, NqzResult)> = None;
    for block in blocks {
        let res = nqz_irreducible(&a.restrict(&block)?, cfg)?;
        if best.as_ref().is_none_or(|(_, b)| res.rho > b.rho + 1e-12) {
            best = Some((block, res));
        }
    }
    let (block, res) = best.expect("a nonzero tensor has a block");
    let mut vector = vec![0.0; a.dim()];
    for (new, &old) in block.iter().enumerate() {
        vector[old] = res.pair.vector[new];
    }
    let pair = EigenPair::h(a, res.rho, vector)?;
    Ok(NqzResult { pair, ..res })
}

fn nqz_irreducible(a: &SymmetricTensor, cfg: &NqzConfig) -> Result<NqzResult> {
    let ones = vec![1.0; a.dim()];
    let runs: Vec<NqzRun> = cfg
        .mu_schedule
        .iter()
        .map(|&mu| {
            let op = UnitTensorPerturbation { base: a, mu };
            nqz_run(&op, &ones, mu, cfg.tol, cfg.max_iter)
        })
        .collect();
    let points: Vec<(f64, f64)> = runs.iter().map(|r| (r.parameter, r.estimate())).collect();
    let extrapolated = extrapolate(&points);
    let last = runs.last().expect("schedule is nonempty");

    let op = IdentityShift {
        base: a,
        shift: cfg.polish_shift,
    };
    let polish = nqz_run(&op, &last.state.x, cfg.polish_shift, cfg.tol, cfg.max_iter);
    let (rho, vector) = if polish.converged {
        (polish.estimate() - cfg.polish_shift, polish.state.x.clone())
    } else {
        (extrapolated, last.state.x.clone())
    };
    let converged = runs.iter().all(|r| r.converged) && polish.converged;
    let pair = EigenPair::h(a, rho, vector)?;
    Ok(NqzResult {
        rho,
        extrapolated,
        pair,
        runs,
        polish: Some(polish),
        converged,
    })
}
