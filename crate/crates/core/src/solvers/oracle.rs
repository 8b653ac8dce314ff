//! Multi-start damped Newton on `{A x^{m-1} = lambda x, ||x|| = 1}`: a desk-scale
//! oracle for the real Z-spectrum, independent of the power iterations.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::eigenpair::EigenPair;
use crate::error::{Error, Result};
use crate::tensor::{Contraction, SymmetricTensor};

/// Eigenvalues closer than this are the same eigenvalue.
pub const VALUE_CLUSTER_TOL: f64 = 1e-6;
/// Eigenvectors closer than this (max norm, after sign normalization) coincide.
pub const VECTOR_CLUSTER_TOL: f64 = 1e-5;

const MAX_HALVINGS: usize = 20;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub n_starts: usize,
    pub seed: u64,
    /// Newton stops once `||F|| <= tol`.
    pub tol: f64,
    /// Solutions are kept when the Z-residual is at most this.
    pub accept_residual: f64,
    pub max_newton: usize,
    pub max_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            n_starts: 2048,
            seed: 0,
            tol: 1e-13,
            accept_residual: 1e-9,
            max_newton: 200,
            max_n: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZSpectrumSample {
    /// Distinct Z-pairs, sorted by value (descending) then vector.
    pub pairs: Vec<EigenPair>,
    pub starts: usize,
    pub converged_starts: usize,
}

impl ZSpectrumSample {
    /// Distinct eigenvalues (descending), merged within `tol`.
    pub fn distinct_values(&self, tol: f64) -> Vec<f64> {
        let mut values: Vec<f64> = Vec::new();
        for p in &self.pairs {
            if values.last().is_none_or(|&v| (v - p.value).abs() > tol) {
                values.push(p.value);
            }
        }
        values
    }
}

struct Newton<'a> {
    a: &'a SymmetricTensor,
    n: usize,
}

impl Newton<'_> {
    fn residual(&self, x: &[f64], lambda: f64) -> DVector<f64> {
        let g = self.a.contract(x);
        let mut f = DVector::zeros(self.n + 1);
        for i in 0..self.n {
            f[i] = g[i] - lambda * x[i];
        }
        f[self.n] = 0.5 * (x.iter().map(|v| v * v).sum::<f64>() - 1.0);
        f
    }

    fn jacobian(&self, x: &[f64], lambda: f64) -> DMatrix<f64> {
        let n = self.n;
        let inner = self.a.contraction_jacobian(x).expect("dimension matches");
        let mut jac = DMatrix::zeros(n + 1, n + 1);
        jac.view_mut((0, 0), (n, n)).copy_from(&inner);
        for i in 0..n {
            jac[(i, i)] -= lambda;
            jac[(i, n)] = -x[i];
            jac[(n, i)] = x[i];
        }
        jac
    }

    /// Minimum-norm Newton step. Singular values below `1e-8` of the largest
    /// are dropped, so the iteration still converges quadratically onto
    /// continua of solutions, where the Jacobian is rank deficient.
    fn step(&self, x: &[f64], lambda: f64, f: &DVector<f64>) -> Option<DVector<f64>> {
        let svd = self.jacobian(x, lambda).svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-8;
        let delta = svd.solve(&-f, cutoff).ok()?;
        delta.iter().all(|d| d.is_finite()).then_some(delta)
    }

    /// Damped Newton from `(x, lambda)`; `None` on stagnation.
    fn solve(&self, mut x: Vec<f64>, mut lambda: f64, cfg: &OracleConfig) -> Option<(Vec<f64>, f64)> {
        let mut f = self.residual(&x, lambda);
        for _ in 0..cfg.max_newton {
            let fnorm = f.norm();
            if fnorm <= cfg.tol {
                return Some((x, lambda));
            }
            let delta = self.step(&x, lambda, &f)?;
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..=MAX_HALVINGS {
                let trial_x: Vec<f64> = x.iter().zip(delta.iter()).map(|(xi, d)| xi + t * d).collect();
                let trial_lambda = lambda + t * delta[self.n];
                let trial_f = self.residual(&trial_x, trial_lambda);
                if trial_f.norm() < fnorm {
                    x = trial_x;
                    lambda = trial_lambda;
                    f = trial_f;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (f.norm() <= cfg.tol.sqrt()).then_some((x, lambda))
    }
}

/// For even order `(lambda, x)` and `(lambda, -x)` are the same eigenvalue with
/// opposite vectors; the first coordinate of largest magnitude is made positive.
fn canonical_sign(x: &mut [f64], order: usize) {
    if order % 2 == 1 {
        return;
    }
    let mut best = 0;
    for i in 1..x.len() {
        if x[i].abs() > x[best].abs() + 1e-9 {
            best = i;
        }
    }
    if x[best] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

fn same_pair(p: &EigenPair, q: &EigenPair) -> bool {
    (p.value - q.value).abs() <= VALUE_CLUSTER_TOL
        && p
            .vector
            .iter()
            .zip(&q.vector)
            .all(|(a, b)| (a - b).abs() <= VECTOR_CLUSTER_TOL)
}

fn compare_pairs(p: &EigenPair, q: &EigenPair) -> Ordering {
    q.value.total_cmp(&p.value).then_with(|| {
        p.vector
            .iter()
            .zip(&q.vector)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Real Z-eigenpairs found from `cfg.n_starts` random starts on the sphere.
pub fn brute_force_z_oracle(a: &SymmetricTensor, cfg: &OracleConfig) -> Result<ZSpectrumSample> {
    let n = a.dim();
    if n > cfg.max_n {
        return Err(Error::SearchLimit {
            n,
            limit: cfg.max_n,
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let newton = Newton { a, n };
    let found: Vec<Option<EigenPair>> = (0..cfg.n_starts)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(idx as u64);
            let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return None;
            }
            x.iter_mut().for_each(|v| *v /= norm);
            let lambda = a.poly_eval(&x).ok()?;
            let (x, _) = newton.solve(x, lambda, cfg)?;
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut x: Vec<f64> = x.iter().map(|v| v / norm).collect();
            canonical_sign(&mut x, a.order());
            let value = a.poly_eval(&x).ok()?;
            let pair = EigenPair::z(a, value, x).ok()?;
            (pair.residual <= cfg.accept_residual).then_some(pair)
        })
        .collect();

    let converged_starts = found.iter().filter(|p| p.is_some()).count();
    let mut pairs: Vec<EigenPair> = Vec::new();
    for pair in found.into_iter().flatten() {
        if !pairs.iter().any(|q| same_pair(q, &pair)) {
            pairs.push(pair);
        }
    }
    pairs.sort_by(compare_pairs);
    Ok(ZSpectrumSample {
        pairs,
        starts: cfg.n_starts,
        converged_starts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn values_of(h: &Hypergraph) -> Vec<f64> {
        let a = SymmetricTensor::adjacency(h);
        brute_force_z_oracle(&a, &OracleConfig::default())
            .unwrap()
            .distinct_values(VALUE_CLUSTER_TOL)
    }

    fn assert_values(found: &[f64], expected: &[f64]) {
        assert_eq!(found.len(), expected.len(), "found {found:?}");
        for (f, e) in found.iter().zip(expected) {
            assert!((f - e).abs() < 1e-8, "found {found:?}, expected {expected:?}");
        }
    }

    #[test]
    fn two_vertex_multigraph_spectrum() {
        let h = Hypergraph::build(2, 3, [[1, 1, 2], [2, 2, 2]]).unwrap();
        let r = 2f64.sqrt() / 2.0;
        assert_values(&values_of(&h), &[r, 0.5, -0.5, -r]);
    }

    #[test]
    fn path_spectrum() {
        let h = Hypergraph::build(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        let s = 3f64.sqrt() / 3.0;
        assert_values(&values_of(&h), &[s, 0.0, -s]);
    }

    #[test]
    fn pairs_are_sorted_and_distinct() {
        let h = Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let a = SymmetricTensor::adjacency(&h);
        let sample = brute_force_z_oracle(&a, &OracleConfig::default()).unwrap();
        assert!(sample.pairs.windows(2).all(|w| w[0].value >= w[1].value));
        for (i, p) in sample.pairs.iter().enumerate() {
            assert!(p.residual <= 1e-9);
            assert!(sample.pairs[i + 1..].iter().all(|q| !same_pair(p, q)));
        }
        // eight vectors for 3/2 and -3/2 counted once each, four axis vectors for 0...
        let zeros = sample.pairs.iter().filter(|p| p.value.abs() < 1e-9).count();
        assert_eq!(zeros, 8);
    }

    #[test]
    fn even_order_vectors_are_sign_normalized() {
        let h = Hypergraph::build(4, 4, [[1, 2, 3, 4]]).unwrap();
        let a = SymmetricTensor::adjacency(&h);
        let sample = brute_force_z_oracle(&a, &OracleConfig::default()).unwrap();
        let quarter: Vec<&EigenPair> = sample
            .pairs
            .iter()
            .filter(|p| (p.value - 0.25).abs() < 1e-9)
            .collect();
        // (±1/2)^4 with an even number of minus signs, modulo x -> -x
        assert_eq!(quarter.len(), 4);
    }

    #[test]
    fn refuses_large_dimension() {
        let h = Hypergraph::build(9, 2, [[1, 2]]).unwrap();
        let a = SymmetricTensor::adjacency(&h);
        assert!(matches!(
            brute_force_z_oracle(&a, &OracleConfig::default()),
            Err(Error::SearchLimit { .. })
        ));
    }
}
