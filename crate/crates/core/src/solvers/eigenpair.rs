use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::SymmetricTensor;

/// Residual bound every emitted eigenpair must meet.
pub const CERTIFICATION_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EigenKind {
    /// `A x^{m-1} = lambda x^{[m-1]}`, normalized so that `sum |x_i|^m = 1`.
    H,
    /// `A x^{m-1} = lambda x`, `||x||_2 = 1`.
    Z,
}

/// A real eigenpair together with the residual of its defining equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub kind: EigenKind,
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `||A x^{m-1} - lambda x||_2`.
pub fn z_residual(a: &SymmetricTensor, lambda: f64, x: &[f64]) -> Result<f64> {
    let ax = a.apply(x)?;
    Ok(norm2(
        &ax.iter().zip(x).map(|(g, xi)| g - lambda * xi).collect::<Vec<_>>(),
    ))
}

/// `||A x^{m-1} - lambda x^{[m-1]}||_2`.
pub fn h_residual(a: &SymmetricTensor, lambda: f64, x: &[f64]) -> Result<f64> {
    let ax = a.apply(x)?;
    let p = a.order() as i32 - 1;
    Ok(norm2(
        &ax.iter()
            .zip(x)
            .map(|(g, xi)| g - lambda * xi.powi(p))
            .collect::<Vec<_>>(),
    ))
}

impl EigenPair {
    /// Z-pair with the vector scaled to unit 2-norm.
    pub fn z(a: &SymmetricTensor, value: f64, mut vector: Vec<f64>) -> Result<Self> {
        let norm = norm2(&vector);
        if norm == 0.0 {
            return Err(Error::InvalidArgument("eigenvector is zero".into()));
        }
        vector.iter_mut().for_each(|v| *v /= norm);
        let residual = z_residual(a, value, &vector)?;
        Ok(EigenPair {
            kind: EigenKind::Z,
            value,
            vector,
            residual,
        })
    }

    /// H-pair with the vector scaled so that `sum |x_i|^m = 1`.
    pub fn h(a: &SymmetricTensor, value: f64, mut vector: Vec<f64>) -> Result<Self> {
        let m = a.order() as i32;
        let norm = vector
            .iter()
            .map(|v| v.abs().powi(m))
            .sum::<f64>()
            .powf(1.0 / m as f64);
        if norm == 0.0 {
            return Err(Error::InvalidArgument("eigenvector is zero".into()));
        }
        vector.iter_mut().for_each(|v| *v /= norm);
        let residual = h_residual(a, value, &vector)?;
        Ok(EigenPair {
            kind: EigenKind::H,
            value,
            vector,
            residual,
        })
    }

    /// Residual recomputed from scratch, ignoring the stored field.
    pub fn recompute_residual(&self, a: &SymmetricTensor) -> Result<f64> {
        match self.kind {
            EigenKind::Z => z_residual(a, self.value, &self.vector),
            EigenKind::H => h_residual(a, self.value, &self.vector),
        }
    }

    /// Normalization defect: `| ||x||_2 - 1 |` for Z, `| sum |x_i|^m - 1 |` for H.
    pub fn normalization_error(&self, order: usize) -> f64 {
        match self.kind {
            EigenKind::Z => (norm2(&self.vector) - 1.0).abs(),
            EigenKind::H => {
                (self
                    .vector
                    .iter()
                    .map(|v| v.abs().powi(order as i32))
                    .sum::<f64>()
                    - 1.0)
                    .abs()
            }
        }
    }

    /// Recomputes the residual and fails if it, or the normalization defect,
    /// exceeds `bound`.
    pub fn certify(&self, a: &SymmetricTensor, bound: f64) -> Result<f64> {
        let residual = self.recompute_residual(a)?;
        let defect = self.normalization_error(a.order());
        let worst = residual.max(defect);
        if !(worst <= bound) {
            return Err(Error::Certification {
                residual: worst,
                bound,
            });
        }
        Ok(residual)
    }
}
