//! Negation symmetry of the Z-spectrum: odd order, or even order with an
//! m-partition.

use serde::Serialize;

use super::eigenpair::{EigenKind, EigenPair, CERTIFICATION_BOUND};
use crate::error::{Error, Result};
use crate::tensor::SymmetricTensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryCheck {
    /// The multiset is invariant under negation within the tolerance.
    pub symmetric: bool,
    pub sum: f64,
}

/// Pairs the k-th smallest value with the k-th largest and checks that each
/// pair sums to zero within `tol`.
pub fn spectrum_symmetry_check(eigs: &[f64], tol: f64) -> SymmetryCheck {
    let mut sorted = eigs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let symmetric = sorted
        .iter()
        .zip(sorted.iter().rev())
        .all(|(lo, hi)| (lo + hi).abs() <= tol);
    SymmetryCheck {
        symmetric,
        sum: eigs.iter().sum(),
    }
}

/// Maps a Z-pair to one for the negated eigenvalue.
///
/// Odd order: `(-lambda, -x)`. Even order: `(-lambda, y)` with `y` equal to `x`
/// except for a sign flip on the first part of the m-partition (1-based labels).
pub fn negate_eigenpair(
    a: &SymmetricTensor,
    pair: &EigenPair,
    partition: Option<&[Vec<usize>]>,
) -> Result<EigenPair> {
    if pair.kind != EigenKind::Z {
        return Err(Error::InvalidArgument("expected a Z-eigenpair".into()));
    }
    if pair.vector.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: pair.vector.len(),
        });
    }
    let vector: Vec<f64> = if a.order() % 2 == 1 {
        pair.vector.iter().map(|v| -v).collect()
    } else {
        let parts = partition.ok_or_else(|| {
            Error::InvalidArgument("even order needs an m-partition to negate a pair".into())
        })?;
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty partition".into()))?;
        let mut y = pair.vector.clone();
        for &label in first {
            if label == 0 || label > y.len() {
                return Err(Error::VertexOutOfRange {
                    vertex: label,
                    n: y.len(),
                });
            }
            y[label - 1] = -y[label - 1];
        }
        y
    };
    let mirrored = EigenPair::z(a, -pair.value, vector)?;
    mirrored.certify(a, CERTIFICATION_BOUND)?;
    Ok(mirrored)
}
