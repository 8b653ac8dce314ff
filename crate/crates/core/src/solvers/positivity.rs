//! Zero patterns of nonnegative Z-eigenvectors and the zero-padding
//! construction that produces such eigenvectors from a not-nicely-connected
//! witness.

use serde::{Deserialize, Serialize};

use super::eigenpair::{EigenKind, EigenPair, CERTIFICATION_BOUND};
use super::sshopm::{z_spectral_radius, ZStarConfig};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tensor::SymmetricTensor;

/// Default threshold below which a coordinate counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityClass {
    pub strictly_positive: bool,
    /// 1-based vertices whose coordinate is zero within tolerance.
    pub zero_set: Vec<usize>,
    /// The zero set is a valid not-nicely-connected witness (vacuously true
    /// when it is empty).
    pub witness_consistent: bool,
}

/// Classifies a Z-pair with positive value and nonnegative vector.
pub fn classify_positivity(
    h: &Hypergraph,
    pair: &EigenPair,
    zero_tol: f64,
) -> Result<PositivityClass> {
    if pair.kind != EigenKind::Z {
        return Err(Error::InvalidArgument("expected a Z-eigenpair".into()));
    }
    if pair.vector.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: h.vertex_count(),
            found: pair.vector.len(),
        });
    }
    if !(pair.value > 0.0) {
        return Err(Error::InvalidArgument("eigenvalue must be positive".into()));
    }
    if pair.vector.iter().any(|&v| v < -zero_tol) {
        return Err(Error::InvalidArgument("eigenvector must be nonnegative".into()));
    }
    let zero_set: Vec<usize> = pair
        .vector
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() <= zero_tol)
        .map(|(i, _)| i + 1)
        .collect();
    let witness_consistent = zero_set.is_empty() || h.is_witness(&zero_set)?;
    Ok(PositivityClass {
        strictly_positive: zero_set.is_empty(),
        zero_set,
        witness_consistent,
    })
}

/// Pads a Z-pair of the hypergraph induced on `V \ v0` with zeros on `v0`.
pub fn embed_z_eigenpair(h: &Hypergraph, v0: &[usize], inner: &EigenPair) -> Result<EigenPair> {
    if v0.is_empty() {
        if inner.vector.len() != h.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: h.vertex_count(),
                found: inner.vector.len(),
            });
        }
        return Ok(inner.clone());
    }
    let (sub, map) = h.induced_subhypergraph(v0)?;
    if inner.vector.len() != sub.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: sub.vertex_count(),
            found: inner.vector.len(),
        });
    }
    let mut vector = vec![0.0; h.vertex_count()];
    for (new, &label) in map.iter().enumerate() {
        vector[label - 1] = inner.vector[new];
    }
    let a = SymmetricTensor::adjacency(h);
    let pair = EigenPair::z(&a, inner.value, vector)?;
    pair.certify(&a, CERTIFICATION_BOUND)?;
    Ok(pair)
}

/// A positive Z-eigenvalue with a nonnegative eigenvector vanishing on `v0`:
/// the largest Z-pair of the induced hypergraph, padded with zeros.
pub fn boundary_z_eigenpair(h: &Hypergraph, v0: &[usize], cfg: &ZStarConfig) -> Result<EigenPair> {
    if !h.is_witness(v0)? {
        return Err(Error::InvalidArgument(
            "vertex set is not a not-nicely-connected witness".into(),
        ));
    }
    let (sub, _) = h.induced_subhypergraph(v0)?;
    let inner = z_spectral_radius(&sub, cfg)?;
    embed_z_eigenpair(h, v0, &inner.pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> Hypergraph {
        Hypergraph::build(7, 3, [[1, 2, 3], [3, 4, 5], [5, 6, 7]]).unwrap()
    }

    fn path_family(t: f64) -> Vec<f64> {
        let s = 3f64.sqrt() / 3.0;
        let u = ((1.0 - 3.0 * t * t) / 3.0).sqrt();
        vec![0.0, 0.0, t, t, s, u, u]
    }

    #[test]
    fn family_members_are_eigenvectors() {
        let a = SymmetricTensor::adjacency(&path());
        for t in [0.1, 0.3, 0.5] {
            let pair = EigenPair::z(&a, 3f64.sqrt() / 3.0, path_family(t)).unwrap();
            assert!(pair.residual < 1e-15, "t = {t}: {}", pair.residual);
        }
    }

    #[test]
    fn classify_boundary_pairs() {
        let h = path();
        let a = SymmetricTensor::adjacency(&h);
        let pair = EigenPair::z(&a, 3f64.sqrt() / 3.0, path_family(0.3)).unwrap();
        let class = classify_positivity(&h, &pair, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(class.zero_set, vec![1, 2]);
        assert!(!class.strictly_positive);
        assert!(class.witness_consistent);

        let loops = Hypergraph::build(2, 3, [[1, 1, 1], [1, 1, 2], [2, 2, 2]]).unwrap();
        let a = SymmetricTensor::adjacency(&loops);
        let pair = EigenPair::z(&a, 0.5, vec![0.0, 1.0]).unwrap();
        assert!(pair.residual < 1e-15);
        let class = classify_positivity(&loops, &pair, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(class.zero_set, vec![1]);
        assert!(class.witness_consistent);
    }

    #[test]
    fn classify_positive_pair() {
        let k4 = Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let a = SymmetricTensor::adjacency(&k4);
        let pair = EigenPair::z(&a, 1.5, vec![0.5; 4]).unwrap();
        let class = classify_positivity(&k4, &pair, DEFAULT_ZERO_TOL).unwrap();
        assert!(class.strictly_positive);
        assert!(class.zero_set.is_empty());
        assert!(class.witness_consistent);
    }

    #[test]
    fn classify_rejects_bad_pairs() {
        let h = path();
        let a = SymmetricTensor::adjacency(&h);
        let mut pair = EigenPair::z(&a, 3f64.sqrt() / 3.0, path_family(0.3)).unwrap();
        pair.vector[2] = -0.1;
        assert!(classify_positivity(&h, &pair, DEFAULT_ZERO_TOL).is_err());
        pair.vector[2] = 0.3;
        pair.value = 0.0;
        assert!(classify_positivity(&h, &pair, DEFAULT_ZERO_TOL).is_err());
    }

    #[test]
    fn embedding_pads_with_zeros() {
        let h = path();
        let (sub, _) = h.induced_subhypergraph(&[1, 2]).unwrap();
        let inner_a = SymmetricTensor::adjacency(&sub);
        let s = 3f64.sqrt() / 3.0;
        let b = (1.0 / 3.0 - 0.09f64).sqrt();
        let inner = EigenPair::z(&inner_a, s, vec![0.3, 0.3, s, b, b]).unwrap();
        assert!(inner.residual < 1e-15);
        let pair = embed_z_eigenpair(&h, &[1, 2], &inner).unwrap();
        assert_eq!(&pair.vector[..2], &[0.0, 0.0]);
        assert!(pair.residual < 1e-12);

        let loops = Hypergraph::build(2, 3, [[1, 1, 1], [1, 1, 2], [2, 2, 2]]).unwrap();
        let (sub, _) = loops.induced_subhypergraph(&[1]).unwrap();
        let inner = EigenPair::z(&SymmetricTensor::adjacency(&sub), 0.5, vec![1.0]).unwrap();
        let pair = embed_z_eigenpair(&loops, &[1], &inner).unwrap();
        assert_eq!(pair.vector, vec![0.0, 1.0]);
        assert_eq!(pair.value, 0.5);

        let k4 = Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let same = EigenPair::z(&SymmetricTensor::adjacency(&k4), 1.5, vec![0.5; 4]).unwrap();
        assert_eq!(embed_z_eigenpair(&k4, &[], &same).unwrap(), same);
    }

    #[test]
    fn embedding_fails_for_non_witness() {
        // every edge through 4 meets {4} exactly once
        let k4 = Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let (sub, _) = k4.induced_subhypergraph(&[4]).unwrap();
        let inner = z_spectral_radius(&sub, &ZStarConfig::default()).unwrap();
        assert!(matches!(
            embed_z_eigenpair(&k4, &[4], &inner.pair),
            Err(Error::Certification { .. })
        ));
    }

    #[test]
    fn boundary_pair_from_witness() {
        let h = path();
        let pair = boundary_z_eigenpair(&h, &[1, 2], &ZStarConfig::default()).unwrap();
        assert!((pair.value - 3f64.sqrt() / 3.0).abs() < 1e-9);
        let class = classify_positivity(&h, &pair, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(class.zero_set, vec![1, 2]);
        assert!(class.witness_consistent);
        assert!(boundary_z_eigenpair(&h, &[3], &ZStarConfig::default()).is_err());
    }
}
