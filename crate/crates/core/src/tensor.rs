//! Sparse symmetric tensors and their contractions with vectors.
//!
//! A symmetric tensor is stored once per sorted index multiset; the value is
//! the coefficient shared by every permutation of that multiset. Indices are
//! 0-based.

use std::collections::BTreeMap;

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hypergraph::{find_isolating_subset, mask_to_indices, Hypergraph, Incidence};

/// Largest dense tensor [`SymmetricTensor::perturb`] will materialize, in `n^m`.
pub const MAX_DENSE_ENTRIES: u64 = 10_000_000;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Product of factorials of the multiplicities in a sorted multiset.
fn multiplicity_factorials(sorted: &[usize]) -> f64 {
    sorted
        .iter()
        .dedup_with_count()
        .map(|(c, _)| factorial(c))
        .product()
}

/// Anything that maps `x` to `A x^{m-1}`.
pub trait Contraction {
    fn order(&self) -> usize;
    fn dim(&self) -> usize;
    /// Writes `A x^{m-1}` into `out`. Both slices have length `dim()`.
    fn contract_into(&self, x: &[f64], out: &mut [f64]);

    fn contract(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.contract_into(x, &mut out);
        out
    }
}

/// Order-m, dimension-n symmetric tensor with sparse storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
    // Contraction plan: one term per (entry, distinct index in it). Term t adds
    // coefs[t] * prod(x[others[t*(m-1)..(t+1)*(m-1)]]) to coordinate rows[t].
    rows: Vec<usize>,
    coefs: Vec<f64>,
    others: Vec<usize>,
}

impl SymmetricTensor {
    /// Builds a tensor from `(index tuple, value)` pairs. Tuples are sorted
    /// before storage and values for the same multiset are summed.
    pub fn from_entries<I, K>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: AsRef<[usize]>,
    {
        if order < 2 || dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "tensor order must be >= 2 and dimension >= 1 (got {order}, {dim})"
            )));
        }
        let mut map: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (key, value) in entries {
            let key = key.as_ref();
            if key.len() != order {
                return Err(Error::DimensionMismatch {
                    expected: order,
                    found: key.len(),
                });
            }
            if let Some(&bad) = key.iter().find(|&&i| i >= dim) {
                return Err(Error::InvalidArgument(format!(
                    "tensor index {bad} out of range for dimension {dim}"
                )));
            }
            if !value.is_finite() {
                return Err(Error::InvalidArgument("tensor entries must be finite".into()));
            }
            let mut key = key.to_vec();
            key.sort_unstable();
            *map.entry(key).or_insert(0.0) += value;
        }
        map.retain(|_, v| *v != 0.0);
        Ok(Self::with_plan(order, dim, map))
    }

    fn with_plan(order: usize, dim: usize, entries: BTreeMap<Vec<usize>, f64>) -> Self {
        let mut rows = Vec::new();
        let mut coefs = Vec::new();
        let mut others = Vec::new();
        let arrangements = factorial(order - 1);
        for (key, &value) in &entries {
            for (pos, &i) in key.iter().enumerate() {
                if pos > 0 && key[pos - 1] == i {
                    continue;
                }
                let rest: Vec<usize> = key[..pos].iter().chain(&key[pos + 1..]).copied().collect();
                rows.push(i);
                coefs.push(value * arrangements / multiplicity_factorials(&rest));
                others.extend(rest);
            }
        }
        SymmetricTensor {
            order,
            dim,
            entries,
            rows,
            coefs,
            others,
        }
    }

    /// Adjacency tensor of an m-multigraph: `k / (m-1)!` on every index tuple
    /// whose multiset is an edge occurring `k` times.
    pub fn adjacency(h: &Hypergraph) -> Self {
        let weight = 1.0 / factorial(h.order() - 1);
        let mut entries: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for e in h.edges() {
            *entries.entry(e.indices().to_vec()).or_insert(0.0) += weight;
        }
        Self::with_plan(h.order(), h.vertex_count(), entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored entries keyed by sorted index multiset.
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.entries
    }

    /// Entry at an arbitrary index tuple.
    pub fn get(&self, index: &[usize]) -> f64 {
        let mut key = index.to_vec();
        key.sort_unstable();
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&v| v >= 0.0)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `A x^{m-1}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.contract(x))
    }

    /// `A x^m`, summed over stored multisets with their permutation counts.
    pub fn poly_eval(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let arrangements = factorial(self.order);
        Ok(self
            .entries
            .iter()
            .map(|(key, &value)| {
                let monomial: f64 = key.iter().map(|&i| x[i]).product();
                value * arrangements / multiplicity_factorials(key) * monomial
            })
            .sum())
    }

    /// Jacobian of `x -> A x^{m-1}`, i.e. `(m-1) A x^{m-2}`.
    pub fn contraction_jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_dim(x)?;
        let n = self.dim;
        let stride = self.order - 1;
        let mut jac = DMatrix::zeros(n, n);
        for (t, (&row, &coef)) in self.rows.iter().zip(&self.coefs).enumerate() {
            let rest = &self.others[t * stride..(t + 1) * stride];
            for skip in 0..stride {
                let partial: f64 = rest
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != skip)
                    .map(|(_, &j)| x[j])
                    .product();
                jac[(row, rest[skip])] += coef * partial;
            }
        }
        Ok(jac)
    }

    /// `sum_{i2..im} a_{i i2..im}` for every `i`.
    pub fn row_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.dim];
        for (&row, &coef) in self.rows.iter().zip(&self.coefs) {
            sums[row] += coef;
        }
        sums
    }

    /// Sum of all `n^m` entries.
    pub fn total_sum(&self) -> f64 {
        self.row_sums().iter().sum()
    }

    /// `M(A)`: `m_ij` is the sum of `a_{i i2..im}` over tuples whose tail
    /// contains `j`.
    pub fn representation_matrix(&self) -> Result<RepresentationMatrix> {
        if !self.is_nonnegative() {
            return Err(Error::NegativeEntries);
        }
        let n = self.dim;
        let stride = self.order - 1;
        let mut data = vec![0.0; n * n];
        for (t, (&row, &coef)) in self.rows.iter().zip(&self.coefs).enumerate() {
            let rest = &self.others[t * stride..(t + 1) * stride];
            for (pos, &j) in rest.iter().enumerate() {
                if pos == 0 || rest[pos - 1] != j {
                    data[row * n + j] += coef;
                }
            }
        }
        Ok(RepresentationMatrix { n, data })
    }

    /// Strong connectivity of the directed graph of `M(A)`.
    pub fn is_weakly_irreducible(&self) -> Result<bool> {
        Ok(self.representation_matrix()?.is_irreducible())
    }

    /// Index sets that share a nonzero entry, merged transitively. For a
    /// symmetric tensor these are the diagonal blocks; indices touched by no
    /// entry are left out.
    pub fn support_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut touched = vec![false; self.dim];
        for key in self.entries.keys() {
            touched[key[0]] = true;
            let root = find(&mut parent, key[0]);
            for &i in &key[1..] {
                touched[i] = true;
                let other = find(&mut parent, i);
                parent[other] = root;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in (0..self.dim).filter(|&i| touched[i]) {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// The block on `indices` (sorted, 0-based), renumbered from zero. Entries
    /// touching any other index are dropped.
    pub fn restrict(&self, indices: &[usize]) -> Result<SymmetricTensor> {
        let mut position = vec![usize::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            if old >= self.dim {
                return Err(Error::InvalidArgument(format!(
                    "tensor index {old} out of range for dimension {}",
                    self.dim
                )));
            }
            position[old] = new;
        }
        let entries = self.entries.iter().filter_map(|(key, &v)| {
            let mapped: Vec<usize> = key.iter().map(|&i| position[i]).collect();
            mapped.iter().all(|&i| i != usize::MAX).then_some((mapped, v))
        });
        Self::from_entries(self.order, indices.len(), entries.collect::<Vec<_>>())
    }

    /// Searches for a nonempty proper index set `I` with
    /// `a_{i1..im} = 0` whenever `i1 in I` and `i2..im not in I`.
    ///
    /// Returns the smallest such set (0-based), or `None` if the tensor is
    /// irreducible.
    pub fn is_reducible(&self, max_n: usize) -> Result<Option<Vec<usize>>> {
        if self.dim > max_n || self.dim >= 64 {
            return Err(Error::SearchLimit {
                n: self.dim,
                limit: max_n.min(63),
            });
        }
        let incidences: Vec<Incidence> = self.entries.keys().map(|k| Incidence::of(k)).collect();
        Ok(find_isolating_subset(self.dim, self.dim - 1, &incidences).map(mask_to_indices))
    }

    /// Dense `A + mu * E` with `E` the all-ones tensor.
    pub fn perturb(&self, mu: f64) -> Result<SymmetricTensor> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!("perturbation must be positive, got {mu}")));
        }
        let dense = (self.dim as u64).checked_pow(self.order as u32);
        if dense.is_none_or(|d| d > MAX_DENSE_ENTRIES) {
            return Err(Error::TooLarge {
                order: self.order,
                dim: self.dim,
                max: MAX_DENSE_ENTRIES,
            });
        }
        let mut entries = BTreeMap::new();
        for key in (0..self.dim).combinations_with_replacement(self.order) {
            let value = self.entries.get(&key).copied().unwrap_or(0.0) + mu;
            entries.insert(key, value);
        }
        Ok(Self::with_plan(self.order, self.dim, entries))
    }
}

impl Contraction for SymmetricTensor {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn contract_into(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        let stride = self.order - 1;
        for (t, (&row, &coef)) in self.rows.iter().zip(&self.coefs).enumerate() {
            let monomial: f64 = self.others[t * stride..(t + 1) * stride]
                .iter()
                .map(|&j| x[j])
                .product();
            out[row] += coef * monomial;
        }
    }
}

/// `A + mu * E` without materializing `E`: `E x^{m-1} = (sum x)^{m-1} 1`.
#[derive(Debug, Clone, Copy)]
pub struct UnitTensorPerturbation<'a> {
    pub base: &'a SymmetricTensor,
    pub mu: f64,
}

impl Contraction for UnitTensorPerturbation<'_> {
    fn order(&self) -> usize {
        self.base.order
    }

    fn dim(&self) -> usize {
        self.base.dim
    }

    fn contract_into(&self, x: &[f64], out: &mut [f64]) {
        self.base.contract_into(x, out);
        let s: f64 = x.iter().sum();
        let shift = self.mu * s.powi(self.base.order as i32 - 1);
        out.iter_mut().for_each(|v| *v += shift);
    }
}

/// `A + s * I` with `I` the identity tensor (`delta_{i1..im}`), which moves every
/// H-eigenvalue by `s` and keeps the eigenvectors.
#[derive(Debug, Clone, Copy)]
pub struct IdentityShift<'a> {
    pub base: &'a SymmetricTensor,
    pub shift: f64,
}

impl Contraction for IdentityShift<'_> {
    fn order(&self) -> usize {
        self.base.order
    }

    fn dim(&self) -> usize {
        self.base.dim
    }

    fn contract_into(&self, x: &[f64], out: &mut [f64]) {
        self.base.contract_into(x, out);
        let p = self.base.order as i32 - 1;
        for (o, &xi) in out.iter_mut().zip(x) {
            *o += self.shift * xi.powi(p);
        }
    }
}

/// Coordinate-wise `p`-th power.
pub fn power_vector(x: &[f64], p: u32) -> Vec<f64> {
    x.iter().map(|v| v.powi(p as i32)).collect()
}

/// The n-by-n matrix `M(A)` whose irreducibility is weak irreducibility of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RepresentationMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `m_ij`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Strong connectivity over positive off-diagonal entries: everything is
    /// reachable from vertex 0 both forwards and backwards.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    let w = if forward { self.get(i, j) } else { self.get(j, i) };
                    if j != i && w > 0.0 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}
