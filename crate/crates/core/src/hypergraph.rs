//! Uniform multi-hypergraphs and the structural predicates the spectral results
//! are conditioned on.
//!
//! Vertex labels in this module's public API are 1-based, matching the `.hgr`
//! file format. Storage is 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the vertex count for the exhaustive nicely-connected search.
pub const DEFAULT_NICELY_LIMIT: usize = 24;

/// Default node budget for the m-partition backtracking search.
pub const DEFAULT_PARTITION_BUDGET: u64 = 1_000_000;

/// An edge: a sorted multiset of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    vertices: Vec<usize>,
}

impl Edge {
    /// 0-based vertex indices, sorted, with repeats.
    pub fn indices(&self) -> &[usize] {
        &self.vertices
    }

    /// 1-based vertex labels, sorted, with repeats.
    pub fn labels(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v + 1).collect()
    }

    /// True if some vertex appears more than once.
    pub fn is_hyperloop(&self) -> bool {
        self.vertices.windows(2).any(|w| w[0] == w[1])
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub(crate) fn incidence(&self) -> Incidence {
        Incidence::of(&self.vertices)
    }
}

/// Bitmask view of a multiset of indices, used by the subset searches.
///
/// `once` holds the indices that occur exactly once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Incidence {
    all: u64,
    once: u64,
}

impl Incidence {
    /// `indices` must be sorted and below 64.
    pub(crate) fn of(indices: &[usize]) -> Self {
        let mut all = 0u64;
        let mut once = 0u64;
        let mut i = 0;
        while i < indices.len() {
            let v = indices[i];
            let mut j = i;
            while j < indices.len() && indices[j] == v {
                j += 1;
            }
            all |= 1 << v;
            if j - i == 1 {
                once |= 1 << v;
            }
            i = j;
        }
        Incidence { all, once }
    }

    /// True iff exactly one element of the multiset, counted with multiplicity,
    /// lies in `set`.
    pub(crate) fn hits_exactly_once(&self, set: u64) -> bool {
        let inside = self.all & set;
        inside.count_ones() == 1 && inside & !self.once == 0
    }
}

/// Smallest nonempty `set` (colexicographic order within a size) of at most
/// `max_size` elements out of `n` such that no multiset in `incidences` meets it
/// exactly once.
pub(crate) fn find_isolating_subset(
    n: usize,
    max_size: usize,
    incidences: &[Incidence],
) -> Option<u64> {
    debug_assert!(n < 64);
    let max_size = max_size.min(n);
    for k in 1..=max_size {
        let mut set: u64 = (1u64 << k) - 1;
        let end = 1u64 << n;
        while set < end {
            if incidences.iter().all(|inc| !inc.hits_exactly_once(set)) {
                return Some(set);
            }
            // Gosper's hack: next k-subset in colex order.
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    None
}

pub(crate) fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

/// An m-uniform multi-hypergraph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    m: usize,
    edges: Vec<Edge>,
    simple: bool,
}

impl Hypergraph {
    /// Builds and validates a hypergraph from 1-based edge lists.
    pub fn build<E, V>(n: usize, m: usize, edge_list: E) -> Result<Self>
    where
        E: IntoIterator<Item = V>,
        V: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::InvalidArgument("vertex count must be at least 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidArgument("uniformity must be at least 2".into()));
        }
        let mut edges = Vec::new();
        for (idx, labels) in edge_list.into_iter().enumerate() {
            let labels = labels.as_ref();
            if labels.len() != m {
                return Err(Error::EdgeArity {
                    edge: idx + 1,
                    expected: m,
                    found: labels.len(),
                });
            }
            let mut vertices = Vec::with_capacity(m);
            for &v in labels {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                vertices.push(v - 1);
            }
            vertices.sort_unstable();
            edges.push(Edge { vertices });
        }
        Ok(Self::from_edges(n, m, edges))
    }

    fn from_edges(n: usize, m: usize, edges: Vec<Edge>) -> Self {
        let mut sorted: Vec<&Edge> = edges.iter().collect();
        sorted.sort();
        let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
        let simple = !repeated && !edges.iter().any(Edge::is_hyperloop);
        Hypergraph {
            n,
            m,
            edges,
            simple,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff no edge repeats a vertex and no edge appears twice.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    fn check_label(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(v - 1)
        }
    }

    /// Number of edges containing `v` (1-based). A hyperloop counts once; a
    /// repeated edge counts once per copy.
    pub fn degree(&self, v: usize) -> Result<usize> {
        let v = self.check_label(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    /// Degrees of all vertices, indexed 0-based.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            let mut prev = None;
            for &v in e.indices() {
                if prev != Some(v) {
                    deg[v] += 1;
                    prev = Some(v);
                }
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Chain connectivity, computed as reachability in the vertex-edge
    /// incidence graph.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for e in &self.edges {
            let first = e.indices()[0];
            for &v in &e.indices()[1..] {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components == 1
    }

    /// Largest admissible witness size: `n - m + 1` for simple m-graphs,
    /// `n - 1` (any proper subset) otherwise.
    fn witness_size_bound(&self) -> usize {
        if self.simple {
            (self.n + 1).saturating_sub(self.m)
        } else {
            self.n - 1
        }
    }

    /// Checks whether `v0` (1-based labels) certifies that the hypergraph is not
    /// nicely-connected: nonempty, within the size bound, and no edge has
    /// exactly one of its vertices (with multiplicity) in `v0`.
    pub fn is_witness(&self, v0: &[usize]) -> Result<bool> {
        let mut set = vec![false; self.n];
        for &v in v0 {
            set[self.check_label(v)?] = true;
        }
        let size = set.iter().filter(|&&b| b).count();
        if size == 0 || size > self.witness_size_bound() {
            return Ok(false);
        }
        Ok(self.edges.iter().all(|e| {
            e.indices().iter().filter(|&&v| set[v]).count() != 1
        }))
    }

    /// Exhaustive search for a not-nicely-connected witness.
    ///
    /// Returns `(true, None)` when the hypergraph is nicely-connected, otherwise
    /// `(false, Some(v0))` with `v0` a smallest witness (1-based, sorted).
    pub fn is_nicely_connected(&self, limit: usize) -> Result<(bool, Option<Vec<usize>>)> {
        if self.n > limit || self.n >= 64 {
            return Err(Error::SearchLimit {
                n: self.n,
                limit: limit.min(63),
            });
        }
        let incidences: Vec<Incidence> = self.edges.iter().map(Edge::incidence).collect();
        match find_isolating_subset(self.n, self.witness_size_bound(), &incidences) {
            Some(mask) => {
                let witness = mask_to_indices(mask).into_iter().map(|v| v + 1).collect();
                Ok((false, Some(witness)))
            }
            None => Ok((true, None)),
        }
    }

    /// The common degree when every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = deg[0];
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// True iff every m-subset of the vertices is an edge.
    pub fn is_complete(&self) -> Result<bool> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        Ok(binomial(self.n, self.m) == Some(self.edges.len() as u128))
    }

    /// Backtracking search for a partition into `m` parts such that every edge
    /// meets each part exactly once. Parts are 1-based vertex labels.
    pub fn find_m_partition(&self, budget: u64) -> Result<Option<Vec<Vec<usize>>>> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (ei, e) in self.edges.iter().enumerate() {
            for &v in e.indices() {
                incident[v].push(ei);
            }
        }
        let mut search = PartitionSearch {
            graph: self,
            incident: &incident,
            part: vec![usize::MAX; self.n],
            nodes: 0,
            budget,
        };
        if !search.assign(0, 0)? {
            return Ok(None);
        }
        let mut parts = vec![Vec::new(); self.m];
        for (v, &p) in search.part.iter().enumerate() {
            parts[p].push(v + 1);
        }
        Ok(Some(parts))
    }

    /// The hypergraph on `V \ v0` keeping the edges that avoid `v0`, with the
    /// map from new 0-based index to original 1-based label.
    pub fn induced_subhypergraph(&self, v0: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let mut removed = vec![false; self.n];
        for &v in v0 {
            removed[self.check_label(v)?] = true;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        if kept.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot remove every vertex".into(),
            ));
        }
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.indices().iter().all(|&v| !removed[v]))
            .map(|e| Edge {
                vertices: e.indices().iter().map(|&v| relabel[v]).collect(),
            })
            .collect();
        let map = kept.iter().map(|v| v + 1).collect();
        Ok((Self::from_edges(kept.len(), self.m, edges), map))
    }

    /// Runs every structural predicate. Size-limited searches that cannot run
    /// leave their field empty and push a warning.
    pub fn structure(&self, limits: &StructureLimits) -> (StructureReport, Vec<String>) {
        let mut warnings = Vec::new();
        let degrees = self.degrees();
        let (nicely_connected, witness_v0) = match self.is_nicely_connected(limits.nicely_limit) {
            Ok((flag, witness)) => (Some(flag), witness),
            Err(e) => {
                warnings.push(format!("nicely-connected search skipped: {e}"));
                (None, None)
            }
        };
        let partition = if self.simple {
            match self.find_m_partition(limits.partition_budget) {
                Ok(p) => p,
                Err(e) => {
                    warnings.push(format!("m-partition search skipped: {e}"));
                    None
                }
            }
        } else {
            None
        };
        let report = StructureReport {
            n: self.n,
            m: self.m,
            simple: self.simple,
            connected: self.is_connected(),
            nicely_connected,
            witness_v0,
            regular_degree: self.is_regular(),
            complete: self.is_complete().unwrap_or(false),
            partition,
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            degrees,
            edge_count: self.edges.len(),
        };
        (report, warnings)
    }
}

struct PartitionSearch<'a> {
    graph: &'a Hypergraph,
    incident: &'a [Vec<usize>],
    part: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl PartitionSearch<'_> {
    fn assign(&mut self, v: usize, used: usize) -> Result<bool> {
        if v == self.graph.n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
            });
        }
        // New parts are opened in order, so relabelled partitions are visited once.
        let max_part = (used + 1).min(self.graph.m);
        for p in 0..max_part {
            if self.compatible(v, p) {
                self.part[v] = p;
                if self.assign(v + 1, used.max(p + 1))? {
                    return Ok(true);
                }
                self.part[v] = usize::MAX;
            }
        }
        Ok(false)
    }

    fn compatible(&self, v: usize, p: usize) -> bool {
        self.incident[v].iter().all(|&ei| {
            self.graph.edges[ei]
                .indices()
                .iter()
                .all(|&u| u == v || self.part[u] != p)
        })
    }
}

/// Caps for the exponential searches run by [`Hypergraph::structure`].
#[derive(Debug, Clone, Copy)]
pub struct StructureLimits {
    pub nicely_limit: usize,
    pub partition_budget: u64,
}

impl Default for StructureLimits {
    fn default() -> Self {
        StructureLimits {
            nicely_limit: DEFAULT_NICELY_LIMIT,
            partition_budget: DEFAULT_PARTITION_BUDGET,
        }
    }
}

/// Every structural fact the spectral theorems condition on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub simple: bool,
    pub connected: bool,
    pub nicely_connected: Option<bool>,
    pub witness_v0: Option<Vec<usize>>,
    pub regular_degree: Option<usize>,
    pub complete: bool,
    pub partition: Option<Vec<Vec<usize>>>,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub edge_count: usize,
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}
