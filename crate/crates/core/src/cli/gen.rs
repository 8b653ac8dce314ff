//! Seeded random instances.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph};

/// Simple graphs with at most this many candidate edges are sampled by
/// enumerating all m-subsets.
const ENUMERATION_CAP: u128 = 200_000;

/// `edge_count` edges on `n` vertices, deterministic in `seed`.
///
/// Simple: distinct m-subsets chosen uniformly. Otherwise each edge is an
/// independent uniform multiset (sorted draws with replacement), so hyperloops
/// and repeated edges can occur.
pub fn random_hypergraph(
    n: usize,
    m: usize,
    edge_count: usize,
    simple: bool,
    seed: u64,
) -> Result<Hypergraph> {
    if n == 0 || m < 2 {
        return Err(Error::InvalidArgument("need n >= 1 and m >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !simple {
        let edges = (0..edge_count).map(|_| {
            let mut e: Vec<usize> = (0..m).map(|_| rng.random_range(1..=n)).collect();
            e.sort_unstable();
            e
        });
        return Hypergraph::build(n, m, edges.collect::<Vec<_>>());
    }

    let available = binomial(n, m).unwrap_or(u128::MAX);
    if m > n || edge_count as u128 > available {
        return Err(Error::InvalidArgument(format!(
            "{edge_count} distinct {m}-subsets of {n} vertices requested, only {available} exist"
        )));
    }
    if available <= ENUMERATION_CAP {
        let all: Vec<Vec<usize>> = (1..=n).combinations(m).collect();
        let mut picked = index::sample(&mut rng, all.len(), edge_count).into_vec();
        picked.sort_unstable();
        return Hypergraph::build(n, m, picked.into_iter().map(|i| &all[i]));
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(edge_count);
    while edges.len() < edge_count {
        let mut e: Vec<usize> = index::sample(&mut rng, n, m).into_iter().map(|v| v + 1).collect();
        e.sort_unstable();
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Hypergraph::build(n, m, edges)
}

/// A connected simple r-regular m-graph on `n` vertices, by the configuration
/// model with rejection. Fails when `n r` is not a multiple of `m` or no
/// instance is found within `attempts` tries.
pub fn random_regular(n: usize, m: usize, r: usize, seed: u64, attempts: usize) -> Result<Hypergraph> {
    if m < 2 || m > n || r == 0 || (n * r) % m != 0 {
        return Err(Error::InvalidArgument(format!(
            "no {r}-regular {m}-graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (1..=n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    'attempt: for _ in 0..attempts {
        stubs.shuffle(&mut rng);
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(stubs.len() / m);
        for chunk in stubs.chunks(m) {
            let mut e = chunk.to_vec();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) || !seen.insert(e.clone()) {
                continue 'attempt;
            }
            edges.push(e);
        }
        let h = Hypergraph::build(n, m, edges)?;
        if h.is_connected() {
            return Ok(h);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no connected {r}-regular {m}-graph on {n} vertices found in {attempts} attempts"
    )))
}
