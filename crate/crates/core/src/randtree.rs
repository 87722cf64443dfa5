//! Exhaustive and uniform random generation of rooted labeled trees.
//!
//! Both routes go through the Prüfer bijection: a sequence in
//! `{1..n}^(n-2)` decodes to a unique unrooted labeled tree, and choosing
//! one of the `n` positions as root gives each of the `n^(n-1)` rooted trees
//! exactly once. Random trees draw the sequence and root from ChaCha8 seeded
//! with the 64-bit seed, using the sample index as the stream id, so sample
//! `i` depends only on `(seed, i)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::treebank::Sentence;

/// Largest `n` accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_N: usize = 7;

/// Name recorded in generated corpora.
pub const GENERATOR_NAME: &str = "prufer-chacha8";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("enumeration limited to n <= {MAX_ENUMERATION_N}, got {0}")]
    NTooLarge(usize),
    #[error("constraint {0} cannot be satisfied")]
    ConstraintUnsatisfiable(Constraint),
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

/// Shape restriction on generated trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    #[default]
    None,
    /// Root governs at most `v` nodes (rejection sampled).
    MaxRootOutDegree(usize),
    /// Head-final chain: node `i` heads to `i + 1`.
    Chain,
    /// Head-final star: every node heads to node `n`.
    Star,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::None => f.write_str("none"),
            Constraint::MaxRootOutDegree(v) => write!(f, "max-root-out-degree={}", v),
            Constraint::Chain => f.write_str("chain"),
            Constraint::Star => f.write_str("star"),
        }
    }
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Constraint::None),
            "chain" => Ok(Constraint::Chain),
            "star" => Ok(Constraint::Star),
            other => {
                let v = other
                    .strip_prefix("max-root-out-degree=")
                    .ok_or_else(|| format!("unknown constraint '{}'", other))?;
                v.parse()
                    .map(Constraint::MaxRootOutDegree)
                    .map_err(|_| format!("bad out-degree bound '{}'", v))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub count: usize,
    #[serde(default)]
    pub constraint: Constraint,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, count: usize) -> Self {
        GeneratorConfig {
            n,
            seed,
            count,
            constraint: Constraint::None,
        }
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = constraint;
        self
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.n == 0 {
            return Err(GenerateError::InvalidConfig("n must be at least 1".into()));
        }
        if let Constraint::MaxRootOutDegree(v) = self.constraint {
            if v == 0 {
                return Err(GenerateError::ConstraintUnsatisfiable(self.constraint));
            }
            if v > self.n - 1 {
                return Err(GenerateError::InvalidConfig(format!(
                    "out-degree bound {} exceeds n - 1 = {}",
                    v,
                    self.n - 1
                )));
            }
        }
        Ok(())
    }
}

/// Decodes a Prüfer sequence over labels `1..=n` (`seq.len() == n - 2`) into
/// the edge list of its tree.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if v < ptr && degree[v] == 1 {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    // remaining pair: the current leaf and n
    edges.push((leaf, n));
    edges
}

/// Orients an unrooted tree away from `root`, returning a head vector.
fn orient(edges: &[(usize, usize)], n: usize, root: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut heads = vec![usize::MAX; n + 1];
    heads[root] = 0;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if heads[w] == usize::MAX {
                heads[w] = u;
                stack.push(w);
            }
        }
    }
    heads[1..].to_vec()
}

fn build(id: String, seq: &[usize], n: usize, root: usize) -> Sentence {
    let heads = orient(&prufer_edges(seq, n), n, root);
    Sentence::from_heads(id, &heads).expect("Prüfer decoding yields a tree")
}

/// Every rooted labeled tree on `n` nodes, each exactly once.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Sentence>, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidConfig("n must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(GenerateError::NTooLarge(n));
    }
    let len = n.saturating_sub(2);
    let per_root = n.pow(len as u32);
    Ok((1..=n).flat_map(move |root| {
        (0..per_root).map(move |code| {
            // code as a base-n odometer gives the sequence
            let mut seq = vec![0; len];
            let mut c = code;
            for slot in seq.iter_mut().rev() {
                *slot = c % n + 1;
                c /= n;
            }
            build(format!("e{}-{}", root, code + 1), &seq, n, root)
        })
    }))
}

fn chain(n: usize, id: String) -> Sentence {
    let heads: Vec<usize> = (1..=n).map(|i| if i == n { 0 } else { i + 1 }).collect();
    Sentence::from_heads(id, &heads).expect("chain is a tree")
}

fn star(n: usize, id: String) -> Sentence {
    let heads: Vec<usize> = (1..=n).map(|i| if i == n { 0 } else { n }).collect();
    Sentence::from_heads(id, &heads).expect("star is a tree")
}

/// Head-final chain on `n` nodes.
pub fn chain_tree(n: usize) -> Sentence {
    chain(n, format!("chain{}", n))
}

/// Head-final star on `n` nodes.
pub fn star_tree(n: usize) -> Sentence {
    star(n, format!("star{}", n))
}

fn root_out_degree(s: &Sentence) -> usize {
    let root = s.root();
    s.nodes().iter().filter(|n| n.head == root).count()
}

/// Deterministic sample `index` under `config`.
pub fn random_tree(config: &GeneratorConfig, index: u64) -> Result<Sentence, GenerateError> {
    config.validate()?;
    let n = config.n;
    let id = format!("r{}", index + 1);
    match config.constraint {
        Constraint::Chain => return Ok(chain(n, id)),
        Constraint::Star => return Ok(star(n, id)),
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let mut seq = vec![0usize; n.saturating_sub(2)];
    loop {
        for slot in seq.iter_mut() {
            *slot = rng.random_range(1..=n as u64) as usize;
        }
        let root = rng.random_range(1..=n as u64) as usize;
        let tree = build(id.clone(), &seq, n, root);
        match config.constraint {
            Constraint::MaxRootOutDegree(v) if root_out_degree(&tree) > v => continue,
            _ => return Ok(tree),
        }
    }
}

/// Samples `config.count` trees, indices `0..count`.
pub fn generate(config: &GeneratorConfig) -> Result<Vec<Sentence>, GenerateError> {
    config.validate()?;
    (0..config.count as u64)
        .map(|i| random_tree(config, i))
        .collect()
}
