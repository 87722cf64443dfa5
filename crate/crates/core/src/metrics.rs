//! Dependency distance (DD), hierarchical distance (HD) and their
//! per-sentence means.
//!
//! DD of a dependency is `|position(head) - position(dependent)|`, so adjacent
//! words have DD 1. HD of a node is the number of head links between it and
//! the root; direct dependents of the root have HD 1. MDD and MHD average
//! these over the `n - 1` dependencies of an `n`-node sentence and are kept
//! as exact ratios until output.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::treebank::Sentence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("node {0} is the root and has no dependency distance")]
    RootHasNoDd(usize),
    #[error("node index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sentence of {0} node(s) has no dependencies")]
    TooShort(usize),
}

/// An exact non-negative ratio `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio with zero denominator");
        Ratio { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.value())
    }
}

fn check_index(sentence: &Sentence, index: usize) -> Result<(), MetricsError> {
    if index == 0 || index > sentence.len() {
        Err(MetricsError::IndexOutOfRange {
            index,
            len: sentence.len(),
        })
    } else {
        Ok(())
    }
}

/// Dependency distance of the dependency whose dependent sits at `index`.
pub fn dd(sentence: &Sentence, index: usize) -> Result<usize, MetricsError> {
    check_index(sentence, index)?;
    match sentence.head(index) {
        Some(0) => Err(MetricsError::RootHasNoDd(index)),
        Some(h) => Ok(h.abs_diff(index)),
        None => unreachable!(),
    }
}

/// Hierarchical distance of the node at `index` (0 for the root).
pub fn hd(sentence: &Sentence, index: usize) -> Result<usize, MetricsError> {
    check_index(sentence, index)?;
    Ok(depths(sentence)[index - 1])
}

/// HD of every node, in position order.
pub fn depths(sentence: &Sentence) -> Vec<usize> {
    let n = sentence.len();
    let nodes = sentence.nodes();
    let mut depth: Vec<Option<usize>> = vec![None; n + 1];
    depth[0] = Some(0);
    let mut stack = Vec::new();
    for start in 1..=n {
        let mut cur = start;
        while depth[cur].is_none() {
            stack.push(cur);
            cur = nodes[cur - 1].head;
        }
        let mut d = depth[cur].unwrap();
        // the root's "head" 0 has depth 0, and the root itself must too
        while let Some(node) = stack.pop() {
            d = if nodes[node - 1].head == 0 { 0 } else { d + 1 };
            depth[node] = Some(d);
        }
    }
    depth[1..].iter().map(|d| d.unwrap()).collect()
}

fn require_dependencies(sentence: &Sentence) -> Result<u64, MetricsError> {
    match sentence.len() {
        n if n < 2 => Err(MetricsError::TooShort(n)),
        n => Ok(n as u64 - 1),
    }
}

/// Mean dependency distance: summed DD over the `n - 1` dependencies.
pub fn mdd(sentence: &Sentence) -> Result<Ratio, MetricsError> {
    let deps = require_dependencies(sentence)?;
    let sum: usize = sentence
        .nodes()
        .iter()
        .filter(|n| !n.is_root())
        .map(|n| n.head.abs_diff(n.index))
        .sum();
    Ok(Ratio::new(sum as u64, deps))
}

/// Mean hierarchical distance: summed HD over the `n - 1` non-root nodes.
pub fn mhd(sentence: &Sentence) -> Result<Ratio, MetricsError> {
    let deps = require_dependencies(sentence)?;
    let sum: usize = depths(sentence).iter().sum();
    Ok(Ratio::new(sum as u64, deps))
}

/// Per-sentence metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricRecord {
    pub sentence_id: String,
    /// Sentence length (node count).
    pub sl: usize,
    pub dd_sum: u64,
    pub hd_sum: u64,
    pub dd_hist: BTreeMap<usize, u64>,
    pub hd_hist: BTreeMap<usize, u64>,
    /// Number of nodes governed directly by the root.
    pub root_out_degree: usize,
}

impl MetricRecord {
    pub fn dependencies(&self) -> u64 {
        self.sl as u64 - 1
    }

    pub fn mdd(&self) -> Ratio {
        Ratio::new(self.dd_sum, self.dependencies())
    }

    pub fn mhd(&self) -> Ratio {
        Ratio::new(self.hd_sum, self.dependencies())
    }

    /// Count of dependencies with DD = 1.
    pub fn adjacent_count(&self) -> u64 {
        self.dd_hist.get(&1).copied().unwrap_or(0)
    }

    /// Count of nodes with HD = 1.
    pub fn first_layer_count(&self) -> u64 {
        self.hd_hist.get(&1).copied().unwrap_or(0)
    }
}

impl Serialize for MetricRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let round = |r: Ratio| (r.value() * 1e4).round() / 1e4;
        let hist = |h: &BTreeMap<usize, u64>| -> BTreeMap<String, u64> {
            h.iter().map(|(k, v)| (k.to_string(), *v)).collect()
        };
        let mut st = serializer.serialize_struct("MetricRecord", 9)?;
        st.serialize_field("sentence_id", &self.sentence_id)?;
        st.serialize_field("sl", &self.sl)?;
        st.serialize_field("mdd", &round(self.mdd()))?;
        st.serialize_field("mhd", &round(self.mhd()))?;
        st.serialize_field("dd_sum", &self.dd_sum)?;
        st.serialize_field("hd_sum", &self.hd_sum)?;
        st.serialize_field("dd_hist", &hist(&self.dd_hist))?;
        st.serialize_field("hd_hist", &hist(&self.hd_hist))?;
        st.serialize_field("root_out_degree", &self.root_out_degree)?;
        st.end()
    }
}

/// Computes every per-sentence metric in one pass.
pub fn metric_record(sentence: &Sentence) -> Result<MetricRecord, MetricsError> {
    require_dependencies(sentence)?;
    let root = sentence.root();
    let mut dd_hist = BTreeMap::new();
    let mut hd_hist = BTreeMap::new();
    let mut dd_sum = 0u64;
    let mut hd_sum = 0u64;
    let mut root_out_degree = 0;
    let depth = depths(sentence);
    for node in sentence.nodes().iter().filter(|n| !n.is_root()) {
        let d = node.head.abs_diff(node.index);
        let h = depth[node.index - 1];
        *dd_hist.entry(d).or_insert(0) += 1;
        *hd_hist.entry(h).or_insert(0) += 1;
        dd_sum += d as u64;
        hd_sum += h as u64;
        if node.head == root {
            root_out_degree += 1;
        }
    }
    Ok(MetricRecord {
        sentence_id: sentence.id().to_owned(),
        sl: sentence.len(),
        dd_sum,
        hd_sum,
        dd_hist,
        hd_hist,
        root_out_degree,
    })
}

/// Records for every sentence with at least two nodes, plus the number of
/// single-node sentences that were set aside.
pub fn records(sentences: &[Sentence]) -> (Vec<MetricRecord>, usize) {
    let mut out = Vec::with_capacity(sentences.len());
    let mut single = 0;
    for s in sentences {
        match metric_record(s) {
            Ok(r) => out.push(r),
            Err(_) => single += 1,
        }
    }
    (out, single)
}
