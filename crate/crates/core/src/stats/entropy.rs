use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StatsError;

/// Categorical distribution over integer metric values, kept as counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Distribution {
    counts: BTreeMap<usize, u64>,
    total: u64,
}

impl Distribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I: IntoIterator<Item = (usize, u64)>>(counts: I) -> Self {
        let mut d = Distribution::new();
        for (v, c) in counts {
            d.add(v, c);
        }
        d
    }

    pub fn add(&mut self, value: usize, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(value).or_insert(0) += count;
        self.total += count;
    }

    pub fn merge(&mut self, other: &Distribution) {
        for (&v, &c) in &other.counts {
            self.add(v, c);
        }
    }

    pub fn extend_hist(&mut self, hist: &BTreeMap<usize, u64>) {
        for (&v, &c) in hist {
            self.add(v, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count(&self, value: usize) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn probability(&self, value: usize) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(value) as f64 / self.total as f64
        }
    }

    /// `(value, count)` pairs in ascending value order.
    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }
}

/// Logarithm base for entropy values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EntropyBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "10")]
    Ten,
}

impl EntropyBase {
    /// Entropy in bits times this factor gives entropy in this base.
    pub fn scale_from_bits(self) -> f64 {
        match self {
            EntropyBase::Two => 1.0,
            EntropyBase::E => std::f64::consts::LN_2,
            EntropyBase::Ten => std::f64::consts::LOG10_2,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            EntropyBase::Two => "bits",
            EntropyBase::E => "nats",
            EntropyBase::Ten => "hartleys",
        }
    }
}

impl FromStr for EntropyBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2" => Ok(EntropyBase::Two),
            "e" => Ok(EntropyBase::E),
            "10" => Ok(EntropyBase::Ten),
            other => Err(format!("entropy base must be 2, e or 10 (got '{}')", other)),
        }
    }
}

impl fmt::Display for EntropyBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyBase::Two => "2",
            EntropyBase::E => "e",
            EntropyBase::Ten => "10",
        })
    }
}

/// Shannon entropy in bits, `-Σ p log2 p`.
pub fn entropy(dist: &Distribution) -> Result<f64, StatsError> {
    if dist.is_empty() {
        return Err(StatsError::EmptyDistribution);
    }
    let total = dist.total() as f64;
    let h: f64 = dist
        .counts()
        .map(|(_, c)| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // a single-point distribution gives -0.0
    Ok(h.max(0.0))
}

pub fn entropy_with_base(dist: &Distribution, base: EntropyBase) -> Result<f64, StatsError> {
    Ok(entropy(dist)? * base.scale_from_bits())
}
