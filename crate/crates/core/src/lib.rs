//! Dependency distance (DD) and hierarchical distance (HD) metrics for
//! dependency treebanks.
//!
//! The crate reads CoNLL-U, CaboCha lattice output or a canonical JSONL
//! format ([`treebank`]), computes per-sentence MDD/MHD and histograms
//! ([`metrics`]), aggregates them by sentence length ([`analysis`]) with the
//! kernels in [`stats`], and renders deterministic CSV/JSON reports
//! ([`report`]). [`randtree`] enumerates and samples rooted labeled trees
//! for baselines and brute-force checks.
//!
//! ```
//! use depmetrics::metrics::{mdd, mhd};
//! use depmetrics::treebank::Sentence;
//!
//! // kono senseiha kagakuno jyugyouwo tantousuru kibishii senseida
//! let s = Sentence::from_heads("ex", &[2, 7, 4, 5, 7, 7, 0]).unwrap();
//! assert_eq!(mdd(&s).unwrap().to_string(), "1.8333");
//! assert_eq!(mhd(&s).unwrap().to_string(), "1.6667");
//! ```

pub mod analysis;
pub mod metrics;
pub mod randtree;
pub mod report;
pub mod stats;
pub mod treebank;
