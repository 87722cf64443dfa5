//! Dependency-tree data model, tree validation and corpus readers.
//!
//! A [`Sentence`] is an ordered list of [`Node`]s, each pointing at its
//! governing node by 1-based position (0 marks the root). Three input formats
//! are supported: CoNLL-U ([`conllu`]), CaboCha lattice output ([`cabocha`])
//! and a toolkit-native JSONL format ([`canonical`]).
//!
//! Readers never abort on a bad sentence. Malformed blocks and invalid trees
//! are collected as [`Rejected`] entries inside [`Parsed`]; only I/O and
//! encoding failures end a scan.

pub mod cabocha;
pub mod canonical;
pub mod conllu;
mod lexicon;

pub use lexicon::ValencyLexicon;

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while reading treebanks or checking tree structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreebankError {
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: malformed chunk header: {reason}")]
    MalformedChunkHeader { line: usize, reason: String },
    #[error("stream ended inside a sentence (missing EOS)")]
    MissingEos,
    #[error("line {line}: invalid JSON: {reason}")]
    Json { line: usize, reason: String },
    #[error("line {line}: invalid UTF-8")]
    Encoding { line: usize },
    #[error("I/O error: {0}")]
    Io(String),
    #[error("invalid tree: {0}")]
    InvalidTree(#[from] TreeError),
    #[error("line {line}: invalid lexicon entry: {reason}")]
    Lexicon { line: usize, reason: String },
}

/// Structural defects found by [`validate_tree`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("sentence has no nodes")]
    Empty,
    #[error("no root node (head = 0)")]
    NoRoot,
    #[error("multiple root nodes: {0:?}")]
    MultipleRoots(Vec<usize>),
    #[error("node {0} heads to itself")]
    SelfLoop(usize),
    #[error("cycle through node {0}")]
    CycleDetected(usize),
    #[error("node {index} has head {head} outside 0..={len}")]
    HeadOutOfRange { index: usize, head: usize, len: usize },
    #[error("node at position {position} carries index {index}")]
    NonConsecutiveIndex { position: usize, index: usize },
    #[error("dropped node {0} has dependents")]
    DroppedHead(usize),
}

/// One segment (bunsetsu) or token of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    /// 1-based position in the sentence.
    pub index: usize,
    /// Position of the governing node, 0 for the root.
    pub head: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
}

impl Node {
    pub fn new(index: usize, head: usize) -> Self {
        Node {
            index,
            head,
            form: None,
            lemma: None,
        }
    }

    pub fn is_root(&self) -> bool {
        self.head == 0
    }
}

/// Where a sentence came from: file name and 1-based inclusive line range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Source {
    pub file: Option<String>,
    pub first_line: usize,
    pub last_line: usize,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let file = self.file.as_deref().unwrap_or("<stream>");
        write!(f, "{}:{}-{}", file, self.first_line, self.last_line)
    }
}

/// A validated dependency tree.
///
/// Construct through [`validate_tree`] (or [`Sentence::from_heads`]); every
/// value reachable from the public API satisfies the single-root,
/// acyclic, connected invariants.
#[derive(Debug, Clone)]
pub struct Sentence {
    id: String,
    nodes: Vec<Node>,
    source: Source,
}

impl Sentence {
    /// Builds and validates a sentence from a head vector (`heads[i]` is the
    /// head of node `i + 1`).
    pub fn from_heads(id: impl Into<String>, heads: &[usize]) -> Result<Self, TreeError> {
        let nodes = heads
            .iter()
            .enumerate()
            .map(|(i, &h)| Node::new(i + 1, h))
            .collect();
        validate_tree(Candidate::new(id, nodes))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// Sentence length: the node count.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Head of the node at 1-based `index` (0 for the root).
    pub fn head(&self, index: usize) -> Option<usize> {
        self.nodes.get(index.checked_sub(1)?).map(|n| n.head)
    }

    pub fn heads(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.head).collect()
    }

    pub fn root(&self) -> usize {
        self.nodes
            .iter()
            .find(|n| n.is_root())
            .map(|n| n.index)
            .expect("validated sentence has a root")
    }

    pub fn root_node(&self) -> &Node {
        &self.nodes[self.root() - 1]
    }

    /// Number of dependencies, `n - 1`.
    pub fn dependency_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Equality on index, head, form and lemma; ignores id and provenance.
    pub fn same_structure(&self, other: &Sentence) -> bool {
        self.nodes == other.nodes
    }
}

/// An unvalidated sentence as produced by a reader.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub id: String,
    pub nodes: Vec<Node>,
    pub source: Source,
}

impl Candidate {
    pub fn new(id: impl Into<String>, nodes: Vec<Node>) -> Self {
        Candidate {
            id: id.into(),
            nodes,
            source: Source::default(),
        }
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }
}

/// Checks that a candidate is a single rooted tree over consecutive
/// positions `1..=n` and returns it as a [`Sentence`].
pub fn validate_tree(candidate: Candidate) -> Result<Sentence, TreeError> {
    let nodes = &candidate.nodes;
    let n = nodes.len();
    if n == 0 {
        return Err(TreeError::Empty);
    }
    let mut roots = Vec::new();
    for (pos, node) in nodes.iter().enumerate() {
        if node.index != pos + 1 {
            return Err(TreeError::NonConsecutiveIndex {
                position: pos + 1,
                index: node.index,
            });
        }
        if node.head > n {
            return Err(TreeError::HeadOutOfRange {
                index: node.index,
                head: node.head,
                len: n,
            });
        }
        if node.head == node.index {
            return Err(TreeError::SelfLoop(node.index));
        }
        if node.head == 0 {
            roots.push(node.index);
        }
    }
    if roots.len() > 1 {
        return Err(TreeError::MultipleRoots(roots));
    }

    // 0 = unvisited, 1 = on current path, 2 = reaches root
    let mut state = vec![0u8; n + 1];
    state[0] = 2;
    let mut path = Vec::new();
    for start in 1..=n {
        let mut cur = start;
        while state[cur] == 0 {
            state[cur] = 1;
            path.push(cur);
            cur = nodes[cur - 1].head;
        }
        if state[cur] == 1 {
            return Err(TreeError::CycleDetected(cur));
        }
        for p in path.drain(..) {
            state[p] = 2;
        }
    }
    // without a root every head chain ends in a cycle, so this is only
    // reached for well-formed input
    if roots.is_empty() {
        return Err(TreeError::NoRoot);
    }

    Ok(Sentence {
        id: candidate.id,
        nodes: candidate.nodes,
        source: candidate.source,
    })
}

/// A sentence the reader skipped, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejected {
    pub id: Option<String>,
    pub source: Source,
    pub error: TreebankError,
}

impl fmt::Display for Rejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            Some(id) => write!(f, "{} ({}): {}", id, self.source, self.error),
            None => write!(f, "{}: {}", self.source, self.error),
        }
    }
}

/// Result of scanning one stream.
#[derive(Debug, Clone, Default)]
pub struct Parsed {
    pub sentences: Vec<Sentence>,
    pub rejected: Vec<Rejected>,
}

impl Parsed {
    pub(crate) fn push(&mut self, candidate: Result<Candidate, Rejected>) {
        match candidate {
            Ok(c) => {
                let id = c.id.clone();
                let source = c.source.clone();
                match validate_tree(c) {
                    Ok(s) => self.sentences.push(s),
                    Err(e) => {
                        log::warn!("skipping sentence {} ({}): {}", id, source, e);
                        self.rejected.push(Rejected {
                            id: Some(id),
                            source,
                            error: e.into(),
                        })
                    }
                }
            }
            Err(r) => {
                log::warn!("skipping {}", r);
                self.rejected.push(r);
            }
        }
    }

    /// Total number of sentence blocks seen.
    pub fn total(&self) -> usize {
        self.sentences.len() + self.rejected.len()
    }

    /// Fails on the first rejection, otherwise returns the sentences.
    pub fn strict(self) -> Result<Vec<Sentence>, TreebankError> {
        match self.rejected.into_iter().next() {
            Some(r) => Err(r.error),
            None => Ok(self.sentences),
        }
    }
}

/// Input formats understood by [`read`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Conllu,
    Cabocha,
    Canonical,
}

impl Format {
    /// Guesses the format from a file extension.
    pub fn from_extension(path: &str) -> Option<Format> {
        let ext = path.rsplit_once('.').map(|(_, e)| e.to_ascii_lowercase())?;
        match ext.as_str() {
            "conllu" | "conll" => Some(Format::Conllu),
            "cabocha" | "cab" | "lattice" => Some(Format::Cabocha),
            "jsonl" | "json" => Some(Format::Canonical),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Conllu => "conllu",
            Format::Cabocha => "cabocha",
            Format::Canonical => "canonical",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conllu" => Ok(Format::Conllu),
            "cabocha" => Ok(Format::Cabocha),
            "canonical" | "jsonl" => Ok(Format::Canonical),
            other => Err(format!("unknown format '{}'", other)),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reader options shared by all formats.
#[derive(Debug, Clone, Default)]
pub struct ReadOptions {
    /// File name recorded in each sentence's [`Source`].
    pub file: Option<String>,
    /// CoNLL-U only: remove UPOS=PUNCT nodes.
    pub drop_punct: bool,
}

/// Reads a stream in the given format.
pub fn read<R: BufRead>(
    reader: R,
    format: Format,
    opts: &ReadOptions,
) -> Result<Parsed, TreebankError> {
    match format {
        Format::Conllu => conllu::read(reader, opts),
        Format::Cabocha => cabocha::read(reader, opts),
        Format::Canonical => canonical::read(reader, opts),
    }
}

/// Iterates over lines as UTF-8 strings with 1-based line numbers, stripping
/// the trailing `\n` or `\r\n`.
pub(crate) struct Lines<R> {
    reader: R,
    line: usize,
    buf: Vec<u8>,
}

impl<R: BufRead> Lines<R> {
    pub(crate) fn new(reader: R) -> Self {
        Lines {
            reader,
            line: 0,
            buf: Vec::new(),
        }
    }
}

impl<R: BufRead> Iterator for Lines<R> {
    type Item = Result<(usize, String), TreebankError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.buf.clear();
        match self.reader.read_until(b'\n', &mut self.buf) {
            Ok(0) => None,
            Ok(_) => {
                self.line += 1;
                if self.buf.last() == Some(&b'\n') {
                    self.buf.pop();
                    if self.buf.last() == Some(&b'\r') {
                        self.buf.pop();
                    }
                }
                match std::str::from_utf8(&self.buf) {
                    Ok(s) => Some(Ok((self.line, s.to_owned()))),
                    Err(_) => Some(Err(TreebankError::Encoding { line: self.line })),
                }
            }
            Err(e) => Some(Err(TreebankError::Io(e.to_string()))),
        }
    }
}
