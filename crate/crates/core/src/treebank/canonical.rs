//! Canonical JSONL: one sentence object per line.
//!
//! ```text
//! {"id":"s1","nodes":[{"index":1,"head":2},{"index":2,"head":0}]}
//! ```
//!
//! A line holding an object with a `meta` key and no `nodes` is a metadata
//! header and is skipped. Blank lines are ignored.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::{Candidate, Lines, Node, Parsed, ReadOptions, Rejected, Sentence, Source, TreebankError};

#[derive(Serialize, Deserialize)]
struct Record {
    id: String,
    nodes: Vec<Node>,
}

#[derive(Deserialize)]
struct Probe {
    meta: Option<serde_json::Value>,
    nodes: Option<serde_json::Value>,
}

/// Reads a canonical JSONL stream.
pub fn read<R: BufRead>(reader: R, opts: &ReadOptions) -> Result<Parsed, TreebankError> {
    let mut parsed = Parsed::default();
    for item in Lines::new(reader) {
        let (line_no, line) = item?;
        if line.trim().is_empty() {
            continue;
        }
        let source = Source {
            file: opts.file.clone(),
            first_line: line_no,
            last_line: line_no,
        };
        if let Ok(Probe {
            meta: Some(_),
            nodes: None,
        }) = serde_json::from_str::<Probe>(&line)
        {
            continue;
        }
        let candidate = serde_json::from_str::<Record>(&line)
            .map(|r| Candidate {
                id: r.id,
                nodes: r.nodes,
                source: source.clone(),
            })
            .map_err(|e| Rejected {
                id: None,
                source,
                error: TreebankError::Json {
                    line: line_no,
                    reason: e.to_string(),
                },
            });
        parsed.push(candidate);
    }
    Ok(parsed)
}

/// Convenience wrapper over [`read`] for in-memory text.
pub fn parse_str(text: &str) -> Result<Parsed, TreebankError> {
    read(text.as_bytes(), &ReadOptions::default())
}

/// Serializes one sentence as a single JSON line (no trailing newline).
pub fn to_line(sentence: &Sentence) -> String {
    let record = Record {
        id: sentence.id().to_owned(),
        nodes: sentence.nodes().to_vec(),
    };
    serde_json::to_string(&record).expect("sentence serializes")
}

/// Serializes sentences as JSONL, one per line.
pub fn write(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&to_line(s));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::TreeError;

    #[test]
    fn two_node_sentence() {
        let p = parse_str(r#"{"id":"s1","nodes":[{"index":1,"head":2},{"index":2,"head":0}]}"#)
            .unwrap();
        let s = p.strict().unwrap();
        assert_eq!(s[0].id(), "s1");
        assert_eq!(s[0].heads(), vec![2, 0]);
    }

    #[test]
    fn two_roots_rejected() {
        let p = parse_str(r#"{"id":"s1","nodes":[{"index":1,"head":0},{"index":2,"head":0}]}"#)
            .unwrap();
        assert_eq!(
            p.rejected[0].error,
            TreebankError::InvalidTree(TreeError::MultipleRoots(vec![1, 2]))
        );
    }

    #[test]
    fn syntax_error_carries_line() {
        let text = "{\"meta\":{\"seed\":1}}\n\n{\"id\":\"a\",\"nodes\":[{\"index\":1,\"head\":0}]}\n{oops\n";
        let p = parse_str(text).unwrap();
        assert_eq!(p.sentences.len(), 1);
        assert!(matches!(p.rejected[0].error, TreebankError::Json { line: 4, .. }));
    }

    #[test]
    fn optional_fields_round_trip() {
        let line = r#"{"id":"x","nodes":[{"index":1,"head":0,"form":"走る","lemma":"走る"}]}"#;
        let s = parse_str(line).unwrap().strict().unwrap();
        assert_eq!(to_line(&s[0]), line);
    }
}
