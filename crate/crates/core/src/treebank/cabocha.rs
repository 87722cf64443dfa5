//! CaboCha lattice (`-f1`) reader.
//!
//! ```text
//! * 0 1D 0/1 1.2
//! この	連体詞,*,*,*,*,*,この,コノ,コノ
//! * 1 -1D 0/1 0.0
//! ...
//! EOS
//! ```
//!
//! Each chunk becomes one node: index = chunk id + 1, head = head chunk + 1
//! (`-1D` maps to 0). The node form is the concatenated morpheme surfaces;
//! the lemma is the base form of the chunk's head morpheme.

use std::io::BufRead;

use super::{Candidate, Lines, Node, Parsed, ReadOptions, Rejected, Source, TreebankError};

#[derive(Default)]
struct Chunk {
    head: i64,
    head_morph: Option<usize>,
    surfaces: Vec<String>,
    lemmas: Vec<String>,
}

struct Block {
    first_line: usize,
    last_line: usize,
    chunks: Vec<Chunk>,
    error: Option<TreebankError>,
}

fn header_error(line: usize, reason: impl Into<String>) -> TreebankError {
    TreebankError::MalformedChunkHeader {
        line,
        reason: reason.into(),
    }
}

fn parse_header(line_no: usize, rest: &str, expected: usize) -> Result<Chunk, TreebankError> {
    let mut fields = rest.split_whitespace();
    let idx = fields
        .next()
        .ok_or_else(|| header_error(line_no, "missing chunk index"))?;
    let idx: usize = idx
        .parse()
        .map_err(|_| header_error(line_no, format!("non-integer chunk index '{}'", idx)))?;
    if idx != expected {
        return Err(header_error(
            line_no,
            format!("chunk index {} out of sequence (expected {})", idx, expected),
        ));
    }
    let link = fields
        .next()
        .ok_or_else(|| header_error(line_no, "missing head field"))?;
    let head = link
        .strip_suffix('D')
        .and_then(|h| h.parse::<i64>().ok())
        .filter(|&h| h >= -1)
        .ok_or_else(|| header_error(line_no, format!("bad head field '{}'", link)))?;
    let head_morph = fields
        .next()
        .and_then(|hf| hf.split_once('/'))
        .and_then(|(h, _)| h.parse::<usize>().ok());
    Ok(Chunk {
        head,
        head_morph,
        ..Default::default()
    })
}

fn finish(block: Block, ordinal: usize, opts: &ReadOptions) -> Result<Candidate, Rejected> {
    let id = format!("s{}", ordinal);
    let source = Source {
        file: opts.file.clone(),
        first_line: block.first_line,
        last_line: block.last_line,
    };
    if let Some(error) = block.error {
        return Err(Rejected {
            id: Some(id),
            source,
            error,
        });
    }
    let nodes = block
        .chunks
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let lemma = c
                .head_morph
                .and_then(|h| c.lemmas.get(h))
                .or_else(|| c.lemmas.first())
                .cloned();
            Node {
                index: i + 1,
                head: if c.head < 0 { 0 } else { c.head as usize + 1 },
                form: Some(c.surfaces.concat()),
                lemma,
            }
        })
        .collect();
    Ok(Candidate { id, nodes, source })
}

/// Reads a CaboCha lattice stream.
pub fn read<R: BufRead>(reader: R, opts: &ReadOptions) -> Result<Parsed, TreebankError> {
    let mut parsed = Parsed::default();
    let mut block: Option<Block> = None;
    let mut ordinal = 0;
    for item in Lines::new(reader) {
        let (line_no, line) = item?;
        if line == "EOS" {
            // a bare EOS (CaboCha's output for blank input) yields nothing
            if let Some(mut b) = block.take() {
                b.last_line = line_no;
                ordinal += 1;
                parsed.push(finish(b, ordinal, opts));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let b = block.get_or_insert_with(|| Block {
            first_line: line_no,
            last_line: line_no,
            chunks: Vec::new(),
            error: None,
        });
        b.last_line = line_no;
        if b.error.is_some() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("* ") {
            match parse_header(line_no, rest, b.chunks.len()) {
                Ok(c) => b.chunks.push(c),
                Err(e) => b.error = Some(e),
            }
            continue;
        }
        let Some(chunk) = b.chunks.last_mut() else {
            b.error = Some(TreebankError::MalformedLine {
                line: line_no,
                reason: "morpheme line before any chunk header".into(),
            });
            continue;
        };
        let (surface, features) = line.split_once('\t').unwrap_or((line.as_str(), ""));
        let base = features
            .split(',')
            .nth(6)
            .filter(|b| !b.is_empty() && *b != "*")
            .unwrap_or(surface);
        chunk.surfaces.push(surface.to_owned());
        chunk.lemmas.push(base.to_owned());
    }
    if let Some(b) = block {
        parsed.rejected.push(Rejected {
            id: None,
            source: Source {
                file: opts.file.clone(),
                first_line: b.first_line,
                last_line: b.last_line,
            },
            error: TreebankError::MissingEos,
        });
    }
    Ok(parsed)
}

/// Convenience wrapper over [`read`] for in-memory text.
pub fn parse_str(text: &str) -> Result<Parsed, TreebankError> {
    read(text.as_bytes(), &ReadOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::TreeError;

    #[test]
    fn single_chunk() {
        let text = "* 0 -1D 0/0 0.000000\n猫\t名詞,一般,*,*,*,*,猫,ネコ,ネコ\nEOS\n";
        let s = parse_str(text).unwrap().strict().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].heads(), vec![0]);
        assert_eq!(s[0].nodes()[0].form.as_deref(), Some("猫"));
    }

    #[test]
    fn minimal_header_fields() {
        let s = parse_str("* 0 -1D\nx\nEOS\n").unwrap().strict().unwrap();
        assert_eq!(s[0].heads(), vec![0]);
        assert_eq!(s[0].nodes()[0].lemma.as_deref(), Some("x"));
    }

    #[test]
    fn two_blocks_in_order() {
        let text = "* 0 1D\na\n* 1 -1D\nb\nEOS\n* 0 -1D\nc\nEOS\n";
        let s = parse_str(text).unwrap().strict().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].heads(), vec![2, 0]);
        assert_eq!(s[1].nodes()[0].form.as_deref(), Some("c"));
        assert_eq!(s[0].id(), "s1");
        assert_eq!(s[1].id(), "s2");
    }

    #[test]
    fn lemma_from_head_morpheme() {
        let text = "* 0 -1D 1/2 0.0\n\
                    よく\t副詞,一般,*,*,*,*,よく,ヨク,ヨク\n\
                    走っ\t動詞,自立,*,*,五段・ラ行,連用タ接続,走る,ハシッ,ハシッ\n\
                    た\t助動詞,*,*,*,特殊・タ,基本形,た,タ,タ\n\
                    EOS\n";
        let s = parse_str(text).unwrap().strict().unwrap();
        assert_eq!(s[0].nodes()[0].form.as_deref(), Some("よく走った"));
        assert_eq!(s[0].nodes()[0].lemma.as_deref(), Some("走る"));
    }

    #[test]
    fn missing_eos_rejects_trailing_block() {
        let p = parse_str("* 0 -1D\na\nEOS\n* 0 -1D\nb\n").unwrap();
        assert_eq!(p.sentences.len(), 1);
        assert_eq!(p.rejected.len(), 1);
        assert_eq!(p.rejected[0].error, TreebankError::MissingEos);
    }

    #[test]
    fn malformed_headers() {
        for bad in ["* x -1D\na\nEOS\n", "* 0 -1\na\nEOS\n", "* 1 -1D\na\nEOS\n", "* 0\nEOS\n"] {
            let p = parse_str(bad).unwrap();
            assert!(p.sentences.is_empty(), "{bad}");
            assert!(
                matches!(p.rejected[0].error, TreebankError::MalformedChunkHeader { .. }),
                "{bad}"
            );
        }
    }

    #[test]
    fn invalid_tree_rejected() {
        let p = parse_str("* 0 -1D\na\n* 1 -1D\nb\nEOS\n").unwrap();
        assert!(matches!(
            p.rejected[0].error,
            TreebankError::InvalidTree(TreeError::MultipleRoots(_))
        ));
    }

    #[test]
    fn bare_eos_is_ignored() {
        let p = parse_str("EOS\n* 0 -1D\na\nEOS\n").unwrap();
        assert_eq!(p.sentences.len(), 1);
        assert_eq!(p.sentences[0].id(), "s1");
    }
}
