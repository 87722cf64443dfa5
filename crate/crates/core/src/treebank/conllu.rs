//! CoNLL-U reader and writer.
//!
//! Only ID, FORM, LEMMA, UPOS (for `drop_punct`) and HEAD are consumed.
//! Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped.

use std::io::BufRead;

use super::{
    Candidate, Lines, Node, Parsed, ReadOptions, Rejected, Sentence, Source, TreeError,
    TreebankError,
};

struct Token {
    index: usize,
    head: usize,
    form: Option<String>,
    lemma: Option<String>,
    punct: bool,
}

struct Block {
    id: Option<String>,
    first_line: usize,
    last_line: usize,
    tokens: Vec<Token>,
    error: Option<TreebankError>,
}

impl Block {
    fn new(line: usize) -> Self {
        Block {
            id: None,
            first_line: line,
            last_line: line,
            tokens: Vec::new(),
            error: None,
        }
    }

    fn has_content(&self) -> bool {
        !self.tokens.is_empty() || self.error.is_some()
    }
}

fn opt_field(s: &str) -> Option<String> {
    if s == "_" || s.is_empty() {
        None
    } else {
        Some(s.to_owned())
    }
}

fn parse_token(line_no: usize, line: &str) -> Result<Option<Token>, TreebankError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < 8 {
        return Err(TreebankError::MalformedLine {
            line: line_no,
            reason: format!("expected at least 8 tab-separated fields, found {}", fields.len()),
        });
    }
    let id = fields[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    let index = id.parse::<usize>().map_err(|_| TreebankError::MalformedLine {
        line: line_no,
        reason: format!("non-integer ID '{}'", id),
    })?;
    let head = fields[6]
        .parse::<usize>()
        .map_err(|_| TreebankError::MalformedLine {
            line: line_no,
            reason: format!("non-integer HEAD '{}'", fields[6]),
        })?;
    Ok(Some(Token {
        index,
        head,
        form: opt_field(fields[1]),
        lemma: opt_field(fields[2]),
        punct: fields[3] == "PUNCT",
    }))
}

fn finish(block: Block, ordinal: usize, opts: &ReadOptions) -> Result<Candidate, Rejected> {
    let id = block.id.unwrap_or_else(|| format!("s{}", ordinal));
    let source = Source {
        file: opts.file.clone(),
        first_line: block.first_line,
        last_line: block.last_line,
    };
    let reject = |error: TreebankError| Rejected {
        id: Some(id.clone()),
        source: source.clone(),
        error,
    };
    if let Some(e) = block.error {
        return Err(reject(e));
    }
    // IDs must already be consecutive once ranges and empty nodes are gone
    for (pos, t) in block.tokens.iter().enumerate() {
        if t.index != pos + 1 {
            return Err(reject(
                TreeError::NonConsecutiveIndex {
                    position: pos + 1,
                    index: t.index,
                }
                .into(),
            ));
        }
    }
    let tokens = if opts.drop_punct {
        drop_punct(block.tokens).map_err(|e| reject(e.into()))?
    } else {
        block.tokens
    };
    let nodes = tokens
        .into_iter()
        .map(|t| Node {
            index: t.index,
            head: t.head,
            form: t.form,
            lemma: t.lemma,
        })
        .collect();
    Ok(Candidate {
        id: id.clone(),
        nodes,
        source: source.clone(),
    })
}

/// Removes PUNCT tokens and renumbers the rest; a dropped token that governs
/// anything invalidates the sentence.
fn drop_punct(tokens: Vec<Token>) -> Result<Vec<Token>, TreeError> {
    let n = tokens.len();
    let mut new_index = vec![0usize; n + 1];
    let mut next = 0;
    for t in &tokens {
        if !t.punct {
            next += 1;
            new_index[t.index] = next;
        }
    }
    for t in &tokens {
        if !t.punct && t.head != 0 && t.head <= n && new_index[t.head] == 0 {
            return Err(TreeError::DroppedHead(t.head));
        }
    }
    Ok(tokens
        .into_iter()
        .filter(|t| !t.punct)
        .map(|mut t| {
            t.index = new_index[t.index];
            if t.head != 0 && t.head <= n {
                t.head = new_index[t.head];
            }
            t
        })
        .collect())
}

/// Reads a CoNLL-U stream.
pub fn read<R: BufRead>(reader: R, opts: &ReadOptions) -> Result<Parsed, TreebankError> {
    let mut parsed = Parsed::default();
    let mut block: Option<Block> = None;
    let mut ordinal = 0;
    for item in Lines::new(reader) {
        let (line_no, line) = item?;
        if line.trim().is_empty() {
            if let Some(b) = block.take() {
                if b.has_content() {
                    ordinal += 1;
                    parsed.push(finish(b, ordinal, opts));
                }
            }
            continue;
        }
        let b = block.get_or_insert_with(|| Block::new(line_no));
        b.last_line = line_no;
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    b.id = Some(value.trim().to_owned());
                }
            }
            continue;
        }
        if b.error.is_some() {
            continue;
        }
        match parse_token(line_no, &line) {
            Ok(Some(t)) => b.tokens.push(t),
            Ok(None) => {}
            Err(e) => b.error = Some(e),
        }
    }
    if let Some(b) = block {
        if b.has_content() {
            ordinal += 1;
            parsed.push(finish(b, ordinal, opts));
        }
    }
    Ok(parsed)
}

/// Convenience wrapper over [`read`] for in-memory text.
pub fn parse_str(text: &str) -> Result<Parsed, TreebankError> {
    read(text.as_bytes(), &ReadOptions::default())
}

/// Renders sentences as minimal CoNLL-U (unused columns are `_`).
pub fn write(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&format!("# sent_id = {}\n", s.id()));
        for n in s.nodes() {
            out.push_str(&format!(
                "{}\t{}\t{}\t_\t_\t_\t{}\t_\t_\t_\n",
                n.index,
                n.form.as_deref().unwrap_or("_"),
                n.lemma.as_deref().unwrap_or("_"),
                n.head
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, form: &str, upos: &str, head: &str) -> String {
        format!("{id}\t{form}\t{form}\t{upos}\t_\t_\t{head}\tdep\t_\t_\n")
    }

    #[test]
    fn minimal_sentence() {
        let text = row("1", "the", "DET", "2") + &row("2", "cat", "NOUN", "0");
        let s = parse_str(&text).unwrap().strict().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].heads(), vec![2, 0]);
        assert_eq!(s[0].root(), 2);
        assert_eq!(s[0].nodes()[0].form.as_deref(), Some("the"));
    }

    #[test]
    fn empty_input() {
        let p = parse_str("").unwrap();
        assert!(p.sentences.is_empty());
        assert!(p.rejected.is_empty());
    }

    #[test]
    fn sent_id_and_comments() {
        let text = format!(
            "# sent_id = abc\n# text = the cat\n{}{}\n{}",
            row("1", "the", "DET", "2"),
            row("2", "cat", "NOUN", "0"),
            row("1", "x", "X", "0")
        );
        let p = parse_str(&text).unwrap();
        assert_eq!(p.sentences.len(), 2);
        assert_eq!(p.sentences[0].id(), "abc");
        assert_eq!(p.sentences[1].id(), "s2");
        assert_eq!(p.sentences[0].source().first_line, 1);
        assert_eq!(p.sentences[0].source().last_line, 4);
    }

    #[test]
    fn skips_ranges_and_empty_nodes() {
        let text = row("1", "a", "X", "3")
            + &row("2-3", "bc", "_", "_")
            + &row("2", "b", "X", "3")
            + &row("3", "c", "X", "0")
            + &row("3.1", "e", "X", "_");
        let s = parse_str(&text).unwrap().strict().unwrap();
        assert_eq!(s[0].heads(), vec![3, 3, 0]);
    }

    #[test]
    fn gap_in_ids_rejects_sentence() {
        let text = row("1", "a", "X", "3") + &row("3", "c", "X", "0");
        let p = parse_str(&text).unwrap();
        assert!(p.sentences.is_empty());
        assert!(matches!(
            p.rejected[0].error,
            TreebankError::InvalidTree(TreeError::NonConsecutiveIndex { .. })
        ));
    }

    #[test]
    fn malformed_lines_reject_only_their_block() {
        let text = "1\tfoo\t_\n\n".to_string()
            + &row("x", "a", "X", "0")
            + "\n"
            + &row("1", "a", "X", "y")
            + "\n"
            + &row("1", "ok", "X", "0");
        let p = parse_str(&text).unwrap();
        assert_eq!(p.sentences.len(), 1);
        assert_eq!(p.rejected.len(), 3);
        for r in &p.rejected {
            assert!(matches!(r.error, TreebankError::MalformedLine { .. }));
        }
        assert!(matches!(
            p.rejected[0].error,
            TreebankError::MalformedLine { line: 1, .. }
        ));
    }

    #[test]
    fn invalid_tree_is_rejected() {
        let text = row("1", "a", "X", "2") + &row("2", "b", "X", "1") + &row("3", "c", "X", "0");
        let err = parse_str(&text).unwrap().strict().unwrap_err();
        assert!(matches!(
            err,
            TreebankError::InvalidTree(TreeError::CycleDetected(_))
        ));
    }

    #[test]
    fn bad_utf8_is_fatal() {
        let mut bytes = row("1", "a", "X", "0").into_bytes();
        bytes.extend_from_slice(b"\n2\t\xff\n");
        let err = read(&bytes[..], &ReadOptions::default()).unwrap_err();
        assert_eq!(err, TreebankError::Encoding { line: 3 });
    }

    #[test]
    fn drop_punct_renumbers_leaves() {
        let text = row("1", "Hi", "INTJ", "3")
            + &row("2", ",", "PUNCT", "3")
            + &row("3", "you", "PRON", "0")
            + &row("4", ".", "PUNCT", "3");
        let opts = ReadOptions {
            drop_punct: true,
            ..Default::default()
        };
        let s = read(text.as_bytes(), &opts).unwrap().strict().unwrap();
        assert_eq!(s[0].heads(), vec![2, 0]);
        assert_eq!(s[0].nodes()[1].form.as_deref(), Some("you"));

        let kept = parse_str(&text).unwrap().strict().unwrap();
        assert_eq!(kept[0].len(), 4);
    }

    #[test]
    fn drop_punct_rejects_governing_punct() {
        let text = row("1", "a", "X", "2") + &row("2", "-", "PUNCT", "3") + &row("3", "b", "X", "0");
        let opts = ReadOptions {
            drop_punct: true,
            ..Default::default()
        };
        let p = read(text.as_bytes(), &opts).unwrap();
        assert_eq!(
            p.rejected[0].error,
            TreebankError::InvalidTree(TreeError::DroppedHead(2))
        );
    }

    #[test]
    fn write_then_read() {
        let text = row("1", "the", "DET", "2") + &row("2", "cat", "NOUN", "0");
        let s = parse_str(&text).unwrap().strict().unwrap();
        let again = parse_str(&write(&s)).unwrap().strict().unwrap();
        assert!(s[0].same_structure(&again[0]));
    }
}
