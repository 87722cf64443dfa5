use std::collections::BTreeMap;
use std::io::BufRead;

use super::{Lines, TreebankError};

/// Lemma → valency class (1..=4), loaded from a two-column TSV.
///
/// Lines starting with `#` and blank lines are skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValencyLexicon {
    entries: BTreeMap<String, u8>,
}

impl ValencyLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self, TreebankError> {
        let mut lex = ValencyLexicon::new();
        for item in Lines::new(reader) {
            let (line_no, line) = item?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| TreebankError::Lexicon {
                line: line_no,
                reason,
            };
            let (lemma, class) = line
                .split_once('\t')
                .ok_or_else(|| err("expected 'lemma<TAB>class'".into()))?;
            let class: u8 = class
                .trim()
                .parse()
                .map_err(|_| err(format!("non-integer class '{}'", class.trim())))?;
            lex.insert(lemma.trim(), class).map_err(err)?;
        }
        Ok(lex)
    }

    pub fn parse_str(text: &str) -> Result<Self, TreebankError> {
        Self::read(text.as_bytes())
    }

    pub fn insert(&mut self, lemma: impl Into<String>, class: u8) -> Result<(), String> {
        if !(1..=4).contains(&class) {
            return Err(format!("valency class {} outside 1..=4", class));
        }
        self.entries.insert(lemma.into(), class);
        Ok(())
    }

    pub fn get(&self, lemma: &str) -> Option<u8> {
        self.entries.get(lemma).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_tsv() {
        let lex = ValencyLexicon::parse_str("# verbs\n走る\t1\n\n渡す\t3\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.get("渡す"), Some(3));
        assert_eq!(lex.get("見る"), None);
    }

    #[test]
    fn rejects_bad_class() {
        let err = ValencyLexicon::parse_str("a\t1\nb\t5\n").unwrap_err();
        assert!(matches!(err, TreebankError::Lexicon { line: 2, .. }));
        assert!(ValencyLexicon::parse_str("a 1\n").is_err());
        assert!(ValencyLexicon::parse_str("a\tx\n").is_err());
    }
}
