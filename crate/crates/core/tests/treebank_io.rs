mod common;

use std::collections::BTreeMap;
use std::fs;

use depmetrics::analysis::length_histogram;
use depmetrics::metrics::{mdd, metric_record, mhd, Ratio};
use depmetrics::treebank::{
    cabocha, canonical, conllu, read, validate_tree, Candidate, Format, Node, ReadOptions,
};

use common::{is_rooted_tree, workspace_file};

#[test]
fn worked_sentence_in_every_format() {
    let text = fs::read_to_string(workspace_file("data/worked_example.conllu")).unwrap();
    let from_conllu = conllu::parse_str(&text).unwrap().strict().unwrap();
    let text = fs::read_to_string(workspace_file("data/worked_example.cabocha")).unwrap();
    let from_cabocha = cabocha::parse_str(&text).unwrap().strict().unwrap();
    for s in [&from_conllu[0], &from_cabocha[0]] {
        assert_eq!(s.heads(), vec![2, 7, 4, 5, 7, 7, 0]);
        assert_eq!(mdd(s).unwrap(), Ratio::new(11, 6));
        assert_eq!(mhd(s).unwrap(), Ratio::new(10, 6));
        assert_eq!(metric_record(s).unwrap().root_out_degree, 3);
    }
    let forms: Vec<_> = from_cabocha[0]
        .nodes()
        .iter()
        .map(|n| n.form.clone().unwrap())
        .collect();
    assert_eq!(forms[1], "先生は");
    assert_eq!(forms[4], "担当する");
    assert_eq!(from_cabocha[0].root_node().lemma.as_deref(), Some("先生"));
    assert_eq!(from_conllu[0].id(), "worked");
}

#[test]
fn canonical_round_trip_over_sample_corpus() {
    let text = fs::read_to_string(workspace_file("data/sample.conllu")).unwrap();
    let parsed = conllu::parse_str(&text).unwrap();
    assert_eq!(parsed.sentences.len(), 200);
    let jsonl = canonical::write(&parsed.sentences);
    let again = canonical::parse_str(&jsonl).unwrap().strict().unwrap();
    assert_eq!(again.len(), parsed.sentences.len());
    for (a, b) in parsed.sentences.iter().zip(&again) {
        assert!(a.same_structure(b));
        assert_eq!(a.id(), b.id());
    }
}

#[test]
fn length_histogram_matches_line_count() {
    let text = fs::read_to_string(workspace_file("data/sample.conllu")).unwrap();
    // oracle: count token lines (first field an integer) per blank-line block
    let mut oracle: BTreeMap<usize, usize> = BTreeMap::new();
    for block in text.split("\n\n").filter(|b| !b.trim().is_empty()) {
        let tokens = block
            .lines()
            .filter(|l| {
                l.split('\t')
                    .next()
                    .is_some_and(|id| id.chars().all(|c| c.is_ascii_digit()) && !id.is_empty())
            })
            .count();
        *oracle.entry(tokens).or_insert(0) += 1;
    }
    let sentences = conllu::parse_str(&text).unwrap().strict().unwrap();
    assert_eq!(length_histogram(sentences.iter().map(|s| s.len())), oracle);
}

#[test]
fn drop_punct_on_sample_corpus() {
    let bytes = fs::read(workspace_file("data/sample.conllu")).unwrap();
    let kept = read(&bytes[..], Format::Conllu, &ReadOptions::default()).unwrap();
    let opts = ReadOptions {
        drop_punct: true,
        ..Default::default()
    };
    let dropped = read(&bytes[..], Format::Conllu, &opts).unwrap();
    assert_eq!(dropped.sentences.len(), 200);
    let total = |p: &depmetrics::treebank::Parsed| p.sentences.iter().map(|s| s.len()).sum::<usize>();
    let punct = String::from_utf8(bytes).unwrap().matches("\tPUNCT\t").count();
    assert!(punct > 0);
    assert_eq!(total(&kept) - total(&dropped), punct);
}

/// Every head vector in {0..n}^n for n <= 4: the validator accepts exactly
/// the rooted trees.
#[test]
fn validator_accept_set_is_rooted_trees() {
    for n in 1..=4usize {
        let mut accepted = 0;
        let combos = (n + 1).pow(n as u32);
        for code in 0..combos {
            let mut c = code;
            let heads: Vec<usize> = (0..n)
                .map(|_| {
                    let h = c % (n + 1);
                    c /= n + 1;
                    h
                })
                .collect();
            let nodes = heads.iter().enumerate().map(|(i, &h)| Node::new(i + 1, h)).collect();
            let ok = validate_tree(Candidate::new("x", nodes)).is_ok();
            // self loops are never trees; the oracle sees them as cycles
            assert_eq!(ok, is_rooted_tree(&heads), "heads {:?}", heads);
            accepted += ok as usize;
        }
        assert_eq!(accepted, n.pow(n as u32 - 1));
    }
}

#[test]
fn mixed_formats_through_one_entry_point() {
    let jsonl = "{\"id\":\"a\",\"nodes\":[{\"index\":1,\"head\":0}]}\n";
    let p = read(jsonl.as_bytes(), Format::Canonical, &ReadOptions::default()).unwrap();
    assert_eq!(p.total(), 1);
    let cab = "* 0 -1D\nx\nEOS\n";
    let p = read(cab.as_bytes(), Format::Cabocha, &ReadOptions::default()).unwrap();
    assert_eq!(p.sentences[0].len(), 1);
}
