//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls into `depmetrics::metrics`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use depmetrics::treebank::Sentence;

pub struct Oracle {
    pub dd: Vec<usize>,
    pub hd: Vec<usize>,
    pub subtree_sizes: Vec<usize>,
    pub root_out_degree: usize,
}

/// Walks head chains from scratch for every node.
pub fn oracle(heads: &[usize]) -> Oracle {
    let n = heads.len();
    let mut dd = Vec::new();
    let mut hd = Vec::new();
    for i in 1..=n {
        let h = heads[i - 1];
        if h != 0 {
            dd.push(if h > i { h - i } else { i - h });
        }
        let mut steps = 0;
        let mut cur = i;
        while heads[cur - 1] != 0 {
            cur = heads[cur - 1];
            steps += 1;
            assert!(steps <= n, "cycle");
        }
        if h != 0 {
            hd.push(steps);
        }
    }
    // subtree of a: every node whose head chain passes through a
    let subtree_sizes = (1..=n)
        .map(|a| {
            (1..=n)
                .filter(|&b| {
                    let mut cur = b;
                    loop {
                        if cur == a {
                            return true;
                        }
                        if cur == 0 {
                            return false;
                        }
                        cur = heads[cur - 1];
                    }
                })
                .count()
        })
        .collect();
    let root = heads.iter().position(|&h| h == 0).unwrap() + 1;
    let root_out_degree = heads.iter().filter(|&&h| h == root).count();
    Oracle {
        dd,
        hd,
        subtree_sizes,
        root_out_degree,
    }
}

pub fn hist(values: &[usize]) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for &v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

pub fn oracle_of(s: &Sentence) -> Oracle {
    oracle(&s.heads())
}

/// Independent tree test: exactly one zero head, in-range heads, and every
/// node reaches the root within n steps.
pub fn is_rooted_tree(heads: &[usize]) -> bool {
    let n = heads.len();
    if n == 0 || heads.iter().filter(|&&h| h == 0).count() != 1 {
        return false;
    }
    if heads.iter().any(|&h| h > n) {
        return false;
    }
    (1..=n).all(|i| {
        let mut cur = i;
        for _ in 0..=n {
            if heads[cur - 1] == 0 {
                return true;
            }
            cur = heads[cur - 1];
        }
        false
    })
}

pub fn workspace_file(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}
