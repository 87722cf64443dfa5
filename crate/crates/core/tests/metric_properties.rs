mod common;

use depmetrics::metrics::{depths, hd, metric_record, Ratio};
use depmetrics::randtree::{enumerate_trees, random_tree, GeneratorConfig};
use depmetrics::treebank::{canonical, validate_tree, Candidate};
use proptest::prelude::*;

use common::{hist, oracle_of};

fn random_sentence() -> impl Strategy<Value = depmetrics::treebank::Sentence> {
    (2usize..=20, any::<u64>(), 0u64..1000)
        .prop_map(|(n, seed, idx)| random_tree(&GeneratorConfig::new(n, seed, 1), idx).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn agrees_with_brute_force(s in random_sentence()) {
        let r = metric_record(&s).unwrap();
        let o = oracle_of(&s);
        let n = s.len() as u64;
        prop_assert_eq!(r.mdd(), Ratio::new(o.dd.iter().sum::<usize>() as u64, n - 1));
        prop_assert_eq!(r.mhd(), Ratio::new(o.hd.iter().sum::<usize>() as u64, n - 1));
        prop_assert_eq!(&r.dd_hist, &hist(&o.dd));
        prop_assert_eq!(&r.hd_hist, &hist(&o.hd));
        prop_assert_eq!(r.root_out_degree, o.root_out_degree);
    }

    #[test]
    fn structural_invariants(s in random_sentence()) {
        let r = metric_record(&s).unwrap();
        let n = s.len();
        prop_assert_eq!(r.dd_hist.values().sum::<u64>(), n as u64 - 1);
        prop_assert_eq!(r.hd_hist.values().sum::<u64>(), n as u64 - 1);
        prop_assert!(r.mdd() >= Ratio::new(1, 1) && r.mdd() <= Ratio::new(n as u64 - 1, 1));
        prop_assert!(r.mhd() >= Ratio::new(1, 1) && r.mhd() <= Ratio::new(n as u64, 2));
        prop_assert_eq!(r.first_layer_count() as usize, r.root_out_degree);
        let d = depths(&s);
        for node in s.nodes().iter().filter(|n| !n.is_root()) {
            prop_assert_eq!(d[node.index - 1], d[node.head - 1] + 1);
        }
        prop_assert_eq!(hd(&s, s.root()).unwrap(), 0);
        // MDD = 1 iff every dependency is adjacent; MHD = 1 iff star
        let all_adjacent = s.nodes().iter().all(|x| x.is_root() || x.head.abs_diff(x.index) == 1);
        prop_assert_eq!(r.mdd() == Ratio::new(1, 1), all_adjacent);
        prop_assert_eq!(r.mhd() == Ratio::new(1, 1), r.root_out_degree == n - 1);
    }

    #[test]
    fn canonical_round_trip(s in random_sentence()) {
        let again = canonical::parse_str(&canonical::to_line(&s)).unwrap().strict().unwrap();
        prop_assert!(s.same_structure(&again[0]));
    }

    #[test]
    fn head_chains_reach_root(s in random_sentence()) {
        let n = s.len();
        for start in 1..=n {
            let mut cur = start;
            let mut steps = 0;
            while s.head(cur).unwrap() != 0 {
                cur = s.head(cur).unwrap();
                steps += 1;
            }
            prop_assert!(steps < n);
        }
    }
}

#[test]
fn hd_sum_is_subtree_sum_on_all_small_trees() {
    for n in 1..=6 {
        for s in enumerate_trees(n).unwrap() {
            let o = oracle_of(&s);
            let total_hd: usize = depths(&s).iter().sum();
            let subtree: usize = o.subtree_sizes.iter().map(|k| k - 1).sum();
            assert_eq!(total_hd, subtree, "heads {:?}", s.heads());
        }
    }
}

#[test]
fn chain_maximizes_mhd() {
    for n in 2..=7usize {
        let bound = Ratio::new(n as u64, 2);
        for s in enumerate_trees(n).unwrap() {
            let r = metric_record(&s).unwrap();
            let is_chain = {
                // a chain visits every node along a single path
                let mut children = vec![0; n + 1];
                for x in s.nodes() {
                    children[x.head] += 1;
                }
                children[1..].iter().all(|&c| c <= 1)
            };
            assert!(r.mhd() <= bound);
            assert_eq!(r.mhd() == bound, is_chain, "heads {:?}", s.heads());
        }
    }
}

#[test]
fn generated_trees_validate() {
    let cfg = GeneratorConfig::new(12, 99, 500);
    for s in depmetrics::randtree::generate(&cfg).unwrap() {
        let again = validate_tree(Candidate::new(s.id(), s.nodes().to_vec()));
        assert!(again.is_ok());
    }
}

/// n = 4 has 4^3 = 64 rooted labeled trees; 10,000 draws should hit each
/// about 156 times.
#[test]
fn random_trees_are_uniform_for_n4() {
    let trees = depmetrics::randtree::generate(&GeneratorConfig::new(4, 42, 10_000)).unwrap();
    let mut freq: std::collections::BTreeMap<Vec<usize>, u64> = Default::default();
    for t in &trees {
        *freq.entry(t.heads()).or_insert(0) += 1;
    }
    assert_eq!(freq.len(), 64);
    let expected = 10_000.0 / 64.0;
    let sigma = (10_000.0 * (1.0 / 64.0) * (63.0 / 64.0) as f64).sqrt();
    for (heads, &c) in &freq {
        assert!((c as f64 - expected).abs() < 5.0 * sigma, "{:?} drawn {} times", heads, c);
    }
    let chi2: f64 = freq.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 63 degrees of freedom; 0.999 quantile is about 103.4
    assert!(chi2 < 103.4, "chi-square {}", chi2);
}
