//! Corpus-level aggregation of [`MetricRecord`]s.
//!
//! Everything here is a deterministic reduction: buckets are keyed by
//! `BTreeMap`, so series come out in ascending SL regardless of input order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{MetricRecord, Ratio};
use crate::stats::{
    entropy_with_base, ols_fit, spearman, Distribution, EntropyBase, ModelForm, RegressionResult,
};
use crate::treebank::{Sentence, ValencyLexicon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no records with SL in [{sl_min}, {sl_max}]")]
    EmptySelection { sl_min: usize, sl_max: usize },
    #[error("SL bound {0} is below 2")]
    SlTooSmall(usize),
    #[error("valency lexicon is empty")]
    EmptyLexicon,
    #[error("{records} records but {sentences} sentences")]
    LengthMismatch { records: usize, sentences: usize },
}

/// Which per-dependency metric a distribution is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "DD")]
    Dd,
    #[serde(rename = "HD")]
    Hd,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Dd, Metric::Hd];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Dd => "DD",
            Metric::Hd => "HD",
        }
    }

    fn hist(self, r: &MetricRecord) -> &BTreeMap<usize, u64> {
        match self {
            Metric::Dd => &r.dd_hist,
            Metric::Hd => &r.hd_hist,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One point of a per-SL series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub sl: usize,
    pub value: f64,
    /// Number of sentences behind the value.
    pub n: usize,
}

/// A per-SL point that a gate withheld from a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub sl: usize,
    pub n: usize,
    pub reason: String,
}

fn by_sl(records: &[MetricRecord]) -> BTreeMap<usize, Vec<&MetricRecord>> {
    let mut buckets: BTreeMap<usize, Vec<&MetricRecord>> = BTreeMap::new();
    for r in records {
        buckets.entry(r.sl).or_default().push(r);
    }
    buckets
}

/// Keeps records with `sl_min <= sl <= sl_max`.
pub fn window(records: &[MetricRecord], sl_min: usize, sl_max: usize) -> Vec<MetricRecord> {
    records
        .iter()
        .filter(|r| (sl_min..=sl_max).contains(&r.sl))
        .cloned()
        .collect()
}

/// Sentence count per SL, over whatever slice is passed in.
pub fn length_histogram<I>(lengths: I) -> BTreeMap<usize, usize>
where
    I: IntoIterator<Item = usize>,
{
    let mut hist = BTreeMap::new();
    for sl in lengths {
        *hist.entry(sl).or_insert(0) += 1;
    }
    hist
}

/// Merges the DD or HD histograms of every record with SL in
/// `[sl_min, sl_max]`.
pub fn pooled_distribution(
    records: &[MetricRecord],
    metric: Metric,
    sl_min: usize,
    sl_max: usize,
) -> Result<Distribution, AnalysisError> {
    if sl_min < 2 {
        return Err(AnalysisError::SlTooSmall(sl_min));
    }
    let mut dist = Distribution::new();
    for r in records.iter().filter(|r| (sl_min..=sl_max).contains(&r.sl)) {
        dist.extend_hist(metric.hist(r));
    }
    if dist.is_empty() {
        return Err(AnalysisError::EmptySelection { sl_min, sl_max });
    }
    Ok(dist)
}

/// One distribution per requested SL; SLs with no records are left out.
pub fn conditional_distributions(
    records: &[MetricRecord],
    metric: Metric,
    sls: &[usize],
) -> Result<BTreeMap<usize, Distribution>, AnalysisError> {
    if let Some(&bad) = sls.iter().find(|&&sl| sl < 2) {
        return Err(AnalysisError::SlTooSmall(bad));
    }
    let mut out = BTreeMap::new();
    for &sl in sls {
        let mut dist = Distribution::new();
        for r in records.iter().filter(|r| r.sl == sl) {
            dist.extend_hist(metric.hist(r));
        }
        if dist.is_empty() {
            log::warn!("no {} records at SL {}", metric, sl);
        } else {
            out.insert(sl, dist);
        }
    }
    Ok(out)
}

/// Entropy of the SL-conditioned distribution at each SL present.
///
/// Buckets with fewer than `min_bucket` sentences are returned separately.
pub fn entropy_by_sl(
    records: &[MetricRecord],
    metric: Metric,
    base: EntropyBase,
    min_bucket: usize,
) -> (Vec<SeriesPoint>, Vec<Skipped>) {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (sl, bucket) in by_sl(records) {
        if bucket.len() < min_bucket {
            skipped.push(Skipped {
                sl,
                n: bucket.len(),
                reason: format!("fewer than {} sentences", min_bucket),
            });
            continue;
        }
        let mut dist = Distribution::new();
        for r in &bucket {
            dist.extend_hist(metric.hist(r));
        }
        let value = entropy_with_base(&dist, base).expect("SL >= 2 buckets have mass");
        points.push(SeriesPoint {
            sl,
            value,
            n: bucket.len(),
        });
    }
    (points, skipped)
}

/// Mean MDD and mean MHD per SL.
pub fn mean_metric_by_sl(records: &[MetricRecord]) -> (Vec<SeriesPoint>, Vec<SeriesPoint>) {
    let mut mdd = Vec::new();
    let mut mhd = Vec::new();
    for (sl, bucket) in by_sl(records) {
        let n = bucket.len();
        mdd.push(SeriesPoint {
            sl,
            value: exact_mean(bucket.iter().map(|r| r.mdd()), sl),
            n,
        });
        mhd.push(SeriesPoint {
            sl,
            value: exact_mean(bucket.iter().map(|r| r.mhd()), sl),
            n,
        });
    }
    (mdd, mhd)
}

/// Mean of ratios sharing the denominator `sl - 1`, summed as integers.
fn exact_mean<I: Iterator<Item = Ratio>>(ratios: I, sl: usize) -> f64 {
    let mut num = 0u64;
    let mut count = 0u64;
    for r in ratios {
        debug_assert_eq!(r.den, sl as u64 - 1);
        num += r.num;
        count += 1;
    }
    Ratio::new(num, count * (sl as u64 - 1)).value()
}

/// A change of sign of `mean MDD - mean MHD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub lower: usize,
    pub upper: usize,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower == self.upper {
            write!(f, "[{}, {}]", self.lower, self.upper)
        } else {
            write!(f, "({}, {})", self.lower, self.upper)
        }
    }
}

/// Finds every interval where the MDD series and the MHD series swap order.
///
/// Points present in only one series are ignored, as is SL 2, where both
/// means are 1 by construction. Exact equality at an SL is reported as the
/// degenerate interval `[k, k]`.
pub fn find_intersection(mdd: &[SeriesPoint], mhd: &[SeriesPoint]) -> Vec<Crossing> {
    let mhd_at: BTreeMap<usize, f64> = mhd.iter().map(|p| (p.sl, p.value)).collect();
    let diffs: Vec<(usize, f64)> = mdd
        .iter()
        .filter(|p| p.sl > 2)
        .filter_map(|p| mhd_at.get(&p.sl).map(|m| (p.sl, p.value - m)))
        .collect();
    let mut out = Vec::new();
    for (i, &(sl, d)) in diffs.iter().enumerate() {
        if d == 0.0 {
            out.push(Crossing { lower: sl, upper: sl });
            continue;
        }
        if let Some(&(next_sl, next_d)) = diffs.get(i + 1) {
            if next_d != 0.0 && (d > 0.0) != (next_d > 0.0) {
                out.push(Crossing {
                    lower: sl,
                    upper: next_sl,
                });
            }
        }
    }
    out
}

/// Per-SL Spearman correlation between MDD and MHD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationPoint {
    pub sl: usize,
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
}

/// Spearman rho of MDD against MHD within each SL bucket.
///
/// SL 2 is always skipped (both metrics are constant 1 there), as are buckets
/// smaller than `max(3, min_bucket)` and buckets where either vector is
/// constant.
pub fn spearman_by_sl(
    records: &[MetricRecord],
    min_bucket: usize,
) -> (Vec<CorrelationPoint>, Vec<Skipped>) {
    let gate = min_bucket.max(3);
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (sl, bucket) in by_sl(records) {
        let n = bucket.len();
        let skip = |reason: String| Skipped { sl, n, reason };
        if sl == 2 {
            skipped.push(skip("SL 2 has no variance".into()));
            continue;
        }
        if n < gate {
            skipped.push(skip(format!("fewer than {} sentences", gate)));
            continue;
        }
        let xs: Vec<f64> = bucket.iter().map(|r| r.mdd().value()).collect();
        let ys: Vec<f64> = bucket.iter().map(|r| r.mhd().value()).collect();
        match spearman(&xs, &ys) {
            Ok(c) => points.push(CorrelationPoint {
                sl,
                rho: c.rho,
                p_value: c.p_value,
                n,
            }),
            Err(e) => skipped.push(skip(e.to_string())),
        }
    }
    for s in &skipped {
        log::info!("correlation at SL {} skipped: {}", s.sl, s.reason);
    }
    (points, skipped)
}

/// How a sentence's valency class is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValencyMode {
    /// Look up the root node's lemma (or form) in a lexicon.
    Lexicon,
    /// Root out-degree, capped at 4.
    #[default]
    RootOutDegree,
}

impl std::str::FromStr for ValencyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicon" => Ok(ValencyMode::Lexicon),
            "root-out-degree" => Ok(ValencyMode::RootOutDegree),
            other => Err(format!("unknown valency mode '{}'", other)),
        }
    }
}

impl fmt::Display for ValencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValencyMode::Lexicon => "lexicon",
            ValencyMode::RootOutDegree => "root-out-degree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValencyCell {
    pub valency: u8,
    pub sl: usize,
    /// Mean count of dependencies with DD = 1.
    pub avg_dd1: f64,
    /// Mean count of nodes with HD = 1.
    pub avg_hd1: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValencyCounts {
    /// Ascending by valency, then SL.
    pub cells: Vec<ValencyCell>,
    /// Sentences whose root lemma was not in the lexicon.
    pub lexicon_misses: usize,
}

/// Largest valency class.
pub const MAX_VALENCY: u8 = 4;

/// Mean per-sentence counts of DD = 1 and HD = 1 for each (valency, SL).
///
/// `records[i]` must describe `sentences[i]`.
pub fn valency_conditioned_counts(
    records: &[MetricRecord],
    sentences: &[Sentence],
    lexicon: Option<&ValencyLexicon>,
    mode: ValencyMode,
) -> Result<ValencyCounts, AnalysisError> {
    if records.len() != sentences.len() {
        return Err(AnalysisError::LengthMismatch {
            records: records.len(),
            sentences: sentences.len(),
        });
    }
    let lexicon = match mode {
        ValencyMode::Lexicon => match lexicon {
            Some(l) if !l.is_empty() => Some(l),
            _ => return Err(AnalysisError::EmptyLexicon),
        },
        ValencyMode::RootOutDegree => None,
    };
    let mut sums: BTreeMap<(u8, usize), (u64, u64, usize)> = BTreeMap::new();
    let mut misses = 0;
    for (r, s) in records.iter().zip(sentences) {
        let class = match lexicon {
            Some(lex) => {
                let root = s.root_node();
                let key = root.lemma.as_deref().or(root.form.as_deref());
                match key.and_then(|k| lex.get(k)) {
                    Some(c) => c,
                    None => {
                        misses += 1;
                        continue;
                    }
                }
            }
            None => r.root_out_degree.min(MAX_VALENCY as usize) as u8,
        };
        let e = sums.entry((class, r.sl)).or_insert((0, 0, 0));
        e.0 += r.adjacent_count();
        e.1 += r.first_layer_count();
        e.2 += 1;
    }
    if misses > 0 {
        log::warn!("{} sentence(s) skipped: root lemma not in lexicon", misses);
    }
    let cells = sums
        .into_iter()
        .map(|((valency, sl), (dd1, hd1, n))| ValencyCell {
            valency,
            sl,
            avg_dd1: dd1 as f64 / n as f64,
            avg_hd1: hd1 as f64 / n as f64,
            n,
        })
        .collect();
    Ok(ValencyCounts {
        cells,
        lexicon_misses: misses,
    })
}

/// Which valency-table quantity a fit describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FitTarget {
    /// `avg_dd1` on SL.
    #[serde(rename = "DD=1")]
    Dd1,
    /// `avg_hd1` on log SL.
    #[serde(rename = "HD=1")]
    Hd1,
}

impl FitTarget {
    pub fn name(self) -> &'static str {
        match self {
            FitTarget::Dd1 => "DD=1",
            FitTarget::Hd1 => "HD=1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValencyFit {
    pub target: FitTarget,
    pub valency: u8,
    pub fit: RegressionResult,
}

/// Log transform used for the HD = 1 models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "10")]
    Ten,
}

impl LogBase {
    pub fn form(self) -> ModelForm {
        match self {
            LogBase::E => ModelForm::LogLinear,
            LogBase::Ten => ModelForm::LogLinear10,
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "e" => Ok(LogBase::E),
            "10" => Ok(LogBase::Ten),
            other => Err(format!("log base must be e or 10 (got '{}')", other)),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Ten => "10",
        })
    }
}

/// Per valency class: `avg_dd1 ~ SL` (linear) and `avg_hd1 ~ log SL`.
///
/// Classes with fewer than three SL points are reported in the second
/// return value instead of being fitted.
pub fn fit_valency_models(
    cells: &[ValencyCell],
    log_base: LogBase,
) -> (Vec<ValencyFit>, Vec<(u8, String)>) {
    let mut by_class: BTreeMap<u8, Vec<&ValencyCell>> = BTreeMap::new();
    for c in cells {
        by_class.entry(c.valency).or_default().push(c);
    }
    let mut dd_rows = Vec::new();
    let mut hd_rows = Vec::new();
    let mut omitted = Vec::new();
    for (valency, cs) in by_class {
        let xs: Vec<f64> = cs.iter().map(|c| c.sl as f64).collect();
        let dd1: Vec<f64> = cs.iter().map(|c| c.avg_dd1).collect();
        let hd1: Vec<f64> = cs.iter().map(|c| c.avg_hd1).collect();
        let linear = ols_fit(&xs, &dd1, ModelForm::Linear);
        let log = ols_fit(&xs, &hd1, log_base.form());
        match (linear, log) {
            (Ok(l), Ok(g)) => {
                dd_rows.push(ValencyFit {
                    target: FitTarget::Dd1,
                    valency,
                    fit: l,
                });
                hd_rows.push(ValencyFit {
                    target: FitTarget::Hd1,
                    valency,
                    fit: g,
                });
            }
            (Err(e), _) | (_, Err(e)) => {
                log::warn!("valency {} not fitted: {}", valency, e);
                omitted.push((valency, e.to_string()));
            }
        }
    }
    dd_rows.extend(hd_rows);
    (dd_rows, omitted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::metric_record;
    use crate::randtree::{chain_tree, star_tree};

    fn rec(s: &Sentence) -> MetricRecord {
        metric_record(s).unwrap()
    }

    fn point(sl: usize, value: f64) -> SeriesPoint {
        SeriesPoint { sl, value, n: 1 }
    }

    #[test]
    fn lengths() {
        assert_eq!(length_histogram([2, 2, 3]), BTreeMap::from([(2, 2), (3, 1)]));
        assert!(length_histogram(Vec::new()).is_empty());
    }

    #[test]
    fn pooled_star_and_pair() {
        let r = vec![rec(&star_tree(5))];
        let dd = pooled_distribution(&r, Metric::Dd, 2, 20).unwrap();
        for v in 1..=4 {
            assert_eq!(dd.probability(v), 0.25);
        }
        let hd = pooled_distribution(&r, Metric::Hd, 2, 20).unwrap();
        assert_eq!(hd.probability(1), 1.0);

        let pair = vec![rec(&chain_tree(2))];
        for m in Metric::ALL {
            assert_eq!(pooled_distribution(&pair, m, 2, 20).unwrap().probability(1), 1.0);
        }
        assert_eq!(
            pooled_distribution(&pair, Metric::Dd, 3, 20),
            Err(AnalysisError::EmptySelection { sl_min: 3, sl_max: 20 })
        );
        assert_eq!(
            pooled_distribution(&pair, Metric::Dd, 1, 20),
            Err(AnalysisError::SlTooSmall(1))
        );
    }

    #[test]
    fn conditional_omits_empty() {
        let r = vec![rec(&star_tree(5)), rec(&star_tree(5))];
        let c = conditional_distributions(&r, Metric::Hd, &[5, 10]).unwrap();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![5]);
        assert_eq!(c[&5].probability(1), 1.0);
    }

    #[test]
    fn entropy_series() {
        let pairs = vec![rec(&chain_tree(2)); 3];
        let (pts, _) = entropy_by_sl(&pairs, Metric::Dd, EntropyBase::Two, 1);
        assert_eq!(pts, vec![SeriesPoint { sl: 2, value: 0.0, n: 3 }]);

        let chains = vec![rec(&chain_tree(5)); 4];
        let (dd, _) = entropy_by_sl(&chains, Metric::Dd, EntropyBase::Two, 1);
        let (hd, _) = entropy_by_sl(&chains, Metric::Hd, EntropyBase::Two, 1);
        assert_eq!(dd[0].value, 0.0);
        assert!((hd[0].value - 2.0).abs() < 1e-15);

        let (none, gated) = entropy_by_sl(&chains, Metric::Dd, EntropyBase::Two, 10);
        assert!(none.is_empty());
        assert_eq!(gated[0].n, 4);
        assert!(entropy_by_sl(&[], Metric::Dd, EntropyBase::Two, 1).0.is_empty());
    }

    #[test]
    fn means_by_sl() {
        let r = vec![rec(&chain_tree(2)), rec(&chain_tree(2))];
        let (mdd, mhd) = mean_metric_by_sl(&r);
        assert_eq!(mdd, vec![SeriesPoint { sl: 2, value: 1.0, n: 2 }]);
        assert_eq!(mhd, vec![SeriesPoint { sl: 2, value: 1.0, n: 2 }]);

        let r = vec![rec(&chain_tree(5)), rec(&star_tree(5))];
        let (mdd, mhd) = mean_metric_by_sl(&r);
        assert_eq!(mdd[0].value, 1.75);
        assert_eq!(mhd[0].value, 1.75);
    }

    #[test]
    fn intersections() {
        let mdd = [point(4, 1.9), point(5, 2.1), point(6, 2.3)];
        let mhd = [point(4, 1.7), point(5, 2.0), point(6, 2.5)];
        assert_eq!(find_intersection(&mdd, &mhd), vec![Crossing { lower: 5, upper: 6 }]);
        let above = [point(4, 3.0), point(5, 3.0)];
        let below = [point(4, 1.0), point(5, 1.0)];
        assert!(find_intersection(&above, &below).is_empty());
        let a = [point(3, 2.0), point(4, 1.5), point(5, 1.0)];
        let b = [point(3, 1.0), point(4, 1.5), point(5, 2.0)];
        let c = find_intersection(&a, &b);
        assert_eq!(c, vec![Crossing { lower: 4, upper: 4 }]);
        assert_eq!(c[0].to_string(), "[4, 4]");
        let with_sl2 = [point(2, 1.0), point(3, 1.2)];
        let other = [point(2, 1.0), point(3, 1.4)];
        assert!(find_intersection(&with_sl2, &other).is_empty());
    }

    #[test]
    fn correlation_gates() {
        // hand-made bucket: three SL-6 trees with MDD rising while MHD falls
        let t1 = Sentence::from_heads("a", &[2, 3, 4, 5, 6, 0]).unwrap(); // chain: 1.0 / 3.0
        let t2 = Sentence::from_heads("b", &[2, 6, 4, 6, 6, 0]).unwrap();
        let t3 = Sentence::from_heads("c", &[6, 6, 6, 6, 6, 0]).unwrap(); // star: 3.0 / 1.0
        let recs: Vec<_> = [&t1, &t2, &t3].iter().map(|s| rec(s)).collect();
        assert!(recs[0].mdd() < recs[1].mdd() && recs[1].mdd() < recs[2].mdd());
        assert!(recs[0].mhd() > recs[1].mhd() && recs[1].mhd() > recs[2].mhd());
        let (pts, _) = spearman_by_sl(&recs, 3);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].rho, -1.0);

        let pairs = vec![rec(&chain_tree(2)); 20];
        let (pts, skipped) = spearman_by_sl(&pairs, 3);
        assert!(pts.is_empty());
        assert_eq!(skipped[0].sl, 2);

        let (pts, skipped) = spearman_by_sl(&recs[..2], 1);
        assert!(pts.is_empty());
        assert_eq!(skipped[0].n, 2);
    }

    #[test]
    fn valency_cells() {
        let s = vec![star_tree(5), chain_tree(5)];
        let r: Vec<_> = s.iter().map(rec).collect();
        let v = valency_conditioned_counts(&r, &s, None, ValencyMode::RootOutDegree).unwrap();
        assert_eq!(
            v.cells,
            vec![
                ValencyCell { valency: 1, sl: 5, avg_dd1: 4.0, avg_hd1: 1.0, n: 1 },
                ValencyCell { valency: 4, sl: 5, avg_dd1: 1.0, avg_hd1: 4.0, n: 1 },
            ]
        );
        let empty = ValencyLexicon::new();
        assert_eq!(
            valency_conditioned_counts(&r, &s, Some(&empty), ValencyMode::Lexicon),
            Err(AnalysisError::EmptyLexicon)
        );
        assert_eq!(
            valency_conditioned_counts(&r, &s, None, ValencyMode::Lexicon),
            Err(AnalysisError::EmptyLexicon)
        );
    }

    #[test]
    fn valency_lexicon_mode() {
        let lex = ValencyLexicon::parse_str("走る\t2\n").unwrap();
        let text = "* 0 1D\na\n* 1 -1D 0/0\n走る\t動詞,自立,*,*,*,*,走る\nEOS\n\
                    * 0 1D\nb\n* 1 -1D\n見る\nEOS\n";
        let s = crate::treebank::cabocha::parse_str(text).unwrap().strict().unwrap();
        let r: Vec<_> = s.iter().map(rec).collect();
        let v = valency_conditioned_counts(&r, &s, Some(&lex), ValencyMode::Lexicon).unwrap();
        assert_eq!(v.lexicon_misses, 1);
        assert_eq!(v.cells.len(), 1);
        assert_eq!(v.cells[0].valency, 2);
    }

    fn planted(valency: u8, f: impl Fn(f64) -> (f64, f64)) -> Vec<ValencyCell> {
        (2..=20)
            .map(|sl| {
                let (dd1, hd1) = f(sl as f64);
                ValencyCell { valency, sl, avg_dd1: dd1, avg_hd1: hd1, n: 50 }
            })
            .collect()
    }

    #[test]
    fn valency_fits_recover_planted_rows() {
        let mut cells = planted(1, |x| (0.6479 * x - 0.8269, 1.0753 * x.ln() + 0.5643));
        cells.extend(planted(2, |x| (0.6267 * x - 0.4861, 0.9714 * x.ln() + 0.5578)));
        cells.push(ValencyCell { valency: 3, sl: 4, avg_dd1: 1.0, avg_hd1: 1.0, n: 1 });
        let (rows, omitted) = fit_valency_models(&cells, LogBase::E);
        assert_eq!(rows.len(), 4);
        assert_eq!(omitted.len(), 1);
        assert_eq!(omitted[0].0, 3);
        let dd1 = &rows[0];
        assert_eq!((dd1.target, dd1.valency), (FitTarget::Dd1, 1));
        assert!((dd1.fit.slope - 0.6479).abs() < 1e-9);
        assert!((dd1.fit.intercept + 0.8269).abs() < 1e-9);
        assert!((dd1.fit.adj_r2 - 1.0).abs() < 1e-9);
        let hd2 = &rows[3];
        assert_eq!((hd2.target, hd2.valency), (FitTarget::Hd1, 2));
        assert!((hd2.fit.slope - 0.9714).abs() < 1e-9);
        assert!((hd2.fit.intercept - 0.5578).abs() < 1e-9);
        assert_eq!(hd2.fit.n, 19);
    }
}
