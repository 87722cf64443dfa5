// Pooled and SL-conditioned DD/HD distributions of the sample corpus, and
// the entropy of each conditional distribution.

use std::error::Error;

use depmetrics::analysis::{conditional_distributions, entropy_by_sl, pooled_distribution, Metric};
use depmetrics::metrics::records;
use depmetrics::stats::EntropyBase;
use depmetrics::treebank::conllu;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample.conllu"))?;
    let sentences = conllu::parse_str(&text)?.strict()?;
    let (recs, single) = records(&sentences);
    let mut out = format!("{} sentences, {} single-node sentences skipped\n", sentences.len(), single);

    for metric in Metric::ALL {
        let pooled = pooled_distribution(&recs, metric, 2, 20)?;
        out.push_str(&format!("{} pooled over SL 2-20 ({} links):", metric, pooled.total()));
        for (v, _) in pooled.counts().take(5) {
            out.push_str(&format!(" P({}={})={:.3}", metric, v, pooled.probability(v)));
        }
        out.push('\n');
        for (sl, d) in conditional_distributions(&recs, metric, &[5, 10, 15, 20])? {
            out.push_str(&format!("  SL {:>2}: P({}=1)={:.3}\n", sl, metric, d.probability(1)));
        }
        let (points, skipped) = entropy_by_sl(&recs, metric, EntropyBase::Two, 5);
        let listed: Vec<String> = points.iter().map(|p| format!("{}:{:.2}", p.sl, p.value)).collect();
        out.push_str(&format!("  entropy (bits) {}\n", listed.join(" ")));
        out.push_str(&format!("  {} SL bucket(s) below 5 sentences\n", skipped.len()));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
