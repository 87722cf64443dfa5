// Mean MDD and MHD by sentence length, where the two series cross, and
// the per-length Spearman correlation between them.

use std::error::Error;

use depmetrics::analysis::{find_intersection, mean_metric_by_sl, spearman_by_sl, window};
use depmetrics::metrics::records;
use depmetrics::treebank::conllu;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample.conllu"))?;
    let sentences = conllu::parse_str(&text)?.strict()?;
    let (all, _) = records(&sentences);
    let recs = window(&all, 2, 20);

    let (mdd, mhd) = mean_metric_by_sl(&recs);
    let mut out = String::from("SL  meanMDD  meanMHD  n\n");
    for (a, b) in mdd.iter().zip(&mhd) {
        out.push_str(&format!("{:>2}  {:>7.4}  {:>7.4}  {}\n", a.sl, a.value, b.value, a.n));
    }
    for c in find_intersection(&mdd, &mhd) {
        out.push_str(&format!("series cross between SL {} and {}\n", c.lower, c.upper));
    }

    let (corr, skipped) = spearman_by_sl(&recs, 5);
    for c in &corr {
        out.push_str(&format!("SL {:>2}: rho {:+.3} p {:.3e} (n {})\n", c.sl, c.rho, c.p_value, c.n));
    }
    for s in &skipped {
        out.push_str(&format!("SL {:>2}: skipped, {}\n", s.sl, s.reason));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
