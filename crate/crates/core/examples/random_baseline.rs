// Uniform random rooted trees as a baseline: mean MDD and MHD at n = 10
// against the chain and star extremes, and an out-degree-capped sample.

use std::error::Error;

use depmetrics::metrics::{metric_record, records};
use depmetrics::randtree::{chain_tree, generate, star_tree, Constraint, GeneratorConfig};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let n = 10;
    let mut out = String::new();
    for (name, tree) in [("chain", chain_tree(n)), ("star", star_tree(n))] {
        let r = metric_record(&tree)?;
        out.push_str(&format!("{:<6} MDD {} MHD {}\n", name, r.mdd(), r.mhd()));
    }
    for seed in 1..=3 {
        let trees = generate(&GeneratorConfig::new(n, seed, 2000))?;
        let (recs, _) = records(&trees);
        let mean = |f: fn(&depmetrics::metrics::MetricRecord) -> f64| {
            recs.iter().map(f).sum::<f64>() / recs.len() as f64
        };
        out.push_str(&format!(
            "seed {} mean MDD {:.4} MHD {:.4}\n",
            seed,
            mean(|r| r.mdd().value()),
            mean(|r| r.mhd().value())
        ));
    }
    let capped = GeneratorConfig::new(n, 9, 500).with_constraint(Constraint::MaxRootOutDegree(2));
    let (recs, _) = records(&generate(&capped)?);
    let max = recs.iter().map(|r| r.root_out_degree).max().unwrap_or(0);
    out.push_str(&format!("{}: max root out-degree {}\n", capped.constraint, max));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
