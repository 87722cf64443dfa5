// Valency-conditioned counts of DD = 1 and HD = 1, using both the valency
// lexicon and the root out-degree, then the per-class regressions.

use std::error::Error;

use depmetrics::analysis::{fit_valency_models, valency_conditioned_counts, LogBase, ValencyMode};
use depmetrics::metrics::{metric_record, MetricRecord};
use depmetrics::stats::significance_stars;
use depmetrics::treebank::{conllu, ValencyLexicon};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let text = std::fs::read_to_string(format!("{}/sample.conllu", dir))?;
    let lexicon = ValencyLexicon::parse_str(&std::fs::read_to_string(format!("{}/sample_lexicon.tsv", dir))?)?;
    let sentences: Vec<_> = conllu::parse_str(&text)?
        .strict()?
        .into_iter()
        .filter(|s| (2..=20).contains(&s.len()))
        .collect();
    let recs: Vec<MetricRecord> = sentences.iter().map(metric_record).collect::<Result<_, _>>()?;

    let mut out = String::new();
    for mode in [ValencyMode::Lexicon, ValencyMode::RootOutDegree] {
        let counts = valency_conditioned_counts(&recs, &sentences, Some(&lexicon), mode)?;
        out.push_str(&format!(
            "{} mode: {} cells, {} lexicon misses\n",
            mode,
            counts.cells.len(),
            counts.lexicon_misses
        ));
        let (fits, omitted) = fit_valency_models(&counts.cells, LogBase::E);
        for f in &fits {
            out.push_str(&format!(
                "  {} v={} {}  se {:.3}{}  adjR2 {:.3}  n {}\n",
                f.target.name(),
                f.valency,
                f.fit.model_string(),
                f.fit.se_slope,
                significance_stars(f.fit.p_slope),
                f.fit.adj_r2,
                f.fit.n
            ));
        }
        for (v, why) in &omitted {
            out.push_str(&format!("  v={} not fitted: {}\n", v, why));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
