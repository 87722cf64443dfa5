// A complete report run from a TOML configuration: every CSV table plus
// report.json, written into a scratch directory.

use std::error::Error;

use depmetrics::report::{cmd_report, RunConfig};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let toml = format!(
        r#"
sl_min = 2
sl_max = 30
dist_sls = [5, 10, 15]
min_bucket = 5
valency_mode = "lexicon"
lexicon_path = "{data}/sample_lexicon.tsv"
output_dir = "{out}"

[[inputs]]
path = "{data}/sample.conllu"
format = "conllu"

[[inputs]]
path = "{data}/worked_example.cabocha"
format = "cabocha"
"#,
        data = data,
        out = dir.path().display()
    );
    let config = RunConfig::from_toml(&toml)?;
    let bundle = cmd_report(&config)?;
    let mut out = format!(
        "{} sentences, {} in window\n",
        bundle.analysis.counts.sentences, bundle.analysis.counts.in_window
    );
    for f in &bundle.files {
        let bytes = std::fs::metadata(f)?.len();
        out.push_str(&format!("{:<16} {:>7} bytes\n", f.file_name().unwrap().to_string_lossy(), bytes));
    }
    let trend = std::fs::read_to_string(dir.path().join("trend.csv"))?;
    out.push_str("trend.csv head:\n");
    for line in trend.lines().take(4) {
        out.push_str(&format!("  {}\n", line));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
