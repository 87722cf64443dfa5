// Per-node DD and HD for the seven-segment example sentence, then its
// MDD and MHD.

use std::error::Error;

use depmetrics::metrics::{dd, hd, metric_record};
use depmetrics::treebank::cabocha;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/worked_example.cabocha"))?;
    let sentence = cabocha::parse_str(&text)?.strict()?.remove(0);
    let mut out = String::from("pos\thead\tDD\tHD\tsegment\n");
    for node in sentence.nodes() {
        let d = if node.is_root() { "-".to_string() } else { dd(&sentence, node.index)?.to_string() };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            node.index,
            node.head,
            d,
            hd(&sentence, node.index)?,
            node.form.as_deref().unwrap_or("")
        ));
    }
    let r = metric_record(&sentence)?;
    out.push_str(&format!(
        "MDD = {} / {} = {}\nMHD = {} / {} = {}\nroot out-degree = {}\n",
        r.dd_sum,
        r.dependencies(),
        r.mdd(),
        r.hd_sum,
        r.dependencies(),
        r.mhd(),
        r.root_out_degree
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
