// Reads the same tree from CoNLL-U, CaboCha and canonical JSONL, and shows
// how malformed sentences are reported instead of aborting the read.

use std::error::Error;

use depmetrics::treebank::{self, canonical, Format, ReadOptions};

const BROKEN: &str = "\
# sent_id = ok
1\tkare\t_\tPRON\t_\t_\t2\tnsubj\t_\t_
2\tiku\t_\tVERB\t_\t_\t0\troot\t_\t_

# sent_id = cycle
1\ta\t_\tNOUN\t_\t_\t2\tdep\t_\t_
2\tb\t_\tNOUN\t_\t_\t1\tdep\t_\t_

# sent_id = two-roots
1\ta\t_\tNOUN\t_\t_\t0\troot\t_\t_
2\tb\t_\tNOUN\t_\t_\t0\troot\t_\t_
";

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let mut out = String::new();
    let mut parsed = Vec::new();
    for (file, format) in [("worked_example.conllu", Format::Conllu), ("worked_example.cabocha", Format::Cabocha)] {
        let bytes = std::fs::read(format!("{}/{}", dir, file))?;
        let p = treebank::read(&bytes[..], format, &ReadOptions::default())?;
        let s = p.strict()?.remove(0);
        out.push_str(&format!("{:<9} heads {:?}\n", format.to_string(), s.heads()));
        parsed.push(s);
    }
    let line = canonical::to_line(&parsed[1]);
    let again = canonical::parse_str(&line)?.strict()?.remove(0);
    out.push_str(&format!("canonical {}\n", line.trim_end()));
    out.push_str(&format!("canonical round trip preserved: {}\n", parsed[1].same_structure(&again)));

    let p = treebank::read(BROKEN.as_bytes(), Format::Conllu, &ReadOptions::default())?;
    out.push_str(&format!("{} accepted, {} rejected\n", p.sentences.len(), p.rejected.len()));
    for r in &p.rejected {
        out.push_str(&format!("  {}\n", r));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
