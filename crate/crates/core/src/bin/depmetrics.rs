use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use depmetrics::analysis::{LogBase, ValencyMode};
use depmetrics::randtree::{Constraint, GeneratorConfig};
use depmetrics::report::{self, InputSpec, RunConfig, RunError};
use depmetrics::stats::EntropyBase;
use depmetrics::treebank::Format;

#[derive(Parser)]
#[command(name = "depmetrics", version, about = "Dependency distance and hierarchical distance metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count accepted and rejected sentences per input
    Validate(RunArgs),
    /// Dump per-sentence metric records as JSONL
    Metrics(OutArgs),
    /// Pooled and SL-conditioned DD/HD distributions (dist.csv)
    Dist(OutArgs),
    /// Entropy of the SL-conditioned distributions (entropy.csv)
    Entropy(OutArgs),
    /// Mean MDD and MHD by SL (trend.csv)
    Trend(OutArgs),
    /// Spearman correlation of MDD and MHD by SL (corr.csv)
    Corr(OutArgs),
    /// Valency-conditioned counts (valency.csv), or their fits with --fits
    Valency {
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        fits: bool,
    },
    /// Write every table plus report.json into the output directory
    Report(RunArgs),
    /// Generate random rooted trees as canonical JSONL
    Generate(GenerateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input corpus (repeatable); format inferred from the extension
    #[arg(short, long = "input")]
    inputs: Vec<PathBuf>,
    /// Format for every --input (conllu, cabocha, canonical)
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    sl_min: Option<usize>,
    #[arg(long)]
    sl_max: Option<usize>,
    /// Comma-separated SLs for conditional distributions
    #[arg(long, value_delimiter = ',')]
    dist_sls: Option<Vec<usize>>,
    #[arg(long)]
    min_bucket: Option<usize>,
    /// lexicon or root-out-degree
    #[arg(long)]
    valency_mode: Option<ValencyMode>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// 2, e or 10
    #[arg(long)]
    entropy_base: Option<EntropyBase>,
    /// e or 10
    #[arg(long)]
    log_base: Option<LogBase>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output_dir: Option<PathBuf>,
    /// Remove CoNLL-U tokens tagged UPOS=PUNCT
    #[arg(long)]
    drop_punct: bool,
}

#[derive(Args)]
struct OutArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    seed: u64,
    /// none, chain, star or max-root-out-degree=V
    #[arg(long, default_value = "none")]
    constraint: Constraint,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, RunError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if !self.inputs.is_empty() {
            c.inputs = self
                .inputs
                .into_iter()
                .map(|p| InputSpec::new(p, self.format))
                .collect::<Result<_, _>>()?;
        } else if let Some(f) = self.format {
            for i in &mut c.inputs {
                i.format = f;
            }
        }
        macro_rules! set {
            ($($field:ident <- $value:expr),* $(,)?) => {
                $(if let Some(v) = $value { c.$field = v; })*
            };
        }
        set!(
            sl_min <- self.sl_min,
            sl_max <- self.sl_max,
            dist_sls <- self.dist_sls,
            min_bucket <- self.min_bucket,
            valency_mode <- self.valency_mode,
            entropy_base <- self.entropy_base,
            log_base <- self.log_base,
            output_dir <- self.output_dir,
        );
        if self.lexicon.is_some() {
            c.lexicon_path = self.lexicon;
        }
        if self.seed.is_some() {
            c.seed = self.seed;
        }
        c.drop_punct |= self.drop_punct;
        c.validate()?;
        Ok(c)
    }
}

fn emit(out: Option<PathBuf>, body: &str) -> Result<(), RunError> {
    match out {
        Some(p) => fs::write(&p, body).map_err(|e| RunError::Input(format!("{}: {}", p.display(), e))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| RunError::Internal(e.to_string())),
    }
}

fn table(args: OutArgs, render: impl Fn(&report::Analysis) -> String) -> Result<i32, RunError> {
    let config = args.run.into_config()?;
    let corpus = report::load_corpus(&config)?;
    let analysis = report::analyze(&corpus.sentences, &config)?;
    emit(args.out, &render(&analysis))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Validate(args) => {
            let summary = report::cmd_validate(&args.into_config()?)?;
            print!("{}", summary.render());
            Ok(summary.exit_code())
        }
        Command::Metrics(args) => {
            let body = report::cmd_metrics(&args.run.into_config()?)?;
            emit(args.out, &body)?;
            Ok(0)
        }
        Command::Dist(args) => table(args, |a| a.dist_csv()),
        Command::Entropy(args) => table(args, |a| a.entropy_csv()),
        Command::Trend(args) => table(args, |a| a.trend_csv()),
        Command::Corr(args) => table(args, |a| a.corr_csv()),
        Command::Valency { out, fits } => table(out, move |a| {
            if fits {
                a.valency_fit_csv()
            } else {
                a.valency_csv()
            }
        }),
        Command::Report(args) => {
            let bundle = report::cmd_report(&args.into_config()?)?;
            for f in &bundle.files {
                println!("wrote {}", f.display());
            }
            Ok(0)
        }
        Command::Generate(args) => {
            let config = GeneratorConfig::new(args.n, args.seed, args.count)
                .with_constraint(args.constraint);
            emit(args.out, &report::cmd_generate(&config)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("depmetrics: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
