//! Run orchestration: corpus loading, the full analysis bundle, CSV and JSON
//! rendering, and the `validate` / `report` / `generate` commands.
//!
//! All output is rendered to memory first and ordered by SL, metric name and
//! valency, so identical inputs and configuration give byte-identical files.

mod config;

pub use config::{InputSpec, RunConfig};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{
    self, CorrelationPoint, Crossing, Metric, SeriesPoint, Skipped, ValencyCell, ValencyFit,
};
use crate::metrics::{self, MetricRecord};
use crate::randtree::{self, GeneratorConfig, GENERATOR_NAME};
use crate::stats::significance_stars;
use crate::treebank::{self, canonical, ReadOptions, Sentence, ValencyLexicon};

pub const TOOL_NAME: &str = "depmetrics";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors surfaced to the command line, one per exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("input error: {0}")]
    Input(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 1,
            RunError::Config(_) => 2,
            RunError::Internal(_) => 3,
        }
    }
}

/// Per-file ingestion outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileSummary {
    pub path: String,
    pub format: String,
    pub sha256: String,
    pub accepted: usize,
    pub rejected: usize,
    pub rejections: Vec<String>,
}

/// Validated sentences of every input, in input order.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    pub files: Vec<FileSummary>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads and validates every input of `config`.
pub fn load_corpus(config: &RunConfig) -> Result<Corpus, RunError> {
    let mut sentences = Vec::new();
    let mut files = Vec::new();
    for input in &config.inputs {
        let path = input.path.display().to_string();
        let bytes =
            fs::read(&input.path).map_err(|e| RunError::Input(format!("{}: {}", path, e)))?;
        let opts = ReadOptions {
            file: Some(path.clone()),
            drop_punct: config.drop_punct,
        };
        let parsed = treebank::read(&bytes[..], input.format, &opts)
            .map_err(|e| RunError::Input(format!("{}: {}", path, e)))?;
        files.push(FileSummary {
            path,
            format: input.format.to_string(),
            sha256: sha256_hex(&bytes),
            accepted: parsed.sentences.len(),
            rejected: parsed.rejected.len(),
            rejections: parsed.rejected.iter().map(|r| r.to_string()).collect(),
        });
        sentences.extend(parsed.sentences);
    }
    Ok(Corpus { sentences, files })
}

/// Accepted and rejected counts per file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub files: Vec<FileSummary>,
}

impl ValidationSummary {
    pub fn accepted(&self) -> usize {
        self.files.iter().map(|f| f.accepted).sum()
    }

    pub fn rejected(&self) -> usize {
        self.files.iter().map(|f| f.rejected).sum()
    }

    /// Zero when at least one sentence was accepted.
    pub fn exit_code(&self) -> i32 {
        if self.accepted() > 0 {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for f in &self.files {
            let _ = writeln!(
                out,
                "{} [{}]: {} accepted, {} rejected",
                f.path, f.format, f.accepted, f.rejected
            );
            for r in &f.rejections {
                let _ = writeln!(out, "  rejected: {}", r);
            }
        }
        let _ = writeln!(out, "{} accepted, {} rejected", self.accepted(), self.rejected());
        out
    }
}

pub fn cmd_validate(config: &RunConfig) -> Result<ValidationSummary, RunError> {
    if config.inputs.is_empty() {
        return Err(RunError::Config("no inputs given".into()));
    }
    Ok(ValidationSummary {
        files: load_corpus(config)?.files,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistRow {
    pub metric: Metric,
    pub sl_bucket: String,
    pub value: usize,
    pub count: u64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyRow {
    pub metric: Metric,
    pub sl: usize,
    pub entropy: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub sl: usize,
    pub mean_mdd: f64,
    pub mean_mhd: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GatedRow {
    pub analysis: &'static str,
    pub metric: Option<Metric>,
    pub sl: usize,
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub metric: &'static str,
    pub valency: u8,
    pub n: usize,
    pub slope: f64,
    pub se_slope: f64,
    pub p_slope: f64,
    pub stars_slope: &'static str,
    pub intercept: f64,
    pub se_intercept: f64,
    pub p_intercept: f64,
    pub stars_intercept: &'static str,
    pub model: String,
    pub model_form: &'static str,
    pub r2: f64,
    pub adj_r2: f64,
}

impl From<&ValencyFit> for FitRow {
    fn from(v: &ValencyFit) -> Self {
        let f = &v.fit;
        FitRow {
            metric: v.target.name(),
            valency: v.valency,
            n: f.n,
            slope: f.slope,
            se_slope: f.se_slope,
            p_slope: f.p_slope,
            stars_slope: significance_stars(f.p_slope),
            intercept: f.intercept,
            se_intercept: f.se_intercept,
            p_intercept: f.p_intercept,
            stars_intercept: significance_stars(f.p_intercept),
            model: f.model_string(),
            model_form: f.model_form.name(),
            r2: f.r2,
            adj_r2: f.adj_r2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counts {
    pub sentences: usize,
    pub single_node: usize,
    pub in_window: usize,
}

/// Every table of a report run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub counts: Counts,
    pub entropy_unit: &'static str,
    /// Unfiltered: includes SLs outside the window and single-node sentences.
    pub length_histogram: BTreeMap<usize, usize>,
    pub distributions: Vec<DistRow>,
    pub entropy: Vec<EntropyRow>,
    pub trend: Vec<TrendRow>,
    pub crossings: Vec<Crossing>,
    pub correlation: Vec<CorrelationPoint>,
    pub valency: Vec<ValencyCell>,
    pub lexicon_misses: usize,
    pub valency_fit: Vec<FitRow>,
    pub omitted_fits: Vec<(u8, String)>,
    pub gated: Vec<GatedRow>,
}

fn dist_rows(metric: Metric, bucket: String, d: &crate::stats::Distribution) -> Vec<DistRow> {
    d.counts()
        .map(|(value, count)| DistRow {
            metric,
            sl_bucket: bucket.clone(),
            value,
            count,
            probability: d.probability(value),
        })
        .collect()
}

fn gated(analysis: &'static str, metric: Option<Metric>, skipped: Vec<Skipped>) -> Vec<GatedRow> {
    skipped
        .into_iter()
        .map(|s| GatedRow {
            analysis,
            metric,
            sl: s.sl,
            n: s.n,
            reason: s.reason,
        })
        .collect()
}

/// Windowed metric records paired with their sentences.
fn windowed(sentences: &[Sentence], config: &RunConfig) -> (Vec<MetricRecord>, Vec<Sentence>, usize) {
    let mut records = Vec::new();
    let mut kept = Vec::new();
    let mut single = 0;
    for s in sentences {
        match metrics::metric_record(s) {
            Ok(r) if (config.sl_min..=config.sl_max).contains(&r.sl) => {
                records.push(r);
                kept.push(s.clone());
            }
            Ok(_) => {}
            Err(_) => single += 1,
        }
    }
    (records, kept, single)
}

/// Computes every analysis table over `sentences`.
pub fn analyze(sentences: &[Sentence], config: &RunConfig) -> Result<Analysis, RunError> {
    config.validate()?;
    let (records, kept, single_node) = windowed(sentences, config);
    if single_node > 0 {
        log::info!("{} single-node sentence(s) have no metrics", single_node);
    }

    let length_histogram = analysis::length_histogram(sentences.iter().map(|s| s.len()));

    let mut distributions = Vec::new();
    let mut entropy = Vec::new();
    let mut gated_rows = Vec::new();
    let dist_sls: Vec<usize> = config
        .dist_sls
        .iter()
        .copied()
        .filter(|sl| {
            let inside = (config.sl_min..=config.sl_max).contains(sl);
            if !inside {
                log::warn!(
                    "dist SL {} lies outside the window [{}, {}]; omitted",
                    sl,
                    config.sl_min,
                    config.sl_max
                );
            }
            inside
        })
        .collect();
    for metric in Metric::ALL {
        let pooled = analysis::pooled_distribution(&records, metric, config.sl_min, config.sl_max)
            .map_err(|e| RunError::Input(e.to_string()))?;
        distributions.extend(dist_rows(
            metric,
            format!("{}-{}", config.sl_min, config.sl_max),
            &pooled,
        ));
        let conditional = analysis::conditional_distributions(&records, metric, &dist_sls)
            .map_err(|e| RunError::Config(e.to_string()))?;
        for (sl, d) in &conditional {
            distributions.extend(dist_rows(metric, sl.to_string(), d));
        }

        let (points, skipped) =
            analysis::entropy_by_sl(&records, metric, config.entropy_base, config.min_bucket);
        entropy.extend(points.into_iter().map(|p| EntropyRow {
            metric,
            sl: p.sl,
            entropy: p.value,
            n: p.n,
        }));
        gated_rows.extend(gated("entropy", Some(metric), skipped));
    }

    let (mdd, mhd) = analysis::mean_metric_by_sl(&records);
    let crossings = analysis::find_intersection(&mdd, &mhd);
    let trend = mdd
        .iter()
        .zip(&mhd)
        .map(|(a, b): (&SeriesPoint, &SeriesPoint)| TrendRow {
            sl: a.sl,
            mean_mdd: a.value,
            mean_mhd: b.value,
            n: a.n,
        })
        .collect();

    let (correlation, skipped) = analysis::spearman_by_sl(&records, config.min_bucket);
    gated_rows.extend(gated("corr", None, skipped));
    if !gated_rows.is_empty() {
        log::warn!("{} entropy/corr point(s) gated out; see gated.csv", gated_rows.len());
    }

    let lexicon = match &config.lexicon_path {
        Some(p) if config.valency_mode == analysis::ValencyMode::Lexicon => {
            let bytes = fs::read(p).map_err(|e| RunError::Input(format!("{}: {}", p.display(), e)))?;
            Some(
                ValencyLexicon::read(&bytes[..])
                    .map_err(|e| RunError::Input(format!("{}: {}", p.display(), e)))?,
            )
        }
        _ => None,
    };
    let counts = analysis::valency_conditioned_counts(
        &records,
        &kept,
        lexicon.as_ref(),
        config.valency_mode,
    )
    .map_err(|e| match e {
        analysis::AnalysisError::EmptyLexicon => RunError::Input(e.to_string()),
        other => RunError::Internal(other.to_string()),
    })?;
    let (fits, omitted_fits) = analysis::fit_valency_models(&counts.cells, config.log_base);

    Ok(Analysis {
        counts: Counts {
            sentences: sentences.len(),
            single_node,
            in_window: records.len(),
        },
        entropy_unit: config.entropy_base.unit(),
        length_histogram,
        distributions,
        entropy,
        trend,
        crossings,
        correlation,
        valency: counts.cells,
        lexicon_misses: counts.lexicon_misses,
        valency_fit: fits.iter().map(FitRow::from).collect(),
        omitted_fits,
        gated: gated_rows,
    })
}

impl Analysis {
    pub fn dist_csv(&self) -> String {
        let mut out = String::from("metric,sl_bucket,value,count,probability\n");
        for r in &self.distributions {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.6}",
                r.metric, r.sl_bucket, r.value, r.count, r.probability
            );
        }
        out
    }

    pub fn entropy_csv(&self) -> String {
        let mut out = format!("metric,sl,entropy_{},n\n", self.entropy_unit);
        for r in &self.entropy {
            let _ = writeln!(out, "{},{},{:.6},{}", r.metric, r.sl, r.entropy, r.n);
        }
        out
    }

    pub fn trend_csv(&self) -> String {
        let mut out = String::from("sl,mean_mdd,mean_mhd,n\n");
        for r in &self.trend {
            let _ = writeln!(out, "{},{:.4},{:.4},{}", r.sl, r.mean_mdd, r.mean_mhd, r.n);
        }
        out
    }

    pub fn corr_csv(&self) -> String {
        let mut out = String::from("sl,rho,p_value,n\n");
        for r in &self.correlation {
            let _ = writeln!(out, "{},{:.6},{:.6e},{}", r.sl, r.rho, r.p_value, r.n);
        }
        out
    }

    pub fn valency_csv(&self) -> String {
        let mut out = String::from("valency,sl,avg_dd1,avg_hd1,n\n");
        for c in &self.valency {
            let _ = writeln!(
                out,
                "{},{},{:.4},{:.4},{}",
                c.valency, c.sl, c.avg_dd1, c.avg_hd1, c.n
            );
        }
        out
    }

    pub fn valency_fit_csv(&self) -> String {
        let mut out = String::from(
            "metric,valency,n,slope,se_slope,stars_slope,intercept,se_intercept,stars_intercept,model,adj_r2\n",
        );
        for r in &self.valency_fit {
            let _ = writeln!(
                out,
                "{},{},{},{:.4},{:.3},{},{:.4},{:.3},{},{},{:.3}",
                r.metric,
                r.valency,
                r.n,
                r.slope,
                r.se_slope,
                r.stars_slope,
                r.intercept,
                r.se_intercept,
                r.stars_intercept,
                r.model,
                r.adj_r2
            );
        }
        out
    }

    pub fn length_csv(&self) -> String {
        let mut out = String::from("sl,count\n");
        for (sl, n) in &self.length_histogram {
            let _ = writeln!(out, "{},{}", sl, n);
        }
        out
    }

    pub fn gated_csv(&self) -> String {
        let mut out = String::from("analysis,metric,sl,n,reason\n");
        for g in &self.gated {
            let metric = g.metric.map(|m| m.name()).unwrap_or("");
            let _ = writeln!(out, "{},{},{},{},{}", g.analysis, metric, g.sl, g.n, g.reason);
        }
        out
    }
}

#[derive(Serialize)]
struct ToolInfo {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    tool: ToolInfo,
    config: &'a RunConfig,
    inputs: &'a [FileSummary],
    #[serde(flatten)]
    analysis: &'a Analysis,
}

/// The consolidated JSON document: run metadata plus every table.
pub fn report_json(config: &RunConfig, corpus: &Corpus, analysis: &Analysis) -> String {
    let doc = ReportJson {
        tool: ToolInfo {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        },
        config,
        inputs: &corpus.files,
        analysis,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Names of the files `cmd_report` writes, in write order.
pub const REPORT_FILES: [&str; 9] = [
    "dist.csv",
    "entropy.csv",
    "trend.csv",
    "corr.csv",
    "valency.csv",
    "valency_fit.csv",
    "length.csv",
    "gated.csv",
    "report.json",
];

/// Outcome of a report run.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub output_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub analysis: Analysis,
}

/// Renders every report file in memory.
pub fn render_report(config: &RunConfig) -> Result<(Vec<(&'static str, String)>, Analysis), RunError> {
    config.validate()?;
    let corpus = load_corpus(config)?;
    let analysis = analyze(&corpus.sentences, config)?;
    let contents = vec![
        analysis.dist_csv(),
        analysis.entropy_csv(),
        analysis.trend_csv(),
        analysis.corr_csv(),
        analysis.valency_csv(),
        analysis.valency_fit_csv(),
        analysis.length_csv(),
        analysis.gated_csv(),
        report_json(config, &corpus, &analysis),
    ];
    Ok((REPORT_FILES.into_iter().zip(contents).collect(), analysis))
}

fn write_all(dir: &Path, files: &[(&'static str, String)]) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(dir).map_err(|e| RunError::Input(format!("{}: {}", dir.display(), e)))?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        if let Err(e) = fs::write(&path, body) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(RunError::Input(format!("{}: {}", path.display(), e)));
        }
        written.push(path);
    }
    Ok(written)
}

/// Runs the full analysis and writes every CSV plus `report.json` into
/// `config.output_dir`. Nothing is left behind on failure.
pub fn cmd_report(config: &RunConfig) -> Result<ReportBundle, RunError> {
    let (files, analysis) = render_report(config)?;
    let written = write_all(&config.output_dir, &files)?;
    Ok(ReportBundle {
        output_dir: config.output_dir.clone(),
        files: written,
        analysis,
    })
}

/// Per-sentence [`MetricRecord`]s of the windowed corpus as JSONL.
pub fn cmd_metrics(config: &RunConfig) -> Result<String, RunError> {
    config.validate()?;
    let corpus = load_corpus(config)?;
    let (records, _, _) = windowed(&corpus.sentences, config);
    let mut out = String::new();
    for r in &records {
        out.push_str(&serde_json::to_string(r).map_err(|e| RunError::Internal(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct GenerateMeta<'a> {
    generator: &'static str,
    tool_version: &'static str,
    #[serde(flatten)]
    config: &'a GeneratorConfig,
}

/// A generated corpus as canonical JSONL, led by a metadata line.
pub fn cmd_generate(config: &GeneratorConfig) -> Result<String, RunError> {
    let trees = randtree::generate(config).map_err(|e| match e {
        randtree::GenerateError::NTooLarge(_) => RunError::Internal(e.to_string()),
        other => RunError::Config(other.to_string()),
    })?;
    let meta = serde_json::json!({
        "meta": GenerateMeta {
            generator: GENERATOR_NAME,
            tool_version: TOOL_VERSION,
            config,
        }
    });
    let mut out = meta.to_string();
    out.push('\n');
    out.push_str(&canonical::write(&trees));
    Ok(out)
}
