use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::RunError;
use crate::analysis::{LogBase, ValencyMode};
use crate::stats::EntropyBase;
use crate::treebank::Format;

/// One corpus file and its format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSpec {
    pub path: PathBuf,
    pub format: Format,
}

impl InputSpec {
    /// Infers the format from the extension unless `format` is given.
    pub fn new(path: impl Into<PathBuf>, format: Option<Format>) -> Result<Self, RunError> {
        let path = path.into();
        let format = match format {
            Some(f) => f,
            None => Format::from_extension(&path.to_string_lossy()).ok_or_else(|| {
                RunError::Config(format!(
                    "cannot infer format of {}; pass --format",
                    path.display()
                ))
            })?,
        };
        Ok(InputSpec { path, format })
    }
}

/// Everything that determines a run. Loadable from TOML; every field has a
/// default except `inputs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub inputs: Vec<InputSpec>,
    pub sl_min: usize,
    pub sl_max: usize,
    pub dist_sls: Vec<usize>,
    pub min_bucket: usize,
    pub valency_mode: ValencyMode,
    pub lexicon_path: Option<PathBuf>,
    pub entropy_base: EntropyBase,
    pub log_base: LogBase,
    pub seed: Option<u64>,
    pub output_dir: PathBuf,
    pub drop_punct: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            sl_min: 2,
            sl_max: 20,
            dist_sls: vec![5, 10, 15, 20, 25, 30],
            min_bucket: 10,
            valency_mode: ValencyMode::RootOutDegree,
            lexicon_path: None,
            entropy_base: EntropyBase::Two,
            log_base: LogBase::E,
            seed: None,
            output_dir: PathBuf::from("out"),
            drop_punct: false,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("{}: {}", path.display(), e)))?;
        Self::from_toml(&text)
    }

    pub fn with_input(mut self, path: impl Into<PathBuf>, format: Format) -> Self {
        self.inputs.push(InputSpec {
            path: path.into(),
            format,
        });
        self
    }

    pub fn validate(&self) -> Result<(), RunError> {
        if self.sl_min < 2 {
            return Err(RunError::Config(format!("sl_min must be >= 2, got {}", self.sl_min)));
        }
        if self.sl_min > self.sl_max {
            return Err(RunError::Config(format!(
                "sl_min {} exceeds sl_max {}",
                self.sl_min, self.sl_max
            )));
        }
        if self.min_bucket < 3 {
            return Err(RunError::Config(format!(
                "min_bucket must be >= 3, got {}",
                self.min_bucket
            )));
        }
        if let Some(&bad) = self.dist_sls.iter().find(|&&sl| sl < 2) {
            return Err(RunError::Config(format!("dist SL {} is below 2", bad)));
        }
        if self.valency_mode == ValencyMode::Lexicon && self.lexicon_path.is_none() {
            return Err(RunError::Config("lexicon valency mode needs lexicon_path".into()));
        }
        if self.inputs.is_empty() {
            return Err(RunError::Config("no inputs given".into()));
        }
        Ok(())
    }
}
