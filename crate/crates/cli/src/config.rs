use std::path::{Path, PathBuf};

use partcat::Bounds;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{name} must be positive")]
    NotPositive { name: &'static str },
    #[error("work bound {work} is below the point bound {point}")]
    WorkBelowPoint { point: usize, work: usize },
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad config file {path}: {source}")]
    Toml {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
    #[error("cannot build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Settings that can come from flags or from a config file. Unset fields fall through.
#[derive(Debug, Clone, Default, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Largest number of points of a stored partition.
    #[arg(long, global = true)]
    pub point_bound: Option<usize>,
    /// Largest number of points of an operand during closure.
    #[arg(long, global = true)]
    pub work_bound: Option<usize>,
    /// Largest word length in subgroup computations.
    #[arg(long, global = true)]
    pub length_bound: Option<usize>,
    /// Number of letters a1..aN (or x1..xN) used by subgroup computations.
    #[arg(long, global = true)]
    pub alphabet: Option<u32>,
    /// Largest number of stored classes or words before a closure gives up.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Number of worker threads. Reports do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Settings {
    /// Fields set here win over fields set in `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            point_bound: self.point_bound.or(fallback.point_bound),
            work_bound: self.work_bound.or(fallback.work_bound),
            length_bound: self.length_bound.or(fallback.length_bound),
            alphabet: self.alphabet.or(fallback.alphabet),
            cap: self.cap.or(fallback.cap),
            workers: self.workers.or(fallback.workers),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
        }
    }

    pub fn from_file(path: &Path) -> Result<Settings, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Toml {
            path: path.to_path_buf(),
            source,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub bounds: Bounds,
    /// `None` leaves the choice to rayon.
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            bounds: Bounds::default(),
            workers: None,
            format: Format::Text,
            out: None,
        }
    }
}

impl RunConfig {
    /// Flags first, then the config file, then defaults.
    pub fn resolve(flags: Settings, file: Option<&Path>) -> Result<RunConfig, ConfigError> {
        let from_file = match file {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        RunConfig::from_settings(flags.or(from_file))
    }

    pub fn from_settings(s: Settings) -> Result<RunConfig, ConfigError> {
        let d = Bounds::default();
        let cfg = RunConfig {
            bounds: Bounds {
                point_bound: s.point_bound.unwrap_or(d.point_bound),
                work_bound: s.work_bound.unwrap_or(d.work_bound),
                length_bound: s.length_bound.unwrap_or(d.length_bound),
                alphabet: s.alphabet.unwrap_or(d.alphabet),
                cap: s.cap.unwrap_or(d.cap),
            },
            workers: s.workers,
            format: s.format.unwrap_or_default(),
            out: s.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let b = &self.bounds;
        for (name, v) in [
            ("point bound", b.point_bound),
            ("work bound", b.work_bound),
            ("length bound", b.length_bound),
            ("alphabet", b.alphabet as usize),
            ("cap", b.cap),
            ("workers", self.workers.unwrap_or(1)),
        ] {
            if v == 0 {
                return Err(ConfigError::NotPositive { name });
            }
        }
        if b.work_bound < b.point_bound {
            return Err(ConfigError::WorkBelowPoint {
                point: b.point_bound,
                work: b.work_bound,
            });
        }
        Ok(())
    }

    /// Runs `f` on a pool with the configured number of workers.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, ConfigError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            builder = builder.num_threads(w);
        }
        Ok(builder.build()?.install(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: Settings = toml::from_str("point_bound = 6\nwork_bound = 9\nformat = \"json\"").unwrap();
        let flags = Settings {
            work_bound: Some(12),
            ..Settings::default()
        };
        let cfg = RunConfig::from_settings(flags.or(file)).unwrap();
        assert_eq!(cfg.bounds.point_bound, 6);
        assert_eq!(cfg.bounds.work_bound, 12);
        assert_eq!(cfg.bounds.length_bound, 8);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn rejects_bad_bounds() {
        let s = |b: usize, w: usize| Settings {
            point_bound: Some(b),
            work_bound: Some(w),
            ..Settings::default()
        };
        assert!(matches!(RunConfig::from_settings(s(8, 6)), Err(ConfigError::WorkBelowPoint { .. })));
        assert!(matches!(RunConfig::from_settings(s(0, 6)), Err(ConfigError::NotPositive { .. })));
        let zero_workers = Settings {
            workers: Some(0),
            ..Settings::default()
        };
        assert!(RunConfig::from_settings(zero_workers).is_err());
        assert!(toml::from_str::<Settings>("pointbound = 3").is_err());
    }
}
