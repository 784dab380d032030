//! TOML configuration with `BOGOCERT_*` environment overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ENV_PREFIX: &str = "BOGOCERT_";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("bad config file {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("bad value for {key}: {value:?}")]
    BadValue { key: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub api_base_url: String,
    pub cache_dir: PathBuf,
    pub offline: bool,
    pub element_budget: usize,
    pub default_precision: u32,
    /// Bundled table when unset.
    pub regularity_table_path: Option<PathBuf>,
    /// Minimum spacing between HTTP requests.
    pub rate_limit_ms: u64,
    /// Certificate store; `<cache_dir>/certificates.jsonl` when unset.
    pub store_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            api_base_url: "https://www.lmfdb.org/api".into(),
            cache_dir: PathBuf::from(".bogocert-cache"),
            offline: false,
            element_budget: bogocert::matgroup::DEFAULT_ELEMENT_BUDGET,
            default_precision: 20,
            regularity_table_path: None,
            rate_limit_ms: 1000,
            store_path: None,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::BadValue { key: key.to_string(), value: value.to_string() })
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" | "" => Ok(false),
        _ => Err(ConfigError::BadValue { key: key.to_string(), value: value.to_string() }),
    }
}

impl Config {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse { path: path.to_path_buf(), message: e.message().to_string() })
    }

    /// Reads `path` if given (a missing explicit file is an error), then applies overrides
    /// from `env`, e.g. `BOGOCERT_OFFLINE=1`.
    pub fn load<I>(path: Option<&Path>, env: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| ConfigError::Read { path: p.to_path_buf(), source: e })?;
                Config::from_toml(&text, p)?
            }
            None => Config::default(),
        };
        for (k, v) in env {
            let Some(key) = k.strip_prefix(ENV_PREFIX) else { continue };
            match key.to_ascii_lowercase().as_str() {
                "api_base_url" => cfg.api_base_url = v,
                "cache_dir" => cfg.cache_dir = PathBuf::from(v),
                "offline" => cfg.offline = parse_bool(&k, &v)?,
                "element_budget" => cfg.element_budget = parse(&k, &v)?,
                "default_precision" => cfg.default_precision = parse(&k, &v)?,
                "regularity_table_path" => cfg.regularity_table_path = Some(PathBuf::from(v)),
                "rate_limit_ms" => cfg.rate_limit_ms = parse(&k, &v)?,
                "store_path" => cfg.store_path = Some(PathBuf::from(v)),
                // BOGOCERT_CONFIG names the file itself
                _ => {}
            }
        }
        Ok(cfg)
    }

    pub fn store_path(&self) -> PathBuf {
        self.store_path.clone().unwrap_or_else(|| self.cache_dir.join("certificates.jsonl"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_env() {
        let cfg = Config::from_toml("offline = true\ndefault_precision = 30\n", Path::new("x.toml")).unwrap();
        assert!(cfg.offline);
        assert_eq!(cfg.default_precision, 30);
        assert_eq!(cfg.rate_limit_ms, 1000);
        let env = vec![
            ("BOGOCERT_OFFLINE".to_string(), "false".to_string()),
            ("BOGOCERT_ELEMENT_BUDGET".to_string(), "1000".to_string()),
            ("PATH".to_string(), "/bin".to_string()),
        ];
        let cfg = Config::load(None, env).unwrap();
        assert!(!cfg.offline);
        assert_eq!(cfg.element_budget, 1000);
        assert!(Config::load(None, vec![("BOGOCERT_OFFLINE".into(), "maybe".into())]).is_err());
        assert!(Config::from_toml("bogus_key = 1", Path::new("x.toml")).is_err());
    }
}
