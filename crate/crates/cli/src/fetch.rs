//! Newform ingestion from the LMFDB JSON API, with an on-disk cache and the bundled
//! fixtures as the offline fallback.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use bogocert::certifier::{ApData, NewformFile, NewformRecord, NEWFORM_SCHEMA_VERSION};
use bogocert::padic::{is_prime, IntPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::config::Config;

/// Hecke data is kept for primes below this bound.
pub const MAX_PRIME: u64 = 200;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("network error: {0}")]
    Network(String),
    #[error("unexpected API payload for {label} ({reason}); raw payload saved to {}", raw.display())]
    SchemaMismatch { label: String, reason: String, raw: PathBuf },
    #[error("no newform with label {0}")]
    NotFound(String),
    #[error("cache error: {0}")]
    Cache(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Fixture { snapshot: String },
    Cache { snapshot: String },
    Network { snapshot: String },
}

pub struct Fetcher {
    cfg: Config,
    fixtures: NewformFile,
    client: reqwest::blocking::Client,
    last_request: Cell<Option<Instant>>,
    retries: u32,
    backoff: Duration,
    snapshot: String,
}

#[derive(Deserialize)]
struct Envelope {
    data: Vec<Value>,
}

#[derive(Deserialize)]
struct NewformRow {
    label: String,
    level: u64,
    weight: u32,
    char_order: u32,
    is_cm: bool,
    dim: usize,
    #[serde(default)]
    field_poly: Option<Vec<i64>>,
    #[serde(default)]
    traces: Option<Vec<i64>>,
}

#[derive(Deserialize)]
struct HeckeRow {
    ap: Vec<Vec<i64>>,
    hecke_ring_numerators: Vec<Vec<i64>>,
    hecke_ring_denominators: Vec<i64>,
    #[serde(default)]
    hecke_ring_cyclotomic_generator: i64,
}

fn primes_below(n: u64) -> impl Iterator<Item = u64> {
    (2..n).filter(|&p| p == 2 || is_prime(p))
}

/// a_p in the power basis of ν from coordinates in the Hecke-ring basis β_i = num_i(ν) / den_i.
fn to_power_basis(ap: &[i64], num: &[Vec<i64>], den: &[i64], degree: usize) -> Option<Vec<BigRational>> {
    if ap.len() != degree || num.len() != degree || den.len() != degree {
        return None;
    }
    let mut out = vec![BigRational::zero(); degree];
    for (i, &c) in ap.iter().enumerate() {
        if den[i] == 0 || num[i].len() > degree {
            return None;
        }
        for (j, &n) in num[i].iter().enumerate() {
            out[j] += BigRational::new(BigInt::from(c) * n, BigInt::from(den[i]));
        }
    }
    Some(out)
}

impl Fetcher {
    pub fn new(cfg: Config, fixtures: NewformFile) -> Self {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .user_agent(concat!("bogocert/", env!("CARGO_PKG_VERSION")))
            .build()
            .expect("HTTP client");
        Fetcher {
            cfg,
            fixtures,
            client,
            last_request: Cell::new(None),
            retries: 3,
            backoff: Duration::from_secs(1),
            snapshot: crate::clock::today(),
        }
    }

    pub fn with_retry(mut self, retries: u32, backoff: Duration) -> Self {
        self.retries = retries.max(1);
        self.backoff = backoff;
        self
    }

    /// Date under which freshly fetched records are cached.
    pub fn with_snapshot(mut self, snapshot: &str) -> Self {
        self.snapshot = snapshot.to_string();
        self
    }

    pub fn fetch_newform(&self, label: &str) -> Result<(NewformRecord, Source), FetchError> {
        if self.cfg.offline {
            if let Some(r) = self.fixtures.get(label) {
                return Ok((r.clone(), Source::Fixture { snapshot: self.fixtures.snapshot.clone() }));
            }
            return match self.cached(label)? {
                Some((r, snapshot)) => Ok((r, Source::Cache { snapshot })),
                None => Err(FetchError::NotFound(label.to_string())),
            };
        }
        if let Some((r, snapshot)) = self.cached(label)? {
            return Ok((r, Source::Cache { snapshot }));
        }
        let r = self.download(label)?;
        self.store(&r)?;
        Ok((r, Source::Network { snapshot: self.snapshot.clone() }))
    }

    fn cache_dir(&self) -> PathBuf {
        self.cfg.cache_dir.join("newforms")
    }

    /// The newest cached snapshot of `label`; files are `<label>@<snapshot>.json`.
    fn cached(&self, label: &str) -> Result<Option<(NewformRecord, String)>, FetchError> {
        let dir = self.cache_dir();
        let Ok(entries) = std::fs::read_dir(&dir) else { return Ok(None) };
        let prefix = format!("{label}@");
        let mut best: Option<(String, PathBuf)> = None;
        for e in entries.flatten() {
            let name = e.file_name().to_string_lossy().to_string();
            if let Some(snap) = name.strip_prefix(&prefix).and_then(|s| s.strip_suffix(".json")) {
                if best.as_ref().is_none_or(|(b, _)| snap > b.as_str()) {
                    best = Some((snap.to_string(), e.path()));
                }
            }
        }
        let Some((snap, path)) = best else { return Ok(None) };
        let text = std::fs::read_to_string(&path).map_err(|e| FetchError::Cache(e.to_string()))?;
        let r: NewformRecord = serde_json::from_str(&text).map_err(|e| FetchError::Cache(format!("{}: {e}", path.display())))?;
        r.validate().map_err(|e| FetchError::Cache(e.to_string()))?;
        Ok(Some((r, snap)))
    }

    fn store(&self, r: &NewformRecord) -> Result<(), FetchError> {
        let dir = self.cache_dir();
        std::fs::create_dir_all(&dir).map_err(|e| FetchError::Cache(e.to_string()))?;
        let path = dir.join(format!("{}@{}.json", r.label, self.snapshot));
        let text = serde_json::to_string_pretty(r).expect("record serializes");
        std::fs::write(path, text).map_err(|e| FetchError::Cache(e.to_string()))
    }

    fn throttle(&self) {
        let gap = Duration::from_millis(self.cfg.rate_limit_ms);
        if let Some(t) = self.last_request.get() {
            let elapsed = t.elapsed();
            if elapsed < gap {
                std::thread::sleep(gap - elapsed);
            }
        }
        self.last_request.set(Some(Instant::now()));
    }

    fn get(&self, url: &str) -> Result<String, FetchError> {
        let mut last = String::new();
        for attempt in 0..self.retries {
            if attempt > 0 {
                std::thread::sleep(self.backoff * 2u32.pow(attempt - 1));
            }
            self.throttle();
            match self.client.get(url).send() {
                Ok(resp) if resp.status().is_success() => {
                    return resp.text().map_err(|e| FetchError::Network(e.to_string()));
                }
                Ok(resp) if resp.status().as_u16() == 404 => return Ok(r#"{"data": []}"#.to_string()),
                Ok(resp) if resp.status().is_client_error() => {
                    return Err(FetchError::Network(format!("{url}: HTTP {}", resp.status())));
                }
                Ok(resp) => last = format!("{url}: HTTP {}", resp.status()),
                Err(e) => last = e.to_string(),
            }
        }
        Err(FetchError::Network(format!("{last} (after {} attempts)", self.retries)))
    }

    fn mismatch(&self, label: &str, kind: &str, raw: &str, reason: impl Into<String>) -> FetchError {
        let dir = self.cfg.cache_dir.join("raw");
        let path = dir.join(format!("{label}-{kind}.json"));
        let _ = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, raw));
        FetchError::SchemaMismatch { label: label.to_string(), reason: reason.into(), raw: path }
    }

    fn rows(&self, label: &str, kind: &str, raw: &str) -> Result<Vec<Value>, FetchError> {
        serde_json::from_str::<Envelope>(raw).map(|e| e.data).map_err(|e| self.mismatch(label, kind, raw, e.to_string()))
    }

    fn download(&self, label: &str) -> Result<NewformRecord, FetchError> {
        let base = self.cfg.api_base_url.trim_end_matches('/');
        let raw = self.get(&format!("{base}/mf_newforms/?label={label}&_format=json"))?;
        let rows = self.rows(label, "newform", &raw)?;
        let Some(row) = rows.into_iter().next() else { return Err(FetchError::NotFound(label.to_string())) };
        let nf: NewformRow = serde_json::from_value(row).map_err(|e| self.mismatch(label, "newform", &raw, e.to_string()))?;
        if nf.label != label {
            return Err(self.mismatch(label, "newform", &raw, format!("label {} returned", nf.label)));
        }
        let field = nf.field_poly.clone().unwrap_or_else(|| vec![0, 1]);
        if field.len() != nf.dim + 1 {
            return Err(self.mismatch(label, "newform", &raw, "field_poly degree differs from dim"));
        }
        let field_poly = IntPolynomial::from_i64s(&field).map_err(|e| self.mismatch(label, "newform", &raw, e.to_string()))?;
        let mut hecke_data = BTreeMap::new();
        if nf.dim == 1 {
            let traces = nf.traces.as_ref().ok_or_else(|| self.mismatch(label, "newform", &raw, "no traces"))?;
            for p in primes_below(MAX_PRIME).filter(|&p| (p as usize) <= traces.len()) {
                let a = BigRational::from_integer(BigInt::from(traces[p as usize - 1]));
                hecke_data.insert(p, ApData::Coords(vec![a]));
            }
        } else {
            let raw_h = self.get(&format!("{base}/mf_hecke_nf/?label={label}&_format=json"))?;
            let rows = self.rows(label, "hecke", &raw_h)?;
            let Some(row) = rows.into_iter().next() else {
                return Err(self.mismatch(label, "hecke", &raw_h, "no Hecke eigenvalue data"));
            };
            let h: HeckeRow = serde_json::from_value(row).map_err(|e| self.mismatch(label, "hecke", &raw_h, e.to_string()))?;
            if h.hecke_ring_cyclotomic_generator != 0 {
                // a cyclotomic basis cannot be normalized to the power basis without guessing
                return Err(self.mismatch(label, "hecke", &raw_h, "eigenvalues given in a cyclotomic basis"));
            }
            for (p, ap) in primes_below(MAX_PRIME).zip(h.ap.iter()) {
                let c = to_power_basis(ap, &h.hecke_ring_numerators, &h.hecke_ring_denominators, nf.dim)
                    .ok_or_else(|| self.mismatch(label, "hecke", &raw_h, format!("cannot normalize a_{p}")))?;
                hecke_data.insert(p, ApData::Coords(c));
            }
        }
        let record = NewformRecord {
            schema_version: NEWFORM_SCHEMA_VERSION,
            label: nf.label,
            level: nf.level,
            weight: nf.weight,
            char_order: nf.char_order,
            is_cm: nf.is_cm,
            field_poly,
            hecke_data,
            provenance: format!("LMFDB API {base}, snapshot {}", self.snapshot),
            trace_head: None,
        };
        record.validate().map_err(|e| self.mismatch(label, "newform", &raw, e.to_string()))?;
        Ok(record)
    }
}

/// Reads a record file or newform file from disk (used for `--forms` inputs).
pub fn read_newform_file(path: &Path) -> anyhow::Result<NewformFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(NewformFile::from_json(&text)?)
}
