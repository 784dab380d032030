use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Verdict};
use super::criteria::{Assertion, CertifyRequest, Criterion, ModHasB1};
use super::places::{find_places, PlaceClass};
use super::record::NewformRecord;
use super::CertifierError;

pub const REGULARITY_SCHEMA_VERSION: u32 = 1;

/// Known Γ₀(N)-regular primes per level, quoted from the literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityTable {
    pub schema_version: u32,
    pub source: String,
    pub levels: BTreeMap<u64, Vec<u64>>,
}

impl RegularityTable {
    pub fn from_json(s: &str) -> Result<Self, CertifierError> {
        let t: RegularityTable = serde_json::from_str(s).map_err(|e| CertifierError::Json(e.to_string()))?;
        if t.schema_version != REGULARITY_SCHEMA_VERSION {
            return Err(CertifierError::Json(format!("unsupported schema_version {}", t.schema_version)));
        }
        Ok(t)
    }

    /// None when the level is not covered at all.
    pub fn is_regular(&self, level: u64, p: u64) -> Option<bool> {
        self.levels.get(&level).map(|ps| ps.contains(&p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Forms whose Hecke field is larger are skipped.
    pub max_field_degree: usize,
    pub precision: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_field_degree: 1, precision: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ScanOutcome {
    Certified { certificate: Box<Certificate> },
    /// The pair is outside S₁ ∩ S₂ ∩ S₃ or failed a hypothesis.
    Excluded { reason: String },
    /// The pair could not be decided from the available data.
    Skipped { notice: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub label: String,
    pub p: u64,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.entries.iter().filter_map(|e| match &e.outcome {
            ScanOutcome::Certified { certificate } => Some(certificate.as_ref()),
            _ => None,
        })
    }

    /// (label, p) of every certified pair.
    pub fn certified_pairs(&self) -> Vec<(String, u64)> {
        self.certificates().map(|c| (c.label.clone(), c.p)).collect()
    }

    pub fn notices(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter_map(|e| match &e.outcome {
            ScanOutcome::Skipped { notice } => Some(notice.as_str()),
            _ => None,
        })
    }
}

fn scan_pair(f: &NewformRecord, p: u64, table: &RegularityTable, opts: &ScanOptions) -> ScanOutcome {
    let excluded = |r: String| ScanOutcome::Excluded { reason: r };
    if p <= 3 {
        return excluded("p <= 3".into());
    }
    if f.level.is_multiple_of(p) {
        return excluded(format!("p divides N = {}", f.level));
    }
    if f.is_cm {
        return excluded("CM form".into());
    }
    if f.field_degree() > opts.max_field_degree {
        return excluded(format!("Hecke field degree {} exceeds {}", f.field_degree(), opts.max_field_degree));
    }
    match table.is_regular(f.level, p) {
        None => {
            return ScanOutcome::Skipped {
                notice: format!("MissingRegularityData: no regularity data for level {}", f.level),
            }
        }
        Some(false) => return excluded(format!("{p} is not known to be Gamma0({})-regular", f.level)),
        Some(true) => {}
    }
    // S₂: p splits completely in the Hecke field
    match find_places(f, p, opts.precision) {
        Err(e) => return ScanOutcome::Skipped { notice: e.to_string() },
        Ok(places) => {
            if places.iter().any(|pl| pl.classification == PlaceClass::Unresolved) {
                return ScanOutcome::Skipped { notice: format!("places above {p} unresolved") };
            }
            if !places.iter().all(|pl| pl.is_degree_one()) {
                return excluded(format!("{p} does not split completely in the Hecke field"));
            }
        }
    }
    let reducible = f.nebentypus_trivial();
    let mut req = CertifyRequest::new(f, p, opts.precision);
    if reducible {
        req.assertions.residually_reducible = Some(Assertion::new(
            true,
            format!("{p} is Gamma0({})-regular and the nebentypus is trivial", f.level),
        ));
    }
    let mut cert = ModHasB1.certify(&req);
    if cert.verdict != Verdict::BCertified {
        let why = cert.blocking_item().map_or(String::new(), |i| format!("{}: {}", i.name, i.evidence));
        return excluded(format!("{}: {why}", cert.verdict.code()));
    }
    if reducible {
        cert.annotations.push(format!(
            "residually reducible at {p}: Gamma0({})-regular ({}) with trivial nebentypus",
            f.level, table.source
        ));
    }
    ScanOutcome::Certified { certificate: Box::new(cert) }
}

/// For each (form, p) with p > 3, p ∤ N, f non-CM, p Γ₀(N)-regular, p split completely in
/// K_f and f supersingular at p with a_p ≠ 0, a MODHASB1 certificate.
pub fn scan_recipe(forms: &[NewformRecord], primes: &[u64], table: &RegularityTable, opts: &ScanOptions) -> ScanReport {
    let mut entries = Vec::new();
    for f in forms {
        for &p in primes {
            entries.push(ScanEntry { label: f.label.clone(), p, outcome: scan_pair(f, p, table, opts) });
        }
    }
    ScanReport { entries }
}
