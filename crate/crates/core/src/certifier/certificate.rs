use serde::{Deserialize, Serialize};

use super::places::{ApValuation, PadicPlace};

pub const TOOLKIT_VERSION: &str = concat!("bogocert ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Proposition {
    #[serde(rename = "MODHASB1")]
    ModHasB1,
    #[serde(rename = "RHOP1")]
    RhoP1,
    #[serde(rename = "RHOP3")]
    RhoP3,
    #[serde(rename = "SERRE_B")]
    SerreB,
    #[serde(rename = "DETFINITE")]
    DetFinite,
}

impl Proposition {
    pub const ALL: [Proposition; 5] =
        [Proposition::ModHasB1, Proposition::RhoP1, Proposition::RhoP3, Proposition::SerreB, Proposition::DetFinite];

    pub fn code(&self) -> &'static str {
        match self {
            Proposition::ModHasB1 => "MODHASB1",
            Proposition::RhoP1 => "RHOP1",
            Proposition::RhoP3 => "RHOP3",
            Proposition::SerreB => "SERRE_B",
            Proposition::DetFinite => "DETFINITE",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.code().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ItemStatus {
    Verified,
    Failed,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    BCertified,
    Inconclusive,
    Inapplicable,
}

impl Verdict {
    pub fn code(&self) -> &'static str {
        match self {
            Verdict::BCertified => "B_CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Inapplicable => "INAPPLICABLE",
        }
    }

    /// All verified: certified. Any failure: inapplicable. Otherwise inconclusive.
    pub fn from_items(items: &[ChecklistItem]) -> Verdict {
        if items.iter().any(|i| i.status == ItemStatus::Failed) {
            Verdict::Inapplicable
        } else if !items.is_empty() && items.iter().all(|i| i.status == ItemStatus::Verified) {
            Verdict::BCertified
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistItem {
    pub name: String,
    pub status: ItemStatus,
    pub evidence: String,
}

impl ChecklistItem {
    pub fn new(name: &str, status: ItemStatus, evidence: impl Into<String>) -> Self {
        ChecklistItem { name: name.to_string(), status, evidence: evidence.into() }
    }

    pub fn verified(name: &str, evidence: impl Into<String>) -> Self {
        Self::new(name, ItemStatus::Verified, evidence)
    }

    pub fn failed(name: &str, evidence: impl Into<String>) -> Self {
        Self::new(name, ItemStatus::Failed, evidence)
    }

    pub fn unknown(name: &str, evidence: impl Into<String>) -> Self {
        Self::new(name, ItemStatus::Unknown, evidence)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSummary {
    pub root_mod_p: Option<u64>,
    pub residue_degree: u32,
    pub ap_valuation: Option<ApValuation>,
}

impl From<&PadicPlace> for PlaceSummary {
    fn from(pl: &PadicPlace) -> Self {
        PlaceSummary { root_mod_p: pl.root_mod_p, residue_degree: pl.residue_degree, ap_valuation: pl.ap_valuation }
    }
}

/// Field order here is the serialized key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub label: String,
    pub p: u64,
    pub proposition: Proposition,
    pub place: Option<PlaceSummary>,
    pub checklist: Vec<ChecklistItem>,
    pub verdict: Verdict,
    pub precision: u32,
    pub version: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Certificate {
    pub fn new(
        label: &str,
        p: u64,
        proposition: Proposition,
        place: Option<PlaceSummary>,
        checklist: Vec<ChecklistItem>,
        precision: u32,
    ) -> Self {
        let verdict = Verdict::from_items(&checklist);
        Certificate {
            label: label.to_string(),
            p,
            proposition,
            place,
            checklist,
            verdict,
            precision,
            version: TOOLKIT_VERSION.to_string(),
            annotations: Vec::new(),
            timestamp: None,
        }
    }

    pub fn item(&self, name: &str) -> Option<&ChecklistItem> {
        self.checklist.iter().find(|i| i.name == name)
    }

    /// The first checklist item that keeps the verdict from being B_CERTIFIED.
    pub fn blocking_item(&self) -> Option<&ChecklistItem> {
        self.checklist
            .iter()
            .find(|i| i.status == ItemStatus::Failed)
            .or_else(|| self.checklist.iter().find(|i| i.status == ItemStatus::Unknown))
    }
}
