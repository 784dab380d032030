//! Newform records, p-adic places of Hecke fields, and the criteria engine.

mod certificate;
mod criteria;
mod places;
mod record;
mod scan;
mod serre;

use thiserror::Error;

use crate::padic::PadicError;

pub use certificate::{Certificate, ChecklistItem, ItemStatus, PlaceSummary, Proposition, Verdict, TOOLKIT_VERSION};
pub use criteria::{
    certify, criteria, find_criterion, Assertion, Assertions, CertifyRequest, Criterion, DetFinite, ModHasB1, RhoP1,
    RhoP3, SerreB,
};
pub use places::{find_places, places_of_polynomial, ApValuation, PadicPlace, PlaceClass};
pub use record::{parse_label, ApData, NewformFile, NewformRecord, NEWFORM_SCHEMA_VERSION};
pub use scan::{scan_recipe, RegularityTable, ScanEntry, ScanOptions, ScanOutcome, ScanReport, REGULARITY_SCHEMA_VERSION};
pub use serre::{check_serre_b, hts_check, serre_red_exponents, SerreExponents};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifierError {
    #[error("invalid record {label}: {reason}")]
    InvalidRecord { label: String, reason: String },
    #[error("inconsistent record {label}: {reason}")]
    InconsistentRecord { label: String, reason: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{label} has no a_p data at p = {p}")]
    MissingApData { label: String, p: u64 },
    #[error("at p = {p}: {roots} root(s) in Z_p but {places} degree-one place(s)")]
    PlaceMismatch { p: u64, roots: usize, places: usize },
    #[error(transparent)]
    Padic(#[from] PadicError),
}
