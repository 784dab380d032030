use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CertifierError;
use crate::padic::{is_irreducible, IntPolynomial};
use crate::serde_num::Int;

pub const NEWFORM_SCHEMA_VERSION: u32 = 1;

/// How a_p is given: coordinates in the power basis of a root of `field_poly`, or the
/// characteristic polynomial of T_p on the Galois orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApData {
    Coords(#[serde(with = "crate::serde_num::rational_vec")] Vec<BigRational>),
    Charpoly(IntPolynomial),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewformRecord {
    pub schema_version: u32,
    pub label: String,
    pub level: u64,
    pub weight: u32,
    /// Order of the nebentypus; 1 means trivial.
    pub char_order: u32,
    pub is_cm: bool,
    pub field_poly: IntPolynomial,
    pub hecke_data: BTreeMap<u64, ApData>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_head: Option<Vec<Int>>,
}

/// (level, weight) from a label N.k.x.y.
pub fn parse_label(label: &str) -> Option<(u64, u32)> {
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 4 || parts[2].is_empty() || parts[3].is_empty() {
        return None;
    }
    if !parts[2].chars().all(|c| c.is_ascii_lowercase()) || !parts[3].chars().all(|c| c.is_ascii_lowercase()) {
        return None;
    }
    Some((parts[0].parse().ok()?, parts[1].parse().ok()?))
}

fn is_square(x: &BigInt) -> bool {
    !x.is_negative() && {
        let r = x.sqrt();
        &r * &r == *x
    }
}

impl NewformRecord {
    fn invalid(&self, reason: impl Into<String>) -> CertifierError {
        CertifierError::InvalidRecord { label: self.label.clone(), reason: reason.into() }
    }

    pub fn validate(&self) -> Result<(), CertifierError> {
        if self.schema_version != NEWFORM_SCHEMA_VERSION {
            return Err(self.invalid(format!("unsupported schema_version {}", self.schema_version)));
        }
        match parse_label(&self.label) {
            Some((n, k)) if n == self.level && k == self.weight => {}
            _ => return Err(self.invalid("label does not match level and weight")),
        }
        if self.weight < 2 || self.level == 0 || self.char_order == 0 {
            return Err(self.invalid("weight must be ≥ 2, level and character order positive"));
        }
        if !self.field_poly.is_monic() {
            return Err(self.invalid("field polynomial must be monic"));
        }
        if !is_irreducible(&self.field_poly)? {
            return Err(self.invalid(format!("field polynomial {} is reducible", self.field_poly)));
        }
        let d = self.field_degree();
        for (p, ap) in &self.hecke_data {
            match ap {
                ApData::Coords(c) if c.len() != d => {
                    return Err(self.invalid(format!("a_{p} has {} coordinates, field degree is {d}", c.len())));
                }
                ApData::Coords(_) => {}
                ApData::Charpoly(g) => self.check_charpoly(*p, g)?,
            }
        }
        Ok(())
    }

    // A squarefree, irreducible T_p polynomial of degree [K_f : Q] is the minimal polynomial
    // of a_p ∈ K_f, so Q(a_p) = K_f. The discriminants of two polynomials defining the
    // same field differ by a rational square; that is checked as well.
    fn check_charpoly(&self, p: u64, g: &IntPolynomial) -> Result<(), CertifierError> {
        let d = self.field_degree();
        if g.degree() != d || !g.is_monic() {
            return Err(self.invalid(format!("T_{p} polynomial must be monic of degree {d}")));
        }
        if !g.is_squarefree() {
            return Err(self.invalid(format!("T_{p} polynomial {g} is not squarefree")));
        }
        if !is_irreducible(g)? {
            return Err(self.invalid(format!("T_{p} polynomial {g} does not generate the Hecke field")));
        }
        let (a, b) = (g.discriminant(), self.field_poly.discriminant());
        if a.is_zero() || b.is_zero() || !is_square(&(&a * &b)) {
            return Err(self.invalid(format!(
                "discriminants of {g} and {} differ by a non-square",
                self.field_poly
            )));
        }
        Ok(())
    }

    pub fn field_degree(&self) -> usize {
        self.field_poly.degree()
    }

    pub fn nebentypus_trivial(&self) -> bool {
        self.char_order == 1
    }

    pub fn ap(&self, p: u64) -> Option<&ApData> {
        self.hecke_data.get(&p)
    }

    /// Whether a_p = 0, decided exactly.
    pub fn ap_is_zero(&self, p: u64) -> Option<bool> {
        self.ap(p).map(|ap| match ap {
            ApData::Coords(c) => c.iter().all(Zero::is_zero),
            // an irreducible polynomial of degree ≥ 2 has no root 0
            ApData::Charpoly(g) => g.coeffs()[0].is_zero(),
        })
    }
}

/// A bundled or cached set of records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewformFile {
    pub schema_version: u32,
    pub snapshot: String,
    pub records: Vec<NewformRecord>,
}

impl NewformFile {
    pub fn from_json(s: &str) -> Result<Self, CertifierError> {
        let f: NewformFile = serde_json::from_str(s).map_err(|e| CertifierError::Json(e.to_string()))?;
        if f.schema_version != NEWFORM_SCHEMA_VERSION {
            return Err(CertifierError::Json(format!("unsupported schema_version {}", f.schema_version)));
        }
        for r in &f.records {
            r.validate()?;
        }
        Ok(f)
    }

    pub fn get(&self, label: &str) -> Option<&NewformRecord> {
        self.records.iter().find(|r| r.label == label)
    }
}
