use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::record::{ApData, NewformRecord};
use super::CertifierError;
use crate::padic::{
    analyze_places, root_residue, valuation_of, zp_roots, IntPolynomial, PadicError, PadicScalar, Place,
    DEFAULT_CLUSTER_DEPTH,
};

/// v(a_p) at a degree-one place. `AtLeast` means a_p vanished at the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApValuation {
    Exact(i64),
    AtLeast(i64),
    Infinite,
}

impl fmt::Display for ApValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApValuation::Exact(v) => write!(f, "{v}"),
            ApValuation::AtLeast(v) => write!(f, ">={v}"),
            ApValuation::Infinite => write!(f, "+inf"),
        }
    }
}

// Exact valuations are plain JSON integers; the other two cases are strings.
impl Serialize for ApValuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ApValuation::Exact(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

struct ValuationVisitor;

impl Visitor<'_> for ValuationVisitor {
    type Value = ApValuation;
    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer, \">=N\" or \"+inf\"")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ApValuation, E> {
        Ok(ApValuation::Exact(v))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ApValuation, E> {
        i64::try_from(v).map(ApValuation::Exact).map_err(E::custom)
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<ApValuation, E> {
        if v == "+inf" {
            return Ok(ApValuation::Infinite);
        }
        v.strip_prefix(">=")
            .and_then(|n| n.parse().ok())
            .map(ApValuation::AtLeast)
            .ok_or_else(|| E::custom(format!("bad valuation {v:?}")))
    }
}

impl<'de> Deserialize<'de> for ApValuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ValuationVisitor)
    }
}

impl ApValuation {
    /// Some(true) if v > 0 is certain, Some(false) if v ≤ 0 is certain.
    pub fn is_positive(&self) -> Option<bool> {
        match *self {
            ApValuation::Exact(v) => Some(v > 0),
            ApValuation::AtLeast(v) if v >= 1 => Some(true),
            ApValuation::AtLeast(_) => None,
            ApValuation::Infinite => Some(true),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceClass {
    Ordinary,
    Supersingular,
    /// Degree-one place where a_p = 0 exactly.
    ApZero,
    NotDegreeOne,
    /// The valuation of a_p was not determined at the working precision.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicPlace {
    pub p: u64,
    pub residue_degree: u32,
    pub ramification_index: u32,
    /// The image of the field generator in Z_p, as a residue mod p^precision.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<PadicScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_mod_p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ap_valuation: Option<ApValuation>,
    pub classification: PlaceClass,
}

impl PadicPlace {
    pub fn is_degree_one(&self) -> bool {
        self.residue_degree == 1 && self.ramification_index == 1
    }
}

/// a_p as a function on the roots of the presenting polynomial.
enum ApImage<'a> {
    /// a_p = Σ c_i θ^i.
    Coords(&'a [BigRational]),
    /// a_p = θ.
    Generator,
}

fn classify(v: ApValuation) -> PlaceClass {
    match v {
        ApValuation::Infinite => PlaceClass::ApZero,
        other => match other.is_positive() {
            Some(true) => PlaceClass::Supersingular,
            Some(false) => PlaceClass::Ordinary,
            None => PlaceClass::Unresolved,
        },
    }
}

fn ap_valuation(image: &ApImage<'_>, root: &PadicScalar, p: u64) -> Result<ApValuation, CertifierError> {
    match image {
        ApImage::Generator => Ok(match root.valuation() {
            Some(v) => ApValuation::Exact(v),
            None => ApValuation::AtLeast(root.absolute_precision()),
        }),
        ApImage::Coords(c) => {
            if c.iter().all(Zero::is_zero) {
                return Ok(ApValuation::Infinite);
            }
            // a_p = (Σ n_i r^i) / D with integers n_i and common denominator D
            let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let nums: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
            let prec = root.absolute_precision().max(1) as u32;
            let m = num_traits::pow(BigInt::from(p), prec as usize);
            let r = root.to_integer()?;
            let mut acc = BigInt::zero();
            for n in nums.iter().rev() {
                acc = (acc * &r + n).mod_floor(&m);
            }
            let vd = valuation_of(&den, p) as i64;
            Ok(if acc.is_zero() {
                ApValuation::AtLeast(prec as i64 - vd)
            } else {
                ApValuation::Exact(valuation_of(&acc, p) as i64 - vd)
            })
        }
    }
}

/// Places above p of the field presented by `poly`, with a_p given by `image`.
fn places_of(poly: &IntPolynomial, image: ApImage<'_>, p: u64, precision: u32) -> Result<Vec<PadicPlace>, CertifierError> {
    let analysis = analyze_places(poly, p, DEFAULT_CLUSTER_DEPTH)?;
    let mut out = Vec::new();
    let expected_degree_one = analysis.places.iter().filter(|pl| pl.is_degree_one()).count();
    match zp_roots(poly, p, precision) {
        Ok(roots) => {
            // two routes to the degree-one places must agree
            if analysis.is_complete() && roots.len() != expected_degree_one {
                return Err(CertifierError::PlaceMismatch {
                    p,
                    roots: roots.len(),
                    places: expected_degree_one,
                });
            }
            for root in roots {
                let v = ap_valuation(&image, &root, p)?;
                out.push(PadicPlace {
                    p,
                    residue_degree: 1,
                    ramification_index: 1,
                    root_mod_p: Some(root_residue(&root)),
                    root: Some(root),
                    ap_valuation: Some(v),
                    classification: classify(v),
                });
            }
        }
        Err(PadicError::PrecisionExhausted { .. }) => {
            for _ in 0..expected_degree_one {
                out.push(PadicPlace {
                    p,
                    residue_degree: 1,
                    ramification_index: 1,
                    root: None,
                    root_mod_p: None,
                    ap_valuation: None,
                    classification: PlaceClass::Unresolved,
                });
            }
        }
        Err(e) => return Err(e.into()),
    }
    for pl in analysis.places.iter().filter(|pl| !pl.is_degree_one()) {
        out.push(other_place(p, pl, PlaceClass::NotDegreeOne));
    }
    // clusters whose place structure is unknown; degree 0 marks "not determined"
    for _ in &analysis.unresolved {
        out.push(other_place(p, &Place { residue_degree: 0, ramification_index: 0 }, PlaceClass::Unresolved));
    }
    Ok(out)
}

fn other_place(p: u64, pl: &Place, classification: PlaceClass) -> PadicPlace {
    PadicPlace {
        p,
        residue_degree: pl.residue_degree,
        ramification_index: pl.ramification_index,
        root: None,
        root_mod_p: None,
        ap_valuation: None,
        classification,
    }
}

/// One entry per p-adic place of the Hecke field; degree-one places carry the image of
/// the generator and v(a_p).
pub fn find_places(form: &NewformRecord, p: u64, precision: u32) -> Result<Vec<PadicPlace>, CertifierError> {
    let ap = form.ap(p).ok_or_else(|| CertifierError::MissingApData { label: form.label.clone(), p })?;
    match ap {
        ApData::Coords(c) => places_of(&form.field_poly, ApImage::Coords(c), p, precision),
        ApData::Charpoly(g) => {
            // the field is presented by the T_p polynomial itself; its place structure must
            // agree with that of field_poly
            let a = analyze_places(g, p, DEFAULT_CLUSTER_DEPTH)?;
            let b = analyze_places(&form.field_poly, p, DEFAULT_CLUSTER_DEPTH)?;
            if a.is_complete() && b.is_complete() && a.places != b.places {
                return Err(CertifierError::InconsistentRecord {
                    label: form.label.clone(),
                    reason: format!("T_{p} polynomial and field polynomial have different places above {p}"),
                });
            }
            places_of(g, ApImage::Generator, p, precision)
        }
    }
}

/// Places above p of Q[x]/(f), reading a_p as the class of x (the charpoly convention).
pub fn places_of_polynomial(f: &IntPolynomial, p: u64, precision: u32) -> Result<Vec<PadicPlace>, CertifierError> {
    places_of(f, ApImage::Generator, p, precision)
}
