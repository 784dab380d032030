use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, ChecklistItem, ItemStatus, PlaceSummary, Proposition};
use super::places::{find_places, PadicPlace, PlaceClass};
use super::record::NewformRecord;
use super::serre::{check_serre_b, hts_check, serre_red_exponents};
use crate::padic::check_prime;

/// A hypothesis supplied from outside the toolkit, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub holds: bool,
    pub source: String,
}

impl Assertion {
    pub fn new(holds: bool, source: impl Into<String>) -> Self {
        Assertion { holds, source: source.into() }
    }

    fn item(&self, name: &str) -> ChecklistItem {
        let evidence = format!("asserted ({})", self.source);
        if self.holds {
            ChecklistItem::verified(name, evidence)
        } else {
            ChecklistItem::failed(name, format!("asserted false ({})", self.source))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absolutely_irreducible: Option<Assertion>,
    /// Reducibility of the reduction mod p of the local representation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residually_reducible: Option<Assertion>,
    /// Not induced from a character and not a twist of a representation with finite image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_induced_nor_finite_twist: Option<Assertion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strongly_absolutely_irreducible: Option<Assertion>,
    /// Hodge–Tate–Sen weights; defaults to (0, k−1) for a newform of weight k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge_tate_sen: Option<(i64, i64)>,
    /// Multiplicities (n₀, n₁) of the Hodge–Tate weights 0 and 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht_multiplicities: Option<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia_full: Option<Assertion>,
}

pub struct CertifyRequest<'a> {
    pub form: &'a NewformRecord,
    pub p: u64,
    pub precision: u32,
    pub assertions: Assertions,
}

impl<'a> CertifyRequest<'a> {
    pub fn new(form: &'a NewformRecord, p: u64, precision: u32) -> Self {
        CertifyRequest { form, p, precision, assertions: Assertions::default() }
    }
}

pub trait Criterion: Send + Sync {
    fn proposition(&self) -> Proposition;
    fn summary(&self) -> &'static str;
    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate;
}

const P_ODD: &str = "p odd prime";
const P_NMID_N: &str = "p does not divide N";
const NOT_CM: &str = "f is not CM";
const SS_PLACE: &str = "degree-one place with v(a_p) > 0";
const AP_NONZERO: &str = "a_p != 0 (exact)";
const DEG1_PLACE: &str = "degree-one place";

/// What the local computation at p established.
struct Local {
    items: Vec<ChecklistItem>,
    place: Option<PlaceSummary>,
    /// Supersingular at a degree-one place, p ∤ N and a_p ≠ 0: the local representation
    /// is then crystalline, irreducible and not induced.
    crystalline_not_induced: bool,
}

fn choose_place(places: &[PadicPlace]) -> Option<&PadicPlace> {
    let by = |c: PlaceClass| places.iter().find(|pl| pl.classification == c);
    by(PlaceClass::Supersingular)
        .or_else(|| by(PlaceClass::ApZero))
        .or_else(|| places.iter().find(|pl| pl.is_degree_one()))
        .or_else(|| places.first())
}

fn local(req: &CertifyRequest<'_>) -> Local {
    let (f, p) = (req.form, req.p);
    let mut items = Vec::new();
    let p_ok = check_prime(p).is_ok();
    items.push(match check_prime(p) {
        Ok(()) => ChecklistItem::verified(P_ODD, format!("{p} is an odd prime")),
        Err(e) => ChecklistItem::failed(P_ODD, e.to_string()),
    });
    items.push(if f.level % p == 0 {
        ChecklistItem::failed(P_NMID_N, format!("{p} divides N = {}", f.level))
    } else {
        ChecklistItem::verified(P_NMID_N, format!("N = {}", f.level))
    });
    items.push(if f.is_cm {
        ChecklistItem::failed(NOT_CM, "record is flagged CM")
    } else {
        ChecklistItem::verified(NOT_CM, "record is flagged non-CM")
    });
    let mut place = None;
    let ss_item = if !p_ok {
        ChecklistItem::unknown(SS_PLACE, "not evaluated: p is not an odd prime")
    } else {
        match find_places(f, p, req.precision) {
            Err(e) => ChecklistItem::unknown(SS_PLACE, e.to_string()),
            Ok(places) => {
                place = choose_place(&places).map(PlaceSummary::from);
                let chosen = places
                    .iter()
                    .find(|pl| matches!(pl.classification, PlaceClass::Supersingular | PlaceClass::ApZero));
                match chosen {
                    Some(pl) => ChecklistItem::verified(
                        SS_PLACE,
                        format!(
                            "root {} mod {p}, v(a_p) = {}",
                            pl.root_mod_p.map_or("?".into(), |r| r.to_string()),
                            pl.ap_valuation.map_or("?".into(), |v| v.to_string())
                        ),
                    ),
                    None if places.iter().any(|pl| pl.classification == PlaceClass::Unresolved) => {
                        ChecklistItem::unknown(SS_PLACE, format!("unresolved at precision {}", req.precision))
                    }
                    None => ChecklistItem::failed(SS_PLACE, describe_places(&places)),
                }
            }
        }
    };
    items.push(ss_item);
    items.push(match f.ap_is_zero(p) {
        Some(false) => ChecklistItem::verified(AP_NONZERO, "nonzero exactly"),
        Some(true) => ChecklistItem::failed(AP_NONZERO, "a_p = 0 exactly"),
        None => ChecklistItem::unknown(AP_NONZERO, format!("no a_p data at p = {p}")),
    });
    let crystalline_not_induced = items.iter().all(|i| i.status == ItemStatus::Verified);
    Local { items, place, crystalline_not_induced }
}

fn describe_places(places: &[PadicPlace]) -> String {
    if places.is_empty() {
        return "no places".into();
    }
    let parts: Vec<String> = places
        .iter()
        .map(|pl| match (pl.residue_degree, pl.ap_valuation) {
            (1, Some(v)) => format!("f=1 v(a_p)={v}"),
            (d, _) => format!("f={d} e={}", pl.ramification_index),
        })
        .collect();
    format!("places: {}", parts.join(", "))
}

// Degree-one place and p odd, shared by the local criteria below.
fn degree_one_items(req: &CertifyRequest<'_>, l: &Local) -> Vec<ChecklistItem> {
    let mut out = vec![l.items[0].clone()];
    out.push(match &l.place {
        Some(pl) if pl.residue_degree == 1 => ChecklistItem::verified(
            DEG1_PLACE,
            format!("completion is Q_{}; root {} mod p", req.p, pl.root_mod_p.map_or("?".into(), |r| r.to_string())),
        ),
        Some(pl) if pl.residue_degree == 0 => ChecklistItem::unknown(DEG1_PLACE, "place structure unresolved"),
        Some(_) => ChecklistItem::failed(DEG1_PLACE, "no place above p has completion Q_p"),
        None => ChecklistItem::unknown(DEG1_PLACE, l.items[3].evidence.clone()),
    });
    out
}

const DERIVED_IRRED: &str = "derived: supersingular at a degree-one place with p not dividing N and a_p != 0";

fn irreducibility_item(name: &str, asserted: Option<&Assertion>, l: &Local) -> ChecklistItem {
    match asserted {
        Some(a) => a.item(name),
        None if l.crystalline_not_induced => ChecklistItem::verified(name, DERIVED_IRRED),
        None => ChecklistItem::unknown(name, "not asserted and not derivable from the local data"),
    }
}

fn finish(req: &CertifyRequest<'_>, prop: Proposition, place: Option<PlaceSummary>, items: Vec<ChecklistItem>) -> Certificate {
    Certificate::new(&req.form.label, req.p, prop, place, items, req.precision)
}

/// Supersingular at a degree-one place with a_p ≠ 0.
pub struct ModHasB1;

impl Criterion for ModHasB1 {
    fn proposition(&self) -> Proposition {
        Proposition::ModHasB1
    }

    fn summary(&self) -> &'static str {
        "supersingular newform with a_p != 0 at a place with completion Q_p"
    }

    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate {
        let l = local(req);
        finish(req, self.proposition(), l.place, l.items)
    }
}

/// Large inertia image from absolute irreducibility and an infinite determinant on inertia.
pub struct RhoP1;

impl Criterion for RhoP1 {
    fn proposition(&self) -> Proposition {
        Proposition::RhoP1
    }

    fn summary(&self) -> &'static str {
        "absolutely irreducible local representation with infinite determinant on inertia"
    }

    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate {
        let l = local(req);
        let a = &req.assertions;
        let mut items = degree_one_items(req, &l);
        items.push(irreducibility_item("(i) absolutely irreducible", a.absolutely_irreducible.as_ref(), &l));
        let ii = "(ii') a != b mod (p-1)/2 if residually reducible";
        let iii = "(iii) not induced, not a finite-image twist, if residually irreducible";
        match &a.residually_reducible {
            Some(r) if r.holds => {
                let e = serre_red_exponents(req.form.weight, req.p);
                let evidence = format!("residually reducible ({}); (a, b) = ({}, {})", r.source, e.a, e.b);
                items.push(if e.condition_holds {
                    ChecklistItem::verified(ii, evidence)
                } else {
                    ChecklistItem::failed(ii, evidence)
                });
                items.push(ChecklistItem::verified(iii, "vacuous: residually reducible"));
            }
            Some(r) => {
                items.push(ChecklistItem::verified(ii, format!("vacuous: residually irreducible ({})", r.source)));
                items.push(match &a.not_induced_nor_finite_twist {
                    Some(x) => x.item(iii),
                    None => ChecklistItem::unknown(iii, "needs an external assertion"),
                });
            }
            None => {
                items.push(ChecklistItem::unknown(ii, "residual reducibility not known"));
                items.push(match &a.not_induced_nor_finite_twist {
                    Some(x) => x.item(iii),
                    None => ChecklistItem::unknown(iii, "residual reducibility not known"),
                });
            }
        }
        let k = req.form.weight;
        items.push(if k >= 2 {
            ChecklistItem::verified("(iv) det infinite on inertia", format!("Hodge-Tate weight of det is k-1 = {}", k - 1))
        } else {
            ChecklistItem::failed("(iv) det infinite on inertia", "weight below 2")
        });
        finish(req, self.proposition(), l.place, items)
    }
}

/// Strong absolute irreducibility plus distinct Hodge–Tate–Sen weights.
pub struct RhoP3;

impl Criterion for RhoP3 {
    fn proposition(&self) -> Proposition {
        Proposition::RhoP3
    }

    fn summary(&self) -> &'static str {
        "strongly absolutely irreducible with weights k1 != k2 and k1 != -k2"
    }

    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate {
        let l = local(req);
        let a = &req.assertions;
        let mut items = degree_one_items(req, &l);
        items.push(irreducibility_item(
            "(i) strongly absolutely irreducible",
            a.strongly_absolutely_irreducible.as_ref(),
            &l,
        ));
        let (k1, k2, src) = match a.hodge_tate_sen {
            Some((k1, k2)) => (k1, k2, "asserted"),
            None => (0, req.form.weight as i64 - 1, "newform weights (0, k-1)"),
        };
        let name = "(ii) Hodge-Tate-Sen weights k1 != +-k2";
        let evidence = format!("{src}: ({k1}, {k2})");
        items.push(if hts_check(k1, k2) {
            ChecklistItem::verified(name, evidence)
        } else {
            ChecklistItem::failed(name, evidence)
        });
        finish(req, self.proposition(), l.place, items)
    }
}

/// Hodge–Tate weights 0 and 1 with coprime multiplicities.
pub struct SerreB;

impl Criterion for SerreB {
    fn proposition(&self) -> Proposition {
        Proposition::SerreB
    }

    fn summary(&self) -> &'static str {
        "strongly absolutely irreducible, Hodge-Tate weights 0 and 1 with coprime multiplicities"
    }

    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate {
        let l = local(req);
        let a = &req.assertions;
        let mut items = degree_one_items(req, &l);
        items.push(irreducibility_item(
            "(i) strongly absolutely irreducible",
            a.strongly_absolutely_irreducible.as_ref(),
            &l,
        ));
        let name = "(ii) weights 0 and 1, multiplicities >= 1 and coprime";
        let k = req.form.weight;
        items.push(match a.ht_multiplicities {
            Some((n0, n1)) if check_serre_b(n0, n1) => ChecklistItem::verified(name, format!("asserted ({n0}, {n1})")),
            Some((n0, n1)) => ChecklistItem::failed(name, format!("asserted ({n0}, {n1})")),
            None if k == 2 => ChecklistItem::verified(name, "weight 2: weights 0 and 1, multiplicities (1, 1)"),
            None => ChecklistItem::failed(name, format!("weights 0 and {} do not differ by 1", k - 1)),
        });
        finish(req, self.proposition(), l.place, items)
    }
}

/// Inertia-full with determinant of finite order.
pub struct DetFinite;

impl Criterion for DetFinite {
    fn proposition(&self) -> Proposition {
        Proposition::DetFinite
    }

    fn summary(&self) -> &'static str {
        "inertia-full representation whose determinant has finite order"
    }

    fn certify(&self, req: &CertifyRequest<'_>) -> Certificate {
        let l = local(req);
        let mut items = vec![l.items[0].clone()];
        items.push(match &req.assertions.inertia_full {
            Some(x) => x.item("inertia-full"),
            None => ChecklistItem::unknown("inertia-full", "needs an external assertion"),
        });
        let k = req.form.weight;
        // det of a weight-k newform is χ ε^{k−1}
        items.push(ChecklistItem::failed(
            "det has finite order",
            format!("det = nebentypus * cyclotomic^{}; infinite order", k.saturating_sub(1)),
        ));
        finish(req, self.proposition(), l.place, items)
    }
}

pub fn criteria() -> Vec<Box<dyn Criterion>> {
    vec![Box::new(ModHasB1), Box::new(RhoP1), Box::new(RhoP3), Box::new(SerreB), Box::new(DetFinite)]
}

pub fn find_criterion(p: Proposition) -> Box<dyn Criterion> {
    criteria().into_iter().find(|c| c.proposition() == p).expect("every proposition is registered")
}

pub fn certify(req: &CertifyRequest<'_>, prop: Proposition) -> Certificate {
    find_criterion(prop).certify(req)
}
