use bogocert::certifier::{
    certify, find_places, scan_recipe, ApValuation, Assertion, CertifyRequest, ItemStatus, NewformFile, NewformRecord,
    PlaceClass, Proposition, RegularityTable, ScanOptions, Verdict,
};

fn fixtures() -> NewformFile {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/fixtures/newforms.json");
    NewformFile::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn table() -> RegularityTable {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/fixtures/regularity.json");
    RegularityTable::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn modhasb1(f: &NewformRecord, p: u64, precision: u32) -> Verdict {
    certify(&CertifyRequest::new(f, p, precision), Proposition::ModHasB1).verdict
}

#[test]
fn example_av_place_structure() {
    let file = fixtures();
    let f = file.get("43.2.a.b").unwrap();
    let places = find_places(f, 17, 20).unwrap();
    let mut vals: Vec<_> = places.iter().map(|pl| (pl.residue_degree, pl.ap_valuation)).collect();
    vals.sort_by_key(|x| format!("{x:?}"));
    assert_eq!(vals, vec![(1, Some(ApValuation::Exact(0))), (1, Some(ApValuation::Exact(1)))]);

    for (label, p) in [("53.2.a.b", 17), ("71.2.a.a", 3), ("71.2.a.a", 5), ("71.2.a.b", 3), ("71.2.a.b", 37)] {
        let places = find_places(file.get(label).unwrap(), p, 20).unwrap();
        let shape: Vec<_> = places.iter().map(|pl| (pl.residue_degree, pl.ramification_index, pl.classification)).collect();
        assert_eq!(shape, vec![(1, 1, PlaceClass::Supersingular), (2, 1, PlaceClass::NotDegreeOne)], "{label} at {p}");
    }
}

#[test]
fn example_av_certified() {
    let file = fixtures();
    for (label, p) in [("43.2.a.b", 17), ("53.2.a.b", 17), ("71.2.a.a", 3), ("71.2.a.a", 5), ("71.2.a.b", 3), ("71.2.a.b", 37)] {
        assert_eq!(modhasb1(file.get(label).unwrap(), p, 20), Verdict::BCertified, "{label} at {p}");
    }
}

#[test]
fn verdict_never_degrades_with_precision() {
    let file = fixtures();
    for f in &file.records {
        for &p in f.hecke_data.keys() {
            if p == 2 {
                continue;
            }
            let mut seen = false;
            for prec in [1, 2, 4, 8, 16, 32] {
                let v = modhasb1(f, p, prec);
                if seen {
                    assert_eq!(v, Verdict::BCertified, "{} at {p}, precision {prec}", f.label);
                }
                seen |= v == Verdict::BCertified;
            }
        }
    }
}

#[test]
fn weight_two_rational_supersingular_is_inapplicable() {
    // |a_p| ≤ 2√p < p forces a_p = 0 once p | a_p (p ≥ 5), so no certificate can come out
    let file = fixtures();
    let mut supersingular = 0;
    for f in file.records.iter().filter(|f| f.weight == 2 && f.field_degree() == 1) {
        for &p in f.hecke_data.keys().filter(|&&p| p >= 5) {
            let places = find_places(f, p, 20).unwrap();
            if places.iter().any(|pl| pl.classification == PlaceClass::ApZero) {
                supersingular += 1;
            }
            assert!(places.iter().all(|pl| pl.classification != PlaceClass::Supersingular));
            assert_ne!(modhasb1(f, p, 20), Verdict::BCertified, "{} at {p}", f.label);
        }
    }
    assert!(supersingular > 0, "the corpus should contain supersingular weight-two pairs");
}

#[test]
fn weight_two_at_three_can_escape_the_bound() {
    // 2√3 > 3, and 37.2.a.a has a_3 = -3
    let f = fixtures().get("37.2.a.a").unwrap().clone();
    let places = find_places(&f, 3, 20).unwrap();
    assert_eq!(places[0].ap_valuation, Some(ApValuation::Exact(1)));
    assert_eq!(modhasb1(&f, 3, 20), Verdict::BCertified);
}

#[test]
fn cm_forms_are_inapplicable() {
    let file = fixtures();
    let f = file.get("27.2.a.a").unwrap();
    for &p in f.hecke_data.keys() {
        let c = certify(&CertifyRequest::new(f, p, 20), Proposition::ModHasB1);
        assert_eq!(c.verdict, Verdict::Inapplicable);
        assert_eq!(c.item("f is not CM").unwrap().status, ItemStatus::Failed);
    }
}

#[test]
fn level_dividing_p_and_zero_ap() {
    let file = fixtures();
    let f = file.get("1.12.a.a").unwrap();
    assert_eq!(modhasb1(f, 2, 20), Verdict::Inapplicable);
    // 43.2.a.b carries no data at 5
    assert_eq!(modhasb1(file.get("43.2.a.b").unwrap(), 5, 20), Verdict::Inconclusive);
    assert_eq!(modhasb1(file.get("71.2.a.a").unwrap(), 71, 20), Verdict::Inapplicable);
}

#[test]
fn other_propositions() {
    let file = fixtures();
    let f = file.get("1.12.a.a").unwrap();
    let mut req = CertifyRequest::new(f, 5, 20);
    assert_eq!(certify(&req, Proposition::RhoP3).verdict, Verdict::BCertified);
    assert_eq!(certify(&req, Proposition::RhoP1).verdict, Verdict::Inconclusive);
    req.assertions.residually_reducible = Some(Assertion::new(true, "test"));
    assert_eq!(certify(&req, Proposition::RhoP1).verdict, Verdict::BCertified);
    assert_eq!(certify(&req, Proposition::SerreB).verdict, Verdict::Inapplicable);
    assert_eq!(certify(&req, Proposition::DetFinite).verdict, Verdict::Inapplicable);
    let ec = file.get("43.2.a.b").unwrap();
    assert_eq!(certify(&CertifyRequest::new(ec, 17, 20), Proposition::SerreB).verdict, Verdict::BCertified);
}

#[test]
fn scan_level_one() {
    let file = fixtures();
    let forms: Vec<_> = file.records.iter().filter(|f| f.level == 1).cloned().collect();
    let report = scan_recipe(&forms, &[5, 7, 59], &table(), &ScanOptions::default());
    let mut got = report.certified_pairs();
    got.sort();
    let mut want = Vec::new();
    for l in ["1.12.a.a", "1.16.a.a", "1.18.a.a", "1.20.a.a", "1.22.a.a", "1.26.a.a"] {
        want.push((l.to_string(), 5));
        want.push((l.to_string(), 7));
    }
    want.sort();
    assert_eq!(got, want);
    assert!(report.certificates().all(|c| c.annotations.iter().any(|a| a.contains("residually reducible"))));
}

#[test]
fn scan_reports_missing_regularity_data() {
    let file = fixtures();
    let forms = vec![file.get("11.2.a.a").unwrap().clone()];
    let report = scan_recipe(&forms, &[5], &table(), &ScanOptions::default());
    assert_eq!(report.notices().count(), 1);
    assert!(report.notices().next().unwrap().starts_with("MissingRegularityData"));
}
