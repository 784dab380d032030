//! Data bundled into the binary.

use bogocert::certifier::{CertifierError, NewformFile, RegularityTable};

pub const NEWFORMS_JSON: &str = include_str!("../fixtures/newforms.json");
pub const REGULARITY_JSON: &str = include_str!("../fixtures/regularity.json");

pub fn newforms() -> Result<NewformFile, CertifierError> {
    NewformFile::from_json(NEWFORMS_JSON)
}

pub fn regularity_table() -> Result<RegularityTable, CertifierError> {
    RegularityTable::from_json(REGULARITY_JSON)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_validates() {
        let f = newforms().unwrap();
        for label in ["43.2.a.b", "53.2.a.b", "71.2.a.a", "71.2.a.b", "1.12.a.a", "6.12.a.b", "8.8.a.b"] {
            assert!(f.get(label).is_some(), "{label}");
        }
        assert!(f.records.iter().all(|r| !r.provenance.is_empty()));
        let t = regularity_table().unwrap();
        assert_eq!(t.is_regular(1, 59), Some(false));
        assert_eq!(t.is_regular(6, 5), Some(true));
        assert_eq!(t.is_regular(11, 5), None);
    }
}
