use serde::{Deserialize, Serialize};

use super::group::FiniteLevelGroup;
use super::mat::{Level, MatModPN};
use super::MatGroupError;

pub const GROUP_SCHEMA_VERSION: u32 = 1;

/// Group description file. Matrices are row-major integer lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub schema_version: u32,
    pub p: u32,
    pub n: u32,
    pub d: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nc_depth: Option<u32>,
}

impl GroupFile {
    pub fn from_json(s: &str) -> Result<Self, MatGroupError> {
        let f: GroupFile = serde_json::from_str(s).map_err(|e| MatGroupError::Json(e.to_string()))?;
        if f.schema_version != GROUP_SCHEMA_VERSION {
            return Err(MatGroupError::Json(format!("unsupported schema_version {}", f.schema_version)));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn level(&self) -> Result<Level, MatGroupError> {
        Level::new(self.p, self.n, self.d)
    }

    fn matrices(&self, rows: &[Vec<i64>]) -> Result<Vec<MatModPN>, MatGroupError> {
        let lv = self.level()?;
        rows.iter().map(|r| lv.matrix(r)).collect()
    }

    /// The (not yet enumerated) group with its character, if any.
    pub fn group(&self) -> Result<FiniteLevelGroup, MatGroupError> {
        let g = FiniteLevelGroup::new(self.level()?, self.matrices(&self.generators)?)?;
        match &self.character {
            Some(chi) => g.with_character(chi.clone()),
            None => Ok(g),
        }
    }

    pub fn local_generators(&self) -> Result<Option<Vec<MatModPN>>, MatGroupError> {
        self.local_generators.as_ref().map(|r| self.matrices(r)).transpose()
    }

    pub fn subgroup_generators(&self) -> Result<Option<Vec<MatModPN>>, MatGroupError> {
        self.subgroup_generators.as_ref().map(|r| self.matrices(r)).transpose()
    }

    pub fn from_group(g: &FiniteLevelGroup) -> Self {
        let lv = g.level();
        GroupFile {
            schema_version: GROUP_SCHEMA_VERSION,
            p: lv.p,
            n: lv.n,
            d: lv.d,
            generators: g.generators().iter().map(|m| m.to_i64s()).collect(),
            character: g.character().map(|c| c.to_vec()),
            local_generators: None,
            subgroup_generators: None,
            nc_depth: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"schema_version":1,"p":5,"n":2,"d":2,"generators":[[2,0,0,1],[1,1,0,1]],"character":[2,1]}"#;
        let f = GroupFile::from_json(text).unwrap();
        let g = f.group().unwrap();
        let back = GroupFile::from_group(&g);
        assert_eq!(back, f);
        assert_eq!(GroupFile::from_json(&back.to_json()).unwrap(), f);
    }

    #[test]
    fn rejects_unknown_schema() {
        let text = r#"{"schema_version":9,"p":5,"n":2,"d":2,"generators":[]}"#;
        assert!(GroupFile::from_json(text).is_err());
    }
}
