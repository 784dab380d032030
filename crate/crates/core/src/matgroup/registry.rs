use serde::{Deserialize, Serialize};

use super::checks::{ce_check, nc_check, riehm_probe, slgl_check, RiehmVerdict, SlGlVerdict};
use super::classify::classify_2dim;
use super::group::FiniteLevelGroup;
use super::mat::MatModPN;
use super::MatGroupError;

/// Inputs shared by all group checks.
pub struct GroupContext<'a> {
    pub group: &'a FiniteLevelGroup,
    /// Generators of the local (decomposition) subgroup, for the normal-closure check.
    pub local_generators: Option<&'a [MatModPN]>,
    /// Generators of a normal subgroup, for the scalar-or-open probe.
    pub subgroup_generators: Option<&'a [MatModPN]>,
    pub nc_depth: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: String,
    pub detail: serde_json::Value,
}

pub trait GroupCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError>;
}

fn report<T: Serialize>(check: &str, verdict: &str, detail: &T) -> CheckReport {
    CheckReport {
        check: check.to_string(),
        verdict: verdict.to_string(),
        detail: serde_json::to_value(detail).unwrap_or(serde_json::Value::Null),
    }
}

pub struct Classify;
pub struct SlGl;
pub struct NormalClosure;
pub struct CentralElement;
pub struct ScalarOrOpen;

impl GroupCheck for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError> {
        let r = classify_2dim(ctx.group)?;
        Ok(report(self.name(), r.verdict.as_str(), &r))
    }
}

impl GroupCheck for SlGl {
    fn name(&self) -> &'static str {
        "slgl"
    }
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError> {
        let v = slgl_check(ctx.group)?;
        let verdict = match v {
            SlGlVerdict::OpenCertified { .. } => "open_certified",
            SlGlVerdict::FailsSl => "fails_sl",
            SlGlVerdict::FailsDet => "fails_det",
        };
        Ok(report(self.name(), verdict, &v))
    }
}

impl GroupCheck for NormalClosure {
    fn name(&self) -> &'static str {
        "nc"
    }
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError> {
        let local = ctx.local_generators.ok_or(MatGroupError::MissingInput("local_generators"))?;
        let r = nc_check(ctx.group, local, ctx.nc_depth)?;
        Ok(report(self.name(), r.verdict(), &r))
    }
}

impl GroupCheck for CentralElement {
    fn name(&self) -> &'static str {
        "ce"
    }
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError> {
        let v = ce_check(ctx.group)?;
        let verdict = if v.is_certified() { "ce_certified" } else { "inconclusive" };
        Ok(report(self.name(), verdict, &v))
    }
}

impl GroupCheck for ScalarOrOpen {
    fn name(&self) -> &'static str {
        "riehm"
    }
    fn run(&self, ctx: &GroupContext<'_>) -> Result<CheckReport, MatGroupError> {
        let h = ctx.subgroup_generators.ok_or(MatGroupError::MissingInput("subgroup_generators"))?;
        let v = riehm_probe(ctx.group, h)?;
        let verdict = match v {
            RiehmVerdict::Scalar => "scalar",
            RiehmVerdict::OpenInG { .. } => "open_in_g",
            RiehmVerdict::Inconclusive { .. } => "inconclusive",
        };
        Ok(report(self.name(), verdict, &v))
    }
}

/// All group checks, in reporting order.
pub fn group_checks() -> Vec<Box<dyn GroupCheck>> {
    vec![Box::new(Classify), Box::new(SlGl), Box::new(NormalClosure), Box::new(CentralElement), Box::new(ScalarOrOpen)]
}

pub fn find_check(name: &str) -> Option<Box<dyn GroupCheck>> {
    group_checks().into_iter().find(|c| c.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        let names: Vec<_> = group_checks().iter().map(|c| c.name()).collect();
        assert_eq!(names, ["classify", "slgl", "nc", "ce", "riehm"]);
        assert!(find_check("nc").is_some());
        assert!(find_check("bogus").is_none());
    }
}
