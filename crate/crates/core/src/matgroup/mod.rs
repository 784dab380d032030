//! Subgroups of GL_d(Z/p^n) for small d: enumeration, congruence layers, Lie shadows
//! and finite-level surrogates for openness and centrality conditions.

mod checks;
mod classify;
mod group;
mod io;
mod lie;
mod mat;
mod registry;

use thiserror::Error;

pub use checks::{
    ce_check, character_table, constant_det_twist, nc_check, riehm_probe, slgl_check, twist_element, CeVerdict,
    NcReport, RiehmVerdict, SlGlVerdict,
};
pub use classify::{classify_2dim, common_eigenlines, Caveat, Classification, ClassifyReport};
pub use group::{
    commutator_subgroup, contains_congruence, enumerate_group, normal_closure, FiniteLevelGroup,
    DEFAULT_ELEMENT_BUDGET,
};
pub use io::{GroupFile, GROUP_SCHEMA_VERSION};
pub use lie::{graded_piece, layer_vector, truncated_exp, truncated_log, LieShadow};
pub use mat::{inverse_mod_u64, Level, MatModPN, MAX_DIM};
pub use registry::{
    find_check, group_checks, CentralElement, CheckReport, Classify, GroupCheck, GroupContext, NormalClosure,
    ScalarOrOpen, SlGl,
};

use crate::padic::PadicError;

#[derive(Debug, Error)]
pub enum MatGroupError {
    #[error("bad level: {0}")]
    BadLevel(String),
    #[error("bad matrix: {0}")]
    BadMatrix(String),
    #[error("matrix is not invertible mod p")]
    NotInvertible,
    #[error("element budget of {0} exceeded; shrink n or raise the cap")]
    CapExceeded(usize),
    #[error("group has not been enumerated")]
    NotEnumerated,
    #[error("depth {k} outside 1..{n}")]
    DepthOutOfRange { k: u32, n: u32 },
    #[error("matrix is not congruent to 1 mod p")]
    NotProP,
    #[error("expected 2x2 matrices, got {0}x{0}")]
    WrongDimension(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("no character values supplied")]
    MissingCharacter,
    #[error("bad character: {0}")]
    BadCharacter(String),
    #[error("character values do not define a homomorphism (conflict at {0})")]
    InconsistentCharacter(String),
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error("group file: {0}")]
    Json(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
