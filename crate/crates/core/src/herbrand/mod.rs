//! Exact Herbrand calculus for lower ramification filtrations, the cyclotomic oracle and
//! the jump bounds for p-adic Lie towers.

mod filtration;
mod oracle;
mod tower;

use thiserror::Error;

pub use filtration::{compose_check, quotient_filtration, Jump, LowerFiltration};
pub use oracle::{cyclotomic_filtration, cyclotomic_relative};
pub use tower::{
    fmt_rational, indexbound_tn, parse_rational, sen_bound, verify_bound1, Bound1Report, Bound1Verdict, IndexBound,
    LevelRatio, LevelStatus, SenBound, TowerData, TowerLevel, TOWER_SCHEMA_VERSION,
};

use crate::padic::PadicError;

#[derive(Debug, Error)]
pub enum HerbrandError {
    #[error("argument must be nonnegative")]
    NegativeArgument,
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("orders do not compose: whole {whole}, sub {sub}, quotient {quot}")]
    IncompatibleOrders { whole: u64, sub: u64, quot: u64 },
    #[error("subgroup data is not that of a normal subgroup: {0}")]
    NotNormalData(String),
    #[error("level {0} has too few jumps")]
    InsufficientJumps(u32),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
