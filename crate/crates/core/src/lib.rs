pub mod serde_num;

pub mod padic;
pub mod matgroup;
pub mod herbrand;
pub mod heights;
pub mod certifier;
