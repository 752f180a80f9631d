pub mod cli;
pub mod error;
pub mod families;
pub mod fq;
pub mod grp;
pub mod par;
pub mod strata;
pub mod stringy;
pub mod symq;
pub mod verify;
pub mod vfun;

pub use error::{Error, Result};
