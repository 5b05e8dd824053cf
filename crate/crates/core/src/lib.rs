pub mod arith;
pub mod cardinal;
pub mod chain;
pub mod error;
pub mod formula;
pub mod group;
pub mod matrix;
pub mod oracle;
pub mod ppsolve;
pub mod purity;
pub mod subgroup;
pub mod symbolic;
pub mod ulm;
pub mod verify;

pub use error::{Error, Result};
