pub mod cli;
pub mod cohoring;
pub mod error;
pub mod exactnum;
pub mod hypergeom;
pub mod invariants;
pub mod mirrormap;
pub mod oracle;

pub use error::{Error, Result};
