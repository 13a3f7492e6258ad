pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod field_bath;
pub mod io;
pub mod sampling;
pub mod xstate;

pub use error::{Error, Result};
