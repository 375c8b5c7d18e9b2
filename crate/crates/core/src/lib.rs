//! Executable checks for linearly distributive and star-autonomous categories
//! over finite, exactly decidable backends, together with comonads on them,
//! their Eilenberg–Moore categories and the lifting of tensors, linear
//! distributions and negations.

pub mod algebra;
pub mod comonad;
pub mod em;
pub mod error;
pub mod field;
pub mod instances;
pub mod kernel;
pub mod lindist;
pub mod matrix;
pub mod report;
pub mod star;
pub mod star_comonad;
pub mod suite;

pub use error::{Error, Result};
