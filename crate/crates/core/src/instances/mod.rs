//! Instance files, generators, mutations and the interior-comonad search.

pub mod build;
pub mod corpus;
pub mod generate;
pub mod instance;
pub mod schema;
pub mod search;
