//! Root data, root-category combinatorics and the integer-form Lie algebra
//! built from them.

pub mod chevalley;
pub mod error;
pub mod liealg;
pub mod mat;
pub mod rootcat;
pub mod rootdata;
pub mod scalar;
pub mod snf;

pub use error::{Error, Result};
pub use liealg::{CheckReport, LieAlgebra};
pub use rootcat::{ObjId, RootCategory};
pub use rootdata::{CartanDatum, LatticePair, RootSystem, Series};
