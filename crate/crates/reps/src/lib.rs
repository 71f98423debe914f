//! Highest-weight modules, their unitary structure, and Peter-Weyl on
//! finite truncations.

pub mod hwmodules;
pub mod peterweyl;

pub use hwmodules::{freudenthal_multiplicities, weyl_dimension, Generators, WeightModule};
pub use peterweyl::{FourierImage, MatrixCoefficient, Truncation};
