//! Chevalley groups and the compact real form built on top of the root
//! category Lie algebra.

pub mod chevgroup;
pub mod compactform;
pub mod trigpoly;

pub use chevgroup::{ChevalleyGroup, ExpPolyTable, GroupElement};
pub use compactform::CompactForm;
pub use trigpoly::TrigPoly;
