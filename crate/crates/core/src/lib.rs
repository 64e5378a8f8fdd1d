//! Symbolic geometry of three-dimensional Lorentzian Walker metrics and
//! verification of Ricci solitons on them.

pub mod expr;
pub mod geometry;
pub mod numeric;
pub mod soliton;
