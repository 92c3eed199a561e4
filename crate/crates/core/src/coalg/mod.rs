//! Correlator symbols, their linear combinations and the cobracket.

pub mod cobracket;
pub mod lincomb;
pub mod symbol;

pub use cobracket::{cobracket, cobracket_tuple, cojacobi, truncated_cobracket};
pub use lincomb::{fmt_terms, LinComb, Tensor3, Wedge};
pub use symbol::{canonical, log, normalize, weight1_value, CorrSym, Gen};
