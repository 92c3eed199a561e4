//! Relation spaces R_n: the database of derived generators, derivations,
//! the weight-2 Bloch group and the verifiers of named identities.

pub mod bloch;
pub mod db;
pub mod ident;
pub mod linalg;
pub mod seed;
pub mod verify;

pub use bloch::{anharmonic, anharmonic_class, bloch_delta, five_term, map_l2, map_m2, BlochElem, FiveTermSpan};
pub use db::{Record, RelationDB};
pub use ident::{leg_tuples, Identity};
pub use linalg::{Echelon, GenKey};
pub use seed::{certify_with_elimination, derive_identity, eliminate, li2, log_legs, prepare, seed};
pub use verify::{
    bloch_legs, twenty_two_element, twenty_two_terms, verify_22_term, verify_distribution, verify_five_term,
    verify_identity, verify_reversal, verify_shuffle, Budget, Certificate,
};
