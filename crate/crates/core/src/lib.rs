//! Locally repairable codes over small finite fields: exact field and
//! linear-algebra kernels, code analysis (distance, locality, optimality),
//! closed-form bounds, constructions and local repair.

pub mod bounds;
pub mod code;
pub mod construct;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod recovery;
pub mod search;

pub use code::{
    analyze, classify, classify_optimality, CodeProfile, LinearCode, Optimality, RecoverySet, SearchOptions,
};
pub use error::{Error, Result};
pub use field::{make_field, Field, FieldElement, FieldRef};
pub use linalg::Matrix;
