//! Corners `aAa` of finite-dimensional algebras over prime fields: Jacobson
//! radicals, Wedderburn structure, socle ranks, regular elements and the
//! decomposition of `aAa` into ideals attached to the structure of `eAe`.

pub mod algebra;
pub mod context;
pub mod corner;
pub mod error;
pub mod format;
pub mod generators;
pub mod ledger;
pub mod linalg;
pub mod radical;
pub mod rank;
pub mod regular;
pub mod suite;
pub mod wedderburn;

pub use context::Ctx;
pub use error::{Error, Result};
