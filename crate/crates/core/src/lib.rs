//! Words over finite alphabets, language oracles, word collections and
//! locally constant potentials.
//!
//! Numerical types are generic over [`Scalar`] (implemented for `f32` and
//! `f64`); the `*F64`/`*F32` aliases below fix the precision.

pub mod accum;
pub mod alphabet;
pub mod error;
pub mod fmt;
pub mod language;
pub mod potential;
pub mod scalar;
pub mod word;
pub mod wordset;

pub use accum::ExpSum;
pub use alphabet::Alphabet;
pub use error::{Error, Result};
pub use language::{
    count_words, default_depth_guard, enumerate_language, enumerate_up_to, Language, Locality, Oracle,
    PredicateLanguage,
};
pub use potential::Potential;
pub use scalar::Scalar;
pub use word::{digits, Word};
pub use wordset::WordSet;

pub type PotentialF64 = Potential<f64>;
pub type PotentialF32 = Potential<f32>;
pub type ExpSumF64 = ExpSum<f64>;
pub type ExpSumF32 = ExpSum<f32>;
