//! Concrete shift spaces as language oracles.

pub mod beta;
pub mod cocyclic;
pub mod coded;
pub mod factor;
pub mod sft;
pub mod sgap;

pub use beta::{beta_shift, quasi_greedy_expansion, BetaShift, BetaSpec};
pub use cocyclic::{cocyclic_shift, CocyclicShift, CocyclicSpec};
pub use coded::{coded_shift, CodedShift, CodedSpec};
pub use factor::{sliding_block_factor, BlockCode, Factor};
pub use sft::{binary_sft, cycle_sft, full_shift, perron_root, sft_entropy_exact, sft_from_forbidden, Sft, SftSpec};
pub use sgap::{s_gap_shift, GapSet, SGapShift, SGapSpec};
