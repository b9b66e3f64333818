//! Finite-depth checkers and constructors for prefix/good/suffix
//! decompositions of shift languages: gluing and stay-good conditions,
//! obstruction pairs, the `(M, N)` construction of good words, left/right
//! constraint words and synchronised decompositions.

pub mod cgc;
pub mod collections;
pub mod obstruction;
pub mod qft;
pub mod spec;
pub mod sync;
pub mod verdict;

pub use cgc::{cgc_construct, CgcConstruction, CgcParams};
pub use collections::{
    decomposition_is_sound, obstruction_complement, pressure_gap_II, Decomposition, GapReport, ObstructionComplement,
    TripleCollections,
};
pub use obstruction::{
    check_complete_list_Istar, check_persistence, good_words_from_obstructions, CompleteList, ObstructionPair,
};
pub use qft::{extension_bound, qft_constraints, QftConstraints};
pub use spec::{check_spec_I, check_stay_good_III, check_strong_spec_Iprime, StayGood};
pub use sync::{check_synchronising, sync_decomposition};
pub use verdict::Verdict;
