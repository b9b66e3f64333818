//! Synchronising triples, free families and their irreducible generators,
//! unique decipherability, the countable-state tower over the generators,
//! loop sums at a base vertex and marking sets.

pub mod decipher;
pub mod family;
pub mod graph;
pub mod loops;
pub mod marking;
pub mod times;
pub mod triple;

pub use decipher::{count_factorisations, is_uniquely_decipherable, sardinas_patterson, Ambiguity, Decipherability};
pub use family::{
    build_free_family, check_free_concatenation, check_gibbs_hook, check_irreducible_code, generator_obstruction_set,
    FreeFamily,
};
pub use graph::{build_tower, TowerGraph};
pub use loops::{loop_sums, loop_sums_graph, spr_diagnostic, word_side_sums, LoopRow, LoopTable, SprReport};
pub use marking::{marking_analysis, MarkingReport};
pub use times::{e_fraction, e_set, sync_times, SyncMode, SyncTimes};
pub use triple::{
    aperiodicity_alpha, default_seeds, ensure_no_long_overlaps, find_sync_triple, is_periodic, long_overlap,
    SyncTriple,
};
