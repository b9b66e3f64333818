//! Synchronising times `S(w)` of a triple inside a word and the collection
//! `E` of words without one.

use symdyn_core::{Potential, Result, Word, WordSet};
use symdyn_thermo::partition_sum;

use crate::triple::SyncTriple;

/// Uniform: only the occurrence of `rcs`. NonUniform: also `w_{[1,i]} ∈ G`
/// and `w_{(i+|c|,|w|]} ∈ G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyncMode {
    Uniform,
    NonUniform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncTimes {
    /// 1-based times `i` with `w_{(i−|r|, i+|cs|]} = rcs`.
    pub times: Vec<usize>,
    pub in_e: bool,
}

pub fn sync_times(w: &[u8], triple: &SyncTriple, g: &WordSet, mode: SyncMode) -> SyncTimes {
    let rcs = triple.rcs();
    let (r, c, cs) = (triple.r.len(), triple.c.len(), triple.c.len() + triple.s.len());
    let n = w.len();
    let times: Vec<usize> = if n < rcs.len() {
        Vec::new()
    } else {
        (r..=n - cs)
            .filter(|&i| w[i - r..i + cs] == rcs[..])
            .filter(|&i| mode == SyncMode::Uniform || (g.contains(&w[..i]) && g.contains(&w[i + c..])))
            .collect()
    };
    SyncTimes { in_e: times.is_empty(), times }
}

/// `E = {w ∈ L : S(w) = ∅}` (uniform) or `{w ∈ G : S(w) = ∅}` (non-uniform).
pub fn e_set(triple: &SyncTriple, g: &WordSet, mode: SyncMode) -> WordSet {
    let (t, gi) = (triple.clone(), g.clone());
    let label = match mode {
        SyncMode::Uniform => "E (uniform)",
        SyncMode::NonUniform => "E (non-uniform)",
    };
    WordSet::filtered(g.oracle().clone(), label, move |w| {
        (mode == SyncMode::Uniform || gi.accepts_admissible(w)) && sync_times(w, &t, &gi, mode).in_e
    })
}

/// `Λ_n(E, φ) / Λ_n(L, φ)` for `n ∈ [lo, hi]`.
pub fn e_fraction(
    triple: &SyncTriple,
    g: &WordSet,
    pot: &Potential<f64>,
    mode: SyncMode,
    lo: usize,
    hi: usize,
) -> Result<Vec<(usize, f64)>> {
    let e = e_set(triple, g, mode);
    let l = WordSet::language(g.oracle().clone());
    (lo..=hi)
        .map(|n| {
            let (a, b) = (partition_sum(&e, pot, n)?, partition_sum(&l, pot, n)?);
            Ok((n, (a.ln() - b.ln()).exp()))
        })
        .collect()
}

/// Occurrence-free check used by reports: the pattern `rcs` itself.
pub fn pattern(triple: &SyncTriple) -> Word {
    triple.rcs()
}
