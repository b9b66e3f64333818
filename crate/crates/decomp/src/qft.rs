//! Left and right constraint words, the obstruction pair behind
//! quasi-finite-type shifts.

use rayon::prelude::*;
use symdyn_core::{enumerate_up_to, Locality, Oracle, Result, Word, WordSet};

use crate::obstruction::ObstructionPair;

/// `C^ℓ` and `C^r` as word sets with their per-length members up to `n`.
#[derive(Clone, Debug)]
pub struct QftConstraints {
    pub left: WordSet,
    pub right: WordSet,
    pub left_table: Vec<Vec<Word>>,
    pub right_table: Vec<Vec<Word>>,
    /// Longest extension `v` tried.
    pub bound: usize,
    /// True when `bound` suffices at every length (window-local oracles).
    pub exact: bool,
}

impl QftConstraints {
    /// `C^+ = C^ℓ`, `C^- = C^r`.
    pub fn pair(&self, m: usize) -> ObstructionPair {
        ObstructionPair::new(self.right.clone(), self.left.clone(), m)
    }
}

/// Extension bound: one less than the window for window-local oracles,
/// otherwise `fallback` (depth-certified only).
pub fn extension_bound(lang: &Oracle, fallback: usize) -> (usize, bool) {
    match lang.locality() {
        Locality::Window(m) => (m.saturating_sub(1).max(1), true),
        _ => (fallback.min(lang.depth_limit()), false),
    }
}

/// `C^ℓ = {w : w_{[2,|w|]}v ∈ L, wv ∉ L for some v}` and
/// `C^r = {w : v w_{[1,|w|)} ∈ L, vw ∉ L for some v}` with `|v|` bounded by
/// [`extension_bound`] (fallback `n`).
pub fn qft_constraints(lang: &Oracle, n: usize) -> Result<QftConstraints> {
    let (bound, exact) = extension_bound(lang, n);
    let xs = std::sync::Arc::new(enumerate_up_to(lang.as_ref(), bound)?.concat());
    let (l1, x1) = (lang.clone(), xs.clone());
    let left = WordSet::filtered(lang.clone(), "C^l", move |w| {
        !w.is_empty()
            && x1.iter().any(|v| l1.contains(&[&w[1..], v.as_slice()].concat()) && !l1.contains(&[w, v.as_slice()].concat()))
    })
    .cached();
    let (l2, x2) = (lang.clone(), xs);
    let right = WordSet::filtered(lang.clone(), "C^r", move |w| {
        !w.is_empty()
            && x2.iter().any(|v| {
                l2.contains(&[v.as_slice(), &w[..w.len() - 1]].concat()) && !l2.contains(&[v.as_slice(), w].concat())
            })
    })
    .cached();
    let words = enumerate_up_to(lang.as_ref(), n)?;
    let split = |set: &WordSet| -> Vec<Vec<Word>> {
        words.par_iter().map(|ws| ws.iter().filter(|w| set.accepts_admissible(w)).cloned().collect()).collect()
    };
    let (left_table, right_table) = (split(&left), split(&right));
    Ok(QftConstraints { left, right, left_table, right_table, bound, exact })
}
