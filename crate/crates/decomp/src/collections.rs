//! Prefix/good/suffix collections, decompositions and the complement of
//! `Cp·G·Cs`.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use symdyn_core::{enumerate_language, Language, Oracle, Potential, Result, WordSet};
use symdyn_thermo::{margin_rule, pressure_estimate, MarginVerdict, PressureReport};

/// Prefixes `Cp`, good words `G` and suffixes `Cs` inside one language, with
/// the gluing bound `τ` and the overlap parameter `L`.
#[derive(Clone, Debug)]
pub struct TripleCollections {
    pub cp: WordSet,
    pub g: WordSet,
    pub cs: WordSet,
    pub tau: usize,
    pub l_param: Option<usize>,
}

/// Split `w = w_{[1,i]} · w_{(i,j]} · w_{(j,|w|]}` into `Cp`, `G`, `Cs` pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub prefix_end: usize,
    pub good_end: usize,
}

impl Decomposition {
    pub fn pieces<'a>(&self, w: &'a [u8]) -> (&'a [u8], &'a [u8], &'a [u8]) {
        (&w[..self.prefix_end], &w[self.prefix_end..self.good_end], &w[self.good_end..])
    }
}

impl TripleCollections {
    pub fn new(cp: WordSet, g: WordSet, cs: WordSet, tau: usize) -> Self {
        Self { cp, g, cs, tau, l_param: None }
    }

    pub fn with_l_param(mut self, l: usize) -> Self {
        self.l_param = Some(l);
        self
    }

    pub fn oracle(&self) -> &Oracle {
        self.g.oracle()
    }

    /// Memoises membership in all three sets.
    pub fn cached(&self) -> Self {
        Self { cp: self.cp.cached(), g: self.g.cached(), cs: self.cs.cached(), tau: self.tau, l_param: self.l_param }
    }

    /// The split with smallest prefix end, then largest good end. The middle
    /// piece may be empty only when `ε ∈ G`.
    pub fn decompose(&self, w: &[u8]) -> Option<Decomposition> {
        let n = w.len();
        let suffix_ok: Vec<bool> = (0..=n).map(|j| self.cs.contains(&w[j..])).collect();
        for i in 0..=n {
            if !self.cp.contains(&w[..i]) {
                continue;
            }
            for j in (i..=n).rev() {
                if suffix_ok[j] && self.g.contains(&w[i..j]) {
                    return Some(Decomposition { prefix_end: i, good_end: j });
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "Cp": self.cp.label(),
            "G": self.g.label(),
            "Cs": self.cs.label(),
            "tau": self.tau,
            "L": self.l_param,
        })
    }
}

/// Words of `L` with no decomposition, and their counts per length.
#[derive(Clone, Debug)]
pub struct ObstructionComplement {
    pub set: WordSet,
    pub counts: Vec<u64>,
}

/// `L \ Cp·G·Cs` as a word set, with counts for lengths `0..=n`.
pub fn obstruction_complement(collections: &TripleCollections, n: usize) -> Result<ObstructionComplement> {
    let c = Arc::new(collections.cached());
    let lang = c.oracle().clone();
    let inner = c.clone();
    let set = WordSet::filtered(lang.clone(), "L \\ CpGCs", move |w| inner.decompose(w).is_none());
    let mut counts = Vec::with_capacity(n + 1);
    for len in 0..=n {
        let words = enumerate_language(lang.as_ref(), len)?;
        counts.push(words.par_iter().filter(|w| c.decompose(w).is_none()).count() as u64);
    }
    Ok(ObstructionComplement { set, counts })
}

/// Pressure tables of `C = Cp ∪ Cs ∪ (L \ CpGCs)` and of `L`, judged by the
/// margin rule.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub obstructions: PressureReport<f64>,
    pub language: PressureReport<f64>,
    pub verdict: MarginVerdict<f64>,
}

impl GapReport {
    pub fn to_json(&self) -> Value {
        json!({
            "obstructions": self.obstructions.to_json(),
            "language": self.language.to_json(),
            "pass": self.verdict.pass,
            "delta": self.verdict.delta,
            "failing": self.verdict.failing,
        })
    }
}

#[allow(non_snake_case)]
pub fn pressure_gap_II(
    collections: &TripleCollections,
    pot: &Potential<f64>,
    n_max: usize,
    delta: f64,
) -> Result<GapReport> {
    let c = Arc::new(collections.cached());
    let lang = c.oracle().clone();
    let inner = c.clone();
    let obstructions = WordSet::filtered(lang.clone(), "Cp ∪ Cs ∪ (L \\ CpGCs)", move |w| {
        inner.cp.accepts_admissible(w) || inner.cs.accepts_admissible(w) || inner.decompose(w).is_none()
    });
    let obstructions = pressure_estimate(&obstructions, pot, n_max)?;
    let language = pressure_estimate(&WordSet::language(lang), pot, n_max)?;
    let verdict = margin_rule(&obstructions, &language, delta);
    Ok(GapReport { obstructions, language, verdict })
}

/// Re-checks that every piece of a reported decomposition lies in its set.
pub fn decomposition_is_sound(collections: &TripleCollections, w: &[u8], d: Decomposition) -> bool {
    let lang: &dyn Language = collections.oracle().as_ref();
    let (p, g, s) = d.pieces(w);
    d.prefix_end <= d.good_end
        && d.good_end <= w.len()
        && lang.contains(w)
        && collections.cp.contains(p)
        && collections.g.contains(g)
        && collections.cs.contains(s)
}
