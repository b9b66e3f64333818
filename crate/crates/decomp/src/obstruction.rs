//! Prefix/suffix obstruction pairs `C^±`, the good words `G(C^±, M)` they
//! leave, persistence and the complete-list gluing bound `τ(M)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use symdyn_core::{enumerate_up_to, Error, Oracle, Result, Word, WordSet};

use crate::verdict::Verdict;

/// Obstructions `C^-` (checked on prefixes) and `C^+` (checked on suffixes)
/// with a threshold `M` and the certified bounds `τ(M)`.
#[derive(Clone, Debug)]
pub struct ObstructionPair {
    pub cminus: WordSet,
    pub cplus: WordSet,
    pub m: usize,
    pub tau_of_m: BTreeMap<usize, usize>,
    /// Set once [`check_persistence`] has passed.
    pub persistent: bool,
}

impl ObstructionPair {
    pub fn new(cminus: WordSet, cplus: WordSet, m: usize) -> Self {
        Self { cminus, cplus, m, tau_of_m: BTreeMap::new(), persistent: false }
    }

    /// `C^- = C^+ = ∅`.
    pub fn empty(lang: Oracle, m: usize) -> Self {
        Self::new(WordSet::nothing(lang.clone()), WordSet::nothing(lang), m)
    }

    pub fn oracle(&self) -> &Oracle {
        self.cminus.oracle()
    }

    pub fn with_threshold(mut self, m: usize) -> Self {
        self.m = m;
        self
    }
}

/// Whether `w` avoids `C^-` on prefixes and `C^+` on suffixes of length `≥ m`.
pub(crate) fn avoids_long(cminus: &WordSet, cplus: &WordSet, m: usize, w: &[u8]) -> bool {
    let n = w.len();
    (m.max(1)..=n).all(|i| !cminus.accepts_admissible(&w[..i]) && !cplus.accepts_admissible(&w[n - i..]))
}

/// `G(C^±, M)`: words none of whose prefixes of length `i ≥ M` lie in `C^-`
/// and none of whose suffixes of length `i ≥ M` lie in `C^+`.
pub fn good_words_from_obstructions(pair: &ObstructionPair) -> WordSet {
    let (cminus, cplus, m) = (pair.cminus.clone(), pair.cplus.clone(), pair.m);
    WordSet::filtered(pair.oracle().clone(), format!("G(C±,{m})"), move |w| avoids_long(&cminus, &cplus, m, w))
}

/// Persistence: `vw ∈ C^+ ⇒ v ∈ C^+` and `vw ∈ C^- ⇒ w ∈ C^-` for nonempty
/// `v, w` with `|vw| ≤ n`. Witnesses are `(piece, vw)` where `piece` should
/// have been an obstruction.
pub fn check_persistence(pair: &ObstructionPair, n: usize) -> Result<Verdict> {
    let words = enumerate_up_to(pair.oracle().as_ref(), n)?.concat();
    let mut verdict = Verdict::new("persistence", n);
    let mut plus_failures = 0usize;
    let mut minus_failures = 0usize;
    for x in &words {
        let (plus, minus) = (pair.cplus.accepts_admissible(x), pair.cminus.accepts_admissible(x));
        for i in 1..x.len() {
            let (v, w) = (&x[..i], &x[i..]);
            if plus && !pair.cplus.accepts_admissible(v) {
                plus_failures += 1;
                verdict.fail(vec![Word::from(v), Word::from(x.as_slice())]);
            }
            if minus && !pair.cminus.accepts_admissible(w) {
                minus_failures += 1;
                verdict.fail(vec![Word::from(w), Word::from(x.as_slice())]);
            }
        }
    }
    verdict.set_parameter("plus_failures", plus_failures);
    verdict.set_parameter("minus_failures", minus_failures);
    Ok(verdict)
}

/// Minimal gluing bounds for the complete-list condition at each `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompleteList {
    pub verdict: Verdict,
    /// `τ(M)` when every pair glued within `tau_cap`.
    pub tau: BTreeMap<usize, Option<usize>>,
}

/// For each `M`, the least `τ` such that every pair `v, w ∈ G(C^±, M)_{≤n}`
/// has `u ∈ L_{≤τ}` with `vuw ∈ L`. Pairs needing more than `tau_cap` fail.
#[allow(non_snake_case)]
pub fn check_complete_list_Istar(
    pair: &ObstructionPair,
    m_list: &[usize],
    n: usize,
    tau_cap: usize,
) -> Result<CompleteList> {
    if m_list.is_empty() {
        return Err(Error::InvalidInput("no thresholds M given".into()));
    }
    let lang = pair.oracle().clone();
    let connectors = enumerate_up_to(lang.as_ref(), tau_cap)?.concat();
    let mut verdict = Verdict::new("[I*]", n).with_parameter("tau_cap", tau_cap);
    let mut tau = BTreeMap::new();
    let mut failing_m = Vec::new();
    for &m in m_list {
        let good = good_words_from_obstructions(&pair.clone().with_threshold(m)).nonempty_up_to(n)?;
        let rows: Vec<Vec<(usize, usize, Option<usize>)>> = good
            .par_iter()
            .enumerate()
            .map(|(a, v)| {
                good.iter()
                    .enumerate()
                    .map(|(b, w)| {
                        let found = connectors.iter().find(|u| lang.contains(&v.concat(u).concat(w)));
                        (a, b, found.map(|u| u.len()))
                    })
                    .collect()
            })
            .collect();
        let mut worst = Some(0);
        for (a, b, found) in rows.into_iter().flatten() {
            match found {
                Some(len) => worst = worst.map(|t: usize| t.max(len)),
                None => {
                    worst = None;
                    verdict.fail(vec![good[a].clone(), good[b].clone()]);
                }
            }
        }
        if worst.is_none() {
            failing_m.push(m);
        }
        tau.insert(m, worst);
    }
    let table: BTreeMap<String, Option<usize>> = tau.iter().map(|(m, t)| (m.to_string(), *t)).collect();
    verdict.set_parameter("tau_of_M", serde_json::to_value(table).expect("serialisable table"));
    verdict.set_parameter("failing_M", failing_m);
    Ok(CompleteList { verdict, tau })
}
