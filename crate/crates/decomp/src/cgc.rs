//! Building `Cp`, `G`, `Cs` from a persistent obstruction pair with a
//! complete-list bound, by a deterministic scan over `(M, N)`.

use serde_json::{json, Value};
use symdyn_core::{enumerate_up_to, Error, Oracle, Potential, Result, WordSet};
use symdyn_thermo::DEFAULT_DELTA;

use crate::collections::{pressure_gap_II, Decomposition, GapReport, TripleCollections};
use crate::obstruction::{check_complete_list_Istar, check_persistence, CompleteList, ObstructionPair};

#[derive(Clone, Debug, PartialEq)]
pub struct CgcParams {
    /// Candidate thresholds `M`, scanned in the given order.
    pub m_grid: Vec<usize>,
    /// Candidate thresholds `N`, scanned in the given order for each `M`.
    pub n_grid: Vec<usize>,
    /// Working depth for every finite check and pressure table.
    pub depth: usize,
    /// Longest connector tried when certifying `τ(M)`.
    pub tau_cap: usize,
    pub delta: f64,
}

impl Default for CgcParams {
    fn default() -> Self {
        Self { m_grid: (1..=4).collect(), n_grid: (1..=6).collect(), depth: 10, tau_cap: 6, delta: DEFAULT_DELTA }
    }
}

/// The constructed collections together with the intermediate sets.
#[derive(Clone, Debug)]
pub struct CgcConstruction {
    pub collections: TripleCollections,
    pub m: usize,
    pub n: usize,
    pub tau: usize,
    /// The input pair with `τ(M)` recorded and persistence confirmed.
    pub pair: ObstructionPair,
    pub dminus: WordSet,
    pub dplus: WordSet,
    pub gap: GapReport,
    pub complete_list: CompleteList,
    /// Every `(M, N)` tried before acceptance, with its margin outcome.
    pub scanned: Vec<(usize, usize, bool)>,
}

fn long(set: &WordSet, w: &[u8], min: usize) -> bool {
    w.len() >= min && set.accepts_admissible(w)
}

/// `D^-` (`wx ∈ C^-`) or `D^+` (`xw ∈ C^+`) for some `x ∈ L_{≤reach}`.
fn extension_set(lang: &Oracle, c: &WordSet, reach: usize, append: bool, label: &str) -> Result<WordSet> {
    let xs = enumerate_up_to(lang.as_ref(), reach)?.concat();
    let c = c.clone();
    let set = WordSet::filtered(lang.clone(), label, move |w| {
        xs.iter().any(|x| {
            let joined = if append { [w, x.as_slice()].concat() } else { [x.as_slice(), w].concat() };
            c.contains(&joined)
        })
    });
    Ok(set.cached())
}

fn build(pair: &ObstructionPair, m: usize, n: usize, tau: usize) -> Result<(TripleCollections, WordSet, WordSet)> {
    let lang = pair.oracle().clone();
    let dminus = extension_set(&lang, &pair.cminus, tau + m, true, "D-")?;
    let dplus = extension_set(&lang, &pair.cplus, tau + m, false, "D+")?;
    let cp = pair.cminus.at_least(m).union(&dplus.at_least(n)).star().relabel(format!("(C-_≥{m} ∪ D+_≥{n})*"));
    let cs = pair.cplus.at_least(m).union(&dminus.at_least(n)).star().relabel(format!("(C+_≥{m} ∪ D-_≥{n})*"));
    let (cminus, cplus, dm, dp) = (pair.cminus.clone(), pair.cplus.clone(), dminus.clone(), dplus.clone());
    let g = WordSet::filtered(lang, format!("G(M={m},N={n})"), move |w| {
        let len = w.len();
        if dp.accepts_admissible(w) || dm.accepts_admissible(w) {
            return false;
        }
        let c_ok = (m.max(1)..=len).all(|i| !cminus.accepts_admissible(&w[..i]) && !cplus.accepts_admissible(&w[len - i..]));
        let d_ok = (n.max(1)..=len).all(|i| !dp.accepts_admissible(&w[..i]) && !dm.accepts_admissible(&w[len - i..]));
        c_ok && d_ok
    });
    let collections = TripleCollections::new(cp.cached(), g.cached(), cs.cached(), tau).with_l_param(n);
    Ok((collections, dminus, dplus))
}

/// Requires persistence and a certified `τ(M)` at the working depth, then
/// takes the first `(M, N)` in grid order whose collections pass the margin
/// rule for `Cp ∪ Cs ∪ (L \ CpGCs)`.
pub fn cgc_construct(pair: &ObstructionPair, pot: &Potential<f64>, params: &CgcParams) -> Result<CgcConstruction> {
    let persistence = check_persistence(pair, params.depth)?;
    if !persistence.pass {
        return Err(Error::InvalidInput(format!(
            "obstructions are not persistent at depth {} ({} failures)",
            params.depth, persistence.failures
        )));
    }
    let complete_list = check_complete_list_Istar(pair, &params.m_grid, params.depth, params.tau_cap)?;
    let mut scanned = Vec::new();
    for &m in &params.m_grid {
        let Some(tau) = complete_list.tau[&m] else { continue };
        for &n in &params.n_grid {
            let (collections, dminus, dplus) = build(pair, m, n, tau)?;
            let gap = pressure_gap_II(&collections, pot, params.depth, params.delta)?;
            scanned.push((m, n, gap.verdict.pass));
            if gap.verdict.pass {
                let mut pair = pair.clone();
                pair.tau_of_m.insert(m, tau);
                pair.persistent = true;
                return Ok(CgcConstruction {
                    collections,
                    m,
                    n,
                    tau,
                    pair,
                    dminus,
                    dplus,
                    gap,
                    complete_list,
                    scanned,
                });
            }
        }
    }
    Err(Error::NoValidParameters(params.depth))
}

impl CgcConstruction {
    fn left_piece(&self, v: &[u8]) -> bool {
        long(&self.pair.cminus, v, self.m) || long(&self.dplus, v, self.n)
    }

    fn right_piece(&self, v: &[u8]) -> bool {
        long(&self.pair.cplus, v, self.m) || long(&self.dminus, v, self.n)
    }

    /// Strips shortest left pieces, then shortest right pieces, until none
    /// remains; the middle is left in `G ∪ D^+ ∪ D^-`.
    pub fn greedy_decompose(&self, w: &[u8]) -> Decomposition {
        let mut start = 0;
        while let Some(i) = (start + 1..=w.len()).find(|&i| self.left_piece(&w[start..i])) {
            start = i;
        }
        let mut end = w.len();
        while let Some(j) = (start..end).rev().find(|&j| self.right_piece(&w[j..end])) {
            end = j;
        }
        Decomposition { prefix_end: start, good_end: end }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "M": self.m,
            "N": self.n,
            "tau": self.tau,
            "collections": self.collections.to_json(),
            "gap": self.gap.to_json(),
            "scanned": self.scanned.iter().map(|(m, n, p)| json!({"M": m, "N": n, "pass": p})).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{digits, enumerate_language};
    use symdyn_models::{binary_sft, s_gap_shift, GapSet, SGapSpec};

    fn zeros(l: &Oracle) -> WordSet {
        WordSet::filtered(l.clone(), "0^k", |w| !w.is_empty() && w.iter().all(|&a| a == 0))
    }

    fn s_gap() -> Oracle {
        let s = GapSet::eventually_periodic([1, 2], 3, 3).unwrap();
        Arc::new(s_gap_shift(SGapSpec { s }).unwrap())
    }

    #[test]
    fn empty_obstructions_give_the_whole_language() {
        let l: Oracle = Arc::new(binary_sft(&["11"]).unwrap());
        let c = cgc_construct(&ObstructionPair::empty(l.clone(), 1), &Potential::zero(2), &CgcParams::default()).unwrap();
        assert_eq!((c.m, c.n, c.tau), (1, 1, 1));
        let all = WordSet::language(l.clone()).words_up_to(8).unwrap();
        assert_eq!(c.collections.g.words_up_to(8).unwrap(), all);
        assert_eq!(c.collections.cp.words_up_to(8).unwrap().concat(), vec![digits("")]);
        assert_eq!(c.collections.cs.words_up_to(8).unwrap().concat(), vec![digits("")]);
    }

    #[test]
    fn zero_runs_are_stripped_greedily() {
        let l = s_gap();
        let c = cgc_construct(&ObstructionPair::new(zeros(&l), zeros(&l), 1), &Potential::zero(2), &CgcParams::default())
            .unwrap();
        let t = c.m.min(c.n);
        let w = digits("000001010000");
        assert!(l.contains(&w));
        let d = c.greedy_decompose(&w);
        assert_eq!(d.prefix_end, t * (5 / t));
        assert_eq!(d.good_end, w.len() - t * (4 / t));
        for n in 1..=9 {
            for w in enumerate_language(l.as_ref(), n).unwrap() {
                let d = c.greedy_decompose(&w);
                let (p, mid, s) = d.pieces(&w);
                assert!(c.collections.cp.contains(p) && c.collections.cs.contains(s));
                assert!(c.collections.g.contains(mid) || c.dplus.contains(mid) || c.dminus.contains(mid));
            }
        }
    }

    #[test]
    fn good_words_avoid_long_zero_ends() {
        let l = s_gap();
        let c = cgc_construct(&ObstructionPair::new(zeros(&l), zeros(&l), 1), &Potential::zero(2), &CgcParams::default())
            .unwrap();
        let t = c.m.min(c.n);
        for w in c.collections.g.nonempty_up_to(10).unwrap() {
            let lead = w.iter().take_while(|&&a| a == 0).count();
            let trail = w.iter().rev().take_while(|&&a| a == 0).count();
            assert!(lead < t && trail < t && w.contains(&1), "{w:?}");
        }
    }

    #[test]
    fn impossible_margin_reports_no_parameters() {
        let l: Oracle = Arc::new(binary_sft(&["11"]).unwrap());
        let everything = WordSet::filtered(l.clone(), "L+", |w| !w.is_empty());
        let pair = ObstructionPair::new(everything.clone(), everything, 1);
        let params = CgcParams { m_grid: vec![1, 2], n_grid: vec![1, 2], depth: 8, ..CgcParams::default() };
        assert_eq!(cgc_construct(&pair, &Potential::zero(2), &params).unwrap_err(), Error::NoValidParameters(8));
    }
}
