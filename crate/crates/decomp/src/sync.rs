//! Decomposition of a synchronised shift around a synchronising word `s`.

use rayon::prelude::*;
use symdyn_core::word::is_subword;
use symdyn_core::{enumerate_up_to, Error, Oracle, Result, Word, WordSet};

use crate::collections::TripleCollections;
use crate::verdict::Verdict;

/// Whether `vs, sw ∈ L ⇒ vsw ∈ L` for all `v, w ∈ L_{≤depth}`.
pub fn check_synchronising(lang: &Oracle, s: &[u8], depth: usize) -> Result<Verdict> {
    let words = enumerate_up_to(lang.as_ref(), depth)?.concat();
    let left: Vec<&Word> = words.iter().filter(|v| lang.contains(&v.concat(s))).collect();
    let right: Vec<&Word> = words.iter().filter(|w| lang.contains(&[s, w.as_slice()].concat())).collect();
    let failures: Vec<Vec<Vec<Word>>> = left
        .par_iter()
        .map(|v| {
            right
                .iter()
                .filter(|w| !lang.contains(&[v.as_slice(), s, w.as_slice()].concat()))
                .map(|w| vec![(*v).clone(), (*w).clone()])
                .collect()
        })
        .collect();
    let mut verdict = Verdict::new("synchronising", depth).with_parameter("s", lang.alphabet().render(s));
    for f in failures.into_iter().flatten() {
        verdict.fail(f);
    }
    Ok(verdict)
}

/// `G = L ∩ sL ∩ Ls`, `Cp = Cs = L \ LsL`, `τ = |c|` for the shortest
/// connector `c` with `scs ∈ L`, and `L = |s|`.
pub fn sync_decomposition(lang: &Oracle, s: &[u8], depth: usize) -> Result<TripleCollections> {
    if s.is_empty() || !lang.contains(s) {
        return Err(Error::NotInLanguage(lang.alphabet().render(s)));
    }
    let verdict = check_synchronising(lang, s, depth)?;
    if let Some(pair) = verdict.witnesses.first() {
        let render = |w: &Word| lang.alphabet().render(w);
        return Err(Error::NotSynchronising { v: render(&pair[0]), w: render(&pair[1]) });
    }
    let connector = enumerate_up_to(lang.as_ref(), depth)?
        .concat()
        .into_iter()
        .find(|c| lang.contains(&[s, c.as_slice(), s].concat()))
        .ok_or(Error::CertExhausted(depth))?;
    let sw = Word::from(s);
    let s1 = sw.clone();
    let g = WordSet::filtered(lang.clone(), "L ∩ sL ∩ Ls", move |w| w.starts_with(&s1) && w.ends_with(&s1));
    let s2 = sw.clone();
    let avoid = WordSet::prefix_closed(lang.clone(), "L \\ LsL", move |w| !is_subword(&s2, w));
    Ok(TripleCollections::new(avoid.clone(), g, avoid, connector.len()).with_l_param(sw.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{digits, Potential};
    use symdyn_models::{binary_sft, full_shift};

    use crate::collections::{obstruction_complement, pressure_gap_II};
    use crate::spec::{check_spec_I, check_stay_good_III, StayGood};

    fn golden() -> Oracle {
        Arc::new(binary_sft(&["11"]).unwrap())
    }

    #[test]
    fn golden_mean_around_zero() {
        let l = golden();
        let c = sync_decomposition(&l, &digits("0"), 10).unwrap();
        assert_eq!(c.tau, 0);
        let comp = obstruction_complement(&c, 10).unwrap();
        assert_eq!(comp.counts[1], 1);
        assert!(comp.set.contains(&digits("1")));
        assert!(comp.counts[2..].iter().all(|&k| k == 0));
        assert!(check_spec_I(&c, 7).unwrap().pass);
        assert!(check_stay_good_III(&c, 10, StayGood::Both).unwrap().pass);
        let gap = pressure_gap_II(&c, &Potential::zero(2), 12, 0.05).unwrap();
        assert!(gap.verdict.pass);
    }

    #[test]
    fn every_symbol_of_the_golden_mean_synchronises() {
        let l = golden();
        assert!(check_synchronising(&l, &digits("1"), 10).unwrap().pass);
        let c = sync_decomposition(&l, &digits("1"), 10).unwrap();
        assert_eq!(c.tau, 1);
    }

    #[test]
    fn full_shift_symbols_synchronise() {
        let l: Oracle = Arc::new(full_shift(2));
        assert!(sync_decomposition(&l, &digits("1"), 6).is_ok());
    }

    #[test]
    fn non_synchronising_word_gives_witness() {
        let l: Oracle = Arc::new(binary_sft(&["111"]).unwrap());
        match sync_decomposition(&l, &digits("1"), 4) {
            Err(Error::NotSynchronising { v, w }) => {
                assert!(!l.contains(&digits(&v).concat(&[1]).concat(&digits(&w))));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
