//! `F`-marking sets of a finite window: boundary sets `J ∋ 0, |x|` with
//! `x_{[i,j)} ∈ F` for all `i < j` in `J`, and the maximal ones.

use serde_json::{json, Value};
use symdyn_core::Word;

use crate::family::FreeFamily;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingReport {
    pub window: Word,
    /// Maximal marking sets as 1-based boundary positions `1..=|x|+1`.
    pub maximal: Vec<Vec<usize>>,
    /// Number of spanning marking sets of any size.
    pub marking_sets: usize,
    /// Exactly one maximal set.
    pub injective: bool,
    /// The union of every two maximal sets is again marking.
    pub union_closed: bool,
}

impl MarkingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "window_length": self.window.len(),
            "maximal": self.maximal,
            "marking_sets": self.marking_sets,
            "injective": self.injective,
            "union_closed": self.union_closed,
        })
    }
}

fn marking(x: &[u8], j: &[usize], f: &FreeFamily) -> bool {
    j.iter().enumerate().all(|(a, &p)| j[a + 1..].iter().all(|&q| f.f.contains(&x[p..q])))
}

fn extend(x: &[u8], f: &FreeFamily, next: usize, set: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = x.len();
    if next == n {
        if set.iter().all(|&p| f.f.contains(&x[p..n])) {
            let mut done = set.clone();
            done.push(n);
            out.push(done);
        }
        return;
    }
    extend(x, f, next + 1, set, out);
    if set.iter().all(|&p| f.f.contains(&x[p..next])) {
        set.push(next);
        extend(x, f, next + 1, set, out);
        set.pop();
    }
}

/// Enumerates every spanning marking set and keeps those admitting no
/// further boundary. The empty window has the single set `{1}`.
pub fn marking_analysis(x: &[u8], family: &FreeFamily) -> MarkingReport {
    let n = x.len();
    let mut all = Vec::new();
    if n == 0 {
        all.push(vec![0]);
    } else {
        extend(x, family, 1, &mut vec![0], &mut all);
    }
    let maximal: Vec<Vec<usize>> = all
        .iter()
        .filter(|j| {
            (1..n).filter(|k| !j.contains(k)).all(|k| {
                let mut bigger = (*j).clone();
                bigger.push(k);
                bigger.sort_unstable();
                !marking(x, &bigger, family)
            })
        })
        .cloned()
        .collect();
    let union_closed = maximal.iter().enumerate().all(|(a, p)| {
        maximal[a + 1..].iter().all(|q| {
            let mut u: Vec<usize> = p.iter().chain(q).copied().collect();
            u.sort_unstable();
            u.dedup();
            marking(x, &u, family)
        })
    });
    MarkingReport {
        window: Word::from(x),
        injective: maximal.len() == 1,
        maximal: maximal.iter().map(|j| j.iter().map(|p| p + 1).collect()).collect(),
        marking_sets: all.len(),
        union_closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{digits, Oracle, WordSet};
    use symdyn_models::binary_sft;

    use crate::family::build_free_family;
    use crate::triple::SyncTriple;

    fn golden_family() -> FreeFamily {
        let l: Oracle = Arc::new(binary_sft(&["11"]).unwrap());
        let t = SyncTriple { r: digits("0"), c: digits(""), s: digits("0"), cert_depth: 10, no_long_overlaps: false };
        build_free_family(&t, &WordSet::language(l), 12).unwrap()
    }

    fn overlapping_family() -> FreeFamily {
        let l: Oracle = Arc::new(binary_sft(&["111"]).unwrap());
        FreeFamily::generated_by(&WordSet::explicit(l, "I", [digits("0"), digits("01"), digits("10")]), 12).unwrap()
    }

    #[test]
    fn zero_block_marks_everywhere() {
        let r = marking_analysis(&digits("00000000"), &golden_family());
        assert_eq!(r.maximal, vec![(1..=9).collect::<Vec<_>>()]);
        assert!(r.injective && r.union_closed);
        assert_eq!(r.marking_sets, 128);
    }

    #[test]
    fn repeated_010_has_several_parsings() {
        let r = marking_analysis(&digits("010").power(4), &overlapping_family());
        assert!(r.maximal.len() >= 2, "{:?}", r.maximal);
        assert!(!r.injective && !r.union_closed);
        for j in &r.maximal {
            for w in j.windows(2) {
                let piece = &digits("010").power(4)[w[0] - 1..w[1] - 1];
                assert!(["0", "01", "10"].iter().any(|s| digits(s).as_slice() == piece));
            }
        }
    }

    #[test]
    fn empty_window_has_one_set() {
        let r = marking_analysis(&[], &golden_family());
        assert_eq!(r.maximal, vec![vec![1]]);
        assert!(r.injective);
    }

    #[test]
    fn window_outside_the_family_has_none() {
        let r = marking_analysis(&digits("01"), &golden_family());
        assert!(r.maximal.is_empty() && !r.injective);
    }
}
