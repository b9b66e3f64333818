//! Gluing ([I], [I′]) and stay-good ([III], [III_a], [III_b]) checks on
//! good words up to a depth.

use rayon::prelude::*;
use symdyn_core::{enumerate_language, enumerate_up_to, Error, Result, Word, WordSet};

use crate::collections::TripleCollections;
use crate::verdict::Verdict;

/// Outcome for one pair `(v, w)`: the shortest connector length found.
fn glue_pairs(g: &WordSet, connectors: &[Word], n: usize) -> Result<Vec<(Word, Word, Option<usize>)>> {
    let good = g.nonempty_up_to(n)?;
    let rows: Vec<Vec<(Word, Word, Option<usize>)>> = good
        .par_iter()
        .map(|v| {
            good.iter()
                .map(|w| {
                    let found = connectors.iter().find(|u| g.contains(&v.concat(u).concat(w)));
                    (v.clone(), w.clone(), found.map(|u| u.len()))
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

fn gluing_verdict(condition: &str, c: &TripleCollections, connectors: &[Word], n: usize) -> Result<Verdict> {
    let pairs = glue_pairs(&c.g, connectors, n)?;
    let mut verdict = Verdict::new(condition, n).with_parameter("tau", c.tau).with_parameter("pairs", pairs.len());
    let mut longest = 0;
    for (v, w, found) in pairs {
        match found {
            Some(len) => longest = longest.max(len),
            None => verdict.fail(vec![v, w]),
        }
    }
    verdict.set_parameter("max_connector", longest);
    verdict.set_parameter("locality", format!("{:?}", c.oracle().locality()));
    Ok(verdict)
}

/// [I]: every pair `v, w ∈ G_{≤n}` glues as `vuw ∈ G` with `u ∈ L_{≤τ}`,
/// connectors tried in shortlex order.
#[allow(non_snake_case)]
pub fn check_spec_I(collections: &TripleCollections, n: usize) -> Result<Verdict> {
    let connectors = enumerate_up_to(collections.oracle().as_ref(), collections.tau)?.concat();
    gluing_verdict("[I]", collections, &connectors, n)
}

/// [I′]: as [I] with `|u| = τ` exactly.
#[allow(non_snake_case)]
pub fn check_strong_spec_Iprime(collections: &TripleCollections, n: usize) -> Result<Verdict> {
    let connectors = enumerate_language(collections.oracle().as_ref(), collections.tau)?;
    gluing_verdict("[I']", collections, &connectors, n)
}

/// Which conclusions of [III] to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StayGood {
    /// `v ∈ G` and `uvw ∈ G`.
    Both,
    /// [III_a]: `v ∈ G`.
    Overlap,
    /// [III_b]: `uvw ∈ G`.
    Union,
}

impl StayGood {
    fn label(self) -> &'static str {
        match self {
            StayGood::Both => "[III]",
            StayGood::Overlap => "[III_a]",
            StayGood::Union => "[III_b]",
        }
    }
}

/// [III]: for all `uvw ∈ L_{≤n}` with `|v| ≥ L` and `uv, vw ∈ G`, checks the
/// selected conclusions. Witnesses are `(u, v, w)`.
#[allow(non_snake_case)]
pub fn check_stay_good_III(collections: &TripleCollections, n: usize, variant: StayGood) -> Result<Verdict> {
    let l = collections
        .l_param
        .ok_or_else(|| Error::InvalidInput("the stay-good check needs the overlap parameter L".into()))?;
    let g = &collections.g;
    let words = enumerate_up_to(collections.oracle().as_ref(), n)?.concat();
    let failures: Vec<Vec<Vec<Word>>> = words
        .par_iter()
        .map(|x| {
            let mut out = Vec::new();
            let len = x.len();
            for a in 0..=len {
                for b in (a + l)..=len {
                    if !(g.contains(&x[..b]) && g.contains(&x[a..])) {
                        continue;
                    }
                    let overlap_ok = variant == StayGood::Union || g.contains(&x[a..b]);
                    let union_ok = variant == StayGood::Overlap || g.contains(x);
                    if !(overlap_ok && union_ok) {
                        out.push(vec![Word::from(&x[..a]), Word::from(&x[a..b]), Word::from(&x[b..])]);
                    }
                }
            }
            out
        })
        .collect();
    let mut verdict = Verdict::new(variant.label(), n).with_parameter("L", l);
    for f in failures.into_iter().flatten() {
        verdict.fail(f);
    }
    verdict.set_parameter("locality", format!("{:?}", collections.oracle().locality()));
    Ok(verdict)
}
