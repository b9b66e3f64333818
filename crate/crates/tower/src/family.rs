//! Families `F` with free concatenation, their irreducible elements
//! `I = F \ FF` and the obstruction set `D(I)` of generator subwords.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::{json, Value};
use symdyn_core::{enumerate_up_to, Result, Word, WordSet};
use symdyn_decomp::Verdict;

use crate::triple::SyncTriple;

/// `F` (nonempty words only), `I = F \ FF` and the gcd of the lengths of
/// `F`-words up to `depth`.
#[derive(Clone, Debug)]
pub struct FreeFamily {
    pub f: WordSet,
    pub i: WordSet,
    pub gcd_lengths: usize,
    pub depth: usize,
}

fn irreducibles_of(f: &WordSet) -> WordSet {
    let inner = f.clone();
    WordSet::filtered(f.oracle().clone(), format!("I({})", f.label()), move |w| {
        !w.is_empty()
            && inner.accepts_admissible(w)
            && (1..w.len()).all(|i| !(inner.accepts_admissible(&w[..i]) && inner.accepts_admissible(&w[i..])))
    })
    .cached()
}

impl FreeFamily {
    /// A user-supplied `F`; ε is never a member.
    pub fn from_set(f: &WordSet, depth: usize) -> Result<Self> {
        let inner = f.clone();
        let f = WordSet::filtered(f.oracle().clone(), f.label().to_string(), move |w| {
            !w.is_empty() && inner.accepts_admissible(w)
        })
        .cached();
        let i = irreducibles_of(&f);
        let gcd_lengths = f.nonempty_up_to(depth)?.iter().fold(0, |d, w| num_integer::gcd(d, w.len()));
        Ok(Self { f, i, gcd_lengths, depth })
    }

    /// `F = I^* \ {ε}` for generators `I`.
    pub fn generated_by(i: &WordSet, depth: usize) -> Result<Self> {
        let star = i.star();
        let f = WordSet::filtered(i.oracle().clone(), format!("({})+", i.label()), move |w| {
            !w.is_empty() && star.accepts_admissible(w)
        });
        Self::from_set(&f, depth)
    }

    /// `I_{≤depth}` in shortlex order.
    pub fn irreducibles(&self) -> Result<Vec<Word>> {
        self.i.nonempty_up_to(self.depth)
    }

    pub fn to_json(&self) -> Result<Value> {
        let alphabet = self.f.oracle().alphabet();
        let irr: Vec<String> = self.irreducibles()?.iter().map(|w| alphabet.render(w)).collect();
        Ok(json!({
            "F": self.f.label(),
            "depth": self.depth,
            "gcd_lengths": self.gcd_lengths,
            "irreducibles": irr,
        }))
    }
}

/// `F^{r,c,s} = c(sL ∩ Lr ∩ G)`.
pub fn build_free_family(triple: &SyncTriple, g: &WordSet, depth: usize) -> Result<FreeFamily> {
    let (r, c, s) = (triple.r.clone(), triple.c.clone(), triple.s.clone());
    let alphabet = g.oracle().alphabet();
    let label = format!("c(sL∩Lr∩G), r={} c={} s={}", alphabet.render(&r), alphabet.render(&c), alphabet.render(&s));
    let gi = g.clone();
    let f = WordSet::filtered(g.oracle().clone(), label, move |w| {
        w.starts_with(&c) && {
            let b = &w[c.len()..];
            !b.is_empty() && b.starts_with(&s) && b.ends_with(&r) && gi.accepts_admissible(b)
        }
    });
    FreeFamily::from_set(&f, depth)
}

/// [I₀] on `F_{≤n}`: `vw ∈ F` for every pair. Witnesses are `(v, w)`.
pub fn check_free_concatenation(family: &FreeFamily, n: usize) -> Result<Verdict> {
    let words = family.f.nonempty_up_to(n)?;
    let failures: Vec<(usize, usize)> = words
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, v)| {
            let f = &family.f;
            let words = &words;
            (0..words.len()).filter(move |&b| !f.contains(&v.concat(&words[b]))).map(move |b| (a, b))
        })
        .collect();
    let mut verdict = Verdict::new("[I0]", n).with_parameter("members", words.len());
    for (a, b) in failures {
        verdict.fail(vec![words[a].clone(), words[b].clone()]);
    }
    Ok(verdict)
}

/// Every `w ∈ F_{≤n}` factors into irreducibles and `I ∩ II = ∅`.
pub fn check_irreducible_code(family: &FreeFamily, n: usize) -> Result<Verdict> {
    let irr: BTreeSet<Word> = family.i.nonempty_up_to(n)?.into_iter().collect();
    let mut verdict = Verdict::new("I = F \\ FF", n).with_parameter("irreducibles", irr.len());
    for w in family.f.nonempty_up_to(n)? {
        if crate::decipher::count_factorisations(&w, &irr) == 0 {
            verdict.fail(vec![w.clone()]);
        }
    }
    for w in &irr {
        let doubled = (1..w.len()).any(|i| irr.contains(&Word::from(&w[..i])) && irr.contains(&Word::from(&w[i..])));
        if doubled {
            verdict.fail(vec![w.clone()]);
        }
    }
    Ok(verdict)
}

/// `rw ∈ G` for `w ∈ F_{≤n}`, and for `w ∈ G_{≤n}` some `u, v ∈ L_{≤τ}` with
/// `csuwvr ∈ F`.
pub fn check_gibbs_hook(family: &FreeFamily, triple: &SyncTriple, g: &WordSet, tau: usize, n: usize) -> Result<Verdict> {
    let lang = g.oracle().clone();
    let conns = enumerate_up_to(lang.as_ref(), tau)?.concat();
    let mut verdict = Verdict::new("F ~ G extension", n).with_parameter("tau", tau);
    for w in family.f.nonempty_up_to(n)? {
        if !g.contains(&triple.r.concat(&w)) {
            verdict.fail(vec![triple.r.clone(), w]);
        }
    }
    let cs = triple.c.concat(&triple.s);
    for w in g.nonempty_up_to(n)? {
        let found = conns.iter().any(|u| {
            conns.iter().any(|v| family.f.contains(&cs.concat(u).concat(&w).concat(v).concat(&triple.r)))
        });
        if !found {
            verdict.fail(vec![w]);
        }
    }
    Ok(verdict)
}

/// `D(I)`: every subword (ε included) of a generator in `I_{≤depth}`.
pub fn generator_obstruction_set(i: &WordSet, depth: usize) -> Result<WordSet> {
    let mut subwords = BTreeSet::new();
    for w in i.nonempty_up_to(depth)? {
        for a in 0..=w.len() {
            for b in a..=w.len() {
                subwords.insert(Word::from(&w[a..b]));
            }
        }
    }
    subwords.insert(Word::empty());
    Ok(WordSet::explicit(i.oracle().clone(), format!("D({})", i.label()), subwords))
}
