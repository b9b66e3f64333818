//! Periodic points and φ-weighted periodic orbit measures.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use symdyn_core::fmt::sig17;
use symdyn_core::{enumerate_language, Error, ExpSum, Language, Locality, Potential, Result, Scalar, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPoints {
    pub period: usize,
    /// Words `p` with `p^∞` admissible, sorted.
    pub words: Vec<Word>,
    /// False when membership is not window-local and the answer is only
    /// certified by a finite repetition.
    pub exact: bool,
}

/// Repetitions of `p` that must be admissible for `p^∞` to count.
fn repetitions(lang: &dyn Language, p: usize) -> (usize, bool) {
    match lang.locality() {
        Locality::Window(m) => (m.div_ceil(p) + 1, true),
        _ => ((lang.depth_limit() + p).div_ceil(p), false),
    }
}

/// All length-`n` words whose bi-infinite repetition is admissible.
pub fn periodic_points(lang: &dyn Language, n: usize) -> Result<PeriodicPoints> {
    if n == 0 {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let (reps, exact) = repetitions(lang, n);
    let words = enumerate_language(lang, n)?.into_iter().filter(|p| lang.contains(&p.power(reps))).collect();
    Ok(PeriodicPoints { period: n, words, exact })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atom<S = f64> {
    pub word: Word,
    pub period: usize,
    pub weight: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicMeasure<S = f64> {
    pub n: usize,
    pub depth: usize,
    pub atoms: Vec<Atom<S>>,
    pub cylinder_weights: BTreeMap<Word, S>,
    pub exact: bool,
}

/// `μ_n` normalised over `Per_k`, `k ≤ n`, reported on cylinders of length `d`.
pub fn periodic_orbit_measure<S: Scalar>(
    lang: &dyn Language,
    pot: &Potential<S>,
    n: usize,
    d: usize,
) -> Result<PeriodicMeasure<S>> {
    if d == 0 || d > n {
        return Err(Error::InvalidInput("need 1 ≤ d ≤ n".into()));
    }
    let mut raw = Vec::new();
    let mut total = ExpSum::<S>::new();
    let mut exact = true;
    for k in 1..=n {
        let per = periodic_points(lang, k)?;
        exact &= per.exact;
        for p in per.words {
            let s = pot.cyclic_sum(&p);
            total.add_ln(s);
            raw.push((p, k, s));
        }
    }
    if total.is_empty() {
        return Err(Error::NoPeriodicPoints(n));
    }
    let z = total.ln();
    let mut sums: BTreeMap<Word, ExpSum<S>> = BTreeMap::new();
    let mut atoms = Vec::with_capacity(raw.len());
    for (p, k, s) in raw {
        let reps = d.div_ceil(k);
        let key = Word::from(&p.power(reps)[..d]);
        sums.entry(key).or_default().add_ln(s - z);
        atoms.push(Atom { word: p, period: k, weight: (s - z).exp() });
    }
    let cylinder_weights = sums.into_iter().map(|(w, e)| (w, e.value())).collect();
    Ok(PeriodicMeasure { n, depth: d, atoms, cylinder_weights, exact })
}

impl<S: Scalar> PeriodicMeasure<S> {
    pub fn weight(&self, w: &[u8]) -> S {
        self.cylinder_weights.get(&Word::from(w)).copied().unwrap_or_else(S::zero)
    }

    pub fn total(&self) -> S {
        let mut e = ExpSum::<S>::new();
        for v in self.cylinder_weights.values() {
            e.add_ln(v.ln());
        }
        e.value()
    }

    /// Largest violation of `μ[w] = Σ_a μ[wa] = Σ_a μ[aw]` at depth `d − 1`.
    pub fn invariance_defect(&self) -> S {
        let mut left: BTreeMap<Word, S> = BTreeMap::new();
        let mut right: BTreeMap<Word, S> = BTreeMap::new();
        for (w, &m) in &self.cylinder_weights {
            let l = left.entry(Word::from(&w[1..])).or_insert(S::zero());
            *l = *l + m;
            let r = right.entry(Word::from(&w[..w.len() - 1])).or_insert(S::zero());
            *r = *r + m;
        }
        let keys: std::collections::BTreeSet<&Word> = left.keys().chain(right.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let a = left.get(k).copied().unwrap_or(S::zero());
                let b = right.get(k).copied().unwrap_or(S::zero());
                (a - b).abs()
            })
            .fold(S::zero(), |x, y| x.max(y))
    }

    pub fn to_json(&self, render: impl Fn(&[u8]) -> String) -> Value {
        let weights: serde_json::Map<String, Value> =
            self.cylinder_weights.iter().map(|(w, v)| (render(w), Value::String(sig17(v.as_f64())))).collect();
        json!({
            "n": self.n,
            "depth": self.depth,
            "atoms": self.atoms.len(),
            "exact": self.exact,
            "cylinder_weights": weights,
        })
    }

    pub fn to_csv(&self, render: impl Fn(&[u8]) -> String) -> String {
        let mut out = String::from("cylinder,weight\n");
        for (w, v) in &self.cylinder_weights {
            out.push_str(&format!("{},{}\n", render(w), sig17(v.as_f64())));
        }
        out
    }
}
