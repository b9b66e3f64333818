//! Language oracles and their enumeration.
//!
//! A [`Language`] answers membership queries for finite words. Enumeration is
//! a depth-first walk over the prefix tree, which relies on factoriality: an
//! admissible word only has admissible prefixes. The walk visits every length
//! in lexicographic order, and the parallel variant splits the tree at a
//! fixed depth and merges the subtrees in prefix order so results do not
//! depend on the thread count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

/// How far membership answers can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Locality {
    /// Membership is decided by subwords of length at most the given window.
    Window(usize),
    /// Membership is exact at every length but not window-local.
    Exact,
    /// Membership is certified only up to the given length.
    Depth(usize),
}

impl Locality {
    pub fn window(&self) -> Option<usize> {
        match self {
            Locality::Window(m) => Some(*m),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Locality::Depth(_))
    }
}

/// Membership oracle for a factorial, extendable language containing ε.
pub trait Language: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    fn contains(&self, w: &[u8]) -> bool;

    /// Membership of `w` given that `w` without its last symbol is admissible.
    fn extends(&self, w: &[u8]) -> bool {
        self.contains(w)
    }

    /// Largest length this oracle agrees to enumerate.
    fn depth_limit(&self) -> usize;

    fn locality(&self) -> Locality;

    fn name(&self) -> String;
}

pub type Oracle = Arc<dyn Language>;

/// Default enumeration guard: about 2^24 words for the full shift on `k` letters.
pub fn default_depth_guard(k: usize) -> usize {
    if k <= 1 {
        return 1 << 20;
    }
    ((24.0 * std::f64::consts::LN_2) / (k as f64).ln()).floor().max(1.0) as usize
}

pub fn guard(lang: &dyn Language, n: usize) -> Result<()> {
    if n > lang.depth_limit() {
        return Err(Error::DepthExceeded { requested: n, limit: lang.depth_limit() });
    }
    Ok(())
}

fn dfs<K, F>(lang: &dyn Language, buf: &mut Vec<u8>, n_max: usize, keep: &K, visit: &mut F)
where
    K: Fn(&[u8]) -> bool + ?Sized,
    F: FnMut(&[u8]),
{
    visit(buf);
    if buf.len() >= n_max {
        return;
    }
    let k = lang.alphabet().size() as u8;
    for a in 0..k {
        buf.push(a);
        if lang.extends(buf) && keep(buf) {
            dfs(lang, buf, n_max, keep, visit);
        }
        buf.pop();
    }
}

/// Visits every admissible word of length ≤ `n_max` passing `keep`, in
/// lexicographic preorder starting with ε. `keep` must be prefix-closed.
pub fn walk<K, F>(lang: &dyn Language, n_max: usize, keep: &K, mut visit: F)
where
    K: Fn(&[u8]) -> bool + ?Sized,
    F: FnMut(&[u8]),
{
    let mut buf = Vec::with_capacity(n_max + 1);
    dfs(lang, &mut buf, n_max, keep, &mut visit);
}

/// Parallel fold over the same walk as [`walk`]. Words shorter than the split
/// depth go to the first accumulator; each subtree below the split depth gets
/// its own accumulator, and the accumulators are merged in lexicographic order
/// of their root prefixes.
pub fn par_fold<T, K, Mk, V, Mg>(
    lang: &dyn Language,
    n_max: usize,
    keep: &K,
    make: Mk,
    visit: V,
    merge: Mg,
) -> T
where
    T: Send,
    K: Fn(&[u8]) -> bool + Sync + ?Sized,
    Mk: Fn() -> T + Sync,
    V: Fn(&mut T, &[u8]) + Sync,
    Mg: Fn(&mut T, T),
{
    let k = lang.alphabet().size().max(2);
    let mut split = 0;
    let mut width = 1usize;
    while width < 256 && split < n_max {
        width = width.saturating_mul(k);
        split += 1;
    }
    let mut head = make();
    let mut roots = Vec::new();
    walk(lang, split, keep, |w| {
        if w.len() < split {
            visit(&mut head, w);
        } else {
            roots.push(w.to_vec());
        }
    });
    if split == 0 {
        return head;
    }
    let parts: Vec<T> = roots
        .into_par_iter()
        .map(|root| {
            let mut acc = make();
            let mut buf = root;
            dfs(lang, &mut buf, n_max, keep, &mut |w: &[u8]| visit(&mut acc, w));
            acc
        })
        .collect();
    for p in parts {
        merge(&mut head, p);
    }
    head
}

/// All admissible words of length `n`, sorted.
pub fn enumerate_language(lang: &dyn Language, n: usize) -> Result<Vec<Word>> {
    guard(lang, n)?;
    let mut out = Vec::new();
    walk(lang, n, &|_: &[u8]| true, |w| {
        if w.len() == n {
            out.push(Word::from(w));
        }
    });
    Ok(out)
}

/// Admissible words grouped by length `0..=n`.
pub fn enumerate_up_to(lang: &dyn Language, n: usize) -> Result<Vec<Vec<Word>>> {
    guard(lang, n)?;
    let mut out = vec![Vec::new(); n + 1];
    walk(lang, n, &|_: &[u8]| true, |w| out[w.len()].push(Word::from(w)));
    Ok(out)
}

/// `#L_m` for `m = 0..=n`.
pub fn count_words(lang: &dyn Language, n: usize) -> Result<Vec<u64>> {
    guard(lang, n)?;
    Ok(par_fold(
        lang,
        n,
        &|_: &[u8]| true,
        || vec![0u64; n + 1],
        |acc, w| acc[w.len()] += 1,
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
    ))
}

/// First admissible word (shortlex) with an inadmissible subword.
pub fn factoriality_violation(lang: &dyn Language, n: usize) -> Result<Option<Word>> {
    for layer in enumerate_up_to(lang, n)? {
        for w in layer {
            let bad = (0..w.len()).any(|i| (i + 1..=w.len()).any(|j| !lang.contains(&w[i..j])));
            if bad {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// First admissible word of length < `n` lacking a left or right extension.
pub fn extendability_violation(lang: &dyn Language, n: usize) -> Result<Option<Word>> {
    let k = lang.alphabet().size() as u8;
    let layers = enumerate_up_to(lang, n)?;
    for layer in layers.iter().take(n) {
        for w in layer {
            let right = (0..k).any(|a| lang.contains(&w.concat(&[a])));
            let left = (0..k).any(|a| lang.contains(&Word::from(vec![a]).concat(w)));
            if !right || !left {
                return Ok(Some(w.clone()));
            }
        }
    }
    Ok(None)
}

/// A language given by an arbitrary membership predicate; mostly for tests.
pub struct PredicateLanguage<F> {
    alphabet: Alphabet,
    pred: F,
    depth: usize,
    label: String,
}

impl<F: Fn(&[u8]) -> bool + Send + Sync> PredicateLanguage<F> {
    pub fn new(alphabet: Alphabet, depth: usize, label: impl Into<String>, pred: F) -> Self {
        Self { alphabet, pred, depth, label: label.into() }
    }
}

impl<F: Fn(&[u8]) -> bool + Send + Sync> Language for PredicateLanguage<F> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &[u8]) -> bool {
        (self.pred)(w)
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        Locality::Depth(self.depth)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{digits, is_subword};

    fn golden() -> PredicateLanguage<impl Fn(&[u8]) -> bool + Send + Sync> {
        PredicateLanguage::new(Alphabet::numeric(2), 20, "golden", |w: &[u8]| {
            !is_subword(&[1, 1], w)
        })
    }

    #[test]
    fn enumeration_is_sorted_and_filtered() {
        let l = golden();
        let ws = enumerate_language(&l, 3).unwrap();
        let expect: Vec<Word> = ["000", "001", "010", "100", "101"].iter().map(|s| digits(s)).collect();
        assert_eq!(ws, expect);
    }

    #[test]
    fn counts_follow_fibonacci() {
        let c = count_words(&golden(), 12).unwrap();
        let mut fib = vec![1u64, 2];
        while fib.len() < 13 {
            let n = fib.len();
            fib.push(fib[n - 1] + fib[n - 2]);
        }
        assert_eq!(c, fib);
    }

    #[test]
    fn guard_rejects_deep_requests() {
        let l = golden();
        assert_eq!(
            enumerate_language(&l, 21),
            Err(Error::DepthExceeded { requested: 21, limit: 20 })
        );
    }

    #[test]
    fn par_fold_is_independent_of_pool_size() {
        let l = golden();
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                par_fold(
                    &l,
                    16,
                    &|_: &[u8]| true,
                    Vec::new,
                    |acc: &mut Vec<Word>, w| acc.push(Word::from(w)),
                    |a, b| a.extend(b),
                )
            })
        };
        let one = run(1);
        assert_eq!(one, run(8));
        let mut sorted = one.clone();
        sorted.sort_by(|a, b| crate::word::shortlex(a, b));
        let mut by_len = one;
        by_len.sort_by_key(|w| w.len());
        assert_eq!(sorted, by_len);
    }

    #[test]
    fn golden_language_is_factorial_and_extendable() {
        let l = golden();
        assert_eq!(factoriality_violation(&l, 8).unwrap(), None);
        assert_eq!(extendability_violation(&l, 8).unwrap(), None);
    }

    #[test]
    fn default_guard_is_24_for_two_letters() {
        assert_eq!(default_depth_guard(2), 24);
        assert_eq!(default_depth_guard(4), 12);
    }
}
