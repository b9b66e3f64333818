//! Per-length enumerable collections of admissible words.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::language::{guard, walk, Language, Oracle};
use crate::word::Word;

type Pred = Arc<dyn Fn(&[u8]) -> bool + Send + Sync>;

#[derive(Clone)]
enum Filter {
    All,
    Pred { f: Pred, prefix_closed: bool },
    Explicit(Arc<BTreeSet<Word>>),
}

/// A subset of a language: every member is admissible in the backing oracle.
#[derive(Clone)]
pub struct WordSet {
    lang: Oracle,
    filter: Filter,
    label: String,
}

impl fmt::Debug for WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordSet({} in {})", self.label, self.lang.name())
    }
}

impl WordSet {
    /// The whole language.
    pub fn language(lang: Oracle) -> Self {
        Self { label: "L".into(), lang, filter: Filter::All }
    }

    /// Members of `lang` satisfying `f`.
    pub fn filtered<F>(lang: Oracle, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[u8]) -> bool + Send + Sync + 'static,
    {
        Self { lang, label: label.into(), filter: Filter::Pred { f: Arc::new(f), prefix_closed: false } }
    }

    /// Like [`WordSet::filtered`] for predicates closed under taking prefixes;
    /// enumeration then prunes whole subtrees.
    pub fn prefix_closed<F>(lang: Oracle, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[u8]) -> bool + Send + Sync + 'static,
    {
        Self { lang, label: label.into(), filter: Filter::Pred { f: Arc::new(f), prefix_closed: true } }
    }

    /// A finite collection; inadmissible words are dropped.
    pub fn explicit<I: IntoIterator<Item = Word>>(lang: Oracle, label: impl Into<String>, words: I) -> Self {
        let set: BTreeSet<Word> = words.into_iter().filter(|w| lang.contains(w)).collect();
        Self { lang, label: label.into(), filter: Filter::Explicit(Arc::new(set)) }
    }

    /// Only ε.
    pub fn empty_word(lang: Oracle) -> Self {
        Self::explicit(lang, "{ε}", [Word::empty()])
    }

    /// No words at all.
    pub fn nothing(lang: Oracle) -> Self {
        Self::explicit(lang, "∅", [])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn oracle(&self) -> &Oracle {
        &self.lang
    }

    /// The member list when the set was given explicitly.
    pub fn explicit_words(&self) -> Option<&BTreeSet<Word>> {
        match &self.filter {
            Filter::Explicit(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_full_language(&self) -> bool {
        matches!(self.filter, Filter::All)
    }

    /// True when pruning by membership is sound during enumeration.
    pub fn is_prefix_closed(&self) -> bool {
        match &self.filter {
            Filter::All => true,
            Filter::Pred { prefix_closed, .. } => *prefix_closed,
            Filter::Explicit(_) => false,
        }
    }

    pub fn depth_limit(&self) -> usize {
        self.lang.depth_limit()
    }

    /// Membership without re-checking the backing language.
    pub fn accepts_admissible(&self, w: &[u8]) -> bool {
        match &self.filter {
            Filter::All => true,
            Filter::Pred { f, .. } => f(w),
            Filter::Explicit(s) => s.contains(&Word::from(w)),
        }
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.lang.contains(w) && self.accepts_admissible(w)
    }

    /// Members of length `n`, sorted lexicographically.
    pub fn words(&self, n: usize) -> Result<Vec<Word>> {
        if let Filter::Explicit(s) = &self.filter {
            return Ok(s.iter().filter(|w| w.len() == n).cloned().collect());
        }
        guard(self.lang.as_ref(), n)?;
        let mut out = Vec::new();
        self.walk(n, |w| {
            if w.len() == n && self.accepts_admissible(w) {
                out.push(Word::from(w));
            }
        });
        Ok(out)
    }

    /// Members grouped by length `0..=n`.
    pub fn words_up_to(&self, n: usize) -> Result<Vec<Vec<Word>>> {
        let mut out = vec![Vec::new(); n + 1];
        if let Filter::Explicit(s) = &self.filter {
            for w in s.iter().filter(|w| w.len() <= n) {
                out[w.len()].push(w.clone());
            }
            return Ok(out);
        }
        guard(self.lang.as_ref(), n)?;
        self.walk(n, |w| {
            if self.accepts_admissible(w) {
                out[w.len()].push(Word::from(w));
            }
        });
        Ok(out)
    }

    /// Members of length in `1..=n` in shortlex order.
    pub fn nonempty_up_to(&self, n: usize) -> Result<Vec<Word>> {
        Ok(self.words_up_to(n)?.into_iter().skip(1).flatten().collect())
    }

    /// Walks the backing language, pruning by the filter when it is prefix-closed.
    pub fn walk<F: FnMut(&[u8])>(&self, n: usize, visit: F) {
        let lang: &dyn Language = self.lang.as_ref();
        match &self.filter {
            Filter::Pred { f, prefix_closed: true } => walk(lang, n, &|w: &[u8]| f(w), visit),
            _ => walk(lang, n, &|_: &[u8]| true, visit),
        }
    }

    /// The pruning predicate used by parallel enumeration.
    pub fn keep_fn(&self) -> Box<dyn Fn(&[u8]) -> bool + Send + Sync> {
        match &self.filter {
            Filter::Pred { f, prefix_closed: true } => {
                let f = f.clone();
                Box::new(move |w| f(w))
            }
            _ => Box::new(|_| true),
        }
    }

    fn pred(&self) -> Pred {
        match &self.filter {
            Filter::All => Arc::new(|_| true),
            Filter::Pred { f, .. } => f.clone(),
            Filter::Explicit(s) => {
                let s = s.clone();
                Arc::new(move |w| s.contains(&Word::from(w)))
            }
        }
    }

    /// Members of `self` or `other`.
    pub fn union(&self, other: &WordSet) -> WordSet {
        let (a, b) = (self.pred(), other.pred());
        WordSet::filtered(self.lang.clone(), format!("({} ∪ {})", self.label, other.label), move |w| {
            a(w) || b(w)
        })
    }

    /// Members of `self` also in `other`.
    pub fn intersect(&self, other: &WordSet) -> WordSet {
        let (a, b) = (self.pred(), other.pred());
        let closed = self.is_prefix_closed() && other.is_prefix_closed();
        let label = format!("({} ∩ {})", self.label, other.label);
        let f = move |w: &[u8]| a(w) && b(w);
        if closed {
            WordSet::prefix_closed(self.lang.clone(), label, f)
        } else {
            WordSet::filtered(self.lang.clone(), label, f)
        }
    }

    /// Members of `self` not in `other`.
    pub fn minus(&self, other: &WordSet) -> WordSet {
        let (a, b) = (self.pred(), other.pred());
        WordSet::filtered(self.lang.clone(), format!("({} \\ {})", self.label, other.label), move |w| {
            a(w) && !b(w)
        })
    }

    /// Members of length at least `m`.
    pub fn at_least(&self, m: usize) -> WordSet {
        let a = self.pred();
        WordSet::filtered(self.lang.clone(), format!("{}_≥{m}", self.label), move |w| {
            w.len() >= m && a(w)
        })
    }

    /// Admissible concatenations of members, ε included; decided by dynamic
    /// programming over split points.
    /// Pieces of an admissible word are admissible, so only membership in
    /// `self` is tested; explicit sets bound the piece length.
    pub fn star(&self) -> WordSet {
        let a = self.pred();
        let longest = match &self.filter {
            Filter::Explicit(s) => s.iter().map(|w| w.len()).max().unwrap_or(0),
            _ => usize::MAX,
        };
        WordSet::filtered(self.lang.clone(), format!("({})*", self.label), move |w| {
            let n = w.len();
            let mut reach = vec![false; n + 1];
            reach[0] = true;
            for j in 1..=n {
                reach[j] = (j.saturating_sub(longest)..j).any(|i| reach[i] && a(&w[i..j]));
            }
            reach[n]
        })
    }

    /// Same set with membership answers memoised.
    pub fn cached(&self) -> WordSet {
        if !matches!(self.filter, Filter::Pred { .. }) {
            return self.clone();
        }
        let a = self.pred();
        let memo: Arc<Mutex<HashMap<Word, bool>>> = Arc::default();
        let f = move |w: &[u8]| {
            let key = Word::from(w);
            if let Some(&v) = memo.lock().expect("memo lock").get(&key) {
                return v;
            }
            let v = a(w);
            memo.lock().expect("memo lock").insert(key, v);
            v
        };
        WordSet {
            lang: self.lang.clone(),
            label: self.label.clone(),
            filter: Filter::Pred { f: Arc::new(f), prefix_closed: self.is_prefix_closed() },
        }
    }
}
