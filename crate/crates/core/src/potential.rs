//! Locally constant potentials and the cylinder maximum φ̂.
//!
//! A potential of range `r` reads the coordinates `x_0 … x_{r-1}`. For a word
//! `w` of length `n`, φ̂(w) is the largest Birkhoff sum `S_n φ` over points of
//! the cylinder `[w]`: the windows lying inside `w` contribute a fixed amount
//! and the last `r − 1` windows are maximised over admissible continuations of
//! `w` by `r − 1` symbols.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language::{enumerate_language, Language};
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct Potential<S = f64> {
    k: usize,
    range: usize,
    values: Vec<S>,
    defined: Vec<bool>,
    zero: bool,
    holder: Option<(S, S)>,
}

fn code(k: usize, w: &[u8]) -> usize {
    w.iter().fold(0usize, |acc, &a| acc * k + a as usize)
}

impl<S: Scalar> Potential<S> {
    /// φ ≡ 0 on a `k`-letter alphabet.
    pub fn zero(k: usize) -> Self {
        Self { k, range: 1, values: vec![S::zero(); k], defined: vec![true; k], zero: true, holder: None }
    }

    /// φ ≡ c (range 1).
    pub fn constant(k: usize, c: S) -> Self {
        Self { k, range: 1, values: vec![c; k], defined: vec![true; k], zero: c == S::zero(), holder: None }
    }

    /// Range-`r` potential with every window value given by `f`.
    pub fn from_fn<F: Fn(&[u8]) -> S>(k: usize, range: usize, f: F) -> Self {
        assert!(range >= 1, "range must be at least 1");
        let size = k.pow(range as u32);
        let mut values = vec![S::zero(); size];
        let mut win = vec![0u8; range];
        for (c, v) in values.iter_mut().enumerate() {
            let mut x = c;
            for slot in win.iter_mut().rev() {
                *slot = (x % k) as u8;
                x /= k;
            }
            *v = f(&win);
        }
        let zero = values.iter().all(|v| *v == S::zero());
        Self { k, range, values, defined: vec![true; size], zero, holder: None }
    }

    /// Range-`r` potential from an explicit window table; missing windows are undefined.
    pub fn from_table<I>(k: usize, range: usize, table: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, S)>,
    {
        if range == 0 {
            return Err(Error::InvalidInput("potential range must be at least 1".into()));
        }
        let size = k.pow(range as u32);
        let mut values = vec![S::zero(); size];
        let mut defined = vec![false; size];
        for (w, v) in table {
            if w.len() != range || w.iter().any(|&a| a as usize >= k) {
                return Err(Error::InvalidInput(format!("table key {w:?} is not a length-{range} word")));
            }
            let c = code(k, &w);
            values[c] = v;
            defined[c] = true;
        }
        let zero = values.iter().all(|v| *v == S::zero());
        Ok(Self { k, range, values, defined, zero, holder: None })
    }

    /// `t · 1_[u]`: the indicator of the cylinder `[u]`, scaled.
    pub fn indicator(k: usize, u: &[u8], t: S) -> Self {
        Self::from_fn(k, u.len().max(1), |w| if w == u { t } else { S::zero() })
    }

    /// Records a Hölder pair (exponent, constant) for reporting only.
    pub fn with_holder_data(mut self, beta: S, constant: S) -> Self {
        self.holder = Some((beta, constant));
        self
    }

    pub fn holder_data(&self) -> Option<(S, S)> {
        self.holder
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn value(&self, window: &[u8]) -> Option<S> {
        debug_assert_eq!(window.len(), self.range);
        let c = code(self.k, window);
        self.defined[c].then(|| self.values[c])
    }

    fn value_or_zero(&self, window: &[u8]) -> S {
        self.value(window).unwrap_or_else(S::zero)
    }

    /// The table as (window, value) pairs.
    pub fn table(&self) -> BTreeMap<Word, S> {
        let mut out = BTreeMap::new();
        let mut win = vec![0u8; self.range];
        for c in 0..self.values.len() {
            if !self.defined[c] {
                continue;
            }
            let mut x = c;
            for slot in win.iter_mut().rev() {
                *slot = (x % self.k) as u8;
                x /= self.k;
            }
            out.insert(Word::from(win.clone()), self.values[c]);
        }
        out
    }

    /// Checks the table covers every admissible length-`r` word.
    pub fn check_total(&self, lang: &dyn Language) -> Result<()> {
        if lang.alphabet().size() != self.k {
            return Err(Error::InvalidInput("potential and language alphabets differ".into()));
        }
        for w in enumerate_language(lang, self.range)? {
            if self.value(&w).is_none() {
                return Err(Error::InvalidInput(format!(
                    "potential undefined on admissible window {}",
                    lang.alphabet().render(&w)
                )));
            }
        }
        Ok(())
    }

    fn extremes(&self) -> Option<(S, S)> {
        let mut it = self.values.iter().zip(&self.defined).filter(|(_, d)| **d).map(|(v, _)| *v);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    /// `(r − 1)(max φ − min φ)`, a bound on Birkhoff-sum variation over cylinders.
    pub fn distortion_bound(&self) -> S {
        match self.extremes() {
            Some((lo, hi)) if !self.zero => S::from_usize(self.range - 1).unwrap() * (hi - lo),
            _ => S::zero(),
        }
    }

    /// `sup |φ|`.
    pub fn sup_abs(&self) -> S {
        self.extremes().map_or(S::zero(), |(lo, hi)| lo.abs().max(hi.abs()))
    }

    /// `sup φ`.
    pub fn sup(&self) -> S {
        self.extremes().map_or(S::zero(), |(_, hi)| hi)
    }

    /// Sum over the windows that lie entirely inside `w`.
    pub fn inner_sum(&self, w: &[u8]) -> S {
        if self.zero || w.len() < self.range {
            return S::zero();
        }
        w.windows(self.range).map(|x| self.value_or_zero(x)).fold(S::zero(), |a, b| a + b)
    }

    /// Value of the window ending at the last symbol of `w`, if complete.
    pub fn last_window(&self, w: &[u8]) -> S {
        if self.zero || w.len() < self.range {
            return S::zero();
        }
        self.value_or_zero(&w[w.len() - self.range..])
    }

    /// Maximum over admissible continuations of the windows that stick out of `w`.
    pub fn tail_max(&self, lang: &dyn Language, w: &[u8]) -> S {
        if self.zero || self.range == 1 || w.is_empty() {
            return S::zero();
        }
        let mut buf = w.to_vec();
        let mut best: Option<S> = None;
        self.tail_rec(lang, &mut buf, w.len(), true, &mut best);
        if best.is_none() {
            self.tail_rec(lang, &mut buf, w.len(), false, &mut best);
        }
        best.unwrap_or_else(S::zero)
    }

    fn tail_rec(&self, lang: &dyn Language, buf: &mut Vec<u8>, n: usize, admissible: bool, best: &mut Option<S>) {
        let r = self.range;
        if buf.len() == n + r - 1 {
            let start = (n + 1).saturating_sub(r);
            let mut s = S::zero();
            for j in start..n {
                match self.value(&buf[j..j + r]) {
                    Some(v) => s = s + v,
                    None => return,
                }
            }
            *best = Some(best.map_or(s, |b| b.max(s)));
            return;
        }
        for a in 0..self.k as u8 {
            buf.push(a);
            if !admissible || lang.extends(buf) {
                self.tail_rec(lang, buf, n, admissible, best);
            }
            buf.pop();
        }
    }

    /// φ̂(w) = sup of `S_{|w|} φ` over the cylinder `[w]`; φ̂(ε) = 0.
    pub fn phi_hat(&self, lang: &dyn Language, w: &[u8]) -> Result<S> {
        if w.is_empty() {
            return Ok(S::zero());
        }
        if !lang.contains(w) {
            return Err(Error::NotInLanguage(lang.alphabet().render(w)));
        }
        Ok(self.inner_sum(w) + self.tail_max(lang, w))
    }

    /// `S_k φ(p^∞)` for the periodic point with period word `p`.
    pub fn cyclic_sum(&self, p: &[u8]) -> S {
        if self.zero || p.is_empty() {
            return S::zero();
        }
        let n = p.len();
        let mut win = vec![0u8; self.range];
        let mut s = S::zero();
        for j in 0..n {
            for (t, slot) in win.iter_mut().enumerate() {
                *slot = p[(j + t) % n];
            }
            s = s + self.value_or_zero(&win);
        }
        s
    }

    /// Birkhoff sum of the windows starting at positions `0..count` of `x`.
    pub fn window_sum(&self, x: &[u8], count: usize) -> S {
        if self.zero {
            return S::zero();
        }
        (0..count).map(|j| self.value_or_zero(&x[j..j + self.range])).fold(S::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::language::PredicateLanguage;
    use crate::word::{digits, is_subword};

    fn golden() -> PredicateLanguage<impl Fn(&[u8]) -> bool + Send + Sync> {
        PredicateLanguage::new(Alphabet::numeric(2), 20, "golden", |w: &[u8]| !is_subword(&[1, 1], w))
    }

    fn full() -> PredicateLanguage<impl Fn(&[u8]) -> bool + Send + Sync> {
        PredicateLanguage::new(Alphabet::numeric(2), 20, "full", |_: &[u8]| true)
    }

    #[test]
    fn zero_potential_gives_zero() {
        let p = Potential::<f64>::zero(2);
        assert_eq!(p.phi_hat(&golden(), &digits("0101")).unwrap(), 0.0);
        assert_eq!(p.phi_hat(&golden(), &[]).unwrap(), 0.0);
    }

    #[test]
    fn range_one_sums_symbols() {
        let (a, b) = (0.25, -1.5);
        let p = Potential::from_fn(2, 1, |w| if w[0] == 0 { a } else { b });
        assert_eq!(p.phi_hat(&full(), &digits("01")).unwrap(), a + b);
    }

    #[test]
    fn indicator_of_00_on_single_zero() {
        let p = Potential::<f64>::indicator(2, &[0, 0], 1.0);
        assert_eq!(p.phi_hat(&golden(), &digits("0")).unwrap(), 1.0);
        assert_eq!(p.phi_hat(&golden(), &digits("1")).unwrap(), 0.0);
        assert_eq!(p.phi_hat(&golden(), &digits("000")).unwrap(), 3.0);
    }

    #[test]
    fn inadmissible_word_is_an_error() {
        let p = Potential::<f64>::zero(2);
        assert!(matches!(p.phi_hat(&golden(), &digits("11")), Err(Error::NotInLanguage(_))));
    }

    #[test]
    fn distortion_bounds() {
        assert_eq!(Potential::<f64>::from_fn(2, 1, |w| w[0] as f64 * 3.0).distortion_bound(), 0.0);
        assert_eq!(Potential::<f64>::indicator(2, &[0, 0], 1.0).distortion_bound(), 1.0);
        assert_eq!(Potential::<f64>::from_fn(2, 3, |_| 2.5).distortion_bound(), 0.0);
    }

    /// Exhaustive sup-difference of `S_n φ` over pairs of points sharing an
    /// `n`-cylinder, with points truncated to `n + r − 1` symbols.
    fn brute_distortion(p: &Potential<f64>, n: usize) -> f64 {
        let r = p.range();
        let total = n + r - 1;
        let mut worst: f64 = 0.0;
        for x in 0..1u32 << total {
            let xs: Vec<u8> = (0..total).rev().map(|i| ((x >> i) & 1) as u8).collect();
            for y in 0..1u32 << (r - 1) {
                let mut ys = xs[..n].to_vec();
                ys.extend((0..r - 1).rev().map(|i| ((y >> i) & 1) as u8));
                let d = (p.window_sum(&xs, n) - p.window_sum(&ys, n)).abs();
                worst = worst.max(d);
            }
        }
        worst
    }

    #[test]
    fn distortion_dominates_exhaustive_pairs() {
        let p = Potential::<f64>::from_fn(2, 2, |w| (w[0] ^ w[1]) as f64);
        assert_eq!(p.distortion_bound(), 1.0);
        for n in 1..=6 {
            assert!(brute_distortion(&p, n) <= p.distortion_bound());
        }
        let q = Potential::<f64>::from_fn(2, 3, |w| w.iter().map(|&a| a as f64).sum::<f64>() * 0.5);
        for n in 1..=5 {
            assert!(brute_distortion(&q, n) <= q.distortion_bound() + 1e-12);
        }
    }

    #[test]
    fn cyclic_sum_wraps() {
        let p = Potential::<f64>::indicator(2, &[0, 1], 1.0);
        assert_eq!(p.cyclic_sum(&digits("0")), 0.0);
        assert_eq!(p.cyclic_sum(&digits("01")), 1.0);
        assert_eq!(p.cyclic_sum(&digits("10")), 1.0);
        assert_eq!(p.cyclic_sum(&digits("0101")), 2.0);
    }

    #[test]
    fn table_roundtrip_and_totality() {
        let p = Potential::<f64>::from_table(
            2,
            2,
            [(digits("00"), 1.0), (digits("01"), -1.0), (digits("10"), 0.5)],
        )
        .unwrap();
        assert!(p.check_total(&golden()).is_ok());
        assert!(p.check_total(&full()).is_err());
        assert_eq!(p.table().len(), 3);
        assert!(Potential::<f64>::from_table(2, 2, [(digits("0"), 1.0)]).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let p = Potential::<f32>::indicator(2, &[0, 0], 1.0);
        assert_eq!(p.phi_hat(&golden(), &digits("00")).unwrap(), 2.0f32);
    }
}
