//! Compensated accumulation of exponentials.
//!
//! [`ExpSum`] stores `value = (sum + comp) * e^shift`. The shift stays at
//! zero until a term would exceed [`Scalar::rescale_threshold`], so sums of
//! unit terms (the φ = 0 case) remain exact integers.

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpSum<S> {
    shift: S,
    sum: S,
    comp: S,
    terms: u64,
}

impl<S: Scalar> Default for ExpSum<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> ExpSum<S> {
    pub fn new() -> Self {
        Self { shift: S::zero(), sum: S::zero(), comp: S::zero(), terms: 0 }
    }

    /// Number of terms added so far.
    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms == 0
    }

    /// Adds `e^x`.
    pub fn add_ln(&mut self, x: S) {
        if self.terms == 0 && x.abs() > S::rescale_threshold() {
            self.shift = x;
        } else if x - self.shift > S::rescale_threshold() {
            self.rebase(x);
        }
        self.terms += 1;
        self.neumaier((x - self.shift).exp());
    }

    fn rebase(&mut self, new_shift: S) {
        let f = (self.shift - new_shift).exp();
        self.sum = self.sum * f;
        self.comp = self.comp * f;
        self.shift = new_shift;
    }

    fn neumaier(&mut self, y: S) {
        let t = self.sum + y;
        if self.sum.abs() >= y.abs() {
            self.comp = self.comp + ((self.sum - t) + y);
        } else {
            self.comp = self.comp + ((y - t) + self.sum);
        }
        self.sum = t;
    }

    /// Folds another accumulator in; the caller fixes the order.
    pub fn merge(&mut self, other: &ExpSum<S>) {
        if other.terms == 0 {
            return;
        }
        if self.terms == 0 {
            *self = *other;
            return;
        }
        let mut o = *other;
        if o.shift > self.shift {
            self.rebase(o.shift);
        } else if o.shift < self.shift {
            o.rebase(self.shift);
        }
        self.terms += o.terms;
        self.neumaier(o.sum);
        self.neumaier(o.comp);
    }

    /// The same sum multiplied by `e^x`; exact when `x = 0`.
    pub fn scaled_ln(&self, x: S) -> Self {
        let mut o = *self;
        if o.terms > 0 {
            o.shift = o.shift + x;
        }
        o
    }

    /// Overrides the term count, for sums assembled from aggregated weights.
    pub fn with_terms(mut self, terms: u64) -> Self {
        self.terms = terms;
        self
    }

    /// Natural logarithm of the total; `-inf` when empty.
    pub fn ln(&self) -> S {
        if self.terms == 0 {
            return S::neg_infinity();
        }
        (self.sum + self.comp).ln() + self.shift
    }

    /// The total itself; may be `inf` for huge sums.
    pub fn value(&self) -> S {
        if self.terms == 0 {
            return S::zero();
        }
        if self.shift == S::zero() {
            self.sum + self.comp
        } else {
            self.ln().exp()
        }
    }
}
