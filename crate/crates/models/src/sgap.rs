//! S-gap shifts: the coded shift generated by `{1 0^n : n ∈ S}`.

use std::collections::BTreeSet;

use symdyn_core::{default_depth_guard, Alphabet, Error, Language, Locality, Result, Word};

/// A finite or eventually periodic subset of ℕ ∪ {0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSet {
    finite: BTreeSet<u32>,
    /// All `n ≥ start` with `n ≡ start (mod period)`.
    tail: Option<(u32, u32)>,
}

impl GapSet {
    pub fn finite<I: IntoIterator<Item = u32>>(items: I) -> Self {
        Self { finite: items.into_iter().collect(), tail: None }
    }

    pub fn eventually_periodic<I: IntoIterator<Item = u32>>(items: I, start: u32, period: u32) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidInput("gap period must be positive".into()));
        }
        Ok(Self { finite: items.into_iter().collect(), tail: Some((start, period)) })
    }

    /// `{n : n ≥ start}`.
    pub fn all_from(start: u32) -> Self {
        Self { finite: BTreeSet::new(), tail: Some((start, 1)) }
    }

    pub fn contains(&self, n: u32) -> bool {
        self.finite.contains(&n) || self.tail.is_some_and(|(s, p)| n >= s && (n - s) % p == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.tail.is_none()
    }

    /// `sup S`, or `None` when `S` is infinite.
    pub fn sup(&self) -> Option<u32> {
        match self.tail {
            Some(_) => None,
            None => self.finite.iter().next_back().copied(),
        }
    }

    /// Least element `≥ m`, if any.
    pub fn min_at_least(&self, m: u32) -> Option<u32> {
        let a = self.finite.range(m..).next().copied();
        let b = self.tail.map(|(s, p)| if m <= s { s } else { s + (m - s).div_ceil(p) * p });
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Elements `≤ bound`, ascending.
    pub fn elements_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGapSpec {
    pub s: GapSet,
}

#[derive(Clone, Debug)]
pub struct SGapShift {
    spec: SGapSpec,
    alphabet: Alphabet,
    depth: usize,
}

pub fn s_gap_shift(spec: SGapSpec) -> Result<SGapShift> {
    if spec.s.is_empty() {
        return Err(Error::InvalidInput("S must be nonempty".into()));
    }
    Ok(SGapShift { spec, alphabet: Alphabet::numeric(2), depth: default_depth_guard(2) })
}

impl SGapShift {
    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn gaps(&self) -> &GapSet {
        &self.spec.s
    }

    /// Generators `1 0^n` with `n ∈ S` and length at most `max_len`.
    pub fn generators(&self, max_len: usize) -> Vec<Word> {
        let bound = max_len.saturating_sub(1) as u32;
        self.spec
            .s
            .elements_up_to(bound)
            .into_iter()
            .map(|n| {
                let mut w = vec![1u8];
                w.extend(std::iter::repeat(0u8).take(n as usize));
                Word::from(w)
            })
            .collect()
    }

    /// `log x` for the root `x > 1` of `Σ_{n∈S} x^{-(n+1)} = 1`.
    pub fn entropy_exact(&self) -> f64 {
        let terms = |x: f64| -> f64 {
            let bound = match self.spec.s.sup() {
                Some(b) => b,
                None => 4000,
            };
            self.spec.s.elements_up_to(bound).iter().map(|&n| x.powi(-(n as i32 + 1))).sum()
        };
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        if terms(1.0 + 1e-15) < 1.0 {
            return 0.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if terms(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).ln()
    }
}

impl Language for SGapShift {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &[u8]) -> bool {
        if w.iter().any(|&a| a > 1) {
            return false;
        }
        let within_sup = |run: usize| self.spec.s.sup().is_none_or(|s| run as u32 <= s);
        let ones: Vec<usize> = w.iter().enumerate().filter(|(_, &a)| a == 1).map(|(i, _)| i).collect();
        match (ones.first(), ones.last()) {
            (None, _) | (_, None) => within_sup(w.len()),
            (Some(&first), Some(&last)) => {
                within_sup(first)
                    && within_sup(w.len() - 1 - last)
                    && ones.windows(2).all(|p| self.spec.s.contains((p[1] - p[0] - 1) as u32))
            }
        }
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        match self.spec.s.sup() {
            Some(s) => Locality::Window(s as usize + 2),
            None => Locality::Exact,
        }
    }

    fn name(&self) -> String {
        "S-gap shift".into()
    }
}
