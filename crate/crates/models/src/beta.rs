//! β-shifts via the lexicographic condition against the quasi-greedy
//! expansion of 1.

use symdyn_core::{Alphabet, Error, Language, Locality, Result, Word};

/// How the driving sequence is specified.
#[derive(Clone, Debug, PartialEq)]
pub enum BetaSpec {
    /// A real β > 1; the driving sequence is its quasi-greedy expansion of 1.
    Beta(f64),
    /// An eventually periodic driving sequence `prefix · period^∞`.
    Driving { prefix: Word, period: Word },
}

/// Driving sequence: eventually periodic, or a prefix certified to its length.
#[derive(Clone, Debug, PartialEq)]
enum Driving {
    Periodic { prefix: Vec<u8>, period: Vec<u8> },
    Prefix(Vec<u8>),
}

impl Driving {
    fn at(&self, i: usize) -> Option<u8> {
        match self {
            Driving::Periodic { prefix, period } => Some(if i < prefix.len() {
                prefix[i]
            } else {
                period[(i - prefix.len()) % period.len()]
            }),
            Driving::Prefix(p) => p.get(i).copied(),
        }
    }

    fn take(&self, n: usize) -> Vec<u8> {
        (0..n).map_while(|i| self.at(i)).collect()
    }
}

const TERMINATION_TOL: f64 = 1e-12;

fn expand(beta: f64, n: usize) -> Result<Driving> {
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::InvalidInput(format!("β must be a finite real > 1, got {beta}")));
    }
    let mut r = 1.0f64;
    let mut err = 0.0f64;
    let mut digits = Vec::with_capacity(n);
    for i in 0..n {
        let t = r * beta;
        err = err * beta + 4.0 * f64::EPSILON * t.max(1.0);
        let d = t.round();
        if d >= 1.0 && (t - d).abs() <= TERMINATION_TOL {
            digits.push(d as u8);
            let last = digits.last_mut().expect("nonempty");
            *last -= 1;
            return Ok(Driving::Periodic { prefix: Vec::new(), period: digits });
        }
        let f = t.floor();
        if t - f <= err || f + 1.0 - t <= err {
            return Err(Error::ExpansionUncertain { index: i + 1 });
        }
        digits.push(f as u8);
        r = t - f;
    }
    Ok(Driving::Prefix(digits))
}

/// First `n` digits of the quasi-greedy β-expansion of 1.
pub fn quasi_greedy_expansion(beta: f64, n: usize) -> Result<Word> {
    Ok(Word::from(expand(beta, n)?.take(n)))
}

fn series(z: &Driving, x: f64, n: usize) -> f64 {
    let mut s = 0.0;
    let mut p = 1.0;
    for i in 0..n {
        p /= x;
        s += z.at(i).unwrap_or(0) as f64 * p;
    }
    s
}

#[derive(Clone, Debug)]
pub struct BetaShift {
    beta: f64,
    alphabet: Alphabet,
    z: Driving,
    depth: usize,
}

/// Builds the β-shift oracle, certifying the driving sequence to `cert_depth`.
pub fn beta_shift(spec: BetaSpec, cert_depth: usize) -> Result<BetaShift> {
    let slack = 4;
    let (beta, z) = match spec {
        BetaSpec::Beta(beta) => (beta, expand(beta, cert_depth + slack)?),
        BetaSpec::Driving { prefix, period } => {
            if period.is_empty() || period.iter().all(|&d| d == 0) {
                return Err(Error::InvalidInput("driving period must contain a nonzero digit".into()));
            }
            let z = Driving::Periodic { prefix: prefix.into_vec(), period: period.into_vec() };
            let top = z.take(cert_depth + slack).into_iter().max().unwrap_or(0) as f64;
            let (mut lo, mut hi) = (1.0 + 1e-12, top + 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if series(&z, mid, 2000) > 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (0.5 * (lo + hi), z)
        }
    };
    let top = z.take(cert_depth + slack).into_iter().max().unwrap_or(0) as usize;
    let k = (beta.ceil() as usize).max(top + 1).max(2);
    let n = cert_depth.max(1);
    let tail = (k as f64 - 1.0) * beta.powi(-(n as i32)) / (beta - 1.0);
    let s = series(&z, beta, n);
    if (1.0 - s) < -1e-9 || (1.0 - s) > tail + 1e-9 {
        return Err(Error::InvalidInput(format!("driving sequence does not expand 1 in base {beta}")));
    }
    Ok(BetaShift { beta, alphabet: Alphabet::numeric(k), z, depth: cert_depth })
}

impl BetaShift {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// First `n` digits of the driving sequence.
    pub fn driving_prefix(&self, n: usize) -> Word {
        Word::from(self.z.take(n))
    }

    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    fn z_at(&self, i: usize) -> u8 {
        self.z.at(i).unwrap_or((self.alphabet.size() - 1) as u8)
    }

    /// Compares `w[start..]` with the driving prefix of the same length.
    fn suffix_ok(&self, w: &[u8], start: usize) -> bool {
        for (i, &a) in w[start..].iter().enumerate() {
            let z = self.z_at(i);
            if a != z {
                return a < z;
            }
        }
        true
    }
}

impl Language for BetaShift {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &[u8]) -> bool {
        w.iter().all(|&a| (a as usize) < self.alphabet.size()) && (0..w.len()).all(|s| self.suffix_ok(w, s))
    }

    fn extends(&self, w: &[u8]) -> bool {
        let n = w.len();
        if n == 0 {
            return true;
        }
        // Suffixes that were strictly below the driving prefix stay below.
        (0..n).all(|s| {
            let tied = w[s..n - 1].iter().enumerate().all(|(i, &a)| a == self.z_at(i));
            !tied || w[n - 1] <= self.z_at(n - 1 - s)
        })
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        match &self.z {
            Driving::Periodic { .. } => Locality::Exact,
            Driving::Prefix(p) => Locality::Depth(p.len()),
        }
    }

    fn name(&self) -> String {
        format!("β-shift (β = {})", self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symdyn_core::{digits, enumerate_language};

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn golden_ratio_is_quasi_greedy_alternating() {
        assert_eq!(quasi_greedy_expansion(GOLDEN, 6).unwrap(), digits("101010"));
        let z = quasi_greedy_expansion(GOLDEN, 40).unwrap();
        let s: f64 = z.iter().enumerate().map(|(i, &d)| d as f64 * GOLDEN.powi(-(i as i32 + 1))).sum();
        assert!((s - 1.0).abs() < 1e-8);
    }

    #[test]
    fn base_two_is_all_ones() {
        assert_eq!(quasi_greedy_expansion(2.0, 4).unwrap(), digits("1111"));
        let b = beta_shift(BetaSpec::Beta(2.0), 12).unwrap();
        assert_eq!(enumerate_language(&b, 8).unwrap().len(), 256);
    }

    #[test]
    fn near_one_starts_with_one() {
        let z = quasi_greedy_expansion(1.05, 3).unwrap();
        assert_eq!(z[0], 1);
    }

    #[test]
    fn driving_sequence_is_admissible() {
        for beta in [GOLDEN, 1.3, 2.5, 3.7] {
            let b = beta_shift(BetaSpec::Beta(beta), 16).unwrap();
            for n in 0..=16 {
                assert!(b.contains(&b.driving_prefix(n)), "β={beta} n={n}");
            }
        }
    }

    #[test]
    fn golden_forbids_11() {
        let b = beta_shift(BetaSpec::Beta(GOLDEN), 12).unwrap();
        assert!(!b.contains(&digits("11")));
        assert!(b.contains(&digits("1010010")));
        assert_eq!(b.locality(), Locality::Exact);
    }

    #[test]
    fn explicit_driving_sequence_recovers_beta() {
        let b = beta_shift(BetaSpec::Driving { prefix: Word::empty(), period: digits("10") }, 12).unwrap();
        assert!((b.beta() - GOLDEN).abs() < 1e-9);
    }

    #[test]
    fn extends_agrees_with_contains() {
        let b = beta_shift(BetaSpec::Beta(2.3), 12).unwrap();
        for w in enumerate_language(&b, 6).unwrap() {
            for a in 0..3u8 {
                let x = w.concat(&[a]);
                assert_eq!(b.extends(&x), b.contains(&x), "{x:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_beta() {
        assert!(quasi_greedy_expansion(1.0, 3).is_err());
        assert!(quasi_greedy_expansion(f64::NAN, 3).is_err());
    }
}
