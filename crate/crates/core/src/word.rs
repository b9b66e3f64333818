use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

/// Finite sequence of alphabet indices. The empty word is allowed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    /// The subword `w_{[i,j]}` in 1-based inclusive coordinates; empty when `j < i`.
    pub fn subword(&self, i: usize, j: usize) -> Word {
        assert!(i >= 1, "subword indices start at 1");
        if j < i {
            return Word::empty();
        }
        assert!(j <= self.len(), "subword end {j} beyond length {}", self.len());
        Word(self.0[i - 1..j].to_vec())
    }

    pub fn concat(&self, other: &[u8]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, a: u8) {
        self.0.push(a);
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(v: [u8; N]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&a| a < 10) {
            let s: String = self.0.iter().map(|&a| char::from(b'0' + a)).collect();
            write!(f, "\"{s}\"")
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

/// Shortlex order: shorter words first, then lexicographic.
pub fn shortlex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True when `v` occurs as a contiguous subword of `w`.
pub fn is_subword(v: &[u8], w: &[u8]) -> bool {
    v.is_empty() || w.windows(v.len()).any(|x| x == v)
}

/// True when `w_{i+k} = w_i` for every valid `i`, i.e. `w` has period `k`.
pub fn has_period(w: &[u8], k: usize) -> bool {
    k >= 1 && (k >= w.len() || w[k..] == w[..w.len() - k])
}

/// Parses a word over digit symbols `0`–`9`; intended for tests and examples.
pub fn digits(s: &str) -> Word {
    Word(
        s.bytes()
            .map(|b| {
                assert!(b.is_ascii_digit(), "digits() expects 0-9");
                b - b'0'
            })
            .collect(),
    )
}
