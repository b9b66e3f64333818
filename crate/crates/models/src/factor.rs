//! Sliding block codes and the factor languages they induce.

use symdyn_core::{enumerate_language, Alphabet, Error, Language, Locality, Oracle, Result, Word};

/// `π(x)_n = θ(x_{[n−m, n+m]})` with θ stored as a table over all
/// length-`(2m+1)` source words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCode {
    m: usize,
    source_k: usize,
    target: Alphabet,
    map: Vec<u8>,
}

fn code(k: usize, w: &[u8]) -> usize {
    w.iter().fold(0usize, |acc, &a| acc * k + a as usize)
}

impl BlockCode {
    pub fn from_fn<F: Fn(&[u8]) -> u8>(m: usize, source_k: usize, target: Alphabet, theta: F) -> Result<Self> {
        let width = 2 * m + 1;
        let size = source_k.pow(width as u32);
        let mut map = Vec::with_capacity(size);
        let mut win = vec![0u8; width];
        for c in 0..size {
            let mut x = c;
            for slot in win.iter_mut().rev() {
                *slot = (x % source_k) as u8;
                x /= source_k;
            }
            let b = theta(&win);
            if b as usize >= target.size() {
                return Err(Error::InvalidInput(format!("block map sends {win:?} outside the target alphabet")));
            }
            map.push(b);
        }
        Ok(Self { m, source_k, target, map })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let k = alphabet.size();
        Self::from_fn(0, k, alphabet, |w| w[0]).expect("identity is total")
    }

    pub fn radius(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn theta(&self, window: &[u8]) -> u8 {
        self.map[code(self.source_k, window)]
    }

    /// Image of a source word of length `n + 2m`, of length `n`.
    pub fn apply(&self, x: &[u8]) -> Word {
        let width = 2 * self.m + 1;
        if x.len() < width {
            return Word::empty();
        }
        Word::from(x.windows(width).map(|w| self.theta(w)).collect::<Vec<u8>>())
    }

    /// `other ∘ self`, of radius `m_self + m_other`.
    pub fn compose(&self, other: &BlockCode) -> Result<BlockCode> {
        if other.source_k != self.target.size() {
            return Err(Error::InvalidInput("composed codes have mismatched alphabets".into()));
        }
        BlockCode::from_fn(self.m + other.m, self.source_k, other.target.clone(), |w| {
            other.theta(&self.apply(w))
        })
    }

    pub fn check_total(&self, source: &dyn Language) -> Result<()> {
        if source.alphabet().size() != self.source_k {
            return Err(Error::InvalidInput("block code and source alphabets differ".into()));
        }
        enumerate_language(source, 2 * self.m + 1).map(|_| ())
    }
}

pub struct Factor {
    source: Oracle,
    code: BlockCode,
    depth: usize,
}

/// Target language `Θ(L_{n+2m}(source))`, membership by preimage search.
pub fn sliding_block_factor(source: Oracle, code: BlockCode) -> Result<Factor> {
    code.check_total(source.as_ref())?;
    let depth = source.depth_limit().saturating_sub(2 * code.m);
    Ok(Factor { source, code, depth })
}

impl Factor {
    pub fn code(&self) -> &BlockCode {
        &self.code
    }

    fn preimage(&self, w: &[u8], buf: &mut Vec<u8>) -> bool {
        let width = 2 * self.code.m + 1;
        if buf.len() == w.len() + 2 * self.code.m {
            return true;
        }
        for a in 0..self.code.source_k as u8 {
            buf.push(a);
            let ok = self.source.extends(buf)
                && (buf.len() < width || self.code.theta(&buf[buf.len() - width..]) == w[buf.len() - width]);
            if ok && self.preimage(w, buf) {
                buf.pop();
                return true;
            }
            buf.pop();
        }
        false
    }
}

impl Language for Factor {
    fn alphabet(&self) -> &Alphabet {
        &self.code.target
    }

    fn contains(&self, w: &[u8]) -> bool {
        if w.is_empty() {
            return true;
        }
        if w.iter().any(|&a| a as usize >= self.code.target.size()) {
            return false;
        }
        self.preimage(w, &mut Vec::with_capacity(w.len() + 2 * self.code.m))
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        match self.source.locality() {
            Locality::Depth(n) => Locality::Depth(n.saturating_sub(2 * self.code.m)),
            _ => Locality::Exact,
        }
    }

    fn name(&self) -> String {
        format!("radius-{} factor of {}", self.code.m, self.source.name())
    }
}
