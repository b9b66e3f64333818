//! Shifts of finite type given by forbidden words.
//!
//! The oracle is built on the higher block graph whose vertices are
//! admissible `m`-blocks and whose edges are admissible `(m+1)`-blocks. Blocks
//! that cannot be continued bi-infinitely are pruned, so the language is
//! exactly the set of words read along paths of the pruned graph.

use std::collections::HashSet;

use symdyn_core::word::is_subword;
use symdyn_core::{default_depth_guard, Alphabet, Error, Language, Locality, Result, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct SftSpec {
    pub alphabet: Alphabet,
    pub forbidden: Vec<Word>,
}

impl SftSpec {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Word>) -> Self {
        Self { alphabet, forbidden }
    }

    /// Longest forbidden word length minus one.
    pub fn memory(&self) -> usize {
        self.forbidden.iter().map(|w| w.len()).max().unwrap_or(1).saturating_sub(1)
    }
}

#[derive(Clone, Debug)]
pub struct Sft {
    spec: SftSpec,
    k: usize,
    m: usize,
    edges: Vec<bool>,
    short: Vec<HashSet<Vec<u8>>>,
    depth: usize,
}

const MAX_BLOCKS: usize = 1 << 24;

fn decode(k: usize, len: usize, mut c: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (c % k) as u8;
        c /= k;
    }
    out
}

fn encode(k: usize, w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &a| acc * k + a as usize)
}

/// Builds the oracle, pruning blocks without bi-infinite continuations.
pub fn sft_from_forbidden(spec: SftSpec) -> Result<Sft> {
    let k = spec.alphabet.size();
    for f in &spec.forbidden {
        if f.len() < 2 {
            return Err(Error::InvalidInput("forbidden words must have length at least 2".into()));
        }
        if f.iter().any(|&a| a as usize >= k) {
            return Err(Error::InvalidInput("forbidden word uses a symbol outside the alphabet".into()));
        }
    }
    let m = spec.memory().max(1);
    let n_edges = k.checked_pow(m as u32 + 1).filter(|&x| x <= MAX_BLOCKS).ok_or_else(|| {
        Error::InvalidInput("higher block graph too large".into())
    })?;
    let n_vertices = n_edges / k;
    let clean = |w: &[u8]| !spec.forbidden.iter().any(|f| is_subword(f, w));
    let mut edges: Vec<bool> = (0..n_edges).map(|c| clean(&decode(k, m + 1, c))).collect();
    loop {
        let mut out_deg = vec![0usize; n_vertices];
        let mut in_deg = vec![0usize; n_vertices];
        for c in (0..n_edges).filter(|&c| edges[c]) {
            out_deg[c / k] += 1;
            in_deg[c % n_vertices] += 1;
        }
        let mut changed = false;
        for c in 0..n_edges {
            if edges[c] && (in_deg[c / k] == 0 || out_deg[c % n_vertices] == 0) {
                edges[c] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !edges.iter().any(|&e| e) {
        return Err(Error::EmptyLanguage);
    }
    let mut short: Vec<HashSet<Vec<u8>>> = vec![HashSet::new(); m + 1];
    for c in (0..n_edges).filter(|&c| edges[c]) {
        let w = decode(k, m + 1, c);
        for len in 0..=m {
            for start in 0..=(m + 1 - len) {
                short[len].insert(w[start..start + len].to_vec());
            }
        }
    }
    let depth = default_depth_guard(k);
    Ok(Sft { spec, k, m, edges, short, depth })
}

impl Sft {
    pub fn spec(&self) -> &SftSpec {
        &self.spec
    }

    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    /// Block length of the graph vertices.
    pub fn block_length(&self) -> usize {
        self.m
    }

    /// Adjacency matrix of the pruned higher block graph, indexed by surviving vertices.
    pub fn transition_matrix(&self) -> Vec<Vec<f64>> {
        let n_vertices = self.edges.len() / self.k;
        let mut alive = vec![false; n_vertices];
        for c in (0..self.edges.len()).filter(|&c| self.edges[c]) {
            alive[c / self.k] = true;
        }
        let index: Vec<Option<usize>> = alive
            .iter()
            .scan(0usize, |next, &a| {
                Some(a.then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        let size = alive.iter().filter(|&&a| a).count();
        let mut a = vec![vec![0.0; size]; size];
        for c in (0..self.edges.len()).filter(|&c| self.edges[c]) {
            if let (Some(i), Some(j)) = (index[c / self.k], index[c % n_vertices]) {
                a[i][j] += 1.0;
            }
        }
        a
    }

    /// `log ρ(A)` for the transition matrix.
    pub fn entropy_exact(&self) -> f64 {
        perron_root(&self.transition_matrix()).ln()
    }
}

/// Spectral radius of a nonnegative matrix by power iteration on `A + I`,
/// stopped once the Collatz–Wielandt bounds or successive estimates agree to
/// a relative tolerance of 1e-12.
pub fn perron_root(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut prev = f64::NAN;
    for _ in 0..2_000_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + a[i].iter().zip(&x).map(|(aij, xj)| aij * xj).sum::<f64>())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let q = yi / xi;
            lo = lo.min(q);
            hi = hi.max(q);
        }
        let lambda: f64 = y.iter().sum();
        if hi - lo <= 1e-12 * hi || (lambda - prev).abs() <= 1e-13 * lambda {
            let est = if hi - lo <= 1e-12 * hi { 0.5 * (hi + lo) } else { lambda };
            return est - 1.0;
        }
        prev = lambda;
        x = y.into_iter().map(|v| v / lambda).collect();
    }
    prev - 1.0
}

/// `log ρ(A)` straight from an [`SftSpec`].
pub fn sft_entropy_exact(spec: SftSpec) -> Result<f64> {
    Ok(sft_from_forbidden(spec)?.entropy_exact())
}

impl Language for Sft {
    fn alphabet(&self) -> &symdyn_core::Alphabet {
        &self.spec.alphabet
    }

    fn contains(&self, w: &[u8]) -> bool {
        if w.iter().any(|&a| a as usize >= self.k) {
            return false;
        }
        if w.len() <= self.m {
            return self.short[w.len()].contains(w);
        }
        w.windows(self.m + 1).all(|x| self.edges[encode(self.k, x)])
    }

    fn extends(&self, w: &[u8]) -> bool {
        if w.len() <= self.m {
            return self.short[w.len()].contains(w);
        }
        self.edges[encode(self.k, &w[w.len() - self.m - 1..])]
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        Locality::Window(self.m + 1)
    }

    fn name(&self) -> String {
        if self.spec.forbidden.is_empty() {
            format!("full {}-shift", self.k)
        } else {
            let fs: Vec<String> = self.spec.forbidden.iter().map(|f| self.spec.alphabet.render(f)).collect();
            format!("SFT forbidding {{{}}}", fs.join(","))
        }
    }
}

/// Full shift on `k` symbols `0..k`.
pub fn full_shift(k: usize) -> Sft {
    sft_from_forbidden(SftSpec::new(Alphabet::numeric(k), vec![])).expect("full shift is nonempty")
}

/// Binary SFT forbidding the given digit strings.
pub fn binary_sft(forbidden: &[&str]) -> Result<Sft> {
    let words = forbidden.iter().map(|s| symdyn_core::digits(s)).collect();
    sft_from_forbidden(SftSpec::new(Alphabet::numeric(2), words))
}

/// SFT on `{1,…,k}` allowing `a → a+1` and `a → a+2` (mod `k`).
pub fn cycle_sft(k: usize) -> Result<Sft> {
    if k < 4 {
        return Err(Error::InvalidInput("cycle_sft needs k ≥ 4".into()));
    }
    let mut forbidden = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let d = (b + k - a) % k;
            if d != 1 && d != 2 {
                forbidden.push(Word::from(vec![a as u8, b as u8]));
            }
        }
    }
    sft_from_forbidden(SftSpec::new(Alphabet::range(1, k), forbidden))
}
