//! Coded shifts: the closure of bi-infinite concatenations of generators.

use symdyn_core::word::is_subword;
use symdyn_core::{default_depth_guard, Alphabet, Error, Language, Locality, Result, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct CodedSpec {
    pub alphabet: Alphabet,
    pub generators: Vec<Word>,
    /// Set when the generators are a truncation of an infinite family.
    pub truncated: bool,
}

impl CodedSpec {
    /// Longest generator length; windows are padded by twice this.
    pub fn pad(&self) -> usize {
        self.generators.iter().map(|g| g.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct CodedShift {
    spec: CodedSpec,
    depth: usize,
}

pub fn coded_shift(spec: CodedSpec) -> Result<CodedShift> {
    if spec.generators.is_empty() {
        return Err(Error::InvalidInput("at least one generator is required".into()));
    }
    let k = spec.alphabet.size();
    for g in &spec.generators {
        if g.is_empty() {
            return Err(Error::InvalidInput("generators must be nonempty".into()));
        }
        if g.iter().any(|&a| a as usize >= k) {
            return Err(Error::InvalidInput("generator uses a symbol outside the alphabet".into()));
        }
    }
    let depth = default_depth_guard(k);
    Ok(CodedShift { spec, depth })
}

impl CodedShift {
    pub fn spec(&self) -> &CodedSpec {
        &self.spec
    }

    pub fn is_truncated(&self) -> bool {
        self.spec.truncated
    }

    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }
}

impl Language for CodedShift {
    fn alphabet(&self) -> &Alphabet {
        &self.spec.alphabet
    }

    /// `w` is a subword of a finite concatenation of generators. A parse
    /// enters through a proper suffix of some generator, crosses whole
    /// generators, and leaves through a proper prefix.
    fn contains(&self, w: &[u8]) -> bool {
        let n = w.len();
        let gens = &self.spec.generators;
        if n == 0 || gens.iter().any(|g| is_subword(w, g)) {
            return true;
        }
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for g in gens {
            for s in 1..g.len() {
                let tail = &g[s..];
                if tail.len() <= n && w.starts_with(tail) {
                    reach[tail.len()] = true;
                }
            }
        }
        for i in 0..n {
            if !reach[i] {
                continue;
            }
            let rest = &w[i..];
            for g in gens {
                if g.len() <= rest.len() {
                    if rest.starts_with(g) {
                        reach[i + g.len()] = true;
                    }
                } else if g.starts_with(rest) {
                    return true;
                }
            }
        }
        reach[n]
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        Locality::Exact
    }

    fn name(&self) -> String {
        let gs: Vec<String> = self.spec.generators.iter().map(|g| self.spec.alphabet.render(g)).collect();
        let more = if self.spec.truncated { ",…" } else { "" };
        format!("coded shift generated by {{{}{more}}}", gs.join(","))
    }
}
