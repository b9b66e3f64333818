//! The Markov tower over generators: vertices `(w, k)` for `w ∈ I_{≤depth}`
//! and `1 ≤ k ≤ |w|`, with the 1-block coding `(w, k) ↦ w_k`.

use std::collections::BTreeMap;

use symdyn_core::word::shortlex;
use symdyn_core::{Alphabet, Error, Result, Word, WordSet};

#[derive(Clone, Debug)]
pub struct TowerGraph {
    /// `(w, k)` with `k` 1-based, generators in shortlex order.
    pub vertices: Vec<(Word, usize)>,
    /// Sorted `(from, to)` index pairs.
    pub edges: Vec<(usize, usize)>,
    pub base: usize,
    pub depth: usize,
    pub generators: Vec<Word>,
    pub alphabet: Alphabet,
    succ: Vec<Vec<usize>>,
}

/// `(w, k) → (w, k+1)` for `k < |w|` and `(w, |w|) → (u, 1)` for every generator `u`.
pub fn build_tower(i: &WordSet, depth: usize, base_word: &[u8]) -> Result<TowerGraph> {
    let generators = i.nonempty_up_to(depth)?;
    TowerGraph::from_generators(generators, depth, base_word, i.oracle().alphabet().clone())
}

impl TowerGraph {
    pub fn from_generators(mut generators: Vec<Word>, depth: usize, base_word: &[u8], alphabet: Alphabet) -> Result<Self> {
        generators.sort_by(|a, b| shortlex(a, b));
        generators.dedup();
        if generators.is_empty() || generators.iter().any(|g| g.is_empty()) {
            return Err(Error::InvalidInput("the tower needs nonempty generators".into()));
        }
        let mut vertices = Vec::new();
        let mut first = Vec::new();
        for g in &generators {
            first.push(vertices.len());
            vertices.extend((1..=g.len()).map(|k| (g.clone(), k)));
        }
        let base = generators
            .iter()
            .position(|g| g.as_slice() == base_word)
            .map(|p| first[p])
            .ok_or_else(|| Error::InvalidInput(format!("base word {} is not a generator", alphabet.render(base_word))))?;
        let mut succ = vec![Vec::new(); vertices.len()];
        for (idx, (w, k)) in vertices.iter().enumerate() {
            if *k < w.len() {
                succ[idx].push(idx + 1);
            } else {
                succ[idx].extend(first.iter().copied());
            }
        }
        let edges = succ.iter().enumerate().flat_map(|(a, out)| out.iter().map(move |&b| (a, b))).collect();
        Ok(Self { vertices, edges, base, depth, generators, alphabet, succ })
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// The symbol `w_k` carried by vertex `(w, k)`.
    pub fn coding(&self, v: usize) -> u8 {
        let (w, k) = &self.vertices[v];
        w[k - 1]
    }

    pub fn base_word(&self) -> &Word {
        &self.vertices[self.base].0
    }

    /// Projects a vertex path to its word.
    pub fn project(&self, path: &[usize]) -> Word {
        Word::from(path.iter().map(|&v| self.coding(v)).collect::<Vec<u8>>())
    }

    fn label(&self, v: usize) -> String {
        let (w, k) = &self.vertices[v];
        format!("{}:{k}", self.alphabet.render(w))
    }

    /// Header with base and depth, then one `w:k -> u:j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# base {}\n# depth {}\n", self.label(self.base), self.depth);
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} -> {}\n", self.label(a), self.label(b)));
        }
        out
    }

    /// Out-degree histogram, for summaries.
    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for out in &self.succ {
            *counts.entry(out.len()).or_insert(0) += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{digits, Oracle};
    use symdyn_models::full_shift;

    fn code(ws: &[&str]) -> WordSet {
        let l: Oracle = Arc::new(full_shift(2));
        WordSet::explicit(l, "I", ws.iter().map(|s| digits(s)))
    }

    #[test]
    fn two_generator_tower() {
        let t = build_tower(&code(&["0", "01"]), 6, &digits("0")).unwrap();
        assert_eq!(t.vertices.len(), 3);
        assert_eq!(t.edges, vec![(0, 0), (0, 1), (1, 2), (2, 0), (2, 1)]);
        assert_eq!(t.base, 0);
        assert_eq!(
            t.to_edge_list(),
            "# base 0:1\n# depth 6\n0:1 -> 0:1\n0:1 -> 01:1\n01:1 -> 01:2\n01:2 -> 0:1\n01:2 -> 01:1\n"
        );
        assert_eq!(t.project(&[0, 1, 2, 0]), digits("0010"));
    }

    #[test]
    fn single_generator_self_loop() {
        let t = build_tower(&code(&["0"]), 3, &digits("0")).unwrap();
        assert_eq!(t.vertices.len(), 1);
        assert_eq!(t.edges, vec![(0, 0)]);
    }

    #[test]
    fn truncated_golden_family_vertex_count() {
        let t = build_tower(&code(&["0", "010", "01010"]), 5, &digits("0")).unwrap();
        assert_eq!(t.vertices.len(), 9);
        for (v, (w, k)) in t.vertices.iter().enumerate() {
            if *k < w.len() {
                assert_eq!(t.successors(v), &[v + 1]);
            } else {
                let heads: Vec<&Word> = t.successors(v).iter().map(|&u| &t.vertices[u].0).collect();
                assert_eq!(heads, t.generators.iter().collect::<Vec<_>>());
                assert!(t.successors(v).iter().all(|&u| t.vertices[u].1 == 1));
            }
        }
    }

    #[test]
    fn base_must_be_a_generator() {
        assert!(build_tower(&code(&["0", "01"]), 4, &digits("1")).is_err());
        assert!(build_tower(&code(&[]), 4, &digits("0")).is_err());
    }
}
