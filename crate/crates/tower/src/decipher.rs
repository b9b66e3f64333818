//! Unique decipherability of a finite truncation `I_{≤depth}` by the
//! Sardinas–Patterson dangling-suffix search, with an explicit ambiguous word.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};
use symdyn_core::{Alphabet, Result, Word, WordSet};

/// A word with two distinct factorisations into codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub first: Vec<Word>,
    pub second: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decipherability {
    pub pass: bool,
    pub depth: usize,
    pub code: Vec<Word>,
    pub witness: Option<Ambiguity>,
}

impl Decipherability {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let render = |ws: &[Word]| ws.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>();
        json!({
            "pass": self.pass,
            "depth": self.depth,
            "code": render(&self.code),
            "witness": self.witness.as_ref().map(|a| json!({
                "word": alphabet.render(&a.word),
                "first": render(&a.first),
                "second": render(&a.second),
            })),
        })
    }
}

fn joined(ws: &[Word]) -> Word {
    Word::from(ws.iter().flat_map(|w| w.iter().copied()).collect::<Vec<u8>>())
}

/// Breadth-first dangling-suffix search. Each pending suffix `t` carries two
/// factorisation prefixes with `top = bottom · t`; reaching a codeword closes
/// both into an ambiguous word. Codewords are scanned in the given order.
pub fn sardinas_patterson(code: &[Word]) -> Option<Ambiguity> {
    let mut queue: VecDeque<(Word, Vec<Word>, Vec<Word>)> = VecDeque::new();
    let mut seen = BTreeSet::new();
    for a in code {
        if a.is_empty() {
            return Some(Ambiguity { word: Word::empty(), first: vec![], second: vec![a.clone()] });
        }
        for b in code {
            if a != b && b.starts_with(a) {
                let t = Word::from(&b[a.len()..]);
                if seen.insert(t.clone()) {
                    queue.push_back((t, vec![b.clone()], vec![a.clone()]));
                }
            }
        }
    }
    while let Some((t, top, bottom)) = queue.pop_front() {
        for c in code {
            if *c == t {
                let mut second = bottom.clone();
                second.push(c.clone());
                return Some(Ambiguity { word: joined(&top), first: top, second });
            }
            if c.starts_with(&t) {
                let rest = Word::from(&c[t.len()..]);
                if seen.insert(rest.clone()) {
                    let mut next = bottom.clone();
                    next.push(c.clone());
                    queue.push_back((rest, next, top.clone()));
                }
            } else if t.starts_with(c) {
                let rest = Word::from(&t[c.len()..]);
                if seen.insert(rest.clone()) {
                    let mut next = bottom.clone();
                    next.push(c.clone());
                    queue.push_back((rest, top.clone(), next));
                }
            }
        }
    }
    None
}

/// Runs the search on `I_{≤depth}` in shortlex order.
pub fn is_uniquely_decipherable(i: &WordSet, depth: usize) -> Result<Decipherability> {
    let code = i.nonempty_up_to(depth)?;
    let witness = sardinas_patterson(&code);
    Ok(Decipherability { pass: witness.is_none(), depth, code, witness })
}

/// Number of ways to write `w` as a concatenation of codewords.
pub fn count_factorisations(w: &[u8], code: &BTreeSet<Word>) -> u64 {
    let n = w.len();
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for j in 1..=n {
        ways[j] = (0..j).filter(|&i| ways[i] > 0 && code.contains(&Word::from(&w[i..j]))).map(|i| ways[i]).sum();
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use symdyn_core::digits;

    fn code(ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| digits(s)).collect()
    }

    #[test]
    fn overlapping_generators_are_ambiguous() {
        let a = sardinas_patterson(&code(&["0", "01", "10"])).unwrap();
        assert_eq!(a.word, digits("010"));
        assert_eq!(joined(&a.first), a.word);
        assert_eq!(joined(&a.second), a.word);
        assert_ne!(a.first, a.second);
        let set: BTreeSet<Word> = code(&["0", "01", "10"]).into_iter().collect();
        assert_eq!(count_factorisations(&a.word, &set), 2);
    }

    #[test]
    fn prefix_extension_codes_decipher() {
        assert_eq!(sardinas_patterson(&code(&["0", "01"])), None);
        assert_eq!(sardinas_patterson(&code(&["10", "100"])), None);
        assert_eq!(sardinas_patterson(&code(&["0", "1"])), None);
    }

    #[test]
    fn classic_ambiguous_codes() {
        for ws in [&["1", "10", "0"][..], &["0", "00"][..], &["01", "10", "0101"][..]] {
            let a = sardinas_patterson(&code(ws)).unwrap();
            assert_eq!(joined(&a.first), joined(&a.second));
        }
    }

    #[test]
    fn factorisation_counts() {
        let set: BTreeSet<Word> = code(&["0", "01"]).into_iter().collect();
        assert_eq!(count_factorisations(&digits("0010"), &set), 1);
        assert_eq!(count_factorisations(&digits("011"), &set), 0);
        assert_eq!(count_factorisations(&digits(""), &set), 1);
    }
}
