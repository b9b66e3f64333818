//! Cocyclic shifts: `w` is admissible iff `Φ_{w_1} ⋯ Φ_{w_n} ≠ 0`.
//!
//! Products are computed in `i64` and promoted to big integers on overflow.
//! Rational matrices are scaled by the common denominator first, which does
//! not change whether a product vanishes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use symdyn_core::{default_depth_guard, Alphabet, Error, Language, Locality, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Mat {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Mat {
    fn big(&self) -> Vec<BigInt> {
        match self {
            Mat::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Mat::Big(v) => v.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Mat::Small(v) => v.iter().all(|&x| x == 0),
            Mat::Big(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    fn mul(&self, other: &Mat, d: usize) -> Mat {
        if let (Mat::Small(a), Mat::Small(b)) = (self, other) {
            let mut out = vec![0i64; d * d];
            let mut ok = true;
            'outer: for i in 0..d {
                for j in 0..d {
                    let mut s = 0i64;
                    for t in 0..d {
                        match a[i * d + t].checked_mul(b[t * d + j]).and_then(|p| s.checked_add(p)) {
                            Some(v) => s = v,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                    out[i * d + j] = s;
                }
            }
            if ok {
                return Mat::Small(out);
            }
        }
        let (a, b) = (self.big(), other.big());
        let mut out = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|t| &a[i * d + t] * &b[t * d + j]).sum();
            }
        }
        Mat::Big(out)
    }
}

/// One square matrix per symbol, all of the same dimension. Entries are
/// rationals `(numerator, denominator)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocyclicSpec {
    pub alphabet: Alphabet,
    pub matrices: Vec<Vec<Vec<(BigInt, BigInt)>>>,
}

impl CocyclicSpec {
    /// Spec with integer entries.
    pub fn integer(alphabet: Alphabet, matrices: Vec<Vec<Vec<i64>>>) -> Self {
        let matrices = matrices
            .into_iter()
            .map(|m| m.into_iter().map(|row| row.into_iter().map(|x| (BigInt::from(x), BigInt::one())).collect()).collect())
            .collect();
        Self { alphabet, matrices }
    }

    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.len())
    }
}

pub struct CocyclicShift {
    spec: CocyclicSpec,
    d: usize,
    mats: Vec<Mat>,
    cache: Mutex<HashMap<Vec<u8>, Arc<Mat>>>,
    depth: usize,
}

const CACHE_LIMIT: usize = 1 << 20;

pub fn cocyclic_shift(spec: CocyclicSpec) -> Result<CocyclicShift> {
    let d = spec.dimension();
    if spec.matrices.len() != spec.alphabet.size() {
        return Err(Error::InvalidInput("need exactly one matrix per symbol".into()));
    }
    if d == 0 || spec.matrices.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
        return Err(Error::InvalidInput("matrices must be square and of equal dimension".into()));
    }
    let mut mats = Vec::new();
    for m in &spec.matrices {
        if m.iter().flatten().any(|(_, q)| q.is_zero()) {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let lcm = m.iter().flatten().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q));
        let entries: Vec<BigInt> = m.iter().flatten().map(|(p, q)| p * (&lcm / q)).collect();
        let small: Option<Vec<i64>> = entries.iter().map(|x| i64::try_from(x).ok()).collect();
        mats.push(match small {
            Some(v) => Mat::Small(v),
            None => Mat::Big(entries),
        });
    }
    let depth = default_depth_guard(spec.alphabet.size());
    Ok(CocyclicShift { spec, d, mats, cache: Mutex::new(HashMap::new()), depth })
}

impl CocyclicShift {
    pub fn spec(&self) -> &CocyclicSpec {
        &self.spec
    }

    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    fn product(&self, w: &[u8]) -> Arc<Mat> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(w) {
            return m.clone();
        }
        let m = if w.len() == 1 {
            Arc::new(self.mats[w[0] as usize].clone())
        } else {
            let head = self.product(&w[..w.len() - 1]);
            if head.is_zero() {
                head
            } else {
                Arc::new(head.mul(&self.mats[w[w.len() - 1] as usize], self.d))
            }
        };
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(w.to_vec(), m.clone());
        m
    }
}

impl Language for CocyclicShift {
    fn alphabet(&self) -> &Alphabet {
        &self.spec.alphabet
    }

    fn contains(&self, w: &[u8]) -> bool {
        if w.is_empty() {
            return true;
        }
        if w.iter().any(|&a| a as usize >= self.mats.len()) {
            return false;
        }
        !self.product(w).is_zero()
    }

    fn depth_limit(&self) -> usize {
        self.depth
    }

    fn locality(&self) -> Locality {
        Locality::Exact
    }

    fn name(&self) -> String {
        format!("cocyclic shift (dimension {})", self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symdyn_core::{count_words, digits, enumerate_language};

    fn shift(mats: Vec<Vec<Vec<i64>>>) -> CocyclicShift {
        let k = mats.len();
        cocyclic_shift(CocyclicSpec::integer(Alphabet::numeric(k), mats)).unwrap()
    }

    #[test]
    fn identities_give_full_shift() {
        let c = shift(vec![vec![vec![1, 0], vec![0, 1]]; 2]);
        assert_eq!(count_words(&c, 6).unwrap()[6], 64);
        let one = shift(vec![vec![vec![1]]; 3]);
        assert_eq!(count_words(&one, 4).unwrap()[4], 81);
    }

    #[test]
    fn nilpotent_pair() {
        let spec = CocyclicSpec::integer(
            Alphabet::range(1, 2),
            vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 1], vec![0, 0]]],
        );
        let c = cocyclic_shift(spec).unwrap();
        assert!(!c.contains(&[1, 1]));
        assert!(c.contains(&[0, 1]));
    }

    #[test]
    fn vertex_projections_encode_golden_mean() {
        let c = shift(vec![vec![vec![1, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]]);
        let ws = enumerate_language(&c, 3).unwrap();
        assert_eq!(ws, ["000", "001", "010", "100", "101"].map(digits).to_vec());
    }

    #[test]
    fn overflow_promotes_to_big_integers() {
        let c = shift(vec![vec![vec![1 << 40, 0], vec![0, 1]]]);
        let w = vec![0u8; 6];
        assert!(c.contains(&w));
        assert!(matches!(*c.product(&w), Mat::Big(_)));
    }

    #[test]
    fn rational_entries_are_scaled() {
        let half = (BigInt::from(1), BigInt::from(2));
        let zero = (BigInt::from(0), BigInt::from(1));
        let spec = CocyclicSpec {
            alphabet: Alphabet::numeric(1),
            matrices: vec![vec![vec![half.clone(), zero.clone()], vec![zero, half]]],
        };
        let c = cocyclic_shift(spec).unwrap();
        assert!(c.contains(&[0, 0, 0]));
    }

    #[test]
    fn shape_errors() {
        let spec = CocyclicSpec::integer(Alphabet::numeric(2), vec![vec![vec![1]]]);
        assert!(cocyclic_shift(spec).is_err());
    }
}
