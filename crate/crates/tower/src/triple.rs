//! Synchronising triples `(r, c, s)`: search by connector refinement,
//! exhaustive certification to a depth, and the overlap-free extension.

use serde_json::{json, Value};
use symdyn_core::word::{has_period, is_subword};
use symdyn_core::{enumerate_language, enumerate_up_to, Alphabet, Error, Language, Result, Word, WordSet};

/// `r, s ∈ G` and `|c| ≤ τ` such that `r′cs′ ∈ G` for all `r′ ∈ Lr ∩ G`,
/// `s′ ∈ sL ∩ G` with `|r′|, |s′| ≤ cert_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncTriple {
    pub r: Word,
    pub c: Word,
    pub s: Word,
    pub cert_depth: usize,
    /// `[rcs] ∩ σ^{-k}[rcs] = ∅` for `1 ≤ k ≤ max(|rc|, |cs|)`, checked exactly.
    pub no_long_overlaps: bool,
}

impl SyncTriple {
    pub fn rcs(&self) -> Word {
        self.r.concat(&self.c).concat(&self.s)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "r": alphabet.render(&self.r),
            "c": alphabet.render(&self.c),
            "s": alphabet.render(&self.s),
            "cert_depth": self.cert_depth,
            "no_long_overlaps": self.no_long_overlaps,
        })
    }
}

/// The lexicographically least `G`-words of length `len`, used as `(v, w)`.
pub fn default_seeds(g: &WordSet, len: usize) -> Result<(Word, Word)> {
    let first = g.words(len)?.into_iter().next().ok_or(Error::EmptyLanguage)?;
    Ok((first.clone(), first))
}

fn connector_set(g: &WordSet, conns: &[Word], w: &[u8], v: &[u8]) -> Vec<usize> {
    (0..conns.len()).filter(|&i| g.contains(&[w, conns[i].as_slice(), v].concat())).collect()
}

fn is_strict_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Whether `r′cs′ ∈ G` for every `r′ ∈ goods ∩ Lr` and `s′ ∈ goods ∩ sL`.
fn certify(g: &WordSet, goods: &[Word], r: &[u8], c: &[u8], s: &[u8]) -> bool {
    let lefts: Vec<&Word> = goods.iter().filter(|x| x.ends_with(r)).collect();
    let rights: Vec<&Word> = goods.iter().filter(|x| x.starts_with(s)).collect();
    lefts.iter().all(|a| rights.iter().all(|b| g.contains(&[a.as_slice(), c, b.as_slice()].concat())))
}

/// Refines `v^{n+1} ∈ G ∩ v^n L`, `w^{n+1} ∈ G ∩ L w^n` while the connector set
/// `C(w^n, v^n)` strictly shrinks, then certifies `(p, c, q) = (w^n, c, v^n)`
/// with the shortlex-least `c` that works for all `G`-words up to `cert_depth`.
pub fn find_sync_triple(g: &WordSet, tau: usize, seed_v: &[u8], seed_w: &[u8], cert_depth: usize) -> Result<SyncTriple> {
    let lang = g.oracle().clone();
    let alphabet = lang.alphabet();
    for seed in [seed_v, seed_w] {
        if !g.contains(seed) {
            return Err(Error::InvalidInput(format!("seed {} is not a good word", alphabet.render(seed))));
        }
    }
    let conns = enumerate_up_to(lang.as_ref(), tau)?.concat();
    let goods = g.nonempty_up_to(cert_depth)?;
    let lefts: Vec<&Word> = goods.iter().filter(|x| x.ends_with(seed_w)).collect();
    let rights: Vec<&Word> = goods.iter().filter(|x| x.starts_with(seed_v)).collect();
    let mut table = Vec::with_capacity(lefts.len() * rights.len());
    for a in &lefts {
        for b in &rights {
            let c = connector_set(g, &conns, a, b);
            if c.is_empty() {
                return Err(Error::NotSpecified(format!(
                    "no connector of length ≤ {tau} glues {} and {}",
                    alphabet.render(a),
                    alphabet.render(b)
                )));
            }
            table.push((*a, *b, c));
        }
    }
    table.sort_by(|x, y| (x.0.len() + x.1.len(), x.0, x.1).cmp(&(y.0.len() + y.1.len(), y.0, y.1)));
    let (mut w, mut v) = (Word::from(seed_w), Word::from(seed_v));
    let mut current = connector_set(g, &conns, &w, &v);
    while let Some((a, b, c)) =
        table.iter().find(|(a, b, c)| a.ends_with(&w) && b.starts_with(&v) && is_strict_subset(c, &current))
    {
        w = (*a).clone();
        v = (*b).clone();
        current = c.clone();
    }
    for &i in &current {
        if certify(g, &goods, &w, &conns[i], &v) {
            let mut t = SyncTriple { r: w, c: conns[i].clone(), s: v, cert_depth, no_long_overlaps: false };
            t.no_long_overlaps = long_overlap(lang.as_ref(), &t)?.is_none();
            return Ok(t);
        }
    }
    Err(Error::CertExhausted(cert_depth))
}

/// The least `k ≤ max(|rc|, |cs|)` with `[rcs] ∩ σ^{-k}[rcs] ≠ ∅`, with the
/// admissible word of length `|rcs| + k` that carries both occurrences.
pub fn long_overlap(lang: &dyn Language, t: &SyncTriple) -> Result<Option<(usize, Word)>> {
    let x = t.rcs();
    let m = x.len();
    let k_max = (t.r.len() + t.c.len()).max(t.c.len() + t.s.len());
    for k in 1..=k_max {
        if k < m {
            if has_period(&x, k) {
                let y = Word::from(&x[..k]).concat(&x);
                if lang.contains(&y) {
                    return Ok(Some((k, y)));
                }
            }
        } else {
            for u in enumerate_language(lang, k - m)? {
                let y = x.concat(&u).concat(&x);
                if lang.contains(&y) {
                    return Ok(Some((k, y)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether every nonempty `G`-word up to `depth` is a subword of one periodic
/// sequence, the one generated by the minimal period of the first longest word.
pub fn is_periodic(g: &WordSet, depth: usize) -> Result<bool> {
    let goods = g.nonempty_up_to(depth)?;
    let Some(longest) = goods.last() else { return Ok(true) };
    let n = longest.len();
    let base = goods.iter().find(|w| w.len() == n).expect("a longest word");
    let p = (1..=n).find(|&p| has_period(base, p)).unwrap_or(n);
    let block = Word::from(&base[..p]).power(n / p + 2);
    Ok(goods.iter().all(|w| is_subword(w, &block)))
}

/// `α = log 2 / (2 ℓ log k)` with `ℓ` the least step such that
/// `#G_{ℓm − |c|} ≥ 2^m` at every observed `m`.
pub fn aperiodicity_alpha(g: &WordSet, c_len: usize, depth: usize) -> Result<f64> {
    let counts: Vec<usize> = g.words_up_to(depth)?.iter().map(Vec::len).collect();
    let k = g.oracle().alphabet().size().max(2) as f64;
    let ell = (1..=depth.max(1))
        .find(|&l| {
            let ms: Vec<usize> = (1..).take_while(|m| l * m <= depth + c_len).filter(|m| l * m > c_len).collect();
            !ms.is_empty() && ms.iter().all(|&m| m >= 63 || counts[l * m - c_len] as u64 >= 1u64 << m)
        })
        .unwrap_or(depth.max(1));
    Ok(std::f64::consts::LN_2 / (2.0 * ell as f64 * k.ln()))
}

/// Returns the triple unchanged when it has no long overlaps; otherwise
/// extends it to `(vup, c, qu′w)` with `w ∈ G` not `k`-periodic for
/// `k ≤ max(1, ⌊α|w|⌋)`, `v ∈ G` shorter than `w` and not a subword of it,
/// and `u, u′ ∈ L_{≤τ}` shortlex-least. Candidates are scanned by `|w|`, then
/// lexicographically, and the first one passing the exact overlap scan and
/// the certification is returned.
pub fn ensure_no_long_overlaps(triple: &SyncTriple, g: &WordSet, tau: usize, cert_depth: usize) -> Result<SyncTriple> {
    let lang = g.oracle().clone();
    if long_overlap(lang.as_ref(), triple)?.is_none() {
        return Ok(SyncTriple { no_long_overlaps: true, ..triple.clone() });
    }
    if is_periodic(g, cert_depth)? {
        return Err(Error::PeriodicG);
    }
    let alpha = aperiodicity_alpha(g, triple.c.len(), cert_depth)?;
    let conns = enumerate_up_to(lang.as_ref(), tau)?.concat();
    let by_len = g.words_up_to(cert_depth)?;
    let goods: Vec<Word> = by_len.iter().skip(1).flatten().cloned().collect();
    let (p, c, q) = (&triple.r, &triple.c, &triple.s);
    for lw in 2..=cert_depth {
        let k_max = ((alpha * lw as f64).floor() as usize).max(1);
        for w in by_len[lw].iter().filter(|w| (1..=k_max).all(|k| !has_period(w, k))) {
            for v in by_len[1..lw].iter().flatten().filter(|v| !is_subword(v, w)) {
                let Some(u) = conns.iter().find(|u| g.contains(&v.concat(u).concat(p))) else { continue };
                let Some(u2) = conns.iter().find(|u2| g.contains(&q.concat(u2).concat(w))) else { continue };
                let cand = SyncTriple {
                    r: v.concat(u).concat(p),
                    c: c.clone(),
                    s: q.concat(u2).concat(w),
                    cert_depth,
                    no_long_overlaps: true,
                };
                if long_overlap(lang.as_ref(), &cand)?.is_none() && certify(g, &goods, &cand.r, &cand.c, &cand.s) {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::CertExhausted(cert_depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{digits, Alphabet, Oracle, PredicateLanguage};
    use symdyn_models::{binary_sft, full_shift};

    fn golden() -> Oracle {
        Arc::new(binary_sft(&["11"]).unwrap())
    }

    #[test]
    fn golden_mean_zero_seeds_synchronise_immediately() {
        let g = WordSet::language(golden());
        let t = find_sync_triple(&g, 0, &digits("0"), &digits("0"), 10).unwrap();
        assert_eq!((t.r.clone(), t.c.clone(), t.s.clone()), (digits("0"), digits(""), digits("0")));
        assert_eq!(t.cert_depth, 10);
        assert!(!t.no_long_overlaps);
        let brute = g.nonempty_up_to(10).unwrap();
        for a in brute.iter().filter(|a| a.ends_with(&[0])) {
            for b in brute.iter().filter(|b| b.starts_with(&[0])) {
                assert!(golden().contains(&a.concat(b)));
            }
        }
    }

    #[test]
    fn forbid_three_ones_zero_seeds() {
        let g = WordSet::language(Arc::new(binary_sft(&["111"]).unwrap()));
        let t = find_sync_triple(&g, 0, &digits("0"), &digits("0"), 10).unwrap();
        assert_eq!((t.r, t.c, t.s), (digits("0"), digits(""), digits("0")));
    }

    #[test]
    fn full_shift_takes_the_seeds() {
        let g = WordSet::language(Arc::new(full_shift(2)));
        let t = find_sync_triple(&g, 0, &digits("0"), &digits("1"), 8).unwrap();
        assert_eq!((t.r, t.c, t.s), (digits("1"), digits(""), digits("0")));
    }

    #[test]
    fn refinement_shrinks_connectors() {
        let g = WordSet::language(golden());
        let t = find_sync_triple(&g, 1, &digits("0"), &digits("0"), 8).unwrap();
        assert_eq!(t.c, digits(""));
        let t = find_sync_triple(&g, 1, &digits("1"), &digits("1"), 8).unwrap();
        assert_eq!((t.r, t.c, t.s), (digits("1"), digits("0"), digits("1")));
    }

    #[test]
    fn missing_connector_is_reported() {
        let g = WordSet::language(golden());
        let err = find_sync_triple(&g, 0, &digits("1"), &digits("1"), 6).unwrap_err();
        assert!(matches!(err, Error::NotSpecified(_)));
    }

    #[test]
    fn zero_triple_overlaps_at_one() {
        let t = SyncTriple { r: digits("0"), c: digits(""), s: digits("0"), cert_depth: 10, no_long_overlaps: false };
        assert_eq!(long_overlap(golden().as_ref(), &t).unwrap(), Some((1, digits("000"))));
    }

    #[test]
    fn extension_removes_long_overlaps() {
        let g = WordSet::language(golden());
        let t = find_sync_triple(&g, 0, &digits("0"), &digits("0"), 10).unwrap();
        let e = ensure_no_long_overlaps(&t, &g, 0, 10).unwrap();
        assert!(e.no_long_overlaps);
        assert!(e.r.ends_with(&t.r) && e.s.starts_with(&t.s));
        assert_eq!((e.r.clone(), e.c.clone(), e.s.clone()), (digits("100"), digits(""), digits("0001")));
        let x = e.rcs();
        for k in 1..=(e.r.len() + e.c.len()).max(e.c.len() + e.s.len()) {
            for y in enumerate_language(golden().as_ref(), x.len() + k).unwrap() {
                assert!(!(y.starts_with(&x) && y.ends_with(&x)), "overlap at {k}");
            }
        }
    }

    #[test]
    fn single_orbit_is_periodic() {
        let zeros: Oracle = Arc::new(PredicateLanguage::new(Alphabet::numeric(2), 20, "0^∞", |w: &[u8]| {
            w.iter().all(|&a| a == 0)
        }));
        let g = WordSet::language(zeros);
        assert!(is_periodic(&g, 10).unwrap());
        let t = find_sync_triple(&g, 0, &digits("0"), &digits("0"), 10).unwrap();
        assert_eq!(ensure_no_long_overlaps(&t, &g, 0, 10).unwrap_err(), Error::PeriodicG);
        assert!(!is_periodic(&WordSet::language(golden()), 10).unwrap());
    }

    #[test]
    fn alpha_respects_the_doubling_step() {
        let g = WordSet::language(golden());
        let a = aperiodicity_alpha(&g, 0, 12).unwrap();
        assert!((a - 0.25).abs() < 1e-12);
    }

    #[test]
    fn default_seeds_are_least_words() {
        let g = WordSet::language(golden());
        assert_eq!(default_seeds(&g, 2).unwrap(), (digits("00"), digits("00")));
    }
}
