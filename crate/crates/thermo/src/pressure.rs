//! Partition sums `Λ_n(D, φ)` and finite-depth pressure reports.

use serde_json::{json, Value};
use symdyn_core::fmt::{sig17, sig17_from_ln};
use symdyn_core::language::{guard, par_fold};
use symdyn_core::{Error, ExpSum, Language, Potential, Result, Scalar, WordSet};

fn check_alphabet<S: Scalar>(set: &WordSet, pot: &Potential<S>) -> Result<()> {
    if set.oracle().alphabet().size() != pot.alphabet_size() {
        return Err(Error::InvalidInput("potential and language alphabets differ".into()));
    }
    Ok(())
}

/// `Λ_m(D, φ)` for `m = 0..=n_max`, one compensated sum per length.
pub fn partition_table<S: Scalar>(set: &WordSet, pot: &Potential<S>, n_max: usize) -> Result<Vec<ExpSum<S>>> {
    check_alphabet(set, pot)?;
    let lang: &dyn Language = set.oracle().as_ref();
    if let Some(words) = set.explicit_words() {
        let mut out = vec![ExpSum::new(); n_max + 1];
        for w in words.iter().filter(|w| w.len() <= n_max) {
            out[w.len()].add_ln(pot.phi_hat(lang, w)?);
        }
        return Ok(out);
    }
    if let (true, Some(m)) = (set.is_full_language(), lang.locality().window()) {
        return Ok(window_table(lang, pot, m, n_max));
    }
    guard(lang, n_max)?;
    let keep = set.keep_fn();
    Ok(par_fold(
        lang,
        n_max,
        keep.as_ref(),
        || vec![ExpSum::new(); n_max + 1],
        |acc, w| {
            if set.accepts_admissible(w) {
                acc[w.len()].add_ln(pot.inner_sum(w) + pot.tail_max(lang, w));
            }
        },
        |a, b| a.iter_mut().zip(&b).for_each(|(x, y)| x.merge(y)),
    ))
}

/// Transfer-matrix form of [`partition_table`] for a window-local language:
/// states are the admissible words of length `max(m, r) − 1`, extended one
/// symbol at a time. Shorter lengths are summed directly.
fn window_table<S: Scalar>(lang: &dyn Language, pot: &Potential<S>, m: usize, n_max: usize) -> Vec<ExpSum<S>> {
    let state_len = m.max(pot.range()).max(1) - 1;
    let mut out = vec![ExpSum::new(); n_max + 1];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for n in 0..=state_len.min(n_max) {
        for w in &layer {
            out[n].add_ln(pot.inner_sum(w) + pot.tail_max(lang, w));
        }
        if n < state_len {
            layer = layer
                .iter()
                .flat_map(|w| (0..lang.alphabet().size() as u8).map(move |a| [w.as_slice(), &[a]].concat()))
                .filter(|w| lang.contains(w))
                .collect();
        }
    }
    if n_max <= state_len {
        return out;
    }
    let states = layer;
    let index: std::collections::HashMap<&[u8], usize> = states.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let tails: Vec<S> = states.iter().map(|w| pot.tail_max(lang, w)).collect();
    let mut edges: Vec<Vec<(usize, S)>> = vec![Vec::new(); states.len()];
    for (i, w) in states.iter().enumerate() {
        for a in 0..lang.alphabet().size() as u8 {
            let x = [w.as_slice(), &[a]].concat();
            if lang.extends(&x) {
                if let Some(&j) = index.get(&x[1..]) {
                    edges[i].push((j, pot.last_window(&x)));
                }
            }
        }
    }
    let mut sums: Vec<ExpSum<S>> = states
        .iter()
        .map(|w| {
            let mut e = ExpSum::new();
            e.add_ln(pot.inner_sum(w));
            e
        })
        .collect();
    let mut counts = vec![1u64; states.len()];
    for slot in out.iter_mut().take(n_max + 1).skip(state_len + 1) {
        let mut next = vec![ExpSum::new(); states.len()];
        let mut next_counts = vec![0u64; states.len()];
        for (i, out_edges) in edges.iter().enumerate() {
            for &(j, phi) in out_edges {
                next[j].merge(&sums[i].scaled_ln(phi));
                next_counts[j] = next_counts[j].saturating_add(counts[i]);
            }
        }
        sums = next;
        counts = next_counts;
        let mut total = ExpSum::new();
        for (i, s) in sums.iter().enumerate() {
            total.merge(&s.scaled_ln(tails[i]));
        }
        *slot = total.with_terms(counts.iter().fold(0u64, |a, &b| a.saturating_add(b)));
    }
    out
}

/// `Λ_n(D, φ) = Σ_{w ∈ D_n} e^{φ̂(w)}`.
pub fn partition_sum<S: Scalar>(set: &WordSet, pot: &Potential<S>, n: usize) -> Result<ExpSum<S>> {
    Ok(partition_table(set, pot, n)?.swap_remove(n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PressureRow<S = f64> {
    pub n: usize,
    pub count: u64,
    pub ln_sum: S,
    pub rate: S,
    /// Running minimum of `(log Λ_m + |φ|_d)/m` over `m ≤ n`; full language only.
    pub upper_bound: Option<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapFlags {
    pub full_language: bool,
    pub zero_potential: bool,
    /// `fekete_upper ≥ point_estimate − 1e−9`.
    pub fekete_dominates_estimate: bool,
    /// `Λ_{m+n} ≤ e^{|φ|_d} Λ_m Λ_n` across the table.
    pub submultiplicative: bool,
    /// Some length has no words.
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PressureReport<S = f64> {
    pub label: String,
    pub rows: Vec<PressureRow<S>>,
    pub fekete_upper: Option<S>,
    pub point_estimate: S,
    pub distortion: S,
    pub gap_flags: GapFlags,
}

/// Slope of `log Λ_n` between the last row and the last nonempty row at or
/// below half its length; falls back to `(1/n) log Λ_n`.
pub fn slope_estimate<S: Scalar>(ln: &[S]) -> S {
    let n1 = ln.len() - 1;
    if n1 == 0 {
        return S::neg_infinity();
    }
    if ln[n1] == S::neg_infinity() {
        return S::neg_infinity();
    }
    let n0 = (1..=n1 / 2).rev().find(|&m| ln[m] > S::neg_infinity());
    match n0 {
        Some(m) if m < n1 => (ln[n1] - ln[m]) / S::from_usize(n1 - m).unwrap(),
        _ => ln[n1] / S::from_usize(n1).unwrap(),
    }
}

fn submultiplicative<S: Scalar>(ln: &[S], d: S) -> bool {
    let n_max = ln.len() - 1;
    let tol = S::of(1e-12);
    (1..=n_max).all(|m| {
        (1..=n_max - m).all(|n| {
            let lhs = ln[m + n];
            let rhs = ln[m] + ln[n] + d;
            lhs == S::neg_infinity() || lhs <= rhs + tol * rhs.abs().max(S::one())
        })
    })
}

/// Table of `(1/n) log Λ_n` for `n = 1..=n_max`, with the Fekete upper
/// bound when `set` is the full language.
pub fn pressure_estimate<S: Scalar>(set: &WordSet, pot: &Potential<S>, n_max: usize) -> Result<PressureReport<S>> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be positive".into()));
    }
    let table = partition_table(set, pot, n_max)?;
    let ln: Vec<S> = table.iter().map(|e| e.ln()).collect();
    let full = set.is_full_language();
    let d = pot.distortion_bound();
    let mut best: Option<S> = None;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let nn = S::from_usize(n).unwrap();
        let rate = ln[n] / nn;
        let upper_bound = if full {
            let b = (ln[n] + d) / nn;
            best = Some(best.map_or(b, |x: S| x.min(b)));
            best
        } else {
            None
        };
        rows.push(PressureRow { n, count: table[n].terms(), ln_sum: ln[n], rate, upper_bound });
    }
    let point_estimate = slope_estimate(&ln);
    let fekete_upper = best;
    let gap_flags = GapFlags {
        full_language: full,
        zero_potential: pot.is_zero(),
        fekete_dominates_estimate: fekete_upper.is_none_or(|f| f >= point_estimate - S::of(1e-9)),
        submultiplicative: !full || submultiplicative(&ln, d),
        vanishes: rows.iter().any(|r| r.count == 0),
    };
    Ok(PressureReport { label: set.label().to_string(), rows, fekete_upper, point_estimate, distortion: d, gap_flags })
}

fn opt(x: Option<f64>) -> String {
    x.map(sig17).unwrap_or_default()
}

impl<S: Scalar> PressureReport<S> {
    pub fn final_rate(&self) -> S {
        self.rows.last().map_or(S::neg_infinity(), |r| r.rate)
    }

    pub fn rate(&self, n: usize) -> Option<S> {
        self.rows.get(n.checked_sub(1)?).map(|r| r.rate)
    }

    /// CSV with columns `n,count_or_sum,rate,upper_bound`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count_or_sum,rate,upper_bound\n");
        for r in &self.rows {
            let sum = if self.gap_flags.zero_potential { r.count.to_string() } else { sig17_from_ln(r.ln_sum.as_f64()) };
            out.push_str(&format!("{},{},{},{}\n", r.n, sum, sig17(r.rate.as_f64()), opt(r.upper_bound.map(|x| x.as_f64()))));
        }
        out
    }

    /// Two columns `n rate` for plotting.
    pub fn to_dat(&self) -> String {
        self.rows.iter().map(|r| format!("{} {}\n", r.n, sig17(r.rate.as_f64()))).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "count": r.count,
                    "ln_sum": sig17(r.ln_sum.as_f64()),
                    "rate": sig17(r.rate.as_f64()),
                    "upper_bound": r.upper_bound.map(|x| sig17(x.as_f64())),
                })
            })
            .collect();
        json!({
            "label": self.label,
            "rows": rows,
            "fekete_upper": self.fekete_upper.map(|x| sig17(x.as_f64())),
            "point_estimate": sig17(self.point_estimate.as_f64()),
            "distortion": sig17(self.distortion.as_f64()),
            "gap_flags": {
                "full_language": self.gap_flags.full_language,
                "zero_potential": self.gap_flags.zero_potential,
                "fekete_dominates_estimate": self.gap_flags.fekete_dominates_estimate,
                "submultiplicative": self.gap_flags.submultiplicative,
                "vanishes": self.gap_flags.vanishes,
            },
        })
    }
}

/// Outcome of the margin rule comparing a collection against the language.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginVerdict<S = f64> {
    pub pass: bool,
    pub delta: S,
    /// `rate_n(L) − rate_n(C)` over the top half of the table.
    pub gaps: Vec<(usize, S)>,
    pub failing: Vec<usize>,
}

/// Gap holds iff `(1/n) log Λ_n(C) ≤ (1/n) log Λ_n(L) − δ` for every `n` in
/// the top half of the table.
pub fn margin_rule<S: Scalar>(c: &PressureReport<S>, l: &PressureReport<S>, delta: S) -> MarginVerdict<S> {
    let n_max = c.rows.len().min(l.rows.len());
    let mut gaps = Vec::new();
    let mut failing = Vec::new();
    for n in (n_max / 2 + 1)..=n_max {
        let (rc, rl) = (c.rows[n - 1].rate, l.rows[n - 1].rate);
        let gap = rl - rc;
        gaps.push((n, gap));
        if !(rc == S::neg_infinity() || rc <= rl - delta) {
            failing.push(n);
        }
    }
    MarginVerdict { pass: failing.is_empty() && n_max > 0, delta, gaps, failing }
}

/// Default margin `δ` in nats.
pub const DEFAULT_DELTA: f64 = 0.05;

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{count_words, digits, Oracle};
    use symdyn_models::{binary_sft, full_shift};

    fn golden() -> Oracle {
        Arc::new(binary_sft(&["11"]).unwrap())
    }

    #[test]
    fn window_recursion_matches_enumeration() {
        let pots = [
            Potential::<f64>::zero(2),
            Potential::from_fn(2, 1, |w: &[u8]| 0.3 * w[0] as f64 - 0.1),
            Potential::from_fn(2, 3, |w: &[u8]| (w[0] as f64) - 0.5 * (w[1] as f64) + 0.25 * (w[2] as f64)),
        ];
        for forbidden in [&["11"][..], &["111"][..], &["0110", "11"][..], &[][..]] {
            let l: Oracle = Arc::new(binary_sft(forbidden).unwrap());
            let all = WordSet::filtered(l.clone(), "all", |_| true);
            for pot in &pots {
                let fast = partition_table(&WordSet::language(l.clone()), pot, 12).unwrap();
                let slow = partition_table(&all, pot, 12).unwrap();
                for n in 0..=12 {
                    assert_eq!(fast[n].terms(), slow[n].terms());
                    assert!((fast[n].ln() - slow[n].ln()).abs() < 1e-12, "{forbidden:?} n={n}");
                    if pot.is_zero() {
                        assert_eq!(fast[n].value(), slow[n].value());
                    }
                }
            }
        }
    }

    #[test]
    fn full_two_shift_at_depth_thirty() {
        let l = WordSet::language(Arc::new(full_shift(2)));
        let t = partition_table(&l, &Potential::<f64>::zero(2), 30).unwrap();
        assert_eq!(t[30].value(), (1u64 << 30) as f64);
        assert_eq!(t[30].terms(), 1 << 30);
    }

    #[test]
    fn zero_potential_counts_words() {
        let l = WordSet::language(golden());
        let z = Potential::<f64>::zero(2);
        assert_eq!(partition_sum(&l, &z, 3).unwrap().value(), 5.0);
        let counts = count_words(golden().as_ref(), 20).unwrap();
        let t = partition_table(&l, &z, 20).unwrap();
        for n in 0..=20 {
            assert_eq!(t[n].value(), counts[n] as f64);
        }
    }

    #[test]
    fn full_shift_rate_is_log_k() {
        let l = WordSet::language(Arc::new(full_shift(3)));
        let r = pressure_estimate(&l, &Potential::<f64>::zero(3), 10).unwrap();
        for row in &r.rows {
            assert!((row.rate - 3f64.ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_potential_shifts_by_cn() {
        let l = WordSet::language(golden());
        let c = 0.7;
        let t0 = partition_table(&l, &Potential::<f64>::zero(2), 12).unwrap();
        let tc = partition_table(&l, &Potential::constant(2, c), 12).unwrap();
        for n in 1..=12 {
            assert!((tc[n].ln() - (t0[n].ln() + c * n as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn explicit_sets_sum_their_members() {
        let ws = WordSet::explicit(golden(), "E", [digits("0"), digits("10"), digits("01"), digits("11")]);
        let t = partition_table(&ws, &Potential::<f64>::zero(2), 3).unwrap();
        assert_eq!(t.iter().map(|e| e.terms()).collect::<Vec<_>>(), vec![0, 1, 2, 0]);
    }

    #[test]
    fn slope_estimator_uses_half_table() {
        let ln = [0.0f64, 1.0, 2.5, 3.0, 4.0];
        assert!((slope_estimate(&ln) - (4.0 - 2.5) / 2.0).abs() < 1e-15);
        let dead = [0.0, f64::NEG_INFINITY, f64::NEG_INFINITY];
        assert_eq!(slope_estimate(&dead), f64::NEG_INFINITY);
    }

    #[test]
    fn margin_rule_on_subsets() {
        let l = WordSet::language(golden());
        let zeros = WordSet::prefix_closed(golden(), "0*", |w| w.iter().all(|&a| a == 0));
        let z = Potential::<f64>::zero(2);
        let rl = pressure_estimate(&l, &z, 12).unwrap();
        let rc = pressure_estimate(&zeros, &z, 12).unwrap();
        assert!(margin_rule(&rc, &rl, 0.05).pass);
        assert!(!margin_rule(&rl, &rl, 0.05).pass);
    }

    #[test]
    fn f32_matches_f64() {
        let l = WordSet::language(golden());
        let r64 = pressure_estimate(&l, &Potential::<f64>::indicator(2, &[0], 0.3), 14).unwrap();
        let r32 = pressure_estimate(&l, &Potential::<f32>::indicator(2, &[0], 0.3), 14).unwrap();
        assert!((r64.point_estimate - f64::from(r32.point_estimate)).abs() < 1e-4);
    }

    #[test]
    fn csv_and_json_shapes() {
        let l = WordSet::language(golden());
        let r = pressure_estimate(&l, &Potential::<f64>::zero(2), 4).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("n,count_or_sum,rate,upper_bound\n1,2,"));
        assert_eq!(csv.lines().count(), 5);
        let j = r.to_json();
        assert_eq!(j["rows"][2]["count"], 5);
        assert!(j["point_estimate"].as_str().unwrap().contains('e'));
    }
}
