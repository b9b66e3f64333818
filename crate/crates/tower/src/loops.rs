//! Loop sums `Z_n` and first-return sums `Z_n^*` at the base vertex, by a
//! path DP on the tower and by a word-side DP over distinct `F`-words, and
//! the strong positive recurrence diagnostic.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use symdyn_core::fmt::sig17;
use symdyn_core::{Error, Potential, Result, Word};
use symdyn_thermo::{margin_rule, pressure_estimate, MarginVerdict, DEFAULT_DELTA};

use crate::family::FreeFamily;
use crate::graph::TowerGraph;

/// Extra log-tolerance added to the computable part of the distortion envelope.
pub const LOOP_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct LoopRow {
    pub n: usize,
    pub z: f64,
    pub z_star: f64,
}

impl LoopRow {
    pub fn rate(&self) -> f64 {
        self.z.ln() / self.n as f64
    }

    pub fn rate_star(&self) -> f64 {
        self.z_star.ln() / self.n as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopTable {
    pub base_word: Word,
    pub depth: usize,
    pub rows: Vec<LoopRow>,
    /// Word-side `(Z_n, Z_n^*)` when cross-checked.
    pub word_side: Option<Vec<(f64, f64)>>,
    /// Log-tolerance of the cross-check.
    pub tolerance: f64,
    /// Largest `|log graph − log words|` seen.
    pub max_log_discrepancy: f64,
}

impl LoopTable {
    /// Columns `n,Z_n,Z_n_star,rate,rate_star`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,Z_n,Z_n_star,rate,rate_star\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, sig17(r.z), sig17(r.z_star), sig17(r.rate()), sig17(r.rate_star())));
        }
        out
    }

    /// Three columns `n rate rate_star` for plotting.
    pub fn to_dat(&self) -> String {
        self.rows.iter().map(|r| format!("{} {} {}\n", r.n, sig17(r.rate()), sig17(r.rate_star()))).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"n": r.n, "Z_n": sig17(r.z), "Z_n_star": sig17(r.z_star), "rate": sig17(r.rate()), "rate_star": sig17(r.rate_star())}))
            .collect();
        json!({
            "depth": self.depth,
            "rows": rows,
            "cross_checked": self.word_side.is_some(),
            "tolerance": sig17(self.tolerance),
            "max_log_discrepancy": sig17(self.max_log_discrepancy),
        })
    }
}

/// Running head (first `h` symbols) and tail (last `h` symbols) of the loop
/// word, enough to close the cyclic Birkhoff sum of a range-`h+1` potential.
struct Windows<'a> {
    pot: &'a Potential<f64>,
    h: usize,
}

impl Windows<'_> {
    fn new(pot: &Potential<f64>) -> Windows<'_> {
        let h = if pot.is_zero() { 0 } else { pot.range() - 1 };
        Windows { pot, h }
    }

    /// Appends the symbol at position `t`; returns the new head, tail and the
    /// value of the window it completes.
    fn push(&self, t: usize, head: &[u8], tail: &[u8], a: u8) -> (Word, Word, f64) {
        if self.pot.is_zero() {
            return (Word::empty(), Word::empty(), 0.0);
        }
        let mut hd = Word::from(head);
        if hd.len() < self.h {
            hd.push(a);
        }
        let mut win = Word::from(tail);
        win.push(a);
        let add = if t >= self.h { self.pot.window_sum(&win, 1) } else { 0.0 };
        let tl = Word::from(&win[win.len().saturating_sub(self.h)..]);
        (hd, tl, add)
    }

    /// The windows of a length-`n` loop that wrap around its end.
    fn close(&self, n: usize, head: &[u8], tail: &[u8]) -> f64 {
        if self.pot.is_zero() || self.h == 0 {
            return 0.0;
        }
        if n <= self.h {
            return self.pot.cyclic_sum(head);
        }
        let joined = Word::from(tail).concat(head);
        self.pot.window_sum(&joined, self.h)
    }
}

fn weight(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.exp()
    }
}

/// `Z_n` (or `Z_n^*` when `first_return`) for `n = 1..=n_max` by a DP over
/// `(vertex, head, tail)` states.
fn graph_sums(tower: &TowerGraph, pot: &Potential<f64>, n_max: usize, first_return: bool) -> Vec<f64> {
    let win = Windows::new(pot);
    let mut z = vec![0.0; n_max + 1];
    let mut cur: BTreeMap<(usize, Word, Word), f64> = BTreeMap::new();
    cur.insert((tower.base, Word::empty(), Word::empty()), 1.0);
    for t in 0..n_max {
        let mut next: BTreeMap<(usize, Word, Word), f64> = BTreeMap::new();
        for ((v, head, tail), wt) in &cur {
            let (hd, tl, add) = win.push(t, head, tail, tower.coding(*v));
            let w = wt * weight(add);
            for &u in tower.successors(*v) {
                if u == tower.base {
                    z[t + 1] += w * weight(win.close(t + 1, &hd, &tl));
                    if first_return {
                        continue;
                    }
                }
                *next.entry((u, hd.clone(), tl.clone())).or_insert(0.0) += w;
            }
        }
        cur = next;
    }
    z
}

/// Subset automaton reading words of `code^*`: state 0 is a codeword boundary.
struct Parser {
    code: Vec<Word>,
    ids: BTreeMap<(usize, usize), usize>,
    pos: Vec<(usize, usize)>,
}

impl Parser {
    fn new(code: Vec<Word>) -> Self {
        let mut ids = BTreeMap::new();
        let mut pos = vec![(0, 0)];
        for (g, w) in code.iter().enumerate() {
            for k in 1..w.len() {
                ids.insert((g, k), pos.len());
                pos.push((g, k));
            }
        }
        Self { code, ids, pos }
    }

    fn step(&self, states: &BTreeSet<usize>, a: u8) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &s in states {
            let moves: Vec<(usize, usize)> = if s == 0 {
                (0..self.code.len()).map(|g| (g, 0)).collect()
            } else {
                vec![self.pos[s]]
            };
            for (g, k) in moves {
                let w = &self.code[g];
                if w[k] == a {
                    out.insert(if k + 1 == w.len() { 0 } else { self.ids[&(g, k + 1)] });
                }
            }
        }
        out
    }
}

/// Σ over distinct `u ∈ (code^*)_{n−|v|}` of `e^{S_n φ((vu)^∞)}`, for `n ≤ n_max`.
fn word_sums(v: &[u8], code: Vec<Word>, k: usize, pot: &Potential<f64>, n_max: usize) -> Vec<f64> {
    let win = Windows::new(pot);
    let parser = Parser::new(code);
    let mut z = vec![0.0; n_max + 1];
    if v.len() > n_max {
        return z;
    }
    let (mut head, mut tail, mut ln) = (Word::empty(), Word::empty(), 0.0);
    for (t, &a) in v.iter().enumerate() {
        let (h, tl, add) = win.push(t, &head, &tail, a);
        head = h;
        tail = tl;
        ln += add;
    }
    let mut cur: BTreeMap<(BTreeSet<usize>, Word, Word), f64> = BTreeMap::new();
    cur.insert((BTreeSet::from([0]), head, tail), weight(ln));
    for n in v.len()..=n_max {
        for ((states, head, tail), wt) in &cur {
            if states.contains(&0) {
                z[n] += wt * weight(win.close(n, head, tail));
            }
        }
        if n == n_max {
            break;
        }
        let mut next: BTreeMap<(BTreeSet<usize>, Word, Word), f64> = BTreeMap::new();
        for ((states, head, tail), wt) in &cur {
            for a in 0..k as u8 {
                let s = parser.step(states, a);
                if s.is_empty() {
                    continue;
                }
                let (hd, tl, add) = win.push(n, head, tail, a);
                *next.entry((s, hd, tl)).or_insert(0.0) += wt * weight(add);
            }
        }
        cur = next;
    }
    z
}

fn rows(z: &[f64], zs: &[f64]) -> Vec<LoopRow> {
    (1..z.len()).map(|n| LoopRow { n, z: z[n], z_star: zs[n] }).collect()
}

/// Graph-side table only; valid for any generator set.
pub fn loop_sums_graph(tower: &TowerGraph, pot: &Potential<f64>, n_max: usize) -> LoopTable {
    let z = graph_sums(tower, pot, n_max, false);
    let zs = graph_sums(tower, pot, n_max, true);
    LoopTable {
        base_word: tower.base_word().clone(),
        depth: tower.depth,
        rows: rows(&z, &zs),
        word_side: None,
        tolerance: 0.0,
        max_log_discrepancy: 0.0,
    }
}

/// Word-side `(Z_n, Z_n^*)` over `F = I^*` and `(I \ {v})^*`, for `n = 1..=n_max`.
pub fn word_side_sums(tower: &TowerGraph, pot: &Potential<f64>, n_max: usize) -> Vec<(f64, f64)> {
    let v = tower.base_word().clone();
    let k = tower.alphabet.size();
    let z = word_sums(&v, tower.generators.clone(), k, pot, n_max);
    let others: Vec<Word> = tower.generators.iter().filter(|g| **g != v).cloned().collect();
    let zs = if others.is_empty() {
        let mut only = vec![0.0; n_max + 1];
        if v.len() <= n_max {
            only[v.len()] = weight(pot.cyclic_sum(&v));
        }
        only
    } else {
        word_sums(&v, others, k, pot, n_max)
    };
    (1..=n_max).map(|n| (z[n], zs[n])).collect()
}

/// Both tables, cross-checked: the graph counts factorisations and the word
/// side counts distinct words, so they agree exactly when the generators are
/// uniquely decipherable. Disagreement beyond `|φ|_d + |v| sup|φ|` plus
/// [`LOOP_SLACK`] is an error.
pub fn loop_sums(tower: &TowerGraph, pot: &Potential<f64>, n_max: usize) -> Result<LoopTable> {
    let mut table = loop_sums_graph(tower, pot, n_max);
    let words = word_side_sums(tower, pot, n_max);
    let tol = pot.distortion_bound() + tower.base_word().len() as f64 * pot.sup_abs() + LOOP_SLACK;
    let mut worst: f64 = 0.0;
    for (row, &(wz, wzs)) in table.rows.iter().zip(&words) {
        for (g, w) in [(row.z, wz), (row.z_star, wzs)] {
            if g == 0.0 && w == 0.0 {
                continue;
            }
            let d = if g == 0.0 || w == 0.0 { f64::INFINITY } else { (g.ln() - w.ln()).abs() };
            if d > tol {
                return Err(Error::InconsistentDecipherability { n: row.n, graph: g, words: w });
            }
            worst = worst.max(d);
        }
    }
    table.word_side = Some(words);
    table.tolerance = tol;
    table.max_log_discrepancy = worst;
    Ok(table)
}

/// Least-squares slope of `log Z` against `n` over the positive entries with
/// `n ≥ n_max / 2`; `None` with fewer than two such entries.
fn top_half_slope(points: impl Iterator<Item = (usize, f64)>, n_max: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.filter(|&(n, z)| 2 * n >= n_max && z > 0.0).map(|(n, z)| (n as f64, z.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    Some(num / den)
}

/// Growth of `Z_n` against `Z_n^*` over the top half of the table.
#[derive(Clone, Debug)]
pub struct SprReport {
    pub table: LoopTable,
    pub rate: f64,
    /// `-inf` when `Z_n^*` vanishes on the top half.
    pub rate_star: f64,
    pub gap: f64,
    pub delta: f64,
    pub pass: bool,
    /// Fewer than two positive entries for one of the two sums.
    pub degenerate: bool,
    /// `P(I, φ)` against `P(F, φ)` when requested.
    pub irreducible_gap: Option<MarginVerdict<f64>>,
}

/// Strong positive recurrence holds on the table when the `Z_n` rate exceeds
/// the `Z_n^*` rate by at least [`DEFAULT_DELTA`].
pub fn spr_diagnostic(tower: &TowerGraph, pot: &Potential<f64>, n_max: usize) -> SprReport {
    let table = loop_sums_graph(tower, pot, n_max);
    let rate = top_half_slope(table.rows.iter().map(|r| (r.n, r.z)), n_max);
    let positive_star = table.rows.iter().filter(|r| 2 * r.n >= n_max && r.z_star > 0.0).count();
    let rate_star = top_half_slope(table.rows.iter().map(|r| (r.n, r.z_star)), n_max);
    let degenerate = rate.is_none() || rate_star.is_none();
    let rate = rate.unwrap_or(f64::NEG_INFINITY);
    let rate_star = rate_star.unwrap_or(if positive_star == 0 { f64::NEG_INFINITY } else { f64::NAN });
    let gap = rate - rate_star;
    SprReport {
        table,
        rate,
        rate_star,
        gap,
        delta: DEFAULT_DELTA,
        pass: !degenerate && gap >= DEFAULT_DELTA,
        degenerate,
        irreducible_gap: None,
    }
}

impl SprReport {
    /// Adds the margin-rule comparison of `I` against `F` at `depth`.
    pub fn with_irreducible_gap(mut self, family: &FreeFamily, pot: &Potential<f64>, depth: usize) -> Result<Self> {
        let i = pressure_estimate(&family.i, pot, depth)?;
        let f = pressure_estimate(&family.f, pot, depth)?;
        self.irreducible_gap = Some(margin_rule(&i, &f, self.delta));
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rate": sig17(self.rate),
            "rate_star": sig17(self.rate_star),
            "gap": sig17(self.gap),
            "delta": sig17(self.delta),
            "pass": self.pass,
            "degenerate": self.degenerate,
            "irreducible_gap": self.irreducible_gap.as_ref().map(|m| json!({"pass": m.pass, "failing": m.failing})),
            "table": self.table.to_json(),
        })
    }
}
