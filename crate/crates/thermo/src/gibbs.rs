//! Partition sums over words with a prescribed block at a prescribed place.

use serde_json::{json, Value};
use symdyn_core::fmt::sig17;
use symdyn_core::language::{guard, par_fold};
use symdyn_core::{Error, ExpSum, Language, Potential, Result, Scalar, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct CylinderRow<S = f64> {
    /// 1-based start of `v` inside the length-`n` word.
    pub i: usize,
    pub count: u64,
    pub ln_sum: S,
    /// `log Λ_n(H_n(v,i),φ) − (n − |v|)P̂ − φ̂(v)`.
    pub ln_ratio: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CylinderTable<S = f64> {
    pub v: Word,
    pub n: usize,
    pub p_hat: S,
    pub rows: Vec<CylinderRow<S>>,
}

impl<S: Scalar> CylinderTable<S> {
    /// Smallest and largest observed ratio (empirical Gibbs constants).
    pub fn ratio_range(&self) -> (S, S) {
        self.rows.iter().fold((S::infinity(), S::neg_infinity()), |(lo, hi), r| {
            let x = r.ln_ratio.exp();
            (lo.min(x), hi.max(x))
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p_hat": sig17(self.p_hat.as_f64()),
            "rows": self.rows.iter().map(|r| json!({
                "i": r.i,
                "count": r.count,
                "ln_sum": sig17(r.ln_sum.as_f64()),
                "ratio": sig17(r.ln_ratio.exp().as_f64()),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,count,ln_sum,ratio\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.i, r.count, sig17(r.ln_sum.as_f64()), sig17(r.ln_ratio.exp().as_f64())));
        }
        out
    }
}

/// For each start `i = 1..=n−|v|+1`, the partition sum over length-`n` words
/// carrying `v` at positions `[i, i+|v|)`, normalised by `p_hat`.
pub fn cylinder_count_table<S: Scalar>(
    lang: &dyn Language,
    pot: &Potential<S>,
    v: &[u8],
    n: usize,
    p_hat: S,
) -> Result<CylinderTable<S>> {
    if v.is_empty() || v.len() > n {
        return Err(Error::InvalidInput("need 1 ≤ |v| ≤ n".into()));
    }
    guard(lang, n)?;
    let phi_v = pot.phi_hat(lang, v)?;
    let mut rows = Vec::new();
    for i in 1..=n - v.len() + 1 {
        let start = i - 1;
        let keep = |w: &[u8]| {
            let j = w.len();
            j <= start || j > start + v.len() || w[j - 1] == v[j - 1 - start]
        };
        let sum = par_fold(
            lang,
            n,
            &keep,
            ExpSum::<S>::new,
            |acc, w| {
                if w.len() == n {
                    acc.add_ln(pot.inner_sum(w) + pot.tail_max(lang, w));
                }
            },
            |a, b| a.merge(&b),
        );
        let ln_sum = sum.ln();
        let free = S::from_usize(n - v.len()).unwrap();
        rows.push(CylinderRow { i, count: sum.terms(), ln_sum, ln_ratio: ln_sum - free * p_hat - phi_v });
    }
    Ok(CylinderTable { v: Word::from(v), n, p_hat, rows })
}
