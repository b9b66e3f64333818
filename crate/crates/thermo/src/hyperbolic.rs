//! Comparison of `sup φ̂ / n` against the pressure estimate.

use serde_json::{json, Value};
use symdyn_core::fmt::sig17;
use symdyn_core::language::{guard, par_fold};
use symdyn_core::{Oracle, Potential, Result, Scalar, WordSet};

use crate::pressure::{pressure_estimate, PressureReport, DEFAULT_DELTA};

#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicityReport<S = f64> {
    /// `(n, max_{w ∈ L_n} φ̂(w)/n)`.
    pub sup_rates: Vec<(usize, S)>,
    pub pressure: PressureReport<S>,
    pub delta: S,
    /// `P̂ − sup-rate` over the last quarter of the table.
    pub tail_gaps: Vec<(usize, S)>,
    pub hyperbolic_at_depth: bool,
}

/// `max φ̂(w)` for each length `0..=n_max`.
pub fn sup_table<S: Scalar>(lang: &Oracle, pot: &Potential<S>, n_max: usize) -> Result<Vec<S>> {
    let l = lang.as_ref();
    guard(l, n_max)?;
    Ok(par_fold(
        l,
        n_max,
        &|_: &[u8]| true,
        || vec![S::neg_infinity(); n_max + 1],
        |acc, w| {
            let v = pot.inner_sum(w) + pot.tail_max(l, w);
            acc[w.len()] = acc[w.len()].max(v);
        },
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x = x.max(y)),
    ))
}

/// Verdict "hyperbolic at depth" iff `P̂ − sup_n` is at least `δ` and
/// non-decreasing over the last quarter of the table.
pub fn hyperbolicity_diagnostic<S: Scalar>(
    lang: &Oracle,
    pot: &Potential<S>,
    n_max: usize,
    delta: Option<S>,
) -> Result<HyperbolicityReport<S>> {
    let delta = delta.unwrap_or_else(|| S::of(DEFAULT_DELTA));
    let sups = sup_table(lang, pot, n_max)?;
    let pressure = pressure_estimate(&WordSet::language(lang.clone()), pot, n_max)?;
    let sup_rates: Vec<(usize, S)> = (1..=n_max).map(|n| (n, sups[n] / S::from_usize(n).unwrap())).collect();
    let from = n_max - n_max / 4;
    let tail_gaps: Vec<(usize, S)> =
        sup_rates.iter().filter(|(n, _)| *n >= from).map(|&(n, s)| (n, pressure.point_estimate - s)).collect();
    let tol = S::of(1e-12);
    let widening = tail_gaps.windows(2).all(|p| p[1].1 >= p[0].1 - tol);
    let hyperbolic_at_depth = !tail_gaps.is_empty() && widening && tail_gaps.iter().all(|&(_, g)| g >= delta);
    Ok(HyperbolicityReport { sup_rates, pressure, delta, tail_gaps, hyperbolic_at_depth })
}

impl<S: Scalar> HyperbolicityReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "sup_rates": self.sup_rates.iter().map(|(n, s)| json!([n, sig17(s.as_f64())])).collect::<Vec<_>>(),
            "pressure_estimate": sig17(self.pressure.point_estimate.as_f64()),
            "delta": sig17(self.delta.as_f64()),
            "tail_gaps": self.tail_gaps.iter().map(|(n, s)| json!([n, sig17(s.as_f64())])).collect::<Vec<_>>(),
            "hyperbolic_at_depth": self.hyperbolic_at_depth,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,sup_rate,rate\n");
        for (row, (n, s)) in self.pressure.rows.iter().zip(&self.sup_rates) {
            out.push_str(&format!("{},{},{}\n", n, sig17(s.as_f64()), sig17(row.rate.as_f64())));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use symdyn_core::{Alphabet, PredicateLanguage};
    use symdyn_models::binary_sft;

    #[test]
    fn zero_potential_on_golden_mean_is_hyperbolic() {
        let g: Oracle = Arc::new(binary_sft(&["11"]).unwrap());
        let r = hyperbolicity_diagnostic(&g, &Potential::<f64>::zero(2), 20, None).unwrap();
        assert!(r.sup_rates.iter().all(|&(_, s)| s == 0.0));
        assert!(r.hyperbolic_at_depth);
    }

    #[test]
    fn single_orbit_has_no_gap() {
        let orbit: Oracle = Arc::new(PredicateLanguage::new(Alphabet::numeric(2), 16, "0^∞", |w: &[u8]| {
            w.iter().all(|&a| a == 0)
        }));
        let r = hyperbolicity_diagnostic(&orbit, &Potential::<f64>::zero(2), 16, None).unwrap();
        assert!(!r.hyperbolic_at_depth);
        assert!(r.tail_gaps.iter().all(|&(_, g)| g.abs() < 1e-15));
    }

    #[test]
    fn sup_table_matches_brute_force() {
        let g: Oracle = Arc::new(binary_sft(&["11"]).unwrap());
        let pot = Potential::from_fn(2, 2, |w| if w == [0, 1] { 1.0 } else { -0.25 });
        let t = sup_table(&g, &pot, 8).unwrap();
        for n in 1..=8 {
            let best = symdyn_core::enumerate_language(g.as_ref(), n)
                .unwrap()
                .iter()
                .map(|w| pot.phi_hat(g.as_ref(), w).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(t[n], best);
        }
    }
}
