use std::sync::Arc;

use proptest::prelude::*;
use symdyn_core::{count_words, enumerate_language, Alphabet, Oracle, Potential, WordSet};
use symdyn_models::*;
use symdyn_thermo::*;

fn golden() -> Oracle {
    Arc::new(binary_sft(&["11"]).unwrap())
}

fn family(i: usize) -> Oracle {
    match i % 5 {
        0 => golden(),
        1 => Arc::new(binary_sft(&["111"]).unwrap()),
        2 => Arc::new(cycle_sft(5).unwrap()),
        3 => Arc::new(s_gap_shift(SGapSpec { s: GapSet::finite([1, 2]) }).unwrap()),
        _ => Arc::new(
            cocyclic_shift(CocyclicSpec::integer(
                Alphabet::numeric(2),
                vec![vec![vec![1, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]],
            ))
            .unwrap(),
        ),
    }
}

fn random_potential(k: usize, range: usize, values: &[f64]) -> Potential<f64> {
    Potential::from_fn(k, range, |w| {
        let code = w.iter().fold(0usize, |acc, &a| acc * k + a as usize);
        values[code % values.len()]
    })
}

#[test]
fn golden_mean_pressure_matches_perron() {
    let l: Oracle = Arc::new(binary_sft(&["11"]).unwrap().with_depth_limit(30));
    let r = pressure_estimate(&WordSet::language(l), &Potential::<f64>::zero(2), 30).unwrap();
    assert!((r.point_estimate - 0.481_211_825_059_603_4).abs() < 1e-3);
    assert!(r.fekete_upper.unwrap() >= 0.481_211_825_059_603_4);
    assert!(r.gap_flags.submultiplicative);
}

#[test]
fn tribonacci_pressure() {
    let l: Oracle = Arc::new(binary_sft(&["111"]).unwrap().with_depth_limit(30));
    let r = pressure_estimate(&WordSet::language(l), &Potential::<f64>::zero(2), 30).unwrap();
    assert!((r.point_estimate - 1.839_286_755_214_161f64.ln()).abs() < 1e-3);
}

#[test]
fn golden_mean_parry_weight() {
    let m = periodic_orbit_measure(golden().as_ref(), &Potential::<f64>::zero(2), 20, 1).unwrap();
    let parry = (5.0 + 5f64.sqrt()) / 10.0;
    assert!((m.weight(&[0]) - parry).abs() < 2e-2);
    assert!((m.total() - 1.0).abs() < 1e-9);
    assert!(m.invariance_defect() < 1e-9);
}

#[test]
fn golden_mean_gibbs_ratios_are_bounded() {
    let g = golden();
    let p = pressure_estimate(&WordSet::language(g.clone()), &Potential::<f64>::zero(2), 20).unwrap().point_estimate;
    let mut lo = f64::INFINITY;
    let mut hi = 0f64;
    for n in 2..=14 {
        let t = cylinder_count_table(g.as_ref(), &Potential::<f64>::zero(2), &[1], n, p).unwrap();
        let (a, b) = t.ratio_range();
        lo = lo.min(a);
        hi = hi.max(b);
    }
    assert!(lo > 0.1 && hi < 10.0, "empirical Gibbs constants {lo} {hi}");
}

#[test]
fn binomial_entropy_bound() {
    assert_eq!(binomial_bound_violation(60), None);
}

#[test]
fn zero_potential_sums_are_counts() {
    for i in 0..5 {
        let l = family(i);
        let counts = count_words(l.as_ref(), 10).unwrap();
        let k = l.alphabet().size();
        let t = partition_table(&WordSet::language(l), &Potential::<f64>::zero(k), 10).unwrap();
        for n in 0..=10 {
            assert_eq!(t[n].value(), counts[n] as f64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_hat_sub_and_super_additive(
        fam in 0usize..5,
        range in 1usize..4,
        values in prop::collection::vec(-2.0f64..2.0, 1..16),
        i in 0usize..10_000,
        j in 0usize..10_000,
    ) {
        let l = family(fam);
        let k = l.alphabet().size();
        let pot = random_potential(k, range, &values);
        let d = pot.distortion_bound();
        let words: Vec<_> = (1..=5).flat_map(|n| enumerate_language(l.as_ref(), n).unwrap()).collect();
        let v = &words[i % words.len()];
        let w = &words[j % words.len()];
        let vw = v.concat(w);
        if l.contains(&vw) {
            let (a, b, c) = (
                pot.phi_hat(l.as_ref(), v).unwrap(),
                pot.phi_hat(l.as_ref(), w).unwrap(),
                pot.phi_hat(l.as_ref(), &vw).unwrap(),
            );
            prop_assert!(c <= a + b + 1e-12, "upper: {c} > {a} + {b}");
            prop_assert!(c >= a + b - d - 1e-12, "lower: {c} < {a} + {b} - {d}");
        }
    }

    #[test]
    fn partition_sums_are_submultiplicative(
        fam in 0usize..5,
        range in 1usize..3,
        values in prop::collection::vec(-1.0f64..1.0, 1..8),
    ) {
        let l = family(fam);
        let k = l.alphabet().size();
        let n_max = if k > 2 { 6 } else { 12 };
        let pot = random_potential(k, range, &values);
        let t = partition_table(&WordSet::language(l), &pot, n_max).unwrap();
        for m in 1..n_max {
            for n in 1..=n_max - m {
                let (lhs, rhs) = (t[m + n].ln(), t[m].ln() + t[n].ln());
                prop_assert!(lhs <= rhs + 1e-12 * rhs.abs().max(1.0), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn union_sums_are_bracketed(
        fam in 0usize..5,
        a in 0u8..4,
        b in 0u8..4,
    ) {
        let l = family(fam);
        let k = l.alphabet().size();
        let first = move |w: &[u8]| w.first().is_some_and(|&x| x % 4 == a % k as u8);
        let last = move |w: &[u8]| w.last().is_some_and(|&x| x % 4 == b % k as u8);
        let c = WordSet::filtered(l.clone(), "C", first);
        let d = WordSet::filtered(l.clone(), "D", last);
        let u = c.union(&d);
        let pot = Potential::<f64>::indicator(k, &[0], 0.3);
        let n_max = if k > 2 { 6 } else { 10 };
        let (tc, td, tu) = (
            partition_table(&c, &pot, n_max).unwrap(),
            partition_table(&d, &pot, n_max).unwrap(),
            partition_table(&u, &pot, n_max).unwrap(),
        );
        for n in 1..=n_max {
            let (x, y, z) = (tc[n].value(), td[n].value(), tu[n].value());
            prop_assert!(x.max(y) <= z * (1.0 + 1e-12));
            prop_assert!(z <= (x + y) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn periodic_measures_are_invariant(fam in 0usize..5, t in -2.0f64..2.0) {
        let l = family(fam);
        let k = l.alphabet().size();
        let n = if k > 2 { 5 } else { 10 };
        let m = periodic_orbit_measure(l.as_ref(), &Potential::<f64>::indicator(k, &[0], t), n, 3.min(n)).unwrap();
        prop_assert!((m.total() - 1.0).abs() < 1e-9);
        prop_assert!(m.invariance_defect() < 1e-9);
    }
}

#[test]
fn f32_and_f64_reports_agree() {
    let l = WordSet::language(golden());
    let a = pressure_estimate(&l, &PotentialF32Helper::pot32(), 16).unwrap();
    let b = pressure_estimate(&l, &PotentialF32Helper::pot64(), 16).unwrap();
    assert!((f64::from(a.point_estimate) - b.point_estimate).abs() < 1e-4);
}

struct PotentialF32Helper;

impl PotentialF32Helper {
    fn pot32() -> symdyn_core::PotentialF32 {
        Potential::from_fn(2, 2, |w| if w == [0, 0] { 0.5f32 } else { -0.1 })
    }

    fn pot64() -> symdyn_core::PotentialF64 {
        Potential::from_fn(2, 2, |w| if w == [0, 0] { 0.5f64 } else { -0.1 })
    }
}
