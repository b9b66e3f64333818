//! The binomial entropy bound `C(n,ℓ) ≤ (n+1) e^{h(ℓ/n) n + 1}`.

/// `h(x) = −x log x − (1−x) log(1−x)`, with `h(0) = h(1) = 0`.
pub fn entropy_function(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    term(x) + term(1.0 - x)
}

/// Exact binomial coefficient; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// Checks the bound for all `1 ≤ ℓ ≤ n ≤ n_max`; returns the first failure.
pub fn binomial_bound_violation(n_max: u64) -> Option<(u64, u64)> {
    for n in 1..=n_max {
        for l in 1..=n {
            let c = binomial(n, l).expect("fits in u128");
            let rhs = (n as f64 + 1.0) * (entropy_function(l as f64 / n as f64) * n as f64 + 1.0).exp();
            if (c as f64) > rhs || c > rhs.floor() as u128 {
                return Some((n, l));
            }
        }
    }
    None
}
