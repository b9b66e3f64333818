//! Decimal rendering with 17 significant digits, enough to round-trip an `f64`.

/// `x` in scientific notation with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// `e^ln` with 17 significant digits, without overflowing for large `ln`.
pub fn sig17_from_ln(ln: f64) -> String {
    if ln == f64::NEG_INFINITY {
        return sig17(0.0);
    }
    let v = ln.exp();
    if v.is_finite() && v > 0.0 {
        return sig17(v);
    }
    let d = ln / std::f64::consts::LN_10;
    let e = d.floor();
    let m = 10f64.powf(d - e);
    format!("{m:.16}e{}", e as i64)
}
