use cwwr_core::{Error, Spin};

/// Time at which the first-order regime of the effective potential ends.
pub const T3: f64 = 0.274_653_072_167_027_45; // ln(3)/4

/// Single-site transition probability of the spin-flip dynamics. Holes never move.
pub fn transition_prob(a: Spin, b: Spin, t: f64) -> Result<f64, Error> {
    if !(t >= 0.0) {
        return Err(Error::Param(format!("time must be non-negative, got {t}")));
    }
    let e = (-2.0 * t).exp();
    Ok(match (a.value(), b.value()) {
        (0, 0) => 1.0,
        (0, _) | (_, 0) => 0.0,
        (x, y) if x == y => 0.5 * (1.0 + e),
        _ => 0.5 * (1.0 - e),
    })
}

/// Dynamical field `atanh(exp(-2t))`.
pub fn h_field(t: f64) -> Result<f64, Error> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Param(format!("field needs t > 0, got {t}")));
    }
    Ok((-2.0 * t).exp().atanh())
}
