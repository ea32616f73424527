use super::FunctionError;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64, FunctionError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(FunctionError::Domain(format!(
            "log_gamma needs a positive finite argument, got {x}"
        )));
    }
    Ok(libm::lgamma(x))
}

/// `ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2]` for `x ≥ 30`.
///
/// Truncated after the `x^-9` term, which leaves an error below `1e-19`.
pub fn stirling_correction(x: f64) -> f64 {
    debug_assert!(x >= 30.0, "asymptotic series used at x = {x}");
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        + r2 * (-1.0 / 360.0 + r2 * (1.0 / 1260.0 + r2 * (-1.0 / 1680.0 + r2 / 1188.0))))
}
