//! Small floating-point helpers shared across modules.

/// Default tolerance for geometric comparisons.
pub const GEOMETRIC_TOLERANCE: f64 = 1e-9;

/// Relative error against a nonzero reference, absolute error against zero.
pub fn rel_or_abs_err(measured: f64, reference: f64) -> f64 {
    let diff = (measured - reference).abs();
    if reference == 0.0 {
        diff
    } else {
        diff / reference.abs()
    }
}

/// `x - sin(x)` without the cancellation that the direct form suffers for small `x`.
///
/// Below 0.5 the Taylor series is summed until terms stop contributing.
pub fn x_minus_sin(x: f64) -> f64 {
    if x.abs() >= 0.5 {
        return x - x.sin();
    }
    // x^3/3! - x^5/5! + x^7/7! - ...
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum = term;
    let mut k = 3.0;
    loop {
        term *= -x2 / ((2.0 * k - 2.0) * (2.0 * k - 1.0));
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
        k += 1.0;
    }
    sum
}
