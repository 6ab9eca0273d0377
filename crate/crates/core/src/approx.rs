//! Tolerant floating-point comparisons.
//!
//! All inequality checks in type invariants and theorem postconditions use a
//! relative slack of 1e-9. Distances are plain `f64`; the slack keeps strict
//! theorem inequalities checkable without exact arithmetic.

/// Relative tolerance used throughout the crate.
pub const REL_TOL: f64 = 1e-9;

fn scale(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1.0)
}

/// `a <= b` within relative slack.
pub fn le(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * scale(a, b)
}

/// `a >= b` within relative slack.
pub fn ge(a: f64, b: f64) -> bool {
    le(b, a)
}

/// `a == b` within relative slack.
pub fn eq(a: f64, b: f64) -> bool {
    le(a, b) && le(b, a)
}

/// Ceiling that forgives values sitting just above an integer.
///
/// Quantities like `log_a(b)` land on exact integers in many of the paper's
/// worked cases; a bare `ceil` would overshoot on the least-significant-bit
/// errors of the logarithm.
pub fn ceil_tol(x: f64) -> f64 {
    (x - 1e-9).ceil()
}

/// Floor that forgives values sitting just below an integer.
pub fn floor_tol(x: f64) -> f64 {
    (x + 1e-9).floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_is_relative() {
        assert!(le(1.0 + 1e-12, 1.0));
        assert!(!le(1e12 + 1e4, 1e12)); // 1e4 / 1e12 = 1e-8 > 1e-9
        assert!(le(1e12 + 1e2, 1e12)); // 1e2 / 1e12 = 1e-10 < 1e-9
        assert!(eq(7.0, 7.0 + 7e-10));
    }

    #[test]
    fn tolerant_rounding() {
        assert_eq!(ceil_tol(3.0000000001), 3.0);
        assert_eq!(ceil_tol(3.1), 4.0);
        assert_eq!(floor_tol(2.9999999999), 3.0);
        assert_eq!(floor_tol(2.9), 2.0);
    }
}
