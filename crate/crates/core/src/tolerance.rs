//! Comparisons with a relative tolerance.
//!
//! Instances built from irrational constants never hit exact ties, so a
//! strict inequality `a < b` is accepted when `a <= b (1 - REL_TOL)` and a
//! pair within `REL_TOL` of each other is reported as marginal instead of
//! being silently classified.

/// Relative slack used for strict inequalities and α-qualification.
pub const REL_TOL: f64 = 1e-9;

/// Outcome of checking `a < b` (or `a <= b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Marginal,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Holds or marginal.
    pub fn not_failed(self) -> bool {
        self != Verdict::Fails
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Checks `a < b`. Near-equal values are marginal, so the same verdict
/// serves non-strict checks through [`Verdict::not_failed`].
pub fn strictly_less(a: f64, b: f64) -> Verdict {
    if close(a, b, REL_TOL) {
        Verdict::Marginal
    } else if a < b {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

/// `|a - b| <= tol * max(|a|, |b|)`.
pub fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    a == b || close(a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_comparisons() {
        assert_eq!(strictly_less(1.0, 2.0), Verdict::Holds);
        assert_eq!(strictly_less(2.0, 1.0), Verdict::Fails);
        assert_eq!(strictly_less(1.0, 1.0 + 1e-12), Verdict::Marginal);
        assert_eq!(strictly_less(0.0, 0.0), Verdict::Marginal);
        assert_eq!(strictly_less(-2.0, -1.0), Verdict::Holds);
        assert!(strictly_less(1.0, 1.0).not_failed());
    }

    #[test]
    fn relative_equality() {
        assert!(rel_eq(1.0, 1.0 + 1e-13, 1e-12));
        assert!(!rel_eq(1.0, 1.0 + 1e-11, 1e-12));
        assert!(rel_eq(0.0, 0.0, 1e-12));
    }
}
