//! The root `Φ_d` of `x^{d+1} = (x+1)^d`, the parameter bundle built on it,
//! and the Lambert-W bound on its growth.

use num_rational::Ratio;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::NumericsError;

/// Smallest degree for which the lower-bound parameters are defined.
pub const MIN_LB_DEGREE: u32 = 9;

/// Positive root of `x^{d+1} = (x+1)^d`.
///
/// Bisects `g(x) = (d+1) ln x - d ln(x+1)`, which is increasing with
/// `g(1) < 0 < g(d+1)`, down to width `1e-13`, then polishes with Newton.
/// `d = 0` gives 1.
pub fn solve_phi(d: u32) -> f64 {
    if d == 0 {
        return 1.0;
    }
    let df = f64::from(d);
    let g = |x: f64| (df + 1.0) * x.ln() - df * x.ln_1p();
    let dg = |x: f64| (df + 1.0) / x - df / (x + 1.0);
    let (mut lo, mut hi) = (1.0_f64, df + 1.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..3 {
        let step = g(x) / dg(x);
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

/// `g(Φ) = (d+1) ln Φ - d ln(Φ+1)`, zero at the exact root.
pub fn phi_residual(d: u32, phi: f64) -> f64 {
    let df = f64::from(d);
    (df + 1.0) * phi.ln() - df * phi.ln_1p()
}

/// Parameters of the general lower-bound construction for degree `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams {
    pub d: u32,
    pub phi: f64,
    /// `c_d = μ / d`, kept exact.
    pub c: Ratio<u32>,
    pub mu: u32,
    pub beta: f64,
    /// Weight growth ratio `1 + 1/Φ`.
    pub w: f64,
    /// `β Φ`.
    pub alpha: f64,
}

impl LowerBoundParams {
    pub fn c_f64(&self) -> f64 {
        f64::from(*self.c.numer()) / f64::from(*self.c.denom())
    }

    /// `Φ^{d+2} <= (Φ + 1/β)^d`, compared in the log domain. Returns the
    /// slack `d ln(Φ + 1/β) - (d+2) ln Φ`, nonnegative when it holds.
    pub fn root_power_slack(&self) -> f64 {
        let d = f64::from(self.d);
        d * (self.phi + 1.0 / self.beta).ln() - (d + 2.0) * self.phi.ln()
    }
}

/// `(ln(2Φ+1) - ln(Φ+1)) / ln Φ`.
fn c_ratio(phi: f64) -> f64 {
    (phi / (phi + 1.0)).ln_1p() / phi.ln()
}

/// Whether `k / d` satisfies the defining bound `Φ^{k/d} <= (2Φ+1)/(Φ+1)`.
fn c_admissible(k: u32, d: u32, phi: f64) -> bool {
    f64::from(k) * phi.ln() <= f64::from(d) * (phi / (phi + 1.0)).ln_1p()
}

/// Builds `(Φ_d, c_d, β_d, μ, w, α)` for `d >= 9`.
pub fn lower_bound_params(d: u32) -> Result<LowerBoundParams, NumericsError> {
    if d < MIN_LB_DEGREE {
        return Err(NumericsError::DegreeTooSmall(d));
    }
    let phi = solve_phi(d);
    let scaled = f64::from(d) * c_ratio(phi);
    let mut mu = scaled.floor() as u32;
    let nearest = scaled.round();
    if (scaled - nearest).abs() <= 1e-9 {
        // The floor is ambiguous in doubles; decide with the defining inequality.
        let upper = nearest as u32;
        mu = if c_admissible(upper, d, phi) { upper } else { upper - 1 };
    }
    let c = Ratio::new_raw(mu, d);
    let beta = 1.0 - phi.powf(-f64::from(mu) / f64::from(d));
    Ok(LowerBoundParams { d, phi, c, mu, beta, w: 1.0 + 1.0 / phi, alpha: beta * phi })
}

/// Closed-form curves that bracket `β_d` once the floor in `c_d` is relaxed:
/// `(lower, upper) = (1 - (Φ+1)/(2Φ+1) (1 + 1/Φ), Φ/(2Φ+1))`.
pub fn beta_envelope(d: u32) -> (f64, f64) {
    let phi = solve_phi(d);
    let lower = 1.0 - (phi + 1.0) / (2.0 * phi + 1.0) * (1.0 + 1.0 / phi);
    let upper = phi / (2.0 * phi + 1.0);
    (lower, upper)
}

/// Principal branch of Lambert W for `x > 0`, by Halley iteration.
pub fn lambert_w(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(NumericsError::Domain { what: "lambert_w", value: x, domain: "(0, inf)".into() });
    }
    let e = core::f64::consts::E;
    let mut w = if x > e { x.ln() - x.ln().ln() } else { x };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1e-300) {
            break;
        }
    }
    Ok(w)
}

/// `γ_d = ln d / W(d)` for `d >= 2`.
pub fn gamma_d(d: f64) -> Result<f64, NumericsError> {
    if !(d >= 2.0) {
        return Err(NumericsError::Domain { what: "gamma_d", value: d, domain: "[2, inf)".into() });
    }
    Ok(d.ln() / lambert_w(d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_reference_values() {
        let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((solve_phi(1) - golden).abs() <= 1e-9);
        assert!((solve_phi(9) - 5.064).abs() <= 0.01);
        assert!((solve_phi(18) - 8.11).abs() <= 0.01);
    }

    #[test]
    fn phi_root_identity() {
        for d in 1..=100u32 {
            let phi = solve_phi(d);
            assert!(phi_residual(d, phi).abs() <= 1e-12, "d = {d}");
            let lhs = phi.powi(d as i32 + 1);
            let rhs = (phi + 1.0).powi(d as i32);
            assert!((lhs - rhs).abs() <= 1e-9 * rhs, "d = {d}");
        }
    }

    #[test]
    fn params_reference_points() {
        let expected = [
            (9, 3, 0.417652),
            (10, 3, 0.397938),
            (11, 3, 0.38033),
            (12, 4, 0.453611),
            (16, 5, 0.466516),
            (20, 5, 0.418342),
            (100, 20, 0.490597),
        ];
        for (d, mu, beta) in expected {
            let p = lower_bound_params(d).unwrap();
            assert_eq!(p.mu, mu, "d = {d}");
            assert!((p.beta - beta).abs() <= 1e-4, "d = {d}: {}", p.beta);
        }
    }

    #[test]
    fn params_identities() {
        for d in 9..=100 {
            let p = lower_bound_params(d).unwrap();
            assert!(p.mu >= 3);
            assert!((0.38..=0.5).contains(&p.beta));
            assert!((p.w.powi(d as i32) - p.phi).abs() <= 1e-9 * p.phi);
            assert!((p.w.powi(-(p.mu as i32)) - (1.0 - p.beta)).abs() <= 1e-9);
            assert!((p.w.powi(d as i32 + 1) - (p.phi + 1.0)).abs() <= 1e-9 * (p.phi + 1.0));
            assert!(p.root_power_slack() >= 0.0);
            let (lo, hi) = beta_envelope(d);
            assert!(lo <= p.beta && p.beta <= hi, "d = {d}");
        }
    }

    #[test]
    fn params_reject_small_degree() {
        assert_eq!(lower_bound_params(8), Err(NumericsError::DegreeTooSmall(8)));
    }

    #[test]
    fn lambert_w_values() {
        assert!((lambert_w(core::f64::consts::E).unwrap() - 1.0).abs() <= 1e-14);
        for &x in &[1e-3, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6] {
            let w = lambert_w(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x, "x = {x}");
        }
        assert!(lambert_w(0.0).is_err());
        assert!(lambert_w(-1.0).is_err());
    }
}
