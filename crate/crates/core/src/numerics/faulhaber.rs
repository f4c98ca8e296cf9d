//! Power-sum potentials: the two-term truncation `S_m`, its ratio `A_m`,
//! exact Bernoulli numbers, and the exact Faulhaber polynomial `Ŝ_m`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::NumericsError;

/// `S_m(x) = x^{m+1}/(m+1) + x^m/2` for `m >= 1`, and `S_0(x) = x`.
pub fn s_trunc(m: u32, x: f64) -> f64 {
    if m == 0 {
        return x;
    }
    let mf = f64::from(m);
    let xm = x.powi(m as i32);
    xm * x / (mf + 1.0) + 0.5 * xm
}

/// `A_m(x) = x^{m+1} / S_m(x) = 2(m+1)x / (2x+m+1)`, with `A_0 = 1`.
pub fn a_fn(m: u32, x: f64) -> Result<f64, NumericsError> {
    if !(x >= 1.0) {
        return Err(NumericsError::Domain { what: "a_fn", value: x, domain: "[1, inf)".into() });
    }
    if m == 0 {
        return Ok(1.0);
    }
    let m1 = f64::from(m) + 1.0;
    Ok(2.0 * m1 * x / (2.0 * x + m1))
}

/// Inverse of `A_m` on `[1, inf)`: `(m+1) y / (2(m+1-y))`.
pub fn a_fn_inverse(m: u32, y: f64) -> Result<f64, NumericsError> {
    let m1 = f64::from(m) + 1.0;
    let lo = 2.0 * m1 / (f64::from(m) + 3.0);
    if m == 0 || !(y >= lo && y < m1) {
        return Err(NumericsError::Domain {
            what: "a_fn_inverse",
            value: y,
            domain: format!("[{lo}, {m1}) with m >= 1 (m = {m})"),
        });
    }
    Ok((m1 * y / (2.0 * (m1 - y))).max(1.0))
}

/// Largest degree for which the exact potential `Ŝ_m` is well behaved on
/// `[1, inf)`; from degree 14 on `Â_m` stops being monotone.
pub const MAX_EXACT_DEGREE: u32 = 4;

/// `Ŝ_m(x)` in closed form for `m <= 4`, cheap enough for potential loops.
pub fn s_hat(m: u32, x: f64) -> Result<f64, NumericsError> {
    Ok(match m {
        0 => x,
        1 => x * (x + 1.0) / 2.0,
        2 => x * (x * (2.0 * x + 3.0) + 1.0) / 6.0,
        3 => {
            let t = x * (x + 1.0);
            t * t / 4.0
        }
        4 => x * (x * x * (x * (6.0 * x + 15.0) + 10.0) - 1.0) / 30.0,
        _ => {
            return Err(NumericsError::Domain {
                what: "s_hat degree",
                value: f64::from(m),
                domain: format!("[0, {MAX_EXACT_DEGREE}]"),
            })
        }
    })
}

/// `Â_m(x) = x^{m+1} / Ŝ_m(x)` for `m <= 4`, `x >= 1`; `Â_m(1) = 1`.
pub fn a_hat(m: u32, x: f64) -> Result<f64, NumericsError> {
    if !(x >= 1.0) {
        return Err(NumericsError::Domain { what: "a_hat", value: x, domain: "[1, inf)".into() });
    }
    Ok(x.powi(m as i32 + 1) / s_hat(m, x)?)
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Exact Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn get(&self, j: usize) -> &BigRational {
        &self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Coefficients of the Bernoulli polynomial `B_n(y) = sum_k C(n,k) B_k y^{n-k}`,
    /// lowest degree first. Needs `n < self.len()`.
    pub fn polynomial(&self, n: usize) -> Vec<BigRational> {
        let row = binomial_row(n);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (k, c) in row.iter().enumerate() {
            coeffs[n - k] = BigRational::from_integer(c.clone()) * &self.values[k];
        }
        coeffs
    }
}

/// Bernoulli numbers via `sum_{k=0}^{m} C(m+1,k) B_k = 0` for `m >= 1`.
pub fn bernoulli_numbers(n: usize) -> BernoulliTable {
    let mut values: Vec<BigRational> = Vec::with_capacity(n + 1);
    values.push(BigRational::one());
    for m in 1..=n {
        if m >= 3 && m % 2 == 1 {
            values.push(BigRational::zero());
            continue;
        }
        let row = binomial_row(m + 1);
        let mut acc = BigRational::zero();
        for (k, b) in values.iter().enumerate() {
            acc += BigRational::from_integer(row[k].clone()) * b;
        }
        values.push(-acc / BigRational::from_integer(row[m].clone()));
    }
    BernoulliTable { values }
}

/// Exact Faulhaber polynomial `Ŝ_m(x) = (B_{m+1}(x+1) - B_{m+1}) / (m+1)`,
/// with `Ŝ_0(x) = x` so that `Ŝ_m(n) = sum_{k=1}^{n} k^m` for every `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaulhaberPoly {
    m: u32,
    coeffs: Vec<BigRational>,
}

/// `p(x + 1)` for `p` given by ascending coefficients.
fn shift_by_one(p: &[BigRational]) -> Vec<BigRational> {
    let n = p.len();
    let mut out = vec![BigRational::zero(); n];
    for (j, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, c) in binomial_row(j).into_iter().enumerate() {
            out[k] += a * BigRational::from_integer(c);
        }
    }
    out
}

impl FaulhaberPoly {
    pub fn new(m: u32) -> Self {
        Self::with_table(m, &bernoulli_numbers(m as usize + 1))
    }

    /// Reuses a precomputed table holding at least `B_0..=B_{m+1}`.
    pub fn with_table(m: u32, table: &BernoulliTable) -> Self {
        if m == 0 {
            return FaulhaberPoly { m, coeffs: vec![BigRational::zero(), BigRational::one()] };
        }
        let n = m as usize + 1;
        let b = table.polynomial(n);
        let mut coeffs = shift_by_one(&b);
        coeffs[0] -= table.get(n);
        let scale = BigRational::from_integer(BigInt::from(n));
        for c in coeffs.iter_mut() {
            *c /= &scale;
        }
        FaulhaberPoly { m, coeffs }
    }

    pub fn degree_m(&self) -> u32 {
        self.m
    }

    /// Ascending coefficients in `x`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    /// Double evaluation in the monomial basis.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients of `t -> Ŝ_m(1 + t)`, exact then rounded. Evaluating in
    /// this basis avoids the cancellation the monomial basis suffers on `[1, 2]`.
    pub fn shifted_at_one(&self) -> Vec<f64> {
        shift_by_one(&self.coeffs).iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Shorthand for one evaluation of `Ŝ_m(x)`.
pub fn faulhaber_exact(m: u32, x: f64) -> f64 {
    FaulhaberPoly::new(m).eval(x)
}

/// Behaviour of `Ŝ_m` and `Â_m(x) = x^{m+1}/Ŝ_m(x)` on `[1, 2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pathologies {
    pub monotone_on_unit_interval: bool,
    pub min_value_on_unit_interval: f64,
    /// Where the minimum of `Ŝ_m` sits.
    pub argmin: f64,
}

const GRID_STEP: f64 = 1e-4;

/// Scans `[1, 2]` with step `1e-4`, refining the minimum of `Ŝ_m` by
/// golden-section search around the best grid point.
pub fn faulhaber_pathologies(m: u32) -> Pathologies {
    let shifted = FaulhaberPoly::new(m).shifted_at_one();
    let s_hat = |t: f64| shifted.iter().rev().fold(0.0, |acc, &a| acc * t + a);
    let a_hat = |t: f64| (1.0 + t).powi(m as i32 + 1) / s_hat(t);

    let steps = (1.0 / GRID_STEP).round() as usize;
    let mut monotone = true;
    let mut prev_a = a_hat(0.0);
    let (mut min_v, mut min_k) = (s_hat(0.0), 0usize);
    for k in 1..=steps {
        let t = k as f64 * GRID_STEP;
        let v = s_hat(t);
        if v < min_v {
            min_v = v;
            min_k = k;
        }
        let a = a_hat(t);
        // A sign change of Ŝ_m sends Â_m through a pole, which is not monotone either.
        if !(a >= prev_a - 1e-12 * prev_a.abs()) || (v <= 0.0) {
            monotone = false;
        }
        prev_a = a;
    }

    let lo = (min_k as f64 - 1.0).max(0.0) * GRID_STEP;
    let hi = ((min_k as f64 + 1.0) * GRID_STEP).min(1.0);
    let t_star = golden_section_min(&s_hat, lo, hi, 1e-14);
    let v_star = s_hat(t_star);
    let (min_value, argmin_t) = if v_star < min_v { (v_star, t_star) } else { (min_v, min_k as f64 * GRID_STEP) };
    Pathologies { monotone_on_unit_interval: monotone, min_value_on_unit_interval: min_value, argmin: 1.0 + argmin_t }
}

fn golden_section_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
