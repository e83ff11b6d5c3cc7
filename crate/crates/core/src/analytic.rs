//! Analytic machinery for the partial list coloring lower bound.
//!
//! For integers `s > t >= 1` put `u = s - t` and define, on `[0, 1]`,
//!
//! ```text
//! f_{s,t}(x) = 1 - x - [1 - (1 - x)/u]^t .
//! ```
//!
//! `f` is strictly decreasing (its derivative is at most -1), positive at 0
//! and equal to -1 at 1, so it has a unique root `q = q_{s,t}` in `(0, 1)`.
//! That root is the per-vertex success probability of the random partition
//! scheme in [`crate::scheme`]: every graph with list chromatic number at
//! most `s` and lists of size `t` admits a proper partial coloring of at
//! least `q * n` vertices.  Two-sided estimate: `(6/7)(t/s) < q <= t/s`,
//! with equality on the right exactly when `t = 1` (where `q = 1/s`).
//!
//! This module computes `q` with a *certified* bracket (the endpoint signs
//! are established in exact integer arithmetic, not floating point), expands
//! `u^t * f` into an integer polynomial, and scans the normalized ratio
//! `q / (t/s)` over parameter grids together with its `s -> infinity` limit
//! curve.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The constant `6/7` from the two-sided estimate `(6/7)(t/s) < q <= t/s`.
pub const LEMMA_C: f64 = 6.0 / 7.0;

/// Default bracket width for [`compute_q`].
pub const DEFAULT_Q_TOL: f64 = 1e-12;

const MAX_BISECTION_STEPS: u32 = 200;

/// Validated parameter pair `s > t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundParams {
    s: u32,
    t: u32,
}

impl BoundParams {
    pub fn new(s: u32, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParams(format!(
                "list size t must be positive, got t = {t}"
            )));
        }
        if s <= t {
            return Err(Error::InvalidParams(format!(
                "need s > t (the scheme adds u = s - t > 0 extra classes), got s = {s}, t = {t}"
            )));
        }
        Ok(BoundParams { s, t })
    }

    pub fn s(self) -> u32 {
        self.s
    }

    pub fn t(self) -> u32 {
        self.t
    }

    /// `u = s - t`, the number of extra classes in the partition scheme.
    pub fn u(self) -> u32 {
        self.s - self.t
    }

    /// The upper bound `t/s` for `q_{s,t}`, attained exactly when `t = 1`.
    pub fn t_over_s(self) -> f64 {
        f64::from(self.t) / f64::from(self.s)
    }
}

impl fmt::Display for BoundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s = {}, t = {})", self.s, self.t)
    }
}

fn pow_u32(base: f64, exp: u32) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(f64::from(exp)),
    }
}

fn f_raw(params: BoundParams, x: f64) -> f64 {
    let u = f64::from(params.u());
    1.0 - x - pow_u32(1.0 - (1.0 - x) / u, params.t)
}

/// Evaluate `f_{s,t}(x)`.  Requires `x` in `[0, 1]`.
pub fn eval_f(params: BoundParams, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("eval_f needs x in [0, 1], got {x}")));
    }
    Ok(f_raw(params, x))
}

/// Exact sign of `f_{s,t}` at the rational point `num/den`
/// (requires `0 <= num/den <= 1`, `den > 0`).
///
/// Multiplying `f(num/den)` by the positive quantity `u^t * den^t` clears all
/// denominators:
///
/// ```text
/// sign f(num/den) = sign[ u^t (den - num) den^(t-1) - ((u-1) den + num)^t ] .
/// ```
fn exact_f_sign_at_ratio(params: BoundParams, num: &BigInt, den: &BigInt) -> Ordering {
    debug_assert!(!num.is_negative() && num <= den && den.is_positive());
    let t = params.t;
    let u = BigInt::from(params.u());
    let u_to_t = Pow::pow(&u, t);
    let positive_part = u_to_t * (den - num) * Pow::pow(den, t - 1);
    let negative_part = Pow::pow(&((&u - BigInt::from(1u32)) * den + num), t);
    (positive_part - negative_part).cmp(&BigInt::zero())
}

/// Exact sign of `f_{s,t}` at the dyadic rational value of the float `x`.
///
/// Every finite `f64` is a rational `a / 2^m`, so the sign can be settled in
/// integer arithmetic via [`exact_f_sign_at_ratio`]; the result is immune to
/// rounding.  This direct power-form route is independent of the binomial
/// expansion in [`poly_coeffs`], so the two can cross-check each other.
pub fn exact_f_sign(params: BoundParams, x: f64) -> Result<Ordering> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "exact_f_sign needs x in [0, 1], got {x}"
        )));
    }
    let ratio = BigRational::from_float(x)
        .ok_or_else(|| Error::Domain(format!("non-finite x: {x}")))?;
    Ok(exact_f_sign_at_ratio(params, ratio.numer(), ratio.denom()))
}

/// A certified root bracket for `q_{s,t}`.
///
/// Invariants, enforced at construction:
/// * `0 < bracket_lo <= q <= bracket_hi < 1`;
/// * `f(bracket_lo) >= 0 >= f(bracket_hi)` in **exact** arithmetic, so the
///   true root lies inside the bracket;
/// * `bracket_hi - bracket_lo <= tol` for the tolerance passed to
///   [`compute_q`].
#[derive(Debug, Clone, Copy)]
pub struct QValue {
    pub params: BoundParams,
    /// Bracket midpoint, reported as `q_{s,t}`.
    pub q: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Floating-point `f(q)`, for diagnostics only.
    pub residual: f64,
}

/// Bisection where every accepted midpoint sign comes from exact arithmetic.
/// Requires `f(lo) >= 0 >= f(hi)` exactly on entry.
fn certified_bisect(params: BoundParams, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut steps = 0;
    while (hi - lo > tol || lo == 0.0 || hi == 1.0) && steps < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // adjacent floats; cannot shrink further
        }
        match exact_f_sign_at_ratio_of_float(params, mid) {
            Ordering::Less => hi = mid,
            _ => lo = mid,
        }
        steps += 1;
    }
    (lo, hi)
}

fn exact_f_sign_at_ratio_of_float(params: BoundParams, x: f64) -> Ordering {
    let ratio = BigRational::from_float(x).expect("bisection midpoints are finite");
    exact_f_sign_at_ratio(params, ratio.numer(), ratio.denom())
}

/// Compute `q_{s,t}` by bisection on `[0, 1]` to bracket width `tol`.
///
/// The bulk of the work runs in floating point; the final bracket endpoints
/// are then certified with [`exact_f_sign`].  In the rare case floating-point
/// evaluation mis-signed a point within rounding distance of the root, the
/// search falls back to bisection driven entirely by exact signs, so the
/// returned bracket always genuinely contains the root.
pub fn compute_q(params: BoundParams, tol: f64) -> Result<QValue> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "bracket tolerance must be positive and finite, got {tol}"
        )));
    }
    // Below ~1e-16 bisection on [0, 1] stalls on adjacent floats.
    let tol = tol.max(1e-15);

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64); // f(0) > 0 > f(1) always
    let mut steps = 0;
    while (hi - lo > tol || lo == 0.0 || hi == 1.0) && steps < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f_raw(params, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }

    let lo_certified = exact_f_sign(params, lo)? != Ordering::Less; // f(lo) >= 0
    let hi_certified = exact_f_sign(params, hi)? != Ordering::Greater; // f(hi) <= 0
    let (lo, hi) = if lo_certified && hi_certified && lo > 0.0 && hi < 1.0 {
        (lo, hi)
    } else if !lo_certified {
        // Floating point overshot: the true root lies below `lo`.
        certified_bisect(params, 0.0, lo, tol)
    } else if !hi_certified {
        certified_bisect(params, hi, 1.0, tol)
    } else {
        certified_bisect(params, lo, hi, tol)
    };

    if !(lo > 0.0 && hi < 1.0 && hi - lo <= tol && lo < hi) {
        return Err(Error::Domain(format!(
            "bisection failed to certify a bracket of width {tol} for {params}"
        )));
    }
    let q = 0.5 * (lo + hi);
    Ok(QValue {
        params,
        q,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: f_raw(params, q),
    })
}

/// Outcome of checking `(6/7)(t/s) < q_{s,t} <= t/s` for one parameter pair.
///
/// Both inequalities are decided in exact arithmetic by evaluating the sign
/// of `f` at the rational points `6t/7s` and `t/s` directly — the reported
/// `ok` never depends on floating-point rounding.
#[derive(Debug, Clone, Copy)]
pub struct LemmaBounds {
    pub params: BoundParams,
    pub q: QValue,
    /// `(6/7)(t/s)` rounded to f64, for display.
    pub lower: f64,
    /// `t/s` rounded to f64, for display.
    pub upper: f64,
    /// Exact check of `q > (6/7)(t/s)` (strict).
    pub lower_ok: bool,
    /// Exact check of `q <= t/s` (equality holds exactly when `t = 1`).
    pub upper_ok: bool,
    pub ok: bool,
}

/// Check the two-sided estimate `(6/7)(t/s) < q_{s,t} <= t/s`.
pub fn check_lemma_bounds(params: BoundParams) -> Result<LemmaBounds> {
    let q = compute_q(params, DEFAULT_Q_TOL)?;
    let (s, t) = (params.s(), params.t());
    // f is strictly decreasing, so q > x iff f(x) > 0 and q <= x iff f(x) <= 0.
    let lower_ok = exact_f_sign_at_ratio(
        params,
        &BigInt::from(6u32 * t),
        &BigInt::from(7u32 * s),
    ) == Ordering::Greater;
    let upper_ok =
        exact_f_sign_at_ratio(params, &BigInt::from(t), &BigInt::from(s)) != Ordering::Greater;
    Ok(LemmaBounds {
        params,
        q,
        lower: LEMMA_C * params.t_over_s(),
        upper: params.t_over_s(),
        lower_ok,
        upper_ok,
        ok: lower_ok && upper_ok,
    })
}

/// A sample of the function behind the `6/7` constant: with `c = 6/7`,
///
/// ```text
/// g(v) = ln(1 - c v) + v (1 - c v) / (1 - v)   on (0, 1).
/// ```
///
/// Positivity of `g` on all of `(0, 1)` is exactly what makes `c (t/s)` a
/// valid strict lower bound for `q_{s,t}` uniformly in `s` and `t`.
#[derive(Debug, Clone, Copy)]
pub struct LemmaCheck {
    pub v: f64,
    pub c: f64,
    pub g_value: f64,
}

/// Evaluate `g` at `v` in `(0, 1)`.
pub fn eval_g(v: f64) -> Result<LemmaCheck> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!(
            "eval_g needs v strictly inside (0, 1), got {v}"
        )));
    }
    let c = LEMMA_C;
    let one_minus_cv = 1.0 - c * v;
    let g_value = one_minus_cv.ln() + v * one_minus_cv / (1.0 - v);
    Ok(LemmaCheck { v, c, g_value })
}

/// The integer polynomial
///
/// ```text
/// p(x) = u^t (1 - x) - (u - 1 + x)^t  =  u^t * f_{s,t}(x),
/// ```
///
/// stored dense by ascending degree.  Its degree is exactly `t`, the leading
/// coefficient is `-1`, and the constant term is `u^t - (u-1)^t`; feeding the
/// rational roots theorem these facts shows `q_{s,t}` is either irrational or
/// a (positive or negative) divisor of the constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Coefficients by ascending degree; the length is `degree() + 1`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("polynomial is never empty")
    }

    /// Horner evaluation in floating point.  Coefficients are rounded to
    /// f64 first, so this is for plotting and cross-checks, not certification.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact Horner evaluation at the dyadic rational value of `x`.
    /// Returns `None` for non-finite `x`.
    pub fn eval_exact(&self, x: f64) -> Option<BigRational> {
        let x = BigRational::from_float(x)?;
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + BigRational::from(c.clone());
        }
        Some(acc)
    }

    /// Exact sign at `x` via the expansion route — independent of
    /// [`exact_f_sign`], which uses the un-expanded power form.
    pub fn sign_at(&self, x: f64) -> Option<Ordering> {
        let value = self.eval_exact(x)?;
        Some(value.cmp(&BigRational::zero()))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !wrote {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag == BigInt::from(1u32);
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expand `p(x) = u^t (1 - x) - (u - 1 + x)^t` by the binomial theorem.
///
/// Coefficients, with `w = u - 1` and `C` the binomial coefficient:
/// * constant: `u^t - w^t`
/// * degree 1: `-(u^t + t * w^(t-1))`
/// * degree `k`, `2 <= k <= t`: `-C(t, k) * w^(t-k)`.
///
/// Defined for `t >= 2`; for `t = 1` the root is exactly `1/s` and no
/// polynomial machinery is needed.
pub fn poly_coeffs(params: BoundParams) -> Result<IntPolynomial> {
    let t = params.t;
    if t < 2 {
        return Err(Error::InvalidParams(format!(
            "polynomial expansion needs t >= 2 (for t = 1 the root is exactly 1/s); got t = {t}"
        )));
    }
    let u = BigInt::from(params.u());
    let w = &u - BigInt::from(1u32);
    let u_to_t = Pow::pow(&u, t);
    let mut coeffs = vec![BigInt::zero(); t as usize + 1];
    coeffs[0] = &u_to_t - Pow::pow(&w, t);
    coeffs[1] = -(&u_to_t + BigInt::from(t) * Pow::pow(&w, t - 1));
    for k in 2..=t {
        let binom = num_integer::binomial(BigInt::from(t), BigInt::from(k));
        coeffs[k as usize] = -binom * Pow::pow(&w, t - k);
    }
    Ok(IntPolynomial { coeffs })
}

/// One grid cell of [`ratio_scan`].
#[derive(Debug, Clone, Copy)]
pub struct RatioEntry {
    pub s: u32,
    pub t: u32,
    pub q: f64,
    /// `q / (t/s)`, always in `(6/7, 1]`.
    pub ratio: f64,
}

/// Grid scan of the normalized root `q_{s,t} / (t/s)` together with its
/// `s -> infinity` limit curve.
#[derive(Debug, Clone)]
pub struct RatioReport {
    /// One entry per pair `0 < t < s <= s_max`, ordered by `(s, t)`.
    pub grid: Vec<RatioEntry>,
    pub grid_min: f64,
    pub grid_argmin: (u32, u32),
    /// Minimum of the limit curve `r(v)` over `v` in `(0, 1)`.
    pub limit_min: f64,
    pub limit_argmin_v: f64,
}

/// For fixed `v` in `(0, 1)`: as `s -> infinity` with `t/s -> v`, the
/// normalized root tends to `r(v) = (1 - w)/v` where `w = w(v)` in `(0, 1)`
/// is the unique solution of `ln w = -v w / (1 - v)`.
fn limit_w(v: f64) -> f64 {
    // h(w) = ln w + v w / (1 - v) is strictly increasing on (0, 1],
    // h(0+) = -inf and h(1) = v/(1 - v) > 0.
    let coef = v / (1.0 - v);
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 1.0_f64);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid.ln() + coef * mid <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The limit curve `r(v)` described at [`limit_w`].
pub fn limit_ratio(v: f64) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!(
            "limit_ratio needs v strictly inside (0, 1), got {v}"
        )));
    }
    Ok((1.0 - limit_w(v)) / v)
}

/// Minimize the limit curve: coarse scan on a 1/2000 grid, then
/// golden-section refinement of the bracketing interval down to width 1e-9.
/// Returns `(min value, argmin v)`.
fn minimize_limit_ratio() -> (f64, f64) {
    const GRID: u32 = 2000;
    let step = 1.0 / f64::from(GRID);
    let mut best_v = 0.5;
    let mut best = f64::INFINITY;
    for k in 1..GRID {
        let v = f64::from(k) * step;
        let r = (1.0 - limit_w(v)) / v;
        if r < best {
            best = r;
            best_v = v;
        }
    }
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_v - 2.0 * step, best_v + 2.0 * step);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = (1.0 - limit_w(c)) / c;
    let mut fd = (1.0 - limit_w(d)) / d;
    while b - a > 1e-9 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = (1.0 - limit_w(c)) / c;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = (1.0 - limit_w(d)) / d;
        }
    }
    let v = 0.5 * (a + b);
    ((1.0 - limit_w(v)) / v, v)
}

/// Scan `q_{s,t} / (t/s)` over every pair `0 < t < s <= s_max` and minimize
/// the `s -> infinity` limit curve.  `s_max >= 3`.
pub fn ratio_scan(s_max: u32) -> Result<RatioReport> {
    if s_max < 3 {
        return Err(Error::InvalidParams(format!(
            "ratio_scan needs s_max >= 3, got {s_max}"
        )));
    }
    let mut grid = Vec::with_capacity((s_max as usize * (s_max as usize - 1)) / 2);
    let mut grid_min = f64::INFINITY;
    let mut grid_argmin = (0, 0);
    for s in 2..=s_max {
        for t in 1..s {
            let params = BoundParams::new(s, t)?;
            let q = compute_q(params, DEFAULT_Q_TOL)?;
            let ratio = q.q * f64::from(s) / f64::from(t);
            if ratio < grid_min {
                grid_min = ratio;
                grid_argmin = (s, t);
            }
            grid.push(RatioEntry { s, t, q: q.q, ratio });
        }
    }
    let (limit_min, limit_argmin_v) = minimize_limit_ratio();
    Ok(RatioReport {
        grid,
        grid_min,
        grid_argmin,
        limit_min,
        limit_argmin_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: u32, t: u32) -> BoundParams {
        BoundParams::new(s, t).unwrap()
    }

    fn q_of(s: u32, t: u32) -> QValue {
        compute_q(params(s, t), DEFAULT_Q_TOL).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(BoundParams::new(2, 2).is_err());
        assert!(BoundParams::new(1, 2).is_err());
        assert!(BoundParams::new(3, 0).is_err());
        assert!(BoundParams::new(2, 1).is_ok());
    }

    #[test]
    fn f_at_interval_ends() {
        for (s, t) in [(3, 2), (5, 4), (5, 2), (17, 9)] {
            let p = params(s, t);
            assert!(eval_f(p, 0.0).unwrap() > 0.0);
            assert_eq!(eval_f(p, 1.0).unwrap(), -1.0);
        }
    }

    #[test]
    fn f_domain_is_unit_interval() {
        let p = params(3, 2);
        assert!(eval_f(p, -0.1).is_err());
        assert!(eval_f(p, 1.1).is_err());
        assert!(eval_f(p, f64::NAN).is_err());
    }

    #[test]
    fn f_sample_value() {
        // f_{5,4}(0.724) = 0.276 - 0.931^4, slightly above 1.2e-3.
        let v = eval_f(params(5, 4), 0.724).unwrap();
        assert!((v - 1.239_521_024_000_045_4e-3).abs() < 1e-12);
    }

    #[test]
    fn q32_is_golden_ratio_conjugate() {
        // s = 3, t = 2: p(x) = 1 - x - x^2, so q = (sqrt(5) - 1)/2.
        let q = q_of(3, 2);
        let exact = (5.0_f64.sqrt() - 1.0) / 2.0;
        assert!((q.q - exact).abs() < 2e-12);
        assert!(q.bracket_lo <= exact && exact <= q.bracket_hi);
    }

    #[test]
    fn q54_matches_quartic_root() {
        // s = 5, t = 4: p(x) = 1 - x - x^4, root a bit above 0.724.
        let q = q_of(5, 4);
        assert!((q.q - 0.724_491_959_000_513_2).abs() < 2e-12);
        assert!(q.q > 0.724 && q.q < 0.725);
    }

    #[test]
    fn q52_matches_quadratic_root() {
        // s = 5, t = 2: 9 f(x) = 5 - 13x - x^2, so q = (-13 + sqrt(189))/2.
        let exact = (-13.0 + 189.0_f64.sqrt()) / 2.0;
        assert!((q_of(5, 2).q - exact).abs() < 2e-12);
    }

    #[test]
    fn q42_matches_quadratic_root() {
        // s = 4, t = 2: 4 f(x) = 3 - 6x - ... gives q = 2 sqrt(3) - 3.
        let exact = 2.0 * 3.0_f64.sqrt() - 3.0;
        assert!((q_of(4, 2).q - exact).abs() < 2e-12);
    }

    #[test]
    fn q_with_unit_lists_is_one_over_s() {
        // t = 1: f(x) = 1 - x - (1 - (1-x)/u), linear with root exactly 1/s.
        for s in [2, 3, 10, 200] {
            let q = q_of(s, 1);
            assert!((q.q - 1.0 / f64::from(s)).abs() <= q.bracket_hi - q.bracket_lo);
        }
    }

    #[test]
    fn bracket_is_certified_and_tight() {
        for (s, t) in [(3, 2), (5, 4), (5, 2), (41, 17), (200, 126), (200, 199)] {
            let q = q_of(s, t);
            let p = params(s, t);
            assert!(q.bracket_hi - q.bracket_lo <= DEFAULT_Q_TOL);
            assert!(q.bracket_lo > 0.0 && q.bracket_hi < 1.0);
            assert_ne!(exact_f_sign(p, q.bracket_lo).unwrap(), Ordering::Less);
            assert_ne!(exact_f_sign(p, q.bracket_hi).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn compute_q_rejects_bad_tolerance() {
        assert!(compute_q(params(3, 2), 0.0).is_err());
        assert!(compute_q(params(3, 2), -1e-9).is_err());
        assert!(compute_q(params(3, 2), f64::NAN).is_err());
    }

    #[test]
    fn lemma_bounds_hold_on_samples() {
        for (s, t) in [(2, 1), (3, 2), (5, 1), (5, 4), (200, 1), (200, 199)] {
            let lb = check_lemma_bounds(params(s, t)).unwrap();
            assert!(lb.ok, "lemma bounds failed at (s, t) = ({s}, {t})");
            assert!(lb.lower_ok && lb.upper_ok);
            assert!(lb.lower < lb.upper);
        }
    }

    #[test]
    fn g_sample_value() {
        // g(1/2) = ln(4/7) + 4/7.
        let g = eval_g(0.5).unwrap();
        assert!((g.g_value - 0.011_812_783_493_148_626).abs() < 1e-15);
        assert_eq!(g.c, 6.0 / 7.0);
    }

    #[test]
    fn g_domain_is_open_interval() {
        assert!(eval_g(0.0).is_err());
        assert!(eval_g(1.0).is_err());
        assert!(eval_g(-0.5).is_err());
        assert!(eval_g(f64::NAN).is_err());
    }

    #[test]
    fn poly_examples() {
        let to_i64 = |p: &IntPolynomial| -> Vec<i64> {
            p.coeffs()
                .iter()
                .map(|c| c.to_string().parse().unwrap())
                .collect()
        };
        let p32 = poly_coeffs(params(3, 2)).unwrap();
        assert_eq!(to_i64(&p32), vec![1, -1, -1]);
        assert_eq!(p32.to_string(), "1 - x - x^2");

        let p54 = poly_coeffs(params(5, 4)).unwrap();
        assert_eq!(to_i64(&p54), vec![1, -1, 0, 0, -1]);
        assert_eq!(p54.to_string(), "1 - x - x^4");

        let p52 = poly_coeffs(params(5, 2)).unwrap();
        assert_eq!(to_i64(&p52), vec![5, -13, -1]);
        assert_eq!(p52.to_string(), "5 - 13*x - x^2");
    }

    #[test]
    fn poly_rejects_unit_lists() {
        assert!(poly_coeffs(params(5, 1)).is_err());
    }

    #[test]
    fn poly_shape_invariants() {
        for (s, t) in [(3, 2), (5, 4), (17, 9), (30, 29)] {
            let p = poly_coeffs(params(s, t)).unwrap();
            assert_eq!(p.degree(), t as usize);
            assert_eq!(p.leading_coeff(), &BigInt::from(-1));
            let u = BigInt::from(s - t);
            let w = &u - BigInt::from(1u32);
            assert_eq!(
                p.constant_term(),
                &(Pow::pow(&u, t) - Pow::pow(&w, t))
            );
        }
    }

    #[test]
    fn poly_signs_agree_with_power_form() {
        for (s, t) in [(3, 2), (5, 4), (12, 7), (30, 29)] {
            let pr = params(s, t);
            let poly = poly_coeffs(pr).unwrap();
            for k in 0..=20 {
                let x = f64::from(k) / 20.0;
                assert_eq!(poly.sign_at(x).unwrap(), exact_f_sign(pr, x).unwrap());
            }
        }
    }

    #[test]
    fn limit_curve_samples() {
        // r(v) -> 1 at both ends; minimum just under 0.86 near v = 0.6264.
        assert!(limit_ratio(0.01).unwrap() > 0.99);
        assert!(limit_ratio(0.99).unwrap() > 0.95);
        let r = limit_ratio(0.626_412).unwrap();
        assert!((r - 0.859_884_128_7).abs() < 1e-6);
    }

    #[test]
    fn ratio_scan_small_grid() {
        let report = ratio_scan(10).unwrap();
        assert_eq!(report.grid.len(), (2..=10u32).map(|s| s as usize - 1).sum::<usize>());
        for e in &report.grid {
            // At t = 1 the true ratio is exactly 1; the reported q is a
            // bracket midpoint, so allow s * (bracket width) of slack.
            assert!(e.ratio > LEMMA_C && e.ratio <= 1.0 + 1e-9);
        }
        let e32 = report
            .grid
            .iter()
            .find(|e| e.s == 3 && e.t == 2)
            .unwrap();
        assert!((e32.ratio - 0.927_050_983_124_845).abs() < 1e-9);
        assert!((report.limit_min - 0.859_884_128_720_582_5).abs() < 1e-6);
        assert!(report.grid_min > report.limit_min);
    }

    #[test]
    fn ratio_scan_rejects_tiny_grid() {
        assert!(ratio_scan(2).is_err());
    }
}
