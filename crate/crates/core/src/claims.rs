//! The registry of scalar claim functions certified by the branch-and-bound
//! prover. Each function is written once, generically over [`Scalar`], so the
//! same definition serves outward-rounded interval evaluation and plain f64
//! point evaluation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::interval::{DomainBox, Interval, Scalar};

const PI: f64 = std::f64::consts::PI;

fn two_sin_pi_9<T: Scalar>() -> T {
    T::constant(2.0) * T::constant(PI / 9.0).sin()
}

/// `9 - 4x^2/(1+x^2) - 6x - (1+x-x^2)^8`; its smallest positive root is the
/// threshold constant bracketed by claim C1.
fn lemma33<T: Scalar>(x: T) -> T {
    let one = T::constant(1.0);
    T::constant(9.0)
        - T::constant(4.0) * x * x / (one + x * x)
        - T::constant(6.0) * x
        - (one + x - x * x).powi(8)
}

/// Left-minus-right of the half-plane inequality with the cap `R` fixed and
/// `lambda = 1 - (1 - aR)^(1/9)`.
fn eq32<T: Scalar>(a: T, r_cap: f64) -> T {
    let one = T::constant(1.0);
    let r = T::constant(r_cap);
    let t = T::constant(9.0) - T::constant(4.0) * a * a / (one + a * a) - T::constant(6.0) * a;
    let mobius = (a * r + one) / (r + a);
    let lam = one - (one - a * r).pow_ratio(1, 9);
    let rad = (one + (one - a * a) * lam * (lam + T::constant(2.0))).sqrt();
    t * mobius - rad * (one + a - a * a).powi(7)
}

/// `9x^2 - (1+x^2)^2`.
fn lemma38<T: Scalar>(x: T) -> T {
    let one = T::constant(1.0);
    T::constant(9.0) * x * x - (one + x * x).powi(2)
}

/// The monotonicity numerator
/// `Y = ((m-2)x^{m+1} - m x^{m-1} + 2x) a + m x^{m+2} - (2+m)x^m + 2`, m = 1/4,
/// evaluated through the cancellation-free factorization
/// `Y = (1-u)^2 (u^3 q2(u) - a q1(u)) / (4u^3)`, `u = x^{1/4}`,
/// `q1 = 7u^6+6u^5+...+1`, `q2 = u^7+2u^6+...+8`. The printed form has a
/// double root in x at 1, which naive interval evaluation cannot see; the
/// factored form is the same real function and keeps the enclosure tight
/// near the x = 0.999 edge.
fn lemma310_y<T: Scalar>(a: T, x: T) -> T {
    let one = T::constant(1.0);
    let u = x.pow_ratio(1, 4);
    let mut q1 = T::constant(7.0);
    for k in (1..=6).rev() {
        q1 = q1 * u + T::constant(k as f64);
    }
    let mut q2 = T::constant(1.0);
    for k in 2..=8 {
        q2 = q2 * u + T::constant(k as f64);
    }
    let u3 = u.powi(3);
    let w = u3 * q2 - a * q1;
    (one - u).powi(2) * w / (T::constant(4.0) * u3)
}

/// `U(a; v)`: the sorted-distance sum bound with the integer case `v` fixed.
fn u_of<T: Scalar>(a: T, v: i32) -> T {
    let s = two_sin_pi_9::<T>();
    let one = T::constant(1.0);
    T::constant((8 - v) as f64) / (s * s)
        + T::constant((v - 1) as f64) / (one + a).powi(2)
        + (s.powi(8 - v) * (one + a).powi(v - 1) / T::constant(9.0)).powi(2)
}

/// `U*(a; v*)`: the normalized-distance sum bound with the case `v*` fixed.
fn u_star_of<T: Scalar>(a: T, vstar: i32) -> T {
    let s = two_sin_pi_9::<T>();
    let one = T::constant(1.0);
    let m = (s / (one + a)).pow_ratio(7, 8);
    let cap = (one + a) / T::constant(9.0).pow_ratio(1, 8);
    T::constant((8 - vstar) as f64) / (m * m)
        + T::constant((vstar - 1) as f64) / (cap * cap)
        + (m.powi(8 - vstar) * cap.powi(vstar - 1)).powi(2)
}

/// The contradiction gap:
/// `4U/(U-4) * ((8 - (9/8)U) / (1-a^2)^3)^{1/4} - U*`.
fn f_contra<T: Scalar>(a: T, v: i32, vstar: i32) -> T {
    let one = T::constant(1.0);
    let u = u_of(a, v);
    let four = T::constant(4.0);
    let lead = four * u / (u - four);
    let inner = (T::constant(8.0) - T::constant(9.0 / 8.0) * u) / (one - a * a).powi(3);
    lead * inner.pow_ratio(1, 4) - u_star_of(a, vstar)
}

/// `4 + 8/((1-a)(1+a)^3) - 64/9`: headroom that makes the limiting case of
/// condition (3.6) automatic whenever `sigma < 64/9`.
fn sigma_headroom<T: Scalar>(a: T) -> T {
    let one = T::constant(1.0);
    T::constant(4.0) + T::constant(8.0) / ((one - a) * (one + a).powi(3)) - T::constant(64.0 / 9.0)
}

/// `(1 - (1 - sin(pi/9))^9)/a - R`: admissibility of the cap choice.
fn r_admissible<T: Scalar>(a: T, r_cap: f64) -> T {
    let one = T::constant(1.0);
    let s = T::constant(PI / 9.0).sin();
    (one - (one - s).powi(9)) / a - T::constant(r_cap)
}

/// Closed-form constants, shifted by the probe variable so that a sign
/// change of `const - x` on `[lo, hi]` brackets the constant.
fn const_minus_x<T: Scalar>(which: ConstKind, x: T) -> T {
    let one = T::constant(1.0);
    let nine = T::constant(9.0);
    let s = two_sin_pi_9::<T>();
    let value = match which {
        ConstKind::A1 => nine.pow_ratio(1, 6) * s.pow_ratio(-1, 3) - one,
        ConstKind::A2 => nine.pow_ratio(3, 17) * s.pow_ratio(-7, 17) - one,
        ConstKind::V5Threshold => nine.pow_ratio(1, 5) * s.pow_ratio(-3, 5) - one,
        ConstKind::VStar7Threshold => (nine / s).pow_ratio(1, 7) - one,
    };
    value - x
}

/// Negated derivative of [`eq32`] with R = 0.4, used on the sliver
/// `a ∈ [0.9995, 1]` where the inequality closes to an exact zero at a = 1:
/// certifying this positive proves the gap is decreasing there.
fn c3_sliver_neg_deriv<T: Scalar>(a: T) -> T {
    let one = T::constant(1.0);
    let two = T::constant(2.0);
    let r = T::constant(0.4);
    let t = T::constant(9.0) - T::constant(4.0) * a * a / (one + a * a) - T::constant(6.0) * a;
    let t_p = -T::constant(8.0) * a / (one + a * a).powi(2) - T::constant(6.0);
    let s_ratio = (r * a + one) / (r + a);
    let s_p = (r * r - one) / (r + a).powi(2);
    let base = one - r * a;
    let w = base.pow_ratio(1, 9);
    let h = (two - w).powi(2) - one;
    let h_p = two * (two - w) * (r / T::constant(9.0)) * base.pow_ratio(-8, 9);
    let g = (one + (one - a * a) * h).sqrt();
    let g_p = (-two * a * h + (one - a * a) * h_p) / (two * g);
    let u = one + a - a * a;
    let u_p = one - two * a;
    let f_p = t_p * s_ratio + t * s_p - (g_p * u.powi(7) + T::constant(7.0) * g * u.powi(6) * u_p);
    -f_p
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum ClaimExpr {
    Lemma33,
    Eq32 { r_cap: f64 },
    Lemma38,
    Lemma310Y,
    UMinus4 { v: i32 },
    UUpperGap { v: i32 },
    FContra { v: i32, vstar: i32 },
    SigmaHeadroom,
    RAdmissible { r_cap: f64 },
    Const(ConstKind),
    C3SliverNegDeriv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ConstKind {
    A1,
    A2,
    V5Threshold,
    VStar7Threshold,
}

impl ClaimExpr {
    pub fn from_id(id: &str) -> Option<ClaimExpr> {
        Some(match id {
            "lemma33" => ClaimExpr::Lemma33,
            "eq32_r1" => ClaimExpr::Eq32 { r_cap: 1.0 },
            "eq32_r04" => ClaimExpr::Eq32 { r_cap: 0.4 },
            "lemma38" => ClaimExpr::Lemma38,
            "lemma310_y" => ClaimExpr::Lemma310Y,
            "u_minus_4_v6" => ClaimExpr::UMinus4 { v: 6 },
            "u_minus_4_v7" => ClaimExpr::UMinus4 { v: 7 },
            "u_upper_gap_v6" => ClaimExpr::UUpperGap { v: 6 },
            "u_upper_gap_v7" => ClaimExpr::UUpperGap { v: 7 },
            "f_contra_v7_vs7" => ClaimExpr::FContra { v: 7, vstar: 7 },
            "f_contra_v6_vs7" => ClaimExpr::FContra { v: 6, vstar: 7 },
            "f_contra_v6_vs6" => ClaimExpr::FContra { v: 6, vstar: 6 },
            "sigma_headroom" => ClaimExpr::SigmaHeadroom,
            "r_admissible_r1" => ClaimExpr::RAdmissible { r_cap: 1.0 },
            "r_admissible_r04" => ClaimExpr::RAdmissible { r_cap: 0.4 },
            "const_a1" => ClaimExpr::Const(ConstKind::A1),
            "const_a2" => ClaimExpr::Const(ConstKind::A2),
            "const_v5_threshold" => ClaimExpr::Const(ConstKind::V5Threshold),
            "const_vstar7_threshold" => ClaimExpr::Const(ConstKind::VStar7Threshold),
            "c3_sliver_neg_deriv" => ClaimExpr::C3SliverNegDeriv,
            _ => return None,
        })
    }

    pub fn variables(&self) -> &'static [&'static str] {
        match self {
            ClaimExpr::Lemma33 | ClaimExpr::Lemma38 | ClaimExpr::Const(_) => &["x"],
            ClaimExpr::Lemma310Y => &["a", "x"],
            _ => &["a"],
        }
    }

    fn eval<T: Scalar>(&self, get: &dyn Fn(&str) -> T) -> T {
        match *self {
            ClaimExpr::Lemma33 => lemma33(get("x")),
            ClaimExpr::Eq32 { r_cap } => eq32(get("a"), r_cap),
            ClaimExpr::Lemma38 => lemma38(get("x")),
            ClaimExpr::Lemma310Y => lemma310_y(get("a"), get("x")),
            ClaimExpr::UMinus4 { v } => u_of(get("a"), v) - T::constant(4.0),
            ClaimExpr::UUpperGap { v } => T::constant(64.0 / 9.0) - u_of(get("a"), v),
            ClaimExpr::FContra { v, vstar } => f_contra(get("a"), v, vstar),
            ClaimExpr::SigmaHeadroom => sigma_headroom(get("a")),
            ClaimExpr::RAdmissible { r_cap } => r_admissible(get("a"), r_cap),
            ClaimExpr::Const(kind) => const_minus_x(kind, get("x")),
            ClaimExpr::C3SliverNegDeriv => c3_sliver_neg_deriv(get("a")),
        }
    }
}

/// Enclosure of the registered function over the box; a domain violation
/// anywhere in the evaluation is an error.
pub fn interval_eval(fn_id: &str, bx: &DomainBox) -> Result<Interval> {
    let expr = ClaimExpr::from_id(fn_id).ok_or_else(|| Error::UnknownClaim(fn_id.to_string()))?;
    for v in expr.variables() {
        bx.get(v)?;
    }
    let out = expr.eval(&|name: &str| bx.get(name).expect("validated above"));
    if out.is_valid() {
        Ok(out)
    } else {
        Err(Error::IntervalDomain(format!(
            "`{fn_id}` hit a domain violation on {bx:?}"
        )))
    }
}

/// Non-erroring enclosure, used inside the branch-and-bound loop where a
/// domain violation just means the box must subdivide.
pub fn interval_eval_raw(fn_id: &str, bx: &DomainBox) -> Result<Interval> {
    let expr = ClaimExpr::from_id(fn_id).ok_or_else(|| Error::UnknownClaim(fn_id.to_string()))?;
    for v in expr.variables() {
        bx.get(v)?;
    }
    Ok(expr.eval(&|name: &str| bx.get(name).expect("validated above")))
}

/// Plain f64 evaluation at a point.
pub fn point_eval(fn_id: &str, point: &BTreeMap<String, f64>) -> Result<f64> {
    let expr = ClaimExpr::from_id(fn_id).ok_or_else(|| Error::UnknownClaim(fn_id.to_string()))?;
    for v in expr.variables() {
        if !point.contains_key(*v) {
            return Err(Error::invalid(format!("point is missing variable `{v}`")));
        }
    }
    Ok(expr.eval(&|name: &str| point[name]))
}

pub const ALL_FN_IDS: &[&str] = &[
    "lemma33",
    "eq32_r1",
    "eq32_r04",
    "lemma38",
    "lemma310_y",
    "u_minus_4_v6",
    "u_minus_4_v7",
    "u_upper_gap_v6",
    "u_upper_gap_v7",
    "f_contra_v7_vs7",
    "f_contra_v6_vs7",
    "f_contra_v6_vs6",
    "sigma_headroom",
    "r_admissible_r1",
    "r_admissible_r04",
    "const_a1",
    "const_a2",
    "const_v5_threshold",
    "const_vstar7_threshold",
    "c3_sliver_neg_deriv",
];

// f64 entry points used by the instance-level checks.

pub fn u_bound(a: f64, v: i32) -> f64 {
    u_of::<f64>(a, v)
}

pub fn u_star_bound(a: f64, vstar: i32) -> f64 {
    u_star_of::<f64>(a, vstar)
}

pub fn f_contra_value(a: f64, v: i32, vstar: i32) -> f64 {
    f_contra::<f64>(a, v, vstar)
}

/// `v = min{ j in Z : (1+a)^j (2 sin(pi/9))^{8-j} >= 9 }`.
pub fn v_case(a: f64) -> i32 {
    let s = 2.0 * (PI / 9.0).sin();
    let x = (9.0 * s.powi(-8)).ln() / ((1.0 + a) / s).ln();
    x.ceil() as i32
}

/// `v* = min{ j in Z : j >= 7 log((1+a)/s) / log((1+a)^{15/8} / (9^{1/8} s^{7/8})) }`.
pub fn v_star_case(a: f64) -> i32 {
    let s = 2.0 * (PI / 9.0).sin();
    let num = 7.0 * ((1.0 + a) / s).ln();
    let den = ((1.0 + a).powf(15.0 / 8.0) / (9.0_f64.powf(0.125) * s.powf(0.875))).ln();
    (num / den).ceil() as i32
}
