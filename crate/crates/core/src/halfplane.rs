//! Bisector geometry and the extremal analysis of the half-plane bound:
//! the G function, its closed-form maximizer, the quartic factorization
//! identity behind it, and the resulting critical-point lower bound with its
//! hypothesis gate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{CheckResult, SendovInstance};
use crate::poly::C64;

#[derive(Copy, Clone, Debug)]
pub struct GParams {
    a: f64,
    r: f64,
}

impl GParams {
    pub fn new(a: f64, r: f64) -> Result<GParams> {
        if !(0.0 < r && r < a && a < 1.0) {
            return Err(Error::invalid(format!(
                "need 0 < r < a < 1, got a = {a}, r = {r}"
            )));
        }
        Ok(GParams { a, r })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn domain(&self) -> (f64, f64) {
        (self.r / self.a, 1.0)
    }
}

/// `G(x) = x + sqrt((4 - a^2 + 2arx - r^2)/(a^2 - 2arx + r^2)) sqrt(1 - x^2)`
/// on `[r/a, 1]`.
pub fn g_func(params: &GParams, x: f64) -> Result<f64> {
    let (lo, hi) = params.domain();
    if !(lo..=hi).contains(&x) {
        return Err(Error::invalid(format!("x = {x} outside [{lo}, {hi}]")));
    }
    let (a, r) = (params.a, params.r);
    let num = 4.0 - a * a + 2.0 * a * r * x - r * r;
    let den = a * a - 2.0 * a * r * x + r * r;
    Ok(x + (num / den).sqrt() * (1.0 - x * x).sqrt())
}

/// The closed-form maximizer: `x0 = (2r + a^2 + r^2)/(2a(1+r))`,
/// `phi0 = (a^2 - r^2)/(1+r)`, `G(x0) = (r+2)/a`.
pub fn g_argmax_closed_form(params: &GParams) -> (f64, f64, f64) {
    let (a, r) = (params.a, params.r);
    let x0 = (2.0 * r + a * a + r * r) / (2.0 * a * (1.0 + r));
    let phi0 = (a * a - r * r) / (1.0 + r);
    let gmax = (r + 2.0) / a;
    debug_assert!(x0 >= r / a - 1e-12 && x0 <= 1.0 + 1e-12);
    debug_assert!(phi0 >= (a - r).powi(2) - 1e-12 && phi0 <= a * a - r * r + 1e-12);
    (x0, phi0, gmax)
}

/// Golden-section maximization of G on `[r/a, 1]` to 1e-10 in x.
pub fn g_max_numeric(params: &GParams) -> (f64, f64) {
    let (mut lo, mut hi) = params.domain();
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let g = |x: f64| g_func(params, x).expect("inside domain");
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        }
    }
    let xstar = 0.5 * (lo + hi);
    (xstar, g(xstar))
}

/// Pointwise verification of the quartic factorization and of the L/R
/// expansions used to locate the maximizer.
pub fn quartic_identity_check(a: f64, r: f64, phi: f64) -> CheckResult {
    const ID: &str = "quartic_factorization";
    let d = 1.0 - r * r;
    let e1 = a * a - 1.0;
    let s = e1 + d;

    let quartic = e1 * d * phi.powi(4) - 2.0 * s * s * phi.powi(3)
        + (4.0 + e1 - d) * s * s * phi * phi
        - s.powi(4);
    let factored =
        (e1 * phi * phi - 2.0 * s * phi - s * s) * (d * phi * phi - 2.0 * s * phi + s * s);

    let aa = a * a + r * r;
    let l_fact =
        phi.powi(3) * (4.0 - phi) * (4.0 * a * a * r * r - aa * aa + 2.0 * aa * phi - phi * phi);
    let l_exp = phi.powi(6) - 2.0 * (aa + 2.0) * phi.powi(5)
        + (8.0 * aa - 4.0 * a * a * r * r + aa * aa) * phi.powi(4)
        + (16.0 * a * a * r * r - 4.0 * aa * aa) * phi.powi(3);
    let diff = a * a - r * r;
    let r_fact =
        (phi.powi(3) - (aa + 2.0) * phi * phi + 2.0 * aa * aa - 8.0 * a * a * r * r).powi(2);
    let r_exp = phi.powi(6) - 2.0 * (aa + 2.0) * phi.powi(5)
        + (aa + 2.0).powi(2) * phi.powi(4)
        + 4.0 * diff * diff * phi.powi(3)
        - 4.0 * (aa + 2.0) * diff * diff * phi * phi
        + 4.0 * diff.powi(4);

    let scale = 1.0_f64
        .max(quartic.abs())
        .max(l_fact.abs())
        .max(r_fact.abs());
    let res = ((quartic - factored).abs() / scale)
        .max((l_fact - l_exp).abs() / scale)
        .max((r_fact - r_exp).abs() / scale);
    CheckResult::evaluated(
        ID,
        res <= 1e-10,
        res,
        format!("quartic {quartic:.6e}, L {l_fact:.6e}, R {r_fact:.6e}"),
    )
}

/// The two intersections of the perpendicular bisector of `[0, z0]` with the
/// unit circle: `(1/2 ± i sqrt(4 - |z0|^2) / (2|z0|)) z0`.
pub fn bisector_point(z0: C64) -> Result<(C64, C64)> {
    let m = z0.norm();
    if m == 0.0 || m > 2.0 {
        return Err(Error::invalid(format!(
            "need 0 < |z0| <= 2, got |z0| = {m}"
        )));
    }
    let t = (4.0 - m * m).max(0.0).sqrt() / (2.0 * m);
    let plus = (C64::new(0.5, t)) * z0;
    let minus = (C64::new(0.5, -t)) * z0;
    Ok((plus, minus))
}

/// `(a - lambda(lambda+2)/a) / 2`.
pub fn theorem1_lower_bound(a: f64, lam: f64) -> f64 {
    0.5 * (a - lam * (lam + 2.0) / a)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub lambda: f64,
    pub bound: f64,
    pub witness: Option<[f64; 2]>,
    pub hypothesis_held: bool,
    pub detail: String,
}

/// Gate: the lambda window `1 - (1-|p(0)|)^{1/n} <= lambda <= sin(pi/n)`,
/// `lambda < a`, `rho_1 >= 1`, and `0 < a < 1`. When the gate holds, some
/// critical point must satisfy the real-part lower bound; its absence is a
/// conjecture-critical event for the caller.
pub fn verify_theorem1(inst: &SendovInstance, lam: f64) -> Theorem1Report {
    let n = inst.n();
    let a = inst.a();
    let p0 = inst.polynomial().evaluate(C64::new(0.0, 0.0)).norm();
    let lam_min = 1.0 - (1.0 - p0).max(0.0).powf(1.0 / n as f64);
    let lam_max = (std::f64::consts::PI / n as f64).sin();
    let window = lam_min <= lam && lam <= lam_max;
    let held = window && lam < a && inst.rho()[0] >= 1.0 && a > 0.0 && a < 1.0;
    if !held {
        return Theorem1Report {
            lambda: lam,
            bound: f64::NAN,
            witness: None,
            hypothesis_held: false,
            detail: format!(
                "vacuous: window [{lam_min:.6}, {lam_max:.6}], lambda {lam:.6}, a {a:.6}, rho1 {:.6}",
                inst.rho()[0]
            ),
        };
    }
    let bound = theorem1_lower_bound(a, lam);
    let witness = inst
        .criticals()
        .iter()
        .filter(|c| c.re >= bound - 1e-9)
        .max_by(|p, q| p.re.total_cmp(&q.re))
        .map(|c| [c.re, c.im]);
    Theorem1Report {
        lambda: lam,
        bound,
        witness,
        hypothesis_held: true,
        detail: match witness {
            Some([re, im]) => format!("witness {re:.9}+{im:.9}i, bound {bound:.9}"),
            None => format!("CONJECTURE-CRITICAL: no critical point with Re >= {bound:.9}"),
        },
    }
}

/// Sampled minimum-modulus check of the annular lower bound
/// `|p| > 1 - (1-lambda)^n` on the circle `|z - a| = lambda`.
pub fn lemma_2_1_check(inst: &SendovInstance, lam: f64, nodes: usize) -> CheckResult {
    const ID: &str = "lemma_2_1_min_modulus";
    if nodes < 360 {
        return CheckResult::vacuous(ID, "needs nodes >= 360");
    }
    let a = inst.a();
    let n = inst.n();
    let lam_max = (std::f64::consts::PI / n as f64).sin();
    if !(a > 0.0 && a < 1.0 && inst.rho()[0] >= 1.0 && lam > 0.0 && lam <= lam_max) {
        return CheckResult::vacuous(
            ID,
            format!("gate needs 0<a<1, rho1 >= 1, 0 < lambda <= {lam_max:.6}"),
        );
    }
    let threshold = 1.0 - (1.0 - lam).powi(n as i32);
    let mut min_mod = f64::INFINITY;
    for k in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        let z = C64::new(a + lam * theta.cos(), lam * theta.sin());
        min_mod = min_mod.min(inst.polynomial().evaluate(z).norm());
    }
    let pass = min_mod > threshold - 1e-9;
    CheckResult::evaluated(
        ID,
        pass,
        (threshold - min_mod).max(0.0),
        format!(
            "sampled min |p| = {min_mod:.9e} over {nodes} nodes vs threshold {threshold:.9e} \
             (sampling lower bound, not certified)"
        ),
    )
}
