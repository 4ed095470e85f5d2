//! The Sendov instance model: a distinguished zero `a`, the remaining zeros,
//! the critical points, and the derived distance statistics, together with
//! the unconditional identity checks and the hypothesis-gated lemma checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::claims::{u_bound, u_star_bound, v_case, v_star_case};
use crate::error::{Error, Result};
use crate::poly::{pairing_distance, Polynomial, C64, DEFAULT_ROOT_TOL};

/// Tolerance for identity residuals and inequality slack in checks.
const CHECK_TOL: f64 = 1e-9;
/// Tighter tolerance used by the gamma-product inequality.
const GAMMA_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SendovInstance {
    n: usize,
    a: f64,
    zeros: Vec<C64>,
    criticals: Vec<C64>,
    /// `|a - z_k|`, ascending.
    r: Vec<f64>,
    /// `|a - zeta_j|`, ascending.
    rho: Vec<f64>,
    sigma: f64,
    delta: Option<f64>,
    /// `R_k = r_k * (prod r_j)^(-1/(n-1))`, aligned with `r`.
    big_r: Vec<f64>,
    /// Moebius images of the criticals, aligned with `criticals`.
    gamma: Vec<C64>,
    /// Moebius images of the zeros, aligned with `zeros`.
    w: Vec<C64>,
    poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub hypothesis_held: bool,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

impl CheckResult {
    pub fn evaluated(id: &str, pass: bool, residual: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            check_id: id.to_string(),
            hypothesis_held: true,
            pass,
            residual,
            detail: detail.into(),
        }
    }

    /// Hypothesis failed: reported as vacuous-true and flagged.
    pub fn vacuous(id: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            check_id: id.to_string(),
            hypothesis_held: false,
            pass: true,
            residual: 0.0,
            detail: format!("vacuous: {}", detail.into()),
        }
    }

    /// A hypothesis that held together with a failed conclusion; for the
    /// disk-constrained gates this is conjecture-critical.
    pub fn is_alarm(&self) -> bool {
        self.hypothesis_held && !self.pass
    }
}

/// `|L - R|`, relative where magnitudes exceed 1.
fn hybrid_residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / 1.0_f64.max(lhs.abs()).max(rhs.abs())
}

fn hybrid_residual_c(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / 1.0_f64.max(lhs.norm()).max(rhs.norm())
}

/// How far `lhs <= rhs` is violated (0 when satisfied).
fn violation(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).max(0.0)
}

fn canonical_sort(points: &mut [C64]) {
    points.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
}

pub fn build_instance(a: f64, zeros: &[C64]) -> Result<SendovInstance> {
    let n = zeros.len() + 1;
    if !(2..=12).contains(&n) {
        return Err(Error::invalid(format!("degree {n} outside [2, 12]")));
    }
    if !a.is_finite() || a.abs() > 1.0 + 1e-12 {
        return Err(Error::invalid(format!("a = {a} outside the unit interval")));
    }
    for z in zeros {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1.0 + 1e-12 {
            return Err(Error::invalid(format!(
                "zero {z} outside the closed unit disk"
            )));
        }
        if (z - C64::new(a, 0.0)).norm() == 0.0 {
            return Err(Error::invalid(
                "zero coincides exactly with a; the instance degenerates",
            ));
        }
    }

    let mut zeros = zeros.to_vec();
    canonical_sort(&mut zeros);

    let mut all_roots = vec![C64::new(a, 0.0)];
    all_roots.extend_from_slice(&zeros);
    let poly = Polynomial::from_roots(&all_roots, C64::new(1.0, 0.0))?;
    let dpoly = poly.derivative();
    let rootres = dpoly.find_roots(DEFAULT_ROOT_TOL)?;
    let mut criticals = rootres.roots;
    canonical_sort(&mut criticals);

    Ok(assemble(n, a, zeros, criticals, poly))
}

fn assemble(
    n: usize,
    a: f64,
    zeros: Vec<C64>,
    criticals: Vec<C64>,
    poly: Polynomial,
) -> SendovInstance {
    let av = C64::new(a, 0.0);
    let mut r: Vec<f64> = zeros.iter().map(|z| (av - z).norm()).collect();
    let mut rho: Vec<f64> = criticals.iter().map(|z| (av - z).norm()).collect();
    r.sort_by(f64::total_cmp);
    rho.sort_by(f64::total_cmp);

    let sigma = r.iter().map(|rk| 1.0 / (rk * rk)).sum();
    let delta = if a != 0.0 && zeros.iter().all(|z| z.norm() > 0.0) {
        let sum: C64 = zeros.iter().map(|z| z.inv()).sum();
        Some((C64::new(1.0 / a, 0.0) + sum).re)
    } else {
        None
    };

    let gm = (r.iter().map(|rk| rk.ln()).sum::<f64>() / (n - 1) as f64).exp();
    let big_r = r.iter().map(|rk| rk / gm).collect();

    let moebius = |z: C64| (z - av) / (av * z - C64::new(1.0, 0.0));
    let gamma = criticals.iter().map(|&z| moebius(z)).collect();
    let w = zeros.iter().map(|&z| moebius(z)).collect();

    SendovInstance {
        n,
        a,
        zeros,
        criticals,
        r,
        rho,
        sigma,
        delta,
        big_r,
        gamma,
        w,
        poly,
    }
}

impl SendovInstance {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }
    pub fn criticals(&self) -> &[C64] {
        &self.criticals
    }
    pub fn r(&self) -> &[f64] {
        &self.r
    }
    pub fn rho(&self) -> &[f64] {
        &self.rho
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn delta(&self) -> Option<f64> {
        self.delta
    }
    pub fn big_r(&self) -> &[f64] {
        &self.big_r
    }
    pub fn gamma(&self) -> &[C64] {
        &self.gamma
    }
    pub fn w(&self) -> &[C64] {
        &self.w
    }
    /// The monic polynomial `(z-a) * prod (z - z_k)`.
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn prod_r(&self) -> f64 {
        self.r.iter().product()
    }
    pub fn prod_rho(&self) -> f64 {
        self.rho.iter().product()
    }
}

/// `(I(a), I(p))`: distance from `a` to the nearest critical point, and the
/// largest such distance over all zeros of `p`.
pub fn i_measure(inst: &SendovInstance) -> (f64, f64) {
    let i_of = |z: C64| {
        inst.criticals
            .iter()
            .map(|c| (z - c).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let i_a = inst.rho[0];
    let mut i_p = i_of(C64::new(inst.a, 0.0));
    for &z in &inst.zeros {
        i_p = i_p.max(i_of(z));
    }
    (i_a, i_p)
}

#[derive(Clone, Debug)]
pub struct ScalarStats {
    pub sigma: f64,
    pub delta: Option<f64>,
    pub big_r: Vec<f64>,
    pub phi_stat: Option<f64>,
}

pub fn scalar_stats(inst: &SendovInstance) -> ScalarStats {
    let a = inst.a;
    let phi_stat = if inst.zeros.iter().all(|z| z.norm() > 0.0) {
        let sum: f64 = inst
            .zeros
            .iter()
            .map(|z| {
                let rk = (C64::new(a, 0.0) - z).norm();
                (z.norm_sqr() - a * a) / (rk * rk)
            })
            .sum();
        let prod_abs: f64 = inst.zeros.iter().map(|z| z.norm()).product();
        Some((a * a - 1.0 + 0.25 * sum) * prod_abs.powf(-0.25))
    } else {
        None
    };
    ScalarStats {
        sigma: inst.sigma,
        delta: inst.delta,
        big_r: inst.big_r.clone(),
        phi_stat,
    }
}

/// Sorted-distance bounds: `2 rho_1 sin(pi/n) <= r_k <= 1 + a`.
pub fn bound_1_2_check(inst: &SendovInstance) -> CheckResult {
    let lower = 2.0 * inst.rho[0] * (std::f64::consts::PI / inst.n as f64).sin();
    let upper = 1.0 + inst.a;
    let mut worst = 0.0_f64;
    for &rk in &inst.r {
        worst = worst.max(violation(lower, rk)).max(violation(rk, upper));
    }
    CheckResult::evaluated(
        "eq_1_2_bounds",
        worst <= CHECK_TOL,
        worst,
        format!("lower {lower:.6e}, upper {upper:.6e}, r1 {:.6e}", inst.r[0]),
    )
}

/// The unconditional identities tied to the instance.
pub fn identity_suite(inst: &SendovInstance) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let a = inst.a;
    let av = C64::new(a, 0.0);
    let n = inst.n as f64;
    let one = C64::new(1.0, 0.0);

    // prod (a - z_k) = n prod (a - zeta_j)
    let pz: C64 = inst.zeros.iter().map(|z| av - z).product();
    let pc: C64 = inst.criticals.iter().map(|z| av - z).product();
    out.push(CheckResult::evaluated(
        "lemma_3_2_product_complex",
        hybrid_residual_c(pz, pc * n) <= 1e-8,
        hybrid_residual_c(pz, pc * n),
        format!("lhs {pz}, rhs {}", pc * n),
    ));

    // prod r_k = n prod rho_j
    let pr = inst.prod_r();
    let prho = inst.prod_rho();
    out.push(CheckResult::evaluated(
        "lemma_3_2_product_abs",
        hybrid_residual(pr, n * prho) <= 1e-8,
        hybrid_residual(pr, n * prho),
        format!("prod r {pr:.12e}, n prod rho {:.12e}", n * prho),
    ));

    // sum 1/(a - zeta_j) = sum 2/(a - z_k)
    if inst.rho[0] > 0.0 {
        let s1: C64 = inst.criticals.iter().map(|z| one / (av - z)).sum();
        let s2: C64 = inst
            .zeros
            .iter()
            .map(|z| C64::new(2.0, 0.0) / (av - z))
            .sum();
        out.push(CheckResult::evaluated(
            "lemma_3_2_reciprocal_sum",
            hybrid_residual_c(s1, s2) <= 1e-8,
            hybrid_residual_c(s1, s2),
            format!("lhs {s1}, rhs {s2}"),
        ));
    } else {
        out.push(CheckResult::vacuous(
            "lemma_3_2_reciprocal_sum",
            "a critical point coincides with a",
        ));
    }

    // Re(1/(a-w)) = 1/(2a) - (|w|^2 - a^2) / (2a |a-w|^2), w over zeros and criticals
    if a != 0.0 {
        let mut worst = 0.0_f64;
        for &wv in inst.zeros.iter().chain(inst.criticals.iter()) {
            let dist2 = (av - wv).norm_sqr();
            if dist2 == 0.0 {
                continue;
            }
            let lhs = (one / (av - wv)).re;
            let rhs = 1.0 / (2.0 * a) - (wv.norm_sqr() - a * a) / (2.0 * a * dist2);
            worst = worst.max(hybrid_residual(lhs, rhs));
        }
        out.push(CheckResult::evaluated(
            "lemma_3_2_re_reciprocal",
            worst <= 1e-8,
            worst,
            "max residual over zeros and criticals",
        ));
    } else {
        out.push(CheckResult::vacuous("lemma_3_2_re_reciprocal", "a = 0"));
    }

    // (1/n)(a + sum z_k) = (1/(n-1)) sum zeta_j
    let mean_z = (av + inst.zeros.iter().sum::<C64>()) / n;
    let mean_c = inst.criticals.iter().sum::<C64>() / (n - 1.0);
    out.push(CheckResult::evaluated(
        "lemma_3_2_mean",
        hybrid_residual_c(mean_z, mean_c) <= 1e-8,
        hybrid_residual_c(mean_z, mean_c),
        format!("lhs {mean_z}, rhs {mean_c}"),
    ));

    // the remaining identities are printed for degree 9
    let n9 = inst.n == 9;

    // sum (|z_k|^2 - a^2)/r_k^2 = 8 + a sum cos(t_j)/rho_j
    if n9 && a != 0.0 && inst.rho[0] > 0.0 {
        let lhs: f64 = inst
            .zeros
            .iter()
            .map(|z| (z.norm_sqr() - a * a) / (av - z).norm_sqr())
            .sum();
        // cos(t_j)/rho_j with zeta_j = a + rho_j e^{i t_j}
        let rhs = 8.0
            + a * inst
                .criticals
                .iter()
                .map(|c| {
                    let d = c - av;
                    d.re / d.norm_sqr()
                })
                .sum::<f64>();
        out.push(CheckResult::evaluated(
            "lemma_3_9_sum_identity",
            hybrid_residual(lhs, rhs) <= 1e-8,
            hybrid_residual(lhs, rhs),
            format!("lhs {lhs:.12e}, rhs {rhs:.12e}"),
        ));
    } else {
        out.push(CheckResult::vacuous(
            "lemma_3_9_sum_identity",
            "needs n = 9, a != 0, criticals distinct from a",
        ));
    }

    // sum (a^2 - |zeta_j|^2)/rho_j^2 = 8 + 2 sum (a^2 - |z_k|^2)/r_k^2
    if n9 && inst.rho[0] > 0.0 {
        let lhs: f64 = inst
            .criticals
            .iter()
            .map(|c| (a * a - c.norm_sqr()) / (av - c).norm_sqr())
            .sum();
        let rhs = 8.0
            + 2.0
                * inst
                    .zeros
                    .iter()
                    .map(|z| (a * a - z.norm_sqr()) / (av - z).norm_sqr())
                    .sum::<f64>();
        out.push(CheckResult::evaluated(
            "lemma_3_11_sum_identity",
            hybrid_residual(lhs, rhs) <= 1e-8,
            hybrid_residual(lhs, rhs),
            format!("lhs {lhs:.12e}, rhs {rhs:.12e}"),
        ));
    } else {
        out.push(CheckResult::vacuous(
            "lemma_3_11_sum_identity",
            "needs n = 9 and criticals distinct from a",
        ));
    }

    // 9 prod |zeta_j| = (a prod |z_k|) |1/a + sum 1/z_k|
    if n9 && a != 0.0 && inst.zeros.iter().all(|z| z.norm() > 0.0) {
        let lhs = 9.0 * inst.criticals.iter().map(|c| c.norm()).product::<f64>();
        let sum: C64 = inst.zeros.iter().map(|z| z.inv()).sum();
        let rhs = a
            * inst.zeros.iter().map(|z| z.norm()).product::<f64>()
            * (C64::new(1.0 / a, 0.0) + sum).norm();
        out.push(CheckResult::evaluated(
            "derivative_at_zero_product",
            hybrid_residual(lhs, rhs) <= 1e-8,
            hybrid_residual(lhs, rhs),
            format!("lhs {lhs:.12e}, rhs {rhs:.12e}"),
        ));
    } else {
        out.push(CheckResult::vacuous(
            "derivative_at_zero_product",
            "needs n = 9 and nonzero a, z_k",
        ));
    }

    // Delta = (1-a^2)/a + (9/8) Re sum zeta_j + sum (1-|z_k|^2)/|z_k| cos(theta_k)
    if n9 {
        if let Some(delta) = inst.delta {
            let re_sum: f64 = inst.criticals.iter().map(|c| c.re).sum();
            let tail: f64 = inst
                .zeros
                .iter()
                .map(|z| (1.0 - z.norm_sqr()) / z.norm() * (z.re / z.norm()))
                .sum();
            let rhs = (1.0 - a * a) / a + 9.0 / 8.0 * re_sum + tail;
            out.push(CheckResult::evaluated(
                "eq_3_3_delta",
                hybrid_residual(delta, rhs) <= 1e-8,
                hybrid_residual(delta, rhs),
                format!("delta {delta:.12e}, rhs {rhs:.12e}"),
            ));
            return out;
        }
    }
    out.push(CheckResult::vacuous(
        "eq_3_3_delta",
        "delta undefined (a = 0 or some z_k = 0) or n != 9",
    ));
    out
}

/// `prod |gamma_j| <= prod |w_k| / (9 - 4a^2/(1+a^2) - 6a)`.
pub fn gamma_product_check(inst: &SendovInstance) -> CheckResult {
    const ID: &str = "eq_3_1_gamma_product";
    if inst.n != 9 {
        return CheckResult::vacuous(ID, "needs n = 9");
    }
    let a = inst.a;
    let denom = 9.0 - 4.0 * a * a / (1.0 + a * a) - 6.0 * a;
    if denom <= 0.0 {
        return CheckResult::vacuous(ID, format!("nonpositive denominator {denom:.6e}"));
    }
    let finite = inst
        .gamma
        .iter()
        .chain(inst.w.iter())
        .all(|g| g.re.is_finite() && g.im.is_finite());
    if !finite {
        return CheckResult::vacuous(ID, "Moebius image degenerates (a zeta = 1)");
    }
    let lhs: f64 = inst.gamma.iter().map(|g| g.norm()).product();
    let rhs = inst.w.iter().map(|g| g.norm()).product::<f64>() / denom;
    let v = violation(lhs, rhs);
    CheckResult::evaluated(
        ID,
        v <= GAMMA_TOL,
        v,
        format!("lhs {lhs:.12e}, rhs {rhs:.12e}, denom {denom:.6e}"),
    )
}

/// Condition (3.6): `sup_x (x^2-1)/((1-x^(1/4))(a+x)^2) + (1-a^2)(sigma-4) <= 0`,
/// evaluated by dense sampling on [0.4, 1) plus the x -> 1 limit.
fn condition_3_6_holds(a: f64, sigma: f64) -> bool {
    let shift = (1.0 - a * a) * (sigma - 4.0);
    let limit = -8.0 / ((1.0 + a) * (1.0 + a));
    if limit + shift > 0.0 {
        return false;
    }
    let grid = 512;
    for i in 0..grid {
        let x = 0.4 + 0.6 * i as f64 / grid as f64;
        let f = (x * x - 1.0) / ((1.0 - x.powf(0.25)) * (a + x) * (a + x));
        if f + shift > 0.0 {
            return false;
        }
    }
    true
}

/// The hypothesis-gated lemma checks. Gates use strict comparisons with no
/// tolerance slack; a held hypothesis with a failed conclusion is
/// conjecture-critical and must be escalated by the caller.
pub fn gated_lemma_checks(inst: &SendovInstance) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if inst.n != 9 {
        for id in [
            "lemma_3_4_gamma0",
            "lemma_3_5_contrapositive",
            "lemma_3_6_mobius_bound",
            "lemma_3_9_delta_bound",
            "lemma_3_11_product_bound",
            "lemma_3_12_sigma_bound",
            "lemma_3_12_phi_bound",
            "lemma_3_13_bigr_sum",
            "eq_3_11_sigma_upper",
        ] {
            out.push(CheckResult::vacuous(id, "needs n = 9"));
        }
        return out;
    }

    let a = inst.a;
    let sin_pi_9 = (std::f64::consts::PI / 9.0).sin();
    let rho1 = inst.rho[0];
    let p0_abs = inst.poly.evaluate(C64::new(0.0, 0.0)).norm();
    let lam = 1.0 - (1.0 - p0_abs).max(0.0).powf(1.0 / 9.0);

    // Lemma 3.4: gated on rho_1 > 1 and the Theorem 1 lambda window
    {
        const ID: &str = "lemma_3_4_gamma0";
        let window = lam <= sin_pi_9 && lam < a && a > 0.0 && a < 1.0;
        if rho1 > 1.0 && window {
            let re_bound = 0.5 * (a - lam * (lam + 2.0) / a);
            let gamma_bound = 1.0 / (1.0 + lam * (lam + 2.0) - a * a * lam * (lam + 2.0)).sqrt();
            let witness = inst
                .criticals
                .iter()
                .zip(&inst.gamma)
                .filter(|(c, _)| c.re >= re_bound - CHECK_TOL)
                .map(|(_, g)| g.norm())
                .fold(f64::NEG_INFINITY, f64::max);
            let pass = witness > gamma_bound - CHECK_TOL;
            out.push(CheckResult::evaluated(
                ID,
                pass,
                violation(gamma_bound, witness.max(0.0)),
                format!("bound {gamma_bound:.9e}, best |gamma| {witness:.9e}"),
            ));
        } else {
            out.push(CheckResult::vacuous(
                ID,
                format!("rho1 {rho1:.6}, lambda {lam:.6}"),
            ));
        }
    }

    // Lemma 3.5 contrapositive (ungated): |gamma_j| <= 1/(1+a-a^2) implies
    // rho_j <= 1. A scattered critical cluster is only located to its
    // nearest-neighbor gap, so the conclusion gets that much slack.
    {
        let bound = 1.0 / (1.0 + a - a * a);
        let mut worst = 0.0_f64;
        let mut slop_used = 0.0_f64;
        for (j, (c, g)) in inst.criticals.iter().zip(&inst.gamma).enumerate() {
            let rho_j = (c - C64::new(a, 0.0)).norm();
            if g.norm() <= bound + CHECK_TOL {
                let gap = inst
                    .criticals
                    .iter()
                    .enumerate()
                    .filter(|(l, _)| *l != j)
                    .map(|(_, d)| (c - d).norm())
                    .fold(f64::INFINITY, f64::min);
                let slop = if gap > 1e-9 && gap < 0.08 {
                    2.0 * gap
                } else {
                    0.0
                };
                slop_used = slop_used.max(slop);
                worst = worst.max(violation(rho_j, 1.0 + slop));
            }
        }
        out.push(CheckResult::evaluated(
            "lemma_3_5_contrapositive",
            worst <= CHECK_TOL,
            worst,
            format!(
                "threshold {bound:.9e}{}",
                if slop_used > 0.0 {
                    format!(", cluster slop {slop_used:.2e}")
                } else {
                    String::new()
                }
            ),
        ));
    }

    // Lemma 3.6 (ungated), R = 1: |w| <= (|z|+a)/(a|z|+1) <= (R+a)/(aR+1)
    {
        let r_cap = 1.0;
        let cap = (r_cap + a) / (a * r_cap + 1.0);
        let mut worst = 0.0_f64;
        for (z, wv) in inst.zeros.iter().zip(&inst.w) {
            let mid = (z.norm() + a) / (a * z.norm() + 1.0);
            worst = worst
                .max(violation(wv.norm(), mid))
                .max(violation(mid, cap));
        }
        out.push(CheckResult::evaluated(
            "lemma_3_6_mobius_bound",
            worst <= CHECK_TOL,
            worst,
            "chain checked per zero with R = 1",
        ));
    }

    // Lemma 3.9: Delta <= -8/a + 8a + (9/(8a))(1-a^2) sigma
    {
        const ID: &str = "lemma_3_9_delta_bound";
        let in_range = (0.5195..=1.0).contains(&a)
            && inst.zeros.iter().all(|z| (0.4..=1.0).contains(&z.norm()));
        match (rho1 > 1.0 && in_range, inst.delta) {
            (true, Some(delta)) => {
                let rhs = -8.0 / a + 8.0 * a + 9.0 / (8.0 * a) * (1.0 - a * a) * inst.sigma;
                out.push(CheckResult::evaluated(
                    ID,
                    violation(delta, rhs) <= CHECK_TOL,
                    violation(delta, rhs),
                    format!("delta {delta:.9e}, rhs {rhs:.9e}"),
                ));
            }
            _ => out.push(CheckResult::vacuous(
                ID,
                "needs rho1 > 1, a in [0.5195, 1], |z_k| in [0.4, 1], delta defined",
            )),
        }
    }

    // Lemma 3.11: prod |zeta_j| <= (prod rho_j)(a^2 - 1 + (1/4) sum (|z_k|^2-a^2)/r_k^2)^4
    {
        const ID: &str = "lemma_3_11_product_bound";
        if rho1 >= 1.0 {
            let lhs: f64 = inst.criticals.iter().map(|c| c.norm()).product();
            let base = a * a - 1.0
                + 0.25
                    * inst
                        .zeros
                        .iter()
                        .map(|z| (z.norm_sqr() - a * a) / (C64::new(a, 0.0) - z).norm_sqr())
                        .sum::<f64>();
            let rhs = inst.prod_rho() * base.powi(4);
            out.push(CheckResult::evaluated(
                ID,
                violation(lhs, rhs) <= CHECK_TOL,
                violation(lhs, rhs),
                format!("lhs {lhs:.9e}, rhs {rhs:.9e}"),
            ));
        } else {
            out.push(CheckResult::vacuous(ID, "needs rho1 >= 1"));
        }
    }

    // Lemma 3.12: 4^4 (8 - (9/8) sigma)(1-a^2)^{-3} <= (sigma-4)^4 9 prod rho_j
    let cond36 = inst.sigma > 4.0 && condition_3_6_holds(a, inst.sigma);
    {
        const ID: &str = "lemma_3_12_sigma_bound";
        if inst.sigma > 4.0 && rho1 > 1.0 && cond36 {
            let lhs = 256.0 * (8.0 - 9.0 / 8.0 * inst.sigma) * (1.0 - a * a).powi(-3);
            let rhs = (inst.sigma - 4.0).powi(4) * 9.0 * inst.prod_rho();
            out.push(CheckResult::evaluated(
                ID,
                violation(lhs, rhs) <= CHECK_TOL,
                violation(lhs, rhs),
                format!("lhs {lhs:.9e}, rhs {rhs:.9e}"),
            ));
        } else {
            out.push(CheckResult::vacuous(
                ID,
                "needs sigma > 4, rho1 > 1, condition (3.6)",
            ));
        }
    }

    // Phi bound from the same proof: Phi <= (1/4)(1-a^2)(sigma-4)
    {
        const ID: &str = "lemma_3_12_phi_bound";
        let stats = scalar_stats(inst);
        match (inst.sigma > 4.0 && rho1 > 1.0 && cond36, stats.phi_stat) {
            (true, Some(phi)) => {
                let rhs = 0.25 * (1.0 - a * a) * (inst.sigma - 4.0);
                out.push(CheckResult::evaluated(
                    ID,
                    violation(phi, rhs) <= CHECK_TOL,
                    violation(phi, rhs),
                    format!("phi {phi:.9e}, rhs {rhs:.9e}"),
                ));
            }
            _ => out.push(CheckResult::vacuous(
                ID,
                "needs sigma > 4, rho1 > 1, condition (3.6), nonzero z_k",
            )),
        }
    }

    // Lemma 3.13: sum 1/R_k^2 <= U*(a)
    {
        const ID: &str = "lemma_3_13_bigr_sum";
        if rho1 > 1.0 {
            let lhs: f64 = inst.big_r.iter().map(|rk| 1.0 / (rk * rk)).sum();
            let rhs = u_star_bound(a, v_star_case(a));
            out.push(CheckResult::evaluated(
                ID,
                violation(lhs, rhs) <= CHECK_TOL,
                violation(lhs, rhs),
                format!("lhs {lhs:.9e}, U* {rhs:.9e}"),
            ));
        } else {
            out.push(CheckResult::vacuous(ID, "needs rho1 > 1"));
        }
    }

    // sigma <= U(a)
    {
        const ID: &str = "eq_3_11_sigma_upper";
        if rho1 > 1.0 {
            let rhs = u_bound(a, v_case(a));
            out.push(CheckResult::evaluated(
                ID,
                violation(inst.sigma, rhs) <= CHECK_TOL,
                violation(inst.sigma, rhs),
                format!("sigma {:.9e}, U {rhs:.9e}", inst.sigma),
            ));
        } else {
            out.push(CheckResult::vacuous(ID, "needs rho1 > 1"));
        }
    }

    out
}

/// Convex hull (monotone chain) of a point set; result is counterclockwise.
/// Collinear point sets come back with fewer than 3 vertices.
fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn dist_to_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let (wx, wy) = (p.0 - a.0, p.1 - a.1);
    let len2 = vx * vx + vy * vy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((wx * vx + wy * vy) / len2).clamp(0.0, 1.0)
    };
    let (dx, dy) = (p.0 - (a.0 + t * vx), p.1 - (a.1 + t * vy));
    (dx * dx + dy * dy).sqrt()
}

/// Every critical point lies in the convex hull of `{a} ∪ zeros`, with the
/// hull inflated by 1e-9.
pub fn gauss_lucas_check(inst: &SendovInstance) -> CheckResult {
    const ID: &str = "gauss_lucas_hull";
    let mut pts: Vec<(f64, f64)> = vec![(inst.a, 0.0)];
    pts.extend(inst.zeros.iter().map(|z| (z.re, z.im)));
    let hull = convex_hull(&pts);

    let mut worst = 0.0_f64;
    for c in &inst.criticals {
        let p = (c.re, c.im);
        let outside = if hull.len() < 3 {
            // degenerate hull: a point or a segment
            match hull.len() {
                0 => f64::INFINITY,
                1 => dist_to_segment(p, hull[0], hull[0]),
                _ => dist_to_segment(p, hull[0], hull[1]),
            }
        } else {
            let mut max_out = 0.0_f64;
            for i in 0..hull.len() {
                let a = hull[i];
                let b = hull[(i + 1) % hull.len()];
                let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
                let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
                if len > 0.0 {
                    max_out = max_out.max(-cross / len);
                }
            }
            max_out
        };
        worst = worst.max(outside);
    }
    CheckResult::evaluated(
        ID,
        worst <= CHECK_TOL,
        worst,
        format!(
            "hull size {}, max signed exit distance {worst:.3e}",
            hull.len()
        ),
    )
}

/// Grace–Heawood variant: if `p(u) = p(v)`, each closed half-plane bounded by
/// the perpendicular bisector of `[u, v]` contains a critical point.
pub fn grace_heawood_check(p: &Polynomial, u: C64, v: C64) -> Result<CheckResult> {
    const ID: &str = "grace_heawood_bisector";
    if u == v {
        return Err(Error::invalid("u and v must differ"));
    }
    let scale = p.residual_scale(u).max(p.residual_scale(v)).max(1e-300);
    if (p.evaluate(u) - p.evaluate(v)).norm() > 1e-9 * scale {
        return Err(Error::invalid(
            "p(u) != p(v): equal-value hypothesis violated",
        ));
    }
    let criticals = p.derivative().find_roots(1e-10)?.roots;
    let mut side_u = false;
    let mut side_v = false;
    let mut margin_u = f64::INFINITY;
    let mut margin_v = f64::INFINITY;
    for &c in &criticals {
        let du = (c - u).norm();
        let dv = (c - v).norm();
        if du <= dv + CHECK_TOL {
            side_u = true;
        }
        if dv <= du + CHECK_TOL {
            side_v = true;
        }
        margin_u = margin_u.min(du - dv);
        margin_v = margin_v.min(dv - du);
    }
    let pass = side_u && side_v;
    Ok(CheckResult::evaluated(
        ID,
        pass,
        if pass { 0.0 } else { margin_u.max(margin_v) },
        format!(
            "{} criticals, margins {margin_u:.3e} / {margin_v:.3e}",
            criticals.len()
        ),
    ))
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    a: f64,
    zeros: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    criticals: Option<Vec<[f64; 2]>>,
}

impl Serialize for SendovInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceJson {
            n: self.n,
            a: self.a,
            zeros: self.zeros.iter().map(|z| [z.re, z.im]).collect(),
            criticals: Some(self.criticals.iter().map(|z| [z.re, z.im]).collect()),
        }
        .serialize(s)
    }
}

impl SendovInstance {
    /// Parses the instance JSON format; criticals are recomputed from the
    /// zeros regardless of whether the input carries them, and (when
    /// carried) cross-checked against the recomputed set.
    pub fn from_json(text: &str) -> Result<SendovInstance> {
        let parsed: InstanceJson = serde_json::from_str(text)?;
        let zeros: Vec<C64> = parsed
            .zeros
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        if parsed.n != zeros.len() + 1 {
            return Err(Error::invalid(format!(
                "declared n = {} but {} zeros given",
                parsed.n,
                zeros.len()
            )));
        }
        let inst = build_instance(parsed.a, &zeros)?;
        if let Some(raw) = parsed.criticals {
            let given: Vec<C64> = raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            if given.len() == inst.criticals.len()
                && pairing_distance(&given, &inst.criticals) > 1e-6
            {
                return Err(Error::invalid(
                    "supplied criticals disagree with the recomputed ones",
                ));
            }
        }
        Ok(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn roots_of_unity_instance() -> SendovInstance {
        let zeros: Vec<C64> = (1..9)
            .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 9.0))
            .collect();
        build_instance(1.0, &zeros).unwrap()
    }

    fn golden_instance() -> SendovInstance {
        build_instance(0.5, &[c(-0.5, 0.0); 8]).unwrap()
    }

    #[test]
    fn roots_of_unity_criticals_near_origin() {
        // ideal criticals are an 8-fold zero at the origin; the f64
        // expansion splits it into a ring of radius ~eps^(1/8)
        let inst = roots_of_unity_instance();
        for z in inst.criticals() {
            assert!(z.norm() <= 0.02, "critical {z} too far from 0");
        }
        for &rho in inst.rho() {
            assert!((rho - 1.0).abs() <= 0.02);
        }
        let (i_a, i_p) = i_measure(&inst);
        assert!((i_a - 1.0).abs() <= 0.02);
        assert!((i_p - 1.0).abs() <= 0.02);
        // sigma is computed from the zeros alone and is exact
        assert!((inst.sigma() - 20.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn roots_of_unity_big_r() {
        let inst = roots_of_unity_instance();
        let scale = 9.0_f64.powf(-1.0 / 8.0);
        let mut expect: Vec<f64> = (1..9)
            .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / 9.0).sin() * scale)
            .collect();
        expect.sort_by(f64::total_cmp);
        for (got, want) in inst.big_r().iter().zip(&expect) {
            assert!((got - want).abs() <= 1e-12);
        }
        let prod: f64 = inst.big_r().iter().product();
        assert!((prod - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn golden_instance_hand_values() {
        let inst = golden_instance();
        let mut expected = vec![c(7.0 / 18.0, 0.0)];
        expected.extend(std::iter::repeat_n(c(-0.5, 0.0), 7));
        assert!(crate::poly::pairing_distance(inst.criticals(), &expected) <= 1e-12);
        assert!((inst.rho()[0] - 1.0 / 9.0).abs() <= 1e-15);
        assert!((inst.prod_r() - 1.0).abs() <= 1e-15);
        assert!((9.0 * inst.prod_rho() - 1.0).abs() <= 1e-12);
        let (i_a, _) = i_measure(&inst);
        assert!((i_a - 1.0 / 9.0).abs() <= 1e-15);
    }

    #[test]
    fn build_rejects_bad_inputs() {
        assert!(build_instance(0.5, &[c(1.5, 0.0)]).is_err()); // outside disk
        assert!(build_instance(1.5, &[c(0.1, 0.0)]).is_err()); // a outside
        assert!(build_instance(0.5, &[c(0.5, 0.0)]).is_err()); // zero == a
        assert!(build_instance(0.5, &[c(0.1, 0.0); 12]).is_err()); // n = 13
    }

    #[test]
    fn bound_1_2_roots_of_unity() {
        let inst = roots_of_unity_instance();
        let res = bound_1_2_check(&inst);
        assert!(res.pass, "{}", res.detail);
        // lower end: r_1 = 2 sin(pi/9) and rho_1 ~ 1
        let s = 2.0 * (std::f64::consts::PI / 9.0).sin();
        assert!((inst.r()[0] - s).abs() <= 1e-14);
        // upper end: r_max = 2 sin(4 pi/9) < 2 = 1 + a
        let rmax = 2.0 * (4.0 * std::f64::consts::PI / 9.0).sin();
        assert!((inst.r()[7] - rmax).abs() <= 1e-14);
        assert!(inst.r()[7] <= 1.0 + inst.a());
    }

    #[test]
    fn identity_suite_roots_of_unity() {
        let inst = roots_of_unity_instance();
        for res in identity_suite(&inst) {
            assert!(res.pass, "{}: {}", res.check_id, res.detail);
            if res.check_id.starts_with("lemma_3_2_product") {
                assert!(res.residual <= 1e-12, "{}: {}", res.check_id, res.residual);
            }
        }
        // delta = Re(1/a + sum 1/z_k) = 1 - 1 = 0
        assert!(inst.delta().unwrap().abs() <= 1e-13);
    }

    #[test]
    fn identity_suite_residuals_on_golden() {
        for res in identity_suite(&golden_instance()) {
            assert!(res.hypothesis_held, "{}", res.check_id);
            assert!(res.residual <= 1e-10, "{}: {}", res.check_id, res.residual);
        }
    }

    #[test]
    fn gamma_product_boundary_and_center() {
        // a = 1: both sides are exactly 1 (Moebius fixes everything at 1)
        let res = gamma_product_check(&roots_of_unity_instance());
        assert!(res.hypothesis_held && res.pass, "{}", res.detail);

        // a = 0: reduces to the product identity prod|zeta| = prod|z|/9
        let zeros: Vec<C64> = (0..8)
            .map(|k| C64::from_polar(0.3 + 0.07 * k as f64, 1.1 * k as f64 + 0.4))
            .collect();
        let inst0 = build_instance(0.0, &zeros).unwrap();
        let res0 = gamma_product_check(&inst0);
        assert!(res0.hypothesis_held && res0.pass, "{}", res0.detail);
        assert!(res0.residual <= 1e-10);
    }

    #[test]
    fn gamma_product_hand_values_on_golden() {
        let inst = golden_instance();
        let lhs: f64 = inst.gamma().iter().map(|g| g.norm()).product();
        let rhs: f64 = inst.w().iter().map(|w| w.norm()).product::<f64>() / 5.2;
        assert!((lhs - 0.8_f64.powi(7) * 4.0 / 29.0).abs() <= 1e-12);
        assert!((rhs - 0.8_f64.powi(8) / 5.2).abs() <= 1e-12);
        assert!(lhs <= rhs);
    }

    #[test]
    fn gated_checks_vacuous_or_pass_on_disk_instances() {
        for inst in [roots_of_unity_instance(), golden_instance()] {
            for res in gated_lemma_checks(&inst) {
                assert!(!res.is_alarm(), "{}: {}", res.check_id, res.detail);
            }
        }
        // rho1 < 1 on both, so the far-critical gates must be vacuous
        let inst = golden_instance();
        let ids: Vec<(String, bool)> = gated_lemma_checks(&inst)
            .into_iter()
            .map(|r| (r.check_id, r.hypothesis_held))
            .collect();
        for (id, held) in &ids {
            if id == "lemma_3_13_bigr_sum" || id == "eq_3_11_sigma_upper" {
                assert!(!held, "{id} should gate on rho1 > 1");
            }
        }
    }

    #[test]
    fn gauss_lucas_collinear_and_polygon() {
        let res = gauss_lucas_check(&golden_instance());
        assert!(res.pass, "{}", res.detail); // degenerate segment hull
        let res2 = gauss_lucas_check(&roots_of_unity_instance());
        assert!(res2.pass, "{}", res2.detail); // regular 9-gon hull
    }

    #[test]
    fn grace_heawood_examples() {
        // p = z^2: critical 0 sits on the bisector of [1, -1]
        let p = Polynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let res = grace_heawood_check(&p, c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert!(res.pass, "{}", res.detail);

        // z^9 - 1 at two ninth roots of unity: criticals near 0 lie on or
        // beside every such bisector
        let mut coeffs = vec![c(-1.0, 0.0)];
        coeffs.extend(std::iter::repeat_n(c(0.0, 0.0), 8));
        coeffs.push(c(1.0, 0.0));
        let p9 = Polynomial::new(coeffs).unwrap();
        let u = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 9.0);
        let v = C64::from_polar(1.0, 8.0 * std::f64::consts::PI / 9.0);
        let res9 = grace_heawood_check(&p9, u, v).unwrap();
        assert!(res9.pass, "{}", res9.detail);

        // violated hypothesis is an error
        assert!(grace_heawood_check(&p9, c(0.1, 0.0), c(0.2, 0.0)).is_err());
        assert!(grace_heawood_check(&p9, u, u).is_err());
    }

    #[test]
    fn scalar_stats_fields() {
        let inst = roots_of_unity_instance();
        let stats = scalar_stats(&inst);
        assert!((stats.sigma - 20.0 / 3.0).abs() <= 1e-12);
        assert!(stats.delta.unwrap().abs() <= 1e-13);
        assert!(stats.phi_stat.is_some());
        let prod: f64 = stats.big_r.iter().product();
        assert!((prod - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = golden_instance();
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.contains("\"criticals\""));
        let back = SendovInstance::from_json(&text).unwrap();
        assert_eq!(back.zeros(), inst.zeros());
        assert_eq!(back.a(), inst.a());

        // criticals optional on input
        let no_crit = r#"{"n": 9, "a": 0.5, "zeros": [[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0]]}"#;
        let built = SendovInstance::from_json(no_crit).unwrap();
        assert_eq!(built.criticals().len(), 8);

        // inconsistent criticals are rejected
        let bad = r#"{"n": 2, "a": 0.5, "zeros": [[-0.5,0]], "criticals": [[0.9,0]]}"#;
        assert!(SendovInstance::from_json(bad).is_err());
    }

    #[test]
    fn vacuous_results_are_flagged() {
        let res = CheckResult::vacuous("anything", "gate closed");
        assert!(!res.hypothesis_held);
        assert!(res.pass);
        assert!(!res.is_alarm());
        assert!(res.detail.starts_with("vacuous"));
    }
}
