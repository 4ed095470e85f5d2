//! Complex polynomial arithmetic and a simultaneous root finder.
//!
//! Coefficients are stored in ascending degree order. The root finder is an
//! Aberth–Ehrlich simultaneous iteration with Newton polishing, sized for
//! degrees up to ~64 but tuned for the desk-scale degrees (≤ 12) used
//! throughout this crate.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Fixed angular offset for the initial root guesses, so that no guess starts
/// on a symmetry axis of the polynomial.
const INITIAL_ANGLE_OFFSET: f64 = 0.39;

/// Iteration cap for the simultaneous iteration.
const MAX_ITERATIONS: usize = 500;

/// Default scaled-residual tolerance.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    /// Ascending degree order; the zero polynomial is stored as `[0]`.
    coeffs: Vec<C64>,
}

#[derive(Clone, Debug)]
pub struct RootFindResult {
    pub roots: Vec<C64>,
    /// Scaled residual `|p(root)| / sum_k |c_k| |root|^k` per root.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming exact
    /// trailing zeros. Rejects non-finite coefficients.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::invalid("polynomial coefficients must be finite"));
        }
        Ok(Self::from_raw(coeffs))
    }

    fn from_raw(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial {
            coeffs: vec![C64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::from_raw(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == C64::new(0.0, 0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn leading(&self) -> C64 {
        *self.coeffs.last().expect("nonempty by construction")
    }

    /// Monic product of `(z - root)` over the given roots, times `lead`,
    /// expanded by sequential convolution with each linear factor.
    pub fn from_roots(roots: &[C64], lead: C64) -> Result<Self> {
        if lead == C64::new(0.0, 0.0) {
            return Err(Error::invalid("leading coefficient must be nonzero"));
        }
        if !lead.re.is_finite()
            || !lead.im.is_finite()
            || roots.iter().any(|r| !r.re.is_finite() || !r.im.is_finite())
        {
            return Err(Error::invalid("roots and lead must be finite"));
        }
        let mut coeffs = vec![lead];
        for &r in roots {
            coeffs.push(C64::new(0.0, 0.0));
            for k in (0..coeffs.len() - 1).rev() {
                let c = coeffs[k];
                coeffs[k + 1] += c;
                coeffs[k] = -r * c;
            }
        }
        Ok(Self::from_raw(coeffs))
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `sum_k |c_k| |z|^k`, the backward-error scale used for residuals.
    pub fn residual_scale(&self, z: C64) -> f64 {
        let az = z.norm();
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * az + c.norm();
        }
        acc
    }

    /// Scaled residual `|p(z)| / residual_scale(z)`; zero when both vanish.
    pub fn scaled_residual(&self, z: C64) -> f64 {
        let val = self.evaluate(z).norm();
        let scale = self.residual_scale(z);
        if scale == 0.0 {
            if val == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            val / scale
        }
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self::from_raw(coeffs)
    }

    /// The antiderivative `P` with `P' = self` and `P(at) = 0`.
    pub fn antiderivative_zero_at(&self, at: C64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid(
                "antiderivative of the zero polynomial is not determined by a zero condition",
            ));
        }
        let mut coeffs = vec![C64::new(0.0, 0.0)];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k as f64 + 1.0)),
        );
        let mut p = Self::from_raw(coeffs);
        let shift = p.evaluate(at);
        p.coeffs[0] -= shift;
        Ok(p)
    }

    /// Coefficients of `z ↦ self(scale·z + shift)`.
    pub fn compose_affine(&self, scale: C64, shift: C64) -> Self {
        let mut acc = vec![C64::new(0.0, 0.0); self.coeffs.len()];
        acc[0] = *self.coeffs.last().unwrap();
        for (len, &c) in (1..).zip(self.coeffs.iter().rev().skip(1)) {
            // acc = acc * (scale z + shift) + c
            for k in (0..len).rev() {
                let v = acc[k];
                acc[k + 1] += v * scale;
                acc[k] = v * shift;
            }
            acc[0] += c;
        }
        Self::from_raw(acc)
    }

    pub fn sub_constant(&self, c: C64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= c;
        Self::from_raw(coeffs)
    }

    /// Aberth–Ehrlich simultaneous iteration with Newton polishing.
    ///
    /// Initial guesses sit on the circle of the Cauchy coefficient bound,
    /// rotated by a fixed offset. Success requires every scaled residual to
    /// come in below `tol`; otherwise an explicit non-convergence error is
    /// returned.
    pub fn find_roots(&self, tol: f64) -> Result<RootFindResult> {
        self.find_roots_seeded(tol, None)
    }

    /// Same as [`find_roots`](Self::find_roots), but warm-started from caller
    /// guesses when their count matches the deflated degree.
    pub fn find_roots_seeded(&self, tol: f64, guesses: Option<&[C64]>) -> Result<RootFindResult> {
        if self.is_zero() || self.degree() < 1 {
            return Err(Error::invalid("root finding needs degree >= 1"));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::invalid("tolerance must be positive"));
        }

        // Exact zero roots deflate away so that the scaled residual is
        // meaningful on what remains (a pure monomial never meets a relative
        // residual tolerance away from the origin).
        let zero = C64::new(0.0, 0.0);
        let mut origin_roots = 0;
        while origin_roots < self.degree() && self.coeffs[origin_roots] == zero {
            origin_roots += 1;
        }
        let deflated: Vec<C64> = self.coeffs[origin_roots..].to_vec();
        let deg = deflated.len() - 1;

        let mut roots = vec![zero; origin_roots];
        let mut iterations = 0;

        if deg == 1 {
            roots.push(-deflated[0] / deflated[1]);
        } else if deg >= 2 {
            let q = Polynomial::from_raw(deflated);
            let dq = q.derivative();
            let lead = q.leading();
            let radius = 1.0
                + q.coeffs[..q.degree()]
                    .iter()
                    .map(|c| (c / lead).norm())
                    .fold(0.0, f64::max);

            // warm guesses must be finite and pairwise distinct, or the
            // repulsion terms degenerate
            let usable_guesses = guesses.filter(|g| {
                g.len() == deg
                    && g.iter().all(|z| z.re.is_finite() && z.im.is_finite())
                    && g.iter()
                        .enumerate()
                        .all(|(i, a)| g[i + 1..].iter().all(|b| (a - b).norm() > 1e-13))
            });
            let mut zs: Vec<C64> = match usable_guesses {
                Some(g) => g.to_vec(),
                None => (0..deg)
                    .map(|j| {
                        let theta = 2.0 * std::f64::consts::PI * j as f64 / deg as f64
                            + INITIAL_ANGLE_OFFSET;
                        C64::from_polar(radius, theta)
                    })
                    .collect(),
            };

            for iter in 1..=MAX_ITERATIONS {
                iterations = iter;
                let mut max_step = 0.0_f64;
                for j in 0..deg {
                    let zj = zs[j];
                    let pv = q.evaluate(zj);
                    let dv = dq.evaluate(zj);
                    if pv == zero {
                        continue;
                    }
                    let w = if dv == zero {
                        // stationary point: nudge off it
                        C64::new(1e-12 * (1.0 + zj.norm()), 0.0)
                    } else {
                        pv / dv
                    };
                    let mut repulsion = zero;
                    for (k, &zk) in zs.iter().enumerate() {
                        if k != j {
                            let d = zj - zk;
                            if d != zero {
                                repulsion += C64::new(1.0, 0.0) / d;
                            }
                        }
                    }
                    let denom = C64::new(1.0, 0.0) - w * repulsion;
                    let step = if denom.norm() < 1e-300 { w } else { w / denom };
                    zs[j] = zj - step;
                    if !zs[j].re.is_finite() || !zs[j].im.is_finite() {
                        // deterministic reset onto the start circle
                        let theta = 2.0 * std::f64::consts::PI * j as f64 / deg as f64
                            + INITIAL_ANGLE_OFFSET;
                        zs[j] = C64::from_polar(radius, theta);
                        max_step = f64::INFINITY;
                        continue;
                    }
                    max_step = max_step.max(step.norm() / (1.0 + zs[j].norm()));
                }
                if max_step < 1e-15 {
                    break;
                }
                if zs.iter().all(|&z| q.scaled_residual(z) <= tol) {
                    break;
                }
            }

            // Newton polishing, kept only while it reduces the residual.
            for z in &mut zs {
                let mut best = *z;
                let mut best_res = q.scaled_residual(best);
                let mut cur = best;
                for _ in 0..5 {
                    let dv = dq.evaluate(cur);
                    if dv == zero {
                        break;
                    }
                    cur -= q.evaluate(cur) / dv;
                    let res = q.scaled_residual(cur);
                    if res < best_res {
                        best_res = res;
                        best = cur;
                    } else {
                        break;
                    }
                }
                *z = best;
            }
            roots.extend(zs);
        }

        self.collapse_clusters(&mut roots, tol);

        let residuals: Vec<f64> = roots.iter().map(|&z| self.scaled_residual(z)).collect();
        // NaN residuals must fail, so do not reduce with f64::max (it drops NaN)
        if !residuals.iter().all(|r| *r <= tol) {
            let worst =
                residuals
                    .iter()
                    .cloned()
                    .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) });
            return Err(Error::NonConvergence {
                iterations,
                worst_residual: worst,
            });
        }
        Ok(RootFindResult {
            roots,
            residuals,
            iterations,
        })
    }
}

impl Polynomial {
    /// An m-fold root is only located to ~eps^(1/m) by point iterations, and
    /// the scattered cluster need not respect the symmetric functions of the
    /// polynomial. Collapsing replaces each cluster with m copies of a
    /// center refined by Newton on the (m-1)-th derivative, where the root
    /// is simple and quadratic convergence reaches machine precision. The
    /// collapse is kept only when re-expanding the full root set reproduces
    /// the coefficients; spuriously merged distinct roots fail that gate.
    fn collapse_clusters(&self, roots: &mut [C64], tol: f64) {
        let deg = roots.len();
        if deg < 2 {
            return;
        }
        let near = |a: C64, b: C64| (a - b).norm() <= 0.08 * (1.0 + a.norm().min(b.norm()));

        // transitive grouping
        let mut group = vec![usize::MAX; deg];
        let mut n_groups = 0;
        for i in 0..deg {
            if group[i] != usize::MAX {
                continue;
            }
            let id = n_groups;
            n_groups += 1;
            group[i] = id;
            let mut frontier = vec![i];
            while let Some(j) = frontier.pop() {
                for k in 0..deg {
                    if group[k] == usize::MAX && near(roots[j], roots[k]) {
                        group[k] = id;
                        frontier.push(k);
                    }
                }
            }
        }

        let mut candidate = roots.to_vec();
        let mut any = false;
        for id in 0..n_groups {
            let members: Vec<usize> = (0..deg).filter(|&k| group[k] == id).collect();
            let m = members.len();
            if m < 2 {
                continue;
            }
            let mut diameter = 0.0_f64;
            for &a in &members {
                for &b in &members {
                    diameter = diameter.max((roots[a] - roots[b]).norm());
                }
            }
            if diameter == 0.0 {
                continue; // already exact (e.g. deflated origin roots)
            }
            let mut center = members.iter().map(|&k| roots[k]).sum::<C64>() / m as f64;
            let mut d = self.clone();
            for _ in 0..m - 1 {
                d = d.derivative();
            }
            if d.degree() < 1 {
                continue;
            }
            let dd = d.derivative();
            let mut ok = false;
            for _ in 0..60 {
                let dv = dd.evaluate(center);
                if dv == C64::new(0.0, 0.0) {
                    break;
                }
                let step = d.evaluate(center) / dv;
                center -= step;
                if !center.re.is_finite() || !center.im.is_finite() {
                    break;
                }
                if step.norm() <= 1e-16 * (1.0 + center.norm()) {
                    ok = true;
                    break;
                }
            }
            let start = members.iter().map(|&k| roots[k]).sum::<C64>() / m as f64;
            if !ok || (center - start).norm() > 4.0 * diameter + 1e-9 {
                continue;
            }
            // the collapsed point must still be a residual-valid root of
            // *this* polynomial (an origin cluster with a tiny nonzero
            // constant term genuinely has no root at its center)
            if self.scaled_residual(center) > tol {
                continue;
            }
            for &k in &members {
                candidate[k] = center;
            }
            any = true;
        }
        if !any {
            return;
        }

        // accept only if the collapsed multiset reproduces the coefficients
        let expanded = match Polynomial::from_roots(&candidate, self.leading()) {
            Ok(p) => p,
            Err(_) => return,
        };
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let matches = expanded.coeffs.len() == self.coeffs.len()
            && expanded
                .coeffs
                .iter()
                .zip(&self.coeffs)
                .all(|(a, b)| (a - b).norm() <= 3e-10 * scale);
        if matches {
            roots.copy_from_slice(&candidate);
        }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            coeffs: Vec<[f64; 2]>,
            #[serde(skip)]
            _marker: std::marker::PhantomData<&'a ()>,
        }
        let coeffs = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        Repr {
            coeffs,
            _marker: std::marker::PhantomData,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coeffs: Vec<[f64; 2]>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|[re, im]| C64::new(re, im))
            .collect();
        Polynomial::new(coeffs).map_err(D::Error::custom)
    }
}

/// Greedy multiset pairing distance between two root sets of equal length.
/// Each left root is matched to its nearest unused right root; returns the
/// largest matched distance.
pub fn pairing_distance(left: &[C64], right: &[C64]) -> f64 {
    assert_eq!(left.len(), right.len());
    let mut used = vec![false; right.len()];
    let mut worst = 0.0_f64;
    for &l in left {
        let mut best = f64::INFINITY;
        let mut best_k = usize::MAX;
        for (k, &r) in right.iter().enumerate() {
            if !used[k] {
                let d = (l - r).norm();
                if d < best {
                    best = d;
                    best_k = k;
                }
            }
        }
        used[best_k] = true;
        worst = worst.max(best);
    }
    worst
}
