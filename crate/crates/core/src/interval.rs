//! Outward-rounded interval arithmetic.
//!
//! Every elementary operation widens its result by a relative
//! epsilon-inflation (plus a tiny absolute floor) instead of toggling
//! hardware rounding modes. The claims certified with this arithmetic have
//! margins orders of magnitude above the inflation, so the portable scheme
//! is sufficient.
//!
//! Domain violations (division by an interval containing zero, `sqrt`/`ln`
//! touching negative reals) poison the result with NaN endpoints; the
//! poisoned value propagates through subsequent operations and is reported
//! as a domain error at the API boundary.

use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative inflation per elementary operation: 4 machine epsilons.
const REL_INFLATION: f64 = 4.0 * f64::EPSILON;
/// Absolute inflation floor, covering subnormal rounding.
const ABS_INFLATION: f64 = 1e-300;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const INVALID: Interval = Interval {
        lo: f64::NAN,
        hi: f64::NAN,
    };

    /// Exact interval; panics on `lo > hi` or non-finite endpoints.
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(
            lo.is_finite() && hi.is_finite() && lo <= hi,
            "malformed interval [{lo}, {hi}]"
        );
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_valid(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(self, x: f64) -> bool {
        self.is_valid() && self.lo <= x && x <= self.hi
    }

    pub fn split(self) -> (Interval, Interval) {
        let m = self.midpoint();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    /// Outward widening applied after every elementary operation.
    fn inflate(self) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        let lo = self.lo - REL_INFLATION * self.lo.abs() - ABS_INFLATION;
        let hi = self.hi + REL_INFLATION * self.hi.abs() + ABS_INFLATION;
        if lo.is_finite() && hi.is_finite() {
            Interval { lo, hi }
        } else {
            Interval::INVALID
        }
    }

    pub fn sqrt(self) -> Interval {
        if !self.is_valid() || self.lo < 0.0 {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo.sqrt(),
            hi: self.hi.sqrt(),
        }
        .inflate()
    }

    pub fn ln(self) -> Interval {
        if !self.is_valid() || self.lo <= 0.0 {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo.ln(),
            hi: self.hi.ln(),
        }
        .inflate()
    }

    pub fn exp(self) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo.exp(),
            hi: self.hi.exp(),
        }
        .inflate()
    }

    pub fn sin(self) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        if self.width() >= 2.0 * std::f64::consts::PI {
            return Interval::new(-1.0, 1.0);
        }
        let v_lo = self.lo.sin();
        let v_hi = self.hi.sin();
        let mut lo = v_lo.min(v_hi);
        let mut hi = v_lo.max(v_hi);
        // interior extrema at pi/2 + k*pi
        let half_pi = std::f64::consts::FRAC_PI_2;
        let pi = std::f64::consts::PI;
        let k_min = ((self.lo - half_pi) / pi).ceil() as i64;
        let k_max = ((self.hi - half_pi) / pi).floor() as i64;
        for k in k_min..=k_max {
            if k & 1 == 0 {
                hi = 1.0;
            } else {
                lo = -1.0;
            }
        }
        Interval { lo, hi }.inflate().intersect_unit_sym()
    }

    fn intersect_unit_sym(self) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo.max(-1.0),
            hi: self.hi.min(1.0),
        }
    }

    /// Integer power with even-power tightening.
    pub fn powi(self, k: i32) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        if k == 0 {
            return Interval::point(1.0);
        }
        if k < 0 {
            return Interval::point(1.0) / self.powi(-k);
        }
        if k % 2 == 0 && self.lo < 0.0 && self.hi > 0.0 {
            let m = self.lo.abs().max(self.hi.abs());
            return Interval {
                lo: 0.0,
                hi: m.powi(k),
            }
            .inflate();
        }
        let a = self.lo.powi(k);
        let b = self.hi.powi(k);
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
        .inflate()
    }

    /// Rational power `x^(num/den)` via `exp((num/den)·ln x)` on strictly
    /// positive intervals.
    pub fn pow_ratio(self, num: i32, den: i32) -> Interval {
        assert!(den > 0, "pow_ratio denominator must be positive");
        let e = Interval::point(num as f64) / Interval::point(den as f64);
        (self.ln() * e).exp()
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        if !self.is_valid() || !other.is_valid() {
            return None;
        }
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(self, other: Interval) -> Interval {
        if !self.is_valid() || !other.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if !self.is_valid() || !rhs.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
        .inflate()
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        if !self.is_valid() || !rhs.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
        .inflate()
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if !self.is_valid() || !rhs.is_valid() {
            return Interval::INVALID;
        }
        let cands = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Interval {
            lo: cands.iter().cloned().fold(f64::INFINITY, f64::min),
            hi: cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
        .inflate()
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        if !self.is_valid() || !rhs.is_valid() || (rhs.lo <= 0.0 && rhs.hi >= 0.0) {
            return Interval::INVALID;
        }
        let cands = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        Interval {
            lo: cands.iter().cloned().fold(f64::INFINITY, f64::min),
            hi: cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
        .inflate()
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        if !self.is_valid() {
            return Interval::INVALID;
        }
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

/// Axis-aligned box: named variables mapped to intervals. The map is ordered
/// so splitting and serialization are deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DomainBox {
    vars: BTreeMap<String, [f64; 2]>,
}

impl DomainBox {
    pub fn new() -> DomainBox {
        DomainBox {
            vars: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, lo: f64, hi: f64) -> DomainBox {
        self.vars.insert(name.to_string(), [lo, hi]);
        self
    }

    pub fn get(&self, name: &str) -> Result<Interval> {
        self.vars
            .get(name)
            .map(|&[lo, hi]| Interval::new(lo, hi))
            .ok_or_else(|| Error::invalid(format!("box is missing variable `{name}`")))
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.keys().map(|s| s.as_str())
    }

    /// Widest variable, ties broken by name order.
    pub fn widest(&self) -> Option<&str> {
        self.vars
            .iter()
            .max_by(|(an, a), (bn, b)| {
                let wa = a[1] - a[0];
                let wb = b[1] - b[0];
                wa.partial_cmp(&wb).unwrap().then_with(|| bn.cmp(an)) // earlier name wins ties
            })
            .map(|(n, _)| n.as_str())
    }

    pub fn split_widest(&self) -> (DomainBox, DomainBox) {
        let name = self
            .widest()
            .expect("cannot split an empty box")
            .to_string();
        let [lo, hi] = self.vars[&name];
        let mid = 0.5 * (lo + hi);
        let mut left = self.clone();
        let mut right = self.clone();
        left.vars.insert(name.clone(), [lo, mid]);
        right.vars.insert(name, [mid, hi]);
        (left, right)
    }

    pub fn max_width(&self) -> f64 {
        self.vars.values().map(|v| v[1] - v[0]).fold(0.0, f64::max)
    }

    /// Degenerate box at the midpoint of every variable.
    pub fn midpoint_box(&self) -> DomainBox {
        let vars = self
            .vars
            .iter()
            .map(|(n, &[lo, hi])| {
                let m = 0.5 * (lo + hi);
                (n.clone(), [m, m])
            })
            .collect();
        DomainBox { vars }
    }

    pub fn midpoint_values(&self) -> BTreeMap<String, f64> {
        self.vars
            .iter()
            .map(|(n, &[lo, hi])| (n.clone(), 0.5 * (lo + hi)))
            .collect()
    }
}

impl Default for DomainBox {
    fn default() -> Self {
        Self::new()
    }
}

/// Arithmetic shared by `f64` (plain evaluation) and [`Interval`]
/// (enclosure evaluation), so each claim function is written once.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn powi(self, k: i32) -> Self;
    fn pow_ratio(self, num: i32, den: i32) -> Self;
}

impl Scalar for f64 {
    fn constant(c: f64) -> f64 {
        c
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn sin(self) -> f64 {
        f64::sin(self)
    }
    fn powi(self, k: i32) -> f64 {
        f64::powi(self, k)
    }
    fn pow_ratio(self, num: i32, den: i32) -> f64 {
        (self.ln() * num as f64 / den as f64).exp()
    }
}

impl Scalar for Interval {
    fn constant(c: f64) -> Interval {
        Interval::point(c)
    }
    fn sqrt(self) -> Interval {
        Interval::sqrt(self)
    }
    fn ln(self) -> Interval {
        Interval::ln(self)
    }
    fn exp(self) -> Interval {
        Interval::exp(self)
    }
    fn sin(self) -> Interval {
        Interval::sin(self)
    }
    fn powi(self, k: i32) -> Interval {
        Interval::powi(self, k)
    }
    fn pow_ratio(self, num: i32, den: i32) -> Interval {
        Interval::pow_ratio(self, num, den)
    }
}
