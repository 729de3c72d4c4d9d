//! Closed-interval arithmetic with outward rounding.
//!
//! Operations evaluate in hardware `f64` and then widen the result by one
//! ulp in each direction (two for `atan`, whose libm implementation is not
//! guaranteed correctly rounded).  The result of every operation therefore
//! encloses the exact real result of the same operation applied to any
//! members of the operands.
//!
//! Two conventions keep composite formulas total:
//!
//! * division by an interval containing zero returns the whole real line;
//! * [`Interval::sqrt`] clamps the negative part of its operand to zero,
//!   matching the `max(0).sqrt()` idiom of the floating-point formulas it
//!   mirrors.  Callers that need "the operand is negative" as information
//!   must test the operand, not the root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A closed interval `[lo, hi]`, possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Next `f64` below `x`, sending NaN to `-inf`.
#[inline]
fn step_down(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x.next_down()
    }
}

/// Next `f64` above `x`, sending NaN to `+inf`.
#[inline]
fn step_up(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x.next_up()
    }
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Interval with the given endpoints.  Panics in debug builds if
    /// `lo > hi` or either endpoint is NaN.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval containing exactly `x`.
    #[inline]
    pub fn point(x: f64) -> Interval {
        debug_assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    /// Enclosure of π.
    pub fn pi() -> Interval {
        Interval::new(std::f64::consts::PI, std::f64::consts::PI.next_up())
    }

    /// Enclosure of π/2.
    pub fn half_pi() -> Interval {
        Interval::new(
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2.next_up(),
        )
    }

    /// Enclosure of 2π.
    pub fn two_pi() -> Interval {
        let p = 2.0 * std::f64::consts::PI;
        Interval::new(p, p.next_up())
    }

    /// Enclosure of √2.
    pub fn sqrt2() -> Interval {
        Interval::point(2.0).sqrt()
    }

    /// Enclosure of √8.
    pub fn sqrt8() -> Interval {
        Interval::point(8.0).sqrt()
    }

    #[inline]
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// Midpoint, clamped to a finite value for unbounded intervals.
    #[inline]
    pub fn midpoint(self) -> f64 {
        if self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY {
            return 0.0;
        }
        if self.lo == f64::NEG_INFINITY {
            return self.hi - 1.0;
        }
        if self.hi == f64::INFINITY {
            return self.lo + 1.0;
        }
        0.5 * (self.lo + self.hi)
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Smallest interval containing both operands.
    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Exact negation.
    #[inline]
    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    /// Exact absolute value.
    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    /// Pointwise minimum; exact.
    #[inline]
    pub fn min_i(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// Pointwise maximum; exact.
    #[inline]
    pub fn max_i(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Enclosure of x² that is tighter than `self * self` when the operand
    /// straddles zero.
    pub fn square(self) -> Interval {
        if self.lo >= 0.0 {
            Interval::new(step_down(self.lo * self.lo).max(0.0), step_up(self.hi * self.hi))
        } else if self.hi <= 0.0 {
            Interval::new(step_down(self.hi * self.hi).max(0.0), step_up(self.lo * self.lo))
        } else {
            let m = (-self.lo).max(self.hi);
            Interval::new(0.0, step_up(m * m))
        }
    }

    /// Enclosure of x³.
    pub fn cube(self) -> Interval {
        self.square() * self
    }

    /// Clamped square root: the negative part of the operand is treated as
    /// zero, so the result encloses `sqrt(max(x, 0))`.
    pub fn sqrt(self) -> Interval {
        if self.hi <= 0.0 {
            return Interval::ZERO;
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            step_down(self.lo.sqrt()).max(0.0)
        };
        let hi = step_up(self.hi.sqrt());
        Interval::new(lo, hi)
    }

    /// Enclosure of atan, widened two ulps per endpoint.  Infinite
    /// endpoints map to the corresponding bound of ±π/2.
    pub fn atan(self) -> Interval {
        let lo = if self.lo == f64::NEG_INFINITY {
            -std::f64::consts::FRAC_PI_2.next_up()
        } else {
            step_down(step_down(self.lo.atan()))
        };
        let hi = if self.hi == f64::INFINITY {
            std::f64::consts::FRAC_PI_2.next_up()
        } else {
            step_up(step_up(self.hi.atan()))
        };
        Interval::new(lo, hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Interval {
        Interval::point(x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval::new(step_down(self.lo + rhs.lo), step_up(self.hi + rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval::new(step_down(self.lo - rhs.hi), step_up(self.hi - rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        if p.iter().any(|v| v.is_nan()) {
            return Interval::ENTIRE;
        }
        let mut lo = p[0];
        let mut hi = p[0];
        for &v in &p[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Interval::new(step_down(lo), step_up(hi))
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Interval::ENTIRE;
        }
        let q = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        if q.iter().any(|v| v.is_nan()) {
            return Interval::ENTIRE;
        }
        let mut lo = q[0];
        let mut hi = q[0];
        for &v in &q[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Interval::new(step_down(lo), step_up(hi))
    }
}

macro_rules! scalar_ops {
    ($($op:ident :: $method:ident),*) => {$(
        impl $op<f64> for Interval {
            type Output = Interval;
            #[inline]
            fn $method(self, rhs: f64) -> Interval {
                $op::$method(self, Interval::point(rhs))
            }
        }
        impl $op<Interval> for f64 {
            type Output = Interval;
            #[inline]
            fn $method(self, rhs: Interval) -> Interval {
                $op::$method(Interval::point(self), rhs)
            }
        }
    )*};
}
scalar_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_interval(rng: &mut ChaCha8Rng) -> (Interval, f64) {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let w: f64 = rng.gen_range(0.0..2.0);
        let x = rng.gen_range(a..=(a + w).max(a + f64::EPSILON));
        (Interval::new(a, a + w), x.clamp(a, a + w))
    }

    #[test]
    fn arithmetic_encloses_member_results() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20_000 {
            let (ia, a) = rand_interval(&mut rng);
            let (ib, b) = rand_interval(&mut rng);
            assert!((ia + ib).contains(a + b));
            assert!((ia - ib).contains(a - b));
            assert!((ia * ib).contains(a * b));
            let q = (ia / ib).contains(a / b) || (ib.lo <= 0.0 && ib.hi >= 0.0);
            assert!(q, "{ia} / {ib} missed {}", a / b);
            assert!(ia.square().contains(a * a));
            assert!(ia.cube().contains(a * a * a));
            assert!(ia.abs().contains(a.abs()));
            assert!(ia.atan().contains(a.atan()));
            if a >= 0.0 {
                assert!(ia.sqrt().contains(a.sqrt()));
            }
        }
    }

    #[test]
    fn division_by_zero_straddling_interval_is_entire() {
        let a = Interval::new(1.0, 2.0);
        assert_eq!(a / Interval::new(-1.0, 1.0), Interval::ENTIRE);
        assert_eq!(a / Interval::ZERO, Interval::ENTIRE);
        assert!((a / Interval::new(0.5, 1.0)).contains(2.0));
    }

    #[test]
    fn sqrt_clamps_negative_operands() {
        assert_eq!(Interval::new(-2.0, -1.0).sqrt(), Interval::ZERO);
        let s = Interval::new(-1.0, 4.0).sqrt();
        assert_eq!(s.lo, 0.0);
        assert!(s.contains(2.0));
    }

    #[test]
    fn atan_caps_infinite_operands() {
        let a = Interval::ENTIRE.atan();
        assert!(a.lo < -std::f64::consts::FRAC_PI_2 + 1e-12);
        assert!(a.hi > std::f64::consts::FRAC_PI_2 - 1e-12);
        assert!(a.is_finite());
    }

    #[test]
    fn squared_straddling_interval_starts_at_zero() {
        let s = Interval::new(-2.0, 3.0).square();
        assert_eq!(s.lo, 0.0);
        assert!(s.contains(9.0));
        assert!(s.hi < 9.1);
    }

    #[test]
    fn constants_are_tight_enclosures() {
        assert!(Interval::pi().contains(std::f64::consts::PI));
        assert!(Interval::pi().width() < 1e-15);
        assert!(Interval::sqrt2().contains(std::f64::consts::SQRT_2));
        assert!(Interval::sqrt8().contains(2.0 * std::f64::consts::SQRT_2));
        assert!(Interval::sqrt8().width() < 1e-14);
        assert!(Interval::two_pi().contains(2.0 * std::f64::consts::PI));
    }

    #[test]
    fn hull_and_intersect_behave_as_lattice_operations() {
        let a = Interval::new(0.0, 2.0);
        let b = Interval::new(1.0, 3.0);
        assert_eq!(a.hull(b), Interval::new(0.0, 3.0));
        assert_eq!(a.intersect(b), Some(Interval::new(1.0, 2.0)));
        assert_eq!(a.intersect(Interval::new(5.0, 6.0)), None);
    }

    #[test]
    fn infinities_propagate_conservatively() {
        let inf = Interval::new(0.0, f64::INFINITY);
        assert_eq!((inf - inf).hi, f64::INFINITY);
        assert_eq!((inf - inf).lo, f64::NEG_INFINITY);
        assert_eq!(inf * Interval::ZERO, Interval::ENTIRE);
        assert!((Interval::point(1.0) + inf).hi.is_infinite());
    }
}
