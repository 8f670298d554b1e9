//! Closed `f64` intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side. IEEE-754 basic
//! operations are correctly rounded, so the widened interval always contains the
//! exact real result. This is all the certified comparisons in the crate rely on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        let x = n as f64;
        if x as i64 == n && x.abs() < 9.0e15 {
            Interval::point(x)
        } else {
            Interval {
                lo: down(x),
                hi: up(x),
            }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Widen symmetrically by `r >= 0`.
    pub fn inflate(&self, r: f64) -> Interval {
        Interval {
            lo: down(self.lo - r),
            hi: up(self.hi + r),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Interval {
                lo: -self.hi,
                hi: -self.lo,
            }
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: down(a.lo * a.lo).max(0.0),
            hi: up(a.hi * a.hi),
        }
    }

    pub fn sqrt(&self) -> Interval {
        let lo = self.lo.max(0.0);
        Interval {
            lo: down(lo.sqrt()).max(0.0),
            hi: up(self.hi.max(0.0).sqrt()),
        }
    }

    /// Division; `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &Interval) -> Option<Interval> {
        if rhs.contains(0.0) {
            return None;
        }
        let c = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        Some(Interval {
            lo: down(min4(c)),
            hi: up(max4(c)),
        })
    }

    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// Certainly strictly greater than `other`.
    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }
}

fn min4(c: [f64; 4]) -> f64 {
    c.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max4(c: [f64; 4]) -> f64 {
    c.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo + rhs.lo),
            hi: up(self.hi + rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo - rhs.hi),
            hi: up(self.hi - rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Interval {
            lo: down(min4(c)),
            hi: up(max4(c)),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

/// Rectangular enclosure of a complex number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexInterval {
            re,
            im: Interval::point(0.0),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ComplexInterval::real(Interval::from_int(n))
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re,
            im: -self.im,
        }
    }

    /// Enclosure of `|z|`.
    pub fn modulus(&self) -> Interval {
        (self.re.sqr() + self.im.sqr()).sqrt()
    }

    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn scale(&self, k: Interval) -> Self {
        ComplexInterval {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn checked_div(&self, rhs: &ComplexInterval) -> Option<ComplexInterval> {
        let d = rhs.norm_sqr();
        let num = *self * rhs.conj();
        Some(ComplexInterval {
            re: num.re.checked_div(&d)?,
            im: num.im.checked_div(&d)?,
        })
    }

    pub fn powi(&self, n: u32) -> ComplexInterval {
        let mut acc = ComplexInterval::from_int(1);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn overlaps(&self, other: &ComplexInterval) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_is_enclosed() {
        let third = Interval::point(1.0)
            .checked_div(&Interval::point(3.0))
            .unwrap();
        assert!(third.lo() < third.hi());
        let back = third * Interval::point(3.0);
        assert!(back.contains(1.0));
    }

    #[test]
    fn abs_straddling_zero() {
        let a = Interval::new(-2.0, 1.0).abs();
        assert_eq!(a.lo(), 0.0);
        assert_eq!(a.hi(), 2.0);
    }

    #[test]
    fn division_by_zero_interval_is_refused() {
        assert!(Interval::point(1.0)
            .checked_div(&Interval::new(-1.0, 1.0))
            .is_none());
    }

    #[test]
    fn complex_modulus_of_three_four() {
        let z = ComplexInterval::new(Interval::point(3.0), Interval::point(4.0));
        assert!(z.modulus().contains(5.0));
        assert!(z.modulus().width() < 1e-14);
    }

    #[test]
    fn sqrt_two_squared() {
        let s = Interval::point(2.0).sqrt();
        assert!(s.sqr().contains(2.0));
    }
}
