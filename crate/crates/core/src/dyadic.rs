//! Arbitrary-precision dyadic enclosures of the roots and exact signs of
//! elements of Z[β] at the dominant root.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;

/// Largest working precision in bits.
pub(crate) const MAX_PRECISION: u32 = 4096;
/// Precision of the first attempt when a sign is needed.
pub(crate) const START_PRECISION: u32 = 64;

/// The closed interval `[lo, hi] · 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dyadic {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << p as usize
}

fn floor_shift(x: &BigInt, p: u32) -> BigInt {
    x.div_floor(&pow2(p))
}

fn ceil_shift(x: &BigInt, p: u32) -> BigInt {
    -(-x).div_floor(&pow2(p))
}

impl Dyadic {
    pub fn exact_int(n: &BigInt, prec: u32) -> Self {
        let v = n << prec as usize;
        Dyadic {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        debug_assert_eq!(self.prec, o.prec);
        Dyadic {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        debug_assert_eq!(self.prec, o.prec);
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mn = c.iter().min().unwrap();
        let mx = c.iter().max().unwrap();
        Dyadic {
            lo: floor_shift(mn, self.prec),
            hi: ceil_shift(mx, self.prec),
            prec: self.prec,
        }
    }

    #[cfg(test)]
    pub fn scale_int(&self, k: &BigInt) -> Dyadic {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Dyadic {
                lo: a,
                hi: b,
                prec: self.prec,
            }
        } else {
            Dyadic {
                lo: b,
                hi: a,
                prec: self.prec,
            }
        }
    }

    /// Rounds outward to a coarser precision.
    pub fn coarsen(&self, prec: u32) -> Dyadic {
        assert!(prec <= self.prec);
        let d = self.prec - prec;
        Dyadic {
            lo: floor_shift(&self.lo, d),
            hi: ceil_shift(&self.hi, d),
            prec,
        }
    }

    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Outward-rounded `f64` enclosure.
    pub fn to_interval(&self) -> Interval {
        let scale = |x: &BigInt| -> f64 {
            // Keep 80 significant bits before converting.
            let bits = x.bits();
            if bits > 80 {
                let sh = (bits - 80) as u32;
                let m = (x >> sh as usize).to_f64().unwrap();
                m * 2f64.powi(sh as i32 - self.prec as i32)
            } else {
                x.to_f64().unwrap() * 2f64.powi(-(self.prec as i32))
            }
        };
        let lo = scale(&self.lo).next_down().next_down();
        let hi = scale(&self.hi).next_up().next_up();
        Interval::new(lo, hi)
    }
}

/// Sign of `m⁴ − m³2^p − m²2^{2p} − m2^{3p} − 2^{4p}`, i.e. of P(m/2^p).
fn poly_sign(m: &BigInt, p: u32) -> Ordering {
    let s = pow2(p);
    // Horner: (((m − s)m − s²)m − s³)m − s⁴
    let mut acc = m - &s;
    let mut sk = s.clone();
    for _ in 0..3 {
        sk = &sk * &s;
        acc = acc * m - &sk;
    }
    acc.sign_cmp()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Bisection on integer numerators: `lo` and `hi` bracket a sign change of P.
fn bisect(mut lo: BigInt, mut hi: BigInt, p: u32) -> Dyadic {
    let s_lo = poly_sign(&lo, p);
    debug_assert_ne!(s_lo, poly_sign(&hi, p));
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        let s = poly_sign(&mid, p);
        if s == Ordering::Equal {
            return Dyadic {
                lo: mid.clone(),
                hi: mid,
                prec: p,
            };
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Dyadic { lo, hi, prec: p }
}

fn isqrt_floor(x: &BigInt) -> BigInt {
    if x.is_negative() {
        BigInt::zero()
    } else {
        x.sqrt()
    }
}

fn isqrt_ceil(x: &BigInt) -> BigInt {
    let s = isqrt_floor(x);
    if &(&s * &s) < x {
        s + 1
    } else {
        s
    }
}

/// Enclosures of β₁, β₂ and of the real and imaginary parts of β₃.
#[derive(Clone, Debug)]
pub(crate) struct RootEnclosures {
    pub b1: Dyadic,
    pub b2: Dyadic,
    pub b3_re: Dyadic,
    pub b3_im: Dyadic,
}

fn compute_enclosures(p: u32) -> RootEnclosures {
    let s = pow2(p);
    let b1 = bisect(s.clone(), &s * 2, p);
    let b2 = bisect(-s.clone(), BigInt::zero(), p);
    // Re β₃ = (1 − β₁ − β₂)/2, computed at one extra bit so halving is exact.
    let one = Dyadic::exact_int(&BigInt::one(), p);
    let sum = one.sub(&b1).sub(&b2);
    let re = Dyadic {
        lo: sum.lo.clone(),
        hi: sum.hi.clone(),
        prec: p + 1,
    }
    .coarsen(p);
    // |β₃|² = −1/(β₁β₂); the product β₁β₂ is negative.
    let prod = b1.mul(&b2).neg();
    let s3 = pow2(3 * p);
    let m_lo = s3.div_floor(&prod.hi);
    let m_hi = -(-&s3).div_floor(&prod.lo);
    let modsq = Dyadic {
        lo: m_lo,
        hi: m_hi,
        prec: 2 * p,
    }
    .coarsen(p);
    let im2 = modsq.sub(&re.mul(&re));
    let im = Dyadic {
        lo: isqrt_floor(&(&im2.lo << p as usize)),
        hi: isqrt_ceil(&(&im2.hi << p as usize)),
        prec: p,
    };
    RootEnclosures {
        b1,
        b2,
        b3_re: re,
        b3_im: im,
    }
}

/// Precisions with cached enclosures: 64, 128, …, [`MAX_PRECISION`].
const LEVELS: usize = 7;

fn levels() -> &'static [RootEnclosures; LEVELS] {
    static CACHE: OnceLock<[RootEnclosures; LEVELS]> = OnceLock::new();
    CACHE.get_or_init(|| {
        let top = compute_enclosures(MAX_PRECISION + 64);
        std::array::from_fn(|j| {
            let prec = START_PRECISION << j;
            RootEnclosures {
                b1: top.b1.coarsen(prec),
                b2: top.b2.coarsen(prec),
                b3_re: top.b3_re.coarsen(prec),
                b3_im: top.b3_im.coarsen(prec),
            }
        })
    })
}

/// Root enclosures at `prec` bits; `prec` must be 64·2^j with 64 ≤ prec ≤ [`MAX_PRECISION`].
pub(crate) fn enclosures(prec: u32) -> &'static RootEnclosures {
    assert!(prec.is_power_of_two() && (START_PRECISION..=MAX_PRECISION).contains(&prec));
    &levels()[(prec / START_PRECISION).trailing_zeros() as usize]
}

/// Element of Z[β] with unbounded integer coordinates in the basis 1, β, β², β³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct BigZ {
    pub c: [BigInt; 4],
}

impl BigZ {
    pub fn from_int(n: BigInt) -> Self {
        BigZ {
            c: [n, BigInt::zero(), BigInt::zero(), BigInt::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn mul_beta(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        BigZ {
            c: [c3.clone(), c0 + c3, c1 + c3, c2 + c3],
        }
    }

    pub fn mul_beta_inv(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        BigZ {
            c: [c1 - c0, c2 - c0, c3 - c0, c0.clone()],
        }
    }

    pub fn mul_beta_pow(&self, k: i64) -> Self {
        let mut v = self.clone();
        for _ in 0..k.unsigned_abs() {
            v = if k > 0 {
                v.mul_beta()
            } else {
                v.mul_beta_inv()
            };
        }
        v
    }

    #[cfg(test)]
    pub fn add(&self, o: &BigZ) -> Self {
        BigZ {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }

    pub fn sub(&self, o: &BigZ) -> Self {
        BigZ {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }

    #[cfg(test)]
    pub fn scale(&self, k: &BigInt) -> Self {
        BigZ {
            c: std::array::from_fn(|i| &self.c[i] * k),
        }
    }

    /// Enclosure of the value at β₁.
    pub fn eval_beta1(&self, prec: u32) -> Dyadic {
        let b = &enclosures(prec).b1;
        let mut acc = Dyadic::exact_int(&self.c[3], prec);
        for k in (0..3).rev() {
            acc = acc.mul(b).add(&Dyadic::exact_int(&self.c[k], prec));
        }
        acc
    }

    /// Exact sign of the value at β₁; `None` only if [`MAX_PRECISION`] is
    /// not enough to separate a nonzero value from zero.
    pub fn sign_beta1(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        let mut prec = START_PRECISION;
        loop {
            if let Some(s) = self.eval_beta1(prec).sign() {
                return Some(s);
            }
            if prec >= MAX_PRECISION {
                return None;
            }
            prec = (prec * 2).min(MAX_PRECISION);
        }
    }
}
