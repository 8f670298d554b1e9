//! Exact arithmetic in Z[α] with α⁴ = 1 + α + α² + α³, and the embedding
//! z ↦ (z(β₂), z(β₃)) into ℝ×ℂ.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

use crate::dyadic;
use crate::interval::{ComplexInterval, Interval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("integer overflow in Z[alpha] arithmetic")]
    Overflow,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("precision must be positive and finite, got {0}")]
    InvalidPrecision(f64),
    #[error("requested precision {requested:e} is below the attainable {attainable:e}")]
    Unattainable { requested: f64, attainable: f64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnexeCodeError {
    #[error("state code {0:?} must be 7 binary digits with an optional leading 'm'")]
    Malformed(String),
    #[error("value {0} has no 7-digit code")]
    NoCode(ZAlpha),
}

/// Element c0 + c1·α + c2·α² + c3·α³ of Z[α].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ZAlpha {
    pub c: [i64; 4],
}

/// Alias following the naming of the coordinate representation.
pub type ZAlphaInt = ZAlpha;

fn ck(x: Option<i64>) -> Result<i64, ArithmeticError> {
    x.ok_or(ArithmeticError::Overflow)
}

impl ZAlpha {
    pub const ZERO: ZAlpha = ZAlpha { c: [0, 0, 0, 0] };
    pub const ONE: ZAlpha = ZAlpha { c: [1, 0, 0, 0] };

    pub const fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        ZAlpha {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn from_int(n: i64) -> Self {
        ZAlpha::new(n, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    fn checked_map(&self, f: impl Fn(usize) -> Option<i64>) -> Result<ZAlpha, ArithmeticError> {
        let mut c = [0; 4];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = ck(f(i))?;
        }
        Ok(ZAlpha { c })
    }

    pub fn try_add(&self, o: &ZAlpha) -> Result<ZAlpha, ArithmeticError> {
        self.checked_map(|i| self.c[i].checked_add(o.c[i]))
    }

    pub fn try_sub(&self, o: &ZAlpha) -> Result<ZAlpha, ArithmeticError> {
        self.checked_map(|i| self.c[i].checked_sub(o.c[i]))
    }

    pub fn try_neg(&self) -> Result<ZAlpha, ArithmeticError> {
        self.checked_map(|i| self.c[i].checked_neg())
    }

    pub fn try_scale(&self, k: i64) -> Result<ZAlpha, ArithmeticError> {
        self.checked_map(|i| self.c[i].checked_mul(k))
    }

    /// α·self: (c0,c1,c2,c3) ↦ (c3, c0+c3, c1+c3, c2+c3).
    pub fn try_mul_alpha(&self) -> Result<ZAlpha, ArithmeticError> {
        let [c0, c1, c2, c3] = self.c;
        Ok(ZAlpha::new(
            c3,
            ck(c0.checked_add(c3))?,
            ck(c1.checked_add(c3))?,
            ck(c2.checked_add(c3))?,
        ))
    }

    /// α⁻¹·self, using α⁻¹ = α³ − α² − α − 1.
    pub fn try_mul_alpha_inv(&self) -> Result<ZAlpha, ArithmeticError> {
        let [c0, c1, c2, c3] = self.c;
        Ok(ZAlpha::new(
            ck(c1.checked_sub(c0))?,
            ck(c2.checked_sub(c0))?,
            ck(c3.checked_sub(c0))?,
            c0,
        ))
    }

    pub fn try_mul_alpha_pow(&self, k: i64) -> Result<ZAlpha, ArithmeticError> {
        let mut v = *self;
        for _ in 0..k.unsigned_abs() {
            v = if k > 0 {
                v.try_mul_alpha()?
            } else {
                v.try_mul_alpha_inv()?
            };
        }
        Ok(v)
    }

    /// Full ring product.
    pub fn try_mul(&self, o: &ZAlpha) -> Result<ZAlpha, ArithmeticError> {
        let mut acc = ZAlpha::ZERO;
        let mut shifted = *o;
        for i in 0..4 {
            acc = acc.try_add(&shifted.try_scale(self.c[i])?)?;
            if i < 3 {
                shifted = shifted.try_mul_alpha()?;
            }
        }
        Ok(acc)
    }

    pub fn mul_alpha(&self) -> ZAlpha {
        self.try_mul_alpha().expect("overflow in mul_alpha")
    }

    pub fn mul_alpha_inv(&self) -> ZAlpha {
        self.try_mul_alpha_inv().expect("overflow in mul_alpha_inv")
    }

    pub fn mul_alpha_pow(&self, k: i64) -> ZAlpha {
        self.try_mul_alpha_pow(k)
            .expect("overflow in mul_alpha_pow")
    }

    /// α^k for any integer k.
    pub fn alpha_pow(k: i64) -> ZAlpha {
        ZAlpha::ONE.mul_alpha_pow(k)
    }

    /// Σ d_j α^{start+j}, digits listed from the lowest power up.
    pub fn from_digits(start: i64, digits: &[i64]) -> Result<ZAlpha, ArithmeticError> {
        let mut acc = ZAlpha::ZERO;
        for (j, &d) in digits.iter().enumerate() {
            if d != 0 {
                let p = ZAlpha::ONE.try_mul_alpha_pow(start + j as i64)?;
                acc = acc.try_add(&p.try_scale(d)?)?;
            }
        }
        Ok(acc)
    }

    pub fn max_abs_coeff(&self) -> i64 {
        self.c.iter().map(|x| x.saturating_abs()).max().unwrap()
    }
}

impl Add for ZAlpha {
    type Output = ZAlpha;
    fn add(self, o: ZAlpha) -> ZAlpha {
        self.try_add(&o).expect("overflow in ZAlpha addition")
    }
}

impl Sub for ZAlpha {
    type Output = ZAlpha;
    fn sub(self, o: ZAlpha) -> ZAlpha {
        self.try_sub(&o).expect("overflow in ZAlpha subtraction")
    }
}

impl Neg for ZAlpha {
    type Output = ZAlpha;
    fn neg(self) -> ZAlpha {
        self.try_neg().expect("overflow in ZAlpha negation")
    }
}

impl Mul for ZAlpha {
    type Output = ZAlpha;
    fn mul(self, o: ZAlpha) -> ZAlpha {
        self.try_mul(&o).expect("overflow in ZAlpha product")
    }
}

impl fmt::Display for ZAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

/// The four roots of x⁴ − x³ − x² − x − 1 with certified enclosures.
#[derive(Clone, Debug)]
pub struct RootData {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: Complex64,
    /// Upper bound on |computed − exact| for every root.
    pub precision: f64,
    pub beta1_iv: Interval,
    pub beta2_iv: Interval,
    pub beta3_iv: ComplexInterval,
}

/// Default root precision.
pub const DEFAULT_PRECISION: f64 = 1e-15;

fn nearest(iv: &Interval) -> f64 {
    iv.mid()
}

/// Roots refined from 128-bit bisection enclosures.
pub fn compute_roots(precision: f64) -> Result<RootData, RootError> {
    if !(precision > 0.0 && precision.is_finite()) {
        return Err(RootError::InvalidPrecision(precision));
    }
    let e = dyadic::enclosures(128);
    let b1 = e.b1.to_interval();
    let b2 = e.b2.to_interval();
    let b3 = ComplexInterval::new(e.b3_re.to_interval(), e.b3_im.to_interval());
    let beta1 = nearest(&b1);
    let beta2 = nearest(&b2);
    let beta3 = Complex64::new(nearest(&b3.re), nearest(&b3.im));
    let err = [
        (beta1 - b1.lo()).max(b1.hi() - beta1),
        (beta2 - b2.lo()).max(b2.hi() - beta2),
        (beta3.re - b3.re.lo()).max(b3.re.hi() - beta3.re),
        (beta3.im - b3.im.lo()).max(b3.im.hi() - beta3.im),
    ];
    let attainable = err.iter().copied().fold(0.0, f64::max);
    if attainable > precision {
        return Err(RootError::Unattainable {
            requested: precision,
            attainable,
        });
    }
    Ok(RootData {
        beta1,
        beta2,
        beta3,
        precision: attainable,
        beta1_iv: b1,
        beta2_iv: b2,
        beta3_iv: b3,
    })
}

impl RootData {
    /// Process-wide roots at [`DEFAULT_PRECISION`].
    pub fn standard() -> &'static RootData {
        static ROOTS: OnceLock<RootData> = OnceLock::new();
        ROOTS.get_or_init(|| {
            compute_roots(DEFAULT_PRECISION).expect("default precision is attainable")
        })
    }

    /// Embedding of α^k, i.e. (β₂^k, β₃^k).
    pub fn alpha_pow(&self, k: i32) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.beta2.powi(k),
            z: self.beta3.powi(k),
        }
    }

    /// The contraction factors (|β₂|, |β₃|).
    pub fn moduli(&self) -> (f64, f64) {
        (self.beta2.abs(), self.beta3.norm())
    }
}

/// Point of ℝ×ℂ: coordinates at β₂ and β₃.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct EmbeddedPoint {
    pub r: f64,
    pub z: Complex64,
}

impl EmbeddedPoint {
    pub const ORIGIN: EmbeddedPoint = EmbeddedPoint {
        r: 0.0,
        z: Complex64::new(0.0, 0.0),
    };

    pub fn new(r: f64, re: f64, im: f64) -> Self {
        EmbeddedPoint {
            r,
            z: Complex64::new(re, im),
        }
    }

    /// Coordinatewise product, the action of multiplication in Z[α].
    pub fn mul(&self, o: &EmbeddedPoint) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.r * o.r,
            z: self.z * o.z,
        }
    }

    pub fn div(&self, o: &EmbeddedPoint) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.r / o.r,
            z: self.z / o.z,
        }
    }

    pub fn scale(&self, k: f64) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.r * k,
            z: self.z * k,
        }
    }

    /// Euclidean distance in ℝ³ ≅ ℝ×ℂ.
    pub fn dist(&self, o: &EmbeddedPoint) -> f64 {
        self.dist_sq(o).sqrt()
    }

    pub fn dist_sq(&self, o: &EmbeddedPoint) -> f64 {
        let dr = self.r - o.r;
        let dz = self.z - o.z;
        dr * dr + dz.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.dist(&EmbeddedPoint::ORIGIN)
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.r, self.z.re, self.z.im]
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.z.re.is_finite() && self.z.im.is_finite()
    }
}

impl Add for EmbeddedPoint {
    type Output = EmbeddedPoint;
    fn add(self, o: EmbeddedPoint) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.r + o.r,
            z: self.z + o.z,
        }
    }
}

impl Sub for EmbeddedPoint {
    type Output = EmbeddedPoint;
    fn sub(self, o: EmbeddedPoint) -> EmbeddedPoint {
        EmbeddedPoint {
            r: self.r - o.r,
            z: self.z - o.z,
        }
    }
}

impl Neg for EmbeddedPoint {
    type Output = EmbeddedPoint;
    fn neg(self) -> EmbeddedPoint {
        EmbeddedPoint {
            r: -self.r,
            z: -self.z,
        }
    }
}

/// (a(β₂), a(β₃)) by Horner evaluation.
pub fn embed(a: &ZAlpha, roots: &RootData) -> EmbeddedPoint {
    let mut r = 0.0;
    let mut z = Complex64::new(0.0, 0.0);
    for k in (0..4).rev() {
        r = r * roots.beta2 + a.c[k] as f64;
        z = z * roots.beta3 + a.c[k] as f64;
    }
    EmbeddedPoint { r, z }
}

/// a(β₁).
pub fn eval_beta1(a: &ZAlpha, roots: &RootData) -> f64 {
    a.c.iter()
        .rev()
        .fold(0.0, |acc, &c| acc * roots.beta1 + c as f64)
}

/// Certified enclosure of a(β₁).
pub fn eval_beta1_enclosure(a: &ZAlpha, roots: &RootData) -> Interval {
    a.c.iter().rev().fold(Interval::point(0.0), |acc, &c| {
        acc * roots.beta1_iv + Interval::from_int(c)
    })
}

/// Certified enclosures of a(β₂) and a(β₃).
pub fn embed_enclosure(a: &ZAlpha, roots: &RootData) -> (Interval, ComplexInterval) {
    let mut r = Interval::point(0.0);
    let mut z = ComplexInterval::from_int(0);
    for k in (0..4).rev() {
        r = r * roots.beta2_iv + Interval::from_int(a.c[k]);
        z = z * roots.beta3_iv + ComplexInterval::from_int(a.c[k]);
    }
    (r, z)
}

/// Value of the 7-digit code over α⁻³..α³ (leftmost digit is α⁻³).
fn code_value(digits: &[u8; 7]) -> ZAlpha {
    let d: Vec<i64> = digits.iter().map(|&b| b as i64).collect();
    ZAlpha::from_digits(-3, &d).expect("small coefficients")
}

/// Decodes a state label such as `"0110100"` or `"m0000001"`.
pub fn decode_annexe_state(code: &str) -> Result<ZAlpha, AnnexeCodeError> {
    let malformed = || AnnexeCodeError::Malformed(code.to_string());
    let (neg, body) = match code.strip_prefix('m') {
        Some(rest) => (true, rest),
        None => (false, code),
    };
    if body.len() != 7 {
        return Err(malformed());
    }
    let mut digits = [0u8; 7];
    for (i, ch) in body.chars().enumerate() {
        digits[i] = match ch {
            '0' => 0,
            '1' => 1,
            _ => return Err(malformed()),
        };
    }
    let v = code_value(&digits);
    Ok(if neg { -v } else { v })
}

fn code_table() -> &'static HashMap<ZAlpha, String> {
    static TABLE: OnceLock<HashMap<ZAlpha, String>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = HashMap::new();
        // Ascending binary order, so the first code stored is the lexicographically smallest.
        for bits in 0u32..128 {
            let digits: [u8; 7] = std::array::from_fn(|i| ((bits >> (6 - i)) & 1) as u8);
            let s: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
            let v = code_value(&digits);
            t.entry(v).or_insert_with(|| s.clone());
            if !v.is_zero() {
                t.entry(-v).or_insert_with(|| format!("m{s}"));
            }
        }
        t
    })
}

/// Lexicographically smallest 7-digit label of `a`, negative values taking the `m` prefix.
pub fn encode_annexe_state(a: &ZAlpha) -> Result<String, AnnexeCodeError> {
    code_table()
        .get(a)
        .cloned()
        .ok_or(AnnexeCodeError::NoCode(*a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: multiply polynomials of degree ≤ 3 and reduce by
    /// x⁴ = x³ + x² + x + 1 from the top down.
    fn poly_mul_reduce(a: &[i64; 4], b: &[i64; 4]) -> [i64; 4] {
        let mut p = [0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                p[i + j] += a[i] * b[j];
            }
        }
        for d in (4..7).rev() {
            let c = p[d];
            p[d] = 0;
            for k in 1..=4 {
                p[d - k] += c;
            }
        }
        [p[0], p[1], p[2], p[3]]
    }

    #[test]
    fn mul_alpha_examples() {
        assert_eq!(ZAlpha::new(1, 0, 0, 0).mul_alpha(), ZAlpha::new(0, 1, 0, 0));
        assert_eq!(ZAlpha::new(0, 0, 0, 1).mul_alpha(), ZAlpha::new(1, 1, 1, 1));
        assert_eq!(ZAlpha::new(1, 1, 1, 1).mul_alpha(), ZAlpha::new(1, 2, 2, 2));
        assert_eq!(poly_mul_reduce(&[1, 1, 1, 1], &[0, 1, 0, 0]), [1, 2, 2, 2]);
    }

    #[test]
    fn inverse_of_alpha() {
        let inv = ZAlpha::ONE.mul_alpha_inv();
        assert_eq!(inv, ZAlpha::new(-1, -1, -1, 1));
        assert_eq!(poly_mul_reduce(&inv.c, &[0, 1, 0, 0]), [1, 0, 0, 0]);
        assert_eq!(ZAlpha::new(0, 1, 0, 0).mul_alpha_inv(), ZAlpha::ONE);
    }

    #[test]
    fn minimal_polynomial_vanishes() {
        let p = |k| ZAlpha::ONE.mul_alpha_pow(k);
        assert!((p(4) - p(3) - p(2) - p(1) - ZAlpha::ONE).is_zero());
        assert_eq!(p(4), ZAlpha::new(1, 1, 1, 1));
    }

    #[test]
    fn useful_identities() {
        let a = ZAlpha::alpha_pow;
        assert_eq!(a(-3) + a(-2) + a(0) + a(3), ZAlpha::new(1, 2, 1, 0));
        assert_eq!(a(-2) + a(-1) + a(1), ZAlpha::new(-1, 0, 1, 0));
        assert_eq!(a(-4) + a(1), ZAlpha::from_int(2));
    }

    #[test]
    fn add_and_neg_examples() {
        assert_eq!(
            ZAlpha::new(1, 0, 0, 0) + ZAlpha::new(0, 1, 0, 0),
            ZAlpha::new(1, 1, 0, 0)
        );
        assert_eq!(-ZAlpha::new(1, 2, 1, 0), ZAlpha::new(-1, -2, -1, 0));
    }

    #[test]
    fn overflow_is_reported() {
        let big = ZAlpha::new(1, 0, 0, i64::MAX);
        assert_eq!(big.try_mul_alpha(), Err(ArithmeticError::Overflow));
        assert_eq!(
            ZAlpha::new(i64::MIN, 0, 0, 0).try_neg(),
            Err(ArithmeticError::Overflow)
        );
        assert_eq!(
            ZAlpha::new(i64::MAX, 0, 0, 0).try_add(&ZAlpha::ONE),
            Err(ArithmeticError::Overflow)
        );
        assert!(ZAlpha::new(i64::MIN, 1, 0, 0).try_mul_alpha_inv().is_err());
    }

    #[test]
    fn power_round_trip() {
        assert_eq!(ZAlpha::ONE.mul_alpha_pow(-3).mul_alpha_pow(3), ZAlpha::ONE);
        assert_eq!(ZAlpha::ONE.mul_alpha_pow(4), ZAlpha::new(1, 1, 1, 1));
    }

    #[test]
    fn exhaustive_small_inverse_pair() {
        for c0 in -4..=4 {
            for c1 in -4..=4 {
                for c2 in -4..=4 {
                    for c3 in -4..=4 {
                        let a = ZAlpha::new(c0, c1, c2, c3);
                        assert_eq!(a.mul_alpha().mul_alpha_inv(), a);
                        assert_eq!(a.mul_alpha_inv().mul_alpha(), a);
                    }
                }
            }
        }
    }

    #[test]
    fn roots_match_printed_values() {
        let r = RootData::standard();
        assert!((r.beta1 - 1.9275).abs() < 1e-4);
        assert!((r.beta2 + 0.7748).abs() < 1e-4);
        assert!((r.beta3.re + 0.0763).abs() < 1e-4);
        assert!((r.beta3.im - 0.8147).abs() < 1e-4);
        assert!(r.precision <= DEFAULT_PRECISION);
        let prod = r.beta1 * r.beta2 * r.beta3.norm_sqr();
        assert!((prod + 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_residuals_are_small() {
        let r = RootData::standard();
        let p = |x: Complex64| x.powi(4) - x.powi(3) - x.powi(2) - x - 1.0;
        for x in [
            Complex64::new(r.beta1, 0.0),
            Complex64::new(r.beta2, 0.0),
            r.beta3,
        ] {
            assert!(p(x).norm() < 1e-12);
        }
        assert!(r.beta1 > 1.0 && r.beta2.abs() < 1.0 && r.beta3.norm() < 1.0);
    }

    #[test]
    fn invalid_precision_is_rejected() {
        assert!(matches!(
            compute_roots(0.0),
            Err(RootError::InvalidPrecision(_))
        ));
        assert!(matches!(
            compute_roots(1e-30),
            Err(RootError::Unattainable { .. })
        ));
        assert!(compute_roots(1e-6).is_ok());
    }

    #[test]
    fn embed_examples() {
        let r = RootData::standard();
        let one = embed(&ZAlpha::ONE, r);
        assert_eq!(one, EmbeddedPoint::new(1.0, 1.0, 0.0));
        let a = embed(&ZAlpha::new(0, 1, 0, 0), r);
        assert!((a.r + 0.7748).abs() < 1e-4);
        assert!((a.z.re + 0.0763).abs() < 1e-4 && (a.z.im - 0.8147).abs() < 1e-4);
    }

    #[test]
    fn enclosures_contain_point_values() {
        let r = RootData::standard();
        let a = ZAlpha::new(3, -7, 2, 5);
        let (ri, zi) = embed_enclosure(&a, r);
        let p = embed(&a, r);
        assert!(ri.contains(p.r) && zi.contains(p.z.re, p.z.im));
        assert!(eval_beta1_enclosure(&a, r).contains(eval_beta1(&a, r)));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode_annexe_state("0110100").unwrap(),
            ZAlpha::new(-1, 0, 1, 0)
        );
        assert_eq!(decode_annexe_state("0001000").unwrap(), ZAlpha::ONE);
        assert_eq!(
            decode_annexe_state("1101001").unwrap(),
            ZAlpha::new(1, 2, 1, 0)
        );
        assert_eq!(
            decode_annexe_state("m0000001").unwrap(),
            -ZAlpha::alpha_pow(3)
        );
        for bad in ["", "010", "01101002", "x0110100", "mm0110100", "01101001"] {
            assert!(decode_annexe_state(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn encode_prefers_smallest_code() {
        assert_eq!(
            encode_annexe_state(&ZAlpha::alpha_pow(3)).unwrap(),
            "0000001"
        );
        assert_eq!(encode_annexe_state(&ZAlpha::ZERO).unwrap(), "0000000");
        assert_eq!(
            encode_annexe_state(&ZAlpha::new(1, 2, 1, 0)).unwrap(),
            "1101001"
        );
        assert_eq!(
            encode_annexe_state(&ZAlpha::new(1, 0, -1, 0)).unwrap(),
            "m0110100"
        );
        assert!(encode_annexe_state(&ZAlpha::from_int(100)).is_err());
    }

    fn small() -> impl Strategy<Value = ZAlpha> {
        prop::array::uniform4(-1000i64..1000).prop_map(|c| ZAlpha { c })
    }

    proptest! {
        #[test]
        fn product_matches_polynomial_oracle(a in small(), b in small()) {
            prop_assert_eq!((a * b).c, poly_mul_reduce(&a.c, &b.c));
        }

        #[test]
        fn ring_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * b, b * a);
            prop_assert!((a + (-a)).is_zero());
        }

        #[test]
        fn alpha_powers_compose(a in small(), j in -6i64..6, k in -6i64..6) {
            prop_assert_eq!(a.mul_alpha_pow(j).mul_alpha_pow(k), a.mul_alpha_pow(j + k));
            prop_assert_eq!((a + a).mul_alpha_pow(k), a.mul_alpha_pow(k) + a.mul_alpha_pow(k));
            prop_assert_eq!(a.mul_alpha_pow(k), a * ZAlpha::alpha_pow(k));
        }

        #[test]
        fn embedding_is_multiplicative(a in small()) {
            let r = RootData::standard();
            let e = embed(&a, r);
            let ea = embed(&a.mul_alpha(), r);
            let scale = 1.0 + a.max_abs_coeff() as f64;
            prop_assert!((ea.r - e.r * r.beta2).abs() < 1e-12 * scale);
            prop_assert!((ea.z - e.z * r.beta3).norm() < 1e-12 * scale);
        }

        #[test]
        fn embedding_bounds(a in small()) {
            let r = RootData::standard();
            let e = embed(&a, r);
            let l1: i64 = a.c.iter().map(|x| x.abs()).sum();
            prop_assert!(e.r.abs() <= l1 as f64);
            let (ri, _) = embed_enclosure(&a, r);
            prop_assert!(ri.width() <= 4.0 * a.max_abs_coeff() as f64 * 1e-14 + 1e-12);
        }
    }
}
