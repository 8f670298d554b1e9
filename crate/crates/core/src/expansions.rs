//! Digit words over {0,1} without the factor 1111, greedy β-expansions and
//! values of α-series.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::dyadic::BigZ;
use crate::interval::{ComplexInterval, Interval};
use crate::quartic::{embed, embed_enclosure, EmbeddedPoint, RootData, ZAlpha};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("expansion requires a positive value")]
    NonPositive,
    #[error("could not certify a digit within the precision cap")]
    PrecisionExhausted,
    #[error("value is not a finite real number")]
    NotFinite,
    #[error("cannot parse {0:?} as a decimal number")]
    BadDecimal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("digit {0:?} is not 0 or 1")]
    BadDigit(char),
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("malformed word: {0}")]
    Syntax(String),
}

fn parse_digits(s: &str) -> Result<Vec<u8>, WordError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(WordError::BadDigit(other)),
        })
        .collect()
}

fn digits_to_string(d: &[u8]) -> String {
    d.iter().map(|&b| char::from(b'0' + b)).collect()
}

fn has_1111(d: impl IntoIterator<Item = u8>) -> bool {
    let mut run = 0;
    for x in d {
        run = if x == 1 { run + 1 } else { 0 };
        if run >= 4 {
            return true;
        }
    }
    false
}

/// Finite word; `digits[j]` is the digit of index `start - j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    pub start: i64,
    pub digits: Vec<u8>,
}

impl DigitString {
    pub fn new(start: i64, digits: Vec<u8>) -> Result<Self, WordError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 1) {
            return Err(WordError::BadDigit(char::from(b'0' + d)));
        }
        Ok(DigitString { start, digits })
    }

    pub fn parse_digits(start: i64, s: &str) -> Result<Self, WordError> {
        Ok(DigitString {
            start,
            digits: parse_digits(s)?,
        })
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the last digit.
    pub fn end(&self) -> i64 {
        self.start - self.digits.len() as i64 + 1
    }

    /// Digit at index `i`, zero outside the stored range.
    pub fn digit(&self, i: i64) -> u8 {
        if i > self.start || i < self.end() {
            0
        } else {
            self.digits[(self.start - i) as usize]
        }
    }

    pub fn is_admissible(&self) -> bool {
        !has_1111(self.digits.iter().copied())
    }

    /// Σ d_i α^i as an exact element of Z[α]; the same element read in Z[β].
    pub fn to_zalpha(&self) -> ZAlpha {
        let mut acc = ZAlpha::ZERO;
        for (j, &d) in self.digits.iter().enumerate() {
            if d == 1 {
                acc = acc + ZAlpha::alpha_pow(self.start - j as i64);
            }
        }
        acc
    }

    /// Σ d_i β₁^i in floating point.
    pub fn value_beta1(&self, roots: &RootData) -> f64 {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(j, _)| roots.beta1.powi((self.start - j as i64) as i32))
            .sum()
    }

    /// Certified enclosure of Σ d_i β₁^i.
    pub fn value_beta1_enclosure(&self, roots: &RootData) -> Interval {
        let b = roots.beta1_iv;
        let binv = Interval::point(1.0)
            .checked_div(&b)
            .expect("beta1 is positive");
        let mut acc = Interval::point(0.0);
        for (j, &d) in self.digits.iter().enumerate() {
            if d == 1 {
                let i = self.start - j as i64;
                let p = if i >= 0 {
                    b.powi(i as u32)
                } else {
                    binv.powi((-i) as u32)
                };
                acc = acc + p;
            }
        }
        acc
    }

    /// Σ d_i α^i embedded in ℝ×ℂ.
    pub fn value_alpha(&self, roots: &RootData) -> EmbeddedPoint {
        let mut acc = EmbeddedPoint::ORIGIN;
        for (j, &d) in self.digits.iter().enumerate() {
            if d == 1 {
                acc = acc + roots.alpha_pow((self.start - j as i64) as i32);
            }
        }
        acc
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "index={}\n{}",
            self.start,
            digits_to_string(&self.digits)
        )
    }
}

impl FromStr for DigitString {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| WordError::Syntax("empty input".into()))?;
        let k = header
            .strip_prefix("index=")
            .and_then(|v| v.parse::<i64>().ok())
            .ok_or_else(|| WordError::Syntax(format!("bad header {header:?}")))?;
        let body = lines.next().unwrap_or("");
        if lines.next().is_some() {
            return Err(WordError::Syntax("trailing lines".into()));
        }
        DigitString::parse_digits(k, body)
    }
}

/// Infinite word (ε_i)_{i ≥ start}: `pre` lists ε_start, ε_start+1, … and `per`
/// repeats forever afterwards. Values are kept in canonical form: primitive
/// period, shortest preperiod and first digit 1 (except for the zero word,
/// stored as start 0 with period "0").
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicWord {
    start: i64,
    pre: Vec<u8>,
    per: Vec<u8>,
}

fn primitive_root(per: &[u8]) -> &[u8] {
    let n = per.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| per[i] == per[i - d]) {
            return &per[..d];
        }
    }
    per
}

impl EventuallyPeriodicWord {
    pub fn new(start: i64, pre: Vec<u8>, per: Vec<u8>) -> Result<Self, WordError> {
        if per.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        if let Some(&d) = pre.iter().chain(per.iter()).find(|&&d| d > 1) {
            return Err(WordError::BadDigit(char::from(b'0' + d)));
        }
        Ok(Self::canonical(start, pre, per))
    }

    pub fn parse(start: i64, pre: &str, per: &str) -> Result<Self, WordError> {
        Self::new(start, parse_digits(pre)?, parse_digits(per)?)
    }

    /// Word with finitely many ones.
    pub fn finite(start: i64, digits: Vec<u8>) -> Result<Self, WordError> {
        Self::new(start, digits, vec![0])
    }

    pub fn zero() -> Self {
        EventuallyPeriodicWord {
            start: 0,
            pre: vec![],
            per: vec![0],
        }
    }

    fn canonical(mut start: i64, mut pre: Vec<u8>, per: Vec<u8>) -> Self {
        let mut per = primitive_root(&per).to_vec();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        if per.iter().all(|&d| d == 0) && pre.iter().all(|&d| d == 0) {
            return Self::zero();
        }
        let lead = pre.iter().take_while(|&&d| d == 0).count();
        pre.drain(..lead);
        start += lead as i64;
        if pre.is_empty() {
            let lead = per.iter().take_while(|&&d| d == 0).count();
            per.rotate_left(lead);
            start += lead as i64;
        }
        EventuallyPeriodicWord { start, pre, per }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per == [0]
    }

    /// Index where the periodic part begins.
    pub fn period_start(&self) -> i64 {
        self.start + self.pre.len() as i64
    }

    pub fn digit(&self, i: i64) -> u8 {
        if i < self.start {
            return 0;
        }
        let off = (i - self.start) as usize;
        if off < self.pre.len() {
            self.pre[off]
        } else {
            self.per[(off - self.pre.len()) % self.per.len()]
        }
    }

    /// The word shifted so that ε'_i = ε_{i-k}.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        EventuallyPeriodicWord {
            start: self.start + k,
            pre: self.pre.clone(),
            per: self.per.clone(),
        }
    }

    /// No factor 1111 anywhere in the infinite word.
    pub fn is_admissible(&self) -> bool {
        let reps = 2 + 3usize.div_ceil(self.per.len());
        let tail = self.per.iter().copied().cycle().take(reps * self.per.len());
        !has_1111(self.pre.iter().copied().chain(tail))
    }

    /// Digits of indices `start..start+n`.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n as i64).map(|j| self.digit(self.start + j)).collect()
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "index={} pre={} per={}",
            self.start,
            digits_to_string(&self.pre),
            digits_to_string(&self.per)
        )
    }
}

impl FromStr for EventuallyPeriodicWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let (mut idx, mut pre, mut per) = (None, None, None);
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| WordError::Syntax(format!("expected key=value, got {tok:?}")))?;
            let slot = match key {
                "index" => &mut idx,
                "pre" => &mut pre,
                "per" => &mut per,
                _ => return Err(WordError::Syntax(format!("unknown key {key:?}"))),
            };
            if slot.replace(val).is_some() {
                return Err(WordError::Syntax(format!("duplicate key {key:?}")));
            }
        }
        let idx = idx
            .unwrap_or("0")
            .parse::<i64>()
            .map_err(|_| WordError::Syntax("index must be an integer".into()))?;
        let per = per.ok_or_else(|| WordError::Syntax("missing per=".into()))?;
        Self::parse(idx, pre.unwrap_or(""), per)
    }
}

/// `u <_lex v` after aligning indices; missing digits count as 0.
pub fn lex_less(u: &DigitString, v: &DigitString) -> bool {
    let hi = u.start.max(v.start);
    let lo = u.end().min(v.end());
    let mut i = hi;
    while i >= lo {
        match u.digit(i).cmp(&v.digit(i)) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
        i -= 1;
    }
    false
}

/// Greedy digits of W(β)/q where W ∈ Z[β] and q > 0.
fn greedy_engine(
    w: BigZ,
    q: BigInt,
    hint: Option<f64>,
    max_digits: Option<usize>,
) -> Result<DigitString, ExpansionError> {
    let qz = BigZ::from_int(q.clone());
    match w.sign_beta1().ok_or(ExpansionError::PrecisionExhausted)? {
        Ordering::Greater => {}
        _ => return Err(ExpansionError::NonPositive),
    }
    // x ≥ q·β^k  ⇔  W − q·β^k ≥ 0
    let ge_pow = |k: i64| -> Result<bool, ExpansionError> {
        let s = w
            .sub(&qz.mul_beta_pow(k))
            .sign_beta1()
            .ok_or(ExpansionError::PrecisionExhausted)?;
        Ok(s != Ordering::Less)
    };
    let beta = crate::quartic::RootData::standard().beta1;
    let mut k = match hint {
        Some(x) if x.is_finite() && x > 0.0 => (x.ln() / beta.ln()).floor() as i64,
        _ => 0,
    };
    while !ge_pow(k)? {
        k -= 1;
    }
    while ge_pow(k + 1)? {
        k += 1;
    }
    let mut digits = vec![1u8];
    let mut r = w.mul_beta_pow(-k).sub(&qz);
    while !r.is_zero() && max_digits.is_none_or(|m| digits.len() < m) {
        let t = r.mul_beta();
        let u = t.sub(&qz);
        match u.sign_beta1().ok_or(ExpansionError::PrecisionExhausted)? {
            Ordering::Less => {
                digits.push(0);
                r = t;
            }
            _ => {
                digits.push(1);
                r = u;
            }
        }
    }
    let s = DigitString { start: k, digits };
    debug_assert!(s.is_admissible());
    Ok(s)
}

/// Greedy β-expansion of a positive rational, truncated to `num_digits`
/// digits; shorter when the expansion terminates.
pub fn greedy_expand(x: &BigRational, num_digits: usize) -> Result<DigitString, ExpansionError> {
    if !x.is_positive() {
        return Err(ExpansionError::NonPositive);
    }
    let hint = x.to_f64();
    let w = BigZ::from_int(x.numer().clone());
    greedy_engine(w, x.denom().clone(), hint, Some(num_digits.max(1)))
}

/// Greedy expansion of the exact binary value of `x`.
pub fn greedy_expand_f64(x: f64, num_digits: usize) -> Result<DigitString, ExpansionError> {
    let r = BigRational::from_float(x).ok_or(ExpansionError::NotFinite)?;
    greedy_expand(&r, num_digits)
}

/// Finite greedy expansion of a positive element of Z[β].
pub fn finite_expansion_zbeta(a: &ZAlpha) -> Result<DigitString, ExpansionError> {
    let w = BigZ {
        c: a.c.map(BigInt::from),
    };
    let hint = crate::quartic::eval_beta1(a, RootData::standard());
    greedy_engine(w, BigInt::one(), Some(hint), None)
}

/// Parses `[+-]digits[.digits][e[+-]digits]` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational, ExpansionError> {
    let bad = || ExpansionError::BadDecimal(s.to_string());
    let t = s.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(p) => (&t[..p], t[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let e = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if e >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Number of admissible words of length n: a(n) = a(n−1)+a(n−2)+a(n−3)+a(n−4).
pub fn admissible_count(n: usize) -> u128 {
    let mut a: Vec<u128> = vec![1, 2, 4, 8];
    while a.len() <= n {
        let m = a.len();
        a.push(a[m - 1] + a[m - 2] + a[m - 3] + a[m - 4]);
    }
    a[n]
}

/// All admissible words of length `depth` in lexicographic order.
pub fn enumerate_admissible(depth: usize, start_index: i64) -> AdmissibleIter {
    AdmissibleIter {
        start: start_index,
        cur: Some(vec![0; depth]),
    }
}

pub struct AdmissibleIter {
    start: i64,
    cur: Option<Vec<u8>>,
}

impl Iterator for AdmissibleIter {
    type Item = DigitString;

    fn next(&mut self) -> Option<DigitString> {
        let w = self.cur.take()?;
        let out = DigitString {
            start: self.start,
            digits: w.clone(),
        };
        let mut w = w;
        let mut j = w.len();
        while j > 0 {
            j -= 1;
            if w[j] == 0 {
                let run = w[..j].iter().rev().take_while(|&&d| d == 1).count();
                if run < 3 {
                    w[j] = 1;
                    w[j + 1..].iter_mut().for_each(|d| *d = 0);
                    self.cur = Some(w);
                    break;
                }
            }
        }
        Some(out)
    }
}

/// Σ_{j<len} d_j α^j for digits listed from the lowest power.
fn poly_value(d: &[u8]) -> ZAlpha {
    d.iter()
        .enumerate()
        .filter(|(_, &x)| x == 1)
        .fold(ZAlpha::ZERO, |acc, (j, _)| {
            acc + ZAlpha::alpha_pow(j as i64)
        })
}

/// Σ_{i ≥ start} ε_i (β₂^i, β₃^i) with the periodic tail summed in closed form.
pub fn value_alpha(w: &EventuallyPeriodicWord, roots: &RootData) -> EmbeddedPoint {
    if w.is_zero() {
        return EmbeddedPoint::ORIGIN;
    }
    let p = w.per.len();
    let head = embed(&poly_value(&w.pre), roots);
    let per = embed(&poly_value(&w.per), roots);
    let ap = roots.alpha_pow(p as i32);
    let one = EmbeddedPoint::new(1.0, 1.0, 0.0);
    let tail = per
        .div(&(one - ap))
        .mul(&roots.alpha_pow(w.pre.len() as i32));
    (head + tail).mul(&roots.alpha_pow(w.start as i32))
}

fn civ_pow(base: ComplexInterval, k: i64) -> ComplexInterval {
    if k >= 0 {
        base.powi(k as u32)
    } else {
        ComplexInterval::from_int(1)
            .checked_div(&base)
            .expect("nonzero root")
            .powi((-k) as u32)
    }
}

fn iv_pow(base: Interval, k: i64) -> Interval {
    if k >= 0 {
        base.powi(k as u32)
    } else {
        Interval::point(1.0)
            .checked_div(&base)
            .expect("nonzero root")
            .powi((-k) as u32)
    }
}

/// Certified enclosure of [`value_alpha`].
pub fn value_alpha_enclosure(
    w: &EventuallyPeriodicWord,
    roots: &RootData,
) -> (Interval, ComplexInterval) {
    if w.is_zero() {
        return (Interval::point(0.0), ComplexInterval::from_int(0));
    }
    let p = w.per.len() as i64;
    let (hr, hz) = embed_enclosure(&poly_value(&w.pre), roots);
    let (pr, pz) = embed_enclosure(&poly_value(&w.per), roots);
    let shift = w.pre.len() as i64;
    let b2 = roots.beta2_iv;
    let b3 = roots.beta3_iv;
    let den_r = Interval::point(1.0) - iv_pow(b2, p);
    let den_z = ComplexInterval::from_int(1) - civ_pow(b3, p);
    let tr = pr.checked_div(&den_r).expect("|beta2| < 1") * iv_pow(b2, shift);
    let tz = pz.checked_div(&den_z).expect("|beta3| < 1") * civ_pow(b3, shift);
    (
        (hr + tr) * iv_pow(b2, w.start),
        (hz + tz) * civ_pow(b3, w.start),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ds(start: i64, s: &str) -> DigitString {
        DigitString::parse_digits(start, s).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(ds(0, "1110").is_admissible());
        assert!(!ds(0, "0111100").is_admissible());
        assert!(EventuallyPeriodicWord::parse(0, "", "1011")
            .unwrap()
            .is_admissible());
        assert!(!EventuallyPeriodicWord::parse(0, "", "1")
            .unwrap()
            .is_admissible());
        assert!(!EventuallyPeriodicWord::parse(0, "", "11011")
            .unwrap()
            .is_admissible());
        assert!(!EventuallyPeriodicWord::parse(0, "11", "1100")
            .unwrap()
            .is_admissible());
        assert!(EventuallyPeriodicWord::parse(0, "111", "0")
            .unwrap()
            .is_admissible());
    }

    #[test]
    fn canonical_form() {
        let a = EventuallyPeriodicWord::parse(4, "", "10001000").unwrap();
        let b = EventuallyPeriodicWord::parse(3, "01", "0001").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.period(), &[1, 0, 0, 0]);
        assert!(a.preperiod().is_empty());
        assert_eq!(a.start(), 4);
        let z = EventuallyPeriodicWord::parse(-7, "000", "00").unwrap();
        assert!(z.is_zero());
        assert_eq!(z, EventuallyPeriodicWord::zero());
    }

    #[test]
    fn word_text_round_trip() {
        let w = EventuallyPeriodicWord::parse(-3, "1101001", "0011").unwrap();
        let s = w.to_string();
        assert_eq!(s.parse::<EventuallyPeriodicWord>().unwrap(), w);
        assert!("index=1 pre=12 per=0"
            .parse::<EventuallyPeriodicWord>()
            .is_err());
        assert!("index=1 pre=1".parse::<EventuallyPeriodicWord>().is_err());
        assert!("index=x per=1".parse::<EventuallyPeriodicWord>().is_err());
        let d = ds(3, "1001");
        assert_eq!(d.to_string(), "index=3\n1001");
        assert_eq!(d.to_string().parse::<DigitString>().unwrap(), d);
    }

    #[test]
    fn greedy_small_examples() {
        let one = greedy_expand_f64(1.0, 10).unwrap();
        assert_eq!(one, ds(0, "1"));
        // 2 = β + β⁻⁴ exactly
        let two = greedy_expand_f64(2.0, 20).unwrap();
        assert_eq!(two, ds(1, "100001"));
        let b = greedy_expand_f64(RootData::standard().beta1, 20).unwrap();
        assert_eq!(b.start, 1);
        assert_eq!(&b.digits[..2], &[1, 0]);
    }

    #[test]
    fn greedy_matches_independent_oracle() {
        // Oracle: plain greedy recurrence in 40-digit decimal arithmetic.
        let roots = RootData::standard();
        for x in [0.3, 2.0, 3.7, 11.25, 0.015625] {
            let g = greedy_expand_f64(x, 30).unwrap();
            let oracle = oracle_greedy(x, roots.beta1, 30);
            let n = g.len().min(25);
            assert_eq!(g.start, oracle.0, "x = {x}");
            assert_eq!(&g.digits[..n], &oracle.1[..n], "x = {x}");
        }
    }

    fn oracle_greedy(x: f64, beta: f64, n: usize) -> (i64, Vec<u8>) {
        // f64 recurrence; only the first ~25 digits are trusted.
        let mut k = 0i64;
        while beta.powi(k as i32) > x {
            k -= 1;
        }
        while beta.powi(k as i32 + 1) <= x {
            k += 1;
        }
        let mut r = x / beta.powi(k as i32) - 1.0;
        let mut d = vec![1u8];
        for _ in 1..n {
            let t = r * beta;
            if t >= 1.0 - 1e-12 {
                d.push(1);
                r = (t - 1.0).max(0.0);
            } else {
                d.push(0);
                r = t;
            }
        }
        (k, d)
    }

    #[test]
    fn greedy_rejects_nonpositive() {
        assert_eq!(greedy_expand_f64(0.0, 5), Err(ExpansionError::NonPositive));
        assert_eq!(greedy_expand_f64(-1.0, 5), Err(ExpansionError::NonPositive));
        assert_eq!(
            greedy_expand_f64(f64::NAN, 5),
            Err(ExpansionError::NotFinite)
        );
    }

    #[test]
    fn greedy_on_large_and_tiny_values() {
        let roots = RootData::standard();
        for x in [1e30, 1e-30, 123456.789] {
            let g = greedy_expand_f64(x, 60).unwrap();
            assert!(g.is_admissible());
            let v = g.value_beta1(roots);
            assert!(v <= x * (1.0 + 1e-12));
            assert!(x - v <= roots.beta1.powi(g.end() as i32) + 1e-13 * x);
        }
    }

    #[test]
    fn parse_decimal_examples() {
        assert_eq!(parse_decimal("1").unwrap(), BigRational::one());
        assert_eq!(
            parse_decimal("2.5").unwrap(),
            BigRational::new(5.into(), 2.into())
        );
        assert_eq!(
            parse_decimal("-0.25e1").unwrap(),
            BigRational::new((-5).into(), 2.into())
        );
        assert_eq!(
            parse_decimal(".5").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        for bad in ["", "abc", "1.2.3", "e5", "1e", "--1"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lex_examples() {
        assert!(lex_less(&ds(3, "0111"), &ds(3, "1000")));
        let u = ds(2, "101");
        assert!(!lex_less(&u, &u));
        assert!(lex_less(&ds(0, "1"), &ds(1, "1")));
    }

    #[test]
    fn finite_expansions() {
        assert_eq!(finite_expansion_zbeta(&ZAlpha::ONE).unwrap(), ds(0, "1"));
        assert_eq!(
            finite_expansion_zbeta(&ZAlpha::new(1, 1, 1, 1)).unwrap(),
            ds(4, "1")
        );
        assert_eq!(
            finite_expansion_zbeta(&ZAlpha::new(0, 1, 0, 0)).unwrap(),
            ds(1, "1")
        );
        let a = ZAlpha::new(1, 2, 1, 0);
        let e = finite_expansion_zbeta(&a).unwrap();
        assert!(e.is_admissible());
        assert_eq!(e.to_zalpha(), a);
        assert_eq!(
            finite_expansion_zbeta(&ZAlpha::ZERO),
            Err(ExpansionError::NonPositive)
        );
        assert_eq!(
            finite_expansion_zbeta(&ZAlpha::new(-1, 0, 0, 0)),
            Err(ExpansionError::NonPositive)
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_admissible(1, 0).count(), 2);
        assert_eq!(enumerate_admissible(4, 0).count(), 15);
        assert_eq!(enumerate_admissible(8, 0).count(), 208);
        for n in 1..14 {
            assert_eq!(
                enumerate_admissible(n, 0).count() as u128,
                admissible_count(n)
            );
            assert_eq!(admissible_count(n), transfer_matrix_count(n));
        }
    }

    /// Oracle: states are the current run of trailing ones (0..=3).
    fn transfer_matrix_count(n: usize) -> u128 {
        let mut v = [1u128, 0, 0, 0];
        for _ in 0..n {
            let mut w = [0u128; 4];
            for (run, &c) in v.iter().enumerate() {
                w[0] += c;
                if run < 3 {
                    w[run + 1] += c;
                }
            }
            v = w;
        }
        v.iter().sum()
    }

    #[test]
    fn enumeration_is_sorted_and_admissible() {
        let all: Vec<_> = enumerate_admissible(7, 3).collect();
        for w in &all {
            assert!(w.is_admissible());
            assert_eq!(w.start, 3);
        }
        for p in all.windows(2) {
            assert!(lex_less(&p[0], &p[1]));
        }
    }

    #[test]
    fn series_values() {
        let roots = RootData::standard();
        let a = EventuallyPeriodicWord::parse(4, "", "1000").unwrap();
        // 1 + Σ_{i≥1} α^{4i+1}
        let b = EventuallyPeriodicWord::parse(0, "10000", "1000").unwrap();
        let va = value_alpha(&a, roots);
        let vb = value_alpha(&b, roots);
        assert!(va.dist(&vb) < 1e-12);
        assert_eq!(
            value_alpha(&EventuallyPeriodicWord::zero(), roots),
            EmbeddedPoint::ORIGIN
        );
        let single = EventuallyPeriodicWord::finite(-3, vec![1]).unwrap();
        assert!(value_alpha(&single, roots).dist(&roots.alpha_pow(-3)) < 1e-12);
    }

    #[test]
    fn series_enclosure_contains_value() {
        let roots = RootData::standard();
        let w = EventuallyPeriodicWord::parse(-3, "1101001", "0011").unwrap();
        let v = value_alpha(&w, roots);
        let (r, z) = value_alpha_enclosure(&w, roots);
        assert!(r.contains(v.r) && z.contains(v.z.re, v.z.im));
        assert!(r.width() < 1e-12 && z.re.width() < 1e-12);
    }

    #[test]
    fn greedy_is_admissible_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let x: f64 = rng.gen_range(1e-6..100.0);
            let g = greedy_expand_f64(x, 24).unwrap();
            assert!(g.is_admissible(), "{x}");
        }
    }

    #[test]
    fn greedy_is_lexicographically_maximal() {
        let roots = RootData::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let x: f64 = rng.gen_range(0.01..100.0);
            let g = greedy_expand_f64(x, 24).unwrap();
            let xi = Interval::point(x);
            for j in 0..g.len() {
                if g.digits[j] == 0 {
                    let mut f = g.digits[..=j].to_vec();
                    f[j] = 1;
                    let flipped = DigitString {
                        start: g.start,
                        digits: f,
                    };
                    assert!(
                        flipped.value_beta1_enclosure(roots).certainly_gt(&xi),
                        "{x} at {j}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn finite_expansion_round_trip(c in prop::array::uniform4(-6i64..6)) {
            let a = ZAlpha { c };
            let s = crate::quartic::eval_beta1_enclosure(&a, RootData::standard());
            prop_assume!(s.lo() > 0.0);
            let e = finite_expansion_zbeta(&a).unwrap();
            prop_assert!(e.is_admissible());
            prop_assert_eq!(e.to_zalpha(), a);
            let v = e.value_beta1_enclosure(RootData::standard());
            prop_assert!(v.overlaps(&s));
        }

        #[test]
        fn lex_agrees_with_numeric_order(
            a in prop::collection::vec(0u8..2, 12),
            b in prop::collection::vec(0u8..2, 12),
        ) {
            let u = DigitString { start: 5, digits: a };
            let v = DigitString { start: 5, digits: b };
            prop_assume!(u.is_admissible() && v.is_admissible() && u != v);
            let roots = RootData::standard();
            let (eu, ev) = (u.value_beta1_enclosure(roots), v.value_beta1_enclosure(roots));
            prop_assert_eq!(lex_less(&u, &v), ev.certainly_gt(&eu));
            prop_assert!(eu.certainly_lt(&ev) || ev.certainly_lt(&eu));
        }

        #[test]
        fn canonical_form_is_stable(
            start in -10i64..10,
            pre in prop::collection::vec(0u8..2, 0..6),
            per in prop::collection::vec(0u8..2, 1..6),
            k in 1usize..3,
        ) {
            let w = EventuallyPeriodicWord::new(start, pre.clone(), per.clone()).unwrap();
            let rep: Vec<u8> = per.iter().copied().cycle().take(per.len() * k).collect();
            let mut longer = pre.clone();
            longer.extend_from_slice(&per);
            let w2 = EventuallyPeriodicWord::new(start, longer, rep).unwrap();
            prop_assert_eq!(&w, &w2);
            for i in start - 2..start + 30 {
                let expect = if i < start {
                    0
                } else {
                    let o = (i - start) as usize;
                    if o < pre.len() { pre[o] } else { per[(o - pre.len()) % per.len()] }
                };
                prop_assert_eq!(w.digit(i), expect);
            }
        }
    }
}
