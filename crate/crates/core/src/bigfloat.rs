//! Binary floating point with an arbitrary-length mantissa.
//!
//! A value is `mant * 2^exp`, rounded (half away from zero) to the number of
//! bits implied by its precision in decimal digits. Binary operations run at
//! the larger precision of their operands. Constants created without an
//! explicit precision use the calling thread's working precision, see
//! [`with_precision`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 60;
/// Smallest precision accepted by the numeric pipeline.
pub const MIN_DIGITS: u32 = 30;
/// Largest precision whose tolerances still fit comfortably in an `f64`.
pub const MAX_DIGITS: u32 = 280;

thread_local! {
    static WORKING_DIGITS: Cell<u32> = const { Cell::new(DEFAULT_DIGITS) };
}

/// Current thread's working precision in decimal digits.
pub fn working_digits() -> u32 {
    WORKING_DIGITS.with(Cell::get)
}

/// Run `f` with the thread's working precision set to `digits`.
pub fn with_precision<R>(digits: u32, f: impl FnOnce() -> R) -> R {
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_DIGITS.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(WORKING_DIGITS.with(|d| d.replace(digits)));
    f()
}

fn digits_to_bits(digits: u32) -> u64 {
    // log2(10) = 3.3219...; eight guard bits.
    (u64::from(digits) * 33_220).div_ceil(10_000) + 8
}

/// Arbitrary-precision binary float.
#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

/// Complex number with [`BigFloat`] parts.
pub type CBig = Complex<BigFloat>;

impl BigFloat {
    pub fn zero_with(digits: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, digits }
    }

    fn from_parts(mant: BigInt, exp: i64, digits: u32) -> Self {
        let mut x = BigFloat { mant, exp, digits };
        x.round();
        x
    }

    pub fn from_i64_with(n: i64, digits: u32) -> Self {
        Self::from_parts(BigInt::from(n), 0, digits)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_i64_with(n, working_digits())
    }

    /// Exact conversion of a finite `f64`, then rounded to working precision.
    pub fn from_f64(x: f64) -> Self {
        use num_traits::Float;
        assert!(x.is_finite(), "non-finite f64 has no BigFloat value");
        let (m, e, s) = Float::integer_decode(x);
        let mant = BigInt::from(m) * BigInt::from(s);
        Self::from_parts(mant, i64::from(e), working_digits())
    }

    pub fn from_rat_with(r: &Rat, digits: u32) -> Self {
        if r.is_zero() {
            return Self::zero_with(digits);
        }
        let bits = digits_to_bits(digits) as i64;
        let num = r.numer();
        let den = r.denom();
        let shift = bits + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0);
        let q = (num << shift as usize) / den;
        Self::from_parts(q, -shift, digits)
    }

    pub fn from_rat(r: &Rat) -> Self {
        Self::from_rat_with(r, working_digits())
    }

    /// Precision in decimal digits.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// The same value re-rounded to another precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, digits)
    }

    fn bits(&self) -> u64 {
        digits_to_bits(self.digits)
    }

    fn round(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.bits();
        let n = self.mant.bits();
        if n > bits {
            let shift = n - bits;
            let neg = self.mant.is_negative();
            let mag = self.mant.magnitude();
            let half_bit = mag.bit(shift - 1);
            let mut q = BigInt::from_biguint(Sign::Plus, mag >> shift);
            if half_bit {
                q += 1;
            }
            self.mant = if neg { -q } else { q };
            self.exp += shift as i64;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    /// Exponent of the leading bit: `2^top <= |x| < 2^(top+1)`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64 - 1
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, digits: self.digits }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.mant.is_zero() {
            return self.clone();
        }
        let bits = self.bits() as i64;
        let n = self.mant.bits() as i64;
        let mut s = (2 * bits + 2 - n).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as usize;
        let r = m.sqrt();
        Self::from_parts(r, (self.exp - s) / 2, self.digits)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let n = self.mant.bits() as i64;
        let (m, e) =
            if n > 60 { (&self.mant >> (n - 60) as usize, self.exp + n - 60) } else { (self.mant.clone(), self.exp) };
        let m = m.to_f64().unwrap_or(0.0);
        scale_pow2(m, e)
    }

    /// Decimal scientific notation with `sig` significant digits.
    pub fn to_decimal(&self, sig: u32) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1) as i64;
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        // Estimate of floor(log10 |x|), corrected below.
        let mut k = ((self.top() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let digits_of = |k: i64| -> BigInt {
            let p = sig - 1 - k;
            let mut num = mag.clone();
            let mut den = BigInt::one();
            if p >= 0 {
                num *= BigInt::from(10).pow(p as u32);
            } else {
                den *= BigInt::from(10).pow((-p) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            // round half up
            (num * 2 + &den) / (den * 2)
        };
        let mut n = digits_of(k);
        let lo = BigInt::from(10).pow((sig - 1) as u32);
        let hi = BigInt::from(10).pow(sig as u32);
        for _ in 0..4 {
            if n >= hi {
                k += 1;
                n = digits_of(k);
            } else if n < lo {
                k -= 1;
                n = digits_of(k);
            } else {
                break;
            }
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail.trim_end_matches('0'));
            if out.ends_with('.') {
                out.pop();
            }
        }
        if k != 0 {
            out.push_str(&format!("e{k}"));
        }
        out
    }

    /// Exact rational value of this float.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// `10^k` at working precision.
    pub fn pow10(k: i32) -> Self {
        let p = BigInt::from(10).pow(k.unsigned_abs());
        if k >= 0 {
            Self::from_rat(&Rat::from_integer(p))
        } else {
            Self::from_rat(&Rat::new(BigInt::one(), p))
        }
    }

    fn max_digits(&self, other: &Self) -> u32 {
        self.digits.max(other.digits)
    }
}

fn scale_pow2(m: f64, e: i64) -> f64 {
    let mut x = m;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

fn add_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let digits = a.max_digits(b);
    if a.mant.is_zero() {
        return b.with_digits(digits);
    }
    if b.mant.is_zero() {
        return a.with_digits(digits);
    }
    let (hi, lo) = if a.top() >= b.top() { (a, b) } else { (b, a) };
    let bits = digits_to_bits(digits) as i64;
    if hi.top() - lo.top() > bits + 4 {
        return hi.with_digits(digits);
    }
    let (m, e) = if hi.exp >= lo.exp {
        (&hi.mant << (hi.exp - lo.exp) as usize, lo.exp)
    } else {
        (&lo.mant << (lo.exp - hi.exp) as usize, hi.exp)
    };
    let other = if hi.exp >= lo.exp { &lo.mant } else { &hi.mant };
    BigFloat::from_parts(m + other, e, digits)
}

fn mul_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    BigFloat::from_parts(&a.mant * &b.mant, a.exp + b.exp, a.max_digits(b))
}

fn div_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    assert!(!b.mant.is_zero(), "BigFloat division by zero");
    let digits = a.max_digits(b);
    if a.mant.is_zero() {
        return BigFloat::zero_with(digits);
    }
    let bits = digits_to_bits(digits) as i64;
    let shift = (bits + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
    let q = (&a.mant << shift as usize) / &b.mant;
    BigFloat::from_parts(q, a.exp - shift - b.exp, digits)
}

fn cmp_impl(a: &BigFloat, b: &BigFloat) -> Ordering {
    let (m, other) = if a.exp >= b.exp {
        (&a.mant << (a.exp - b.exp) as usize, b.mant.clone())
    } else {
        (a.mant.clone(), &b.mant << (b.exp - a.exp) as usize)
    };
    m.cmp(&other)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                $f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'a BigFloat) -> BigFloat {
                $f(self, rhs)
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'a BigFloat) -> BigFloat {
                $f(&self, rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, |a: &BigFloat, b: &BigFloat| add_impl(a, &-b));
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);
binop!(Rem, rem, |a: &BigFloat, b: &BigFloat| {
    // Truncated remainder; only present to satisfy `Num`.
    let q = div_impl(a, b).to_rat().trunc();
    add_impl(a, &-mul_impl(&BigFloat::from_rat_with(&q, a.max_digits(b)), b))
});

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(mut self) -> BigFloat {
        self.mant = -self.mant;
        self
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -self.clone()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && (self.mant.is_zero() || self.exp == other.exp)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_impl(self, other))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        Self::zero_with(working_digits())
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

/// Parse error for decimal BigFloat literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBigFloatError;

impl fmt::Display for ParseBigFloatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid decimal literal")
    }
}

impl std::error::Error for ParseBigFloatError {}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Result<Rat, ParseBigFloatError> {
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| ParseBigFloatError)?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(ParseBigFloatError);
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(ParseBigFloatError);
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| ParseBigFloatError)?;
    let digits = digits / 10;
    let e = exp - frac.len() as i64;
    if e.unsigned_abs() > 100_000 {
        return Err(ParseBigFloatError);
    }
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    let mut r = if e >= 0 { Rat::from_integer(digits * p) } else { Rat::new(digits, p) };
    if neg {
        r = -r;
    }
    Ok(r)
}

impl FromStr for BigFloat {
    type Err = ParseBigFloatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_decimal(s).map(|r| BigFloat::from_rat(&r))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = ParseBigFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseBigFloatError);
        }
        s.parse()
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(self.digits))
    }
}

impl Scalar for BigFloat {
    const EXACT: bool = false;

    fn from_rat(r: &Rat) -> Self {
        BigFloat::from_rat(r)
    }

    fn from_i64(n: i64) -> Self {
        BigFloat::from_i64(n)
    }

    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }

    fn tolerance(&self) -> f64 {
        10f64.powi(6 - self.digits as i32)
    }
}

impl Scalar for CBig {
    const EXACT: bool = false;

    fn from_rat(r: &Rat) -> Self {
        Complex::new(BigFloat::from_rat(r), BigFloat::zero())
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(BigFloat::from_i64(n), BigFloat::zero())
    }

    fn modulus(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    fn tolerance(&self) -> f64 {
        10f64.powi(6 - self.re.digits.max(self.im.digits) as i32)
    }
}

/// Exact modulus `sqrt(re^2 + im^2)` at full precision.
pub fn cabs(z: &CBig) -> BigFloat {
    (&z.re * &z.re + &z.im * &z.im).sqrt()
}

/// Build a complex value from a pair of `f64`.
pub fn cbig_from_f64(re: f64, im: f64) -> CBig {
    Complex::new(BigFloat::from_f64(re), BigFloat::from_f64(im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn arithmetic_is_accurate_to_precision() {
        with_precision(60, || {
            let third = BigFloat::from_rat(&ratio(1, 3));
            let x = &third * &BigFloat::from_i64(3) - BigFloat::one();
            assert!(x.to_f64().abs() < 1e-60);
            let two = BigFloat::from_i64(2);
            let r = two.sqrt();
            let err = &r * &r - two;
            assert!(err.to_f64().abs() < 1e-60);
            assert!(r.to_decimal(12).starts_with("1.41421356237"));
        });
    }

    #[test]
    fn precision_follows_larger_operand() {
        let a = BigFloat::from_i64_with(1, 30);
        let b = BigFloat::from_rat_with(&ratio(1, 7), 120);
        assert_eq!((&a + &b).digits(), 120);
        let r = (&a / &b).to_rat() - Rat::from_integer(7.into());
        assert!(BigFloat::from_rat_with(&r, 200).to_f64().abs() < 1e-115);
    }

    #[test]
    fn cancellation_and_far_apart_sums() {
        with_precision(40, || {
            let big = BigFloat::from_f64(1e30);
            let tiny = BigFloat::from_f64(1e-30);
            assert_eq!(&(&big + &tiny) - &big, BigFloat::zero());
            let s = &(&BigFloat::one() + &tiny) - &BigFloat::one();
            assert!((s.to_f64() - 1e-30).abs() < 1e-41);
        });
    }

    #[test]
    fn decimal_round_trip() {
        with_precision(50, || {
            for lit in ["-1.25e-3", "3", "0.1", "12345.678e10"] {
                let x: BigFloat = lit.parse().unwrap();
                let back: BigFloat = x.to_decimal(45).parse().unwrap();
                let rel = ((&x - &back) / &x).to_f64().abs();
                assert!(rel < 1e-44, "{lit}: {rel}");
            }
            assert_eq!(BigFloat::from_i64(-42).to_decimal(10), "-4.2e1");
            assert_eq!(BigFloat::zero().to_decimal(10), "0");
            assert!("1.2.3".parse::<BigFloat>().is_err());
        });
    }

    #[test]
    fn ordering_and_f64_conversion() {
        let a = BigFloat::from_f64(-2.5);
        let b = BigFloat::from_f64(0.75);
        assert!(a < b);
        assert_eq!(a.to_f64(), -2.5);
        assert_eq!(BigFloat::from_f64(1e-200).to_f64(), 1e-200);
    }

    #[test]
    fn complex_division() {
        with_precision(60, || {
            let z = cbig_from_f64(1.0, 2.0);
            let w = cbig_from_f64(3.0, -1.0);
            let q = z.clone() / w.clone();
            let back = q * w - z;
            assert!(back.modulus() < 1e-58);
        });
    }
}
