//! Exact coefficient fields: rationals, Gaussian rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

pub type Rational = BigRational;

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of a rational number, `None` when the denominator vanishes.
    fn from_rational(q: &Rational) -> Option<Self>;
    fn characteristic() -> u64;
    fn imaginary_unit() -> Option<Self>;
    /// A random element with small "height" (numerators bounded by `bound`).
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;
    fn to_json(&self) -> Value;
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.clone() * o)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses "p", "-p" or "p/q".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn characteristic() -> u64 {
        0
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound.max(1));
        rational(n, d)
    }
    fn to_json(&self) -> Value {
        Value::String(rational_string(self))
    }
    fn name() -> String {
        "Q".into()
    }
}

/// Elements `re + im*i` of the field of Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Zero::zero(), One::one())
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = Zero::is_zero(&self.re);
        let im0 = Zero::is_zero(&self.im);
        match (re0, im0) {
            (_, true) => write!(f, "{}", rational_string(&self.re)),
            (true, false) => write!(f, "{}i", rational_string(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(
                        f,
                        "({}-{}i)",
                        rational_string(&self.re),
                        rational_string(&-self.im.clone())
                    )
                } else {
                    write!(
                        f,
                        "({}+{}i)",
                        rational_string(&self.re),
                        rational_string(&self.im)
                    )
                }
            }
        }
    }
}

impl Add for Gaussian {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Gaussian::new(re, im)
    }
}

impl Neg for Gaussian {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Field for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Gaussian::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if Zero::is_zero(&n) {
            None
        } else {
            Some(Gaussian::new(&self.re / &n, -(&self.im / &n)))
        }
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::new(<Rational as Field>::from_i64(n), Zero::zero())
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(Gaussian::new(q.clone(), Zero::zero()))
    }
    fn characteristic() -> u64 {
        0
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Gaussian::i())
    }
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Gaussian::new(Rational::random(rng, bound), Rational::random(rng, bound))
    }
    fn to_json(&self) -> Value {
        json!({"re": rational_string(&self.re), "im": rational_string(&self.im)})
    }
    fn name() -> String {
        "Q(i)".into()
    }
}

/// The prime field with `P` elements. `P` must be an odd prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P > 2 && P < (1 << 32) && P % 2 == 1);

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Every element of the field, in increasing order of representative.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + P - o.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0)
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let n = Fp::<P>(big_mod(q.numer(), P));
        let d = Fp::<P>(big_mod(q.denom(), P));
        d.inv().map(|d| n * d)
    }
    fn characteristic() -> u64 {
        P
    }
    fn imaginary_unit() -> Option<Self> {
        if P % 4 != 1 {
            return None;
        }
        let e = (P - 1) / 4;
        (2..P).map(|c| Fp::<P>(c).pow(e)).find(|r| (*r * *r) == -Fp::one())
    }
    fn random<R: Rng + ?Sized>(rng: &mut R, _bound: i64) -> Self {
        Fp(rng.gen_range(0..P))
    }
    fn to_json(&self) -> Value {
        Value::String(self.0.to_string())
    }
    fn name() -> String {
        format!("F{P}")
    }
}

pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
/// The Mersenne prime 2^31 - 1, used for modular rank certificates.
pub type FBig = Fp<2147483647>;
/// A second large prime for independent modular checks.
pub type FBig2 = Fp<2147483629>;

/// Errors unless `F` has characteristic different from 2.
pub fn require_odd_characteristic<F: Field>() -> crate::Result<()> {
    if F::characteristic() == 2 {
        Err(crate::Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

/// Parses a scalar: rationals everywhere, plus "i" and "a+bi" forms when the field has i.
pub fn parse_scalar<F: Field>(s: &str) -> crate::Result<F> {
    let t = s.trim();
    if let Some(q) = parse_rational(t) {
        return F::from_rational(&q).ok_or_else(|| crate::Error::Parse(format!("'{t}' is not defined in {}", F::name())));
    }
    crate::parse::parse_scalar_expr::<F>(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!((-a).value(), 4);
    }

    #[test]
    fn imaginary_units() {
        assert!(F3::imaginary_unit().is_none());
        assert!(F7::imaginary_unit().is_none());
        let i5 = F5::imaginary_unit().unwrap();
        assert_eq!(i5 * i5, -F5::one());
        let i13 = F13::imaginary_unit().unwrap();
        assert_eq!(i13 * i13, -F13::one());
        let i = Gaussian::imaginary_unit().unwrap();
        assert_eq!(i.clone() * i, -Gaussian::one());
        assert!(Rational::imaginary_unit().is_none());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::new(rational(3, 1), rational(-4, 1));
        let w = z.inv().unwrap();
        assert_eq!(z * w, Gaussian::one());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let q = rational(1, 2);
        assert_eq!(F7::from_rational(&q).unwrap(), F7::new(4));
        assert!(F3::from_rational(&rational(1, 3)).is_none());
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/9"] {
            assert_eq!(rational_string(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
    }
}
