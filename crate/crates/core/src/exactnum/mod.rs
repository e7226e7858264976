//! Exact real numbers of the form `Σ q_b·√b`, with `q_b` rational and `b` square-free.
//!
//! Distinct square roots of square-free integers are linearly independent over
//! the rationals, so the canonical coordinate map doubles as the value: two
//! numbers are equal exactly when their coordinates are. Sign and floor are
//! decided by interval enclosures of the square roots whose precision doubles
//! until the enclosure of the sum excludes zero.

mod expr;

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use expr::{parse_expr, ExprError};

/// Largest square-free key accepted; keeps every key factorable by trial division.
pub const MAX_KEY: u64 = 1 << 40;

const START_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("square root of an irrational number is not supported")]
    IrrationalSqrt,
    #[error("square-free part {0} exceeds the supported key range")]
    KeyTooLarge(String),
}

/// A real number `Σ q_b·√b` over square-free keys `b ≥ 1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SqrtBasisNumber {
    coords: BTreeMap<u64, BigRational>,
}

impl SqrtBasisNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut x = Self::zero();
        x.add_term(1, q);
        x
    }

    /// `√k` for a non-negative integer `k`, with square factors pulled out.
    pub fn sqrt_of(k: u64) -> Result<Self, ExactError> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let (outer, free) = square_free_split(k);
        if free > MAX_KEY {
            return Err(ExactError::KeyTooLarge(free.to_string()));
        }
        let mut x = Self::zero();
        x.add_term(free, BigRational::from_integer(outer.into()));
        Ok(x)
    }

    /// `√q` for a non-negative rational: `√(p/q) = √(p·q)/q`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeSqrt);
        }
        let radicand = q.numer() * q.denom();
        let k = radicand
            .to_u64()
            .ok_or_else(|| ExactError::KeyTooLarge(radicand.to_string()))?;
        let root = Self::sqrt_of(k)?;
        Ok(root.scale(&BigRational::new(BigInt::one(), q.denom().clone())))
    }

    /// Coordinates in ascending key order.
    pub fn coords(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coords.iter().map(|(&k, q)| (k, q))
    }

    pub fn coord(&self, key: u64) -> BigRational {
        self.coords.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// True when every coordinate outside key 1 vanishes.
    pub fn is_rational(&self) -> bool {
        self.coords.keys().all(|&k| k == 1)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coord(1))
    }

    fn add_term(&mut self, key: u64, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.coords.entry(key).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            coords: self.coords.iter().map(|(&k, c)| (k, c * q)).collect(),
        }
    }

    /// Galois conjugate flipping the sign of `√p`.
    fn conjugate(&self, p: u64) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .map(|(&k, c)| (k, if k % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse, by repeatedly multiplying with conjugates until
    /// the denominator becomes rational.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut numer = Self::one();
        let mut denom = self.clone();
        while let Some(p) = denom.coords.keys().find(|&&k| k > 1).map(|&k| smallest_prime_factor(k)) {
            let c = denom.conjugate(p);
            numer = &numer * &c;
            denom = &denom * &c;
        }
        let d = denom.coord(1);
        Ok(numer.scale(&d.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Bounds `lo ≤ x·2^bits ≤ hi`.
    fn enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let scale = BigInt::one() << bits;
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (&key, q) in &self.coords {
            let (n, d) = (q.numer(), q.denom());
            if key == 1 {
                let v = n * &scale;
                lo += v.div_floor(d);
                hi += ceil_div(&v, d);
            } else {
                // s ≤ √key·2^bits < s + 1, strict since √key is irrational
                let s = scaled_isqrt(key, bits);
                let s1 = &s + 1;
                let (a, b) = if n.is_positive() { (n * &s, n * &s1) } else { (n * &s1, n * &s) };
                lo += a.div_floor(d);
                hi += ceil_div(&b, d);
            }
        }
        (lo, hi)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.to_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// The unique integer `m` with `m ≤ x < m + 1`.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.to_rational() {
            return q.floor().to_integer();
        }
        let (lo, _) = self.enclosure(START_BITS);
        let mut m: BigInt = lo >> START_BITS;
        while (self - &Self::from_bigint(&m + 1)).signum() >= 0 {
            m += 1;
        }
        while (self - &Self::from_bigint(m.clone())).signum() < 0 {
            m -= 1;
        }
        m
    }

    /// Nearest `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.coords
            .iter()
            .map(|(&k, q)| q.to_f64().unwrap_or(f64::NAN) * (k as f64).sqrt())
            .sum()
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

thread_local! {
    static ISQRT_CACHE: RefCell<HashMap<(u64, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// `⌊√key · 2^bits⌋`.
fn scaled_isqrt(key: u64, bits: u32) -> BigInt {
    ISQRT_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((key, bits))
            .or_insert_with(|| (BigInt::from(key) << (2 * bits)).sqrt())
            .clone()
    })
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

/// Splits `k = outer²·free` with `free` square-free.
fn square_free_split(mut k: u64) -> (u64, u64) {
    let mut outer = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= k {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        outer *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= k;
    (outer, free)
}

/// Product of two square-free keys: `√a·√b = g·√(a/g · b/g)` with `g = gcd(a, b)`.
fn mul_keys(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    let key = (a / g)
        .checked_mul(b / g)
        .filter(|&k| k <= MAX_KEY)
        .expect("square-free key product exceeds supported range");
    (g, key)
}

impl Add for &SqrtBasisNumber {
    type Output = SqrtBasisNumber;

    fn add(self, rhs: &SqrtBasisNumber) -> SqrtBasisNumber {
        let mut out = self.clone();
        for (&k, q) in &rhs.coords {
            out.add_term(k, q.clone());
        }
        out
    }
}

impl Sub for &SqrtBasisNumber {
    type Output = SqrtBasisNumber;

    fn sub(self, rhs: &SqrtBasisNumber) -> SqrtBasisNumber {
        let mut out = self.clone();
        for (&k, q) in &rhs.coords {
            out.add_term(k, -q);
        }
        out
    }
}

impl Mul for &SqrtBasisNumber {
    type Output = SqrtBasisNumber;

    fn mul(self, rhs: &SqrtBasisNumber) -> SqrtBasisNumber {
        let mut out = SqrtBasisNumber::zero();
        for (&a, qa) in &self.coords {
            for (&b, qb) in &rhs.coords {
                let (g, key) = mul_keys(a, b);
                out.add_term(key, qa * qb * BigRational::from_integer(g.into()));
            }
        }
        out
    }
}

impl Neg for &SqrtBasisNumber {
    type Output = SqrtBasisNumber;

    fn neg(self) -> SqrtBasisNumber {
        SqrtBasisNumber {
            coords: self.coords.iter().map(|(&k, q)| (k, -q)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SqrtBasisNumber {
            type Output = SqrtBasisNumber;
            fn $m(self, rhs: SqrtBasisNumber) -> SqrtBasisNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SqrtBasisNumber> for SqrtBasisNumber {
            type Output = SqrtBasisNumber;
            fn $m(self, rhs: &SqrtBasisNumber) -> SqrtBasisNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SqrtBasisNumber {
    type Output = SqrtBasisNumber;

    fn neg(self) -> SqrtBasisNumber {
        -&self
    }
}

impl Ord for SqrtBasisNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for SqrtBasisNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical form, e.g. `3/2 - 1/2*sqrt(5)`; it parses back to the same value.
impl fmt::Display for SqrtBasisNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, q)) in self.coords.iter().enumerate() {
            let mag = q.abs();
            let body = match (k, mag.is_one()) {
                (1, _) => fmt_rational(&mag),
                (_, true) => format!("sqrt({k})"),
                (_, false) => format!("{}*sqrt({k})", fmt_rational(&mag)),
            };
            match (i, q.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SqrtBasisNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtBasisNumber({self})")
    }
}

impl FromStr for SqrtBasisNumber {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_expr(s)
    }
}

impl Serialize for SqrtBasisNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SqrtBasisNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> SqrtBasisNumber {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r2 = SqrtBasisNumber::sqrt_of(2).unwrap();
        assert_eq!(&r2 * &r2, SqrtBasisNumber::from_integer(2));
        let theta = n("(1+sqrt(5))/2");
        assert_eq!(&theta - &SqrtBasisNumber::one(), n("(-1+sqrt(5))/2"));
        let t1 = n("(-1+sqrt(5))/2");
        assert_eq!(&t1 * &t1, n("(3-sqrt(5))/2"));
    }

    #[test]
    fn sqrt_pulls_out_squares() {
        assert_eq!(SqrtBasisNumber::sqrt_of(12).unwrap(), n("2*sqrt(3)"));
        assert_eq!(SqrtBasisNumber::sqrt_of(9).unwrap(), SqrtBasisNumber::from_integer(3));
        assert_eq!(
            SqrtBasisNumber::sqrt_rational(&BigRational::new(1.into(), 2.into())).unwrap(),
            n("sqrt(2)/2")
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(SqrtBasisNumber::zero().signum(), 0);
        assert_eq!(n("sqrt(2) + sqrt(3) - sqrt(6)").signum(), 1);
        assert_eq!(n("(3-sqrt(5))/2 - 1").signum(), -1);
    }

    #[test]
    fn floor_examples() {
        assert_eq!(n("sqrt(2)").floor(), 1.into());
        assert_eq!(n("(3-sqrt(5))/2").floor(), 0.into());
        assert_eq!(n("-sqrt(2)").floor(), (-2).into());
        assert_eq!(n("7/2").floor(), 3.into());
        assert_eq!(n("-7/2").floor(), (-4).into());
        assert_eq!(n("3").floor(), 3.into());
    }

    #[test]
    fn inverse_over_two_primes() {
        let x = n("1 + sqrt(2) + sqrt(3)");
        assert_eq!(&x * &x.inverse().unwrap(), SqrtBasisNumber::one());
        assert_eq!(SqrtBasisNumber::zero().inverse(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn canonical_form_round_trips() {
        for s in ["0", "3/2 - 1/2*sqrt(5)", "-sqrt(2) + sqrt(3)", "-7", "2/3*sqrt(6)"] {
            assert_eq!(n(s).to_string(), s);
            assert_eq!(n(&n(s).to_string()), n(s));
        }
    }

    #[test]
    fn tiny_rational_difference_still_resolves() {
        // sqrt(2) vs a 40-digit rational approximation of it
        let approx = n("14142135623730950488016887242096980785697/10000000000000000000000000000000000000000");
        assert_eq!((&n("sqrt(2)") - &approx).signum(), -1);
    }
}
