//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Every arithmetic operation checks for overflow and promotes to a heap
//! allocated [`BigInt`] when the result leaves the `i64` range. Results that
//! fit back into an `i64` are demoted again, so `Small` is the canonical
//! representation whenever possible and derived equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    #[inline]
    pub const fn zero() -> Self {
        Int::Small(0)
    }

    #[inline]
    pub const fn one() -> Self {
        Int::Small(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    #[inline]
    fn from_i128(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(Box::new(BigInt::from(v))),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_i128((*v as i128).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Quotient rounded toward zero. Panics on division by zero.
    pub fn div_trunc(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(q) => Int::Small(q),
                None => Int::from_i128(*a as i128 / *b as i128),
            },
            _ => Int::from_big(self.to_bigint() / d.to_bigint()),
        }
    }

    /// Floor division and nonnegative-for-positive-divisor remainder.
    pub fn div_mod_floor(&self, d: &Int) -> (Int, Int) {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => {
                let (q, r) = (*a as i128).div_mod_floor(&(*b as i128));
                (Int::from_i128(q), Int::from_i128(r))
            }
            _ => {
                let (q, r) = self.to_bigint().div_mod_floor(&d.to_bigint());
                (Int::from_big(q), Int::from_big(r))
            }
        }
    }

    /// Remainder in `[0, |d|)`.
    pub fn mod_floor(&self, d: &Int) -> Int {
        let m = d.abs();
        self.div_mod_floor(&m).1
    }

    pub fn is_divisible_by(&self, d: &Int) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => (*a as i128) % (*b as i128) == 0,
            _ => (self.to_bigint() % d.to_bigint()).is_zero(),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128((*a as i128).gcd(&(*b as i128))),
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Returns `(g, x, y)` with `self·x + other·y = g = gcd ≥ 0`.
    pub fn ext_gcd(&self, other: &Int) -> (Int, Int, Int) {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let e = (*a as i128).extended_gcd(&(*b as i128));
                let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
                if g < 0 {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                (Int::from_i128(g), Int::from_i128(x), Int::from_i128(y))
            }
            _ => {
                let e = self.to_bigint().extended_gcd(&other.to_bigint());
                let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                (Int::from_big(g), Int::from_big(x), Int::from_big(y))
            }
        }
    }

    /// `self -= q * b`, the inner step of every elimination loop.
    #[inline]
    pub fn sub_mul_assign(&mut self, q: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(qq), Int::Small(bb)) = (&*self, q, b) {
            let p = *qq as i128 * *bb as i128;
            if let Some(v) = (*s as i128).checked_sub(p) {
                *self = Int::from_i128(v);
                return;
            }
        }
        let v = self.to_bigint() - q.to_bigint() * b.to_bigint();
        *self = Int::from_big(v);
    }

    /// `self += q * b`.
    #[inline]
    pub fn add_mul_assign(&mut self, q: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(qq), Int::Small(bb)) = (&*self, q, b) {
            let p = *qq as i128 * *bb as i128;
            if let Some(v) = (*s as i128).checked_add(p) {
                *self = Int::from_i128(v);
                return;
            }
        }
        let v = self.to_bigint() + q.to_bigint() * b.to_bigint();
        *self = Int::from_big(v);
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from_i128(v as i128)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 + *b as i128),
            },
            _ => Int::from_big(self.to_bigint() + rhs.to_bigint()),
        }
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_sub(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 - *b as i128),
            },
            _ => Int::from_big(self.to_bigint() - rhs.to_bigint()),
        }
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 * *b as i128),
            },
            _ => Int::from_big(self.to_bigint() * rhs.to_bigint()),
        }
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(a) => match a.checked_neg() {
                Some(v) => Int::Small(v),
                None => Int::from_i128(-(*a as i128)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::from_big(BigInt::from_str(s.trim())?))
    }
}

// Small values serialize as JSON numbers, large ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Int::Small(v)),
            Repr::Str(s) => Int::from_str(&s).map_err(serde::de::Error::custom),
        }
    }
}
