//! Exact rational numbers.
//!
//! [`Scalar`] keeps values that fit in a pair of `i64` inline and spills to a
//! heap-allocated [`BigRational`] otherwise. The representation is canonical:
//! lowest terms, positive denominator, and the inline form whenever the value
//! fits, so derived equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Scalar(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Small { num: v, den: 1 })
    }

    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    /// Fallible constructor used by parsers.
    pub fn try_new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let negative = (num < 0) != (den < 0);
        let n = num.unsigned_abs();
        let d = den.unsigned_abs();
        let g = gcd_u128(n, d);
        let (n, d) = (n / g, d / g);
        if n <= i64::MAX as u128 && d <= i64::MAX as u128 {
            let n = n as i64;
            Scalar(Repr::Small {
                num: if negative { -n } else { n },
                den: d as i64,
            })
        } else {
            let mut bn = BigInt::from(n);
            if negative {
                bn = -bn;
            }
            Scalar(Repr::Big(Box::new(BigRational::new_raw(bn, BigInt::from(d)))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces; `new_raw` callers must pass reduced values.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Scalar(Repr::Small { num: n, den: d });
        }
        Scalar(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => match b.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        Scalar::one() / self
    }

    pub fn floor(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Scalar::from_int(num.div_euclid(*den)),
            Repr::Big(b) => Self::from_big(b.floor()),
        }
    }

    pub fn ceil(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => {
                let q = num.div_euclid(*den);
                Scalar::from_int(if num.rem_euclid(*den) == 0 { q } else { q + 1 })
            }
            Repr::Big(b) => Self::from_big(b.ceil()),
        }
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &self.floor()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// The value as an `i64` if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            Repr::Small { .. } => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

/// Greatest common divisor of two integers (both given as integral scalars).
pub(crate) fn int_gcd(a: &Scalar, b: &Scalar) -> Scalar {
    match (&a.0, &b.0) {
        (Repr::Small { num: x, den: 1 }, Repr::Small { num: y, den: 1 }) => {
            Scalar::from_i128(gcd_u64(x.unsigned_abs(), y.unsigned_abs()) as i128, 1)
        }
        _ => Scalar::from(a.numer().gcd(&b.numer())),
    }
}

/// Least common multiple of two positive integers.
pub(crate) fn int_lcm(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    (a / &int_gcd(a, b) * b).abs()
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if let (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) = (&a.0, &b.0) {
        if *ad == 1 && *bd == 1 {
            if let Some(s) = an.checked_add(*bn) {
                return Scalar::from_int(s);
            }
        }
        let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
        if let Some(n) = (an * bd).checked_add(bn * ad) {
            return Scalar::from_i128(n, ad * bd);
        }
    }
    Scalar::from_big(a.to_big() + b.to_big())
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if let (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) = (&a.0, &b.0) {
        if *an == 0 || *bn == 0 {
            return Scalar::zero();
        }
        let g1 = gcd_u64(an.unsigned_abs(), bd.unsigned_abs()) as i128;
        let g2 = gcd_u64(bn.unsigned_abs(), ad.unsigned_abs()) as i128;
        let n = (*an as i128 / g1) * (*bn as i128 / g2);
        let d = (*ad as i128 / g2) * (*bd as i128 / g1);
        if let (Ok(n), Ok(d)) = (i64::try_from(n), i64::try_from(d)) {
            return Scalar(Repr::Small { num: n, den: d });
        }
        return Scalar::from_i128(n, d);
    }
    Scalar::from_big(a.to_big() * b.to_big())
}

fn div_impl(a: &Scalar, b: &Scalar) -> Scalar {
    assert!(!b.is_zero(), "division by zero");
    if let Repr::Small { num, den } = &b.0 {
        // num != i64::MIN keeps the swap exact
        if *num != i64::MIN {
            let inv = if *num < 0 {
                Scalar(Repr::Small { num: -*den, den: -*num })
            } else {
                Scalar(Repr::Small { num: *den, den: *num })
            };
            return mul_impl(a, &inv);
        }
    }
    Scalar::from_big(a.to_big() / b.to_big())
}

fn neg_impl(a: &Scalar) -> Scalar {
    match &a.0 {
        Repr::Small { num, den } if *num != i64::MIN => Scalar(Repr::Small { num: -*num, den: *den }),
        _ => Scalar::from_big(-a.to_big()),
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident, $atr:ident, $amethod:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(self, &rhs)
            }
        }
        impl $atr<&Scalar> for Scalar {
            fn $amethod(&mut self, rhs: &Scalar) {
                *self = $imp(self, rhs);
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $amethod(&mut self, rhs: Scalar) {
                *self = $imp(self, &rhs);
            }
        }
    };
}

fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
    add_impl(a, &neg_impl(b))
}

binop!(Add, add, add_impl, AddAssign, add_assign);
binop!(Sub, sub, sub_impl, SubAssign, sub_assign);
binop!(Mul, mul, mul_impl, MulAssign, mul_assign);
binop!(Div, div, div_impl, DivAssign, div_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(self)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::from_i128(v as i128, 1)
    }
}

impl From<usize> for Scalar {
    fn from(v: usize) -> Self {
        Scalar::from_i128(v as i128, 1)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_big(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        // Normalize in case the caller built it with new_raw.
        Scalar::from_big(BigRational::new(v.numer().clone(), v.denom().clone()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with q > 0")]
pub struct ParseScalarError(pub String);

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    Some(if s.starts_with('-') { -v } else { v })
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p` or `p/q` where `p` may carry a leading `-` and `q` is a
    /// positive decimal integer. Non-reduced input is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                parse_int(n, true).ok_or_else(err)?,
                parse_int(d, false).ok_or_else(err)?,
            ),
            None => (parse_int(s, true).ok_or_else(err)?, BigInt::one()),
        };
        if !d.is_positive() {
            return Err(err());
        }
        Scalar::try_new(n, d).ok_or_else(err)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(Scalar::new(2, 4), s("1/2"));
        assert_eq!(Scalar::new(3, -6), s("-1/2"));
        assert_eq!(Scalar::new(0, -5).to_string(), "0");
        assert_eq!(Scalar::new(6, 3).to_string(), "2");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in [
            "", "/", "1/", "/2", "1/0", "1/-2", "--1", "+1", "1.5", "1/2/3", " 1", "a",
        ] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should be rejected");
        }
        assert_eq!(s("-7/14"), Scalar::new(-1, 2));
    }

    #[test]
    fn overflow_spills_to_big_and_demotes_back() {
        let big = Scalar::from_int(i64::MAX) + Scalar::from_int(i64::MAX);
        assert!(matches!(big.0, Repr::Big(_)));
        let back = &big - &Scalar::from_int(i64::MAX);
        assert!(matches!(back.0, Repr::Small { .. }));
        assert_eq!(back, Scalar::from_int(i64::MAX));
        let m = Scalar::from_int(i64::MIN);
        assert_eq!(-(-m.clone()), m);
        assert_eq!((m.clone() / Scalar::from_int(i64::MIN)), Scalar::one());
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(s("5/2").ceil(), Scalar::from_int(3));
        assert_eq!(s("5/2").floor(), Scalar::from_int(2));
        assert_eq!(s("-5/2").floor(), Scalar::from_int(-3));
        assert_eq!(s("-5/2").ceil(), Scalar::from_int(-2));
        assert_eq!(s("-5/2").fract(), s("1/2"));
        assert_eq!(Scalar::from_int(4).ceil(), Scalar::from_int(4));
    }

    #[test]
    fn gcd_lcm_helpers() {
        assert_eq!(
            int_gcd(&Scalar::from_int(-12), &Scalar::from_int(18)),
            Scalar::from_int(6)
        );
        assert_eq!(
            int_lcm(&Scalar::from_int(4), &Scalar::from_int(6)),
            Scalar::from_int(12)
        );
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Scalar::new(n, d)),
            (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Scalar::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_round_trip(a in arb_scalar(), b in arb_scalar()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&(&a * &b) / &b, a);
        }

        #[test]
        fn matches_big_rational(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
        }

        #[test]
        fn display_parse_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
