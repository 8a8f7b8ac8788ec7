//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! A [`Scalar`] always knows which field it lives in. Mixing fields in the
//! checked operations (`try_add`, ...) yields [`Error::FieldMismatch`]; the
//! operator impls (`+`, `*`, ...) panic instead, since inside the solvers all
//! scalars are built from a single [`FieldSpec`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps residue products inside `u64`.
const MAX_MODULUS: u64 = 1 << 31;

/// The ground field: ℚ or 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    // 0 encodes the rationals.
    modulus: u64,
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec { modulus: 0 }
    }

    /// 𝔽_p for a prime `p ≥ 5`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::prime_with_override(p, false)
    }

    /// 𝔽_p; `allow_small_char` additionally admits `p = 3`. Characteristic 2
    /// is always refused.
    pub fn prime_with_override(p: u64, allow_small_char: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidCharacteristic(format!("{p} is not prime")));
        }
        if p >= MAX_MODULUS {
            return Err(Error::InvalidCharacteristic(format!(
                "{p} exceeds the supported modulus bound {MAX_MODULUS}"
            )));
        }
        match p {
            2 => Err(Error::InvalidCharacteristic(
                "characteristic 2 is not supported".into(),
            )),
            3 if !allow_small_char => Err(Error::InvalidCharacteristic(
                "characteristic 3 requires the small-characteristic override".into(),
            )),
            _ => Ok(FieldSpec { modulus: p }),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.modulus == 0
    }

    /// Characteristic of the field (0 for ℚ).
    pub fn characteristic(&self) -> u64 {
        self.modulus
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(*self, n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "Fp:{}", self.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Self {
        if field.is_rational() {
            Scalar(Repr::Rational(BigRational::from_integer(n.into())))
        } else {
            let p = field.modulus;
            Scalar(Repr::Residue {
                value: n.rem_euclid(p as i64) as u64,
                p,
            })
        }
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Self {
        if field.is_rational() {
            Scalar(Repr::Rational(BigRational::from_integer(n.clone())))
        } else {
            let p = field.modulus;
            let r = n.mod_floor(&BigInt::from(p));
            Scalar(Repr::Residue {
                value: r.to_u64().expect("residue below modulus"),
                p,
            })
        }
    }

    /// `num / den` in the given field.
    pub fn from_fraction(field: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if field.is_rational() {
            Ok(Scalar(Repr::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))))
        } else {
            Self::from_bigint(field, num).try_div(&Self::from_bigint(field, den))
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar(Repr::Rational(q))
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::rationals(),
            Repr::Residue { p, .. } => FieldSpec { modulus: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub(crate) fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Residue { value, .. } => Some(*value),
            Repr::Rational(_) => None,
        }
    }

    pub(crate) fn residue_of(value: u64, p: u64) -> Self {
        Scalar(Repr::Residue {
            value: value % p,
            p,
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    /// Map a rational into `field` (identity when `field` is ℚ). Fails when a
    /// denominator vanishes modulo `p`, or when `self` is already a residue of
    /// a different field.
    pub fn reduce_into(&self, field: FieldSpec) -> Result<Self> {
        match &self.0 {
            Repr::Rational(q) => Self::from_fraction(field, q.numer(), q.denom()),
            Repr::Residue { .. } if self.field() == field => Ok(self.clone()),
            Repr::Residue { .. } => Err(Error::FieldMismatch(self.field(), field)),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                Scalar::residue_of(a + b, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                Scalar::residue_of(a * b, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Residue { value, p } => Scalar::residue_of(inv_mod(*value, *p), *p),
        })
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Residue { value, p } => Scalar::residue_of(p - value, *p),
        }
    }

    /// Parse a coefficient string: `"num"` or `"num/den"`. Over 𝔽_p the
    /// value is reduced into `[0, p)`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            column: 0,
            message: format!("bad coefficient {text:?}: {m}"),
        };
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad("numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| bad("denominator"))?;
        Self::from_fraction(field, &num, &den).map_err(|e| bad(&e.to_string()))
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .expect("scalar operands from different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(FieldSpec::rationals(), &n.into(), &d.into()).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 3)).to_string(), "5/6");
    }

    #[test]
    fn residue_inverse() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.int(2).inv().unwrap(), f5.int(3));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(
            FieldSpec::rationals().zero().inv(),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(matches!(
            f5.one().try_add(&f7.one()),
            Err(Error::FieldMismatch(..))
        ));
        assert!(matches!(
            f5.one().try_mul(&FieldSpec::rationals().one()),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = q(4, -6);
        let r = x.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn characteristic_gate() {
        assert!(FieldSpec::prime(3).is_err());
        assert!(FieldSpec::prime_with_override(3, true).is_ok());
        assert!(FieldSpec::prime_with_override(2, true).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(7).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(Scalar::parse(f7, "-1").unwrap().to_string(), "6");
        assert_eq!(Scalar::parse(f7, "1/2").unwrap().to_string(), "4");
        let qq = Scalar::parse(FieldSpec::rationals(), "-6/4").unwrap();
        assert_eq!(qq.to_string(), "-3/2");
        assert!(Scalar::parse(f7, "1/7").is_err());
        assert!(Scalar::parse(f7, "abc").is_err());
    }
}
