//! Exact scalars.
//!
//! Every computation in the crate is generic over [`Scalar`]. Two implementations are provided:
//! arbitrary-precision rationals ([`Rational`]) and residues modulo a runtime prime ([`Fp`]).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational numbers, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest prime modulus accepted for [`Field::Prime`].
pub const MAX_PRIME: u64 = 1 << 32;

/// The ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}

impl Field {
    /// Checked constructor for `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unknown field `{0}` (expected `Q` or `F<p>`)")]
    UnknownField(String),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("scalar type does not support field {0}")]
    Unsupported(Field),
    #[error("denominator of {0} vanishes in F{1}")]
    VanishingDenominator(BigRational, u64),
    #[error("mixed-field operation: F{0} and F{1}")]
    Mixed(u64, u64),
}

/// Field elements with exact arithmetic.
///
/// Implementors must be exact: `a / b * b == a` for every nonzero `b`.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Whether elements of this type can represent `field`.
    fn supports(field: Field) -> bool;

    /// Image of a rational number in `field`.
    fn from_rational(value: &BigRational, field: Field) -> Result<Self, FieldError>;

    fn from_i64(value: i64, field: Field) -> Result<Self, FieldError> {
        Self::from_rational(&BigRational::from_integer(BigInt::from(value)), field)
    }

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// A rational representative (the residue itself for `F_p`).
    fn to_rational(&self) -> BigRational;

    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self -= &t;
    }
}

impl Scalar for BigRational {
    fn supports(field: Field) -> bool {
        field == Field::Rational
    }

    fn from_rational(value: &BigRational, field: Field) -> Result<Self, FieldError> {
        match field {
            Field::Rational => Ok(value.clone()),
            other => Err(FieldError::Unsupported(other)),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// A residue modulo a prime chosen at runtime.
///
/// Constants produced by [`Zero::zero`] and [`One::one`] carry no modulus; they adopt the
/// modulus of the first residue they are combined with. Combining residues of two different
/// moduli panics; use [`Fp::checked_add`] and friends to get an error instead.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    repr: FpRepr,
}

#[derive(Clone, Copy, Debug)]
enum FpRepr {
    Const(i64),
    Residue { value: u64, modulus: u64 },
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Fp {
            repr: FpRepr::Residue { value: v, modulus },
        }
    }

    /// The modulus, `None` for unbound constants.
    pub fn modulus(&self) -> Option<u64> {
        match self.repr {
            FpRepr::Const(_) => None,
            FpRepr::Residue { modulus, .. } => Some(modulus),
        }
    }

    /// Canonical representative in `[0, p)`; unbound constants report their integer value.
    pub fn value(&self) -> i64 {
        match self.repr {
            FpRepr::Const(c) => c,
            FpRepr::Residue { value, .. } => value as i64,
        }
    }

    fn align(a: Fp, b: Fp) -> Result<(FpRepr, FpRepr), FieldError> {
        use FpRepr::*;
        match (a.repr, b.repr) {
            (Residue { modulus: p, .. }, Residue { modulus: q, .. }) if p != q => {
                Err(FieldError::Mixed(p, q))
            }
            (Const(c), Residue { modulus, .. }) => Ok((Fp::new(c, modulus).repr, b.repr)),
            (Residue { modulus, .. }, Const(c)) => Ok((a.repr, Fp::new(c, modulus).repr)),
            pair => Ok(pair),
        }
    }

    fn combine(
        self,
        other: Fp,
        on_const: impl Fn(i64, i64) -> Option<i64>,
        on_residue: impl Fn(u64, u64, u64) -> u64,
    ) -> Result<Fp, FieldError> {
        use FpRepr::*;
        let repr = match Fp::align(self, other)? {
            (Const(a), Const(b)) => {
                Const(on_const(a, b).expect("unbound F_p constant arithmetic out of range"))
            }
            (Residue { value: a, modulus }, Residue { value: b, .. }) => Residue {
                value: on_residue(a, b, modulus),
                modulus,
            },
            _ => unreachable!(),
        };
        Ok(Fp { repr })
    }

    pub fn checked_add(self, other: Fp) -> Result<Fp, FieldError> {
        self.combine(other, i64::checked_add, |a, b, p| {
            ((a as u128 + b as u128) % p as u128) as u64
        })
    }

    pub fn checked_sub(self, other: Fp) -> Result<Fp, FieldError> {
        self.combine(other, i64::checked_sub, |a, b, p| {
            ((a as u128 + p as u128 - b as u128) % p as u128) as u64
        })
    }

    pub fn checked_mul(self, other: Fp) -> Result<Fp, FieldError> {
        self.combine(other, i64::checked_mul, |a, b, p| {
            ((a as u128 * b as u128) % p as u128) as u64
        })
    }

    pub fn checked_div(self, other: Fp) -> Result<Fp, FieldError> {
        let inv = other.inverse().expect("division by zero in F_p");
        self.checked_mul(inv)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match Fp::align(*self, *other) {
            Ok((FpRepr::Const(a), FpRepr::Const(b))) => a == b,
            Ok((FpRepr::Residue { value: a, .. }, FpRepr::Residue { value: b, .. })) => a == b,
            _ => false,
        }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            repr: FpRepr::Const(0),
        }
    }

    fn is_zero(&self) -> bool {
        self.value() == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            repr: FpRepr::Const(1),
        }
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        Fp::zero().checked_sub(self).unwrap()
    }
}

macro_rules! fp_binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr for Fp {
            type Output = Fp;

            fn $method(self, rhs: Fp) -> Fp {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<'a> $assign_tr<&'a Fp> for Fp {
            fn $assign(&mut self, rhs: &'a Fp) {
                *self = self.$checked(*rhs).unwrap_or_else(|e| panic!("{e}"));
            }
        }
    };
}

fp_binop!(Add, add, checked_add, AddAssign, add_assign);
fp_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
fp_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Div for Fp {
    type Output = Fp;

    fn div(self, rhs: Fp) -> Fp {
        self.checked_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Scalar for Fp {
    fn supports(field: Field) -> bool {
        matches!(field, Field::Prime(_))
    }

    fn from_rational(value: &BigRational, field: Field) -> Result<Self, FieldError> {
        let p = match field {
            Field::Prime(p) => p,
            other => return Err(FieldError::Unsupported(other)),
        };
        let modulus = BigInt::from(p);
        let reduce = |x: &BigInt| x.mod_floor(&modulus).to_u64().unwrap();
        let num = reduce(value.numer());
        let den = reduce(value.denom());
        if den == 0 {
            return Err(FieldError::VanishingDenominator(value.clone(), p));
        }
        let den_inv = pow_mod(den, p - 2, p);
        Ok(Fp {
            repr: FpRepr::Residue {
                value: ((num as u128 * den_inv as u128) % p as u128) as u64,
                modulus: p,
            },
        })
    }

    fn inverse(&self) -> Option<Self> {
        match self.repr {
            FpRepr::Const(c) if c == 1 || c == -1 => Some(*self),
            FpRepr::Const(_) => None,
            FpRepr::Residue { value: 0, .. } => None,
            FpRepr::Residue { value, modulus } => Some(Fp {
                repr: FpRepr::Residue {
                    value: pow_mod(value, modulus - 2, modulus),
                    modulus,
                },
            }),
        }
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.value()))
    }
}

/// Writes `q` as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_are_reduced() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&x), "-3/2");
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("F8".parse::<Field>(), Err(FieldError::NotPrime(8)));
        assert!("R".parse::<Field>().is_err());
        assert_eq!(Field::Prime(101).to_string(), "F101");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = Fp::from_i64(3, f).unwrap();
        let b = Fp::from_i64(5, f).unwrap();
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b * b), a);
        assert_eq!(a.inverse().unwrap() * a, Fp::one());
        assert_eq!(Fp::from_rational(&q(1, 2), f).unwrap().value(), 4);
        assert!(Fp::from_rational(&q(1, 7), f).is_err());
        assert_eq!(Fp::zero() + a, a);
        assert!(Fp::zero().inverse().is_none());
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        let a = Fp::new(1, 5);
        let b = Fp::new(1, 7);
        assert_eq!(a.checked_add(b), Err(FieldError::Mixed(5, 7)));
        assert!(std::panic::catch_unwind(|| a * b).is_err());
    }

    #[test]
    fn rational_cannot_represent_prime_field() {
        assert!(Rational::from_i64(1, Field::Prime(3)).is_err());
        assert!(Fp::from_i64(1, Field::Rational).is_err());
    }
}
