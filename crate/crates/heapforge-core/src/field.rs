//! Exact scalar arithmetic over the two supported ground fields: the
//! rationals (arbitrary precision) and prime fields `F_p` with `p < 2^31`.
//!
//! Every scalar is stored in canonical form: rationals in lowest terms with
//! positive denominator, prime-field residues in `[0, p)`. Equality of
//! scalars is therefore structural equality, which is what all the axiom
//! checkers in this crate rely on.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A ground field: rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    /// Constructs `F_p`, rejecting composite or oversized moduli.
    pub fn prime_field(p: u32) -> Result<FieldSpec> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Trial division; sufficient for `p < 2^31`.
fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. The variant fixes the field; mixing fields in
/// arithmetic is a caller bug and panics (matrix-level operations validate
/// fields up front and report [`Error::FieldMismatch`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: FieldSpec, v: i64) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldSpec::PrimeField(p) => {
                let m = v.rem_euclid(p as i64) as u32;
                Scalar::Mod { p, value: m }
            }
        }
    }

    /// Exact fraction `num/den` in the given field (reduced on construction;
    /// in `F_p` the denominator is inverted, so it must be a unit).
    pub fn from_fraction(field: FieldSpec, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::PrimeField(_) => {
                let d = Scalar::from_integer(field, den);
                let n = Scalar::from_integer(field, num);
                Ok(&n * &d.inverse()?)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: mod_pow(*value as u64, *p as u64 - 2, *p as u64) as u32,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order in `F_p`; `None` for zero or rational scalars.
    pub fn multiplicative_order(&self) -> Option<u64> {
        match self {
            Scalar::Mod { p, value } if *value != 0 => {
                let mut acc = *value as u64;
                let p = *p as u64;
                let mut k = 1u64;
                while acc != 1 {
                    acc = acc * (*value as u64) % p;
                    k += 1;
                }
                Some(k)
            }
            _ => None,
        }
    }

    /// Parses the canonical string encoding: `num/den` (den omitted when 1)
    /// for rationals, a decimal residue for prime fields.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let bad = || Error::BadScalar {
            field,
            text: s.to_string(),
        };
        match field {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() || den.is_negative() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= p as u64 {
                    return Err(bad());
                }
                Ok(Scalar::Mod { p, value: v as u32 })
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields"
        );
    }
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: (*a as u64 * *b as u64 % *p as u64) as u32,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(7).is_ok());
        assert!(FieldSpec::prime_field(2147483647).is_ok()); // 2^31 - 1
        assert!(FieldSpec::prime_field(1).is_err());
        assert!(FieldSpec::prime_field(91).is_err()); // 7 * 13
        assert!(FieldSpec::prime_field(0).is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let q = FieldSpec::Rationals;
        let a = Scalar::from_fraction(q, 2, 4).unwrap();
        let b = Scalar::from_fraction(q, 1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
        let c = Scalar::from_fraction(q, -3, -6).unwrap();
        assert_eq!(c, b);
        assert_eq!(Scalar::from_integer(q, -5).to_string(), "-5");
        assert_eq!(Scalar::zero(q).to_string(), "0");
    }

    #[test]
    fn mod_arithmetic() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let three = Scalar::from_integer(f7, 3);
        let five = Scalar::from_integer(f7, 5);
        assert_eq!(&three * &five, Scalar::from_integer(f7, 1)); // 15 mod 7
        assert_eq!(three.inverse().unwrap(), five);
        assert_eq!((-&three).to_string(), "4");
        assert_eq!(Scalar::from_integer(f7, -1).to_string(), "6");
    }

    #[test]
    fn multiplicative_order_in_f7() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert_eq!(
            Scalar::from_integer(f7, 2).multiplicative_order(),
            Some(3) // 2^3 = 8 = 1 mod 7
        );
        assert_eq!(Scalar::from_integer(f7, 6).multiplicative_order(), Some(2));
        assert_eq!(Scalar::from_integer(f7, 3).multiplicative_order(), Some(6));
        assert_eq!(Scalar::zero(f7).multiplicative_order(), None);
    }

    #[test]
    fn parse_round_trip() {
        let q = FieldSpec::Rationals;
        for s in ["0", "7", "-7", "22/7", "-22/7"] {
            assert_eq!(Scalar::parse(q, s).unwrap().to_string(), s);
        }
        assert!(Scalar::parse(q, "1/0").is_err());
        assert!(Scalar::parse(q, "1/-2").is_err());
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(Scalar::parse(f5, "3").unwrap().to_string(), "3");
        assert!(Scalar::parse(f5, "5").is_err());
        assert!(Scalar::parse(f5, "-1").is_err());
    }
}
