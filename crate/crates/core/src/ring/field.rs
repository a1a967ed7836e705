//! Exact coefficient fields: the rationals and prime fields of odd
//! characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Integers modulo an odd prime.
    Prime(u32),
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Parses `QQ` or `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix('F').map(str::parse::<u32>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(Error::InvalidInput(format!("unknown field `{s}`: expected QQ or F<p>"))),
        }
    }
}

impl FieldSpec {
    /// Builds `F_p`. `p = 2` is rejected: Gram matrices divide by two.
    pub fn prime(p: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedCharacteristic(
                "characteristic 2 is not supported".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// `QQ` or `F<p>`, as written in ideal files.
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Rationals => "QQ".to_string(),
            FieldSpec::Prime(p) => format!("F{p}"),
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Coeff::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Coeff::Modular {
                value: v.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Modular {
                    value: r.to_u32().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "denominator {den} vanishes in {}",
                self.name()
            )));
        }
        Ok(&self.from_bigint(num) * &d.inv())
    }

    /// All field elements in increasing residue order (prime fields only).
    pub fn elements(&self) -> Option<Vec<Coeff>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(
                (0..*p)
                    .map(|value| Coeff::Modular { value, modulus: *p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Modular values carry their modulus so arithmetic is
/// self-contained; mixing fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Rational(r) => Coeff::Rational(r.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: pow_mod(*value as u64, (*modulus - 2) as u64, *modulus as u64) as u32,
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign used by the pretty printer: true for negative rationals. Modular
    /// values are printed as residues and never carry a sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(r) => Some(r),
            Coeff::Modular { .. } => None,
        }
    }

    /// Residue of a modular element.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Coeff::Modular { value, .. } => Some(*value),
            Coeff::Rational(_) => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

macro_rules! mismatch {
    () => {
        panic!("coefficient field mismatch")
    };
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus }, Coeff::Modular { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                Coeff::Modular {
                    value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => mismatch!(),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a - b),
            (Coeff::Modular { value: a, modulus }, Coeff::Modular { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                Coeff::Modular {
                    value: ((*a as u64 + *modulus as u64 - *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => mismatch!(),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus }, Coeff::Modular { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                Coeff::Modular {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => mismatch!(),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

/// Lowest terms, `p/q`, with integers written without a denominator.
impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert!(matches!(
            FieldSpec::prime(2),
            Err(Error::UnsupportedCharacteristic(_))
        ));
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!(FieldSpec::prime(5).unwrap().characteristic(), 5);
    }

    #[test]
    fn modular_arithmetic() {
        let f = FieldSpec::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(-1);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a * &a.inv(), f.one());
        assert_eq!(-&a, f.from_i64(4));
        assert_eq!(a.pow(6), f.one());
    }

    #[test]
    fn ratio_literals() {
        let q = FieldSpec::Rationals;
        let c = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(c.to_string(), "-3/2");
        let f3 = FieldSpec::Prime(3);
        assert!(f3.from_ratio(&BigInt::from(1), &BigInt::from(3)).is_err());
        assert_eq!(
            f3.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            f3.from_i64(2)
        );
    }
}
