//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Default prime used by the randomized corpus.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Prime field `F_p`; rejects composite moduli and `p >= 2^31`.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(Box::new(BigRational::from_integer(v.into()))),
            Field::Prime(p) => FieldElem::Modular {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(Box::new(BigRational::from_integer(v.clone()))),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElem::Modular {
                    value: r.to_u32().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.from_bigint(num).mul(&inv))
    }

    /// Uniform element for `F_p`; for the rationals a small integer in `[-range, range]`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, range: i64) -> FieldElem {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-range..=range)),
            Field::Prime(p) => FieldElem::Modular {
                value: rng.gen_range(0..p),
                modulus: p,
            },
        }
    }

    /// Nonzero random element.
    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R, range: i64) -> FieldElem {
        loop {
            let c = self.random(rng, range);
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn contains(self, c: &FieldElem) -> bool {
        c.field() == self
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of [`Field`]. Rationals are kept in lowest terms (positive
/// denominator); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(Box<BigRational>),
    Modular { value: u32, modulus: u32 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Modular { value, .. } => *value == 0,
        }
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Modular { value, .. } => *value == 1,
        }
    }

    #[inline]
    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2, "field mismatch");
                let s = *a as u64 + *b as u64;
                let m = *modulus as u64;
                FieldElem::Modular {
                    value: (if s >= m { s - m } else { s }) as u32,
                    modulus: *modulus,
                }
            }
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(Box::new(&**a + &**b)),
            _ => panic!("field mismatch"),
        }
    }

    #[inline]
    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            FieldElem::Rational(a) => FieldElem::Rational(Box::new(-&**a)),
        }
    }

    #[inline]
    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    #[inline]
    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2, "field mismatch");
                FieldElem::Modular {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(Box::new(&**a * &**b)),
            _ => panic!("field mismatch"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Modular { value, modulus } => {
                let e = (*value as i64).extended_gcd(&(*modulus as i64));
                FieldElem::Modular {
                    value: e.x.rem_euclid(*modulus as i64) as u32,
                    modulus: *modulus,
                }
            }
            FieldElem::Rational(a) => FieldElem::Rational(Box::new(a.recip())),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Option<FieldElem> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Representative integer for display: rationals print as `p/q`, residues
    /// in the symmetric range `(-p/2, p/2]`.
    pub fn is_negative_repr(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_negative(),
            FieldElem::Modular { value, modulus } => *value > modulus / 2,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Modular { value, modulus } => {
                if *value > modulus / 2 {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}
