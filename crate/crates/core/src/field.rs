//! Exact scalar arithmetic over the two supported coefficient fields:
//! prime fields F_p (canonical representatives in [0, p)) and the
//! rationals (arbitrary-precision, always kept in lowest terms).

use crate::error::{Error, Result};
use num::{bigint::BigInt, rational::BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest admissible prime. Products of two canonical representatives
/// must fit in u128 without overflow; staying below 2^31 keeps every
/// intermediate comfortably inside u64 arithmetic.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

/// One field element. `Fp` values are canonical representatives in
/// [0, p); the modulus lives in the ambient `FieldSpec`, not here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(Box<BigRational>),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime { p } => {
                if p < 2 || p >= MAX_PRIME {
                    return Err(Error::invalid(format!(
                        "field characteristic {p} out of range [2, 2^31)"
                    )));
                }
                if !is_prime(p) {
                    return Err(Error::invalid(format!("{p} is not prime")));
                }
                Ok(())
            }
            FieldSpec::Rational => Ok(()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime { p } => p,
            FieldSpec::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime { .. })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime { .. } => Scalar::Fp(0),
            FieldSpec::Rational => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime { .. } => Scalar::Fp(1),
            FieldSpec::Rational => Scalar::Rat(Box::new(BigRational::one())),
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => Scalar::Fp(n.rem_euclid(p as i64) as u64),
            FieldSpec::Rational => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    /// Parses a decimal integer or an `a/b` fraction. Fractions over F_p
    /// are admitted as long as the denominator is a unit mod p.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::invalid(format!("cannot parse scalar literal {text:?}"));
        if let Some((num_s, den_s)) = text.split_once('/') {
            let n = BigInt::from_str(num_s.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den_s.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in {text:?}")));
            }
            match self {
                FieldSpec::Rational => Ok(Scalar::Rat(Box::new(BigRational::new(n, d)))),
                FieldSpec::Prime { p } => {
                    let a = bigint_mod(&n, *p);
                    let b = bigint_mod(&d, *p);
                    let inv = self.inv(&Scalar::Fp(b)).map_err(|_| {
                        Error::invalid(format!("denominator of {text:?} vanishes mod {p}"))
                    })?;
                    Ok(self.mul(&Scalar::Fp(a), &inv))
                }
            }
        } else {
            let n = BigInt::from_str(text).map_err(|_| bad())?;
            match self {
                FieldSpec::Rational => Ok(Scalar::Rat(Box::new(BigRational::from_integer(n)))),
                FieldSpec::Prime { p } => Ok(Scalar::Fp(bigint_mod(&n, *p))),
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime { p }, Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = x + y;
                Scalar::Fp(if s >= *p { s - p } else { s })
            }
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() + y.as_ref()))
            }
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime { p }, Scalar::Fp(x)) => {
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(Box::new(-x.as_ref())),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime { p }, Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() * y.as_ref()))
            }
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::invariant("inverse of zero"));
        }
        match (self, a) {
            (FieldSpec::Prime { p }, Scalar::Fp(x)) => Ok(Scalar::Fp(mod_inverse(*x, *p))),
            (FieldSpec::Rational, Scalar::Rat(x)) => {
                Ok(Scalar::Rat(Box::new(x.as_ref().recip())))
            }
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All field elements in canonical order. Finite fields only.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            FieldSpec::Prime { p } => Ok((0..p).map(Scalar::Fp).collect()),
            FieldSpec::Rational => Err(Error::Unsupported(
                "element enumeration needs a finite field".into(),
            )),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let m = n % BigInt::from(p);
    let m = if m < BigInt::zero() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("reduced residue fits u64")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p) with p prime and a in (0, p).
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
