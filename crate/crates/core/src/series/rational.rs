//! Big rationals and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical form: `p` for integers, `p/q` otherwise.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Exact integer `n`-th root of a non-negative (or, for odd `n`, any) integer.
pub fn int_root(a: &BigInt, n: u32) -> Option<BigInt> {
    if a.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return int_root(&-a, n).map(|r| -r);
    }
    let r = a.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *a {
        Some(r)
    } else {
        None
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalised binomial coefficient `e choose j` for rational `e`.
pub fn binomial_rational(e: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (e - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub mod serde_str {
    //! Serialize rationals as `"p/q"` strings.
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}
