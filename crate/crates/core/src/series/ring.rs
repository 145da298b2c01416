use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};

/// Commutative Q-algebra used as a coefficient ring.
///
/// All arithmetic is exact. Implementations exist for [`Rational`],
/// [`super::Gaussian`], [`super::DeltaEpsilon`] and [`super::Laurent`] over
/// any of those, which is what lets one genus engine produce numeric and
/// symbolic answers.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Multiplicative inverse, when it exists.
    fn try_inv(&self) -> Option<Self>;

    /// An exact `n`-th root, if one exists in the ring.
    fn exact_root(&self, n: u32) -> Option<Self> {
        if n == 1 || self.is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn exact_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if self.is_negative() && n % 2 == 0 {
            return None;
        }
        let num = rational::int_root(self.numer(), n)?;
        let den = rational::int_root(self.denom(), n)?;
        Some(Rational::new(num, den))
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}
