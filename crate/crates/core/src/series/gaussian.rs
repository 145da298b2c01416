use std::fmt;

use super::rational::{self, Rational};
use super::Ring;

/// Element `re + im·i` of Q(i).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(rational::int(0), rational::int(1))
    }

    pub fn real(re: Rational) -> Self {
        Gaussian::new(re, rational::int(0))
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let p = Ring::pow(self, e.unsigned_abs() as u32);
        if e < 0 {
            p.try_inv()
        } else {
            Some(p)
        }
    }
}

impl Ring for Gaussian {
    fn zero() -> Self {
        Gaussian::real(rational::int(0))
    }
    fn one() -> Self {
        Gaussian::real(rational::int(1))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn from_rational(q: &Rational) -> Self {
        Gaussian::real(q.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rational::format(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}*i", rational::format(&self.im))
        } else {
            write!(f, "{}+{}*i", rational::format(&self.re), rational::format(&self.im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gaussian::i();
        assert_eq!(i.mul(&i), Gaussian::one().neg());
        assert_eq!(i.powi(-1).unwrap(), i.neg());
    }

    #[test]
    fn field_inverse() {
        let z = Gaussian::new(rat(3, 2), rat(-5, 7));
        assert_eq!(z.mul(&z.try_inv().unwrap()), Gaussian::one());
        assert!(Gaussian::zero().try_inv().is_none());
    }

    #[test]
    fn cayley_quotient() {
        // (1 - i)/(1 + i) = -i
        let one = Gaussian::one();
        let i = Gaussian::i();
        let q = one.sub(&i).mul(&one.add(&i).try_inv().unwrap());
        assert_eq!(q, i.neg());
    }
}
