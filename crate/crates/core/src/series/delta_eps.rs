use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::rational::{self, Rational};
use super::Ring;

/// Polynomial in the weight-2 generator δ and the weight-4 generator ε.
///
/// Keys are `(a, b)` for the monomial δ^a ε^b; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DeltaEpsilon {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl DeltaEpsilon {
    pub fn delta() -> Self {
        Self::monomial(rational::int(1), 1, 0)
    }

    pub fn epsilon() -> Self {
        Self::monomial(rational::int(1), 0, 1)
    }

    pub fn monomial(c: Rational, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        DeltaEpsilon { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common weight `2a + 4b` if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|(a, b)| 2 * a + 4 * b);
        let w = weights.next()?;
        weights.all(|x| x == w).then_some(w)
    }

    /// Substitute values for δ and ε in any coefficient ring.
    pub fn eval<R: Ring>(&self, delta: &R, epsilon: &R) -> R {
        let mut acc = R::zero();
        for (&(a, b), c) in &self.terms {
            let term = delta.pow(a).mul(&epsilon.pow(b)).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    fn insert_add(terms: &mut BTreeMap<(u32, u32), Rational>, key: (u32, u32), c: Rational) {
        let entry = terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            terms.remove(&key);
        }
    }
}

impl Ring for DeltaEpsilon {
    fn zero() -> Self {
        DeltaEpsilon::default()
    }
    fn one() -> Self {
        Self::monomial(rational::int(1), 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_add(&mut terms, *k, c.clone());
        }
        DeltaEpsilon { terms }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                Self::insert_add(&mut terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        DeltaEpsilon { terms }
    }
    fn neg(&self) -> Self {
        DeltaEpsilon {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::monomial(q.clone(), 0, 0)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(Self::from_rational(&c.recip()));
            }
        }
        None
    }
}

impl fmt::Display for DeltaEpsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest δ power first reads naturally: 3/2*delta^2 - 1/2*epsilon
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            match a {
                0 => {}
                1 => factors.push("delta".to_string()),
                _ => factors.push(format!("delta^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("epsilon".to_string()),
                _ => factors.push(format!("epsilon^{b}")),
            }
            if factors.is_empty() {
                write!(f, "{}", rational::format(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::format(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn display_and_weight() {
        let d = DeltaEpsilon::delta();
        let e = DeltaEpsilon::epsilon();
        let p = d.mul(&d).scale(&rat(3, 2)).sub(&e.scale(&rat(1, 2)));
        assert_eq!(p.to_string(), "3/2*delta^2 - 1/2*epsilon");
        assert_eq!(p.homogeneous_weight(), Some(4));
        assert_eq!(e.to_string(), "epsilon");
        assert_eq!(DeltaEpsilon::zero().homogeneous_weight(), None);
    }

    #[test]
    fn evaluation() {
        let d = DeltaEpsilon::delta();
        let e = DeltaEpsilon::epsilon();
        let p = d.mul(&d).scale(&rat(3, 2)).sub(&e.scale(&rat(1, 2)));
        assert_eq!(p.eval(&rat(1, 1), &rat(1, 1)), rat(1, 1));
        assert_eq!(p.eval(&rat(-1, 8), &rat(0, 1)), rat(3, 128));
    }
}
