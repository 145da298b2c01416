//! Sparse multivariate polynomials truncated by per-variable caps:
//! `R[v_1..v_m] / (v_1^{cap_1+1}, …, v_m^{cap_m+1})`.
//!
//! Every nonconstant element is nilpotent, so inverses of units, `exp` and
//! substitution into power series are finite computations.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::rational::{self, Rational};
use super::{Laurent, Ring, SeriesError};

/// Variable names and their caps.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PolySpace {
    pub names: Vec<String>,
    pub caps: Vec<u32>,
}

impl PolySpace {
    pub fn new(names: Vec<String>, caps: Vec<u32>) -> Arc<Self> {
        assert_eq!(names.len(), caps.len(), "one cap per variable");
        Arc::new(PolySpace { names, caps })
    }

    pub fn single(name: &str, cap: u32) -> Arc<Self> {
        Self::new(vec![name.to_string()], vec![cap])
    }

    /// The zero-variable space (scalars).
    pub fn point() -> Arc<Self> {
        Self::new(Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Highest nonzero total degree.
    pub fn max_degree(&self) -> u32 {
        self.caps.iter().sum()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn top_monomial(&self) -> Vec<u32> {
        self.caps.clone()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncPoly<R> {
    space: Arc<PolySpace>,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> TruncPoly<R> {
    pub fn zero(space: &Arc<PolySpace>) -> Self {
        TruncPoly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<PolySpace>, c: R) -> Self {
        let mut p = Self::zero(space);
        p.insert_add(vec![0; space.len()], c);
        p
    }

    pub fn one(space: &Arc<PolySpace>) -> Self {
        Self::constant(space, R::one())
    }

    pub fn var(space: &Arc<PolySpace>, index: usize) -> Self {
        Self::monomial(space, R::one(), &unit_exponent(space.len(), index))
    }

    /// `c · ∏ v_i^{e_i}`, zero if any exponent exceeds its cap.
    pub fn monomial(space: &Arc<PolySpace>, c: R, exps: &[u32]) -> Self {
        let mut p = Self::zero(space);
        if exps.iter().zip(&space.caps).all(|(e, cap)| e <= cap) {
            p.insert_add(exps.to_vec(), c);
        }
        p
    }

    /// `Σ c_i v_i` from rational coefficients.
    pub fn linear_form(space: &Arc<PolySpace>, coeffs: &[(usize, Rational)]) -> Self {
        let mut p = Self::zero(space);
        for (i, c) in coeffs {
            p = p.add_unchecked(&Self::var(space, *i).scale(c));
        }
        p
    }

    pub fn space(&self) -> &Arc<PolySpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&vec![0; self.space.len()])
    }

    /// Coefficient of the top monomial `∏ v_i^{cap_i}`.
    pub fn top_coeff(&self) -> R {
        self.coeff(&self.space.caps)
    }

    /// Lowest total degree among the nonzero terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    fn insert_add(&mut self, key: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.space == o.space || *self.space == *o.space {
            Ok(())
        } else {
            Err(SeriesError::CapMismatch {
                left: format!("{:?}/{:?}", self.space.names, self.space.caps),
                right: format!("{:?}/{:?}", o.space.names, o.space.caps),
            })
        }
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.space);
        let caps = &self.space.caps;
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                if key.iter().zip(caps).all(|(e, cap)| e <= cap) {
                    out.insert_add(key, ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.add_unchecked(&o.neg()))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, r: &R) -> Self {
        self.map(|c| c.mul(r))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncPoly<S> {
        let mut out = TruncPoly::zero(&self.space);
        for (k, c) in &self.terms {
            out.insert_add(k.clone(), f(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.space);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// The nilpotent part (constant term removed).
    pub fn nilpotent_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.space.len()]);
        out
    }

    /// Inverse of an element whose constant term is a unit:
    /// `(c(1 + n))⁻¹ = c⁻¹ Σ (−n)^j`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        let cinv = c.try_inv().ok_or(SeriesError::NonUnit)?;
        let n = self.nilpotent_part().scale_by(&cinv).neg();
        let mut acc = Self::one(&self.space);
        let mut p = Self::one(&self.space);
        for _ in 0..self.space.max_degree() {
            p = p.mul_unchecked(&n);
            if p.is_zero() {
                break;
            }
            acc = acc.add_unchecked(&p);
        }
        Ok(acc.scale_by(&cinv))
    }

    /// `exp` of a nilpotent element.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.space.max_degree() as i64 + 1;
        let coeffs = (0..n as u32)
            .map(|j| R::from_rational(&Rational::new(1.into(), rational::factorial(j))))
            .collect();
        self.substitute_into(&Laurent::new(0, coeffs, Some(n)))
    }

    /// Rational power of an element with constant term one.
    pub fn pow_rational(&self, num: i64, den: u32) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::NonUnit);
        }
        let n = self.space.max_degree() as i64 + 1;
        let e = Rational::new(num.into(), (den as i64).into());
        let coeffs = (0..n as u32)
            .map(|j| R::from_rational(&rational::binomial_rational(&e, j)))
            .collect();
        self.nilpotent_part()
            .substitute_into(&Laurent::new(0, coeffs, Some(n)))
    }

    /// Evaluate the power series `f` at this nilpotent element.
    ///
    /// `f` must be known at least through the maximal nonzero degree of
    /// the space.
    pub fn substitute_into(&self, f: &Laurent<R>) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        if f.valuation().is_some_and(|v| v < 0) {
            return Err(SeriesError::BadExponent("series has negative powers".into()));
        }
        let min_deg = self.min_degree().unwrap_or(u32::MAX).max(1);
        let needed = (self.space.max_degree() / min_deg) as i64;
        if let Some(n) = f.order() {
            if n <= needed {
                return Err(SeriesError::InsufficientPrecision { have: n, need: needed + 1 });
            }
        }
        let top = f.degree().unwrap_or(0).min(needed);
        let mut acc = Self::constant(&self.space, f.coeff(top));
        for e in (0..top).rev() {
            acc = acc.mul_unchecked(self);
            acc.insert_add(vec![0; self.space.len()], f.coeff(e));
        }
        Ok(acc)
    }

    /// Integer power of a unit, negative exponents through [`Self::inv`].
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as u32))
        }
    }
}

fn unit_exponent(len: usize, index: usize) -> Vec<u32> {
    let mut e = vec![0; len];
    e[index] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    fn h(cap: u32) -> (Arc<PolySpace>, TruncPoly<Rational>) {
        let s = PolySpace::single("h", cap);
        let v = TruncPoly::var(&s, 0);
        (s, v)
    }

    #[test]
    fn truncation_kills_high_powers() {
        let (s, h) = h(1);
        let one = TruncPoly::one(&s);
        let p = one.add(&h).unwrap().mul(&one.sub(&h).unwrap()).unwrap();
        assert_eq!(p, one);
    }

    #[test]
    fn cap_mismatch_is_an_error() {
        let (_, a) = h(1);
        let (_, b) = h(2);
        assert!(matches!(a.add(&b), Err(SeriesError::CapMismatch { .. })));
    }

    #[test]
    fn chern_class_of_quartic_threefold() {
        // (1+h)^6 (1+4h)^{-1} mod h^3: coefficient of h^2 is 15 - 24 + 16 = 7
        let (s, h) = h(2);
        let one = TruncPoly::one(&s);
        let a = one.add(&h).unwrap().pow(6);
        let b = one.add(&h.scale(&int(4))).unwrap().inv().unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.coeff(&[1]), int(2));
        assert_eq!(c.coeff(&[2]), int(7));
    }

    #[test]
    fn inverse_and_exp() {
        let (s, u) = h(2);
        let one = TruncPoly::one(&s);
        let inv = one.add(&u.scale(&int(4))).unwrap().inv().unwrap();
        assert_eq!(inv.coeff(&[1]), int(-4));
        assert_eq!(inv.coeff(&[2]), int(16));
        let e = u.exp().unwrap();
        assert_eq!(e.coeff(&[2]), rat(1, 2));
        assert!(one.exp().is_err());
        assert!(TruncPoly::<Rational>::zero(&s).inv().is_err());
    }

    #[test]
    fn square_root() {
        let (s, u) = h(3);
        let one = TruncPoly::one(&s);
        let a = one.add(&u).unwrap();
        let r = a.pow_rational(1, 2).unwrap();
        assert_eq!(r.mul(&r).unwrap(), a);
    }

    #[test]
    fn multivariate_top_coefficient() {
        let s = PolySpace::new(vec!["a".into(), "b".into()], vec![1, 1]);
        let a = TruncPoly::<Rational>::var(&s, 0);
        let b = TruncPoly::<Rational>::var(&s, 1);
        let p = a.add(&b).unwrap().pow(2);
        assert_eq!(p.top_coeff(), int(2));
        assert_eq!(p.min_degree(), Some(2));
    }
}
