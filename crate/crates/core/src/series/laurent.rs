//! Truncated Laurent series in one variable `s`, generic over the
//! coefficient ring.
//!
//! A series is `Σ_{e ≥ low} c_e s^e + O(s^order)`. An `order` of `None` means
//! the series is exact (a Laurent polynomial). Binary operations track the
//! precision of their operands: a product is known up to
//! `min(val(a) + order(b), val(b) + order(a))`.
//!
//! q-expansions use this type with `s² = q`, so half-integral powers of `q`
//! are ordinary odd powers of `s`.

use std::fmt;

use super::rational::{self, Rational};
use super::{Ring, SeriesError};

/// A q-series graded by `s = q^{1/2}`.
pub type QSeries<R = Rational> = Laurent<R>;

#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<R> {
    low: i64,
    coeffs: Vec<R>,
    order: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn add_order(a: Option<i64>, shift: Option<i64>) -> Option<i64> {
    match (a, shift) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

impl<R: Ring> Laurent<R> {
    /// Build and normalise: terms at or beyond `order` are dropped, as are
    /// leading and trailing zeros.
    pub fn new(low: i64, coeffs: Vec<R>, order: Option<i64>) -> Self {
        let mut s = Laurent { low, coeffs, order };
        s.normalize();
        s
    }

    pub fn exact(low: i64, coeffs: Vec<R>) -> Self {
        Self::new(low, coeffs, None)
    }

    pub fn zero_to(order: i64) -> Self {
        Self::new(0, Vec::new(), Some(order))
    }

    pub fn constant(c: R) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn monomial(c: R, exp: i64) -> Self {
        Self::exact(exp, vec![c])
    }

    /// The variable `s` itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// Embed a power series in `q` (coefficient `j` at `q^j`) into the
    /// `s`-graded ring. `q_order` is exclusive, in powers of `q`.
    pub fn from_q_coeffs(coeffs: Vec<R>, q_order: Option<i64>) -> Self {
        let mut spread = Vec::with_capacity(coeffs.len() * 2);
        for (j, c) in coeffs.into_iter().enumerate() {
            if j > 0 {
                spread.push(R::zero());
            }
            spread.push(c);
        }
        Self::new(0, spread, q_order.map(|n| 2 * n - 1))
    }

    fn normalize(&mut self) {
        if let Some(n) = self.order {
            let keep = (n - self.low).max(0) as usize;
            if self.coeffs.len() > keep {
                self.coeffs.truncate(keep);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Exclusive precision bound; `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Exponent of the last stored nonzero term.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Lower bound for the valuation, counting unknown terms.
    fn val_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.order
        } else {
            Some(self.low)
        }
    }

    pub fn coeff(&self, exp: i64) -> R {
        if exp < self.low {
            return R::zero();
        }
        self.coeffs
            .get((exp - self.low) as usize)
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// `(exponent, coefficient)` pairs of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Dense coefficients starting at the valuation.
    pub fn coefficients(&self) -> &[R] {
        &self.coeffs
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    /// Cap the precision at `order` (never raises it).
    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.low, self.coeffs.clone(), min_order(self.order, Some(order)))
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            low: if self.coeffs.is_empty() { 0 } else { self.low + k },
            coeffs: self.coeffs.clone(),
            order: self.order.map(|n| n + k),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::new(self.low, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    /// True when every stored exponent is even (an honest series in `q`).
    pub fn is_q_integral(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Odd part in `s` vanishes.
    pub fn is_even(&self) -> bool {
        self.is_q_integral()
    }

    pub fn is_odd(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 != 0)
    }

    /// Equality of all coefficients below the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let bound = min_order(self.order, other.order);
        let lo = self.low.min(other.low);
        let hi = match bound {
            Some(n) => n,
            None => {
                let d1 = self.degree().unwrap_or(lo);
                let d2 = other.degree().unwrap_or(lo);
                d1.max(d2) + 1
            }
        };
        (lo..hi).all(|e| self.coeff(e) == other.coeff(e))
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = min_order(self.order, o.order);
        if self.coeffs.is_empty() {
            return o.truncate_opt(order);
        }
        if o.coeffs.is_empty() {
            return self.truncate_opt(order);
        }
        let low = self.low.min(o.low);
        let hi = self.degree().unwrap().max(o.degree().unwrap());
        let coeffs = (low..=hi).map(|e| self.coeff(e).add(&o.coeff(e))).collect();
        Self::new(low, coeffs, order)
    }

    fn truncate_opt(&self, order: Option<i64>) -> Self {
        Self::new(self.low, self.coeffs.clone(), min_order(self.order, order))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if (self.coeffs.is_empty() && self.order.is_none())
            || (o.coeffs.is_empty() && o.order.is_none())
        {
            return Self::zero();
        }
        let order = min_order(
            add_order(self.val_bound(), o.order),
            add_order(o.val_bound(), self.order),
        );
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Laurent { low: 0, coeffs: Vec::new(), order };
        }
        let low = self.low + o.low;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(n) = order {
            len = len.min((n - low).max(0) as usize);
        }
        let mut coeffs = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(low, coeffs, order)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    /// Multiplicative inverse. Requires an invertible leading coefficient;
    /// a non-monomial exact series must be truncated first.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::NonUnit)?;
        let lead_inv = lead.try_inv().ok_or(SeriesError::NonUnit)?;
        let rel = match self.order {
            None if self.coeffs.len() == 1 => return Ok(Self::monomial(lead_inv, -self.low)),
            None => return Err(SeriesError::NeedsTruncation),
            Some(n) => (n - self.low) as usize,
        };
        let mut out: Vec<R> = Vec::with_capacity(rel);
        for n in 0..rel {
            if n == 0 {
                out.push(lead_inv.clone());
                continue;
            }
            let mut acc = R::zero();
            for j in 1..=n.min(self.coeffs.len() - 1) {
                acc = acc.add(&self.coeffs[j].mul(&out[n - j]));
            }
            out.push(acc.mul(&lead_inv).neg());
        }
        Ok(Self::new(-self.low, out, Some(-self.low + rel as i64)))
    }

    /// Set the precision of an exact series so that it can be inverted.
    pub fn inv_to(&self, order: i64) -> Result<Self, SeriesError> {
        self.truncate(order).inv()
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_int(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Rational power `num/den` via the binomial series.
    ///
    /// The leading coefficient must have an exact `den`-th root in the
    /// coefficient ring and the valuation times the exponent must be integral.
    pub fn pow_rational(&self, num: i64, den: u32) -> Result<Self, SeriesError> {
        if den == 0 {
            return Err(SeriesError::BadExponent("zero denominator".into()));
        }
        let lead = self.coeffs.first().ok_or(SeriesError::NonUnit)?;
        let v = self.low;
        if (v * num) % den as i64 != 0 {
            return Err(SeriesError::BadExponent(format!(
                "valuation {v} times {num}/{den} is not integral"
            )));
        }
        let root = lead.exact_root(den).ok_or(SeriesError::NoExactRoot)?;
        let lead_pow = if num >= 0 {
            root.pow(num as u32)
        } else {
            root.pow((-num) as u32).try_inv().ok_or(SeriesError::NonUnit)?
        };
        let lead_inv = lead.try_inv().ok_or(SeriesError::NonUnit)?;
        let new_low = v * num / den as i64;
        let rel = match self.order {
            None if self.coeffs.len() == 1 => return Ok(Self::monomial(lead_pow, new_low)),
            None => return Err(SeriesError::NeedsTruncation),
            Some(n) => n - v,
        };
        // w = a/(c s^v) - 1, valuation >= 1, known below s^rel
        let unit = Laurent::new(0, self.coeffs.iter().map(|c| c.mul(&lead_inv)).collect(), Some(rel));
        let w = unit.sub(&Self::one());
        let e = Rational::new(num.into(), (den as i64).into());
        let binom: Vec<R> = (0..rel.max(0) as u32)
            .map(|j| R::from_rational(&rational::binomial_rational(&e, j)))
            .collect();
        let series = Laurent::new(0, binom, Some(rel)).compose(&w)?;
        Ok(series.scale_by(&lead_pow).shift(new_low))
    }

    /// `exp` of a series with positive valuation.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.coeffs.is_empty() {
            return Ok(Self::one().truncate_opt(self.order.map(|n| n.max(0))));
        }
        if self.low < 1 {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.order.ok_or(SeriesError::NeedsTruncation)?;
        let coeffs: Vec<R> = (0..n.max(0) as u32)
            .map(|j| R::from_rational(&Rational::new(1.into(), rational::factorial(j))))
            .collect();
        Laurent::new(0, coeffs, Some(n)).compose(self)
    }

    /// `f(g)` for a power series `f` and `g` with positive valuation.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if self.low < 0 && !self.coeffs.is_empty() {
            return Err(SeriesError::BadExponent("outer series has negative powers".into()));
        }
        if let Some(vg) = g.valuation() {
            if vg < 1 {
                return Err(SeriesError::NonzeroConstant);
            }
        }
        let vg = g.val_bound();
        let cap = match (self.order, vg) {
            (Some(nf), Some(v)) => Some(nf * v),
            (Some(nf), None) => Some(if nf > 0 { i64::MAX / 4 } else { 0 }),
            _ => None,
        };
        let Some(deg) = self.degree() else {
            return Ok(Laurent { low: 0, coeffs: Vec::new(), order: cap.or(self.order) });
        };
        let mut acc = Self::constant(self.coeff(deg));
        for e in (0..deg).rev() {
            acc = acc.mul(g).add(&Self::constant(self.coeff(e)));
            if let Some(c) = cap {
                acc = acc.truncate(c);
            }
        }
        Ok(match cap {
            Some(c) => acc.truncate(c),
            None => acc,
        })
    }

    /// Compositional inverse of `g = s + O(s²)`, by Lagrange inversion:
    /// `[s^n] g⁻¹ = (1/n)·[s^{n-1}] (s/g)^n`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if self.valuation() != Some(1) || !self.coeff(1).is_one() {
            return Err(SeriesError::NotNormalized);
        }
        let n = self.order.ok_or(SeriesError::NeedsTruncation)?;
        let h = self.shift(-1).inv()?;
        let mut out = vec![R::zero(); n.max(0) as usize];
        let mut hp = Self::one();
        for k in 1..n {
            hp = hp.mul(&h);
            out[k as usize] = hp.coeff(k - 1).scale(&Rational::new(1.into(), k.into()));
        }
        Ok(Self::new(0, out, Some(n)))
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integrate(&self) -> Result<Self, SeriesError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i64;
            if e == -1 {
                if !c.is_zero() {
                    return Err(SeriesError::LogarithmicTerm);
                }
                out.push(R::zero());
            } else {
                out.push(c.scale(&Rational::new(1.into(), (e + 1).into())));
            }
        }
        Ok(Self::new(self.low + 1, out, self.order.map(|n| n + 1)))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&rational::int(self.low + i as i64)))
            .collect();
        Self::new(self.low - 1, coeffs, self.order.map(|n| n - 1))
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new(), order: None }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        Laurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Laurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Laurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        Laurent::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Laurent<R> {
    /// Rendered in `q = s²`, so odd `s`-exponents print as halves.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qexp = |e: i64| -> String {
            if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{}/2", e)
            }
        };
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "({c})")?;
            } else if e == 2 {
                write!(f, "({c})*q")?;
            } else {
                write!(f, "({c})*q^{}", qexp(e))?;
            }
        }
        if let Some(n) = self.order {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(q^{})", qexp(n))?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{binomial, int, rat};
    use crate::series::DeltaEpsilon;

    type S = Laurent<Rational>;

    fn poly(cs: &[i64], order: i64) -> S {
        S::new(0, cs.iter().map(|&c| int(c)).collect(), Some(order))
    }

    #[test]
    fn square_in_q() {
        let a = S::from_q_coeffs(vec![int(1), int(1)], Some(3));
        let p = a.mul(&a);
        assert_eq!(p.coeff(0), int(1));
        assert_eq!(p.coeff(2), int(2));
        assert_eq!(p.coeff(4), int(1));
        assert_eq!(p.coeff(1), int(0));
    }

    #[test]
    fn inverses() {
        assert_eq!(poly(&[1, -1], 4).inv().unwrap(), poly(&[1, 1, 1, 1], 4));
        assert_eq!(poly(&[1, 4], 3).inv().unwrap(), poly(&[1, -4, 16], 3));
        assert_eq!(S::constant(int(2)).inv().unwrap(), S::constant(rat(1, 2)));
        assert_eq!(S::exact(0, vec![int(1), int(1)]).inv(), Err(SeriesError::NeedsTruncation));
        assert_eq!(S::zero().inv(), Err(SeriesError::NonUnit));
    }

    #[test]
    fn negative_valuation_inverse_tracks_precision() {
        // (s + s^2 + O(s^5))^{-1} = s^{-1}(1 - s + s^2 - s^3) + O(s^3)
        let a = S::new(1, vec![int(1), int(1)], Some(5));
        let b = a.inv().unwrap();
        assert_eq!(b.valuation(), Some(-1));
        assert_eq!(b.order(), Some(3));
        assert!(a.mul(&b).agrees_with(&S::one()));
    }

    #[test]
    fn central_binomial_square_root() {
        let r = poly(&[1, -4], 4).pow_rational(-1, 2).unwrap();
        for j in 0..4 {
            assert_eq!(r.coeff(j), Rational::from_integer(binomial(2 * j as u64, j as u64)));
        }
    }

    #[test]
    fn elliptic_integrand_over_delta_epsilon() {
        let d = DeltaEpsilon::delta();
        let e = DeltaEpsilon::epsilon();
        let a = Laurent::new(
            0,
            vec![DeltaEpsilon::one(), DeltaEpsilon::zero(), d.scale(&int(-2)), DeltaEpsilon::zero(), e.clone()],
            Some(5),
        );
        let r = a.pow_rational(-1, 2).unwrap();
        assert_eq!(r.coeff(2), d);
        assert_eq!(r.coeff(4), d.mul(&d).scale(&rat(3, 2)).sub(&e.scale(&rat(1, 2))));
        assert!(r.coeff(1).is_zero() && r.coeff(3).is_zero());
        // multiply-back: r^2 · a = 1
        assert!(r.mul(&r).mul(&a).agrees_with(&Laurent::one()));
        let g = r.integrate().unwrap();
        assert_eq!(g.coeff(1), DeltaEpsilon::one());
        assert_eq!(g.coeff(3), d.scale(&rat(1, 3)));
        assert_eq!(g.coeff(5), d.mul(&d).scale(&rat(3, 10)).sub(&e.scale(&rat(1, 10))));
    }

    #[test]
    fn rational_power_edge_cases() {
        assert_eq!(S::one().pow_rational(1, 2).unwrap(), S::one());
        // 4 s^2 (1 + s) has square root 2 s (1 + s/2 - ...)
        let a = S::new(2, vec![int(4), int(4)], Some(6));
        let r = a.pow_rational(1, 2).unwrap();
        assert_eq!(r.valuation(), Some(1));
        assert!(r.mul(&r).agrees_with(&a));
        assert_eq!(S::new(0, vec![int(2), int(1)], Some(3)).pow_rational(1, 2), Err(SeriesError::NoExactRoot));
        assert!(S::new(1, vec![int(1)], Some(3)).pow_rational(1, 2).is_err());
    }

    #[test]
    fn exp_and_compose() {
        let h = S::new(1, vec![int(1)], Some(3));
        let e = h.exp().unwrap();
        assert_eq!(e, S::new(0, vec![int(1), int(1), rat(1, 2)], Some(3)));
        let w = e.sub(&S::one());
        // 1/(1+t) at w = e^h - 1 gives e^{-h}
        let f = poly(&[1, 1], 3).inv().unwrap();
        assert_eq!(f.compose(&w).unwrap(), S::new(0, vec![int(1), int(-1), rat(1, 2)], Some(3)));
        // 1/(1-t) at the same w is 1/(2 - e^h) = 1 + h + 3h^2/2
        let g = poly(&[1, -1], 3).inv().unwrap();
        assert_eq!(g.compose(&w).unwrap(), S::new(0, vec![int(1), int(1), rat(3, 2)], Some(3)));
        assert_eq!(g.compose(&S::zero()).unwrap().coeff(0), int(1));
        assert_eq!(g.compose(&S::one()), Err(SeriesError::NonzeroConstant));
        assert_eq!(S::one().exp(), Err(SeriesError::NonzeroConstant));
    }

    #[test]
    fn reversion_examples() {
        let u = S::new(1, vec![int(1)], Some(6));
        assert_eq!(u.reversion().unwrap(), u);
        let g = S::new(1, vec![int(1), int(0), int(1)], Some(6));
        let f = g.reversion().unwrap();
        assert_eq!(f, S::new(1, vec![int(1), int(0), int(-1), int(0), int(3)], Some(6)));
        assert!(g.compose(&f).unwrap().agrees_with(&u));
        assert_eq!(S::new(1, vec![int(2)], Some(4)).reversion(), Err(SeriesError::NotNormalized));
    }

    #[test]
    fn integrate_and_coeff() {
        assert_eq!(S::one().integrate().unwrap(), S::var());
        let a = S::from_q_coeffs(vec![int(1), int(1)], None);
        assert_eq!(a.pow_int(3).unwrap().coeff(4), int(3));
        assert_eq!(S::monomial(int(1), -1).integrate(), Err(SeriesError::LogarithmicTerm));
        assert_eq!(S::var().derivative(), S::one());
    }

    #[test]
    fn display_uses_half_integral_q_powers() {
        let a = S::new(-1, vec![int(1), int(0), int(-3)], Some(3));
        assert_eq!(a.to_string(), "(1)*q^-1/2 + (-3)*q^1/2 + O(q^3/2)");
    }
}
