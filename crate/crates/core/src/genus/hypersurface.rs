//! `Â(V, TV)` for hypersurfaces by two closed pipelines plus the model.

use crate::manifold::hypersurface;
use crate::series::rational::{self, int, Rational};
use crate::series::{Laurent, Ring};

use super::twist::{twisted_number, Bundle, TwistGenus};
use super::GenusError;

fn inv_factorial(j: u32) -> Rational {
    Rational::new(1.into(), rational::factorial(j))
}

/// `(e^{ah/2} − e^{−ah/2})/h = Σ a^{2j+1} h^{2j} / (4^j (2j+1)!)`.
fn sinh_quotient(a: i64, order: i64) -> Laurent<Rational> {
    let coeffs = (0..order)
        .map(|e| {
            if e % 2 == 1 {
                return int(0);
            }
            let a = int(a);
            num_traits::pow(a, e as usize + 1) * inv_factorial(e as u32 + 1)
                / num_traits::pow(int(2), e as usize)
        })
        .collect();
    Laurent::new(0, coeffs, Some(order))
}

fn exp_series(a: i64, order: i64) -> Laurent<Rational> {
    let coeffs = (0..order)
        .map(|e| num_traits::pow(int(a), e as usize) * inv_factorial(e as u32))
        .collect();
    Laurent::new(0, coeffs, Some(order))
}

/// `l·[h^n] B` with `B = (h/(e^{h/2}−e^{−h/2}))^{n+2} · (e^{lh/2}−e^{−lh/2})/(lh) · ((n+2)e^h − e^{lh})`.
pub fn residue_pipeline(n: u32, l: u32) -> Result<Rational, GenusError> {
    let order = n as i64 + 1;
    let ni = n as i64;
    let li = l as i64;
    let todd_half = sinh_quotient(1, order).inv()?.pow_int(ni + 2)?;
    let lfac = sinh_quotient(li, order).scale(&Rational::new(1.into(), li.into()));
    let ch = exp_series(1, order).scale(&int(ni + 2)).sub(&exp_series(li, order));
    let b = todd_half.mul(&lfac).mul(&ch);
    Ok(b.coeff(ni) * int(li))
}

/// `[w^{n+1}] (1+w)^{(n−l)/2} ((1+w)^l − 1)((n+2)(1+w) − (1+w)^l)`.
pub fn w_coefficient_pipeline(n: u32, l: u32) -> Result<Rational, GenusError> {
    let order = n as i64 + 2;
    let e = rational::rat(n as i64 - l as i64, 2);
    let binom = |e: &Rational| -> Laurent<Rational> {
        let coeffs = (0..order as u32).map(|j| rational::binomial_rational(e, j)).collect();
        Laurent::new(0, coeffs, Some(order))
    };
    let one_plus_w_l = binom(&int(l as i64));
    let a = binom(&e);
    let b = one_plus_w_l.sub(&Laurent::one());
    let c = binom(&int(1)).scale(&int(n as i64 + 2)).sub(&one_plus_w_l);
    Ok(a.mul(&b).mul(&c).coeff(n as i64 + 1))
}

/// `Â(V_n, TV_n)` for the degree-`n` hypersurface; the residue pipeline,
/// the `w`-coefficient pipeline and the model's twisted index must agree.
pub fn hypersurface_index_closed(n: u32) -> Result<Rational, GenusError> {
    if n < 2 || n % 2 != 0 {
        return Err(GenusError::Unsupported("closed form needs even n >= 2".into()));
    }
    let a = residue_pipeline(n, n)?;
    let b = w_coefficient_pipeline(n, n)?;
    let c = twisted_number(TwistGenus::Ahat, &hypersurface(n, n)?, Bundle::HolomorphicTangent)?;
    if a != b || b != c {
        return Err(GenusError::Inconsistent(format!(
            "V({n},{n}): residue {}, w-coefficient {}, model {}",
            rational::format(&a),
            rational::format(&b),
            rational::format(&c)
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::binomial;

    #[test]
    fn closed_form_values() {
        for n in [2u32, 4, 6, 8] {
            let expect = int(n as i64 + 2) - Rational::from_integer(binomial(2 * n as u64, n as u64 + 1));
            assert_eq!(hypersurface_index_closed(n).unwrap(), expect, "n={n}");
        }
        assert_eq!(hypersurface_index_closed(4).unwrap(), int(-50));
    }

    #[test]
    fn pipelines_agree_off_diagonal() {
        // Â(V) = 0 is not needed for the two closed forms to agree
        for (n, l) in [(4, 2), (6, 4), (3, 1), (5, 3)] {
            assert_eq!(residue_pipeline(n, l).unwrap(), w_coefficient_pipeline(n, l).unwrap());
        }
    }
}
