//! Hirzebruch genera: the elliptic logarithm, characteristic series,
//! genus values, twisted indices and the two cusp expansions.

mod hypersurface;
mod twist;

pub use hypersurface::{hypersurface_index_closed, residue_pipeline, w_coefficient_pipeline};
pub use twist::{
    ahat_pair, ahat_raw_series, leading_vanish_count, loop_pair, loop_sign_series, phi0_series, pole_order, signature_pair,
    twisted_index, twisted_number, Bundle, IndexSeries, PoleOrder, SeriesTag, TwistDescriptor,
    TwistGenus, WordFactor, WordOp,
};

use thiserror::Error;

use crate::manifold::{ManifoldModel, ModelError, RootStyle};
use crate::series::rational::{self, int, Rational};
use crate::series::{DeltaEpsilon, Laurent, Ring, SeriesError, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("pipelines disagree: {0}")]
    Inconsistent(String),
}

/// `(δ, ε)` either as the generators of `Q[δ,ε]` or as rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum GenusSpec {
    Generic,
    Specialized { name: String, delta: Rational, epsilon: Rational },
}

impl GenusSpec {
    pub fn generic() -> Self {
        GenusSpec::Generic
    }

    pub fn signature() -> Self {
        GenusSpec::Specialized { name: "signature".into(), delta: int(1), epsilon: int(1) }
    }

    pub fn ahat() -> Self {
        GenusSpec::Specialized { name: "ahat".into(), delta: rational::rat(-1, 8), epsilon: int(0) }
    }

    pub fn custom(delta: Rational, epsilon: Rational) -> Self {
        GenusSpec::Specialized { name: "custom".into(), delta, epsilon }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "generic" => Some(Self::generic()),
            "signature" | "sign" | "L" => Some(Self::signature()),
            "ahat" | "Ahat" | "A-hat" => Some(Self::ahat()),
            _ => None,
        }
    }
}

/// `g(u) = ∫₀ᵘ (1 − 2δt² + εt⁴)^{−1/2} dt`, known below `u^order`.
pub fn genus_log<R: Ring>(delta: &R, epsilon: &R, order: i64) -> Result<Laurent<R>, GenusError> {
    if order < 1 {
        return Err(GenusError::Unsupported("genus_log needs order >= 1".into()));
    }
    let quartic = Laurent::new(
        0,
        vec![R::one(), R::zero(), delta.scale(&int(-2)), R::zero(), epsilon.clone()],
        Some(order - 1),
    );
    Ok(quartic.pow_rational(-1, 2)?.integrate()?)
}

/// `Q(x) = x / f(x)` with `f` the inverse of the elliptic logarithm,
/// known below `x^order`.
pub fn char_series<R: Ring>(delta: &R, epsilon: &R, order: i64) -> Result<Laurent<R>, GenusError> {
    let g = genus_log(delta, epsilon, order + 1)?;
    let f = g.reversion()?;
    Ok(f.shift(-1).inv()?)
}

/// Exclusive x-order a per-root factor needs to be evaluated on `m`.
pub fn x_order(m: &ManifoldModel) -> i64 {
    2 * m.space().max_degree() as i64 + 2
}

/// `⟨∏ P(ℓ)^{mult} · P(0)^{−Δ}, [M]⟩` for a per-root factor `P`.
pub fn characteristic_number<R: Ring>(m: &ManifoldModel, p: &Laurent<R>) -> Result<R, GenusError> {
    Ok(m.cohomology.evaluate(&tangent_class(m, p)?))
}

/// `∏ P(ℓ)^{mult} · P(0)^{−Δ}` in the cohomology of `m`.
///
/// Chern entries substitute the root `ℓ` for `x`; Pontryagin entries
/// substitute `ℓ` for `x²`, which needs an even `P`.
pub fn tangent_class<R: Ring>(m: &ManifoldModel, p: &Laurent<R>) -> Result<TruncPoly<R>, GenusError> {
    let space = m.space();
    let mut acc = TruncPoly::<R>::one(space);
    let mut even: Option<Laurent<R>> = None;
    for e in &m.tangent.entries {
        let root: TruncPoly<R> = e.form.to_poly(&m.cohomology)?;
        let factor = match e.style {
            RootStyle::Chern => root.substitute_into(p)?,
            RootStyle::Pontryagin => {
                if even.is_none() {
                    even = Some(even_part_in_square(p)?);
                }
                root.substitute_into(even.as_ref().unwrap())?
            }
        };
        acc = acc.mul(&factor.powi(e.mult)?)?;
    }
    if m.tangent.delta != 0 {
        let c0 = p.coeff(0);
        let corr = if m.tangent.delta > 0 {
            c0.try_inv().ok_or(SeriesError::NonUnit)?.pow(m.tangent.delta as u32)
        } else {
            c0.pow((-m.tangent.delta) as u32)
        };
        acc = acc.scale_by(&corr);
    }
    Ok(acc)
}

/// `R` with `P(x) = R(x²)`.
fn even_part_in_square<R: Ring>(p: &Laurent<R>) -> Result<Laurent<R>, GenusError> {
    if !p.is_even() {
        return Err(GenusError::Unsupported(
            "factor is not even, so it cannot be evaluated on Pontryagin roots".into(),
        ));
    }
    let order = p.order().map(|n| (n + 1) / 2);
    let top = p.degree().unwrap_or(0).max(0);
    let coeffs = (0..=top / 2).map(|j| p.coeff(2 * j)).collect();
    Ok(Laurent::new(0, coeffs, order))
}

/// Genus value in `Q[δ,ε]` (a constant for specialized genera).
/// Zero in dimensions not divisible by four.
pub fn genus_value(spec: &GenusSpec, m: &ManifoldModel) -> Result<DeltaEpsilon, GenusError> {
    if m.dim_real % 4 != 0 {
        return Ok(DeltaEpsilon::zero());
    }
    match spec {
        GenusSpec::Generic => {
            let q = char_series(&DeltaEpsilon::delta(), &DeltaEpsilon::epsilon(), x_order(m))?;
            characteristic_number(m, &q)
        }
        GenusSpec::Specialized { .. } => Ok(DeltaEpsilon::from_rational(&genus_value_rational(spec, m)?)),
    }
}

pub fn genus_value_rational(spec: &GenusSpec, m: &ManifoldModel) -> Result<Rational, GenusError> {
    let GenusSpec::Specialized { delta, epsilon, .. } = spec else {
        return Err(GenusError::Unsupported("generic genus has no rational value".into()));
    };
    if m.dim_real % 4 != 0 {
        return Ok(int(0));
    }
    let q = char_series(delta, epsilon, x_order(m))?;
    characteristic_number(m, &q)
}

/// Why a genus value is forced to vanish, if it is.
pub fn vanishing_notice(m: &ManifoldModel) -> Option<&'static str> {
    (m.dim_real % 4 != 0).then_some("genus vanishes in dimensions not divisible by 4")
}

/// Checks `φ(ℂP^{2k}) = [t^{2k}] (1 − 2δt² + εt⁴)^{−1/2}` for `k ≤ kmax`.
pub fn cp_generating_check(kmax: u32) -> Result<bool, GenusError> {
    let order = 2 * kmax as i64 + 1;
    let gen = Laurent::new(
        0,
        vec![
            DeltaEpsilon::one(),
            DeltaEpsilon::zero(),
            DeltaEpsilon::delta().scale(&int(-2)),
            DeltaEpsilon::zero(),
            DeltaEpsilon::epsilon(),
        ],
        Some(order),
    )
    .pow_rational(-1, 2)?;
    for k in 0..=kmax {
        let m = if k == 0 {
            crate::manifold::point()
        } else {
            crate::manifold::complex_projective(2 * k)?
        };
        if genus_value(&GenusSpec::Generic, &m)? != gen.coeff(2 * k as i64) {
            return Ok(false);
        }
    }
    Ok(true)
}
