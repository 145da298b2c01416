//! Manifolds described by explicit truncated cohomology, a fundamental-class
//! pairing and (virtual) tangent root data.

mod catalog;
mod file;

pub use catalog::{builtin, complex_projective, hypersurface, point, product, quaternionic_projective};
pub use file::{load_model, model_from_json, model_to_json, ModelFile};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::series::rational::{self, Rational};
use crate::series::{PolySpace, Ring, SeriesError, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("fundamental class pairing is zero")]
    ZeroPairing,
    #[error("unknown generator symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown builtin manifold {0:?}")]
    UnknownBuiltin(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("unsupported for Pontryagin-style tangent data: {0}")]
    Unsupported(String),
    #[error("catalog self-check failed for {name}: {check}")]
    CatalogCheck { name: String, check: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl ModelError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::Schema(_) => "schema",
            ModelError::DimensionMismatch(_) => "dimension-mismatch",
            ModelError::ZeroPairing => "zero-pairing",
            ModelError::UnknownSymbol(_) => "unknown-symbol",
            ModelError::UnknownBuiltin(_) => "unknown-builtin",
            ModelError::Degenerate(_) => "degenerate-parameters",
            ModelError::Unsupported(_) => "unsupported",
            ModelError::CatalogCheck { .. } => "catalog-check",
            ModelError::Series(_) => "series",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    /// Cohomological degree, 2 or 4.
    pub degree: u32,
    /// Highest nonvanishing power.
    pub cap: u32,
}

/// `Q[v_1..v_m]/(v_i^{cap_i+1})` with the value of `[M]` on the top monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyModel {
    generators: Vec<Generator>,
    pairing: Rational,
    space: Arc<PolySpace>,
}

impl CohomologyModel {
    pub fn new(generators: Vec<Generator>, pairing: Rational) -> Result<Self, ModelError> {
        if pairing.is_zero() {
            return Err(ModelError::ZeroPairing);
        }
        for g in &generators {
            if g.degree != 2 && g.degree != 4 {
                return Err(ModelError::Schema(format!(
                    "generator {} has degree {}, expected 2 or 4",
                    g.symbol, g.degree
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.symbol.clone()) {
                return Err(ModelError::Schema(format!("duplicate generator {}", g.symbol)));
            }
        }
        let space = PolySpace::new(
            generators.iter().map(|g| g.symbol.clone()).collect(),
            generators.iter().map(|g| g.cap).collect(),
        );
        Ok(CohomologyModel { generators, pairing, space })
    }

    pub fn point() -> Self {
        CohomologyModel { generators: Vec::new(), pairing: rational::int(1), space: PolySpace::point() }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn pairing(&self) -> &Rational {
        &self.pairing
    }

    pub fn space(&self) -> &Arc<PolySpace> {
        &self.space
    }

    pub fn real_dim(&self) -> u32 {
        self.generators.iter().map(|g| g.degree * g.cap).sum()
    }

    /// `⟨class, [M]⟩`: top-monomial coefficient times the pairing value.
    pub fn evaluate<R: Ring>(&self, class: &TruncPoly<R>) -> R {
        class.top_coeff().scale(&self.pairing)
    }

    pub fn generator(&self, symbol: &str) -> Option<(usize, &Generator)> {
        self.generators.iter().enumerate().find(|(_, g)| g.symbol == symbol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootStyle {
    /// The form is a Chern root `x` (a degree-2 class).
    Chern,
    /// The form is the square `x²` of a root pair (a degree-4 class).
    Pontryagin,
}

impl fmt::Display for RootStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootStyle::Chern => "chern",
            RootStyle::Pontryagin => "pontryagin",
        })
    }
}

/// Rational linear combination of generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm(pub BTreeMap<String, Rational>);

impl LinearForm {
    pub fn single(symbol: &str, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        m.insert(symbol.to_string(), c);
        LinearForm(m)
    }

    pub fn zero() -> Self {
        LinearForm(BTreeMap::new())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        LinearForm(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Self {
        LinearForm(self.0.iter().map(|(k, v)| (f(k), v.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|c| c.is_zero())
    }

    /// The form as an element of the cohomology ring.
    pub fn to_poly<R: Ring>(&self, cohomology: &CohomologyModel) -> Result<TruncPoly<R>, ModelError> {
        let mut coeffs = Vec::new();
        for (sym, c) in &self.0 {
            let (i, _) = cohomology
                .generator(sym)
                .ok_or_else(|| ModelError::UnknownSymbol(sym.clone()))?;
            coeffs.push((i, c.clone()));
        }
        let space = cohomology.space();
        Ok(TruncPoly::<Rational>::linear_form(space, &coeffs).map(R::from_rational))
    }

    fn degree_in(&self, cohomology: &CohomologyModel) -> Result<Option<u32>, ModelError> {
        let mut deg = None;
        for (sym, c) in &self.0 {
            if c.is_zero() {
                continue;
            }
            let (_, g) = cohomology
                .generator(sym)
                .ok_or_else(|| ModelError::UnknownSymbol(sym.clone()))?;
            match deg {
                None => deg = Some(g.degree),
                Some(d) if d != g.degree => {
                    return Err(ModelError::Schema("linear form mixes degrees".into()))
                }
                _ => {}
            }
        }
        Ok(deg)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentEntry {
    pub form: LinearForm,
    /// Signed multiplicity; negative entries are subtracted (virtual bundle).
    pub mult: i64,
    pub style: RootStyle,
}

/// Virtual tangent bundle: `Σ mult·L(form) − Δ·(trivial)`, one complex line
/// (one root pair) per unit of multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentData {
    pub style: RootStyle,
    pub delta: i64,
    pub entries: Vec<TangentEntry>,
}

impl TangentData {
    pub fn virtual_rank(&self) -> i64 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    pub fn is_chern(&self) -> bool {
        self.entries.iter().all(|e| e.style == RootStyle::Chern)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldModel {
    pub name: String,
    pub cohomology: CohomologyModel,
    pub tangent: TangentData,
    pub dim_real: u32,
    pub spin: bool,
}

impl ManifoldModel {
    /// Assemble and validate dimension consistency.
    pub fn new(
        name: impl Into<String>,
        cohomology: CohomologyModel,
        tangent: TangentData,
        dim_real: u32,
        spin: bool,
    ) -> Result<Self, ModelError> {
        let m = ManifoldModel { name: name.into(), cohomology, tangent, dim_real, spin };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.cohomology.real_dim() != self.dim_real {
            return Err(ModelError::DimensionMismatch(format!(
                "cohomology has top degree {}, declared dimension {}",
                self.cohomology.real_dim(),
                self.dim_real
            )));
        }
        if self.dim_real % 2 != 0 {
            return Err(ModelError::DimensionMismatch("odd real dimension".into()));
        }
        let rank = self.tangent.virtual_rank() - self.tangent.delta;
        if rank != (self.dim_real / 2) as i64 {
            return Err(ModelError::DimensionMismatch(format!(
                "sum of multiplicities minus delta is {rank}, complex dimension is {}",
                self.dim_real / 2
            )));
        }
        for e in &self.tangent.entries {
            let want = match e.style {
                RootStyle::Chern => 2,
                RootStyle::Pontryagin => 4,
            };
            if let Some(d) = e.form.degree_in(&self.cohomology)? {
                if d != want {
                    return Err(ModelError::Schema(format!(
                        "{} entry uses degree-{d} generators",
                        e.style
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn point() -> Self {
        point()
    }

    pub fn is_point(&self) -> bool {
        self.dim_real == 0
    }

    /// `k` with `dim = 4k`, if the dimension is divisible by four.
    pub fn quarter_dim(&self) -> Option<u32> {
        (self.dim_real % 4 == 0).then_some(self.dim_real / 4)
    }

    pub fn complex_dim(&self) -> u32 {
        self.dim_real / 2
    }

    pub fn space(&self) -> &Arc<PolySpace> {
        self.cohomology.space()
    }

    /// `∏ (1 + form)^mult` over Chern entries.
    pub fn total_chern_class(&self) -> Result<TruncPoly<Rational>, ModelError> {
        if !self.tangent.is_chern() {
            return Err(ModelError::Unsupported("total Chern class".into()));
        }
        let space = self.space();
        let one = TruncPoly::<Rational>::one(space);
        let mut acc = one.clone();
        for e in &self.tangent.entries {
            let f = one.add(&e.form.to_poly(&self.cohomology)?)?;
            acc = acc.mul(&f.powi(e.mult)?)?;
        }
        Ok(acc)
    }

    /// `∏ (1 + x²)^mult`, with `x²` the form itself for Pontryagin entries.
    pub fn total_pontryagin_class(&self) -> Result<TruncPoly<Rational>, ModelError> {
        let space = self.space();
        let one = TruncPoly::<Rational>::one(space);
        let mut acc = one.clone();
        for e in &self.tangent.entries {
            let x: TruncPoly<Rational> = e.form.to_poly(&self.cohomology)?;
            let sq = match e.style {
                RootStyle::Chern => x.mul(&x)?,
                RootStyle::Pontryagin => x,
            };
            acc = acc.mul(&one.add(&sq)?.powi(e.mult)?)?;
        }
        Ok(acc)
    }

    /// First Chern class (Chern-style data only).
    pub fn first_chern_class(&self) -> Result<TruncPoly<Rational>, ModelError> {
        let c = self.total_chern_class()?;
        let space = self.space();
        let mut out = TruncPoly::zero(space);
        for (exps, v) in c.terms() {
            if exps.iter().sum::<u32>() == 1 {
                out = out.add(&TruncPoly::monomial(space, v.clone(), exps))?;
            }
        }
        Ok(out)
    }

    /// Euler characteristic as the top Chern number.
    pub fn euler_characteristic(&self) -> Result<Rational, ModelError> {
        if self.is_point() {
            return Ok(rational::int(1));
        }
        let c = self.total_chern_class()?;
        Ok(self.cohomology.evaluate(&c))
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim_real)
    }
}
