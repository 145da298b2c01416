//! Lefschetz fixed-point evaluation of the equivariant LOOP-word signature
//! for circle actions given by fixed-point data.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::{loop_pair, loop_sign_series, tangent_class, x_order, GenusError};
use crate::manifold::{self, LinearForm, ManifoldModel, ModelError, ModelFile, RootStyle};
use crate::series::rational::{self, int, Rational};
use crate::series::{s_order, Gaussian, Laurent, QSeries, Ring, SeriesError, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("inadmissible sample: {0}")]
    Inadmissible(String),
    #[error("invalid action data: {0}")]
    Invalid(String),
    #[error("unknown builtin action {0:?}")]
    UnknownBuiltin(String),
}

/// Exact evaluation point `λ` in Q or Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SamplePoint(pub Gaussian);

impl SamplePoint {
    pub fn rational(q: Rational) -> Self {
        SamplePoint(Gaussian::real(q))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn i() -> Self {
        SamplePoint(Gaussian::i())
    }

    /// `p/q`, `i`, `-i`, `a+bi` or `a-bi` with rational `a`, `b`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return rational::parse(&s).ok().map(Self::rational);
        };
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last();
        let (re, im) = match split {
            Some((k, _)) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im.trim_end_matches('*') {
            "" | "+" => int(1),
            "-" => int(-1),
            t => rational::parse(t).ok()?,
        };
        Some(SamplePoint(Gaussian::new(rational::parse(re).ok()?, im)))
    }
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalEntry {
    /// First Chern class of the normal line, in the component's generators.
    pub chern: LinearForm,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedComponent {
    pub model: ManifoldModel,
    pub normal: Vec<NormalEntry>,
}

impl FixedComponent {
    pub fn point(weights: &[i64]) -> Self {
        FixedComponent {
            model: manifold::point(),
            normal: weights.iter().map(|&w| NormalEntry { chern: LinearForm::zero(), weight: w }).collect(),
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        self.normal.iter().map(|n| n.weight).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Every `σ`-fixed codimension is `0 mod 4`.
    Even,
    /// Every `σ`-fixed codimension is `2 mod 4`.
    Odd,
    Mixed,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleActionData {
    pub ambient: ManifoldModel,
    pub components: Vec<FixedComponent>,
    pub provenance: String,
}

impl CircleActionData {
    pub fn new(
        ambient: ManifoldModel,
        components: Vec<FixedComponent>,
        provenance: impl Into<String>,
    ) -> Result<Self, LocalizeError> {
        let a = CircleActionData { ambient, components, provenance: provenance.into() };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), LocalizeError> {
        if self.components.is_empty() {
            return Err(LocalizeError::Invalid("no fixed components".into()));
        }
        for c in &self.components {
            let dim = c.model.dim_real as usize + 2 * c.normal.len();
            if dim != self.ambient.dim_real as usize {
                return Err(LocalizeError::Invalid(format!(
                    "component {} has dimension {} plus {} normal lines, ambient has dimension {}",
                    c.model.name,
                    c.model.dim_real,
                    c.normal.len(),
                    self.ambient.dim_real
                )));
            }
            for n in &c.normal {
                if n.weight == 0 {
                    return Err(LocalizeError::Invalid("zero weight in normal data".into()));
                }
                for sym in n.chern.0.keys() {
                    let (_, g) = c
                        .model
                        .cohomology
                        .generator(sym)
                        .ok_or_else(|| ModelError::UnknownSymbol(sym.clone()))?;
                    if g.degree != 2 {
                        return Err(LocalizeError::Invalid(format!(
                            "normal Chern class uses degree-{} generator {sym}",
                            g.degree
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn spin(&self) -> bool {
        self.ambient.spin
    }

    /// Parity of the involution `σ = −1`, read from the `σ`-fixed
    /// codimensions `2·#{odd weights}`.
    pub fn parity(&self) -> Parity {
        let codims: Vec<usize> = self
            .components
            .iter()
            .map(|c| 2 * c.normal.iter().filter(|n| n.weight % 2 != 0).count())
            .collect();
        if codims.iter().all(|c| c % 4 == 0) {
            Parity::Even
        } else if codims.iter().all(|c| c % 4 == 2) {
            Parity::Odd
        } else {
            Parity::Mixed
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.components.iter().flat_map(|c| c.weights()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

/// `ℂPⁿ_linear(m₀..mₙ)` or `ℍPⁿ_diagonal(a₀..aₙ)`.
pub fn builtin_action(name: &str) -> Result<CircleActionData, LocalizeError> {
    let name = name.trim();
    let unknown = || LocalizeError::UnknownBuiltin(name.to_string());
    let (head, args) = name
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(unknown)?;
    let weights: Vec<i64> = args
        .split(',')
        .map(|a| a.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| unknown())?;
    if let Some(n) = head.strip_prefix("CP").and_then(|h| h.strip_suffix("_linear")) {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if weights.len() != n + 1 {
            return Err(LocalizeError::Invalid(format!("CP{n} needs {} weights", n + 1)));
        }
        return cp_linear(&weights, name);
    }
    if let Some(n) = head.strip_prefix("HP").and_then(|h| h.strip_suffix("_diagonal")) {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if weights.len() != n + 1 {
            return Err(LocalizeError::Invalid(format!("HP{n} needs {} weights", n + 1)));
        }
        return hp_diagonal(&weights, name);
    }
    Err(unknown())
}

/// Linear action on ℂPⁿ: one fixed ℂP^{g−1} per group of `g` equal weights,
/// normal lines `L(h)` with weights `m_j − m_i`.
pub fn cp_linear(weights: &[i64], provenance: &str) -> Result<CircleActionData, LocalizeError> {
    let n = weights.len() - 1;
    let ambient = manifold::complex_projective(n as u32)?;
    let mut groups: Vec<i64> = weights.to_vec();
    groups.sort_unstable();
    groups.dedup();
    let mut components = Vec::new();
    for &m in &groups {
        let size = weights.iter().filter(|&&w| w == m).count();
        let others: Vec<i64> = weights.iter().filter(|&&w| w != m).map(|&w| w - m).collect();
        let comp = if size == 1 {
            FixedComponent::point(&others)
        } else {
            FixedComponent {
                model: manifold::complex_projective(size as u32 - 1)?,
                normal: others
                    .iter()
                    .map(|&w| NormalEntry { chern: LinearForm::single("h", int(1)), weight: w })
                    .collect(),
            }
        };
        components.push(comp);
    }
    CircleActionData::new(ambient, components, provenance)
}

/// Diagonal action on ℍPⁿ with isolated fixed points; at point `i` the
/// tangent weights are `a_j − a_i` and `a_j + a_i`, `j ≠ i`.
pub fn hp_diagonal(a: &[i64], provenance: &str) -> Result<CircleActionData, LocalizeError> {
    let n = a.len() - 1;
    for i in 0..a.len() {
        for j in 0..i {
            if a[i].abs() == a[j].abs() {
                return Err(LocalizeError::Invalid(format!(
                    "weights {} and {} give a positive-dimensional fixed set",
                    a[j], a[i]
                )));
            }
        }
    }
    let ambient = manifold::quaternionic_projective(n as u32)?;
    let components = (0..=n)
        .map(|i| {
            let w: Vec<i64> = (0..=n)
                .filter(|&j| j != i)
                .flat_map(|j| [a[j] - a[i], a[j] + a[i]])
                .collect();
            FixedComponent::point(&w)
        })
        .collect();
    CircleActionData::new(ambient, components, provenance)
}

type GSeries = QSeries<Gaussian>;
type GXSeries = Laurent<GSeries>;

fn inv_factorial(j: u32) -> Rational {
    Rational::new(1.into(), rational::factorial(j))
}

/// `c·e^{±y}` as a series in `y` with constant coefficients in `s`.
fn scaled_exp(c: &GSeries, sign: i64, xo: i64) -> GXSeries {
    let coeffs = (0..xo)
        .map(|j| {
            let f = inv_factorial(j as u32) * if sign < 0 && j % 2 == 1 { int(-1) } else { int(1) };
            c.scale(&f)
        })
        .collect();
    Laurent::new(0, coeffs, Some(xo))
}

/// `(1+z)/(1−z)` for an x-series `z`.
fn cayley(z: &GXSeries) -> Result<GXSeries, SeriesError> {
    let one = GXSeries::one();
    one.add(z).div(&one.sub(z))
}

/// Normal factor for a line with root `y` and rotation `μ = λ^w`:
/// `(1+e^{−y}μ^{−1})/(1−e^{−y}μ^{−1}) · ∏ₙ (1+qⁿe^yμ)(1+qⁿe^{−y}μ^{−1})/((1−qⁿe^yμ)(1−qⁿe^{−y}μ^{−1}))`.
pub fn normal_factor(weight: i64, lambda: &SamplePoint, xo: i64, qorder: u32) -> Result<GXSeries, LocalizeError> {
    let mu = lambda
        .0
        .powi(weight)
        .ok_or_else(|| LocalizeError::Inadmissible(format!("lambda = {lambda} is zero")))?;
    if mu.is_one() {
        return Err(LocalizeError::Inadmissible(format!("lambda^{weight} = 1 at lambda = {lambda}")));
    }
    let mu_inv = mu.try_inv().expect("nonzero");
    let n = s_order(qorder);
    let c = |v: &Gaussian, qpow: i64| GSeries::monomial(v.clone(), 2 * qpow).truncate(n);
    let mut f = cayley(&scaled_exp(&c(&mu_inv, 0), -1, xo))?;
    for k in 1..=qorder as i64 {
        f = f.mul(&cayley(&scaled_exp(&c(&mu, k), 1, xo))?);
        f = f.mul(&cayley(&scaled_exp(&c(&mu_inv, k), -1, xo))?);
    }
    Ok(f)
}

fn loop_pair_gaussian(xo: i64, qorder: u32) -> Result<GXSeries, LocalizeError> {
    Ok(loop_pair(xo, qorder)?.map(|c| c.map(|r| Gaussian::real(r.clone()))))
}

/// `⟨T(tangent roots) · ∏ N_w(y), [X]⟩`; a point gives the normal product.
pub fn local_term(c: &FixedComponent, lambda: &SamplePoint, qorder: u32) -> Result<GSeries, LocalizeError> {
    let m = &c.model;
    let xo = x_order(m);
    let t = loop_pair_gaussian(xo, qorder)?;
    let mut acc = tangent_class(m, &t)?;
    for e in &c.normal {
        let y: TruncPoly<GSeries> = e.chern.to_poly(&m.cohomology)?;
        let nf = normal_factor(e.weight, lambda, xo, qorder)?;
        acc = acc.mul(&y.substitute_into(&nf)?)?;
    }
    Ok(m.cohomology.evaluate(&acc).truncate(s_order(qorder)))
}

/// Sum of the local terms at `λ`.
pub fn equivariant_series(a: &CircleActionData, lambda: &SamplePoint, qorder: u32) -> Result<GSeries, LocalizeError> {
    let mut acc = GSeries::zero_to(s_order(qorder));
    for c in &a.components {
        acc = acc.add(&local_term(c, lambda, qorder)?);
    }
    Ok(acc)
}

pub fn to_gaussian(s: &QSeries) -> GSeries {
    s.map(|c| Gaussian::real(c.clone()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityReport {
    pub samples: Vec<(SamplePoint, GSeries)>,
    pub reference: GSeries,
    pub all_agree: bool,
    pub matches_reference: bool,
    pub q0_constant: bool,
    pub spin: bool,
    pub parity: Parity,
    /// For odd actions on spin manifolds the series must vanish.
    pub odd_vanishing: Option<bool>,
}

impl RigidityReport {
    pub fn pass(&self) -> bool {
        self.all_agree && self.matches_reference && self.odd_vanishing != Some(false)
    }
}

/// Evaluate at every sample and compare with each other and with the
/// nonequivariant `sign(q, ℒM)`.
pub fn rigidity_check(
    a: &CircleActionData,
    samples: &[SamplePoint],
    qorder: u32,
) -> Result<RigidityReport, LocalizeError> {
    if samples.is_empty() {
        return Err(LocalizeError::Inadmissible("no samples".into()));
    }
    let values = samples
        .iter()
        .map(|l| Ok((l.clone(), equivariant_series(a, l, qorder)?)))
        .collect::<Result<Vec<_>, LocalizeError>>()?;
    let reference = to_gaussian(&loop_sign_series(&a.ambient, qorder)?.series);
    let first = &values[0].1;
    let all_agree = values.iter().all(|(_, v)| v.agrees_with(first));
    let matches_reference = values.iter().all(|(_, v)| v.agrees_with(&reference));
    let q0_constant = values.iter().all(|(_, v)| v.coeff(0) == first.coeff(0));
    let parity = a.parity();
    let odd_vanishing = (a.spin() && parity == Parity::Odd)
        .then(|| values.iter().all(|(_, v)| v.agrees_with(&GSeries::zero_to(s_order(qorder)))));
    Ok(RigidityReport {
        samples: values,
        reference,
        all_agree,
        matches_reference,
        q0_constant,
        spin: a.spin(),
        parity,
        odd_vanishing,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerCheck {
    pub fixed_sum: Rational,
    pub ambient: Rational,
    /// Components whose Euler characteristic could not be computed.
    pub skipped: Vec<String>,
}

impl EulerCheck {
    pub fn ok(&self) -> bool {
        self.skipped.is_empty() && self.fixed_sum == self.ambient
    }
}

/// Euler characteristic from tangent data; Pontryagin-style models fall
/// back to the rank of their (monogenic, even) cohomology.
fn euler_of(m: &ManifoldModel) -> Option<Rational> {
    if m.tangent.is_chern() {
        return m.euler_characteristic().ok();
    }
    let monogenic_even = m.tangent.entries.iter().all(|e| e.style == RootStyle::Pontryagin);
    monogenic_even.then(|| {
        let rank: u64 = m.cohomology.generators().iter().map(|g| g.cap as u64 + 1).product();
        int(rank as i64)
    })
}

/// `χ(M) = Σ χ(fixed components)`.
pub fn euler_fixed_check(a: &CircleActionData) -> EulerCheck {
    let mut sum = int(0);
    let mut skipped = Vec::new();
    for c in &a.components {
        match euler_of(&c.model) {
            Some(x) => sum += x,
            None => skipped.push(c.model.name.clone()),
        }
    }
    let ambient = euler_of(&a.ambient).unwrap_or_else(|| {
        skipped.push(a.ambient.name.clone());
        int(0)
    });
    EulerCheck { fixed_sum: sum, ambient, skipped }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum ModelRef {
    Name(String),
    Inline(Box<ModelFile>),
}

impl ModelRef {
    fn resolve(self) -> Result<ManifoldModel, LocalizeError> {
        match self {
            ModelRef::Name(n) => {
                let n = n.strip_prefix("builtin:").unwrap_or(&n);
                Ok(manifold::builtin(n)?)
            }
            ModelRef::Inline(f) => Ok(f.into_model()?),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct NormalFile {
    pub chern: std::collections::BTreeMap<String, String>,
    pub weight: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub model: ModelRef,
    pub normal: Vec<NormalFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub ambient: ModelRef,
    pub components: Vec<ComponentFile>,
}

pub fn action_from_json(text: &str, provenance: &str) -> Result<CircleActionData, LocalizeError> {
    let f: ActionFile =
        serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    let ambient = f.ambient.resolve()?;
    let mut comps = Vec::new();
    for c in f.components {
        let model = c.model.resolve()?;
        let mut normal = Vec::new();
        for n in c.normal {
            let mut form = std::collections::BTreeMap::new();
            for (k, v) in n.chern {
                let q = rational::parse(&v).map_err(|_| ModelError::Schema(format!("bad rational {v:?}")))?;
                form.insert(k, q);
            }
            normal.push(NormalEntry { chern: LinearForm(form), weight: n.weight });
        }
        comps.push(FixedComponent { model, normal });
    }
    CircleActionData::new(ambient, comps, provenance)
}

/// Serialize with every model inlined; reads back through `action_from_json`.
pub fn action_to_json(a: &CircleActionData) -> String {
    let inline = |m: &ManifoldModel| ModelRef::Inline(Box::new(ModelFile::from_model(m)));
    let f = ActionFile {
        ambient: inline(&a.ambient),
        components: a
            .components
            .iter()
            .map(|c| ComponentFile {
                model: inline(&c.model),
                normal: c
                    .normal
                    .iter()
                    .map(|n| NormalFile {
                        chern: n.chern.0.iter().map(|(k, v)| (k.clone(), rational::format(v))).collect(),
                        weight: n.weight,
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&f).expect("action file serializes")
}

pub fn load_action(path: &Path) -> Result<CircleActionData, LocalizeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Schema(format!("{}: {e}", path.display())))?;
    action_from_json(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusp::{generator_expansions, Cusp};

    fn g(n: i64) -> Gaussian {
        Gaussian::real(int(n))
    }

    #[test]
    fn sample_parsing() {
        assert_eq!(SamplePoint::parse("i").unwrap(), SamplePoint::i());
        assert_eq!(SamplePoint::parse("-i").unwrap().0, Gaussian::i().neg());
        assert_eq!(SamplePoint::parse("3/2").unwrap(), SamplePoint::rational(rational::rat(3, 2)));
        assert_eq!(SamplePoint::parse("1+2i").unwrap().0, Gaussian::new(int(1), int(2)));
        assert_eq!(SamplePoint::parse("1-i").unwrap().0, Gaussian::new(int(1), int(-1)));
        assert!(SamplePoint::parse("x").is_none());
    }

    #[test]
    fn cp_linear_grouping() {
        let a = builtin_action("CP2_linear(0,0,1)").unwrap();
        assert_eq!(a.components.len(), 2);
        assert_eq!(a.components[0].model.name, "CP1");
        assert_eq!(a.components[0].weights(), vec![1]);
        assert_eq!(a.components[1].weights(), vec![-1, -1]);
        assert!(euler_fixed_check(&a).ok());
    }

    #[test]
    fn hp_weights() {
        let a = builtin_action("HP1_diagonal(1,2)").unwrap();
        assert_eq!(a.components[0].weights(), vec![1, 3]);
        assert_eq!(a.components[1].weights(), vec![-1, 3]);
        assert!(builtin_action("HP1_diagonal(1,-1)").is_err());
        let b = builtin_action("HP2_diagonal(1,2,4)").unwrap();
        assert_eq!(b.components.len(), 3);
        assert!(euler_fixed_check(&b).ok());
    }

    #[test]
    fn signature_of_cp2_from_points() {
        let a = builtin_action("CP2_linear(0,1,2)").unwrap();
        for l in [2, 3] {
            let s = equivariant_series(&a, &SamplePoint::int(l), 0).unwrap();
            assert_eq!(s.coeff(0), g(1));
        }
    }

    #[test]
    fn quaternionic_cancellation_and_generator() {
        let hp1 = builtin_action("HP1_diagonal(1,2)").unwrap();
        let s = equivariant_series(&hp1, &SamplePoint::int(2), 3).unwrap();
        assert!(s.agrees_with(&GSeries::zero_to(7)));
        let hp2 = builtin_action("HP2_diagonal(1,2,4)").unwrap();
        let eps = to_gaussian(&generator_expansions(Cusp::Signature, 3).unwrap().epsilon);
        assert!(equivariant_series(&hp2, &SamplePoint::int(2), 3).unwrap().agrees_with(&eps));
    }

    #[test]
    fn trivial_action_is_nonequivariant() {
        let a = builtin_action("CP2_linear(5,5,5)").unwrap();
        assert_eq!(a.components.len(), 1);
        let direct = to_gaussian(&loop_sign_series(&a.ambient, 3).unwrap().series);
        let s = equivariant_series(&a, &SamplePoint::int(2), 3).unwrap();
        assert!(s.agrees_with(&direct));
    }

    #[test]
    fn rotation_by_i() {
        // N-factor pair with y2 = −y1 at λ = i is −1
        let cp3 = manifold::complex_projective(3).unwrap();
        let xo = x_order(&cp3);
        let nf = normal_factor(1, &SamplePoint::i(), xo, 3).unwrap();
        let y: TruncPoly<GSeries> = LinearForm::single("h", int(1)).to_poly(&cp3.cohomology).unwrap();
        let prod = y.substitute_into(&nf).unwrap().mul(&y.neg().substitute_into(&nf).unwrap()).unwrap();
        let minus_one = TruncPoly::constant(cp3.space(), GSeries::one().neg());
        for (k, v) in prod.sub(&minus_one).unwrap().terms() {
            assert!(v.agrees_with(&GSeries::zero_to(7)), "{k:?}");
        }
        // isolated point in dimension 4k with all rotations i: (−i)^{2k}
        for k in 1..=3 {
            let p = FixedComponent::point(&vec![1; 2 * k]);
            let t = local_term(&p, &SamplePoint::i(), 3).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert!(t.agrees_with(&GSeries::constant(g(sign))));
        }
    }

    #[test]
    fn inadmissible_samples() {
        let a = builtin_action("CP2_linear(0,1,2)").unwrap();
        assert!(matches!(
            equivariant_series(&a, &SamplePoint::int(1), 1),
            Err(LocalizeError::Inadmissible(_))
        ));
        assert!(equivariant_series(&a, &SamplePoint::int(-1), 1).is_err());
    }

    #[test]
    fn parity_detection() {
        let s4 = CircleActionData::new(
            manifold::quaternionic_projective(1).unwrap(),
            vec![FixedComponent::point(&[1, 2]), FixedComponent::point(&[-1, 2])],
            "test",
        )
        .unwrap();
        assert_eq!(s4.parity(), Parity::Odd);
        let r = rigidity_check(&s4, &[SamplePoint::int(2), SamplePoint::int(3), SamplePoint::int(5)], 3).unwrap();
        assert_eq!(r.odd_vanishing, Some(true));
        assert!(r.pass());
        let hp2 = builtin_action("HP2_diagonal(1,2,4)").unwrap();
        assert_eq!(hp2.parity(), Parity::Even);
    }
}
