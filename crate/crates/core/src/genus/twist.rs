//! Twisted Â and signature indices for words in `Λ_t`, `S_t` applied to the
//! tangent bundle, evaluated per root pair.

use std::fmt;

use crate::manifold::ManifoldModel;
use crate::series::rational::{self, int, Rational};
use crate::series::{s_order, Laurent, QSeries, Ring, SeriesError};

use super::{characteristic_number, x_order, GenusError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistGenus {
    Ahat,
    Signature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    Lambda,
    Sym,
}

/// `Λ_t` or `S_t` of `TM ⊗ ℂ` at `t = sign·q^qpow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordFactor {
    pub op: WordOp,
    pub sign: i8,
    pub qpow: u32,
}

/// Single bundles, read off the `t`-expansion of `Λ_t` or `S_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    /// `TM ⊗ ℂ`.
    Tangent,
    /// `TM` as a complex bundle; Chern-style models only.
    HolomorphicTangent,
    Exterior(u32),
    Symmetric(u32),
    /// `Λ²(TM⊗ℂ) + TM⊗ℂ`.
    Lambda2PlusTangent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistDescriptor {
    Trivial,
    /// `⊗_{n odd} Λ_{−qⁿ} ⊗ ⊗_{n even} S_{qⁿ}`.
    Phi0Word,
    /// `⊗_{n ≥ 1} S_{qⁿ} ⊗ Λ_{qⁿ}`.
    LoopWord,
    Word(Vec<WordFactor>),
    Bundle(Bundle),
}

impl TwistDescriptor {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let num = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix("TM")).and_then(|r| r.parse().ok());
        Some(match s {
            "trivial" | "1" => TwistDescriptor::Trivial,
            "PHI0" | "phi0" => TwistDescriptor::Phi0Word,
            "LOOP" | "loop" => TwistDescriptor::LoopWord,
            "TM" => TwistDescriptor::Bundle(Bundle::Tangent),
            "TM_hol" | "T_hol" => TwistDescriptor::Bundle(Bundle::HolomorphicTangent),
            "L2TM+TM" => TwistDescriptor::Bundle(Bundle::Lambda2PlusTangent),
            _ => {
                if let Some(j) = num("L") {
                    TwistDescriptor::Bundle(Bundle::Exterior(j))
                } else if let Some(j) = num("S") {
                    TwistDescriptor::Bundle(Bundle::Symmetric(j))
                } else {
                    return None;
                }
            }
        })
    }

    /// The finite word that agrees with this descriptor through `q^qorder`.
    fn factors(&self, qorder: u32) -> Vec<WordFactor> {
        match self {
            TwistDescriptor::Phi0Word => (1..=qorder)
                .map(|n| {
                    if n % 2 == 1 {
                        WordFactor { op: WordOp::Lambda, sign: -1, qpow: n }
                    } else {
                        WordFactor { op: WordOp::Sym, sign: 1, qpow: n }
                    }
                })
                .collect(),
            TwistDescriptor::LoopWord => (1..=qorder)
                .flat_map(|n| {
                    [
                        WordFactor { op: WordOp::Sym, sign: 1, qpow: n },
                        WordFactor { op: WordOp::Lambda, sign: 1, qpow: n },
                    ]
                })
                .collect(),
            TwistDescriptor::Word(w) => w.iter().copied().filter(|f| f.qpow <= qorder).collect(),
            TwistDescriptor::Trivial | TwistDescriptor::Bundle(_) => Vec::new(),
        }
    }
}

impl fmt::Display for TwistDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistDescriptor::Trivial => write!(f, "trivial"),
            TwistDescriptor::Phi0Word => write!(f, "PHI0"),
            TwistDescriptor::LoopWord => write!(f, "LOOP"),
            TwistDescriptor::Word(w) => {
                let parts: Vec<String> = w
                    .iter()
                    .map(|x| {
                        let op = if x.op == WordOp::Lambda { "L" } else { "S" };
                        let sign = if x.sign < 0 { "-" } else { "" };
                        format!("{op}_{sign}q^{}", x.qpow)
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
            TwistDescriptor::Bundle(b) => match b {
                Bundle::Tangent => write!(f, "TM"),
                Bundle::HolomorphicTangent => write!(f, "TM_hol"),
                Bundle::Exterior(j) => write!(f, "L{j}TM"),
                Bundle::Symmetric(j) => write!(f, "S{j}TM"),
                Bundle::Lambda2PlusTangent => write!(f, "L2TM+TM"),
            },
        }
    }
}

fn inv_factorial(j: u32) -> Rational {
    Rational::new(1.into(), rational::factorial(j))
}

/// `x/(e^x − 1)` below `x^order`.
fn todd_inverse(order: i64) -> Result<Laurent<Rational>, SeriesError> {
    let coeffs = (0..order.max(1) as u32).map(|j| inv_factorial(j + 1)).collect();
    Laurent::new(0, coeffs, Some(order)).inv()
}

fn exp_scaled(a: &Rational, order: i64) -> Laurent<Rational> {
    let coeffs = (0..order.max(0) as u32)
        .map(|j| num_traits::pow(a.clone(), j as usize) * inv_factorial(j))
        .collect();
    Laurent::new(0, coeffs, Some(order))
}

/// `(x/2)/sinh(x/2)`.
pub fn ahat_pair(order: i64) -> Result<Laurent<Rational>, SeriesError> {
    Ok(exp_scaled(&rational::rat(1, 2), order).mul(&todd_inverse(order)?))
}

/// `x·coth(x/2)`, the signature-operator factor; equal to 2 at `x = 0`.
pub fn signature_pair(order: i64) -> Result<Laurent<Rational>, SeriesError> {
    let e = exp_scaled(&int(1), order).add(&Laurent::one());
    Ok(e.mul(&todd_inverse(order)?))
}

type XSeries = Laurent<QSeries>;

/// Per-pair `Λ_t`: `1 + t² + 2t·cosh x`, or `S_t` as the inverse of the
/// `Λ_{−t}` expression.
fn pair_factor(op: WordOp, t: &QSeries, xo: i64) -> Result<XSeries, SeriesError> {
    let c = if op == WordOp::Lambda { t.clone() } else { t.neg() };
    let one = QSeries::one();
    let mut coeffs = Vec::with_capacity(xo as usize);
    for j in 0..xo {
        coeffs.push(if j == 0 {
            one.add(&c.scale(&int(2))).add(&t.mul(t))
        } else if j % 2 == 0 {
            c.scale(&(int(2) * inv_factorial(j as u32)))
        } else {
            QSeries::zero()
        });
    }
    let f = Laurent::new(0, coeffs, Some(xo));
    match op {
        WordOp::Lambda => Ok(f),
        WordOp::Sym => f.inv(),
    }
}

/// `1 + t·e^x` for one complex line.
fn holomorphic_lambda(t: &QSeries, xo: i64) -> XSeries {
    let coeffs = (0..xo)
        .map(|j| {
            let c = t.scale(&inv_factorial(j as u32));
            if j == 0 {
                c.add(&QSeries::one())
            } else {
                c
            }
        })
        .collect();
    Laurent::new(0, coeffs, Some(xo))
}

fn base_pair(genus: TwistGenus, xo: i64) -> Result<Laurent<Rational>, SeriesError> {
    match genus {
        TwistGenus::Ahat => ahat_pair(xo),
        TwistGenus::Signature => signature_pair(xo),
    }
}

fn lift(p: &Laurent<Rational>) -> XSeries {
    p.map(|c| QSeries::constant(c.clone()))
}

/// Per-pair factor `Q(x)·ch(word)` below `x^xo`, with word factors through
/// `q^qorder`.
fn word_pair(genus: TwistGenus, word: &TwistDescriptor, xo: i64, qorder: u32) -> Result<XSeries, SeriesError> {
    let n = s_order(qorder);
    let mut p = lift(&base_pair(genus, xo)?).map(|c| c.truncate(n));
    for f in word.factors(qorder) {
        let t = QSeries::monomial(int(f.sign as i64), 2 * f.qpow as i64).truncate(n);
        p = p.mul(&pair_factor(f.op, &t, xo)?);
    }
    Ok(p)
}

/// `x·coth(x/2)·∏ₙ (1+qⁿeˣ)(1+qⁿe⁻ˣ)/((1−qⁿeˣ)(1−qⁿe⁻ˣ))` below `x^xo`.
pub fn loop_pair(xo: i64, qorder: u32) -> Result<Laurent<QSeries>, SeriesError> {
    word_pair(TwistGenus::Signature, &TwistDescriptor::LoopWord, xo, qorder)
}

/// `⟨Q·ch(word), [M]⟩` as a series in `s = q^{1/2}`, known through
/// `q^qorder`. Bundle descriptors give a constant series.
pub fn twisted_index(
    genus: TwistGenus,
    m: &ManifoldModel,
    word: &TwistDescriptor,
    qorder: u32,
) -> Result<QSeries, GenusError> {
    match word {
        TwistDescriptor::Bundle(b) => {
            let v = bundle_index(genus, m, *b)?;
            Ok(QSeries::constant(v).truncate(s_order(qorder)))
        }
        _ => characteristic_number(m, &word_pair(genus, word, x_order(m), qorder)?),
    }
}

fn bundle_index(genus: TwistGenus, m: &ManifoldModel, b: Bundle) -> Result<Rational, GenusError> {
    let xo = x_order(m);
    let base = lift(&base_pair(genus, xo)?);
    let (degrees, factor): (Vec<i64>, Box<dyn Fn(&QSeries) -> Result<XSeries, SeriesError>>) = match b {
        Bundle::Tangent => (vec![1], Box::new(move |t| pair_factor(WordOp::Lambda, t, xo))),
        Bundle::HolomorphicTangent => (vec![1], Box::new(move |t| Ok(holomorphic_lambda(t, xo)))),
        Bundle::Exterior(j) => (vec![j as i64], Box::new(move |t| pair_factor(WordOp::Lambda, t, xo))),
        Bundle::Symmetric(j) => (vec![j as i64], Box::new(move |t| pair_factor(WordOp::Sym, t, xo))),
        Bundle::Lambda2PlusTangent => (vec![1, 2], Box::new(move |t| pair_factor(WordOp::Lambda, t, xo))),
    };
    let top = *degrees.iter().max().unwrap();
    let t = QSeries::var().truncate(top + 1);
    let p = base.mul(&factor(&t)?);
    let series = characteristic_number(m, &p)?;
    Ok(degrees.iter().map(|&d| series.coeff(d)).sum())
}

/// Index of a single bundle twist as a rational number.
pub fn twisted_number(genus: TwistGenus, m: &ManifoldModel, b: Bundle) -> Result<Rational, GenusError> {
    bundle_index(genus, m, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesTag {
    /// `q^{−k/2}·Â(M; PHI0 word)`.
    Phi0,
    /// The Â-word series without the `q^{−k/2}` prefactor.
    AhatRaw,
    /// `sign(M; LOOP word)`.
    LoopSign,
    /// Weight-zero quotient by a power of the ε-series.
    Normalized,
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesTag::Phi0 => "phi0",
            SeriesTag::AhatRaw => "ahat-raw",
            SeriesTag::LoopSign => "loop-sign",
            SeriesTag::Normalized => "normalized",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexSeries {
    pub series: QSeries,
    pub tag: SeriesTag,
    /// `dim M = 4k`.
    pub k: u32,
}

fn quarter(m: &ManifoldModel) -> Option<u32> {
    m.quarter_dim()
}

/// `Φ₀(M) = q^{−k/2}·Â(M; PHI0 word)`.
pub fn phi0_series(m: &ManifoldModel, qorder: u32) -> Result<IndexSeries, GenusError> {
    let Some(k) = quarter(m) else {
        return Ok(IndexSeries { series: QSeries::zero_to(s_order(qorder)), tag: SeriesTag::Phi0, k: 0 });
    };
    let raw = twisted_index(TwistGenus::Ahat, m, &TwistDescriptor::Phi0Word, qorder)?;
    Ok(IndexSeries { series: raw.shift(-(k as i64)), tag: SeriesTag::Phi0, k })
}

/// The Â-word series without prefactor.
pub fn ahat_raw_series(m: &ManifoldModel, qorder: u32) -> Result<IndexSeries, GenusError> {
    let k = quarter(m).unwrap_or(0);
    if quarter(m).is_none() {
        return Ok(IndexSeries { series: QSeries::zero_to(s_order(qorder)), tag: SeriesTag::AhatRaw, k });
    }
    let raw = twisted_index(TwistGenus::Ahat, m, &TwistDescriptor::Phi0Word, qorder)?;
    Ok(IndexSeries { series: raw, tag: SeriesTag::AhatRaw, k })
}

/// `sign(q, ℒM) = sign(M; LOOP word)`.
pub fn loop_sign_series(m: &ManifoldModel, qorder: u32) -> Result<IndexSeries, GenusError> {
    let Some(k) = quarter(m) else {
        return Ok(IndexSeries { series: QSeries::zero_to(s_order(qorder)), tag: SeriesTag::LoopSign, k: 0 });
    };
    let series = twisted_index(TwistGenus::Signature, m, &TwistDescriptor::LoopWord, qorder)?;
    Ok(IndexSeries { series, tag: SeriesTag::LoopSign, k })
}

#[derive(Clone, Debug, PartialEq)]
pub enum PoleOrder {
    /// Pole order in `q`-units; negative values are zeros.
    Order(Rational),
    /// No nonzero coefficient below the known precision.
    Indeterminate,
}

pub fn pole_order(s: &IndexSeries) -> PoleOrder {
    match s.series.valuation() {
        Some(v) => PoleOrder::Order(rational::rat(-v, 2)),
        None => PoleOrder::Indeterminate,
    }
}

/// True iff the coefficients of `q^{−k/2+j}`, `j = 0..=r`, of `Φ₀(M)` vanish.
pub fn leading_vanish_count(m: &ManifoldModel, r: u32) -> Result<bool, GenusError> {
    let phi = phi0_series(m, r)?;
    let k = phi.k as i64;
    Ok((0..=r as i64).all(|j| phi.series.coeff(-k + 2 * j).is_zero()))
}
