//! q-expansions of the modular generators δ, ε at both cusps, derived from
//! ℂP², ℍP² and ℂP⁴, and the check that every index series is the
//! substitution of its `Q[δ,ε]` genus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::genus::{self, ahat_raw_series, loop_sign_series, GenusError, GenusSpec, IndexSeries, SeriesTag};
use crate::manifold::{complex_projective, quaternionic_projective, ManifoldModel};
use crate::series::rational::{int, Rational};
use crate::series::{QSeries, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cusp {
    Signature,
    Ahat,
}

impl Cusp {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "signature" | "sign" => Some(Cusp::Signature),
            "ahat" | "Ahat" | "A-hat" => Some(Cusp::Ahat),
            _ => None,
        }
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cusp::Signature => "signature",
            Cusp::Ahat => "ahat",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CuspExpansion {
    pub cusp: Cusp,
    pub qorder: u32,
    pub delta: QSeries,
    pub epsilon: QSeries,
    pub provenance: &'static str,
}

/// The index series of `m` at a cusp: the LOOP-word signature series, or
/// the Â-word series without the `q^{−k/2}` prefactor.
pub fn index_series(m: &ManifoldModel, cusp: Cusp, qorder: u32) -> Result<IndexSeries, GenusError> {
    match cusp {
        Cusp::Signature => loop_sign_series(m, qorder),
        Cusp::Ahat => ahat_raw_series(m, qorder),
    }
}

type Cache = Mutex<HashMap<(Cusp, u32), Arc<CuspExpansion>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// δ(q) from ℂP², ε(q) from ℍP², checked against ℂP⁴ through
/// `ε = 3δ² − 2·series(ℂP⁴)`.
pub fn generator_expansions(cusp: Cusp, qorder: u32) -> Result<Arc<CuspExpansion>, GenusError> {
    if let Some(hit) = cache().lock().unwrap().get(&(cusp, qorder)) {
        return Ok(hit.clone());
    }
    let delta = index_series(&complex_projective(2)?, cusp, qorder)?.series;
    let epsilon = index_series(&quaternionic_projective(2)?, cusp, qorder)?.series;
    let cp4 = index_series(&complex_projective(4)?, cusp, qorder)?.series;
    let rhs = delta.mul(&delta).scale(&int(3)).sub(&cp4.scale(&int(2)));
    if !epsilon.agrees_with(&rhs) {
        return Err(GenusError::Inconsistent(format!(
            "{cusp} cusp: epsilon {epsilon} differs from 3 delta^2 - 2 CP4 = {rhs}"
        )));
    }
    let provenance = match cusp {
        Cusp::Signature => "delta = sign(CP2; LOOP), epsilon = sign(HP2; LOOP)",
        Cusp::Ahat => "delta = Ahat(CP2; PHI0 word), epsilon = Ahat(HP2; PHI0 word), without q^{-k/2}",
    };
    let exp = Arc::new(CuspExpansion { cusp, qorder, delta, epsilon, provenance });
    cache().lock().unwrap().entry((cusp, qorder)).or_insert(exp.clone());
    Ok(exp)
}

/// The genus of `m` in `Q[δ,ε]` with the cusp expansions substituted.
pub fn modular_series(m: &ManifoldModel, cusp: Cusp, qorder: u32) -> Result<QSeries, GenusError> {
    let gens = generator_expansions(cusp, qorder)?;
    let phi = genus::genus_value(&GenusSpec::Generic, m)?;
    Ok(phi.eval(&gens.delta, &gens.epsilon))
}

/// Index series of `m` equals its genus evaluated at δ(q), ε(q).
pub fn verify_modularity(m: &ManifoldModel, cusp: Cusp, qorder: u32) -> Result<bool, GenusError> {
    let direct = index_series(m, cusp, qorder)?.series;
    let modular = modular_series(m, cusp, qorder)?;
    Ok(direct.agrees_with(&modular))
}

/// Weight-zero normalization `series / ε^{k/2}`; for odd `k` only its square
/// is formed.
#[derive(Clone, Debug, PartialEq)]
pub enum NormalizedPhi {
    Plain(QSeries),
    Squared(QSeries),
}

impl NormalizedPhi {
    pub fn squared(&self) -> QSeries {
        match self {
            NormalizedPhi::Plain(s) => s.mul(s),
            NormalizedPhi::Squared(s) => s.clone(),
        }
    }

    pub fn series(&self) -> &QSeries {
        match self {
            NormalizedPhi::Plain(s) | NormalizedPhi::Squared(s) => s,
        }
    }
}

pub fn normalized_phi(m: &ManifoldModel, cusp: Cusp, qorder: u32) -> Result<NormalizedPhi, GenusError> {
    let Some(k) = m.quarter_dim() else {
        return Err(GenusError::Unsupported("normalization needs dim = 4k".into()));
    };
    let series = index_series(m, cusp, qorder)?.series;
    let eps = &generator_expansions(cusp, qorder)?.epsilon;
    if k % 2 == 0 {
        Ok(NormalizedPhi::Plain(series.div(&eps.pow_int((k / 2) as i64)?)?))
    } else {
        Ok(NormalizedPhi::Squared(series.mul(&series).div(&eps.pow_int(k as i64)?)?))
    }
}

/// Normalized series as an `IndexSeries`, for reporting.
pub fn normalized_index_series(m: &ManifoldModel, cusp: Cusp, qorder: u32) -> Result<IndexSeries, GenusError> {
    let n = normalized_phi(m, cusp, qorder)?;
    Ok(IndexSeries { series: n.series().clone(), tag: SeriesTag::Normalized, k: 0 })
}

/// Equality of two weight-zero series to their common precision, through
/// squares when either side is only known squared.
pub fn self_intersection_compare(a: &NormalizedPhi, b: &NormalizedPhi) -> bool {
    match (a, b) {
        (NormalizedPhi::Plain(x), NormalizedPhi::Plain(y)) => x.agrees_with(y),
        _ => a.squared().agrees_with(&b.squared()),
    }
}

/// Rank test: the monomials `δ^a ε^b` of each weight `2w ≤ 2·max_weight`
/// are linearly independent as series to the given order.
pub fn generator_independence(cusp: Cusp, max_weight: u32, qorder: u32) -> Result<bool, GenusError> {
    let gens = generator_expansions(cusp, qorder)?;
    let n = crate::series::s_order(qorder);
    for w in 1..=max_weight {
        let mut rows = Vec::new();
        for b in 0..=w / 2 {
            let a = w - 2 * b;
            let mono = gens.delta.pow(a).mul(&gens.epsilon.pow(b));
            let lo = mono.lowest_exponent().min(0);
            rows.push((lo..n).map(|e| mono.coeff(e)).collect::<Vec<_>>());
        }
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        for r in &mut rows {
            r.resize(width, int(0));
        }
        if rank(rows.clone()) != rows.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::builtin;
    use crate::series::rational::rat;

    #[test]
    fn generators_at_both_cusps() {
        let s = generator_expansions(Cusp::Signature, 4).unwrap();
        assert_eq!(s.delta.coeff(0), int(1));
        assert_eq!(s.epsilon.coeff(0), int(1));
        let a = generator_expansions(Cusp::Ahat, 4).unwrap();
        assert_eq!(a.delta.coeff(0), rat(-1, 8));
        assert_eq!(a.epsilon.coeff(0), int(0));
        assert_eq!(a.epsilon.valuation(), Some(2));
    }

    #[test]
    fn modularity_small_catalog() {
        for name in ["CP2", "CP4", "HP2", "V(4,4)", "CP2xHP2", "point", "V(2,4)"] {
            let m = builtin(name).unwrap();
            for cusp in [Cusp::Signature, Cusp::Ahat] {
                assert!(verify_modularity(&m, cusp, 4).unwrap(), "{name} at {cusp}");
            }
        }
    }

    #[test]
    fn normalized_quaternionic_plane() {
        let hp2 = builtin("HP2").unwrap();
        for cusp in [Cusp::Signature, Cusp::Ahat] {
            let n = normalized_phi(&hp2, cusp, 4).unwrap();
            assert!(n.series().agrees_with(&QSeries::one()));
        }
        let hp2sq = builtin("HP2xHP2").unwrap();
        assert!(normalized_phi(&hp2sq, Cusp::Signature, 4).unwrap().series().agrees_with(&QSeries::one()));
    }

    #[test]
    fn independence() {
        assert!(generator_independence(Cusp::Signature, 4, 6).unwrap());
        assert!(generator_independence(Cusp::Ahat, 4, 6).unwrap());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(m), 1);
    }
}
