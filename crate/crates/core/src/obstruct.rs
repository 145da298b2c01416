//! Fixed-point combinatorics behind the vanishing of leading coefficients
//! of `Φ₀`: reduced weights, `m_o`, vanish counts, a mod-`p` lattice normal
//! form and the binary-code predicates on weight matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::genus::{phi0_series, GenusError};
use crate::manifold::ManifoldModel;
use crate::series::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructError {
    #[error("order must be at least 2, got {0}")]
    BadOrder(i64),
    #[error("prime expected, got {0}")]
    NotPrime(i64),
    #[error("rows are dependent mod {p}: rank {rank} < {rows} (action not effective)")]
    Effectiveness { p: i64, rank: usize, rows: usize },
    #[error("matrix is malformed: {0}")]
    Malformed(String),
    #[error("enumeration cap exceeded: {0}")]
    Cap(String),
    #[error(transparent)]
    Genus(#[from] GenusError),
}

/// `k̃ = min(k mod o, o − k mod o)`.
pub fn reduced_weight(k: i64, o: i64) -> Result<i64, ObstructError> {
    if o < 2 {
        return Err(ObstructError::BadOrder(o));
    }
    let r = k.rem_euclid(o);
    Ok(r.min(o - r))
}

/// `m_o(Y) = Σ k̃ / o` over the normal weights at `Y`; zero weights are not
/// normal directions.
pub fn m_o(weights: &[i64], o: i64) -> Result<Rational, ObstructError> {
    Ok(rational::rat(reduced_weight_sum(weights, o)?, o))
}

/// `Σ k̃`, the numerator of `m_o`.
pub fn reduced_weight_sum(weights: &[i64], o: i64) -> Result<i64, ObstructError> {
    let mut s = 0i64;
    for &w in weights.iter().filter(|&&w| w != 0) {
        s += reduced_weight(w, o)?;
    }
    Ok(s)
}

/// Minimum of `m_o` over components; `None` without components.
pub fn m_o_min(components: &[Vec<i64>], o: i64) -> Result<Option<Rational>, ObstructError> {
    let mut best: Option<Rational> = None;
    for c in components {
        let v = m_o(c, o)?;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    Ok(best)
}

/// Codimension of the `Z/o`-fixed component through `Y`: `2·#{w ≢ 0 mod o}`.
pub fn fixed_codim(weights: &[i64], o: i64) -> Result<u64, ObstructError> {
    if o < 2 {
        return Err(ObstructError::BadOrder(o));
    }
    Ok(2 * weights.iter().filter(|&&w| w.rem_euclid(o) != 0).count() as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum VanishSource {
    /// Involution with fixed-set codimension `c`: vanishing while `c > 4r`.
    Involution { codim: u64 },
    /// Cyclic group with invariant `m_o`: vanishing while `m_o > r`.
    CyclicMo {
        #[serde(with = "rational::serde_str")]
        m_o: Rational,
    },
    /// Cyclic group of order `o`, fixed codimension `c`: while `c > 2o·r`.
    CyclicCodim { codim: u64, order: u64 },
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Number of leading `Φ₀` coefficients forced to vanish: the largest `r+1`
/// whose strict inequality holds, i.e. `⌈c/4⌉`, `⌈m_o⌉`, `⌈c/(2o)⌉`.
pub fn vanish_prediction(src: &VanishSource) -> u64 {
    match src {
        VanishSource::Involution { codim } => ceil_div(*codim, 4),
        VanishSource::CyclicMo { m_o } => {
            if m_o.is_negative() || m_o.is_zero() {
                0
            } else {
                m_o.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
            }
        }
        VanishSource::CyclicCodim { codim, order } => ceil_div(*codim, 2 * order),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub order: i64,
    #[serde(with = "rational::serde_str")]
    pub m_o: Rational,
    pub predicted_vanishing: u64,
    pub min_codim: u64,
    pub codim_prediction: u64,
    /// Index `j` of the first nonzero coefficient of `q^{−k/2+j}` in `Φ₀`.
    pub first_nonzero: Option<u64>,
    pub qorder: u32,
    /// The vanishing theorems assume a spin manifold.
    pub applicable: bool,
    pub pass: bool,
}

/// No computed nonzero coefficient of `Φ₀(M)` may sit below the count the
/// fixed data forces to vanish.
pub fn cross_check_prediction(
    m: &ManifoldModel,
    components: &[Vec<i64>],
    o: i64,
    qorder: u32,
) -> Result<CrossCheck, ObstructError> {
    let mo = m_o_min(components, o)?.ok_or_else(|| ObstructError::Malformed("no fixed components".into()))?;
    let predicted = vanish_prediction(&VanishSource::CyclicMo { m_o: mo.clone() });
    let mut min_codim = u64::MAX;
    for c in components {
        min_codim = min_codim.min(fixed_codim(c, o)?);
    }
    let codim_prediction = vanish_prediction(&VanishSource::CyclicCodim { codim: min_codim, order: o as u64 });
    let qorder = qorder.max(predicted.min(u32::MAX as u64) as u32);
    let phi = phi0_series(m, qorder)?;
    let k = phi.k as i64;
    let first_nonzero = (0..=qorder as i64)
        .find(|&j| !phi.series.coeff(-k + 2 * j).is_zero())
        .map(|j| j as u64);
    let applicable = m.spin;
    let pass = match first_nonzero {
        Some(j) if applicable => j >= predicted && j >= codim_prediction,
        _ => true,
    };
    Ok(CrossCheck {
        order: o,
        m_o: mo,
        predicted_vanishing: predicted,
        min_codim,
        codim_prediction,
        first_nonzero,
        qorder,
        applicable,
        pass,
    })
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn modp(x: &BigInt, p: i64) -> i64 {
    let r = x % BigInt::from(p);
    let r = r.to_i64().unwrap();
    r.rem_euclid(p)
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p, a.rem_euclid(p));
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(p)
}

/// Pivot columns of the row echelon form mod `p`.
pub fn pivots_mod_p(a: &[Vec<i64>], p: i64) -> Vec<usize> {
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeNormalForm {
    pub matrix: Vec<Vec<BigInt>>,
    /// `matrix = transform · A · P` with `P` the column permutation.
    pub transform: Vec<Vec<BigInt>>,
    /// Column `j` of the result is column `column_permutation[j]` of `A`.
    pub column_permutation: Vec<usize>,
    pub covering_degree: BigInt,
}

struct RowOps {
    a: Vec<Vec<BigInt>>,
    t: Vec<Vec<BigInt>>,
}

impl RowOps {
    /// `row_i ← α·row_i + β·row_j`.
    fn combine(&mut self, i: usize, alpha: &BigInt, j: usize, beta: &BigInt) {
        for m in [&mut self.a, &mut self.t] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(rj) {
                *x = &*x * alpha + y * beta;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.t.swap(i, j);
    }
}

/// Row operations and a column permutation bringing `A` to a left block
/// that is diagonal with entries prime to `p`.
///
/// First a unimodular change of basis makes the left block upper triangular
/// and diagonal mod `p`; then only `b_i ← α b_i + β b_j` with `i < j`,
/// `α ≢ 0`, `β ≡ 0 mod p` clear the remaining entries, so the covering
/// degree `|det transform|` is prime to `p`.
pub fn lattice_normal_form(a: &[Vec<i64>], p: i64) -> Result<LatticeNormalForm, ObstructError> {
    if !is_prime(p) {
        return Err(ObstructError::NotPrime(p));
    }
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if rows == 0 || a.iter().any(|r| r.len() != cols) || rows > cols {
        return Err(ObstructError::Malformed("need a nonempty rectangular matrix with rows <= columns".into()));
    }
    let piv = pivots_mod_p(a, p);
    if piv.len() < rows {
        return Err(ObstructError::Effectiveness { p, rank: piv.len(), rows });
    }
    let mut perm = piv.clone();
    perm.extend((0..cols).filter(|c| !piv.contains(c)));
    let mut ops = RowOps {
        a: a.iter().map(|r| perm.iter().map(|&c| BigInt::from(r[c])).collect()).collect(),
        t: (0..rows)
            .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect(),
    };
    let one = BigInt::one();
    // unimodular: upper triangular left block
    for c in 0..rows {
        loop {
            let nz: Vec<usize> = (c..rows).filter(|&i| !ops.a[i][c].is_zero()).collect();
            let Some(&best) = nz.iter().min_by_key(|&&i| ops.a[i][c].abs()) else {
                return Err(ObstructError::Effectiveness { p, rank: c, rows });
            };
            ops.swap(c, best);
            if nz.len() == 1 {
                break;
            }
            for i in c + 1..rows {
                if !ops.a[i][c].is_zero() {
                    let q = &ops.a[i][c] / &ops.a[c][c];
                    ops.combine(i, &one, c, &-q);
                }
            }
        }
    }
    // unimodular: clear above-diagonal entries mod p
    for i in 0..rows {
        for j in i + 1..rows {
            let tij = modp(&ops.a[i][j], p);
            if tij != 0 {
                let k = (tij * inv_mod(modp(&ops.a[j][j], p), p)).rem_euclid(p);
                ops.combine(i, &one, j, &BigInt::from(-k));
            }
        }
    }
    // restricted: clear above-diagonal entries exactly, bottom row first
    for i in (0..rows).rev() {
        for j in i + 1..rows {
            if ops.a[i][j].is_zero() {
                continue;
            }
            let g = num_integer::Integer::gcd(&ops.a[i][j], &ops.a[j][j]);
            let alpha = &ops.a[j][j] / &g;
            let beta = -(&ops.a[i][j] / &g);
            debug_assert!(modp(&alpha, p) != 0 && modp(&beta, p) == 0);
            ops.combine(i, &alpha, j, &beta);
        }
    }
    let degree = determinant(&ops.t).abs();
    Ok(LatticeNormalForm { matrix: ops.a, transform: ops.t, column_permutation: perm, covering_degree: degree })
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// The shape predicate: left block diagonal over Z with diagonal prime to `p`.
pub fn has_normal_shape(m: &[Vec<BigInt>], p: i64) -> bool {
    let rows = m.len();
    (0..rows).all(|i| {
        (0..rows).all(|j| if i == j { modp(&m[i][j], p) != 0 } else { m[i][j].is_zero() })
    })
}

pub const CODE_ROW_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeAudit {
    pub rows: usize,
    pub columns: usize,
    pub r: usize,
    pub words: u64,
    /// weight → number of code words
    pub weight_distribution: BTreeMap<u32, u64>,
    pub row_odd_counts: Vec<u32>,
    /// Every row has exactly two odd entries.
    pub rows_have_two_odd_entries: bool,
    /// Each of the last `2k − 2r` columns has an even number of odd entries.
    pub last_columns_even: bool,
    pub last_columns_nonzero: usize,
    /// At most `r` of the last `2k − 2r` columns are nonzero mod 2.
    pub last_columns_nonzero_at_most_r: bool,
    /// Every word has `wt ≤ 2r` or `cowt ≤ 2r − 2`.
    pub weight_dichotomy: bool,
    /// Words of weight `≤ 2r` form a subgroup; only asked when `2k ≥ 6r`.
    pub low_weight_closed: Option<bool>,
    pub sublinearity: bool,
}

/// Exhaustive audit of the mod-2 code spanned by the rows of `A`
/// (`2r` rows, `2k` columns).
pub fn code_audit(a: &[Vec<i64>], r: usize) -> Result<CodeAudit, ObstructError> {
    let rows = a.len();
    let cols = a.first().map_or(0, |x| x.len());
    if a.iter().any(|x| x.len() != cols) || cols > 64 {
        return Err(ObstructError::Malformed("rows must have equal length <= 64".into()));
    }
    if rows > CODE_ROW_CAP {
        return Err(ObstructError::Cap(format!("{rows} rows exceed {CODE_ROW_CAP}")));
    }
    if 2 * r > cols {
        return Err(ObstructError::Malformed("need 2r <= number of columns".into()));
    }
    let masks: Vec<u64> = a
        .iter()
        .map(|row| row.iter().enumerate().fold(0u64, |m, (j, x)| if x.rem_euclid(2) == 1 { m | 1 << j } else { m }))
        .collect();
    let two_r = 2 * r as u32;
    let cols_u = cols as u32;
    let mut dist = BTreeMap::new();
    let mut dichotomy = true;
    let mut low = Vec::new();
    let mut all = Vec::with_capacity(1 << rows.min(16));
    let mut word = 0u64;
    let total = 1u64 << rows;
    for g in 0..total {
        if g > 0 {
            // Gray code: flip the row at the lowest set bit of g
            word ^= masks[g.trailing_zeros() as usize];
        }
        let wt = word.count_ones();
        *dist.entry(wt).or_insert(0) += 1;
        if !(wt <= two_r || cols_u - wt + 2 <= two_r) {
            dichotomy = false;
        }
        if wt <= two_r {
            low.push(word);
        }
        if rows <= 10 {
            all.push(word);
        }
    }
    let sublinearity = if rows <= 10 {
        all.iter().all(|&x| all.iter().all(|&y| (x ^ y).count_ones() <= x.count_ones() + y.count_ones()))
    } else {
        true
    };
    // a nonempty subset of a finite group is closed iff it is the span it generates
    low.sort_unstable();
    low.dedup();
    let low_weight_closed = (cols >= 3 * 2 * r).then(|| {
        let rank = gf2_rank(&low);
        rank < 64 && low.len() as u64 == 1u64 << rank
    });
    let row_odd_counts: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    let last: Vec<usize> = (2 * r..cols).collect();
    let col_odd = |j: usize| masks.iter().filter(|m| *m >> j & 1 == 1).count();
    let last_columns_even = last.iter().all(|&j| col_odd(j) % 2 == 0);
    let last_columns_nonzero = last.iter().filter(|&&j| col_odd(j) > 0).count();
    Ok(CodeAudit {
        rows,
        columns: cols,
        r,
        words: total,
        weight_distribution: dist,
        rows_have_two_odd_entries: row_odd_counts.iter().all(|&c| c == 2),
        row_odd_counts,
        last_columns_even,
        last_columns_nonzero,
        last_columns_nonzero_at_most_r: last_columns_nonzero <= r,
        weight_dichotomy: dichotomy,
        low_weight_closed,
        sublinearity,
    })
}

fn gf2_rank(words: &[u64]) -> u32 {
    let mut basis: Vec<u64> = Vec::new();
    for &w in words {
        let mut x = w;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// Restricted fixed point dimension: every pair of distinct components
/// has `dim F₁ + dim F₂ < dim X`.
pub fn rfpd_check(table: &[(u32, Vec<u32>)]) -> bool {
    table.iter().all(|(x, comps)| {
        comps
            .iter()
            .enumerate()
            .all(|(i, a)| comps.iter().skip(i + 1).all(|b| a + b < *x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    #[test]
    fn reduced_weights() {
        assert_eq!(reduced_weight(3, 4).unwrap(), 1);
        assert_eq!(reduced_weight(2, 4).unwrap(), 2);
        assert_eq!(reduced_weight(5, 2).unwrap(), 1);
        assert_eq!(reduced_weight(-1, 5).unwrap(), 1);
        assert!(reduced_weight(1, 1).is_err());
    }

    #[test]
    fn m_o_examples() {
        assert_eq!(m_o(&[1, 1], 2).unwrap(), int(1));
        assert_eq!(m_o(&[1, 3, 4], 4).unwrap(), rational::rat(1, 2));
        assert_eq!(m_o(&[], 3).unwrap(), int(0));
        assert_eq!(m_o_min(&[vec![1, 1], vec![2, 2]], 2).unwrap(), Some(int(0)));
    }

    #[test]
    fn vanish_counts() {
        assert_eq!(vanish_prediction(&VanishSource::Involution { codim: 8 }), 2);
        assert_eq!(vanish_prediction(&VanishSource::CyclicMo { m_o: rational::rat(3, 2) }), 2);
        assert_eq!(vanish_prediction(&VanishSource::CyclicCodim { codim: 6, order: 3 }), 1);
        assert_eq!(vanish_prediction(&VanishSource::Involution { codim: 0 }), 0);
    }

    #[test]
    fn normal_form_examples() {
        let nf = lattice_normal_form(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]], 2).unwrap();
        assert_eq!(nf.covering_degree, BigInt::one());
        assert_eq!(nf.column_permutation, vec![0, 1, 2, 3]);
        assert!(has_normal_shape(&nf.matrix, 2));
        let nf = lattice_normal_form(&[vec![2, 1, 0, 1], vec![1, 1, 1, 0]], 2).unwrap();
        assert!(has_normal_shape(&nf.matrix, 2));
        assert_eq!(modp(&nf.covering_degree, 2), 1);
        assert!(matches!(
            lattice_normal_form(&[vec![1, 1, 0], vec![3, 3, 2]], 2),
            Err(ObstructError::Effectiveness { .. })
        ));
    }

    #[test]
    fn code_examples() {
        let c = code_audit(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], 1).unwrap();
        let d: Vec<(u32, u64)> = c.weight_distribution.into_iter().collect();
        assert_eq!(d, vec![(0, 1), (2, 2), (4, 1)]);
        let z = code_audit(&[vec![0, 0, 0, 0]], 1).unwrap();
        assert_eq!(z.weight_distribution.get(&0), Some(&2));
        let disjoint = code_audit(&[vec![1, 1, 0, 0, 0, 0], vec![0, 0, 1, 1, 0, 0]], 1).unwrap();
        assert_eq!(disjoint.low_weight_closed, Some(false));
        let r2 = code_audit(
            &[
                vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
            ],
            2,
        )
        .unwrap();
        // weights 0,2,4,6,8 all ≤ 2r = 4? no: 6 and 8 exceed, so not closed
        assert_eq!(r2.low_weight_closed, Some(false));
        assert!(r2.rows_have_two_odd_entries);
    }

    #[test]
    fn rfpd() {
        assert!(rfpd_check(&[(8, vec![4, 0])]));
        assert!(!rfpd_check(&[(8, vec![4, 4])]));
        assert!(rfpd_check(&[(8, vec![6])]));
    }
}
