//! The acceptance matrix: twelve named checks, each PASS or FAIL with a
//! short detail line. Every comparison is exact; there are no tolerances.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::cusp::{normalized_phi, verify_modularity, Cusp};
use crate::genus::{
    cp_generating_check, genus_value, genus_value_rational, hypersurface_index_closed, phi0_series, twisted_number,
    x_order, Bundle, GenusSpec, TwistGenus,
};
use crate::localize::{
    action_from_json, action_to_json, builtin_action, equivariant_series, local_term, normal_factor, rigidity_check,
    FixedComponent, SamplePoint,
};
use crate::manifold::{self, builtin, model_from_json, model_to_json, LinearForm};
use crate::obstruct::{
    code_audit, cross_check_prediction, fixed_codim, reduced_weight_sum, vanish_prediction, CodeAudit, VanishSource,
};
use crate::series::rational::{self, int, Rational};
use crate::series::{s_order, DeltaEpsilon, Gaussian, QSeries, Ring, TruncPoly};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

pub const NAMES: [&str; 12] = [
    "generating-function",
    "quaternionic-plane-normalized",
    "hypersurface-index",
    "hypersurface-euler",
    "ahat-vanishing",
    "cusp-modularity",
    "rigidity-localization",
    "local-term-identities",
    "expansion-coefficients",
    "obstruction-oracle",
    "code-audit",
    "determinism-round-trip",
];

/// Manifolds whose `Φ₀` leading terms are checked against direct indices.
pub const CATALOG: [&str; 16] = [
    "point", "CP1", "CP2", "CP3", "CP4", "CP6", "HP1", "HP2", "HP3", "V(3,3)", "V(4,4)", "V(2,4)", "V(6,6)",
    "CP2xCP2", "CP2xHP2", "CP1xCP1xCP2",
];

pub const ACTIONS: [&str; 6] = [
    "HP1_diagonal(1,2)",
    "HP2_diagonal(1,2,4)",
    "HP3_diagonal(1,2,4,8)",
    "CP2_linear(0,1,2)",
    "CP3_linear(0,1,2,3)",
    "CP2_linear(0,0,1)",
];

type Outcome = Result<(bool, String), Error>;

pub fn run_suite(qorder: u32) -> Vec<Check> {
    (1..=12).map(|id| criterion(id, qorder)).collect()
}

pub fn criterion(id: u32, qorder: u32) -> Check {
    let outcome = match id {
        1 => generating_function(),
        2 => quaternionic_plane(qorder),
        3 => hypersurface_index(),
        4 => hypersurface_euler(),
        5 => ahat_vanishing(),
        6 => modularity(qorder),
        7 => rigidity(),
        8 => local_terms(),
        9 => expansion_coefficients(qorder),
        10 => obstruction_oracle(qorder),
        11 => code_oracle(),
        12 => determinism(qorder),
        _ => Err(Error::Validation(format!("no criterion {id}"))),
    };
    let name = NAMES.get(id as usize - 1).copied().unwrap_or("unknown");
    match outcome {
        Ok((pass, detail)) => Check { id, name, pass, detail },
        Err(e) => Check { id, name, pass: false, detail: format!("error: {e}") },
    }
}

pub fn suite_json(checks: &[Check], qorder: u32) -> Value {
    serde_json::json!({
        "suite": "all",
        "qorder": qorder,
        "passed": checks.iter().filter(|c| c.pass).count(),
        "total": checks.len(),
        "checks": checks,
    })
}

fn fmt(q: &Rational) -> String {
    rational::format(q)
}

fn generating_function() -> Outcome {
    let ok = cp_generating_check(4)?;
    Ok((ok, "phi(CP^2k) = [t^2k](1-2 delta t^2 + eps t^4)^(-1/2), k <= 4, exact in Q[delta,eps]".into()))
}

fn quaternionic_plane(qorder: u32) -> Outcome {
    let hp2 = builtin("HP2")?;
    let phi = genus_value(&GenusSpec::Generic, &hp2)?;
    let n = normalized_phi(&hp2, Cusp::Signature, qorder)?;
    let one = n.series().agrees_with(&QSeries::one());
    Ok((
        phi == DeltaEpsilon::epsilon() && one,
        format!("phi(HP2) = {phi}; Phi(HP2) = 1 to q^{qorder}: {one}"),
    ))
}

fn hypersurface_index() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, expect) in [(4u32, -50i64), (6, -784), (8, -11430)] {
        let closed = int(n as i64 + 2) - Rational::from_integer(rational::binomial(2 * n as u64, n as u64 + 1));
        let v = hypersurface_index_closed(n)?;
        ok &= v == int(expect) && closed == v;
        parts.push(format!("n={n}: {}", fmt(&v)));
    }
    Ok((ok, format!("three pipelines agree; {}", parts.join(", "))))
}

/// `((n−1)^{n+2} − 1)/n + n + 2`, valid as written for even `n`; for odd `n`
/// the base is `1 − n`.
fn euler_closed(n: u32, corrected: bool) -> Rational {
    let base = if corrected { 1 - n as i64 } else { n as i64 - 1 };
    let p = num_traits::pow(int(base), n as usize + 2);
    (p - int(1)) / int(n as i64) + int(n as i64 + 2)
}

fn hypersurface_euler() -> Outcome {
    let mut ok = true;
    let mut odd = Vec::new();
    for n in 1..=10u32 {
        let chi = manifold::hypersurface(n, n)?.euler_characteristic()?;
        let quoted = euler_closed(n, false);
        if n % 2 == 0 {
            ok &= chi == quoted;
        } else {
            ok &= chi == euler_closed(n, true);
            if quoted != chi {
                odd.push(format!("n={n}: {} (quoted form {})", fmt(&chi), fmt(&quoted)));
            }
        }
    }
    Ok((
        ok,
        format!("<c_n,[V_n]> matches closed form for n <= 10; odd n need base 1-n: {}", odd.join(", ")),
    ))
}

fn ahat_vanishing() -> Outcome {
    let ahat = GenusSpec::ahat();
    let mut ok = true;
    for m in 0..=3 {
        ok &= genus_value_rational(&ahat, &manifold::complex_projective(2 * m + 1)?)?.is_zero();
    }
    for n in 1..=3 {
        ok &= genus_value_rational(&ahat, &manifold::quaternionic_projective(n)?)?.is_zero();
    }
    let cp2 = genus_value_rational(&ahat, &manifold::complex_projective(2)?)?;
    ok &= cp2 == rational::rat(-1, 8);
    Ok((ok, format!("A(CP^odd) = 0 to CP7, A(HP^n) = 0 to HP3, A(CP2) = {}", fmt(&cp2))))
}

fn modularity(qorder: u32) -> Outcome {
    let mut failed = Vec::new();
    let names = ["CP4", "CP6", "HP2", "HP3", "V(4,4)", "CP2xCP2"];
    for name in names {
        let m = builtin(name)?;
        for cusp in [Cusp::Signature, Cusp::Ahat] {
            if !verify_modularity(&m, cusp, qorder)? {
                failed.push(format!("{name}@{cusp}"));
            }
        }
    }
    let detail = if failed.is_empty() {
        format!("{} manifolds x 2 cusps to q^{qorder}, epsilon consistency via CP4", names.len())
    } else {
        format!("not modular: {}", failed.join(", "))
    };
    Ok((failed.is_empty(), detail))
}

const LOCAL_QORDER: u32 = 5;

fn rigidity() -> Outcome {
    let hp2 = builtin_action("HP2_diagonal(1,2,4)")?;
    let samples: Vec<SamplePoint> = [2, 3, 5].into_iter().map(SamplePoint::int).collect();
    let r = rigidity_check(&hp2, &samples, LOCAL_QORDER)?;
    let hp1 = builtin_action("HP1_diagonal(1,2)")?;
    let zero = QSeries::<Gaussian>::zero_to(s_order(LOCAL_QORDER));
    let mut hp1_zero = true;
    for l in &samples {
        hp1_zero &= equivariant_series(&hp1, l, LOCAL_QORDER)?.agrees_with(&zero);
    }
    let ok = r.pass() && r.matches_reference && hp1_zero;
    Ok((
        ok,
        format!(
            "HP2(1,2,4) at lambda 2,3,5: agree {}, = sign(q,LHP2) {}; HP1(1,2) sums to 0: {hp1_zero}; q^{LOCAL_QORDER}",
            r.all_agree, r.matches_reference
        ),
    ))
}

fn local_terms() -> Outcome {
    let space_model = manifold::complex_projective(3)?;
    let xo = x_order(&space_model);
    let i = SamplePoint::i();
    let nf = normal_factor(1, &i, xo, LOCAL_QORDER)?;
    let y: TruncPoly<QSeries<Gaussian>> = LinearForm::single("h", int(1)).to_poly(&space_model.cohomology)?;
    let prod = y.substitute_into(&nf)?.mul(&y.neg().substitute_into(&nf)?)?;
    let minus_one = TruncPoly::constant(space_model.space(), QSeries::<Gaussian>::one().neg());
    let zero = QSeries::<Gaussian>::zero_to(s_order(LOCAL_QORDER));
    let pair_ok = prod.sub(&minus_one)?.terms().all(|(_, v)| v.agrees_with(&zero));
    let mut point_ok = true;
    for k in 1..=3usize {
        let t = local_term(&FixedComponent::point(&vec![1; 2 * k]), &i, LOCAL_QORDER)?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        point_ok &= t.agrees_with(&QSeries::constant(Gaussian::real(int(sign))));
    }
    Ok((
        pair_ok && point_ok,
        format!("N(y)N(-y) = -1 at lambda = i: {pair_ok}; point terms = +-1: {point_ok}; q^{LOCAL_QORDER}"),
    ))
}

fn expansion_coefficients(qorder: u32) -> Outcome {
    let q = qorder.max(1);
    let mut bad = Vec::new();
    let mut hp2_q = int(0);
    for name in CATALOG {
        let m = builtin(name)?;
        let phi = phi0_series(&m, q)?;
        let k = phi.k as i64;
        let c0 = phi.series.coeff(-k);
        let c1 = phi.series.coeff(-k + 2);
        let a = genus_value_rational(&GenusSpec::ahat(), &m)?;
        let at = twisted_number(TwistGenus::Ahat, &m, Bundle::Tangent)?;
        if m.dim_real % 4 == 0 && (c0 != a || c1 != -at) {
            bad.push(name.to_string());
        }
        if name == "HP2" {
            hp2_q = c1;
        }
    }
    let ok = bad.is_empty() && !hp2_q.is_zero();
    Ok((
        ok,
        format!(
            "q^(k/2) Phi0 = A(M) - A(M,TM_C) q + ... on {} catalog manifolds{}; HP2 q-coefficient {}",
            CATALOG.len(),
            if bad.is_empty() { String::new() } else { format!(", mismatches: {}", bad.join(" ")) },
            fmt(&hp2_q)
        ),
    ))
}

/// Distance from `k` to the nearest multiple of `o`, by scanning multiples.
fn nearest_multiple_distance(k: i64, o: i64) -> i64 {
    (-k.abs() / o - 1..=k.abs() / o + 1).map(|t| (k - t * o).abs()).min().unwrap()
}

/// First `r` at which the strict inequality `holds(r)` fails.
fn count_while(holds: impl Fn(u64) -> bool) -> u64 {
    (0..).find(|&r| !holds(r)).unwrap()
}

/// Every multiset of `d ≤ 8` nonzero weights with `|w| ≤ 12`, orders 2..=6:
/// `Σk̃` and codim against the nearest-multiple definition, then every
/// reached value through the vanish formulas against the inequalities.
fn enumerate_weights(seen: &mut BTreeSet<(i64, i64, u64)>) -> Result<u64, Error> {
    const D: usize = 8;
    const W: i64 = 12;
    let values: Vec<i64> = (-W..=W).filter(|&w| w != 0).collect();
    let mut checked = 0u64;
    for o in 2..=6i64 {
        let dist: Vec<i64> = values.iter().map(|&w| nearest_multiple_distance(w, o)).collect();
        let mut idx: Vec<usize> = Vec::with_capacity(D);
        let mut vec: Vec<i64> = Vec::with_capacity(D);
        let mut sums: Vec<(i64, u64)> = vec![(0, 0)];
        loop {
            let (s, c) = *sums.last().unwrap();
            if reduced_weight_sum(&vec, o)? != s || fixed_codim(&vec, o)? != c {
                return Err(Error::Inconsistent(format!("weights {vec:?} order {o}")));
            }
            seen.insert((s, o, c));
            checked += 1;
            // next multiset in nondecreasing index order
            if idx.len() < D {
                let start = idx.last().copied().unwrap_or(0);
                idx.push(start);
            } else {
                loop {
                    let Some(last) = idx.pop() else { break };
                    vec.pop();
                    sums.pop();
                    if last + 1 < values.len() {
                        idx.push(last + 1);
                        break;
                    }
                }
                if idx.is_empty() {
                    break;
                }
            }
            let j = *idx.last().unwrap();
            if vec.len() == idx.len() {
                vec.pop();
                sums.pop();
            }
            vec.push(values[j]);
            let (ps, pc) = *sums.last().unwrap();
            sums.push((ps + dist[j], pc + if dist[j] != 0 { 2 } else { 0 }));
        }
    }
    Ok(checked)
}

fn obstruction_oracle(qorder: u32) -> Outcome {
    let mut seen = BTreeSet::new();
    let checked = enumerate_weights(&mut seen)?;
    let mut ok = true;
    for &(s, o, c) in &seen {
        let mo = rational::rat(s, o);
        let by_mo = count_while(|r| mo > int(r as i64));
        ok &= vanish_prediction(&VanishSource::CyclicMo { m_o: mo.clone() }) == by_mo;
        let by_codim = count_while(|r| c > 2 * o as u64 * r);
        ok &= vanish_prediction(&VanishSource::CyclicCodim { codim: c, order: o as u64 }) == by_codim;
        ok &= vanish_prediction(&VanishSource::Involution { codim: c }) == count_while(|r| c > 4 * r);
        // codim M^σ ≤ 2o·m_o
        ok &= c as i64 <= 2 * s;
    }
    let mut actions_ok = true;
    for name in ACTIONS {
        let a = builtin_action(name)?;
        let comps: Vec<Vec<i64>> = a.components.iter().map(|c| c.weights()).collect();
        for o in 2..=6 {
            actions_ok &= cross_check_prediction(&a.ambient, &comps, o, qorder.min(3))?.pass;
        }
    }
    let hp2 = builtin("HP2")?;
    let fabricated = cross_check_prediction(&hp2, &[vec![1, 1, 1, 1]], 2, 2)?;
    let fabricated_caught = !fabricated.pass;
    Ok((
        ok && actions_ok && fabricated_caught,
        format!(
            "{checked} weight multisets (d <= 8, |w| <= 12, o <= 6) match, {} vanish values; builtin actions consistent: {actions_ok}; fabricated m_2 = 2 on HP2 flagged: {fabricated_caught}",
            seen.len()
        ),
    ))
}

/// Naive code audit over explicit 0/1 vectors, for comparison.
pub fn code_audit_naive(a: &[Vec<i64>], r: usize) -> CodeAudit {
    let rows = a.len();
    let cols = a[0].len();
    let bits: Vec<Vec<u8>> = a.iter().map(|row| row.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect();
    let words: Vec<Vec<u8>> = (0..1usize << rows)
        .map(|sel| {
            (0..cols).map(|j| (0..rows).filter(|i| sel >> i & 1 == 1).map(|i| bits[i][j]).sum::<u8>() % 2).collect()
        })
        .collect();
    let wt = |w: &[u8]| w.iter().filter(|&&b| b == 1).count() as u32;
    let add = |x: &[u8], y: &[u8]| x.iter().zip(y).map(|(a, b)| a ^ b).collect::<Vec<u8>>();
    let mut dist = std::collections::BTreeMap::new();
    for w in &words {
        *dist.entry(wt(w)).or_insert(0u64) += 1;
    }
    let two_r = 2 * r as u32;
    let low: Vec<&Vec<u8>> = words.iter().filter(|w| wt(w) <= two_r).collect();
    let closed = low.iter().all(|x| low.iter().all(|y| wt(&add(x, y)) <= two_r));
    let row_odd: Vec<u32> = bits.iter().map(|b| wt(b)).collect();
    let col_odd = |j: usize| bits.iter().filter(|b| b[j] == 1).count();
    CodeAudit {
        rows,
        columns: cols,
        r,
        words: words.len() as u64,
        weight_distribution: dist,
        rows_have_two_odd_entries: row_odd.iter().all(|&c| c == 2),
        row_odd_counts: row_odd,
        last_columns_even: (2 * r..cols).all(|j| col_odd(j) % 2 == 0),
        last_columns_nonzero: (2 * r..cols).filter(|&j| col_odd(j) > 0).count(),
        last_columns_nonzero_at_most_r: (2 * r..cols).filter(|&j| col_odd(j) > 0).count() <= r,
        weight_dichotomy: words.iter().all(|w| wt(w) <= two_r || cols as u32 - wt(w) + 2 <= two_r),
        low_weight_closed: (cols >= 6 * r).then_some(closed),
        sublinearity: words.iter().all(|x| words.iter().all(|y| wt(&add(x, y)) <= wt(x) + wt(y))),
    }
}

pub const CODE_SEED: u64 = 0x5eed_c0de;

fn code_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CODE_SEED);
    let mut mismatches = 0;
    let mut sublinear = true;
    let mut closed = 0;
    for _ in 0..1000 {
        let a: Vec<Vec<i64>> = (0..4).map(|_| (0..12).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let fast = code_audit(&a, 2)?;
        let naive = code_audit_naive(&a, 2);
        sublinear &= naive.sublinearity && fast.sublinearity;
        if fast.low_weight_closed == Some(true) {
            closed += 1;
        }
        if fast != naive {
            mismatches += 1;
        }
    }
    Ok((
        mismatches == 0 && sublinear,
        format!("1000 random 4x12 matrices (seed {CODE_SEED:#x}): {mismatches} mismatches, sublinear {sublinear}, {closed} with closed low-weight words"),
    ))
}

fn determinism(qorder: u32) -> Outcome {
    let mut ok = true;
    for name in CATALOG {
        let m = builtin(name)?;
        let text = model_to_json(&m);
        let back = model_from_json(&text)?;
        ok &= back == m && model_to_json(&back) == text;
    }
    for name in ACTIONS {
        let a = builtin_action(name)?;
        let text = action_to_json(&a);
        let back = action_from_json(&text, &a.provenance)?;
        ok &= back == a && action_to_json(&back) == text;
    }
    let render = || -> Result<String, Error> {
        let checks = vec![criterion(1, qorder), criterion(5, qorder)];
        Ok(serde_json::to_string_pretty(&suite_json(&checks, qorder)).unwrap())
    };
    let stable = render()? == render()?;
    Ok((
        ok && stable,
        format!("{} models and {} actions round-trip; repeated report bytes identical: {stable}", CATALOG.len(), ACTIONS.len()),
    ))
}
