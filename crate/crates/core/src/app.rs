//! Subcommand bodies behind `ellgen`; each returns a JSON report plus
//! whether everything it asserted held.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cusp::{normalized_index_series, verify_modularity, Cusp};
use crate::genus::{
    self, genus_value, genus_value_rational, phi0_series, pole_order, twisted_index, twisted_number, Bundle,
    GenusSpec, IndexSeries, PoleOrder, TwistDescriptor, TwistGenus,
};
use crate::localize::{builtin_action, euler_fixed_check, load_action, rigidity_check, CircleActionData, SamplePoint};
use crate::manifold::{builtin, load_model, ManifoldModel};
use crate::obstruct::{self, code_audit, cross_check_prediction, lattice_normal_form, m_o_min, rfpd_check};
use crate::report::{self, object, rat};
use crate::series::rational::{self, Rational};
use crate::series::Ring;
use crate::verify::{self, Check};
use crate::Error;

pub const QORDER_ENV: &str = "ELLGEN_QORDER";
pub const MAX_Q_ORDER: u32 = 40;

pub struct Outcome {
    pub report: Value,
    /// `false` when a check the command asserts did not hold.
    pub ok: bool,
    /// Verification lines for text output, when the command has them.
    pub checks: Option<Vec<Check>>,
}

impl Outcome {
    fn new(report: Value, ok: bool) -> Self {
        Outcome { report, ok, checks: None }
    }
}

pub fn check_qorder(q: u32) -> Result<u32, Error> {
    if q > MAX_Q_ORDER {
        return Err(Error::Cap(format!("q-order {q} exceeds {MAX_Q_ORDER}")));
    }
    Ok(q)
}

/// `builtin:NAME`, a path to a model file, or a bare builtin name.
pub fn resolve_manifold(s: &str) -> Result<ManifoldModel, Error> {
    if let Some(name) = s.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let p = Path::new(s);
    if p.is_file() {
        return Ok(load_model(p)?);
    }
    Ok(builtin(s)?)
}

pub fn resolve_action(s: &str) -> Result<CircleActionData, Error> {
    if let Some(name) = s.strip_prefix("builtin:") {
        return Ok(builtin_action(name)?);
    }
    let p = Path::new(s);
    if p.is_file() {
        return Ok(load_action(p)?);
    }
    Ok(builtin_action(s)?)
}

fn spec_from(name: &str, delta: Option<&str>, epsilon: Option<&str>) -> Result<GenusSpec, Error> {
    if let (Some(d), Some(e)) = (delta, epsilon) {
        return Ok(GenusSpec::custom(rational::parse(d)?, rational::parse(e)?));
    }
    if name == "custom" {
        return Err(Error::Validation("custom genus needs --delta and --epsilon".into()));
    }
    GenusSpec::by_name(name).ok_or_else(|| Error::Validation(format!("unknown genus spec {name:?}")))
}

pub fn cmd_genus(manifold: &str, spec: &str, delta: Option<&str>, epsilon: Option<&str>) -> Result<Outcome, Error> {
    let m = resolve_manifold(manifold)?;
    let spec = spec_from(spec, delta, epsilon)?;
    let value = genus_value(&spec, &m)?;
    let mut pairs = vec![
        ("manifold", json!(m.name)),
        ("dim", json!(m.dim_real)),
        ("spec", json!(match &spec {
            GenusSpec::Generic => "generic".to_string(),
            GenusSpec::Specialized { name, .. } => name.clone(),
        })),
        ("value", json!(value.to_string())),
    ];
    if let GenusSpec::Specialized { name, delta, epsilon } = &spec {
        pairs.push(("delta", rat(delta)));
        pairs.push(("epsilon", rat(epsilon)));
        let twist = match name.as_str() {
            "signature" => Some(TwistGenus::Signature),
            "ahat" => Some(TwistGenus::Ahat),
            _ => None,
        };
        if let Some(g) = twist {
            // the same number from the twisted-index pipeline
            let direct = if m.dim_real % 4 == 0 {
                twisted_index(g, &m, &TwistDescriptor::Trivial, 0)?.coeff(0)
            } else {
                Rational::zero()
            };
            let elliptic = genus_value_rational(&spec, &m)?;
            if direct != elliptic {
                return Err(Error::Inconsistent(format!(
                    "{name} of {}: elliptic {} vs twisted index {}",
                    m.name,
                    rational::format(&elliptic),
                    rational::format(&direct)
                )));
            }
            pairs.push(("cross_check", json!("twisted-index pipeline agrees")));
        }
    }
    if let Some(n) = genus::vanishing_notice(&m) {
        pairs.push(("notice", json!(n)));
    }
    Ok(Outcome::new(object(pairs), true))
}

fn q_coefficients(s: &IndexSeries, start: i64) -> Value {
    let lo = s.series.lowest_exponent().min(start);
    let hi = s.series.order().unwrap_or(lo);
    let rows: Vec<Value> = (lo..hi)
        .filter(|e| e.rem_euclid(2) == s.k as i64 % 2)
        .map(|e| json!({ "q": rational::format(&rational::rat(e, 2)), "coefficient": rat(&s.series.coeff(e)) }))
        .collect();
    Value::Array(rows)
}

/// Number of leading zero coefficients, counted in steps of `q` from
/// `q^{−k/2}` (or from `q⁰` for a series without prefactor).
fn leading_zeros(s: &IndexSeries, start: i64) -> Option<u64> {
    let end = s.series.order()?;
    let n = (start..end).step_by(2).take_while(|&e| s.series.coeff(e).is_zero()).count();
    Some(n as u64)
}

pub fn cmd_expand(manifold: &str, cusp: &str, qorder: u32, normalized: bool) -> Result<Outcome, Error> {
    let qorder = check_qorder(qorder)?;
    let m = resolve_manifold(manifold)?;
    let cusp = Cusp::parse(cusp).ok_or_else(|| Error::Validation(format!("unknown cusp {cusp:?}")))?;
    let s = if normalized {
        normalized_index_series(&m, cusp, qorder)?
    } else {
        match cusp {
            Cusp::Ahat => phi0_series(&m, qorder)?,
            Cusp::Signature => genus::loop_sign_series(&m, qorder)?,
        }
    };
    let start = if cusp == Cusp::Ahat && !normalized { -(s.k as i64) } else { 0 };
    let pole = match pole_order(&s) {
        PoleOrder::Order(p) => rat(&p),
        PoleOrder::Indeterminate => json!("indeterminate"),
    };
    let modular = verify_modularity(&m, cusp, qorder)?;
    let mut pairs = vec![
        ("manifold", json!(m.name)),
        ("cusp", json!(cusp.to_string())),
        ("qorder", json!(qorder)),
        ("k", json!(s.k)),
        ("tag", json!(s.tag.to_string())),
        ("series", report::series(&s.series)),
        ("q_coefficients", q_coefficients(&s, start)),
        ("pole_order", pole),
        ("leading_zero_coefficients", json!(leading_zeros(&s, start))),
        ("modular", json!(modular)),
    ];
    if cusp == Cusp::Ahat && m.dim_real % 4 == 0 {
        let mut t = vec![
            ("ahat", rat(&genus_value_rational(&GenusSpec::ahat(), &m)?)),
            ("ahat_tm_complexified", rat(&twisted_number(TwistGenus::Ahat, &m, Bundle::Tangent)?)),
        ];
        if m.tangent.is_chern() {
            t.push(("ahat_tm_holomorphic", rat(&twisted_number(TwistGenus::Ahat, &m, Bundle::HolomorphicTangent)?)));
        }
        pairs.push(("twisted_indices", object(t)));
    }
    if !modular {
        return Err(Error::Inconsistent(format!("{} at the {cusp} cusp is not the modular substitution", m.name)));
    }
    Ok(Outcome::new(object(pairs), true))
}

/// `all` or a comma list of criterion numbers.
pub fn cmd_verify(suite: &str, qorder: u32) -> Result<Outcome, Error> {
    let qorder = check_qorder(qorder)?;
    let ids: Vec<u32> = if suite == "all" {
        (1..=12).collect()
    } else {
        suite
            .split(',')
            .map(|t| t.trim().parse::<u32>().ok().filter(|i| (1..=12).contains(i)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Validation(format!("suite must be 'all' or numbers 1..12, got {suite:?}")))?
    };
    let checks: Vec<Check> = ids.iter().map(|&i| verify::criterion(i, qorder)).collect();
    let ok = checks.iter().all(|c| c.pass);
    Ok(Outcome { report: verify::suite_json(&checks, qorder), ok, checks: Some(checks) })
}

pub fn parse_samples(s: &str) -> Result<Vec<SamplePoint>, Error> {
    s.split(',')
        .map(|t| SamplePoint::parse(t).ok_or_else(|| Error::Validation(format!("bad lambda {t:?}"))))
        .collect()
}

pub fn cmd_rigidity(action: &str, lambdas: &str, qorder: u32) -> Result<Outcome, Error> {
    let qorder = check_qorder(qorder)?;
    let a = resolve_action(action)?;
    let samples = parse_samples(lambdas)?;
    let r = rigidity_check(&a, &samples, qorder)?;
    let euler = euler_fixed_check(&a);
    // rigidity is a theorem only for spin manifolds; otherwise report only
    let asserted = r.spin;
    let ok = !asserted || r.pass();
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|(l, s)| json!({ "lambda": l.0.to_string(), "series": report::series(s) }))
        .collect();
    let report = object(vec![
        ("action", json!(a.provenance)),
        ("ambient", json!(a.ambient.name)),
        ("components", json!(a.components.len())),
        ("spin", json!(r.spin)),
        ("parity", json!(r.parity.to_string())),
        ("qorder", json!(qorder)),
        ("samples", Value::Array(samples)),
        ("reference", report::series(&r.reference)),
        ("all_agree", json!(r.all_agree)),
        ("matches_reference", json!(r.matches_reference)),
        ("q0_constant", json!(r.q0_constant)),
        ("odd_vanishing", json!(r.odd_vanishing)),
        (
            "euler",
            json!({ "fixed_sum": rat(&euler.fixed_sum), "ambient": rat(&euler.ambient), "ok": euler.ok() }),
        ),
        ("asserted", json!(asserted)),
        ("status", json!(if !asserted { "EXPERIMENTAL" } else if ok { "PASS" } else { "FAIL" })),
    ]);
    Ok(Outcome::new(report, ok))
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn matrix_json(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(bigint_json).collect())).collect())
}

/// A JSON value given inline or as a path to a file holding it.
fn json_arg(s: &str) -> Result<Value, Error> {
    let text = if Path::new(s).is_file() {
        std::fs::read_to_string(s).map_err(|e| Error::Validation(format!("{s}: {e}")))?
    } else {
        s.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Validation(format!("bad JSON {s:?}: {e}")))
}

fn int_matrix(v: &Value) -> Result<Vec<Vec<i64>>, Error> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Validation(format!("expected an integer matrix: {e}")))
}

/// Either one weight vector or a list of them.
fn weight_components(v: &Value) -> Result<Vec<Vec<i64>>, Error> {
    if let Ok(one) = serde_json::from_value::<Vec<i64>>(v.clone()) {
        return Ok(vec![one]);
    }
    int_matrix(v)
}

#[derive(Default)]
pub struct ObstructArgs<'a> {
    pub weights: Option<&'a str>,
    pub order: i64,
    pub matrix: Option<&'a str>,
    pub prime: i64,
    pub code_r: Option<usize>,
    pub manifold: Option<&'a str>,
    pub action: Option<&'a str>,
    pub rfpd: Option<&'a str>,
    pub qorder: u32,
}

pub fn cmd_obstruct(args: &ObstructArgs) -> Result<Outcome, Error> {
    let qorder = check_qorder(args.qorder)?;
    let o = args.order;
    let mut pairs = vec![("order", json!(o))];
    let mut ok = true;
    let mut any = false;
    if let Some(w) = args.weights {
        any = true;
        let comps = weight_components(&json_arg(w)?)?;
        let mo = m_o_min(&comps, o)?.unwrap_or_default();
        let per: Vec<Value> = comps
            .iter()
            .map(|c| -> Result<Value, Error> {
                let red: Vec<i64> =
                    c.iter().filter(|&&x| x != 0).map(|&x| obstruct::reduced_weight(x, o)).collect::<Result<_, _>>()?;
                Ok(json!({
                    "weights": c,
                    "reduced": red,
                    "m_o": rat(&obstruct::m_o(c, o)?),
                    "codim": obstruct::fixed_codim(c, o)?,
                }))
            })
            .collect::<Result<_, _>>()?;
        let min_codim = comps.iter().map(|c| obstruct::fixed_codim(c, o)).collect::<Result<Vec<_>, _>>()?;
        let min_codim = min_codim.into_iter().min().unwrap_or(0);
        pairs.push(("components", Value::Array(per)));
        pairs.push(("m_o", rat(&mo)));
        pairs.push((
            "vanish_prediction",
            json!({
                "cyclic_m_o": obstruct::vanish_prediction(&obstruct::VanishSource::CyclicMo { m_o: mo }),
                "cyclic_codim": obstruct::vanish_prediction(&obstruct::VanishSource::CyclicCodim { codim: min_codim, order: o.max(0) as u64 }),
                "involution_codim": if o == 2 { json!(obstruct::vanish_prediction(&obstruct::VanishSource::Involution { codim: min_codim })) } else { Value::Null },
            }),
        ));
        if let Some(mname) = args.manifold {
            let m = resolve_manifold(mname)?;
            let cc = cross_check_prediction(&m, &comps, o, qorder)?;
            ok &= cc.pass;
            pairs.push(("cross_check", serde_json::to_value(&cc).unwrap()));
        }
    }
    if let Some(a) = args.action {
        any = true;
        let a = resolve_action(a)?;
        let comps: Vec<Vec<i64>> = a.components.iter().map(|c| c.weights()).collect();
        let cc = cross_check_prediction(&a.ambient, &comps, o, qorder)?;
        ok &= cc.pass;
        pairs.push(("action", json!(a.provenance)));
        pairs.push(("action_cross_check", serde_json::to_value(&cc).unwrap()));
    }
    if let Some(mtx) = args.matrix {
        any = true;
        let a = int_matrix(&json_arg(mtx)?)?;
        let nf = lattice_normal_form(&a, args.prime)?;
        pairs.push((
            "normal_form",
            json!({
                "prime": args.prime,
                "matrix": matrix_json(&nf.matrix),
                "transform": matrix_json(&nf.transform),
                "column_permutation": nf.column_permutation,
                "covering_degree": bigint_json(&nf.covering_degree),
                "shape_ok": obstruct::has_normal_shape(&nf.matrix, args.prime),
            }),
        ));
        if let Some(r) = args.code_r {
            pairs.push(("code_audit", serde_json::to_value(code_audit(&a, r)?).unwrap()));
        }
    } else if args.code_r.is_some() {
        return Err(Error::Validation("--code-r needs --matrix".into()));
    }
    if let Some(t) = args.rfpd {
        any = true;
        let table: Vec<(u32, Vec<u32>)> = serde_json::from_value(json_arg(t)?)
            .map_err(|e| Error::Validation(format!("rfpd table is [[dimX, [dims..]], ..]: {e}")))?;
        pairs.push(("rfpd", json!(rfpd_check(&table))));
    }
    if !any {
        return Err(Error::Validation("nothing to do: give --weights, --action, --matrix or --rfpd".into()));
    }
    Ok(Outcome::new(object(pairs), ok))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.report).unwrap() + "\n",
        Format::Text => match &out.checks {
            Some(cs) => cs.iter().map(|c| c.line() + "\n").collect(),
            None => report::flatten(&out.report).into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        },
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &out.checks {
                Some(cs) => {
                    w.write_record(["id", "name", "status", "detail"]).unwrap();
                    for c in cs {
                        let id = c.id.to_string();
                        w.write_record([id.as_str(), c.name, if c.pass { "PASS" } else { "FAIL" }, &c.detail]).unwrap();
                    }
                }
                None => {
                    w.write_record(["key", "value"]).unwrap();
                    for (k, v) in report::flatten(&out.report) {
                        w.write_record([k, v]).unwrap();
                    }
                }
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}
