use crate::genus::{self, GenusSpec};
use crate::series::rational::{self, int, Rational};

use super::{
    CohomologyModel, Generator, LinearForm, ManifoldModel, ModelError, RootStyle, TangentData,
    TangentEntry,
};

const MAX_FACTORS: usize = 3;

/// Look up a catalog manifold: `CPn`, `HPn`, `V(n,l)`, `point`, and
/// products written `product(A,B,..)` or `AxB`.
pub fn builtin(name: &str) -> Result<ManifoldModel, ModelError> {
    let name = name.trim();
    let unknown = || ModelError::UnknownBuiltin(name.to_string());
    if name.eq_ignore_ascii_case("point") || name.eq_ignore_ascii_case("pt") {
        return Ok(point());
    }
    if let Some(inner) = name.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
        let parts = split_top_level(inner, ',');
        let factors = parts.iter().map(|p| builtin(p)).collect::<Result<Vec<_>, _>>()?;
        return product(&factors);
    }
    let parts = split_top_level(name, 'x');
    if parts.len() > 1 {
        let factors = parts.iter().map(|p| builtin(p)).collect::<Result<Vec<_>, _>>()?;
        return product(&factors);
    }
    if let Some(n) = name.strip_prefix("CP") {
        return complex_projective(n.parse().map_err(|_| unknown())?);
    }
    if let Some(n) = name.strip_prefix("HP") {
        return quaternionic_projective(n.parse().map_err(|_| unknown())?);
    }
    if let Some(args) = name.strip_prefix("V(").and_then(|s| s.strip_suffix(')')) {
        let (n, l) = args.split_once(',').ok_or_else(unknown)?;
        let n: u32 = n.trim().parse().map_err(|_| unknown())?;
        let l: u32 = l.trim().parse().map_err(|_| unknown())?;
        return hypersurface(n, l);
    }
    Err(unknown())
}

/// Split on `sep` outside parentheses.
fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            parts.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    parts.push(cur.trim().to_string());
    parts
}

pub fn point() -> ManifoldModel {
    ManifoldModel {
        name: "point".into(),
        cohomology: CohomologyModel::point(),
        tangent: TangentData { style: RootStyle::Chern, delta: 0, entries: Vec::new() },
        dim_real: 0,
        spin: true,
    }
}

fn chern(symbol: &str, c: i64, mult: i64) -> TangentEntry {
    TangentEntry { form: LinearForm::single(symbol, int(c)), mult, style: RootStyle::Chern }
}

fn pontryagin(symbol: &str, c: i64, mult: i64) -> TangentEntry {
    TangentEntry { form: LinearForm::single(symbol, int(c)), mult, style: RootStyle::Pontryagin }
}

fn degenerate(msg: impl Into<String>) -> ModelError {
    ModelError::Degenerate(msg.into())
}

/// ℂPⁿ: `T ⊕ 1 = (n+1)·L(h)`.
pub fn complex_projective(n: u32) -> Result<ManifoldModel, ModelError> {
    if n == 0 {
        return Err(degenerate("CPn needs n >= 1"));
    }
    let coh = CohomologyModel::new(vec![Generator { symbol: "h".into(), degree: 2, cap: n }], int(1))?;
    let tangent = TangentData {
        style: RootStyle::Chern,
        delta: 1,
        entries: vec![chern("h", 1, n as i64 + 1)],
    };
    let m = ManifoldModel::new(format!("CP{n}"), coh, tangent, 2 * n, n % 2 == 1)?;
    check(&m, "euler characteristic", m.euler_characteristic()?, int(n as i64 + 1))?;
    if n % 2 == 0 {
        check(&m, "signature", signature(&m)?, int(1))?;
    } else {
        let c1 = m.first_chern_class()?.coeff(&[1]);
        check(&m, "first Chern class", c1, int(n as i64 + 1))?;
    }
    Ok(m)
}

/// ℍPⁿ with Pontryagin roots: `p(ℍPⁿ) = (1+u)^{2n+2}(1+4u)^{-1}`.
pub fn quaternionic_projective(n: u32) -> Result<ManifoldModel, ModelError> {
    if n == 0 {
        return Err(degenerate("HPn needs n >= 1"));
    }
    let coh = CohomologyModel::new(vec![Generator { symbol: "u".into(), degree: 4, cap: n }], int(1))?;
    let tangent = TangentData {
        style: RootStyle::Pontryagin,
        delta: 1,
        entries: vec![pontryagin("u", 1, 2 * n as i64 + 2), pontryagin("u", 4, -1)],
    };
    let m = ManifoldModel::new(format!("HP{n}"), coh, tangent, 4 * n, true)?;
    let sig = if n % 2 == 0 { 1 } else { 0 };
    check(&m, "signature", signature(&m)?, int(sig))?;
    check(&m, "A-hat genus", ahat(&m)?, int(0))?;
    Ok(m)
}

/// Degree-`l` hypersurface `V(n,l) ⊂ ℂP^{n+1}`: `T ⊕ L(lh) ⊕ 1 = (n+2)·L(h)`.
pub fn hypersurface(n: u32, l: u32) -> Result<ManifoldModel, ModelError> {
    if n == 0 || l == 0 {
        return Err(degenerate("V(n,l) needs n >= 1 and l >= 1"));
    }
    let coh = CohomologyModel::new(vec![Generator { symbol: "h".into(), degree: 2, cap: n }], int(l as i64))?;
    let tangent = TangentData {
        style: RootStyle::Chern,
        delta: 1,
        entries: vec![chern("h", 1, n as i64 + 2), chern("h", l as i64, -1)],
    };
    let spin = (n + l) % 2 == 0;
    let m = ManifoldModel::new(format!("V({n},{l})"), coh, tangent, 2 * n, spin)?;
    check(&m, "euler characteristic", m.euler_characteristic()?, hypersurface_euler(n, l))?;
    let c1 = m.first_chern_class()?.coeff(&[1]);
    check(&m, "first Chern class", c1, int(n as i64 + 2 - l as i64))?;
    Ok(m)
}

/// `χ(V(n,l)) = ((1−l)^{n+2} − 1)/l + n + 2`.
pub fn hypersurface_euler(n: u32, l: u32) -> Rational {
    let l = int(l as i64);
    let one = int(1);
    let p = num_traits::pow(&one - &l, n as usize + 2);
    (p - &one) / l + int(n as i64 + 2)
}

/// Product of up to three models; generators of factor `i` get suffix `_i`.
pub fn product(factors: &[ManifoldModel]) -> Result<ManifoldModel, ModelError> {
    if factors.is_empty() || factors.len() > MAX_FACTORS {
        return Err(degenerate(format!("products take 1 to {MAX_FACTORS} factors")));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let mut gens = Vec::new();
    let mut pairing = int(1);
    let mut entries = Vec::new();
    let mut delta = 0;
    let mut dim = 0;
    let mut spin = true;
    let mut styles = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let rename = |s: &str| format!("{s}_{}", i + 1);
        for g in f.cohomology.generators() {
            gens.push(Generator { symbol: rename(&g.symbol), ..g.clone() });
        }
        pairing *= f.cohomology.pairing();
        for e in &f.tangent.entries {
            entries.push(TangentEntry { form: e.form.renamed(rename), ..e.clone() });
        }
        delta += f.tangent.delta;
        dim += f.dim_real;
        spin &= f.spin;
        styles.push(f.tangent.style);
    }
    let style = if styles.iter().all(|s| *s == RootStyle::Chern) {
        RootStyle::Chern
    } else {
        RootStyle::Pontryagin
    };
    let name = factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join("x");
    let coh = CohomologyModel::new(gens, pairing)?;
    let m = ManifoldModel::new(name, coh, TangentData { style, delta, entries }, dim, spin)?;

    let sig: Rational = factors.iter().map(signature).product::<Result<Rational, _>>()?;
    check(&m, "signature multiplicativity", signature(&m)?, sig)?;
    if m.tangent.is_chern() {
        let chi = factors
            .iter()
            .map(|f| f.euler_characteristic())
            .product::<Result<Rational, _>>()?;
        check(&m, "euler characteristic multiplicativity", m.euler_characteristic()?, chi)?;
    } else {
        let a: Rational = factors.iter().map(ahat).product::<Result<Rational, _>>()?;
        check(&m, "A-hat multiplicativity", ahat(&m)?, a)?;
    }
    Ok(m)
}

fn signature(m: &ManifoldModel) -> Result<Rational, ModelError> {
    genus::genus_value_rational(&GenusSpec::signature(), m).map_err(|e| ModelError::CatalogCheck {
        name: m.name.clone(),
        check: format!("signature evaluation failed: {e}"),
    })
}

fn ahat(m: &ManifoldModel) -> Result<Rational, ModelError> {
    genus::genus_value_rational(&GenusSpec::ahat(), m).map_err(|e| ModelError::CatalogCheck {
        name: m.name.clone(),
        check: format!("A-hat evaluation failed: {e}"),
    })
}

fn check(m: &ManifoldModel, what: &str, got: Rational, want: Rational) -> Result<(), ModelError> {
    if got == want {
        Ok(())
    } else {
        Err(ModelError::CatalogCheck {
            name: m.name.clone(),
            check: format!("{what}: got {}, expected {}", rational::format(&got), rational::format(&want)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(builtin("CP2").unwrap().dim_real, 4);
        assert_eq!(builtin("V(4,4)").unwrap().cohomology.pairing(), &int(4));
        let p = builtin("product(CP2,V(2,3),HP1)").unwrap();
        assert_eq!(p.dim_real, 12);
        assert_eq!(p.name, "CP2xV(2,3)xHP1");
        assert_eq!(builtin("CP1xCP1").unwrap().dim_real, 4);
        assert!(matches!(builtin("KP3"), Err(ModelError::UnknownBuiltin(_))));
        assert!(matches!(builtin("CP0"), Err(ModelError::Degenerate(_))));
        assert!(builtin("CP1xCP1xCP1xCP1").is_err());
    }

    #[test]
    fn hypersurface_euler_closed_form() {
        assert_eq!(hypersurface_euler(4, 4), int(188));
        // cubic threefold
        assert_eq!(hypersurface_euler(3, 3), int(-6));
        // quartic K3
        assert_eq!(hypersurface_euler(2, 4), int(24));
        // hyperplane is a projective space
        assert_eq!(hypersurface_euler(5, 1), int(6));
    }

    #[test]
    fn whole_catalog_constructs() {
        for n in 1..=6 {
            complex_projective(n).unwrap();
            quaternionic_projective(n.min(4)).unwrap();
            for l in 1..=n + 3 {
                hypersurface(n, l).unwrap();
            }
        }
    }
}
