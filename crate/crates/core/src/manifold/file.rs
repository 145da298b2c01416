//! JSON model files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::series::rational::{self, Rational};

use super::{
    CohomologyModel, Generator, LinearForm, ManifoldModel, ModelError, RootStyle, TangentData,
    TangentEntry,
};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim_real: u32,
    pub spin: bool,
    pub generators: Vec<GeneratorFile>,
    pub pairing: String,
    pub tangent: TangentFile,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub symbol: String,
    pub degree: u32,
    pub cap: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TangentFile {
    pub style: StyleFile,
    pub delta: i64,
    pub entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum StyleFile {
    Chern,
    Pontryagin,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub form: BTreeMap<String, String>,
    pub mult: i64,
    /// Per-entry override, only needed for mixed products.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub style: Option<StyleFile>,
}

impl From<StyleFile> for RootStyle {
    fn from(s: StyleFile) -> Self {
        match s {
            StyleFile::Chern => RootStyle::Chern,
            StyleFile::Pontryagin => RootStyle::Pontryagin,
        }
    }
}

impl From<RootStyle> for StyleFile {
    fn from(s: RootStyle) -> Self {
        match s {
            RootStyle::Chern => StyleFile::Chern,
            RootStyle::Pontryagin => StyleFile::Pontryagin,
        }
    }
}

fn parse_rat(s: &str, what: &str) -> Result<Rational, ModelError> {
    rational::parse(s).map_err(|_| ModelError::Schema(format!("{what}: bad rational {s:?}")))
}

impl ModelFile {
    pub fn into_model(self) -> Result<ManifoldModel, ModelError> {
        let generators = self
            .generators
            .into_iter()
            .map(|g| Generator { symbol: g.symbol, degree: g.degree, cap: g.cap })
            .collect();
        let pairing = parse_rat(&self.pairing, "pairing")?;
        let cohomology = CohomologyModel::new(generators, pairing)?;
        let style: RootStyle = self.tangent.style.into();
        let mut entries = Vec::new();
        for e in self.tangent.entries {
            let mut form = BTreeMap::new();
            for (sym, c) in &e.form {
                form.insert(sym.clone(), parse_rat(c, "form coefficient")?);
            }
            entries.push(TangentEntry {
                form: LinearForm(form),
                mult: e.mult,
                style: e.style.map(Into::into).unwrap_or(style),
            });
        }
        let tangent = TangentData { style, delta: self.tangent.delta, entries };
        ManifoldModel::new(self.name, cohomology, tangent, self.dim_real, self.spin)
    }

    pub fn from_model(m: &ManifoldModel) -> Self {
        let style = m.tangent.style;
        ModelFile {
            name: m.name.clone(),
            dim_real: m.dim_real,
            spin: m.spin,
            generators: m
                .cohomology
                .generators()
                .iter()
                .map(|g| GeneratorFile { symbol: g.symbol.clone(), degree: g.degree, cap: g.cap })
                .collect(),
            pairing: rational::format(m.cohomology.pairing()),
            tangent: TangentFile {
                style: style.into(),
                delta: m.tangent.delta,
                entries: m
                    .tangent
                    .entries
                    .iter()
                    .map(|e| EntryFile {
                        form: e.form.0.iter().map(|(k, v)| (k.clone(), rational::format(v))).collect(),
                        mult: e.mult,
                        style: (e.style != style).then_some(e.style.into()),
                    })
                    .collect(),
            },
        }
    }
}

pub fn model_from_json(text: &str) -> Result<ManifoldModel, ModelError> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    file.into_model()
}

pub fn model_to_json(m: &ManifoldModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("model serializes")
}

pub fn load_model(path: &Path) -> Result<ManifoldModel, ModelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Schema(format!("{}: {e}", path.display())))?;
    model_from_json(&text)
}
