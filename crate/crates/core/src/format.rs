//! Versioned JSON documents written by the command-line tool.

use serde::{Deserialize, Serialize};

use crate::coeff::CoeffPoly;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::kostka::{KostkaResult, MarkedTerm};
use crate::parabolic::{ModuleElement, ModuleJson};
use crate::polyrep::ZPoly;

pub const MODULE_FORMAT: &str = "kostka-module/1";
pub const POLY_FORMAT: &str = "kostka-zpoly/1";
pub const KOSTKA_FORMAT: &str = "kostka-value/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Object {
    ETilde,
    Kl,
}

/// An element of the parabolic module in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub format: String,
    pub object: Object,
    pub index: Composition,
    #[serde(flatten)]
    pub element: ModuleJson,
}

impl ModuleDoc {
    pub fn new(object: Object, index: &Composition, x: &ModuleElement) -> Self {
        ModuleDoc { format: MODULE_FORMAT.into(), object, index: index.clone(), element: x.to_json() }
    }

    pub fn element(&self) -> Result<ModuleElement> {
        check_format(&self.format, MODULE_FORMAT)?;
        ModuleElement::from_json(&self.element)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub alpha: Composition,
    pub coef: CoeffPoly,
}

/// A polynomial in `z_1, …, z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub format: String,
    pub object: Object,
    pub index: Composition,
    pub rank: usize,
    pub terms: Vec<MonomialJson>,
}

impl PolyDoc {
    pub fn new(object: Object, index: &Composition, f: &ZPoly) -> Self {
        PolyDoc {
            format: POLY_FORMAT.into(),
            object,
            index: index.clone(),
            rank: f.rank(),
            terms: f.terms().map(|(a, c)| MonomialJson { alpha: a.clone(), coef: c.clone() }).collect(),
        }
    }

    pub fn poly(&self) -> Result<ZPoly> {
        check_format(&self.format, POLY_FORMAT)?;
        let mut out = ZPoly::zero(self.rank);
        for t in &self.terms {
            if t.alpha.length() > self.rank {
                return Err(Error::RankTooSmall { rank: self.rank, needed: t.alpha.length() });
            }
            out.add_term(t.alpha.clone(), t.coef.clone());
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedRow {
    pub diagram: String,
    pub a: u32,
    pub l: u32,
    pub value: CoeffPoly,
    pub pretty: String,
}

/// A composition Kostka function, optionally with its marked refinement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostkaDoc {
    pub format: String,
    #[serde(flatten)]
    pub result: KostkaResult,
    pub pretty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<MarkedRow>>,
}

impl KostkaDoc {
    pub fn new(result: KostkaResult, marked: Option<&[MarkedTerm]>) -> Self {
        let pretty = result.value.to_string();
        let marked = marked.map(|rows| {
            rows.iter()
                .map(|t| MarkedRow {
                    diagram: t.diagram.to_string(),
                    a: t.a,
                    l: t.l,
                    value: t.value.clone(),
                    pretty: t.value.to_string(),
                })
                .collect()
        });
        KostkaDoc { format: KOSTKA_FORMAT.into(), result, pretty, marked }
    }
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected format {expected:?}, found {found:?}")));
    }
    Ok(())
}
