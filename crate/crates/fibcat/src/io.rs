//! JSON file formats for categories and functors.
//!
//! A category file is `{"objects": n, "morphisms": [{"src": i, "tgt": j}],
//! "identities": [...], "comp": [[...]]}` with `-1` encoding undefined
//! composites; `comp[g][f]` is `g ∘ f`. A functor file is `{"dom": ...,
//! "cod": ..., "objMap": [...], "morMap": [...]}` where `dom`/`cod` are
//! inline categories or builder expressions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::RawCategory;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismFile {
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: usize,
    pub morphisms: Vec<MorphismFile>,
    pub identities: Vec<usize>,
    pub comp: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("composition entry comp[{g}][{f}] = {value} is not -1 or a morphism index")]
    BadCompEntry { g: usize, f: usize, value: i64 },
}

impl CategoryFile {
    pub fn to_raw(&self) -> Result<RawCategory, FormatError> {
        let mut comp = Vec::with_capacity(self.comp.len());
        for (g, row) in self.comp.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (f, &value) in row.iter().enumerate() {
                if value == -1 {
                    out.push(None);
                } else if value >= 0 {
                    out.push(Some(value as usize));
                } else {
                    return Err(FormatError::BadCompEntry { g, f, value });
                }
            }
            comp.push(out);
        }
        Ok(RawCategory {
            n_objects: self.objects,
            src: self.morphisms.iter().map(|m| m.src).collect(),
            tgt: self.morphisms.iter().map(|m| m.tgt).collect(),
            identities: self.identities.clone(),
            comp,
        })
    }

    pub fn from_raw(raw: &RawCategory) -> CategoryFile {
        CategoryFile {
            objects: raw.n_objects,
            morphisms: raw
                .src
                .iter()
                .zip(&raw.tgt)
                .map(|(&src, &tgt)| MorphismFile { src, tgt })
                .collect(),
            identities: raw.identities.clone(),
            comp: raw
                .comp
                .iter()
                .map(|row| row.iter().map(|e| e.map_or(-1, |h| h as i64)).collect())
                .collect(),
        }
    }
}

/// A category reference in a functor file: inline data or a builder
/// expression such as `"finset_skel:2"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Named(String),
    Inline(CategoryFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FunctorFile {
    pub dom: CategoryRef,
    pub cod: CategoryRef,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}
