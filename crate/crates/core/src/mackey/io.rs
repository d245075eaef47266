//! The functor file: one JSON document holding the group spec, the subgroup
//! list, ranks, basis labels and every induction, restriction and
//! conjugation matrix.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{Elem, FiniteGroup, SubId, SubgroupTable};
use crate::intlat::IntMap;

use super::{FunctorError, FunctorParts, MackeyFunctorData};

pub const FORMAT_TAG: &str = "mackey-functor/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub format: String,
    pub group_spec: String,
    /// element index lists, in the canonical subgroup order
    pub subgroups: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    pub basis_labels: Vec<Vec<String>>,
    pub ind: Vec<InclusionEntry>,
    pub res: Vec<InclusionEntry>,
    pub conj: Vec<ConjugationEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InclusionEntry {
    /// index of `K`
    pub sub: usize,
    /// index of `H`
    pub sup: usize,
    pub matrix: IntMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugationEntry {
    pub element: usize,
    pub subgroup: usize,
    pub matrix: IntMap,
}

impl FunctorFile {
    pub fn from_functor(m: &MackeyFunctorData) -> Self {
        let t = m.table();
        let inclusion = |maps: &BTreeMap<(SubId, SubId), IntMap>| {
            maps.iter()
                .map(|(&(k, h), matrix)| InclusionEntry {
                    sub: k.0,
                    sup: h.0,
                    matrix: matrix.clone(),
                })
                .collect()
        };
        let mut conj = Vec::new();
        for g in m.group().elements() {
            for h in t.ids() {
                conj.push(ConjugationEntry {
                    element: g.0,
                    subgroup: h.0,
                    matrix: m.conj(g, h).clone(),
                });
            }
        }
        FunctorFile {
            format: FORMAT_TAG.to_string(),
            group_spec: m.group().spec().to_string(),
            subgroups: t
                .subgroups()
                .iter()
                .map(|s| s.elements().iter().map(|e| e.0).collect())
                .collect(),
            ranks: m.ranks().to_vec(),
            basis_labels: m.all_labels().to_vec(),
            ind: inclusion(m.ind_maps()),
            res: inclusion(m.res_maps()),
            conj,
        }
    }

    /// Rebuild the group from its spec and validate every invariant.
    pub fn into_functor(self, order_cap: usize) -> Result<MackeyFunctorData, FunctorError> {
        if self.format != FORMAT_TAG {
            return Err(FunctorError::Schema(format!(
                "unsupported format {:?}, expected {FORMAT_TAG:?}",
                self.format
            )));
        }
        let group = FiniteGroup::from_spec(&self.group_spec, order_cap)?;
        let table = Arc::new(SubgroupTable::new(group));
        let expected: Vec<Vec<usize>> = table
            .subgroups()
            .iter()
            .map(|s| s.elements().iter().map(|e| e.0).collect())
            .collect();
        if self.subgroups != expected {
            return Err(FunctorError::Schema(
                "subgroup list does not match the group".into(),
            ));
        }
        let n = table.len();
        let check = |i: usize| {
            if i < n {
                Ok(SubId(i))
            } else {
                Err(FunctorError::Schema(format!(
                    "subgroup index {i} out of range"
                )))
            }
        };
        let mut parts = FunctorParts {
            ranks: self.ranks,
            labels: self.basis_labels,
            ..Default::default()
        };
        for (entries, target, what) in [
            (self.ind, &mut parts.ind, "induction"),
            (self.res, &mut parts.res, "restriction"),
        ] {
            for e in entries {
                let key = (check(e.sub)?, check(e.sup)?);
                if target.insert(key, e.matrix).is_some() {
                    return Err(FunctorError::Schema(format!(
                        "duplicate {what} entry {} -> {}",
                        e.sub, e.sup
                    )));
                }
            }
        }
        let order = table.group().order();
        for e in self.conj {
            if e.element >= order {
                return Err(FunctorError::Schema(format!(
                    "element {} out of range",
                    e.element
                )));
            }
            let key = (Elem(e.element), check(e.subgroup)?);
            if parts.conj.insert(key, e.matrix).is_some() {
                return Err(FunctorError::Schema(format!(
                    "duplicate conjugation entry ({}, {})",
                    e.element, e.subgroup
                )));
            }
        }
        MackeyFunctorData::new(table, parts)
    }
}

pub fn functor_to_json(m: &MackeyFunctorData) -> String {
    serde_json::to_string_pretty(&FunctorFile::from_functor(m)).expect("functor files serialize")
}

pub fn functor_from_json(text: &str, order_cap: usize) -> Result<MackeyFunctorData, FunctorError> {
    let file: FunctorFile =
        serde_json::from_str(text).map_err(|e| FunctorError::Schema(e.to_string()))?;
    file.into_functor(order_cap)
}

pub fn save_functor(m: &MackeyFunctorData, path: &Path) -> Result<(), FunctorError> {
    let mut text = functor_to_json(m);
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| FunctorError::Io(path.display().to_string(), e.to_string()))
}

pub fn load_functor(path: &Path, order_cap: usize) -> Result<MackeyFunctorData, FunctorError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FunctorError::Io(path.display().to_string(), e.to_string()))?;
    functor_from_json(&text, order_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;
    use crate::mackey::{burnside_functor, trivial_functor};

    fn table(spec: &str) -> Arc<SubgroupTable> {
        Arc::new(SubgroupTable::new(
            FiniteGroup::from_spec(spec, DEFAULT_ORDER_CAP).unwrap(),
        ))
    }

    #[test]
    fn round_trips() {
        for m in [
            trivial_functor(table("C1")).unwrap(),
            burnside_functor(table("S3")).unwrap(),
        ] {
            let back = functor_from_json(&functor_to_json(&m), DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn missing_induction_is_rejected() {
        let m = trivial_functor(table("C2")).unwrap();
        let mut file = FunctorFile::from_functor(&m);
        file.ind.pop();
        let err = file.into_functor(DEFAULT_ORDER_CAP).unwrap_err();
        assert!(
            err.to_string().contains("incomplete induction family"),
            "{err}"
        );
    }

    #[test]
    fn schema_violations() {
        let m = trivial_functor(table("C2")).unwrap();
        let good = FunctorFile::from_functor(&m);

        let mut f = good.clone();
        f.format = "other".into();
        assert!(matches!(f.into_functor(24), Err(FunctorError::Schema(_))));

        let mut f = good.clone();
        f.conj[1].matrix = IntMap::from_rows(1, &[vec![2]]);
        assert!(matches!(
            f.into_functor(24),
            Err(FunctorError::NotInvertible(_))
        ));

        let mut f = good.clone();
        f.res[0].matrix = IntMap::zeros(1, 2);
        assert!(matches!(f.into_functor(24), Err(FunctorError::Shape(_))));

        let mut f = good.clone();
        f.subgroups.pop();
        assert!(matches!(f.into_functor(24), Err(FunctorError::Schema(_))));

        let mut f = good.clone();
        f.ind.push(f.ind[0].clone());
        assert!(matches!(f.into_functor(24), Err(FunctorError::Schema(_))));

        let mut f = good;
        f.conj.pop();
        let err = f.into_functor(24).unwrap_err();
        assert!(err.to_string().contains("incomplete conjugation family"));

        assert!(functor_from_json("{\"format\": 3}", 24).is_err());
    }
}
