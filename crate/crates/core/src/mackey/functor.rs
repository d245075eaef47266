use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::{Elem, FiniteGroup, SubId, SubgroupTable};
use crate::intlat::{image_lattice, IntMap, Lattice};

use super::FunctorError;

/// A Mackey functor with values in finite-rank free abelian groups.
///
/// Every module `M(H)` comes with an ordered, labeled basis and every
/// induction, restriction and conjugation map is stored as a matrix in those
/// bases, for all pairs `K ≤ H` and all `(g, H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyFunctorData {
    table: Arc<SubgroupTable>,
    ranks: Vec<usize>,
    labels: Vec<Vec<String>>,
    ind: BTreeMap<(SubId, SubId), IntMap>,
    res: BTreeMap<(SubId, SubId), IntMap>,
    conj: Vec<IntMap>,
}

/// Raw parts of a functor before validation.
#[derive(Debug, Clone, Default)]
pub struct FunctorParts {
    pub ranks: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// keyed by `(K, H)` with `K ≤ H`; shape `rank(H) x rank(K)`
    pub ind: BTreeMap<(SubId, SubId), IntMap>,
    /// keyed by `(K, H)` with `K ≤ H`; shape `rank(K) x rank(H)`
    pub res: BTreeMap<(SubId, SubId), IntMap>,
    /// keyed by `(g, H)`; shape `rank(^g H) x rank(H)`
    pub conj: BTreeMap<(Elem, SubId), IntMap>,
}

fn shape_error(what: &str, expected: (usize, usize), m: &IntMap) -> FunctorError {
    FunctorError::Shape(format!(
        "{what} should be {}x{}, found {}x{}",
        expected.0,
        expected.1,
        m.rows(),
        m.cols()
    ))
}

impl MackeyFunctorData {
    /// Validate and assemble a functor: every family must be complete, every
    /// matrix must match the rank table and every conjugation must be
    /// invertible over `Z`.
    pub fn new(table: Arc<SubgroupTable>, mut parts: FunctorParts) -> Result<Self, FunctorError> {
        let n = table.len();
        if parts.ranks.len() != n {
            return Err(FunctorError::Shape(format!(
                "{} ranks for {n} subgroups",
                parts.ranks.len()
            )));
        }
        if parts.labels.is_empty() {
            parts.labels = parts
                .ranks
                .iter()
                .map(|&r| (0..r).map(|i| format!("b{i}")).collect())
                .collect();
        }
        if parts.labels.len() != n
            || parts
                .labels
                .iter()
                .zip(&parts.ranks)
                .any(|(l, &r)| l.len() != r)
        {
            return Err(FunctorError::Shape(
                "basis labels do not match ranks".into(),
            ));
        }
        let ranks = &parts.ranks;
        for (k, h) in table.inclusions() {
            let name = format!("{}<={}", table.label(k), table.label(h));
            let i = parts.ind.get(&(k, h)).ok_or_else(|| {
                FunctorError::Incomplete(format!("incomplete induction family: missing {name}"))
            })?;
            if (i.rows(), i.cols()) != (ranks[h.0], ranks[k.0]) {
                return Err(shape_error(
                    &format!("ind {name}"),
                    (ranks[h.0], ranks[k.0]),
                    i,
                ));
            }
            let r = parts.res.get(&(k, h)).ok_or_else(|| {
                FunctorError::Incomplete(format!("incomplete restriction family: missing {name}"))
            })?;
            if (r.rows(), r.cols()) != (ranks[k.0], ranks[h.0]) {
                return Err(shape_error(
                    &format!("res {name}"),
                    (ranks[k.0], ranks[h.0]),
                    r,
                ));
            }
        }
        for key in parts.ind.keys().chain(parts.res.keys()) {
            if key.0 .0 >= n || key.1 .0 >= n || !table.le(key.0, key.1) {
                return Err(FunctorError::Shape(format!(
                    "map given for a non-inclusion {} -> {}",
                    key.0, key.1
                )));
            }
        }
        let group = table.group();
        let mut conj = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for h in table.ids() {
                let name = format!("conj {} on {}", group.name(g), table.label(h));
                let c = parts.conj.remove(&(g, h)).ok_or_else(|| {
                    FunctorError::Incomplete(format!(
                        "incomplete conjugation family: missing {name}"
                    ))
                })?;
                let target = table.conj(g, h);
                if (c.rows(), c.cols()) != (ranks[target.0], ranks[h.0]) {
                    return Err(shape_error(&name, (ranks[target.0], ranks[h.0]), &c));
                }
                if image_lattice(&c) != Lattice::full(c.rows()) {
                    return Err(FunctorError::NotInvertible(name));
                }
                conj.push(c);
            }
        }
        if let Some(((g, h), _)) = parts.conj.into_iter().next() {
            return Err(FunctorError::Shape(format!(
                "conjugation given for unknown pair ({}, {h})",
                g.0
            )));
        }
        Ok(MackeyFunctorData {
            table,
            ranks: parts.ranks,
            labels: parts.labels,
            ind: parts.ind,
            res: parts.res,
            conj,
        })
    }

    pub fn table(&self) -> &Arc<SubgroupTable> {
        &self.table
    }

    pub fn group(&self) -> &FiniteGroup {
        self.table.group()
    }

    pub fn rank(&self, h: SubId) -> usize {
        self.ranks[h.0]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn labels(&self, h: SubId) -> &[String] {
        &self.labels[h.0]
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// `I_K^H : M(K) -> M(H)`. Panics unless `K ≤ H`.
    pub fn ind(&self, k: SubId, h: SubId) -> &IntMap {
        &self.ind[&(k, h)]
    }

    /// `R_K^H : M(H) -> M(K)`. Panics unless `K ≤ H`.
    pub fn res(&self, k: SubId, h: SubId) -> &IntMap {
        &self.res[&(k, h)]
    }

    /// `c_g : M(H) -> M(^g H)`
    pub fn conj(&self, g: Elem, h: SubId) -> &IntMap {
        &self.conj[g.0 * self.table.len() + h.0]
    }

    pub fn ind_maps(&self) -> &BTreeMap<(SubId, SubId), IntMap> {
        &self.ind
    }

    pub fn res_maps(&self) -> &BTreeMap<(SubId, SubId), IntMap> {
        &self.res
    }

    /// Replace one induction map; the shape must stay the same.
    pub fn set_ind(&mut self, k: SubId, h: SubId, m: IntMap) -> Result<(), FunctorError> {
        let slot = self
            .ind
            .get_mut(&(k, h))
            .ok_or_else(|| FunctorError::Shape(format!("no induction {k} -> {h}")))?;
        if (slot.rows(), slot.cols()) != (m.rows(), m.cols()) {
            return Err(shape_error("ind", (slot.rows(), slot.cols()), &m));
        }
        *slot = m;
        Ok(())
    }

    pub fn set_res(&mut self, k: SubId, h: SubId, m: IntMap) -> Result<(), FunctorError> {
        let slot = self
            .res
            .get_mut(&(k, h))
            .ok_or_else(|| FunctorError::Shape(format!("no restriction {h} -> {k}")))?;
        if (slot.rows(), slot.cols()) != (m.rows(), m.cols()) {
            return Err(shape_error("res", (slot.rows(), slot.cols()), &m));
        }
        *slot = m;
        Ok(())
    }

    /// Replace one conjugation map; it must keep its shape and stay invertible.
    pub fn set_conj(&mut self, g: Elem, h: SubId, m: IntMap) -> Result<(), FunctorError> {
        let idx = g.0 * self.table.len() + h.0;
        let slot = &mut self.conj[idx];
        if (slot.rows(), slot.cols()) != (m.rows(), m.cols()) {
            return Err(shape_error("conj", (slot.rows(), slot.cols()), &m));
        }
        if image_lattice(&m) != Lattice::full(m.rows()) {
            return Err(FunctorError::NotInvertible(format!("conj {} on {h}", g.0)));
        }
        *slot = m;
        Ok(())
    }
}
