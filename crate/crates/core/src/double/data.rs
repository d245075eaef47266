use std::collections::HashMap;
use std::sync::Arc;

use crate::group::{SubId, SubgroupTable};
use crate::intlat::{image_lattice, lattice_intersect, IntMap, Lattice};
use crate::mackey::{check_axioms, MackeyFunctorData};

use super::symbolic::{CellBoundary, HMor, VMor};
use super::DoubleError;

/// A Mackey double category presented by its realization tables: one matrix
/// per canonical horizontal and vertical morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyDoubleData {
    table: Arc<SubgroupTable>,
    ranks: Vec<usize>,
    labels: Vec<Vec<String>>,
    hmors: Vec<HMor>,
    hreal: Vec<IntMap>,
    vmors: Vec<VMor>,
    vreal: Vec<IntMap>,
    hindex: HashMap<HMor, usize>,
    vindex: HashMap<VMor, usize>,
    h_from: Vec<Vec<usize>>,
    v_from: Vec<Vec<usize>>,
    h_between: HashMap<(SubId, SubId), Vec<usize>>,
}

/// Every canonical `t_K^{H,g}`, ordered by `(K, H, g)`.
pub fn all_hmors(t: &SubgroupTable) -> Vec<HMor> {
    let mut out = Vec::new();
    for (k, h) in t.inclusions() {
        for g in t.left_transversal(t.whole(), h).expect("H <= G") {
            out.push(HMor::new(t, k, h, g).expect("K <= H"));
        }
    }
    out.sort();
    out
}

/// Every canonical `r_{K,g}^H`, once per orbit, ordered by `(H, K, g)`.
pub fn all_vmors(t: &SubgroupTable) -> Vec<VMor> {
    let mut out = Vec::new();
    for (k, h) in t.inclusions() {
        for g in t.left_transversal(t.whole(), k).expect("K <= G") {
            out.push(VMor::new(t, k, h, g).expect("K <= H"));
        }
    }
    out.sort();
    out.dedup();
    out
}

impl MackeyDoubleData {
    /// Assemble from realization functions, checking every matrix shape.
    pub fn from_realizations(
        table: Arc<SubgroupTable>,
        ranks: Vec<usize>,
        labels: Vec<Vec<String>>,
        realize_h: impl Fn(&HMor) -> IntMap,
        realize_v: impl Fn(&VMor) -> IntMap,
    ) -> Result<Self, DoubleError> {
        if ranks.len() != table.len() || labels.len() != table.len() {
            return Err(DoubleError::Shape(format!(
                "{} ranks and {} label lists for {} objects",
                ranks.len(),
                labels.len(),
                table.len()
            )));
        }
        let hmors = all_hmors(&table);
        let vmors = all_vmors(&table);
        let mut hreal = Vec::with_capacity(hmors.len());
        for m in &hmors {
            let r = realize_h(m);
            if (r.rows(), r.cols()) != (ranks[m.target().0], ranks[m.source().0]) {
                return Err(DoubleError::Shape(format!(
                    "realization of {}",
                    m.display(&table)
                )));
            }
            hreal.push(r);
        }
        let mut vreal = Vec::with_capacity(vmors.len());
        for m in &vmors {
            let r = realize_v(m);
            if (r.rows(), r.cols()) != (ranks[m.target().0], ranks[m.source().0]) {
                return Err(DoubleError::Shape(format!(
                    "realization of {}",
                    m.display(&table)
                )));
            }
            vreal.push(r);
        }
        let hindex = hmors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let vindex = vmors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut h_from = vec![Vec::new(); table.len()];
        let mut h_between: HashMap<(SubId, SubId), Vec<usize>> = HashMap::new();
        for (i, m) in hmors.iter().enumerate() {
            h_from[m.source().0].push(i);
            h_between
                .entry((m.source(), m.target()))
                .or_default()
                .push(i);
        }
        let mut v_from = vec![Vec::new(); table.len()];
        for (i, m) in vmors.iter().enumerate() {
            v_from[m.source().0].push(i);
        }
        Ok(MackeyDoubleData {
            table,
            ranks,
            labels,
            hmors,
            hreal,
            vmors,
            vreal,
            hindex,
            vindex,
            h_from,
            v_from,
            h_between,
        })
    }

    pub fn table(&self) -> &Arc<SubgroupTable> {
        &self.table
    }

    /// Rank of the object `M_H`.
    pub fn rank(&self, h: SubId) -> usize {
        self.ranks[h.0]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn object_count(&self) -> usize {
        self.ranks.len()
    }

    pub fn hmors(&self) -> &[HMor] {
        &self.hmors
    }

    pub fn vmors(&self) -> &[VMor] {
        &self.vmors
    }

    pub fn morphism_count(&self) -> usize {
        self.hmors.len() + self.vmors.len()
    }

    pub fn hmor_index(&self, m: &HMor) -> usize {
        self.hindex[m]
    }

    pub fn vmor_index(&self, m: &VMor) -> usize {
        self.vindex[m]
    }

    pub fn realize_h(&self, m: &HMor) -> &IntMap {
        &self.hreal[self.hindex[m]]
    }

    pub fn realize_v(&self, m: &VMor) -> &IntMap {
        &self.vreal[self.vindex[m]]
    }

    /// Indices of horizontal morphisms out of `M_a`.
    pub fn h_from(&self, a: SubId) -> &[usize] {
        &self.h_from[a.0]
    }

    /// Indices of vertical morphisms out of `M_a`.
    pub fn v_from(&self, a: SubId) -> &[usize] {
        &self.v_from[a.0]
    }

    /// Indices of horizontal morphisms `M_a -> M_b`.
    pub fn h_between(&self, a: SubId, b: SubId) -> &[usize] {
        self.h_between
            .get(&(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Replace one realization, for fault injection; the shape must stay.
    pub fn set_realize_v(&mut self, m: &VMor, r: IntMap) -> Result<(), DoubleError> {
        let i = self.vindex[m];
        if (r.rows(), r.cols()) != (self.vreal[i].rows(), self.vreal[i].cols()) {
            return Err(DoubleError::Shape(format!(
                "realization of {}",
                m.display(&self.table)
            )));
        }
        self.vreal[i] = r;
        Ok(())
    }

    pub fn set_realize_h(&mut self, m: &HMor, r: IntMap) -> Result<(), DoubleError> {
        let i = self.hindex[m];
        if (r.rows(), r.cols()) != (self.hreal[i].rows(), self.hreal[i].cols()) {
            return Err(DoubleError::Shape(format!(
                "realization of {}",
                m.display(&self.table)
            )));
        }
        self.hreal[i] = r;
        Ok(())
    }

    /// `α = Im(bottom * left) ∩ Im(right * top)` in `Z^{rank L}`.
    pub fn cell_value(&self, b: &CellBoundary) -> Lattice {
        let lower = self.realize_h(&b.bottom) * self.realize_v(&b.left);
        let upper = self.realize_v(&b.right) * self.realize_h(&b.top);
        lattice_intersect(&image_lattice(&lower), &image_lattice(&upper))
            .expect("compatible boundaries share the corner L")
    }

    /// `β ∘0 α = Im((f6 ∘ f5) * f4) ∩ Im(f3 * (f2 ∘ f1))`, evaluated from the
    /// realizations of the six sides rather than of the composite morphisms.
    pub fn cell_compose_h(
        &self,
        beta: &CellBoundary,
        alpha: &CellBoundary,
    ) -> Result<Cell, DoubleError> {
        let boundary = CellBoundary::compose_h(&self.table, beta, alpha)?;
        let f = |m: &HMor| self.realize_h(m);
        let lower = &(f(&beta.bottom) * f(&alpha.bottom)) * self.realize_v(&alpha.left);
        let upper = self.realize_v(&beta.right) * &(f(&beta.top) * f(&alpha.top));
        Ok(Cell {
            boundary,
            value: meet_images(&lower, &upper),
        })
    }

    /// `β ∘1 α = Im(f6 * (f5 • f4)) ∩ Im((f3 • f2) * f1)`, evaluated from the
    /// realizations of the six sides.
    pub fn cell_compose_v(
        &self,
        beta: &CellBoundary,
        alpha: &CellBoundary,
    ) -> Result<Cell, DoubleError> {
        let boundary = CellBoundary::compose_v(&self.table, beta, alpha)?;
        let v = |m: &VMor| self.realize_v(m);
        let lower = self.realize_h(&beta.bottom) * &(v(&beta.left) * v(&alpha.left));
        let upper = &(v(&beta.right) * v(&alpha.right)) * self.realize_h(&alpha.top);
        Ok(Cell {
            boundary,
            value: meet_images(&lower, &upper),
        })
    }
}

fn meet_images(a: &IntMap, b: &IntMap) -> Lattice {
    lattice_intersect(&image_lattice(a), &image_lattice(b)).expect("same codomain")
}

/// A square together with its lattice value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub boundary: CellBoundary,
    pub value: Lattice,
}

/// `Ψ`: realize `t_K^{H,g}` as `c_{g,H} I_K^H` and `r_{K,g}^H` as
/// `c_{g,K} R_K^H`. Refuses a functor that fails any axiom unless
/// `allow_failing` is set.
pub fn psi(m: &MackeyFunctorData, allow_failing: bool) -> Result<MackeyDoubleData, DoubleError> {
    if !allow_failing {
        let report = check_axioms(m);
        if !report.all_passed() {
            let ids: Vec<&str> = report.failing().iter().map(|a| a.id()).collect();
            return Err(DoubleError::AxiomsFail(ids.join(", ")));
        }
    }
    MackeyDoubleData::from_realizations(
        m.table().clone(),
        m.ranks().to_vec(),
        m.all_labels().to_vec(),
        |t| m.conj(t.g(), t.h()) * m.ind(t.k(), t.h()),
        |r| m.conj(r.g(), r.k()) * m.res(r.k(), r.h()),
    )
}
