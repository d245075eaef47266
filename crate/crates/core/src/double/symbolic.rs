use std::fmt;

use crate::group::{Elem, SubId, SubgroupTable};

use super::DoubleError;

/// Horizontal morphism `t_K^{H,g} : M_K -> M_{^gH}`.
///
/// `g` is always the minimal element of the coset `gH`, so two parameter
/// triples name the same morphism iff the structs are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HMor {
    k: SubId,
    h: SubId,
    g: Elem,
    target: SubId,
}

impl HMor {
    pub fn new(t: &SubgroupTable, k: SubId, h: SubId, g: Elem) -> Result<Self, DoubleError> {
        if !t.le(k, h) {
            return Err(DoubleError::NotSubgroup(
                t.label(k).to_string(),
                t.label(h).to_string(),
            ));
        }
        let g = t.coset_min(g, h);
        Ok(HMor {
            k,
            h,
            g,
            target: t.conj(g, h),
        })
    }

    /// `t_K^{K,e}`, the horizontal identity of `M_K`.
    pub fn identity(t: &SubgroupTable, k: SubId) -> Self {
        HMor::new(t, k, k, Elem::IDENTITY).expect("K <= K")
    }

    pub fn k(&self) -> SubId {
        self.k
    }

    pub fn h(&self) -> SubId {
        self.h
    }

    pub fn g(&self) -> Elem {
        self.g
    }

    pub fn source(&self) -> SubId {
        self.k
    }

    pub fn target(&self) -> SubId {
        self.target
    }

    pub fn is_identity(&self) -> bool {
        self.k == self.h && self.g == Elem::IDENTITY
    }

    pub fn display<'a>(&'a self, t: &'a SubgroupTable) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(
                f,
                "t_{{{}}}^{{{},{}}}",
                t.label(self.k),
                t.label(self.h),
                t.group().name(self.g)
            )
        })
    }
}

/// Vertical morphism `r_{K,g}^H : M_H -> M_{^gK}`.
///
/// Parameters are taken modulo `(K, g) ~ (^hK, g h^{-1})` for `h ∈ H`, which
/// fixes source and target; the representative is the least `(K, g)` in the
/// orbit, so `g` is in particular minimal in `gK`. The unit law against the
/// identities `r_{H,h}^H` forces this identification, and the composition
/// formula is well defined only modulo it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VMor {
    h: SubId,
    k: SubId,
    g: Elem,
    target: SubId,
}

impl VMor {
    pub fn new(t: &SubgroupTable, k: SubId, h: SubId, g: Elem) -> Result<Self, DoubleError> {
        if !t.le(k, h) {
            return Err(DoubleError::NotSubgroup(
                t.label(k).to_string(),
                t.label(h).to_string(),
            ));
        }
        let group = t.group();
        let (k, g) = t
            .subgroup(h)
            .elements()
            .iter()
            .map(|&x| {
                let kx = t.conj(x, k);
                (kx, t.coset_min(group.mul(g, group.inv(x)), kx))
            })
            .min()
            .expect("subgroups are nonempty");
        Ok(VMor {
            h,
            k,
            g,
            target: t.conj(g, k),
        })
    }

    /// `r_{H,e}^H`, the vertical identity of `M_H`.
    pub fn identity(t: &SubgroupTable, h: SubId) -> Self {
        VMor::new(t, h, h, Elem::IDENTITY).expect("H <= H")
    }

    pub fn k(&self) -> SubId {
        self.k
    }

    pub fn h(&self) -> SubId {
        self.h
    }

    pub fn g(&self) -> Elem {
        self.g
    }

    pub fn source(&self) -> SubId {
        self.h
    }

    pub fn target(&self) -> SubId {
        self.target
    }

    pub fn is_identity(&self) -> bool {
        self.k == self.h && self.g == Elem::IDENTITY
    }

    pub fn display<'a>(&'a self, t: &'a SubgroupTable) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(
                f,
                "r_{{{},{}}}^{{{}}}",
                t.label(self.k),
                t.group().name(self.g),
                t.label(self.h)
            )
        })
    }
}

struct Shown<F>(F);

impl<F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result> fmt::Display for Shown<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}

/// `t_{^{g1}H}^{P,g2} ∘ t_K^{H,g1} = t_K^{g1^{-1} P g1, g2 g1}`
pub fn compose_h(t: &SubgroupTable, t2: &HMor, t1: &HMor) -> Result<HMor, DoubleError> {
    if t2.source() != t1.target() {
        return Err(DoubleError::NotComposable(format!(
            "{} after {}",
            t2.display(t),
            t1.display(t)
        )));
    }
    let (g1, g2) = (t1.g, t2.g);
    let h = t.conj_by_inverse(g1, t2.h);
    HMor::new(t, t1.k, h, t.group().mul(g2, g1))
}

/// `r_{J,g2}^{^{g1}K} • r_{K,g1}^H = r_{g1^{-1} J g1, g2 g1}^H`
pub fn compose_v(t: &SubgroupTable, r2: &VMor, r1: &VMor) -> Result<VMor, DoubleError> {
    if r2.source() != r1.target() {
        return Err(DoubleError::NotComposable(format!(
            "{} after {}",
            r2.display(t),
            r1.display(t)
        )));
    }
    let (g1, g2) = (r1.g, r2.g);
    let j = t.conj_by_inverse(g1, r2.k);
    VMor::new(t, j, r1.h, t.group().mul(g2, g1))
}

/// The four sides of a square:
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom-> D
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellBoundary {
    pub top: HMor,
    pub left: VMor,
    pub right: VMor,
    pub bottom: HMor,
}

impl CellBoundary {
    pub fn new(top: HMor, left: VMor, right: VMor, bottom: HMor) -> Result<Self, DoubleError> {
        let b = CellBoundary {
            top,
            left,
            right,
            bottom,
        };
        if let Some(why) = b.incompatibility() {
            return Err(DoubleError::Incompatible(why.to_string()));
        }
        Ok(b)
    }

    fn incompatibility(&self) -> Option<&'static str> {
        if self.top.source() != self.left.source() {
            Some("top and left start at different objects")
        } else if self.top.target() != self.right.source() {
            Some("right does not start at the end of top")
        } else if self.left.target() != self.bottom.source() {
            Some("bottom does not start at the end of left")
        } else if self.right.target() != self.bottom.target() {
            Some("right and bottom end at different objects")
        } else {
            None
        }
    }

    /// `α_{K,H,J,P,Q}^{g1,g2,g3,g4}` from its parameters. `L = ^{g2}J` must
    /// equal `^{g4}Q`.
    #[allow(clippy::too_many_arguments)]
    pub fn alpha(
        t: &SubgroupTable,
        (k, h, j, p, q): (SubId, SubId, SubId, SubId, SubId),
        (g1, g2, g3, g4): (Elem, Elem, Elem, Elem),
    ) -> Result<Self, DoubleError> {
        let top = HMor::new(t, k, h, g1)?;
        let right = VMor::new(t, j, top.target(), g2)?;
        let left = VMor::new(t, p, k, g3)?;
        let bottom = HMor::new(t, left.target(), q, g4)?;
        CellBoundary::new(top, left, right, bottom)
    }

    /// The square of an `(M.7)` summand: top `t_K^{H,e}`, left `r_{P,x}^K`,
    /// right `r_{J,e}^H`, bottom `t_{^xP}^{J,e}`, with `P = J^x ∩ K`.
    pub fn mackey_summand(
        t: &SubgroupTable,
        j: SubId,
        k: SubId,
        h: SubId,
        x: Elem,
    ) -> Result<Self, DoubleError> {
        let p = t.meet(t.conj_by_inverse(x, j), k);
        let e = Elem::IDENTITY;
        CellBoundary::alpha(t, (k, h, j, p, j), (e, e, x, e))
    }

    /// `id_r`: both horizontal sides are identities.
    pub fn horizontal_identity(t: &SubgroupTable, r: VMor) -> Self {
        CellBoundary {
            top: HMor::identity(t, r.source()),
            left: r,
            right: r,
            bottom: HMor::identity(t, r.target()),
        }
    }

    /// `e_t`: both vertical sides are identities.
    pub fn vertical_identity(t: &SubgroupTable, h: HMor) -> Self {
        CellBoundary {
            top: h,
            left: VMor::identity(t, h.source()),
            right: VMor::identity(t, h.target()),
            bottom: h,
        }
    }

    /// `□_{M_K}`
    pub fn square(t: &SubgroupTable, k: SubId) -> Self {
        CellBoundary::vertical_identity(t, HMor::identity(t, k))
    }

    /// Boundary of `beta ∘0 alpha`; `alpha.right` must equal `beta.left`.
    pub fn compose_h(t: &SubgroupTable, beta: &Self, alpha: &Self) -> Result<Self, DoubleError> {
        if alpha.right != beta.left {
            return Err(DoubleError::NotComposable(
                "cells do not share a vertical side".into(),
            ));
        }
        CellBoundary::new(
            compose_h(t, &beta.top, &alpha.top)?,
            alpha.left,
            beta.right,
            compose_h(t, &beta.bottom, &alpha.bottom)?,
        )
    }

    /// Boundary of `beta ∘1 alpha`; `alpha.bottom` must equal `beta.top`.
    pub fn compose_v(t: &SubgroupTable, beta: &Self, alpha: &Self) -> Result<Self, DoubleError> {
        if alpha.bottom != beta.top {
            return Err(DoubleError::NotComposable(
                "cells do not share a horizontal side".into(),
            ));
        }
        CellBoundary::new(
            alpha.top,
            compose_v(t, &beta.left, &alpha.left)?,
            compose_v(t, &beta.right, &alpha.right)?,
            beta.bottom,
        )
    }

    pub fn display<'a>(&'a self, t: &'a SubgroupTable) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(
                f,
                "top {} left {} right {} bottom {}",
                self.top.display(t),
                self.left.display(t),
                self.right.display(t),
                self.bottom.display(t)
            )
        })
    }
}
