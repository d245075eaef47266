//! Concrete Mackey functors. Each builder is a [`FunctorBuilder`] so that the
//! registry can pick one by name at run time.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::group::{resolve_subgroup, Elem, FiniteGroup, SubId, SubgroupTable};
use crate::intlat::IntMap;

use super::{FunctorError, FunctorParts, MackeyFunctorData};

/// Options a builder may consult.
#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    /// G-set for the fixed-point functor: `natural`, `regular` or `cosets:<selector>`.
    pub gset: Option<String>,
}

pub trait FunctorBuilder: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn build(
        &self,
        table: Arc<SubgroupTable>,
        options: &BuildOptions,
    ) -> Result<MackeyFunctorData, FunctorError>;
}

/// `M(H) = Z` for all `H`: restriction and conjugation are the identity and
/// induction from `K` to `H` is multiplication by `[H : K]`.
pub struct TrivialBuilder;

impl FunctorBuilder for TrivialBuilder {
    fn name(&self) -> &'static str {
        "trivial"
    }

    fn description(&self) -> &'static str {
        "rank one everywhere, induction multiplies by the index"
    }

    fn build(
        &self,
        table: Arc<SubgroupTable>,
        _: &BuildOptions,
    ) -> Result<MackeyFunctorData, FunctorError> {
        trivial_functor(table)
    }
}

pub fn trivial_functor(table: Arc<SubgroupTable>) -> Result<MackeyFunctorData, FunctorError> {
    let mut parts = FunctorParts {
        ranks: vec![1; table.len()],
        labels: table
            .ids()
            .map(|h| vec![format!("[{}/{}]", table.label(h), table.label(h))])
            .collect(),
        ..Default::default()
    };
    for (k, h) in table.inclusions() {
        let index = table.index_of(k, h) as i64;
        parts
            .ind
            .insert((k, h), IntMap::from_rows(1, &[vec![index]]));
        parts.res.insert((k, h), IntMap::identity(1));
    }
    for g in table.group().elements() {
        for h in table.ids() {
            parts.conj.insert((g, h), IntMap::identity(1));
        }
    }
    MackeyFunctorData::new(table, parts)
}

/// The Burnside functor: `M(H)` is free on the transitive `H`-sets `[H/L]`,
/// one for each `H`-conjugacy class of subgroups `L ≤ H`.
pub struct BurnsideBuilder;

impl FunctorBuilder for BurnsideBuilder {
    fn name(&self) -> &'static str {
        "burnside"
    }

    fn description(&self) -> &'static str {
        "free on transitive H-sets [H/L]; restriction by double cosets"
    }

    fn build(
        &self,
        table: Arc<SubgroupTable>,
        _: &BuildOptions,
    ) -> Result<MackeyFunctorData, FunctorError> {
        burnside_functor(table)
    }
}

pub fn burnside_functor(table: Arc<SubgroupTable>) -> Result<MackeyFunctorData, FunctorError> {
    let t = &*table;
    // bases[h] = class representatives of subgroups of h, ascending by id
    let bases: Vec<Vec<SubId>> = t
        .ids()
        .map(|h| {
            let mut reps: Vec<SubId> = t
                .ids()
                .filter(|&l| t.le(l, h))
                .map(|l| t.class_rep_in(l, h))
                .collect();
            reps.sort();
            reps.dedup();
            reps
        })
        .collect();
    let position = |h: SubId, l: SubId| -> usize {
        bases[h.0]
            .binary_search(&l)
            .expect("class representative is a basis element")
    };
    let mut parts = FunctorParts {
        ranks: bases.iter().map(Vec::len).collect(),
        labels: t
            .ids()
            .map(|h| {
                bases[h.0]
                    .iter()
                    .map(|&l| format!("[{}/{}]", t.label(h), t.label(l)))
                    .collect()
            })
            .collect(),
        ..Default::default()
    };
    for (k, h) in t.inclusions() {
        let mut ind = IntMap::zeros(bases[h.0].len(), bases[k.0].len());
        for (col, &l) in bases[k.0].iter().enumerate() {
            ind.set(position(h, t.class_rep_in(l, h)), col, BigInt::one());
        }
        let mut res = IntMap::zeros(bases[k.0].len(), bases[h.0].len());
        for (col, &l) in bases[h.0].iter().enumerate() {
            for x in t.double_coset_reps(k, h, l)? {
                let stab = t.meet(k, t.conj(x, l));
                res.add_to(position(k, t.class_rep_in(stab, k)), col, &BigInt::one());
            }
        }
        parts.ind.insert((k, h), ind);
        parts.res.insert((k, h), res);
    }
    for g in t.group().elements() {
        for h in t.ids() {
            let gh = t.conj(g, h);
            let mut c = IntMap::zeros(bases[gh.0].len(), bases[h.0].len());
            for (col, &l) in bases[h.0].iter().enumerate() {
                c.set(
                    position(gh, t.class_rep_in(t.conj(g, l), gh)),
                    col,
                    BigInt::one(),
                );
            }
            parts.conj.insert((g, h), c);
        }
    }
    MackeyFunctorData::new(table, parts)
}

/// A finite left `G`-set on the points `0..points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    points: usize,
    /// `action[g][p] = g · p`
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self, FunctorError> {
        let bad = |why: String| FunctorError::InvalidGSet(why);
        if action.len() != group.order() {
            return Err(bad(format!(
                "{} rows for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let points = action[0].len();
        for (g, row) in action.iter().enumerate() {
            if row.len() != points {
                return Err(bad(format!("row {g} has the wrong length")));
            }
            let mut seen = vec![false; points];
            for &p in row {
                if p >= points || std::mem::replace(&mut seen[p], true) {
                    return Err(bad(format!("row {g} is not a permutation")));
                }
            }
        }
        if action[0].iter().enumerate().any(|(i, &p)| i != p) {
            return Err(bad("the identity must fix every point".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for p in 0..points {
                    if action[g.0][action[h.0][p]] != action[gh.0][p] {
                        return Err(bad(format!(
                            "g·(h·p) != (gh)·p at g={}, h={}, p={p}",
                            g.0, h.0
                        )));
                    }
                }
            }
        }
        Ok(GSet { points, action })
    }

    /// The defining permutation action of a permutation group.
    pub fn natural(group: &FiniteGroup) -> Result<Self, FunctorError> {
        let perms = group.permutations().ok_or_else(|| {
            FunctorError::InvalidGSet("group has no permutation representation".into())
        })?;
        Self::new(group, perms.iter().map(|p| p.images().to_vec()).collect())
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> Result<Self, FunctorError> {
        let action = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x).0).collect())
            .collect();
        Self::new(group, action)
    }

    /// `G` acting on the left cosets `G/H`.
    pub fn cosets(table: &SubgroupTable, h: SubId) -> Result<Self, FunctorError> {
        let group = table.group();
        let reps = table.left_transversal(table.whole(), h)?;
        let action = group
            .elements()
            .map(|g| {
                reps.iter()
                    .map(|&x| {
                        let m = table.coset_min(group.mul(g, x), h);
                        reps.iter()
                            .position(|&r| r == m)
                            .expect("cosets are closed")
                    })
                    .collect()
            })
            .collect();
        Self::new(group, action)
    }

    /// Parse `natural`, `regular` or `cosets:<selector>`.
    pub fn from_spec(table: &SubgroupTable, spec: &str) -> Result<Self, FunctorError> {
        match spec.trim() {
            "natural" => Self::natural(table.group()),
            "regular" => Self::regular(table.group()),
            s => match s.strip_prefix("cosets:") {
                Some(sel) => Self::cosets(table, resolve_subgroup(table, sel)?),
                None => Err(FunctorError::InvalidGSet(format!("unknown G-set {s:?}"))),
            },
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: Elem, p: usize) -> usize {
        self.action[g.0][p]
    }

    /// Orbits of `H`, each sorted, ordered by their smallest point.
    pub fn orbits(&self, table: &SubgroupTable, h: SubId) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for p in 0..self.points {
            if seen[p] {
                continue;
            }
            let mut orbit: Vec<usize> = table
                .subgroup(h)
                .elements()
                .iter()
                .map(|&x| self.act(x, p))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// The fixed-point functor of a permutation module: `M(H)` is spanned by the
/// `H`-orbit sums in `ZX`, restriction is inclusion of fixed points and
/// induction is the transfer `Σ_{h ∈ H/K} h·v`.
pub struct FixedPointBuilder;

impl FunctorBuilder for FixedPointBuilder {
    fn name(&self) -> &'static str {
        "fixedpoint"
    }

    fn description(&self) -> &'static str {
        "H-fixed vectors of a permutation module ZX (default X: natural action)"
    }

    fn build(
        &self,
        table: Arc<SubgroupTable>,
        options: &BuildOptions,
    ) -> Result<MackeyFunctorData, FunctorError> {
        let spec = options.gset.as_deref().unwrap_or("natural");
        let gset = GSet::from_spec(&table, spec)?;
        fixed_point_functor(table, &gset)
    }
}

pub fn fixed_point_functor(
    table: Arc<SubgroupTable>,
    x: &GSet,
) -> Result<MackeyFunctorData, FunctorError> {
    let t = &*table;
    let orbits: Vec<Vec<Vec<usize>>> = t.ids().map(|h| x.orbits(t, h)).collect();
    // orbit_of[h][p] = index of the H-orbit containing p
    let orbit_of: Vec<Vec<usize>> = orbits
        .iter()
        .map(|os| {
            let mut v = vec![0; x.points()];
            for (i, o) in os.iter().enumerate() {
                for &p in o {
                    v[p] = i;
                }
            }
            v
        })
        .collect();
    let mut parts = FunctorParts {
        ranks: orbits.iter().map(Vec::len).collect(),
        labels: orbits
            .iter()
            .map(|os| {
                os.iter()
                    .map(|o| {
                        let pts: Vec<String> = o.iter().map(|p| (p + 1).to_string()).collect();
                        format!("{{{}}}", pts.join(","))
                    })
                    .collect()
            })
            .collect(),
        ..Default::default()
    };
    for (k, h) in t.inclusions() {
        let (ok, oh) = (&orbits[k.0], &orbits[h.0]);
        let mut res = IntMap::zeros(ok.len(), oh.len());
        for (col, o) in oh.iter().enumerate() {
            for &p in o {
                res.set(orbit_of[k.0][p], col, BigInt::one());
            }
        }
        let transversal = t.left_transversal(h, k)?;
        let mut ind = IntMap::zeros(oh.len(), ok.len());
        for (col, o) in ok.iter().enumerate() {
            let mut v = vec![BigInt::zero(); x.points()];
            for &r in &transversal {
                for &p in o {
                    v[x.act(r, p)] += 1;
                }
            }
            for (row, target) in oh.iter().enumerate() {
                let coeff = &v[target[0]];
                if target.iter().any(|&q| &v[q] != coeff) {
                    return Err(FunctorError::InvalidGSet(
                        "transfer is not H-invariant".into(),
                    ));
                }
                ind.set(row, col, coeff.clone());
            }
        }
        parts.ind.insert((k, h), ind);
        parts.res.insert((k, h), res);
    }
    for g in t.group().elements() {
        for h in t.ids() {
            let gh = t.conj(g, h);
            let mut c = IntMap::zeros(orbits[gh.0].len(), orbits[h.0].len());
            for (col, o) in orbits[h.0].iter().enumerate() {
                c.set(orbit_of[gh.0][x.act(g, o[0])], col, BigInt::one());
            }
            parts.conj.insert((g, h), c);
        }
    }
    MackeyFunctorData::new(table, parts)
}

/// Name-keyed set of functor builders.
pub struct BuilderRegistry {
    builders: BTreeMap<&'static str, Box<dyn FunctorBuilder>>,
}

impl Default for BuilderRegistry {
    fn default() -> Self {
        let mut r = BuilderRegistry {
            builders: BTreeMap::new(),
        };
        r.register(Box::new(TrivialBuilder));
        r.register(Box::new(BurnsideBuilder));
        r.register(Box::new(FixedPointBuilder));
        r
    }
}

impl BuilderRegistry {
    pub fn register(&mut self, builder: Box<dyn FunctorBuilder>) {
        self.builders.insert(builder.name(), builder);
    }

    pub fn get(&self, name: &str) -> Option<&dyn FunctorBuilder> {
        self.builders.get(name).map(|b| &**b)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.builders.keys().copied()
    }

    pub fn build(
        &self,
        name: &str,
        table: Arc<SubgroupTable>,
        options: &BuildOptions,
    ) -> Result<MackeyFunctorData, FunctorError> {
        let builder = self.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.names().collect();
            FunctorError::UnknownBuilder(name.to_string(), known.join(", "))
        })?;
        builder.build(table, options)
    }
}
