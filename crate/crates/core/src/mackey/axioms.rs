//! Exhaustive evaluation of the seven Mackey functor axioms as exact matrix
//! identities.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{Elem, FiniteGroup, SubId, SubgroupTable};
use crate::intlat::IntMap;
use crate::report::Witness;

use super::MackeyFunctorData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::M1,
        Axiom::M2,
        Axiom::M3,
        Axiom::M4,
        Axiom::M5,
        Axiom::M6,
        Axiom::M7,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::M1 => "M.1",
            Axiom::M2 => "M.2",
            Axiom::M3 => "M.3",
            Axiom::M4 => "M.4",
            Axiom::M5 => "M.5",
            Axiom::M6 => "M.6",
            Axiom::M7 => "M.7",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::M1 => "I_H^H, R_H^H and c_h (h in H) are identities",
            Axiom::M2 => "R_J^K R_K^H = R_J^H",
            Axiom::M3 => "I_K^H I_J^K = I_J^H",
            Axiom::M4 => "c_g c_h = c_gh",
            Axiom::M5 => "R_{gK}^{gH} c_g = c_g R_K^H",
            Axiom::M6 => "I_{gK}^{gH} c_g = c_g I_K^H",
            Axiom::M7 => "R_J^H I_K^H = sum_x I c_x R over [J\\H/K]",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How double-coset representatives are picked in (M.7).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepChoice {
    /// The minimal element index of each double coset.
    Minimal,
    /// A uniformly random element of each double coset, from a seeded stream.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Witness,
    pub left: IntMap,
    pub right: IntMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomStatus {
    pub axiom: Axiom,
    pub instances: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub statuses: Vec<AxiomStatus>,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self, axiom: Axiom) -> bool {
        self.statuses
            .iter()
            .find(|s| s.axiom == axiom)
            .map(|s| s.passed)
            .unwrap_or(false)
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.statuses
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.axiom)
            .collect()
    }

    pub fn failures_of(&self, axiom: Axiom) -> impl Iterator<Item = &AxiomFailure> {
        self.failures.iter().filter(move |f| f.axiom == axiom)
    }
}

struct Checker {
    counts: [usize; 7],
    failures: Vec<AxiomFailure>,
}

impl Checker {
    fn compare(
        &mut self,
        axiom: Axiom,
        witness: impl FnOnce() -> Witness,
        left: IntMap,
        right: IntMap,
    ) {
        self.counts[axiom as usize] += 1;
        if left != right {
            self.failures.push(AxiomFailure {
                axiom,
                witness: witness(),
                left,
                right,
            });
        }
    }
}

pub fn check_axioms(m: &MackeyFunctorData) -> AxiomReport {
    check_axioms_with(m, RepChoice::Minimal)
}

pub fn check_axioms_with(m: &MackeyFunctorData, reps: RepChoice) -> AxiomReport {
    let t = m.table().clone();
    let group = t.group();
    let mut c = Checker {
        counts: [0; 7],
        failures: Vec::new(),
    };

    for h in t.ids() {
        let id = IntMap::identity(m.rank(h));
        c.compare(
            Axiom::M1,
            || vec![sub_w("I_H^H: H", &t, h)],
            m.ind(h, h).clone(),
            id.clone(),
        );
        c.compare(
            Axiom::M1,
            || vec![sub_w("R_H^H: H", &t, h)],
            m.res(h, h).clone(),
            id.clone(),
        );
        for &x in t.subgroup(h).elements() {
            c.compare(
                Axiom::M1,
                || {
                    vec![
                        sub_w("c_h: H", &t, h),
                        (String::from("h"), group.name(x).to_string()),
                    ]
                },
                m.conj(x, h).clone(),
                id.clone(),
            );
        }
    }

    for (k, h) in t.inclusions() {
        for j in t.ids().filter(|&j| t.le(j, k)) {
            let w = || vec![sub_w("J", &t, j), sub_w("K", &t, k), sub_w("H", &t, h)];
            c.compare(Axiom::M2, w, m.res(j, k) * m.res(k, h), m.res(j, h).clone());
            c.compare(Axiom::M3, w, m.ind(k, h) * m.ind(j, k), m.ind(j, h).clone());
        }
    }

    for g in group.elements() {
        for x in group.elements() {
            for h in t.ids() {
                let w = || {
                    vec![
                        (String::from("g"), group.name(g).to_string()),
                        (String::from("h"), group.name(x).to_string()),
                        (String::from("H"), t.label(h).to_string()),
                    ]
                };
                let left = m.conj(g, t.conj(x, h)) * m.conj(x, h);
                c.compare(Axiom::M4, w, left, m.conj(group.mul(g, x), h).clone());
            }
        }
    }

    for g in group.elements() {
        for (k, h) in t.inclusions() {
            let (gk, gh) = (t.conj(g, k), t.conj(g, h));
            let w = || vec![elem_w("g", group, g), sub_w("K", &t, k), sub_w("H", &t, h)];
            c.compare(
                Axiom::M5,
                w,
                m.res(gk, gh) * m.conj(g, h),
                m.conj(g, k) * m.res(k, h),
            );
            c.compare(
                Axiom::M6,
                w,
                m.ind(gk, gh) * m.conj(g, k),
                m.conj(g, h) * m.ind(k, h),
            );
        }
    }

    let mut rng = match reps {
        RepChoice::Minimal => None,
        RepChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    for h in t.ids() {
        for j in t.ids().filter(|&j| t.le(j, h)) {
            for k in t.ids().filter(|&k| t.le(k, h)) {
                let cosets = t.double_cosets(j, h, k).expect("J, K <= H");
                let chosen: Vec<Elem> = cosets
                    .iter()
                    .map(|coset| match rng.as_mut() {
                        None => coset[0],
                        Some(r) => *coset.choose(r).expect("cosets are nonempty"),
                    })
                    .collect();
                let left = m.res(j, h) * m.ind(k, h);
                let right = mackey_sum(m, j, k, &chosen);
                let names: Vec<&str> = chosen.iter().map(|&x| group.name(x)).collect();
                let w = || {
                    vec![
                        sub_w("J", &t, j),
                        sub_w("K", &t, k),
                        sub_w("H", &t, h),
                        (String::from("reps"), names.join(" ")),
                    ]
                };
                c.compare(Axiom::M7, w, left, right);
            }
        }
    }

    let counts = c.counts;
    let failures = c.failures;
    let statuses = Axiom::ALL
        .iter()
        .map(|&a| AxiomStatus {
            axiom: a,
            instances: counts[a as usize],
            passed: !failures.iter().any(|f| f.axiom == a),
        })
        .collect();
    AxiomReport { statuses, failures }
}

fn sub_w(role: &str, t: &SubgroupTable, s: SubId) -> (String, String) {
    (role.to_string(), t.label(s).to_string())
}

fn elem_w(role: &str, group: &FiniteGroup, g: Elem) -> (String, String) {
    (role.to_string(), group.name(g).to_string())
}

/// `Σ_x I_{J ∩ ^xK}^J c_x R_{J^x ∩ K}^K` over the given representatives.
pub fn mackey_sum(m: &MackeyFunctorData, j: SubId, k: SubId, reps: &[Elem]) -> IntMap {
    let t = m.table();
    let mut acc = IntMap::zeros(m.rank(j), m.rank(k));
    for &x in reps {
        let p = t.meet(t.conj_by_inverse(x, j), k);
        let xp = t.conj(x, p);
        let term = &(m.ind(xp, j) * m.conj(x, p)) * m.res(p, k);
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::resolve_subgroup;
    use crate::mackey::{burnside_functor, trivial_functor};

    fn table(spec: &str) -> Arc<SubgroupTable> {
        Arc::new(SubgroupTable::new(
            FiniteGroup::from_spec(spec, 24).unwrap(),
        ))
    }

    #[test]
    fn trivial_d4_passes() {
        let r = check_axioms(&trivial_functor(table("D4")).unwrap());
        assert!(r.all_passed(), "{:?}", r.failing());
        assert!(r.statuses.iter().all(|s| s.instances > 0));
    }

    #[test]
    fn burnside_s3_passes() {
        let r = check_axioms(&burnside_functor(table("S3")).unwrap());
        assert!(r.all_passed(), "{:?}", r.failing());
    }

    #[test]
    fn mackey_formula_on_trivial_s3() {
        let t = table("S3");
        let m = trivial_functor(t.clone()).unwrap();
        let c2 = resolve_subgroup(&t, "(1 2)").unwrap();
        let reps = t.double_coset_reps(c2, t.whole(), c2).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(
            m.res(c2, t.whole()) * m.ind(c2, t.whole()),
            IntMap::from_rows(1, &[vec![3]])
        );
        assert_eq!(
            mackey_sum(&m, c2, c2, &reps),
            IntMap::from_rows(1, &[vec![3]])
        );
        // the two terms separately are 1 and 2
        assert_eq!(
            mackey_sum(&m, c2, c2, &reps[..1]),
            IntMap::from_rows(1, &[vec![1]])
        );
        assert_eq!(
            mackey_sum(&m, c2, c2, &reps[1..]),
            IntMap::from_rows(1, &[vec![2]])
        );
    }

    #[test]
    fn doubled_induction_is_caught() {
        let t = table("S3");
        let mut m = trivial_functor(t.clone()).unwrap();
        let c2 = resolve_subgroup(&t, "(1 2)").unwrap();
        m.set_ind(c2, t.whole(), IntMap::from_rows(1, &[vec![6]]))
            .unwrap();
        let r = check_axioms(&m);
        assert!(!r.passed(Axiom::M7));
        assert!(!r.passed(Axiom::M3));
        let hit = r
            .failures_of(Axiom::M7)
            .find(|f| {
                f.witness[..3]
                    == [
                        sub_w("J", &t, c2),
                        sub_w("K", &t, c2),
                        sub_w("H", &t, t.whole()),
                    ]
            })
            .expect("witness for J = K = <(1 2)>");
        assert_eq!(hit.left, IntMap::from_rows(1, &[vec![6]]));
        assert_eq!(hit.right, IntMap::from_rows(1, &[vec![3]]));
    }
}
