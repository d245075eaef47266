//! The two translations between Mackey functors and Mackey double categories,
//! and exact round-trip comparison. Equality is checked on objects only:
//! ranks, labels and every structure matrix.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::double::{psi, DoubleError, HMor, MackeyDoubleData, VMor};
use crate::group::Elem;
use crate::mackey::{FunctorError, FunctorParts, MackeyFunctorData};
use crate::report::{pair, Instance, Section};

/// `Φ`: `I_K^H = t_K^{H,1}`, `R_K^H = r_{K,1}^H`, `c_{g,H} = t_H^{H,g}`.
pub fn phi(d: &MackeyDoubleData) -> Result<MackeyFunctorData, FunctorError> {
    let t = d.table();
    let e = Elem::IDENTITY;
    let mut parts = FunctorParts {
        ranks: d.ranks().to_vec(),
        labels: d.labels().to_vec(),
        ind: BTreeMap::new(),
        res: BTreeMap::new(),
        conj: BTreeMap::new(),
    };
    for (k, h) in t.inclusions() {
        let up = HMor::new(t, k, h, e).expect("K <= H");
        let down = VMor::new(t, k, h, e).expect("K <= H");
        parts.ind.insert((k, h), d.realize_h(&up).clone());
        parts.res.insert((k, h), d.realize_v(&down).clone());
    }
    for g in t.group().elements() {
        for h in t.ids() {
            let c = HMor::new(t, h, h, g).expect("H <= H");
            parts.conj.insert((g, h), d.realize_h(&c).clone());
        }
    }
    MackeyFunctorData::new(t.clone(), parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    FunctorFirst,
    DoubleFirst,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::FunctorFirst => "functor-first",
            Direction::DoubleFirst => "double-first",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub component: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub direction: Direction,
    /// `mismatches.is_empty()`
    pub equal: bool,
    /// number of components compared
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl RoundTripReport {
    fn new(direction: Direction) -> Self {
        RoundTripReport {
            direction,
            equal: true,
            compared: 0,
            mismatches: Vec::new(),
        }
    }

    fn compare<T: PartialEq + std::fmt::Debug>(
        &mut self,
        component: String,
        expected: &T,
        actual: &T,
    ) {
        self.compared += 1;
        if expected != actual {
            self.mismatches.push(Mismatch {
                component,
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
            self.equal = false;
        }
    }

    pub fn to_section(&self) -> Section {
        let mut s = Section::new(format!(
            "roundtrip_{}",
            self.direction.name().replace('-', "_")
        ));
        s.evaluated = self.compared;
        s.failed = self.mismatches.len();
        s.instances = self
            .mismatches
            .iter()
            .map(|m| {
                Instance::new(
                    vec![pair("component", &m.component)],
                    false,
                    vec![pair("expected", &m.expected), pair("actual", &m.actual)],
                )
            })
            .collect();
        s
    }
}

/// Compare two functors on the same subgroup table field by field.
pub fn compare_functors(
    direction: Direction,
    expected: &MackeyFunctorData,
    actual: &MackeyFunctorData,
) -> RoundTripReport {
    let t = expected.table();
    let mut r = RoundTripReport::new(direction);
    r.compare("ranks".into(), &expected.ranks(), &actual.ranks());
    r.compare(
        "basis_labels".into(),
        &expected.all_labels(),
        &actual.all_labels(),
    );
    if expected.ranks() != actual.ranks() {
        return r;
    }
    for (k, h) in t.inclusions() {
        let name = format!("{} <= {}", t.label(k), t.label(h));
        r.compare(
            format!("ind {name}"),
            &expected.ind(k, h).to_string(),
            &actual.ind(k, h).to_string(),
        );
        r.compare(
            format!("res {name}"),
            &expected.res(k, h).to_string(),
            &actual.res(k, h).to_string(),
        );
    }
    for g in t.group().elements() {
        for h in t.ids() {
            r.compare(
                format!("conj {} on {}", t.group().name(g), t.label(h)),
                &expected.conj(g, h).to_string(),
                &actual.conj(g, h).to_string(),
            );
        }
    }
    r
}

/// Compare two double categories on the same subgroup table: object ranks
/// and the realization of every canonical morphism.
pub fn compare_doubles(
    direction: Direction,
    expected: &MackeyDoubleData,
    actual: &MackeyDoubleData,
) -> RoundTripReport {
    let t = expected.table();
    let mut r = RoundTripReport::new(direction);
    r.compare("object ranks".into(), &expected.ranks(), &actual.ranks());
    if expected.ranks() != actual.ranks() {
        return r;
    }
    for m in expected.hmors() {
        r.compare(
            m.display(t).to_string(),
            &expected.realize_h(m).to_string(),
            &actual.realize_h(m).to_string(),
        );
    }
    for m in expected.vmors() {
        r.compare(
            m.display(t).to_string(),
            &expected.realize_v(m).to_string(),
            &actual.realize_v(m).to_string(),
        );
    }
    r
}

#[derive(Debug, thiserror::Error)]
pub enum RoundTripError {
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Double(#[from] DoubleError),
}

/// `Φ(Ψ(M))` against `M`.
pub fn roundtrip_functor(m: &MackeyFunctorData) -> Result<RoundTripReport, RoundTripError> {
    let back = phi(&psi(m, true)?)?;
    Ok(compare_functors(Direction::FunctorFirst, m, &back))
}

/// `Ψ(Φ(D))` against `D`.
pub fn roundtrip_double(d: &MackeyDoubleData) -> Result<RoundTripReport, RoundTripError> {
    let back = psi(&phi(d)?, true)?;
    Ok(compare_doubles(Direction::DoubleFirst, d, &back))
}
