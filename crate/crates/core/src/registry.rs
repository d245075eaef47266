//! Checks selectable by name. Every check turns a [`CheckContext`] into report
//! sections; front ends only look names up and render the result.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::double::{
    check_containment, check_double_laws, check_functoriality, check_interchange, check_m6,
    check_m7, psi, Budget, DoubleError, MackeyDoubleData,
};
use crate::equivalence::{roundtrip_double, roundtrip_functor, RoundTripError};
use crate::group::SubId;
use crate::mackey::{check_axioms, Axiom, AxiomReport, MackeyFunctorData};
use crate::report::{pair, Instance, Section};

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    RoundTrip(#[from] RoundTripError),
    #[error("unknown check {0:?}; known: {1}")]
    Unknown(String, String),
}

/// Inputs shared by all checks. The double category is built on first use.
pub struct CheckContext {
    functor: MackeyFunctorData,
    budget: Budget,
    /// build the double category even if the functor fails an axiom
    allow_failing: bool,
    /// `(J, K, H)` restricting the decomposition check
    triple: Option<(SubId, SubId, SubId)>,
    double: OnceLock<Result<MackeyDoubleData, DoubleError>>,
}

impl CheckContext {
    pub fn new(functor: MackeyFunctorData) -> Self {
        CheckContext {
            functor,
            budget: Budget::default(),
            allow_failing: false,
            triple: None,
            double: OnceLock::new(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn allow_failing(mut self, allow: bool) -> Self {
        self.allow_failing = allow;
        self.double = OnceLock::new();
        self
    }

    pub fn with_triple(mut self, triple: Option<(SubId, SubId, SubId)>) -> Self {
        self.triple = triple;
        self
    }

    pub fn functor(&self) -> &MackeyFunctorData {
        &self.functor
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn triple(&self) -> Option<(SubId, SubId, SubId)> {
        self.triple
    }

    pub fn double(&self) -> Result<&MackeyDoubleData, DoubleError> {
        self.double
            .get_or_init(|| psi(&self.functor, self.allow_failing))
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError>;
}

/// One section per axiom, failures listed with their witness and both sides.
pub fn axiom_sections(report: &AxiomReport) -> Vec<Section> {
    report
        .statuses
        .iter()
        .map(|status| {
            let mut s = Section::new(status.axiom.id());
            s.note("statement", status.axiom.statement());
            s.evaluated = status.instances;
            for f in report.failures_of(status.axiom) {
                s.failed += 1;
                s.instances.push(Instance::new(
                    f.witness.clone(),
                    false,
                    vec![pair("left", &f.left), pair("right", &f.right)],
                ));
            }
            s
        })
        .collect()
}

struct AxiomsCheck;

impl Check for AxiomsCheck {
    fn name(&self) -> &'static str {
        "axioms"
    }

    fn description(&self) -> &'static str {
        "the seven Mackey functor axioms, every instance"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        Ok(axiom_sections(&check_axioms(ctx.functor())))
    }
}

struct LawsCheck;

impl Check for LawsCheck {
    fn name(&self) -> &'static str {
        "laws"
    }

    fn description(&self) -> &'static str {
        "double category units, associativity, identities and realization functoriality"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        let d = ctx.double()?;
        let mut out = check_double_laws(d, ctx.budget());
        out.extend(check_functoriality(d));
        Ok(out)
    }
}

struct InterchangeCheck;

impl Check for InterchangeCheck {
    fn name(&self) -> &'static str {
        "interchange"
    }

    fn description(&self) -> &'static str {
        "interchange law on 2x2 grids of cells"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        Ok(vec![check_interchange(ctx.double()?, ctx.budget())])
    }
}

struct ContainmentCheck;

impl Check for ContainmentCheck {
    fn name(&self) -> &'static str {
        "containment"
    }

    fn description(&self) -> &'static str {
        "cell of each Mackey summand contained in the image of R I"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        Ok(vec![check_containment(ctx.double()?)])
    }
}

struct M6Check;

impl Check for M6Check {
    fn name(&self) -> &'static str {
        "m6"
    }

    fn description(&self) -> &'static str {
        "conjugation compatibility of induction in the double category"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        Ok(vec![check_m6(ctx.double()?)])
    }
}

struct M7Check;

impl Check for M7Check {
    fn name(&self) -> &'static str {
        "m7"
    }

    fn description(&self) -> &'static str {
        "decomposition of the R I cell into Mackey summand cells"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        Ok(vec![check_m7(ctx.double()?, ctx.triple())?])
    }
}

struct RoundTripCheck;

impl Check for RoundTripCheck {
    fn name(&self) -> &'static str {
        "roundtrip"
    }

    fn description(&self) -> &'static str {
        "phi(psi(M)) = M and psi(phi(D)) = D on every component"
    }

    fn run(&self, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        let first = roundtrip_functor(ctx.functor())?;
        let second = roundtrip_double(ctx.double()?)?;
        Ok(vec![first.to_section(), second.to_section()])
    }
}

/// Name-keyed set of checks.
pub struct CheckRegistry {
    checks: BTreeMap<&'static str, Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut r = CheckRegistry {
            checks: BTreeMap::new(),
        };
        r.register(Box::new(AxiomsCheck));
        r.register(Box::new(LawsCheck));
        r.register(Box::new(InterchangeCheck));
        r.register(Box::new(ContainmentCheck));
        r.register(Box::new(M6Check));
        r.register(Box::new(M7Check));
        r.register(Box::new(RoundTripCheck));
        r
    }
}

impl CheckRegistry {
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(|c| &**c)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.keys().copied()
    }

    pub fn run(&self, name: &str, ctx: &CheckContext) -> Result<Vec<Section>, CheckError> {
        let check = self.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.names().collect();
            CheckError::Unknown(name.to_string(), known.join(", "))
        })?;
        check.run(ctx)
    }
}

/// All axioms in a section list, for callers that need the verdict set.
pub fn failing_axioms(sections: &[Section]) -> Vec<Axiom> {
    Axiom::ALL
        .into_iter()
        .filter(|a| sections.iter().any(|s| s.name == a.id() && !s.passed()))
        .collect()
}
