//! Finite groups stored as full multiplication tables.
//!
//! Every group keeps the identity at index 0. Groups built from permutations
//! remember their permutation representation so that elements can be named
//! and looked up in cycle notation.

mod perm;
mod subgroup;

pub use perm::Perm;
pub use subgroup::{
    all_subgroups, conjugate_subgroup, double_coset_reps, double_cosets, left_transversal,
    resolve_subgroup, SubId, Subgroup, SubgroupTable,
};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Default cap on generated group orders.
pub const DEFAULT_ORDER_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group spec {0:?}: {1}")]
    MalformedSpec(String, String),
    #[error("malformed permutation {0:?}: {1}")]
    MalformedPerm(String, String),
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("group order exceeds the cap of {cap}")]
    OrderCap { cap: usize },
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(String, String),
    #[error("cannot resolve subgroup selector {0:?}: {1}")]
    Selector(String, String),
    #[error("io error reading {0}: {1}")]
    Io(String, String),
}

/// Index of an element in its parent group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub usize);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    spec: String,
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    names: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Build a group from a multiplication table, validating the group axioms.
    /// Row `i`, column `j` holds the index of `i * j`; index 0 must be the identity.
    pub fn from_table(
        spec: impl Into<String>,
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotAGroup(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            mult.extend_from_slice(row);
        }
        if let Some(bad) = mult.iter().find(|&&x| x >= order) {
            return Err(GroupError::NotAGroup(format!("entry {bad} out of range")));
        }
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                row_seen[mult[i * order + j]] = true;
                col_seen[mult[j * order + i]] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return Err(GroupError::NotAGroup(format!(
                    "row or column {i} is not a permutation"
                )));
            }
        }
        for i in 0..order {
            if mult[i] != i || mult[i * order] != i {
                return Err(GroupError::NotAGroup(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mult[a * order + b];
                for c in 0..order {
                    if mult[ab * order + c] != mult[a * order + mult[b * order + c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mult[a * order + b] == 0)
                    .expect("latin square rows contain the identity")
            })
            .collect::<Vec<_>>();
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(GroupError::NotAGroup(format!(
                    "{} names for {order} elements",
                    n.len()
                )))
            }
            None => (0..order)
                .map(|i| {
                    if i == 0 {
                        "e".to_string()
                    } else {
                        format!("g{i}")
                    }
                })
                .collect(),
        };
        Ok(FiniteGroup {
            spec: spec.into(),
            order,
            mult,
            inverse,
            names,
            perms: None,
        })
    }

    /// Close a set of permutation generators. Elements are sorted by their image
    /// tuple, which puts the identity first and makes the table independent of
    /// the generator order.
    pub fn from_generators(
        spec: impl Into<String>,
        generators: &[Perm],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let degree = generators
            .iter()
            .map(Perm::degree)
            .max()
            .unwrap_or(1)
            .max(1);
        let gens: Vec<Perm> = generators.iter().map(|g| g.extended(degree)).collect();
        let identity = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut frontier = vec![identity.clone()];
        seen.insert(identity);
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = g.compose(&p);
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return Err(GroupError::OrderCap { cap });
                    }
                    seen.insert(q.clone());
                    frontier.push(q);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let lookup: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let order = elements.len();
        let mut table = vec![vec![0; order]; order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = lookup[&a.compose(b)];
            }
        }
        let names = elements
            .iter()
            .map(|p| {
                if p.is_identity() {
                    "e".into()
                } else {
                    p.to_string()
                }
            })
            .collect();
        let mut group = FiniteGroup::from_table(spec, table, Some(names))?;
        group.perms = Some(elements);
        Ok(group)
    }

    /// Parse a group spec: a builtin name, `perm:` generators separated by `;`,
    /// or a path to a table file.
    pub fn from_spec(spec: &str, cap: usize) -> Result<Self, GroupError> {
        let trimmed = spec.trim();
        if let Some(gens) = trimmed.strip_prefix("perm:") {
            let perms = gens
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(Perm::parse_cycles)
                .collect::<Result<Vec<_>, _>>()?;
            if perms.is_empty() {
                return Err(GroupError::MalformedSpec(
                    spec.into(),
                    "no generators given".into(),
                ));
            }
            return Self::from_generators(trimmed, &perms, cap);
        }
        if let Some(gens) = builtin_generators(trimmed)? {
            return Self::from_generators(trimmed, &gens, cap);
        }
        let path = Path::new(trimmed);
        if path.is_file() {
            let group = Self::from_table_file(path)?;
            if group.order() > cap {
                return Err(GroupError::OrderCap { cap });
            }
            return Ok(group);
        }
        Err(GroupError::MalformedSpec(
            spec.into(),
            "not a builtin name, a perm: list, or an existing table file".into(),
        ))
    }

    pub fn from_table_file(path: &Path) -> Result<Self, GroupError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Io(display.clone(), e.to_string()))?;
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| GroupError::MalformedSpec(display.clone(), format!("bad token {t:?}")))
        });
        let n = tokens
            .next()
            .ok_or_else(|| GroupError::MalformedSpec(display.clone(), "empty file".into()))??;
        let mut table = vec![vec![0; n]; n];
        for row in table.iter_mut() {
            for cell in row.iter_mut() {
                *cell = tokens.next().ok_or_else(|| {
                    GroupError::MalformedSpec(display.clone(), "table is truncated".into())
                })??;
            }
        }
        if tokens.next().is_some() {
            return Err(GroupError::MalformedSpec(
                display,
                "trailing entries".into(),
            ));
        }
        Self::from_table(display, table, None)
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mult[a.0 * self.order + b.0])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inverse[a.0])
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    /// Number of points moved by the permutation representation, if any.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].degree())
    }

    /// The multiplication table, row-major.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Look up an element by display name or, for permutation groups, by cycle notation.
    pub fn find_element(&self, text: &str) -> Option<Elem> {
        let text = text.trim();
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Some(Elem(i));
        }
        let perms = self.perms.as_ref()?;
        let p = Perm::parse_cycles(text).ok()?;
        if p.degree() > perms[0].degree() {
            return None;
        }
        let p = p.extended(perms[0].degree());
        perms.iter().position(|q| *q == p).map(Elem)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != Elem::IDENTITY {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.spec, self.order)
    }
}

fn builtin_generators(name: &str) -> Result<Option<Vec<Perm>>, GroupError> {
    let bad = |why: &str| GroupError::MalformedSpec(name.into(), why.into());
    let cycle = |pts: &[usize]| Perm::from_cycles(&[pts.to_vec()]);
    match name {
        "Q8" => {
            return Ok(Some(vec![
                Perm::from_cycles(&[vec![1, 2, 5, 6], vec![3, 4, 7, 8]]),
                Perm::from_cycles(&[vec![1, 3, 5, 7], vec![2, 8, 6, 4]]),
            ]))
        }
        "A4" => {
            return Ok(Some(vec![
                cycle(&[1, 2, 3]),
                Perm::from_cycles(&[vec![1, 2], vec![3, 4]]),
            ]))
        }
        _ => {}
    }
    let mut chars = name.chars();
    let family = match chars.next() {
        Some(c @ ('C' | 'S' | 'D')) => c,
        _ => return Ok(None),
    };
    let rest = chars.as_str();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = rest.parse().map_err(|_| bad("bad size"))?;
    if n == 0 {
        return Err(bad("size must be positive"));
    }
    let full: Vec<usize> = (1..=n).collect();
    let gens = match family {
        'C' => vec![cycle(&full)],
        'S' => {
            if n > 4 {
                return Err(bad("symmetric groups are available up to S4"));
            }
            if n == 1 {
                vec![Perm::identity(1)]
            } else {
                vec![cycle(&[1, 2]), cycle(&full)]
            }
        }
        'D' => {
            if n > 6 {
                return Err(bad("dihedral groups are available up to D6"));
            }
            match n {
                1 => vec![cycle(&[1, 2])],
                2 => vec![cycle(&[1, 2]), Perm::from_cycles(&[vec![3, 4]])],
                _ => {
                    let reflection: Vec<Vec<usize>> =
                        (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
                    vec![cycle(&full), Perm::from_cycles(&reflection)]
                }
            }
        }
        _ => unreachable!(),
    };
    Ok(Some(gens))
}
