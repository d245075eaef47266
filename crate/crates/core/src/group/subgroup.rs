use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError};

/// A subgroup as the sorted list of its element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    /// Subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[Elem]) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        let mut elements = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in gens {
                let y = group.mul(x, s);
                if !member[y.0] {
                    member[y.0] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort();
        Subgroup { elements }
    }

    /// Wrap a sorted element list after checking that it is a subgroup.
    pub fn from_elements(group: &FiniteGroup, mut elements: Vec<Elem>) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        let sub = Subgroup { elements };
        let shown = format!("{:?}", sub.elements.iter().map(|e| e.0).collect::<Vec<_>>());
        if sub.elements.iter().any(|e| e.0 >= group.order()) || !sub.is_closed_in(group) {
            return Err(GroupError::NotSubgroup(shown, group.spec().to_string()));
        }
        Ok(sub)
    }

    fn is_closed_in(&self, group: &FiniteGroup) -> bool {
        self.contains(Elem::IDENTITY)
            && self.elements.iter().all(|&a| {
                self.contains(group.inv(a))
                    && self
                        .elements
                        .iter()
                        .all(|&b| self.contains(group.mul(a, b)))
            })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    fn sort_key(&self) -> (usize, &[Elem]) {
        (self.elements.len(), &self.elements)
    }
}

/// Every subgroup of `group`, each exactly once, sorted by (order, element list).
///
/// Built by cyclic extension: start from the cyclic subgroups and keep joining
/// one more element until nothing new appears.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut queue: Vec<Subgroup> = Vec::new();
    for g in group.elements() {
        let s = Subgroup::generated(group, &[g]);
        if found.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(s) = queue.pop() {
        for g in group.elements() {
            if s.contains(g) {
                continue;
            }
            let mut gens = s.elements.clone();
            gens.push(g);
            let t = Subgroup::generated(group, &gens);
            if found.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// `^g H = g H g^-1`
pub fn conjugate_subgroup(group: &FiniteGroup, g: Elem, h: &Subgroup) -> Subgroup {
    let mut elements: Vec<Elem> = h.elements.iter().map(|&x| group.conj(g, x)).collect();
    elements.sort();
    Subgroup { elements }
}

fn require_le(group: &FiniteGroup, small: &Subgroup, big: &Subgroup) -> Result<(), GroupError> {
    if small.is_subgroup_of(big) {
        Ok(())
    } else {
        let show = |s: &Subgroup| {
            let names: Vec<&str> = s.elements.iter().map(|&e| group.name(e)).collect();
            format!("{{{}}}", names.join(", "))
        };
        Err(GroupError::NotSubgroup(show(small), show(big)))
    }
}

/// The double cosets `J x K` partitioning `H`, ordered by their minimal element.
pub fn double_cosets(
    group: &FiniteGroup,
    j: &Subgroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<Vec<Elem>>, GroupError> {
    require_le(group, j, h)?;
    require_le(group, k, h)?;
    let mut covered = vec![false; group.order()];
    let mut out = Vec::new();
    for &x in h.elements() {
        if covered[x.0] {
            continue;
        }
        let mut coset = BTreeSet::new();
        for &a in j.elements() {
            let ax = group.mul(a, x);
            for &b in k.elements() {
                coset.insert(group.mul(ax, b));
            }
        }
        for e in &coset {
            covered[e.0] = true;
        }
        out.push(coset.into_iter().collect());
    }
    Ok(out)
}

/// Minimal-index representatives of the double cosets `J\H/K`, ascending.
pub fn double_coset_reps(
    group: &FiniteGroup,
    j: &Subgroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<Elem>, GroupError> {
    Ok(double_cosets(group, j, h, k)?
        .into_iter()
        .map(|c| c[0])
        .collect())
}

/// Minimal-index representatives of the left cosets `hK` in `H`.
pub fn left_transversal(
    group: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<Elem>, GroupError> {
    require_le(group, k, h)?;
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for &x in h.elements() {
        if covered[x.0] {
            continue;
        }
        reps.push(x);
        for &b in k.elements() {
            covered[group.mul(x, b).0] = true;
        }
    }
    Ok(reps)
}

/// Position of a subgroup in the sorted subgroup list of its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubId(pub usize);

impl fmt::Display for SubId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A group together with its full subgroup list and the lookup tables every
/// Mackey computation needs: containment, conjugation and intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupTable {
    group: FiniteGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, SubId>,
    le: Vec<bool>,
    conj: Vec<SubId>,
    meet: Vec<SubId>,
    labels: Vec<String>,
}

impl SubgroupTable {
    pub fn new(group: FiniteGroup) -> Self {
        let subgroups = all_subgroups(&group);
        let n = subgroups.len();
        let index: HashMap<Subgroup, SubId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SubId(i)))
            .collect();
        let mut le = vec![false; n * n];
        let mut meet = vec![SubId(0); n * n];
        for (a, sa) in subgroups.iter().enumerate() {
            for (b, sb) in subgroups.iter().enumerate() {
                le[a * n + b] = sa.is_subgroup_of(sb);
                let common = Subgroup {
                    elements: sa
                        .elements
                        .iter()
                        .copied()
                        .filter(|&e| sb.contains(e))
                        .collect(),
                };
                meet[a * n + b] = index[&common];
            }
        }
        let mut conj = vec![SubId(0); group.order() * n];
        for g in group.elements() {
            for (s, sub) in subgroups.iter().enumerate() {
                conj[g.0 * n + s] = index[&conjugate_subgroup(&group, g, sub)];
            }
        }
        let labels = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| subgroup_label(&group, s, i + 1 == n))
            .collect();
        SubgroupTable {
            group,
            subgroups,
            index,
            le,
            conj,
            meet,
            labels,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubId> + Clone {
        (0..self.subgroups.len()).map(SubId)
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn id_of(&self, sub: &Subgroup) -> Option<SubId> {
        self.index.get(sub).copied()
    }

    pub fn trivial(&self) -> SubId {
        SubId(0)
    }

    pub fn whole(&self) -> SubId {
        SubId(self.subgroups.len() - 1)
    }

    pub fn order_of(&self, id: SubId) -> usize {
        self.subgroups[id.0].order()
    }

    /// `[H : K]`; only meaningful when `K ≤ H`.
    pub fn index_of(&self, k: SubId, h: SubId) -> usize {
        self.order_of(h) / self.order_of(k)
    }

    /// `K ≤ H`
    #[inline]
    pub fn le(&self, k: SubId, h: SubId) -> bool {
        self.le[k.0 * self.subgroups.len() + h.0]
    }

    #[inline]
    pub fn contains(&self, h: SubId, e: Elem) -> bool {
        self.subgroups[h.0].contains(e)
    }

    /// `^g H`
    #[inline]
    pub fn conj(&self, g: Elem, h: SubId) -> SubId {
        self.conj[g.0 * self.subgroups.len() + h.0]
    }

    /// `H^g = g^-1 H g`
    #[inline]
    pub fn conj_by_inverse(&self, g: Elem, h: SubId) -> SubId {
        self.conj(self.group.inv(g), h)
    }

    #[inline]
    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        self.meet[a.0 * self.subgroups.len() + b.0]
    }

    /// All `(K, H)` with `K ≤ H`, in lexicographic id order.
    pub fn inclusions(&self) -> impl Iterator<Item = (SubId, SubId)> + '_ {
        self.ids().flat_map(move |k| {
            self.ids()
                .filter(move |&h| self.le(k, h))
                .map(move |h| (k, h))
        })
    }

    /// The conjugacy class representative with the smallest id under `H`-conjugation.
    pub fn class_rep_in(&self, l: SubId, h: SubId) -> SubId {
        self.subgroups[h.0]
            .elements()
            .iter()
            .map(|&x| self.conj(x, l))
            .min()
            .expect("subgroups are nonempty")
    }

    pub fn double_coset_reps(&self, j: SubId, h: SubId, k: SubId) -> Result<Vec<Elem>, GroupError> {
        double_coset_reps(
            &self.group,
            self.subgroup(j),
            self.subgroup(h),
            self.subgroup(k),
        )
    }

    pub fn double_cosets(
        &self,
        j: SubId,
        h: SubId,
        k: SubId,
    ) -> Result<Vec<Vec<Elem>>, GroupError> {
        double_cosets(
            &self.group,
            self.subgroup(j),
            self.subgroup(h),
            self.subgroup(k),
        )
    }

    pub fn left_transversal(&self, h: SubId, k: SubId) -> Result<Vec<Elem>, GroupError> {
        left_transversal(&self.group, self.subgroup(h), self.subgroup(k))
    }

    /// Minimal element of the left coset `gH`.
    pub fn coset_min(&self, g: Elem, h: SubId) -> Elem {
        self.subgroups[h.0]
            .elements()
            .iter()
            .map(|&x| self.group.mul(g, x))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Readable name: `1` for the trivial subgroup, `G` for the whole group,
    /// otherwise a greedy generating set such as `<(1 2)>`.
    pub fn label(&self, id: SubId) -> &str {
        &self.labels[id.0]
    }
}

fn subgroup_label(group: &FiniteGroup, sub: &Subgroup, whole: bool) -> String {
    if sub.order() == 1 {
        return "1".into();
    }
    if whole {
        return "G".into();
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = Subgroup::generated(group, &gens);
    for &e in sub.elements() {
        if !span.contains(e) {
            gens.push(e);
            span = Subgroup::generated(group, &gens);
        }
    }
    let names: Vec<&str> = gens.iter().map(|&g| group.name(g)).collect();
    format!("<{}>", names.join(","))
}

/// Resolve a subgroup selector: `all`, `1`, `#k` (index into the sorted
/// subgroup list), or a comma-separated generator list such as `(1 2),(1 3)`.
pub fn resolve_subgroup(table: &SubgroupTable, selector: &str) -> Result<SubId, GroupError> {
    let sel = selector.trim();
    let fail = |why: String| GroupError::Selector(selector.to_string(), why);
    match sel {
        "all" | "G" => return Ok(table.whole()),
        "1" | "e" => return Ok(table.trivial()),
        _ => {}
    }
    if let Some(idx) = sel.strip_prefix('#') {
        let i: usize = idx.parse().map_err(|_| fail("bad index".into()))?;
        if i >= table.len() {
            return Err(fail(format!("only {} subgroups", table.len())));
        }
        return Ok(SubId(i));
    }
    let group = table.group();
    let mut gens = Vec::new();
    for token in split_generators(sel) {
        let g = group
            .find_element(&token)
            .ok_or_else(|| fail(format!("generator {token:?} is not in the group")))?;
        gens.push(g);
    }
    if gens.is_empty() {
        return Err(fail("no generators".into()));
    }
    let sub = Subgroup::generated(group, &gens);
    table
        .id_of(&sub)
        .ok_or_else(|| fail("generated set is not in the subgroup list".into()))
}

/// Split `(1 2)(3 4),(1 3)` at commas that sit outside parentheses.
fn split_generators(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    fn table(spec: &str) -> SubgroupTable {
        SubgroupTable::new(FiniteGroup::from_spec(spec, DEFAULT_ORDER_CAP).unwrap())
    }

    fn sub(t: &SubgroupTable, sel: &str) -> SubId {
        resolve_subgroup(t, sel).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        for (spec, n) in [
            ("C1", 1),
            ("C2", 2),
            ("C6", 4),
            ("S3", 6),
            ("D4", 10),
            ("Q8", 6),
            ("A4", 10),
            ("S4", 30),
        ] {
            assert_eq!(table(spec).len(), n, "{spec}");
        }
    }

    #[test]
    fn s3_subgroup_orders_are_sorted() {
        let t = table("S3");
        let orders: Vec<usize> = t.ids().map(|s| t.order_of(s)).collect();
        assert_eq!(orders, [1, 2, 2, 2, 3, 6]);
        assert_eq!(t.label(t.whole()), "G");
        assert_eq!(t.label(t.trivial()), "1");
    }

    #[test]
    fn conjugation_examples() {
        let t = table("S3");
        let g = t.group().find_element("(1 2 3)").unwrap();
        let c12 = sub(&t, "(1 2)");
        assert_eq!(t.conj(g, c12), sub(&t, "(2 3)"));
        assert_eq!(t.conj(Elem::IDENTITY, c12), c12);
        for x in t.group().elements() {
            assert_eq!(t.conj(x, t.whole()), t.whole());
        }
        let direct = conjugate_subgroup(t.group(), g, t.subgroup(c12));
        assert_eq!(t.id_of(&direct), Some(sub(&t, "(2 3)")));
    }

    #[test]
    fn double_coset_examples() {
        let t = table("S3");
        let g = t.whole();
        assert_eq!(t.double_coset_reps(g, g, g).unwrap(), vec![Elem::IDENTITY]);
        let c2 = sub(&t, "(1 2)");
        let cosets = t.double_cosets(c2, g, c2).unwrap();
        let sizes: Vec<usize> = cosets.iter().map(Vec::len).collect();
        assert_eq!(sizes, [2, 4]);
        let a3 = sub(&t, "(1 2 3)");
        assert_eq!(t.double_coset_reps(a3, g, c2).unwrap().len(), 1);
        let c13 = sub(&t, "(1 3)");
        assert!(matches!(
            t.double_coset_reps(c13, c2, c2),
            Err(GroupError::NotSubgroup(..))
        ));
    }

    #[test]
    fn transversal_examples() {
        let t = table("S3");
        let g = t.whole();
        assert_eq!(t.left_transversal(g, g).unwrap(), vec![Elem::IDENTITY]);
        assert_eq!(t.left_transversal(g, t.trivial()).unwrap().len(), 6);
        assert_eq!(t.left_transversal(g, sub(&t, "(1 2)")).unwrap().len(), 3);
        assert!(t
            .left_transversal(sub(&t, "(1 2)"), sub(&t, "(1 3)"))
            .is_err());
    }

    #[test]
    fn selectors() {
        let t = table("S3");
        assert_eq!(sub(&t, "all"), t.whole());
        assert_eq!(sub(&t, "#0"), t.trivial());
        assert_eq!(t.order_of(sub(&t, "(1 2)")), 2);
        assert_eq!(sub(&t, "(1 2),(1 3)"), t.whole());
        assert_eq!(sub(&t, "(1 2 3)"), sub(&t, "(1 3 2)"));
        assert!(resolve_subgroup(&t, "(1 4)").is_err());
        assert!(resolve_subgroup(&t, "#6").is_err());
        assert!(resolve_subgroup(&t, "").is_err());
        let v4 = table("D4");
        assert_eq!(v4.order_of(sub(&v4, "(1 3)(2 4),(1 2)(3 4)")), 4);
    }

    #[test]
    fn conjugation_tower_exhaustive() {
        for spec in ["S3", "D4", "Q8", "C6"] {
            let t = table(spec);
            let gr = t.group();
            for g in gr.elements() {
                for h in gr.elements() {
                    for k in t.ids() {
                        assert_eq!(t.conj(g, t.conj(h, k)), t.conj(gr.mul(g, h), k));
                    }
                }
            }
        }
    }

    #[test]
    fn from_elements_validates() {
        let t = table("S3");
        let gr = t.group();
        assert!(Subgroup::from_elements(gr, vec![Elem(0), Elem(2)]).is_ok());
        assert!(Subgroup::from_elements(gr, vec![Elem(0), Elem(3)]).is_err());
        assert!(Subgroup::from_elements(gr, vec![Elem(2)]).is_err());
    }
}
