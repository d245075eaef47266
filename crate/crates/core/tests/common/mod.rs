//! Independent oracles shared by the integration tests. Nothing here calls the
//! library routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use mackey::group::{resolve_subgroup, Elem, FiniteGroup, SubId, SubgroupTable};
use mackey::intlat::{
    image_lattice, internal_direct_sum, lattice_contains, lattice_intersect, lattice_sum, IntMap,
    Lattice,
};
use mackey::mackey::{
    burnside_functor, fixed_point_functor, trivial_functor, Axiom, AxiomReport, GSet,
    MackeyFunctorData,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TEST_GROUPS: [&str; 6] = ["C1", "C2", "C6", "S3", "D4", "Q8"];

pub fn table(spec: &str) -> Arc<SubgroupTable> {
    Arc::new(SubgroupTable::new(
        FiniteGroup::from_spec(spec, 24).unwrap(),
    ))
}

/// Trivial, Burnside and natural fixed-point functor of a group.
pub fn test_functors(t: &Arc<SubgroupTable>) -> Vec<(&'static str, MackeyFunctorData)> {
    vec![
        ("trivial", trivial_functor(t.clone()).unwrap()),
        ("burnside", burnside_functor(t.clone()).unwrap()),
        (
            "fixedpoint",
            fixed_point_functor(t.clone(), &GSet::natural(t.group()).unwrap()).unwrap(),
        ),
    ]
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn lattice(n: usize, gens: &[Vec<i64>]) -> Lattice {
    let g: Vec<Vec<BigInt>> = gens.iter().map(|v| big(v)).collect();
    Lattice::from_generators(n, &g).unwrap()
}

/// Lattice points of `span_Z(gens)` inside the query box `[-r, r]^n`, found by
/// breadth-first search over sums of generators.
///
/// The search runs in `[-m, m]^n` with `m = r + n * max(r, |gens|_inf)`. By
/// the Steinitz lemma every way of writing a box point as a sum of generators
/// can be reordered so that all partial sums stay inside that region, so the
/// search misses nothing.
pub struct BoxLattice {
    n: usize,
    r: i64,
    m: i64,
    reached: Vec<bool>,
}

impl BoxLattice {
    pub fn generated(n: usize, r: i64, gens: &[Vec<i64>]) -> Self {
        let gmax = gens.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
        let m = r + n as i64 * r.max(gmax);
        let side = (2 * m + 1) as usize;
        let cells = side.pow(n as u32);
        let mut reached = vec![false; cells];
        // points padded to three coordinates; unused ones stay zero
        let index = |p: &[i64; 3]| -> Option<usize> {
            let mut i = 0usize;
            for &x in &p[..n] {
                if x.abs() > m {
                    return None;
                }
                i = i * side + (x + m) as usize;
            }
            Some(i)
        };
        assert!(n <= 3);
        let origin = [0i64; 3];
        reached[index(&origin).unwrap()] = true;
        let mut queue = vec![origin];
        let mut steps: Vec<[i64; 3]> = Vec::new();
        for g in gens {
            let mut s = [0i64; 3];
            s[..n].copy_from_slice(g);
            steps.push(s);
            steps.push(s.map(|x| -x));
        }
        while let Some(p) = queue.pop() {
            for s in &steps {
                let q = [p[0] + s[0], p[1] + s[1], p[2] + s[2]];
                if let Some(i) = index(&q) {
                    if !reached[i] {
                        reached[i] = true;
                        queue.push(q);
                    }
                }
            }
        }
        let mut out = BoxLattice { n, r, m, reached };
        out.shrink();
        out
    }

    /// Keep only the query box.
    fn shrink(&mut self) {
        let side = (2 * self.m + 1) as usize;
        let mut kept = Vec::with_capacity(((2 * self.r + 1) as usize).pow(self.n as u32));
        for p in box_points(self.n, self.r) {
            let mut i = 0usize;
            for &x in &p {
                i = i * side + (x + self.m) as usize;
            }
            kept.push(self.reached[i]);
        }
        self.reached = kept;
        self.m = self.r;
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        let side = (2 * self.r + 1) as usize;
        let mut i = 0usize;
        for &x in p {
            assert!(x.abs() <= self.r);
            i = i * side + (x + self.r) as usize;
        }
        self.reached[i]
    }

    pub fn members(&self) -> &[bool] {
        &self.reached
    }
}

/// Every point of `[-r, r]^n` in lexicographic order.
pub fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Rank over `Q`, by fraction-free elimination in `i128`.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let pivot = rows[r].clone();
                rows[i]
                    .iter_mut()
                    .zip(&pivot)
                    .for_each(|(x, &y)| *x = *x * a - y * b);
                let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub const BOX: i64 = 9;
const ENTRY: i64 = 5;

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-ENTRY..=ENTRY)).collect()
}

fn random_gens(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let k = rng.gen_range(0..=3);
    (0..k).map(|_| random_vector(rng, n)).collect()
}

/// Generators of a sublattice of `span(gens)`, still with entries in range.
fn random_sub_gens(rng: &mut ChaCha8Rng, n: usize, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        for _ in 0..20 {
            let mut v = vec![0i64; n];
            for g in gens {
                let c = rng.gen_range(-2..=2);
                v.iter_mut().zip(g).for_each(|(a, b)| *a += c * b);
            }
            if v.iter().all(|x| x.abs() <= ENTRY) {
                out.push(v);
                break;
            }
        }
    }
    out
}

fn membership_mismatch(what: &str, l: &Lattice, oracle: &[bool], n: usize) -> Option<String> {
    for (p, &expected) in box_points(n, BOX).iter().zip(oracle) {
        let got = l.contains_vector(&big(p)).unwrap();
        if got != expected {
            return Some(format!(
                "{what}: point {p:?} library {got} oracle {expected}"
            ));
        }
    }
    None
}

/// One random instance of every lattice operation against the box oracle.
/// Returns a description of each disagreement.
pub fn lattice_instance(rng: &mut ChaCha8Rng) -> Vec<String> {
    let n = rng.gen_range(1..=3);
    let a = random_gens(rng, n);
    let b = if !a.is_empty() && rng.gen_bool(0.3) {
        random_sub_gens(rng, n, &a)
    } else {
        random_gens(rng, n)
    };
    let c = random_gens(rng, n);
    let mut errors = Vec::new();
    let ctx = format!("n={n} a={a:?} b={b:?} c={c:?}");

    let (la, lb, lc) = (lattice(n, &a), lattice(n, &b), lattice(n, &c));
    let oa = BoxLattice::generated(n, BOX, &a);
    let ob = BoxLattice::generated(n, BOX, &b);
    let oc = BoxLattice::generated(n, BOX, &c);

    // image of the matrix whose columns are the generators
    let cols: Vec<Vec<BigInt>> = a.iter().map(|v| big(v)).collect();
    let image = image_lattice(&IntMap::from_columns(n, &cols));
    errors.extend(membership_mismatch("image", &image, oa.members(), n));
    if image.rank() != rank(&a) {
        errors.push(format!("image rank {} oracle {}", image.rank(), rank(&a)));
    }

    let ab: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
    let oab = BoxLattice::generated(n, BOX, &ab);
    let sum = lattice_sum(&la, &lb).unwrap();
    errors.extend(membership_mismatch("sum", &sum, oab.members(), n));

    let meet = lattice_intersect(&la, &lb).unwrap();
    let both: Vec<bool> = oa
        .members()
        .iter()
        .zip(ob.members())
        .map(|(x, y)| *x && *y)
        .collect();
    errors.extend(membership_mismatch("intersect", &meet, &both, n));
    let meet_rank = rank(&a) + rank(&b) - rank(&ab);
    if meet.rank() != meet_rank {
        errors.push(format!("intersect rank {} oracle {meet_rank}", meet.rank()));
    }

    for (outer, inner, o_outer, g_inner, name) in
        [(&la, &lb, &oa, &b, "b in a"), (&lb, &la, &ob, &a, "a in b")]
    {
        let expected = g_inner.iter().all(|v| o_outer.contains(v));
        let got = lattice_contains(outer, inner).unwrap();
        if got != expected {
            errors.push(format!("contains {name}: library {got} oracle {expected}"));
        }
    }

    // direct sum of a, b against c, and against a + b itself
    let parts = [la.clone(), lb.clone()];
    for (whole, o_whole, name) in [(&lc, &oc, "c"), (&sum, &oab, "a+b")] {
        let v = internal_direct_sum(&parts, whole).unwrap();
        let sum_equal = oab.members() == o_whole.members();
        let direct = rank(&ab) == rank(&a) + rank(&b);
        if v.sum_equal != sum_equal || v.direct != direct {
            errors.push(format!(
                "direct sum into {name}: library ({}, {}) oracle ({sum_equal}, {direct})",
                v.sum_equal, v.direct
            ));
        }
    }
    errors.into_iter().map(|e| format!("{e} [{ctx}]")).collect()
}

/// `count` seeded lattice instances; returns the failures.
pub fn lattice_oracle_run(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .flat_map(|_| lattice_instance(&mut rng))
        .collect()
}

/// Subgroups of a small group as sorted element-index lists, by testing every
/// subset for closure.
pub fn brute_force_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let closed = members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| mask >> g.mul(Elem(a), Elem(b)).index() & 1 == 1)
        });
        if closed {
            out.insert(members);
        }
    }
    out
}

/// The `J x K` orbits on `H`, found by direct multiplication.
pub fn brute_force_double_cosets(
    t: &SubgroupTable,
    j: SubId,
    h: SubId,
    k: SubId,
) -> BTreeSet<BTreeSet<usize>> {
    let g = t.group();
    let mut out = BTreeSet::new();
    for &x in t.subgroup(h).elements() {
        let coset: BTreeSet<usize> = t
            .subgroup(j)
            .elements()
            .iter()
            .flat_map(|&a| {
                t.subgroup(k)
                    .elements()
                    .iter()
                    .map(move |&b| g.mul(g.mul(a, x), b).index())
            })
            .collect();
        out.insert(coset);
    }
    out
}

/// All group-kernel checks on one group; returns the failures.
pub fn group_oracle_run(spec: &str) -> Vec<String> {
    let t = table(spec);
    let g = t.group();
    let mut errors = Vec::new();
    if g.order() <= 8 {
        let listed: BTreeSet<Vec<usize>> = t
            .subgroups()
            .iter()
            .map(|s| s.elements().iter().map(|e| e.index()).collect())
            .collect();
        if listed.len() != t.len() {
            errors.push(format!("{spec}: duplicate subgroups"));
        }
        if listed != brute_force_subgroups(g) {
            errors.push(format!("{spec}: subgroup list differs from brute force"));
        }
    }
    for h in t.ids() {
        let sub_h: Vec<SubId> = t.ids().filter(|&s| t.le(s, h)).collect();
        for &j in &sub_h {
            for &k in &sub_h {
                let tag = format!("{spec} J={} H={} K={}", t.label(j), t.label(h), t.label(k));
                let oracle = brute_force_double_cosets(&t, j, h, k);
                let got: BTreeSet<BTreeSet<usize>> = t
                    .double_cosets(j, h, k)
                    .unwrap()
                    .iter()
                    .map(|c| c.iter().map(|e| e.index()).collect())
                    .collect();
                if got != oracle {
                    errors.push(format!("{tag}: double cosets differ"));
                }
                let total: usize = oracle.iter().map(BTreeSet::len).sum();
                let union: BTreeSet<usize> = oracle.iter().flatten().copied().collect();
                if total != t.order_of(h) || union.len() != t.order_of(h) {
                    errors.push(format!("{tag}: cosets do not partition H"));
                }
                let reps = t.double_coset_reps(j, h, k).unwrap();
                let hit: BTreeSet<&BTreeSet<usize>> = reps
                    .iter()
                    .filter_map(|x| oracle.iter().find(|c| c.contains(&x.index())))
                    .collect();
                if reps.len() != oracle.len() || hit.len() != oracle.len() {
                    errors.push(format!("{tag}: representatives are not a transversal"));
                }
                // sum over x of [J : J ∩ xKx^-1] = [H : K]
                let mut index_sum = 0;
                for &x in &reps {
                    let xi = g.inv(x);
                    let meet = t
                        .subgroup(j)
                        .elements()
                        .iter()
                        .filter(|&&a| t.subgroup(k).contains(g.mul(g.mul(xi, a), x)))
                        .count();
                    index_sum += t.order_of(j) / meet;
                }
                if index_sum != t.order_of(h) / t.order_of(k) {
                    errors.push(format!("{tag}: index sum {index_sum} != [H:K]"));
                }
            }
        }
    }
    errors
}

/// Trivial functor on S3 with `I_{<(1 2)>}^{S3}` doubled to `[6]`.
pub fn doubled_induction() -> MackeyFunctorData {
    let t = table("S3");
    let mut m = trivial_functor(t.clone()).unwrap();
    let c2 = resolve_subgroup(&t, "(1 2)").unwrap();
    m.set_ind(c2, t.whole(), IntMap::from_rows(1, &[vec![6]]))
        .unwrap();
    m
}

/// Natural fixed-point functor on S3 with `c_{(1 2 3)}` on `M(1)` replaced by
/// the identity.
pub fn dropped_conjugation() -> MackeyFunctorData {
    let t = table("S3");
    let mut m = fixed_point_functor(t.clone(), &GSet::natural(t.group()).unwrap()).unwrap();
    let r3 = t.group().find_element("(1 2 3)").unwrap();
    m.set_conj(r3, t.trivial(), IntMap::identity(3)).unwrap();
    m
}

/// Trivial functor on S3 with `R_{<(1 2)>}^{S3}` replaced by the transpose of
/// the induction, `[3]`.
pub fn transposed_restriction() -> MackeyFunctorData {
    let t = table("S3");
    let mut m = trivial_functor(t.clone()).unwrap();
    let c2 = resolve_subgroup(&t, "(1 2)").unwrap();
    let ind = m.ind(c2, t.whole()).transpose();
    m.set_res(c2, t.whole(), ind).unwrap();
    m
}

/// Left and right side of the first failure of `axiom` whose witness
/// contains all of `pairs`.
pub fn failure_at(
    r: &AxiomReport,
    axiom: Axiom,
    pairs: &[(&str, &str)],
) -> Option<(IntMap, IntMap)> {
    r.failures_of(axiom)
        .find(|f| {
            pairs
                .iter()
                .all(|(k, v)| f.witness.iter().any(|(a, b)| a == k && b == v))
        })
        .map(|f| (f.left.clone(), f.right.clone()))
}

pub fn one(x: i64) -> IntMap {
    IntMap::from_rows(1, &[vec![x]])
}

/// A mutated functor with the axioms it must fail and one pinned witness.
pub struct Control {
    pub name: &'static str,
    pub functor: MackeyFunctorData,
    pub failing: Vec<Axiom>,
    pub axiom: Axiom,
    pub at: Vec<(&'static str, &'static str)>,
    pub sides: (IntMap, IntMap),
}

pub fn negative_controls() -> Vec<Control> {
    let dropped = dropped_conjugation();
    let t = dropped.table().clone();
    let r3i = t.group().find_element("(1 3 2)").unwrap();
    let honest = fixed_point_functor(t.clone(), &GSet::natural(t.group()).unwrap())
        .unwrap()
        .conj(r3i, t.trivial())
        .clone();
    let c2 = "<(1 2)>";
    vec![
        Control {
            name: "doubled induction",
            functor: doubled_induction(),
            failing: vec![Axiom::M3, Axiom::M6, Axiom::M7],
            axiom: Axiom::M7,
            at: vec![("J", c2), ("K", c2), ("H", "G"), ("reps", "e (2 3)")],
            sides: (one(6), one(3)),
        },
        Control {
            name: "dropped conjugation",
            functor: dropped,
            failing: vec![Axiom::M4, Axiom::M5, Axiom::M6, Axiom::M7],
            axiom: Axiom::M4,
            at: vec![("g", "(1 2 3)"), ("h", "(1 2 3)"), ("H", "1")],
            sides: (IntMap::identity(3), honest),
        },
        Control {
            name: "transposed restriction",
            functor: transposed_restriction(),
            failing: vec![Axiom::M2, Axiom::M5, Axiom::M7],
            axiom: Axiom::M2,
            at: vec![("J", "1"), ("K", c2), ("H", "G")],
            sides: (one(3), one(1)),
        },
    ]
}
