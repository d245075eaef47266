use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{Elem, SubId};
use crate::intlat::{
    image_lattice, internal_direct_sum, lattice_contains, lattice_intersect, IntMap, Lattice,
};
use crate::report::{pair, Instance, Section, Witness};

use super::data::MackeyDoubleData;
use super::symbolic::{compose_h, compose_v, CellBoundary, HMor, VMor};
use super::DoubleError;

/// How much of a check to enumerate. Below the limits everything is checked;
/// above them a `samples`-sized draw from a ChaCha8 stream seeded by `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// symbolic morphism count up to which laws are exhaustive
    pub morphism_limit: usize,
    /// upper plus lower rim count up to which interchange is exhaustive
    pub rim_limit: u128,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            morphism_limit: 5000,
            rim_limit: 2_000_000,
            samples: 1000,
            seed: 0,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Budget::default()
        }
    }
}

fn mat(m: &IntMap) -> String {
    m.to_string()
}

/// Unit laws, associativity (symbolic and realized), the identity
/// characterization and cell unit laws.
pub fn check_double_laws(d: &MackeyDoubleData, budget: &Budget) -> Vec<Section> {
    let t = d.table().as_ref();
    let exhaustive = d.morphism_count() <= budget.morphism_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mode = if exhaustive { "exhaustive" } else { "sampled" };

    let mut identities = Section::new("identities");
    for k in t.ids() {
        let h = HMor::identity(t, k);
        let v = VMor::identity(t, k);
        let ok = d.realize_h(&h).is_identity() && d.realize_v(&v).is_identity();
        identities.record(
            Instance::new(vec![pair("object", t.label(k))], ok, Vec::new()),
            false,
        );
    }

    let mut h_unit = Section::new("horizontal_units");
    for &m in d.hmors() {
        let left = compose_h(t, &HMor::identity(t, m.target()), &m).expect("composable");
        let right = compose_h(t, &m, &HMor::identity(t, m.source())).expect("composable");
        let ok = left == m && right == m;
        h_unit.record(
            Instance::new(vec![pair("t", m.display(t))], ok, Vec::new()),
            false,
        );
    }
    let mut v_unit = Section::new("vertical_units");
    for &m in d.vmors() {
        let left = compose_v(t, &VMor::identity(t, m.target()), &m).expect("composable");
        let right = compose_v(t, &m, &VMor::identity(t, m.source())).expect("composable");
        let ok = left == m && right == m;
        v_unit.record(
            Instance::new(vec![pair("r", m.display(t))], ok, Vec::new()),
            false,
        );
    }

    let mut h_assoc = Section::new("horizontal_associativity");
    h_assoc.note("mode", mode);
    let hm = d.hmors();
    let h_next = |m: &HMor| d.h_from(m.target());
    let h_triple = |a: &HMor, b: &HMor, c: &HMor, s: &mut Section| {
        let left = compose_h(t, c, &compose_h(t, b, a).expect("composable")).expect("composable");
        let right = compose_h(t, &compose_h(t, c, b).expect("composable"), a).expect("composable");
        let product = &(d.realize_h(c) * d.realize_h(b)) * d.realize_h(a);
        let realized = d.realize_h(&left) == &product;
        let w = vec![
            pair("t1", a.display(t)),
            pair("t2", b.display(t)),
            pair("t3", c.display(t)),
        ];
        let details = if left == right && realized {
            Vec::new()
        } else {
            vec![
                pair("left", left.display(t)),
                pair("right", right.display(t)),
                pair("product", mat(&product)),
            ]
        };
        s.record(Instance::new(w, left == right && realized, details), false);
    };
    if exhaustive {
        for a in hm {
            for &bi in h_next(a) {
                let b = &hm[bi];
                for &ci in h_next(b) {
                    h_triple(a, b, &hm[ci], &mut h_assoc);
                }
            }
        }
    } else {
        for _ in 0..budget.samples {
            let a = hm.choose(&mut rng).expect("identities exist");
            let b = &hm[*h_next(a).choose(&mut rng).expect("identity")];
            let c = &hm[*h_next(b).choose(&mut rng).expect("identity")];
            h_triple(a, b, c, &mut h_assoc);
        }
    }

    let mut v_assoc = Section::new("vertical_associativity");
    v_assoc.note("mode", mode);
    let vm = d.vmors();
    let v_next = |m: &VMor| d.v_from(m.target());
    let v_triple = |a: &VMor, b: &VMor, c: &VMor, s: &mut Section| {
        let left = compose_v(t, c, &compose_v(t, b, a).expect("composable")).expect("composable");
        let right = compose_v(t, &compose_v(t, c, b).expect("composable"), a).expect("composable");
        let product = &(d.realize_v(c) * d.realize_v(b)) * d.realize_v(a);
        let realized = d.realize_v(&left) == &product;
        let w = vec![
            pair("r1", a.display(t)),
            pair("r2", b.display(t)),
            pair("r3", c.display(t)),
        ];
        let details = if left == right && realized {
            Vec::new()
        } else {
            vec![
                pair("left", left.display(t)),
                pair("right", right.display(t)),
                pair("product", mat(&product)),
            ]
        };
        s.record(Instance::new(w, left == right && realized, details), false);
    };
    if exhaustive {
        for a in vm {
            for &bi in v_next(a) {
                let b = &vm[bi];
                for &ci in v_next(b) {
                    v_triple(a, b, &vm[ci], &mut v_assoc);
                }
            }
        }
    } else {
        for _ in 0..budget.samples {
            let a = vm.choose(&mut rng).expect("identities exist");
            let b = &vm[*v_next(a).choose(&mut rng).expect("identity")];
            let c = &vm[*v_next(b).choose(&mut rng).expect("identity")];
            v_triple(a, b, c, &mut v_assoc);
        }
    }

    // A morphism is a two-sided unit for composition iff H = K and g ∈ H.
    let mut iff = Section::new("identity_characterization");
    for &m in hm {
        let unit = m.source() == m.target()
            && hm
                .iter()
                .filter(|s| s.target() == m.source())
                .all(|s| compose_h(t, &m, s).ok() == Some(*s))
            && h_next(&m)
                .iter()
                .all(|&i| compose_h(t, &hm[i], &m).ok() == Some(hm[i]));
        let expected = m.k() == m.h() && t.contains(m.h(), m.g());
        let ok = unit == expected && m.is_identity() == expected;
        iff.record(
            Instance::new(
                vec![pair("t", m.display(t))],
                ok,
                vec![pair("acts_as_unit", unit), pair("H=K and g in H", expected)],
            ),
            false,
        );
    }
    for &m in vm {
        let unit = m.source() == m.target()
            && vm
                .iter()
                .filter(|s| s.target() == m.source())
                .all(|s| compose_v(t, &m, s).ok() == Some(*s))
            && v_next(&m)
                .iter()
                .all(|&i| compose_v(t, &vm[i], &m).ok() == Some(vm[i]));
        let expected = m.k() == m.h() && t.contains(m.h(), m.g());
        let ok = unit == expected && m.is_identity() == expected;
        iff.record(
            Instance::new(
                vec![pair("r", m.display(t))],
                ok,
                vec![pair("acts_as_unit", unit), pair("H=K and g in H", expected)],
            ),
            false,
        );
    }

    let mut cell_units = Section::new("cell_units");
    cell_units.note("mode", mode);
    let unit_check = |alpha: &CellBoundary, s: &mut Section| {
        let value = d.cell_value(alpha);
        let composites = [
            d.cell_compose_h(&CellBoundary::horizontal_identity(t, alpha.right), alpha),
            d.cell_compose_h(alpha, &CellBoundary::horizontal_identity(t, alpha.left)),
            d.cell_compose_v(&CellBoundary::vertical_identity(t, alpha.bottom), alpha),
            d.cell_compose_v(alpha, &CellBoundary::vertical_identity(t, alpha.top)),
        ];
        let ok = composites
            .iter()
            .all(|c| matches!(c, Ok(c) if c.boundary == *alpha && c.value == value));
        s.record(
            Instance::new(vec![pair("cell", alpha.display(t))], ok, Vec::new()),
            false,
        );
    };
    if exhaustive {
        for_each_cell(d, |b| unit_check(&b, &mut cell_units));
    } else {
        let mut drawn = 0;
        while drawn < budget.samples {
            if let Some(b) = random_cell(d, &mut rng) {
                unit_check(&b, &mut cell_units);
                drawn += 1;
            }
        }
    }

    vec![
        identities, h_unit, v_unit, h_assoc, v_assoc, iff, cell_units,
    ]
}

/// Visit every compatible cell boundary.
pub fn for_each_cell(d: &MackeyDoubleData, mut f: impl FnMut(CellBoundary)) {
    let (hm, vm) = (d.hmors(), d.vmors());
    for top in hm {
        for &li in d.v_from(top.source()) {
            let left = vm[li];
            for &ri in d.v_from(top.target()) {
                let right = vm[ri];
                for &bi in d.h_between(left.target(), right.target()) {
                    f(CellBoundary {
                        top: *top,
                        left,
                        right,
                        bottom: hm[bi],
                    });
                }
            }
        }
    }
}

fn random_cell(d: &MackeyDoubleData, rng: &mut ChaCha8Rng) -> Option<CellBoundary> {
    let (hm, vm) = (d.hmors(), d.vmors());
    let top = *hm.choose(rng)?;
    let left = vm[*d.v_from(top.source()).choose(rng)?];
    let right = vm[*d.v_from(top.target()).choose(rng)?];
    let bottom = hm[*d.h_between(left.target(), right.target()).choose(rng)?];
    Some(CellBoundary {
        top,
        left,
        right,
        bottom,
    })
}

/// `realize(compose(a, b)) = realize(a) realize(b)` for every composable pair.
pub fn check_functoriality(d: &MackeyDoubleData) -> Vec<Section> {
    let t = d.table().as_ref();
    let mut hs = Section::new("horizontal_functoriality");
    for a in d.hmors() {
        for &bi in d.h_from(a.target()) {
            let b = &d.hmors()[bi];
            let c = compose_h(t, b, a).expect("composable");
            let product = d.realize_h(b) * d.realize_h(a);
            let ok = d.realize_h(&c) == &product;
            let details = if ok {
                Vec::new()
            } else {
                vec![
                    pair("composite", mat(d.realize_h(&c))),
                    pair("product", mat(&product)),
                ]
            };
            hs.record(
                Instance::new(
                    vec![pair("t1", a.display(t)), pair("t2", b.display(t))],
                    ok,
                    details,
                ),
                false,
            );
        }
    }
    let mut vs = Section::new("vertical_functoriality");
    for a in d.vmors() {
        for &bi in d.v_from(a.target()) {
            let b = &d.vmors()[bi];
            let c = compose_v(t, b, a).expect("composable");
            let product = d.realize_v(b) * d.realize_v(a);
            let ok = d.realize_v(&c) == &product;
            let details = if ok {
                Vec::new()
            } else {
                vec![
                    pair("composite", mat(d.realize_v(&c))),
                    pair("product", mat(&product)),
                ]
            };
            vs.record(
                Instance::new(
                    vec![pair("r1", a.display(t)), pair("r2", b.display(t))],
                    ok,
                    details,
                ),
                false,
            );
        }
    }
    vec![hs, vs]
}

/// A 2x2 grid
///
/// ```text
///   . -f1-> . -f2-> .
///   f5  α  f11  β   f3
///   . -f9-> . -f10-> .
///   f6  γ  f12  δ   f4
///   . -f7-> . -f8-> .
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub alpha: CellBoundary,
    pub beta: CellBoundary,
    pub gamma: CellBoundary,
    pub delta: CellBoundary,
}

/// Both sides of the interchange law for one grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterchangeSides {
    pub rows_first: (CellBoundary, Lattice),
    pub columns_first: (CellBoundary, Lattice),
}

impl InterchangeSides {
    pub fn holds(&self) -> bool {
        self.rows_first == self.columns_first
    }
}

/// `(δ ∘0 γ) ∘1 (β ∘0 α)` against `(δ ∘1 β) ∘0 (γ ∘1 α)`.
pub fn interchange(d: &MackeyDoubleData, g: &Grid) -> Result<InterchangeSides, DoubleError> {
    let top = d.cell_compose_h(&g.beta, &g.alpha)?;
    let bottom = d.cell_compose_h(&g.delta, &g.gamma)?;
    let rows = d.cell_compose_v(&bottom.boundary, &top.boundary)?;
    let left = d.cell_compose_v(&g.gamma, &g.alpha)?;
    let right = d.cell_compose_v(&g.delta, &g.beta)?;
    let cols = d.cell_compose_h(&right.boundary, &left.boundary)?;
    Ok(InterchangeSides {
        rows_first: (rows.boundary, rows.value),
        columns_first: (cols.boundary, cols.value),
    })
}

/// Number of compatible 2x2 grids, counted without enumerating them.
pub fn count_grids(d: &MackeyDoubleData) -> u128 {
    let n = d.object_count();
    let mut hn = vec![vec![0u128; n]; n];
    for m in d.hmors() {
        hn[m.source().0][m.target().0] += 1;
    }
    let mut vn = vec![vec![0u128; n]; n];
    for m in d.vmors() {
        vn[m.source().0][m.target().0] += 1;
    }
    let idx = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    // composable horizontal pairs x -> y -> z
    let mut row = vec![0u128; n * n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                row[idx(x, y, z)] = hn[x][y] * hn[y][z];
            }
        }
    }
    // push a row of three corners down one vertical step, one corner at a time
    let step = |from: &[u128]| {
        let mut cur = from.to_vec();
        for axis in 0..3 {
            let mut next = vec![0u128; n * n * n];
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let c = cur[idx(x, y, z)];
                        if c == 0 {
                            continue;
                        }
                        let src = [x, y, z][axis];
                        for (u, &ways) in vn[src].iter().enumerate() {
                            if ways > 0 {
                                let mut to = [x, y, z];
                                to[axis] = u;
                                next[idx(to[0], to[1], to[2])] += c * ways;
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter()
            .zip(&row)
            .map(|(a, b)| a * b)
            .collect::<Vec<u128>>()
    };
    step(&step(&row)).iter().sum()
}

/// Visit every compatible 2x2 grid.
pub fn for_each_grid(d: &MackeyDoubleData, mut f: impl FnMut(&Grid)) {
    let (hm, vm) = (d.hmors(), d.vmors());
    for f1 in hm {
        for &i2 in d.h_from(f1.target()) {
            let f2 = hm[i2];
            for &i5 in d.v_from(f1.source()) {
                let f5 = vm[i5];
                for &i11 in d.v_from(f1.target()) {
                    let f11 = vm[i11];
                    for &i3 in d.v_from(f2.target()) {
                        let f3 = vm[i3];
                        for &i9 in d.h_between(f5.target(), f11.target()) {
                            let f9 = hm[i9];
                            for &i10 in d.h_between(f11.target(), f3.target()) {
                                let f10 = hm[i10];
                                let alpha = CellBoundary {
                                    top: *f1,
                                    left: f5,
                                    right: f11,
                                    bottom: f9,
                                };
                                let beta = CellBoundary {
                                    top: f2,
                                    left: f11,
                                    right: f3,
                                    bottom: f10,
                                };
                                for &i6 in d.v_from(f5.target()) {
                                    let f6 = vm[i6];
                                    for &i12 in d.v_from(f11.target()) {
                                        let f12 = vm[i12];
                                        for &i4 in d.v_from(f3.target()) {
                                            let f4 = vm[i4];
                                            for &i7 in d.h_between(f6.target(), f12.target()) {
                                                let f7 = hm[i7];
                                                for &i8 in d.h_between(f12.target(), f4.target()) {
                                                    let f8 = hm[i8];
                                                    f(&Grid {
                                                        alpha,
                                                        beta,
                                                        gamma: CellBoundary {
                                                            top: f9,
                                                            left: f6,
                                                            right: f12,
                                                            bottom: f7,
                                                        },
                                                        delta: CellBoundary {
                                                            top: f10,
                                                            left: f12,
                                                            right: f4,
                                                            bottom: f8,
                                                        },
                                                    });
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Draw one grid by walking outward from a random top-left corner,
/// rejecting dead ends.
pub fn random_grid(d: &MackeyDoubleData, rng: &mut ChaCha8Rng) -> Grid {
    let (hm, vm) = (d.hmors(), d.vmors());
    loop {
        let pick_v =
            |rng: &mut ChaCha8Rng, from: SubId| vm[*d.v_from(from).choose(rng).expect("identity")];
        let f1 = hm[rng.gen_range(0..hm.len())];
        let f2 = hm[*d.h_from(f1.target()).choose(rng).expect("identity")];
        let f5 = pick_v(rng, f1.source());
        let f11 = pick_v(rng, f1.target());
        let f3 = pick_v(rng, f2.target());
        let Some(&i9) = d.h_between(f5.target(), f11.target()).choose(rng) else {
            continue;
        };
        let Some(&i10) = d.h_between(f11.target(), f3.target()).choose(rng) else {
            continue;
        };
        let f6 = pick_v(rng, f5.target());
        let f12 = pick_v(rng, f11.target());
        let f4 = pick_v(rng, f3.target());
        let Some(&i7) = d.h_between(f6.target(), f12.target()).choose(rng) else {
            continue;
        };
        let Some(&i8) = d.h_between(f12.target(), f4.target()).choose(rng) else {
            continue;
        };
        let (f9, f10, f7, f8) = (hm[i9], hm[i10], hm[i7], hm[i8]);
        return Grid {
            alpha: CellBoundary {
                top: f1,
                left: f5,
                right: f11,
                bottom: f9,
            },
            beta: CellBoundary {
                top: f2,
                left: f11,
                right: f3,
                bottom: f10,
            },
            gamma: CellBoundary {
                top: f9,
                left: f6,
                right: f12,
                bottom: f7,
            },
            delta: CellBoundary {
                top: f10,
                left: f12,
                right: f4,
                bottom: f8,
            },
        };
    }
}

/// The two ways of evaluating one half of a grid's rim. Both sides of the
/// interchange law are `Im(lower) ∩ Im(upper)`; rows-first and
/// columns-first differ only in how each half is composed.
fn rim_images_agree(rows: &IntMap, cols: &IntMap) -> bool {
    rows == cols || image_lattice(rows) == image_lattice(cols)
}

/// Upper rim `(f1, f2, f3, f4)`: `f4 f3 (f2 ∘ f1)` against `(f4 • f3) f2 f1`.
fn upper_rim(d: &MackeyDoubleData, f1: &HMor, f2: &HMor, f3: &VMor, f4: &VMor) -> (IntMap, IntMap) {
    let t = d.table().as_ref();
    let rows = &(d.realize_v(f4) * d.realize_v(f3))
        * d.realize_h(&compose_h(t, f2, f1).expect("composable"));
    let cols = &(d.realize_v(&compose_v(t, f4, f3).expect("composable")) * d.realize_h(f2))
        * d.realize_h(f1);
    (rows, cols)
}

/// Lower rim `(f5, f6, f7, f8)`: `(f8 ∘ f7) f6 f5` against `f8 f7 (f6 • f5)`.
fn lower_rim(d: &MackeyDoubleData, f5: &VMor, f6: &VMor, f7: &HMor, f8: &HMor) -> (IntMap, IntMap) {
    let t = d.table().as_ref();
    let rows = &(d.realize_h(&compose_h(t, f8, f7).expect("composable")) * d.realize_v(f6))
        * d.realize_v(f5);
    let cols = &(d.realize_h(f8) * d.realize_h(f7))
        * d.realize_v(&compose_v(t, f6, f5).expect("composable"));
    (rows, cols)
}

struct Rim {
    h: [HMor; 2],
    v: [VMor; 2],
    agree: bool,
}

fn upper_rims(d: &MackeyDoubleData) -> Vec<Rim> {
    let (hm, vm) = (d.hmors(), d.vmors());
    let mut out = Vec::new();
    for f1 in hm {
        for &i2 in d.h_from(f1.target()) {
            for &i3 in d.v_from(hm[i2].target()) {
                for &i4 in d.v_from(vm[i3].target()) {
                    let (f2, f3, f4) = (hm[i2], vm[i3], vm[i4]);
                    let (rows, cols) = upper_rim(d, f1, &f2, &f3, &f4);
                    out.push(Rim {
                        h: [*f1, f2],
                        v: [f3, f4],
                        agree: rim_images_agree(&rows, &cols),
                    });
                }
            }
        }
    }
    out
}

fn lower_rims(d: &MackeyDoubleData) -> Vec<Rim> {
    let (hm, vm) = (d.hmors(), d.vmors());
    let mut out = Vec::new();
    for f5 in vm {
        for &i6 in d.v_from(f5.target()) {
            for &i7 in d.h_from(vm[i6].target()) {
                for &i8 in d.h_from(hm[i7].target()) {
                    let (f6, f7, f8) = (vm[i6], hm[i7], hm[i8]);
                    let (rows, cols) = lower_rim(d, f5, &f6, &f7, &f8);
                    out.push(Rim {
                        h: [f7, f8],
                        v: [*f5, f6],
                        agree: rim_images_agree(&rows, &cols),
                    });
                }
            }
        }
    }
    out
}

/// Number of upper plus lower rims, which bounds the cost of the exhaustive
/// interchange check.
pub fn count_rims(d: &MackeyDoubleData) -> u128 {
    let n = d.object_count();
    let mut hn = vec![vec![0u128; n]; n];
    for m in d.hmors() {
        hn[m.source().0][m.target().0] += 1;
    }
    let mut vn = vec![vec![0u128; n]; n];
    for m in d.vmors() {
        vn[m.source().0][m.target().0] += 1;
    }
    let mut total = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // two horizontal steps then two vertical, or the reverse
                let hh = hn[a][b] * hn[b][c];
                let vv = vn[a][b] * vn[b][c];
                if hh > 0 {
                    total += hh
                        * (0..n)
                            .map(|x| vn[c][x] * vn[x].iter().sum::<u128>())
                            .sum::<u128>();
                }
                if vv > 0 {
                    total += vv
                        * (0..n)
                            .map(|x| hn[c][x] * hn[x].iter().sum::<u128>())
                            .sum::<u128>();
                }
            }
        }
    }
    total
}

/// Interchange on 2x2 grids.
///
/// Exhaustive mode (at most `rim_limit` rims): each side of the law is
/// `Im(lower) ∩ Im(upper)` where the two halves depend only on the outer
/// rim, so every grid is settled by comparing rows-first with columns-first
/// on each upper and lower rim. A grid whose rims both agree passes; every
/// grid touching a disagreeing rim is evaluated directly. In both modes
/// `samples` seeded grids are also evaluated directly through cell
/// composition.
pub fn check_interchange(d: &MackeyDoubleData, budget: &Budget) -> Section {
    let t = d.table().as_ref();
    let mut s = Section::new("interchange");
    let total = count_grids(d);
    let rims = count_rims(d);
    s.note("grids", total);
    s.note("rims", rims);

    let witness = |g: &Grid| -> Witness {
        vec![
            pair("alpha", g.alpha.display(t)),
            pair("beta", g.beta.display(t)),
            pair("gamma", g.gamma.display(t)),
            pair("delta", g.delta.display(t)),
        ]
    };
    let direct = |g: &Grid| -> Instance {
        match interchange(d, g) {
            Ok(sides) if sides.holds() => Instance::new(Vec::new(), true, Vec::new()),
            Ok(sides) => Instance::new(
                witness(g),
                false,
                vec![
                    pair("rows_first", sides.rows_first.1),
                    pair("columns_first", sides.columns_first.1),
                ],
            ),
            Err(e) => Instance::new(witness(g), false, vec![pair("error", e)]),
        }
    };

    if rims <= budget.rim_limit {
        s.note("mode", "exhaustive");
        let upper = upper_rims(d);
        let lower = lower_rims(d);
        let bad_upper = upper.iter().filter(|r| !r.agree).count();
        let bad_lower = lower.iter().filter(|r| !r.agree).count();
        s.note("disagreeing_rims", bad_upper + bad_lower);
        let mut failed: u128 = 0;
        if bad_upper + bad_lower > 0 {
            let mut by_corners: HashMap<(SubId, SubId), Vec<&Rim>> = HashMap::new();
            for l in &lower {
                by_corners
                    .entry((l.v[0].source(), l.h[1].target()))
                    .or_default()
                    .push(l);
            }
            for u in &upper {
                let corners = (u.h[0].source(), u.v[1].target());
                for &l in by_corners.get(&corners).map(Vec::as_slice).unwrap_or(&[]) {
                    if u.agree && l.agree {
                        continue;
                    }
                    let grids = fillings(d, u, l);
                    let Some(g) = grids.first() else { continue };
                    // one grid per rim pair decides all of them
                    let inst = direct(g);
                    if !inst.verdict {
                        failed += grids.len() as u128;
                        s.instances.push(inst);
                    }
                }
            }
        }
        s.evaluated = usize::try_from(total).unwrap_or(usize::MAX);
        s.failed = usize::try_from(failed).unwrap_or(usize::MAX);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut sampled = Section::new("sampled");
    for _ in 0..budget.samples {
        let g = random_grid(d, &mut rng);
        sampled.record(direct(&g), false);
    }
    s.note("seed", budget.seed);
    s.note("direct_samples", sampled.evaluated);
    s.note("direct_failures", sampled.failed);
    if rims > budget.rim_limit {
        s.note("mode", "sampled");
        s.evaluated = sampled.evaluated;
        s.failed = sampled.failed;
        s.instances = sampled.instances;
    } else if sampled.failed > 0 {
        // the factored verdict and direct evaluation must agree
        s.failed += sampled.failed;
        s.instances.extend(sampled.instances);
    }
    s
}

/// All grids with the given upper and lower rims.
fn fillings(d: &MackeyDoubleData, u: &Rim, l: &Rim) -> Vec<Grid> {
    let (hm, vm) = (d.hmors(), d.vmors());
    let ([f1, f2], [f3, f4]) = (u.h, u.v);
    let ([f7, f8], [f5, f6]) = (l.h, l.v);
    let mut out = Vec::new();
    if f1.source() != f5.source() || f4.target() != f8.target() {
        return out;
    }
    for &i11 in d.v_from(f1.target()) {
        let f11 = vm[i11];
        for &i12 in d.v_from(f11.target()) {
            let f12 = vm[i12];
            if f12.target() != f7.target() {
                continue;
            }
            for &i9 in d.h_between(f5.target(), f11.target()) {
                for &i10 in d.h_between(f11.target(), f3.target()) {
                    let (f9, f10) = (hm[i9], hm[i10]);
                    out.push(Grid {
                        alpha: CellBoundary {
                            top: f1,
                            left: f5,
                            right: f11,
                            bottom: f9,
                        },
                        beta: CellBoundary {
                            top: f2,
                            left: f11,
                            right: f3,
                            bottom: f10,
                        },
                        gamma: CellBoundary {
                            top: f9,
                            left: f6,
                            right: f12,
                            bottom: f7,
                        },
                        delta: CellBoundary {
                            top: f10,
                            left: f12,
                            right: f4,
                            bottom: f8,
                        },
                    });
                }
            }
        }
    }
    out
}

/// One instance of the containment `Im(t_{^xP}^{J,1} r_{P,x}^K) ⊆ Im(r_{J,1}^H t_K^{H,1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentInstance {
    pub p: SubId,
    pub inner: Lattice,
    pub outer: Lattice,
    pub holds: bool,
}

pub fn containment_at(
    d: &MackeyDoubleData,
    j: SubId,
    k: SubId,
    h: SubId,
    x: Elem,
) -> Result<ContainmentInstance, DoubleError> {
    let t = d.table();
    if !t.contains(h, x) {
        return Err(DoubleError::NotInSubgroup(
            t.group().name(x).to_string(),
            t.label(h).to_string(),
        ));
    }
    let b = CellBoundary::mackey_summand(t, j, k, h, x)?;
    let p = t.meet(t.conj_by_inverse(x, j), k);
    let inner = image_lattice(&(d.realize_h(&b.bottom) * d.realize_v(&b.left)));
    let outer = image_lattice(&(d.realize_v(&b.right) * d.realize_h(&b.top)));
    let holds = lattice_contains(&outer, &inner).expect("same ambient");
    Ok(ContainmentInstance {
        p,
        inner,
        outer,
        holds,
    })
}

fn triples(d: &MackeyDoubleData) -> Vec<(SubId, SubId, SubId)> {
    let t = d.table();
    let mut out = Vec::new();
    for h in t.ids() {
        for j in t.ids().filter(|&j| t.le(j, h)) {
            for k in t.ids().filter(|&k| t.le(k, h)) {
                out.push((j, k, h));
            }
        }
    }
    out
}

/// The containment at every `(H; J, K ≤ H; x)` with `x` the minimal element
/// of each double coset. Every instance is listed with its verdict.
pub fn check_containment(d: &MackeyDoubleData) -> Section {
    let t = d.table().as_ref();
    let g = t.group();
    let mut s = Section::new("containment");
    for (j, k, h) in triples(d) {
        for coset in t.double_cosets(j, h, k).expect("J, K <= H") {
            let x = coset[0];
            let c = containment_at(d, j, k, h, x).expect("valid instance");
            let names: Vec<&str> = coset.iter().map(|&y| g.name(y)).collect();
            s.record(
                Instance::new(
                    vec![
                        pair("J", t.label(j)),
                        pair("K", t.label(k)),
                        pair("H", t.label(h)),
                        pair("x", g.name(x)),
                        pair("coset", format!("{{{}}}", names.join(" "))),
                        pair("P", t.label(c.p)),
                    ],
                    c.holds,
                    vec![pair("inner", &c.inner), pair("outer", &c.outer)],
                ),
                true,
            );
        }
    }
    s
}

/// `t_H^{H,g} = r_{H,g}^H` as matrices for every `H` and `g`.
pub fn check_m6(d: &MackeyDoubleData) -> Section {
    let t = d.table().as_ref();
    let mut s = Section::new("m6");
    for h in t.ids() {
        for g in t.group().elements() {
            let left = d.realize_h(&HMor::new(t, h, h, g).expect("H <= H"));
            let right = d.realize_v(&VMor::new(t, h, h, g).expect("H <= H"));
            let ok = left == right;
            let details = if ok {
                Vec::new()
            } else {
                vec![pair("t", mat(left)), pair("r", mat(right))]
            };
            s.record(
                Instance::new(
                    vec![pair("H", t.label(h)), pair("g", t.group().name(g))],
                    ok,
                    details,
                ),
                false,
            );
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M7Decomposition {
    /// one cell per double-coset representative, in representative order
    pub cells: Vec<(Elem, Lattice)>,
    pub whole: Lattice,
    pub sum_equal: bool,
    pub direct: bool,
}

/// Compare `Im(r_{J,1}^H t_K^{H,1})` with the cells `α_{K,H,J,J^x∩K,J}^{1,1,x,1}`.
pub fn check_m7_decomposition(
    d: &MackeyDoubleData,
    j: SubId,
    k: SubId,
    h: SubId,
) -> Result<M7Decomposition, DoubleError> {
    let t = d.table();
    for s in [j, k] {
        if !t.le(s, h) {
            return Err(DoubleError::NotSubgroup(
                t.label(s).to_string(),
                t.label(h).to_string(),
            ));
        }
    }
    let e = Elem::IDENTITY;
    let top = HMor::new(t, k, h, e)?;
    let right = VMor::new(t, j, h, e)?;
    let whole = image_lattice(&(d.realize_v(&right) * d.realize_h(&top)));
    let mut cells = Vec::new();
    for x in t.double_coset_reps(j, h, k)? {
        let b = CellBoundary::mackey_summand(t, j, k, h, x)?;
        cells.push((x, d.cell_value(&b)));
    }
    let parts: Vec<Lattice> = cells.iter().map(|(_, l)| l.clone()).collect();
    let verdict = internal_direct_sum(&parts, &whole).expect("same ambient");
    Ok(M7Decomposition {
        cells,
        whole,
        sum_equal: verdict.sum_equal,
        direct: verdict.direct,
    })
}

/// The `(M.7)` decomposition on one triple, or on every triple when `only`
/// is `None`. An instance holds when the sum is equal and direct.
pub fn check_m7(
    d: &MackeyDoubleData,
    only: Option<(SubId, SubId, SubId)>,
) -> Result<Section, DoubleError> {
    let t = d.table().as_ref();
    let g = t.group();
    let list = match only {
        Some(x) => vec![x],
        None => triples(d),
    };
    let mut s = Section::new("m7");
    for (j, k, h) in list {
        let r = check_m7_decomposition(d, j, k, h)?;
        let mut details: Witness = r
            .cells
            .iter()
            .map(|(x, l)| (format!("cell[{}]", g.name(*x)), l.to_string()))
            .collect();
        details.push(pair("whole", &r.whole));
        details.push(pair("sum_equal", r.sum_equal));
        details.push(pair("direct", r.direct));
        s.record(
            Instance::new(
                vec![
                    pair("J", t.label(j)),
                    pair("K", t.label(k)),
                    pair("H", t.label(h)),
                ],
                r.sum_equal && r.direct,
                details,
            ),
            true,
        );
    }
    Ok(s)
}

/// Every cell value lies in both boundary images.
pub fn cell_lower_bound_holds(d: &MackeyDoubleData, b: &CellBoundary) -> bool {
    let v = d.cell_value(b);
    let lower = image_lattice(&(d.realize_h(&b.bottom) * d.realize_v(&b.left)));
    let upper = image_lattice(&(d.realize_v(&b.right) * d.realize_h(&b.top)));
    lattice_contains(&lower, &v).expect("same ambient")
        && lattice_contains(&upper, &v).expect("same ambient")
        && lattice_intersect(&lower, &upper).expect("same ambient") == v
}
