use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IntMap, LatticeError};

/// A sublattice of `Z^ambient`, stored as its column Hermite normal form.
///
/// Column `j` of the basis has its pivot in row `p_j`, with `p_0 < p_1 < ...`,
/// zeros above the pivot and a positive pivot entry. In each pivot row the
/// entries of the earlier columns lie in `[0, pivot)`. The form is unique, so
/// two lattices are equal exactly when their fields are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMap,
}

/// Column-reduce `cols` on rows `0..pivot_rows` with unimodular column
/// operations. Rows at or beyond `pivot_rows` are carried along untouched by
/// the pivot search. Returns the rank: columns `0..rank` are in Hermite form
/// on the pivot rows and the remaining columns vanish there.
fn column_echelon(cols: &mut [Vec<BigInt>], pivot_rows: usize) -> usize {
    let m = cols.len();
    let mut c = 0;
    for i in 0..pivot_rows {
        if c == m {
            break;
        }
        loop {
            let best = (c..m)
                .filter(|&j| !cols[j][i].is_zero())
                .min_by(|&a, &b| cols[a][i].abs().cmp(&cols[b][i].abs()));
            let Some(best) = best else { break };
            cols.swap(c, best);
            let mut cleared = true;
            for j in c + 1..m {
                if cols[j][i].is_zero() {
                    continue;
                }
                let q = cols[j][i].div_floor(&cols[c][i]);
                sub_multiple(cols, j, c, &q);
                if !cols[j][i].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if cols[c][i].is_zero() {
            continue;
        }
        if cols[c][i].is_negative() {
            for x in cols[c].iter_mut() {
                *x = -&*x;
            }
        }
        for j in 0..c {
            let q = cols[j][i].div_floor(&cols[c][i]);
            if !q.is_zero() {
                sub_multiple(cols, j, c, &q);
            }
        }
        c += 1;
    }
    c
}

/// `cols[target] -= q * cols[source]`
fn sub_multiple(cols: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (lo, hi) = cols.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

impl Lattice {
    /// The lattice spanned by the given vectors of `Z^ambient`.
    pub fn from_generators(
        ambient: usize,
        generators: &[Vec<BigInt>],
    ) -> Result<Self, LatticeError> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(LatticeError::Ambient(ambient, g.len()));
        }
        let mut cols: Vec<Vec<BigInt>> = generators.to_vec();
        let rank = column_echelon(&mut cols, ambient);
        cols.truncate(rank);
        Ok(Lattice {
            ambient,
            basis: IntMap::from_columns(ambient, &cols),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMap::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMap::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMap {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    fn check_ambient(&self, other: &Lattice) -> Result<(), LatticeError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LatticeError::Ambient(self.ambient, other.ambient))
        }
    }

    fn pivots(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|j| {
                (0..self.ambient)
                    .find(|&i| !self.basis.get(i, j).is_zero())
                    .expect("basis columns are nonzero")
            })
            .collect()
    }

    /// Whether `v` is an integer combination of the basis.
    pub fn contains_vector(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        if v.len() != self.ambient {
            return Err(LatticeError::Ambient(self.ambient, v.len()));
        }
        let mut rest = v.to_vec();
        let pivots = self.pivots();
        let mut row = 0;
        for (j, &p) in pivots.iter().enumerate() {
            if rest[row..p].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, r) = rest[p].div_rem(self.basis.get(p, j));
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (i, x) in rest.iter_mut().enumerate().skip(p) {
                    *x -= &q * self.basis.get(i, j);
                }
            }
            row = p + 1;
        }
        Ok(rest[row..].iter().all(Zero::is_zero))
    }
}

/// `Im(f)`
pub fn image_lattice(f: &IntMap) -> Lattice {
    Lattice::from_generators(f.rows(), &f.columns()).expect("columns have length rows")
}

/// `ker(f)` as a sublattice of `Z^cols`.
pub fn kernel_lattice(f: &IntMap) -> Lattice {
    let n = f.rows();
    let m = f.cols();
    let mut cols: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut c = f.column(j);
            c.extend((0..m).map(|i| BigInt::from(u8::from(i == j))));
            c
        })
        .collect();
    let rank = column_echelon(&mut cols, n);
    let kernel: Vec<Vec<BigInt>> = cols[rank..].iter().map(|c| c[n..].to_vec()).collect();
    Lattice::from_generators(m, &kernel).expect("kernel vectors have length cols")
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Result<Lattice, LatticeError> {
    a.check_ambient(b)?;
    let mut gens = a.basis.columns();
    gens.extend(b.basis.columns());
    Lattice::from_generators(a.ambient, &gens)
}

/// Sum of a family of lattices in `Z^ambient`; the empty family sums to zero.
pub fn lattice_sum_all<'a>(
    ambient: usize,
    parts: impl IntoIterator<Item = &'a Lattice>,
) -> Result<Lattice, LatticeError> {
    let mut gens = Vec::new();
    for p in parts {
        if p.ambient != ambient {
            return Err(LatticeError::Ambient(ambient, p.ambient));
        }
        gens.extend(p.basis.columns());
    }
    Lattice::from_generators(ambient, &gens)
}

/// `a ∩ b`, through the integer kernel of the stacked system `[B_a | -B_b]`.
pub fn lattice_intersect(a: &Lattice, b: &Lattice) -> Result<Lattice, LatticeError> {
    a.check_ambient(b)?;
    let n = a.ambient;
    let (ra, rb) = (a.rank(), b.rank());
    let mut stacked = IntMap::zeros(n, ra + rb);
    for i in 0..n {
        for j in 0..ra {
            stacked.set(i, j, a.basis.get(i, j).clone());
        }
        for j in 0..rb {
            stacked.set(i, ra + j, -b.basis.get(i, j));
        }
    }
    let kernel = kernel_lattice(&stacked);
    let gens: Vec<Vec<BigInt>> = kernel
        .basis
        .columns()
        .into_iter()
        .map(|k| a.basis.apply(&k[..ra]))
        .collect();
    Lattice::from_generators(n, &gens)
}

/// Does `outer ⊇ inner`?
pub fn lattice_contains(outer: &Lattice, inner: &Lattice) -> Result<bool, LatticeError> {
    outer.check_ambient(inner)?;
    for v in inner.basis.columns() {
        if !outer.contains_vector(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectSumVerdict {
    pub sum_equal: bool,
    pub direct: bool,
}

/// Is `whole` the internal direct sum of `parts`? The two halves of the
/// question are answered separately.
pub fn internal_direct_sum(
    parts: &[Lattice],
    whole: &Lattice,
) -> Result<DirectSumVerdict, LatticeError> {
    let n = whole.ambient;
    let total = lattice_sum_all(n, parts)?;
    let mut direct = true;
    for i in 0..parts.len() {
        let others = lattice_sum_all(
            n,
            parts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p),
        )?;
        if !lattice_intersect(&parts[i], &others)?.is_zero() {
            direct = false;
            break;
        }
    }
    Ok(DirectSumVerdict {
        sum_equal: total == *whole,
        direct,
    })
}

impl fmt::Display for Lattice {
    /// Rank-one ambients print as `0`, `Z`, `3Z`; otherwise the HNF basis
    /// columns are listed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ambient == 1 {
            return match self.rank() {
                0 => f.write_str("0"),
                _ => {
                    let d = self.basis.get(0, 0);
                    if d == &BigInt::from(1) {
                        f.write_str("Z")
                    } else {
                        write!(f, "{d}Z")
                    }
                }
            };
        }
        if self.is_zero() {
            return write!(f, "0 in Z^{}", self.ambient);
        }
        f.write_str("span{")?;
        for j in 0..self.rank() {
            if j > 0 {
                f.write_str(",")?;
            }
            let col: Vec<String> = self.basis.column(j).iter().map(BigInt::to_string).collect();
            write!(f, "({})", col.join(","))?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct WireLattice {
    ambient: usize,
    basis: IntMap,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireLattice {
            ambient: self.ambient,
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    /// Re-normalizes, so any generating matrix is accepted.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = WireLattice::deserialize(d)?;
        if w.basis.rows() != w.ambient {
            return Err(D::Error::custom("basis rows must equal ambient"));
        }
        Lattice::from_generators(w.ambient, &w.basis.columns()).map_err(D::Error::custom)
    }
}
