use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LatticeError;

/// A homomorphism `Z^cols -> Z^rows`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMap {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMap {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
    ) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMap {
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integer rows. All rows must have
    /// `cols` entries; `rows` may be empty.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMap {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors in `Z^rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &BigInt) {
        self.entries[r * self.cols + c] += value;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    /// `self + other`, shapes must agree.
    pub fn try_add(&self, other: &IntMap) -> Result<IntMap, LatticeError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LatticeError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }
}

/// `g * f`: apply `f` first, then `g`.
pub fn compose(g: &IntMap, f: &IntMap) -> Result<IntMap, LatticeError> {
    if g.cols != f.rows {
        return Err(LatticeError::Shape(format!(
            "cannot compose {}x{} after {}x{}",
            g.rows, g.cols, f.rows, f.cols
        )));
    }
    let mut out = IntMap::zeros(g.rows, f.cols);
    for i in 0..g.rows {
        for k in 0..g.cols {
            let a = g.get(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..f.cols {
                let b = f.get(k, j);
                if !b.is_zero() {
                    out.entries[i * f.cols + j] += a * b;
                }
            }
        }
    }
    Ok(out)
}

impl Mul for &IntMap {
    type Output = IntMap;

    /// Panics on a shape mismatch; use [`compose`] to get an error instead.
    fn mul(self, rhs: &IntMap) -> IntMap {
        compose(self, rhs).expect("matrix shapes agree")
    }
}

impl Add for &IntMap {
    type Output = IntMap;

    fn add(self, rhs: &IntMap) -> IntMap {
        self.try_add(rhs).expect("matrix shapes agree")
    }
}

impl fmt::Display for IntMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

/// Integers travel as JSON numbers when they fit in `i64`, otherwise as
/// decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum WireInt {
    Small(i64),
    Big(String),
}

impl WireInt {
    pub(crate) fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => WireInt::Small(v),
            None => WireInt::Big(x.to_string()),
        }
    }

    pub(crate) fn into_big(self) -> Result<BigInt, String> {
        match self {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<WireInt>,
}

impl Serialize for IntMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(WireInt::from_big).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WireMatrix::deserialize(d)?;
        let entries = w
            .entries
            .into_iter()
            .map(WireInt::into_big)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntMap::from_entries(w.rows, w.cols, entries).map_err(D::Error::custom)
    }
}
