//! Dense square operators on tensor powers of `V = C^2`.
//!
//! Basis order is fixed once: `e_{a+1} (x) e_{b+1}` sits at index `2a + b`,
//! and for longer tensor products the first factor is the most significant
//! bit.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Field> OperatorMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "operator dimension must be a power of two");
        Self { dim, entries: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds an operator from row-major rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Parse(format!("operator dimension {dim} is not a power of two")));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    /// Position and value of the first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &T)> {
        self.entries
            .iter()
            .position(|x| !x.is_zero())
            .map(|k| ((k / self.dim, k % self.dim), &self.entries[k]))
    }

    /// Kronecker product `self (x) rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let dim = self.dim * rhs.dim;
        let mut out = Self::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.dim {
                    for l in 0..rhs.dim {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.dim + k, j * rhs.dim + l)] = a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix product; zero entries are skipped, which keeps the sparse
    /// six-vertex embeddings cheap.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let acc = std::mem::replace(&mut out[(i, j)], T::zero());
                        out[(i, j)] = acc + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Commutator `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.matmul(rhs)?.sub(&rhs.matmul(self)?)
    }
}

impl<T> Index<(usize, usize)> for OperatorMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for OperatorMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.dim + j]
    }
}

impl<T: fmt::Display> fmt::Display for OperatorMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
