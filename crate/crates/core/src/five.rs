//! The five-vertex groupoid: matrices with `b2 = 0`, blown up over the
//! locus `b1 = 0` by a single label `eps` with `N = a1 b1 eps`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, SampleScalar};
use crate::sixvertex::SixVertexMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FvRegion {
    /// `b1 != 0` and `N != 0`.
    Phi,
    /// `b1 = 0` and `a1 a2 = c1 c2`.
    PhiB,
    Outside,
}

pub fn fv_region<T: Field>(v: &SixVertexMatrix<T>) -> FvRegion {
    if !v.b2().is_zero() || v.a1().is_zero() || v.a2().is_zero() {
        return FvRegion::Outside;
    }
    match (v.b1().is_zero(), v.n_value().is_zero()) {
        (false, false) => FvRegion::Phi,
        (true, true) => FvRegion::PhiB,
        _ => FvRegion::Outside,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FvElement<T> {
    matrix: SixVertexMatrix<T>,
    eps: T,
}

impl<T: Field> FvElement<T> {
    pub fn new(matrix: SixVertexMatrix<T>, eps: T) -> Result<Self> {
        if eps.is_zero() {
            return Err(Error::ZeroLabel);
        }
        if fv_region(&matrix) == FvRegion::Outside {
            return Err(Error::InvalidElement(format!("{matrix} lies outside the five-vertex closure")));
        }
        if matrix.n_value() != matrix.a1().clone() * matrix.b1().clone() * eps.clone() {
            return Err(Error::InvalidElement(format!("label {eps} does not satisfy N = a1 b1 eps for {matrix}")));
        }
        Ok(Self { matrix, eps })
    }

    /// `(v, N / (a1 b1))` for `v` in `Phi`.
    pub fn lift(v: SixVertexMatrix<T>) -> Result<Self> {
        if fv_region(&v) != FvRegion::Phi {
            return Err(Error::NotInPhi);
        }
        let eps = v.n_value() / (v.a1().clone() * v.b1().clone());
        Self::new(v, eps)
    }

    /// Any nonzero label over `v` in `Phi_b`.
    pub fn boundary(v: SixVertexMatrix<T>, eps: T) -> Result<Self> {
        if fv_region(&v) != FvRegion::PhiB {
            return Err(Error::NotInPhiB);
        }
        Self::new(v, eps)
    }

    pub fn idempotent(eps: T) -> Result<Self> {
        Self::boundary(SixVertexMatrix::identity(), eps)
    }

    pub fn matrix(&self) -> &SixVertexMatrix<T> {
        &self.matrix
    }

    pub fn eps(&self) -> &T {
        &self.eps
    }

    pub fn region(&self) -> FvRegion {
        fv_region(&self.matrix)
    }

    /// Label of the star, `(a1/a2) eps`.
    pub fn eps_star(&self) -> T {
        self.matrix.a1().clone() / self.matrix.a2().clone() * self.eps.clone()
    }

    fn c_product(&self) -> T {
        self.matrix.c1().clone() * self.matrix.c2().clone()
    }

    pub fn star(&self) -> Self {
        let v = &self.matrix;
        let cc = self.c_product();
        let m = SixVertexMatrix::new(
            cc.clone() / v.a1().clone(),
            cc / v.a2().clone(),
            -v.b1().clone(),
            T::zero(),
            v.c2().clone(),
            v.c1().clone(),
        )
        .expect("c-weights stay nonzero");
        Self::new(m, self.eps_star()).expect("star preserves the groupoid")
    }

    pub fn inverse(&self) -> Self {
        let s = self.star();
        let k = T::one() / self.c_product();
        Self::new(s.matrix.scale(&k).expect("nonzero scale"), s.eps).expect("label is scale invariant")
    }

    pub fn is_composable(&self, rhs: &Self) -> bool {
        self.eps == rhs.eps_star()
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if !self.is_composable(rhs) {
            return Err(Error::ObjectMismatch { left: self.eps.to_string(), right: rhs.eps_star().to_string() });
        }
        let (u, v) = (&self.matrix, &rhs.matrix);
        let a1_star = self.c_product() / u.a1().clone();
        let b1 = u.b1().clone() * v.a1().clone() + a1_star * v.b1().clone();
        let w = SixVertexMatrix::new(
            u.a1().clone() * v.a1().clone(),
            u.a2().clone() * v.a2().clone(),
            b1,
            T::zero(),
            u.c1().clone() * v.c1().clone(),
            u.c2().clone() * v.c2().clone(),
        )?;
        Self::new(w, rhs.eps.clone())
    }
}

impl<T: fmt::Display> fmt::Display for FvElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; eps={}]", self.matrix, self.eps)
    }
}

/// Seeded sampler for five-vertex fibers, pinning `eps` (source) or
/// `eps*` (target).
#[derive(Clone, Debug)]
pub struct FvSampler {
    rng: ChaCha8Rng,
    max_retries: usize,
}

impl FvSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), max_retries: 64 }
    }

    pub fn scalar<T: SampleScalar>(&mut self) -> T {
        T::sample_nonzero(&mut self.rng)
    }

    /// Element of `Phi` (or `Phi_b` when `boundary`) whose source label
    /// (`target == false`) or star label equals `t`.
    pub fn draw<T: SampleScalar>(&mut self, t: &T, target: bool, boundary: bool) -> Result<FvElement<T>> {
        for _ in 0..self.max_retries {
            let (a1, a2, c1): (T, T, T) = (self.scalar(), self.scalar(), self.scalar());
            let eps = if target { t.clone() * a2.clone() / a1.clone() } else { t.clone() };
            let attempt = if boundary {
                let c2 = a1.clone() * a2.clone() / c1.clone();
                SixVertexMatrix::new(a1, a2, T::zero(), T::zero(), c1, c2).and_then(|m| FvElement::boundary(m, eps))
            } else {
                let b1: T = self.scalar();
                let n = eps.clone() * a1.clone() * b1.clone();
                let c2 = (a1.clone() * a2.clone() - n) / c1.clone();
                SixVertexMatrix::new(a1, a2, b1, T::zero(), c1, c2).and_then(FvElement::lift)
            };
            if let Ok(e) = attempt {
                return Ok(e);
            }
        }
        Err(Error::ExhaustedRetries(self.max_retries))
    }

    /// Either stratum, boundary with probability 1/4.
    pub fn draw_any<T: SampleScalar>(&mut self, t: &T, target: bool) -> Result<FvElement<T>> {
        let boundary = self.rng.random_ratio(1, 4);
        self.draw(t, target, boundary)
    }
}
