//! Six-vertex matrices, the regions they fall into, and the star and object
//! maps.
//!
//! A six-vertex matrix acts on `V (x) V` as
//!
//! ```text
//! | a1             |
//! |     c1  b1     |
//! |     b2  c2     |
//! |             a2 |
//! ```
//!
//! with `c1, c2` nonzero.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::OperatorMatrix;
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SixVertexMatrix<T> {
    a1: T,
    a2: T,
    b1: T,
    b2: T,
    c1: T,
    c2: T,
}

impl<T: Field> SixVertexMatrix<T> {
    /// Weights in the order `(a1, a2, b1, b2, c1, c2)`.
    pub fn new(a1: T, a2: T, b1: T, b2: T, c1: T, c2: T) -> Result<Self> {
        if c1.is_zero() || c2.is_zero() {
            return Err(Error::CZero);
        }
        Ok(Self { a1, a2, b1, b2, c1, c2 })
    }

    pub fn from_ints(w: [i64; 6]) -> Result<Self> {
        let [a1, a2, b1, b2, c1, c2] = w.map(T::from_int);
        Self::new(a1, a2, b1, b2, c1, c2)
    }

    pub fn from_array(w: [T; 6]) -> Result<Self> {
        let [a1, a2, b1, b2, c1, c2] = w;
        Self::new(a1, a2, b1, b2, c1, c2)
    }

    /// `I_{V (x) V}`.
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self { a1: o.clone(), a2: o.clone(), b1: z.clone(), b2: z, c1: o.clone(), c2: o }
    }

    pub fn a1(&self) -> &T {
        &self.a1
    }
    pub fn a2(&self) -> &T {
        &self.a2
    }
    pub fn b1(&self) -> &T {
        &self.b1
    }
    pub fn b2(&self) -> &T {
        &self.b2
    }
    pub fn c1(&self) -> &T {
        &self.c1
    }
    pub fn c2(&self) -> &T {
        &self.c2
    }

    pub fn weights(&self) -> [&T; 6] {
        [&self.a1, &self.a2, &self.b1, &self.b2, &self.c1, &self.c2]
    }

    pub fn to_array(&self) -> [T; 6] {
        self.weights().map(Clone::clone)
    }

    /// `N(u) = a1 a2 + b1 b2 - c1 c2`.
    pub fn n_value(&self) -> T {
        self.a1.clone() * self.a2.clone() + self.b1.clone() * self.b2.clone()
            - self.c1.clone() * self.c2.clone()
    }

    /// Determinant of the middle block, `c1 c2 - b1 b2`.
    pub fn det_mid(&self) -> T {
        self.c1.clone() * self.c2.clone() - self.b1.clone() * self.b2.clone()
    }

    pub fn is_free_fermionic(&self) -> bool {
        self.n_value().is_zero()
    }

    /// Invertible as an operator on `V (x) V`.
    pub fn is_invertible(&self) -> bool {
        !self.a1.is_zero() && !self.a2.is_zero() && !self.det_mid().is_zero()
    }

    /// Multiplies every weight by `k`.
    pub fn scale(&self, k: &T) -> Result<Self> {
        Self::from_array(self.to_array().map(|x| x * k.clone()))
    }

    pub fn classify(&self) -> Region {
        Region::of(self)
    }

    /// Matrix-level star: `u* = det(B(u)) u^{-1}` on invertible `u`,
    /// extended to all `u` with `a1 a2 != 0`.
    pub fn star(&self) -> Result<Self> {
        if self.a1.is_zero() || self.a2.is_zero() {
            return Err(Error::DegenerateInput("star needs a1(u) and a2(u) nonzero"));
        }
        let det = self.det_mid();
        Self::new(
            det.clone() / self.a1.clone(),
            det / self.a2.clone(),
            -self.b1.clone(),
            -self.b2.clone(),
            self.c2.clone(),
            self.c1.clone(),
        )
    }

    /// `(Delta(u), Delta(u*))` for `u` with `a1, a2, b1, b2, N` nonzero.
    pub fn delta_pair(&self) -> Result<(ObjectLabel<T>, ObjectLabel<T>)> {
        if [&self.a1, &self.a2, &self.b1, &self.b2].iter().any(|x| x.is_zero()) {
            return Err(Error::DegenerateInput("object map needs a1, a2, b1, b2 nonzero"));
        }
        let n = self.n_value();
        if n.is_zero() {
            return Err(Error::ZeroN);
        }
        let delta = ObjectLabel::new(
            n.clone() / (self.a1.clone() * self.b1.clone()),
            n.clone() / (self.a2.clone() * self.b2.clone()),
        )?;
        let delta_star = ObjectLabel::new(
            n.clone() / (self.a2.clone() * self.b1.clone()),
            n / (self.a1.clone() * self.b2.clone()),
        )?;
        Ok((delta, delta_star))
    }

    /// The 4x4 operator in the basis `e1e1, e1e2, e2e1, e2e2`.
    pub fn to_operator(&self) -> OperatorMatrix<T> {
        let mut m = OperatorMatrix::zeros(4);
        m[(0, 0)] = self.a1.clone();
        m[(1, 1)] = self.c1.clone();
        m[(1, 2)] = self.b1.clone();
        m[(2, 1)] = self.b2.clone();
        m[(2, 2)] = self.c2.clone();
        m[(3, 3)] = self.a2.clone();
        m
    }

    /// Inverse of [`to_operator`](Self::to_operator); rejects operators
    /// outside the six-vertex pattern.
    pub fn from_operator(m: &OperatorMatrix<T>) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: m.dim() });
        }
        const SLOTS: [(usize, usize); 6] = [(0, 0), (3, 3), (1, 2), (2, 1), (1, 1), (2, 2)];
        for i in 0..4 {
            for j in 0..4 {
                if !SLOTS.contains(&(i, j)) && !m[(i, j)].is_zero() {
                    return Err(Error::InvalidElement(format!(
                        "entry ({i},{j}) lies outside the six-vertex pattern"
                    )));
                }
            }
        }
        Self::from_array(SLOTS.map(|ij| m[ij].clone()))
    }
}

impl<T: fmt::Display> fmt::Display for SixVertexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a1={}, a2={}, b1={}, b2={}, c1={}, c2={})",
            self.a1, self.a2, self.b1, self.b2, self.c1, self.c2
        )
    }
}

/// Object label `(d1, d2)`, an element of `(C^x)^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObjectLabel<T> {
    d1: T,
    d2: T,
}

impl<T: Field> ObjectLabel<T> {
    pub fn new(d1: T, d2: T) -> Result<Self> {
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::ZeroLabel);
        }
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> &T {
        &self.d1
    }

    pub fn d2(&self) -> &T {
        &self.d2
    }

    /// Block invariant `d1 d2`.
    pub fn block(&self) -> T {
        self.d1.clone() * self.d2.clone()
    }
}

impl<T: fmt::Display> fmt::Display for ObjectLabel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// Predicates of the region table, evaluated exactly.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RegionFlags {
    pub a1_nonzero: bool,
    pub a2_nonzero: bool,
    pub b1_nonzero: bool,
    pub b2_nonzero: bool,
    pub det_b_nonzero: bool,
    pub n_nonzero: bool,
    /// `a1 a2 - c1 c2 = 0`
    pub a_product_balanced: bool,
    /// `b1 b2 - c1 c2 = 0`
    pub b_product_balanced: bool,
}

/// Which piece of `Omega-bar = Omega_circ u Omega_b u Omega_a u Omega_B`
/// a matrix lies in. The pieces are pairwise disjoint.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
pub enum OmegaRegion {
    #[serde(rename = "Omega_circ")]
    OmegaCirc,
    /// `Omega_B`: non-free-fermionic, singular middle block.
    #[serde(rename = "Omega_B")]
    OmegaBlock,
    /// `Omega_b`: `b1 = b2 = 0`, `a1 a2 = c1 c2`.
    #[serde(rename = "Omega_b")]
    OmegaSmallB,
    /// `Omega_a`: `a1 = a2 = 0`, `b1 b2 = c1 c2`.
    #[serde(rename = "Omega_a")]
    OmegaSmallA,
    #[serde(rename = "OutsideOmegaBar")]
    Outside,
}

impl OmegaRegion {
    pub fn name(self) -> &'static str {
        match self {
            Self::OmegaCirc => "Omega_circ",
            Self::OmegaBlock => "Omega_B",
            Self::OmegaSmallB => "Omega_b",
            Self::OmegaSmallA => "Omega_a",
            Self::Outside => "OutsideOmegaBar",
        }
    }

    /// `Omega = Omega_circ u Omega_B`, where the object map is regular.
    pub fn in_omega(self) -> bool {
        matches!(self, Self::OmegaCirc | Self::OmegaBlock)
    }

    pub fn in_omega_bar(self) -> bool {
        self != Self::Outside
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Region {
    pub flags: RegionFlags,
    pub omega: OmegaRegion,
}

impl Region {
    pub fn of<T: Field>(u: &SixVertexMatrix<T>) -> Self {
        let cc = u.c1.clone() * u.c2.clone();
        let flags = RegionFlags {
            a1_nonzero: !u.a1.is_zero(),
            a2_nonzero: !u.a2.is_zero(),
            b1_nonzero: !u.b1.is_zero(),
            b2_nonzero: !u.b2.is_zero(),
            det_b_nonzero: !u.det_mid().is_zero(),
            n_nonzero: !u.n_value().is_zero(),
            a_product_balanced: (u.a1.clone() * u.a2.clone() - cc.clone()).is_zero(),
            b_product_balanced: (u.b1.clone() * u.b2.clone() - cc).is_zero(),
        };
        Self { flags, omega: Self::tag(&flags) }
    }

    fn tag(f: &RegionFlags) -> OmegaRegion {
        let all_ab = f.a1_nonzero && f.a2_nonzero && f.b1_nonzero && f.b2_nonzero;
        if all_ab && f.n_nonzero && f.det_b_nonzero {
            OmegaRegion::OmegaCirc
        } else if all_ab && f.n_nonzero {
            OmegaRegion::OmegaBlock
        } else if f.a1_nonzero && f.a2_nonzero && !f.b1_nonzero && !f.b2_nonzero && f.a_product_balanced
        {
            OmegaRegion::OmegaSmallB
        } else if f.b1_nonzero && f.b2_nonzero && !f.a1_nonzero && !f.a2_nonzero && f.b_product_balanced
        {
            OmegaRegion::OmegaSmallA
        } else {
            OmegaRegion::Outside
        }
    }

    /// `S^x`: invertible six-vertex matrices.
    pub fn in_s_times(&self) -> bool {
        self.flags.a1_nonzero && self.flags.a2_nonzero && self.flags.det_b_nonzero
    }

    /// `S^bullet`: all six weights nonzero.
    pub fn in_s_bullet(&self) -> bool {
        let f = &self.flags;
        f.a1_nonzero && f.a2_nonzero && f.b1_nonzero && f.b2_nonzero
    }

    /// `S^circ = S^x n S^bullet`.
    pub fn in_s_circ(&self) -> bool {
        self.in_s_bullet() && self.flags.det_b_nonzero
    }

    pub fn is_free_fermionic(&self) -> bool {
        !self.flags.n_nonzero
    }
}
