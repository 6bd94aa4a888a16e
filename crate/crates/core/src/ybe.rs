//! The Yang-Baxter commutator and the normalized solver for `[[u, w, v]] = 0`.

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::operator::OperatorMatrix;
use crate::scalar::Field;
use crate::sixvertex::SixVertexMatrix;

/// `[[u, w, v]] = (u (x) I)(I (x) w)(v (x) I) - (I (x) v)(w (x) I)(I (x) u)`
/// on `V (x) V (x) V`.
pub fn yb_commutator<T: Field>(
    u: &OperatorMatrix<T>,
    w: &OperatorMatrix<T>,
    v: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>> {
    for m in [u, w, v] {
        if m.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: m.dim() });
        }
    }
    let id = OperatorMatrix::identity(2);
    let left = u.kron(&id).matmul(&id.kron(w))?.matmul(&v.kron(&id))?;
    let right = id.kron(v).matmul(&w.kron(&id))?.matmul(&id.kron(u))?;
    left.sub(&right)
}

/// Convenience wrapper over six-vertex matrices.
pub fn yb_commutator_sv<T: Field>(
    u: &SixVertexMatrix<T>,
    w: &SixVertexMatrix<T>,
    v: &SixVertexMatrix<T>,
) -> OperatorMatrix<T> {
    yb_commutator(&u.to_operator(), &w.to_operator(), &v.to_operator())
        .expect("six-vertex operators are 4x4")
}

pub fn ybe_holds<T: Field>(u: &SixVertexMatrix<T>, w: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> bool {
    yb_commutator_sv(u, w, v).is_zero()
}

fn require_a_weights<T: Field>(u: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> Result<()> {
    if [u.a1(), u.a2(), v.a1(), v.a2()].iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateInput("a-weights of u and v must be nonzero"));
    }
    Ok(())
}

/// Solvability criterion for `[[u, w, v]] = 0`, cross-multiplied:
/// `N(u) b1(v) a2(v) = N(v) b1(u) a1(u)` and
/// `N(u) b2(v) a1(v) = N(v) b2(u) a2(u)`.
pub fn wcond_holds<T: Field>(u: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> Result<bool> {
    require_a_weights(u, v)?;
    let (nu, nv) = (u.n_value(), v.n_value());
    let first = nu.clone() * v.b1().clone() * v.a2().clone() == nv.clone() * u.b1().clone() * u.a1().clone();
    let second = nu * v.b2().clone() * v.a1().clone() == nv * u.b2().clone() * u.a2().clone();
    Ok(first && second)
}

/// The unique normalized `w` with `[[u, w, v]] = 0`, i.e. the one with
/// `c1(w) = c1(u) c1(v)` and `c2(w) = c2(u) c2(v)`.
pub fn solve_w<T: Field>(u: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> Result<SixVertexMatrix<T>> {
    if !wcond_holds(u, v)? {
        return Err(Error::NotComposable);
    }
    let us = u.star()?;
    compose_weights(u, us.a1(), us.a2(), v)
}

/// Normalized composition weights given the (possibly extended) star
/// a-weights of `u`. Shared by the matrix solver and the groupoid layer.
pub(crate) fn compose_weights<T: Field>(
    u: &SixVertexMatrix<T>,
    a1_star_u: &T,
    a2_star_u: &T,
    v: &SixVertexMatrix<T>,
) -> Result<SixVertexMatrix<T>> {
    let c = |x: &T| x.clone();
    SixVertexMatrix::new(
        c(u.a1()) * c(v.a1()) - c(u.b2()) * c(v.b1()),
        c(u.a2()) * c(v.a2()) - c(u.b1()) * c(v.b2()),
        c(a1_star_u) * c(v.b1()) + c(u.b1()) * c(v.a1()),
        c(a2_star_u) * c(v.b2()) + c(u.b2()) * c(v.a2()),
        c(u.c1()) * c(v.c1()),
        c(u.c2()) * c(v.c2()),
    )
}

/// Outcome of solving the linearized Yang-Baxter system directly.
#[derive(Clone, Debug, PartialEq)]
pub enum WSolution<T> {
    /// One-dimensional solution space; the normalized representative.
    Ray(SixVertexMatrix<T>),
    /// No solution with nonzero c-weights.
    Absent,
    /// Solution space of dimension two or more; a basis of weight vectors
    /// `(a1, a2, b1, b2, c1, c2)`.
    MultiDimensional(Vec<[T; 6]>),
}

/// Weight slots of a six-vertex matrix in `(a1, a2, b1, b2, c1, c2)` order.
const WEIGHT_SLOTS: [(usize, usize); 6] = [(0, 0), (3, 3), (1, 2), (2, 1), (1, 1), (2, 2)];

/// Solves `[[u, w, v]] = 0` for `w` without the closed form.
///
/// The commutator is linear in `w`, so evaluating it on the six basis
/// matrices gives a 64 x 6 system whose nontrivial rows are the fourteen
/// Yang-Baxter equations. Its nullspace is the full solution space.
pub fn brute_force_w<T: Field>(u: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> WSolution<T> {
    let (uo, vo) = (u.to_operator(), v.to_operator());
    let columns: Vec<OperatorMatrix<T>> = WEIGHT_SLOTS
        .iter()
        .map(|&slot| {
            let mut e = OperatorMatrix::zeros(4);
            e[slot] = T::one();
            yb_commutator(&uo, &e, &vo).expect("4x4 operands")
        })
        .collect();
    let system: Vec<Vec<T>> = (0..8)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .map(|ij| columns.iter().map(|col| col[ij].clone()).collect())
        .collect();
    let basis = nullspace(&system, 6);

    let c_vanishes = |k: usize| basis.iter().all(|b| b[k].is_zero());
    if basis.is_empty() || c_vanishes(4) || c_vanishes(5) {
        return WSolution::Absent;
    }
    if basis.len() > 1 {
        return WSolution::MultiDimensional(
            basis.into_iter().map(|b| <[T; 6]>::try_from(b).expect("six unknowns")).collect(),
        );
    }
    let g = &basis[0];
    let k = u.c1().clone() * v.c1().clone() / g[4].clone();
    let w: [T; 6] = std::array::from_fn(|i| g[i].clone() * k.clone());
    match SixVertexMatrix::from_array(w) {
        Ok(w) => WSolution::Ray(w),
        Err(_) => WSolution::Absent,
    }
}
