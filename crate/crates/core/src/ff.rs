//! The free-fermionic group `GL(2) x GL(1)` and its embedding into
//! free-fermionic six-vertex matrices.
//!
//! An element is a pair `(g, c1)` with `g = [[a1, -b2], [b1, a2]]`. The
//! embedding sets `c2 = (a1 a2 + b1 b2) / c1 = det(g) / c1`, so the image
//! satisfies `N = 0` and composition is plain matrix multiplication.

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::sixvertex::SixVertexMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FfElement<T> {
    g: [[T; 2]; 2],
    c1: T,
}

fn det2<T: Field>(g: &[[T; 2]; 2]) -> T {
    g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone()
}

fn mul2<T: Field>(x: &[[T; 2]; 2], y: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone())
    })
}

impl<T: Field> FfElement<T> {
    /// `det(g) = a1 a2 + b1 b2` equals `c1 c2` of the embedded matrix, so a
    /// singular `g` is reported as [`Error::DerivedCZero`].
    pub fn new(g: [[T; 2]; 2], c1: T) -> Result<Self> {
        if c1.is_zero() {
            return Err(Error::CZero);
        }
        if det2(&g).is_zero() {
            return Err(Error::DerivedCZero);
        }
        Ok(Self { g, c1 })
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self { g: [[o.clone(), z.clone()], [z, o.clone()]], c1: o }
    }

    pub fn g(&self) -> &[[T; 2]; 2] {
        &self.g
    }

    pub fn c1(&self) -> &T {
        &self.c1
    }

    /// The free-fermionic six-vertex matrix `R_ff(g, c1)`.
    pub fn embed(&self) -> SixVertexMatrix<T> {
        let [[a1, neg_b2], [b1, a2]] = self.g.clone();
        let c2 = det2(&self.g) / self.c1.clone();
        SixVertexMatrix::new(a1, a2, b1, -neg_b2, self.c1.clone(), c2)
            .expect("c1 and det(g) are nonzero by construction")
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn from_matrix(u: &SixVertexMatrix<T>) -> Result<Self> {
        if !u.is_free_fermionic() {
            return Err(Error::NotFreeFermionic);
        }
        let g = [[u.a1().clone(), -u.b2().clone()], [u.b1().clone(), u.a2().clone()]];
        Self::new(g, u.c1().clone())
    }

    /// Group law: `(g, c1)(h, d1) = (gh, c1 d1)`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self { g: mul2(&self.g, &rhs.g), c1: self.c1.clone() * rhs.c1.clone() }
    }

    pub fn inverse(&self) -> Self {
        let d = det2(&self.g);
        let [[a, b], [c, e]] = self.g.clone();
        let g = [[e / d.clone(), -b / d.clone()], [-c / d.clone(), a / d]];
        Self { g, c1: T::one() / self.c1.clone() }
    }
}

fn family<T: Field>(q1: &T, q2: &T, z1: &T, z2: &T, w: &T, a2: T) -> Result<SixVertexMatrix<T>> {
    if [q1, q2, z1, z2, w].iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateInput("weight-family parameters must be nonzero"));
    }
    if q1 == q2 {
        return Err(Error::CZero);
    }
    let c = |x: &T| x.clone();
    let dq = c(q1) - c(q2);
    let dz = c(z1) - c(z2);
    SixVertexMatrix::new(
        c(q1) * c(z1) - c(q2) * c(z2),
        a2,
        c(q1) * dz.clone(),
        c(q2) * dz,
        c(z1) * c(w) * dq.clone(),
        c(z2) / c(w) * dq,
    )
}

/// `R^cf_{q1,q2}(z1, z2, w)`, the field-free family (`a1 = a2`).
pub fn weights_cf<T: Field>(q1: &T, q2: &T, z1: &T, z2: &T, w: &T) -> Result<SixVertexMatrix<T>> {
    let a = q1.clone() * z1.clone() - q2.clone() * z2.clone();
    family(q1, q2, z1, z2, w, a)
}

/// `R^ff_{q1,q2}(z1, z2, w)`, the free-fermionic family: as `R^cf` but
/// with `a2 = q1 z2 - q2 z1`.
pub fn weights_ff<T: Field>(q1: &T, q2: &T, z1: &T, z2: &T, w: &T) -> Result<SixVertexMatrix<T>> {
    let a2 = q1.clone() * z2.clone() - q2.clone() * z1.clone();
    family(q1, q2, z1, z2, w, a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SampleScalar;
    use crate::ybe::{solve_w, ybe_holds};
    use crate::Scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn el(g: [[i64; 2]; 2], c1: i64) -> FfElement<Scalar> {
        FfElement::new(g.map(|r| r.map(Scalar::from_int)), s(c1, 1)).unwrap()
    }

    fn m(w: [i64; 6]) -> SixVertexMatrix<Scalar> {
        SixVertexMatrix::from_ints(w).unwrap()
    }

    fn params(v: [i64; 5]) -> [Scalar; 5] {
        v.map(Scalar::from_int)
    }

    #[test]
    fn embed_examples() {
        assert_eq!(el([[5, -2], [4, -1]], 3).embed(), m([5, -1, 4, 2, 3, 1]));
        assert_eq!(FfElement::<Scalar>::identity().embed(), SixVertexMatrix::identity());
        assert_eq!(el([[1, -1], [1, 1]], 2).embed(), m([1, 1, 1, 1, 2, 1]));
    }

    #[test]
    fn singular_parameter_is_rejected() {
        let g = [[s(1, 1), s(1, 1)], [s(1, 1), s(1, 1)]];
        assert_eq!(FfElement::new(g, s(1, 1)), Err(Error::DerivedCZero));
    }

    #[test]
    fn from_matrix_examples() {
        let f = m([5, -1, 4, 2, 3, 1]);
        assert_eq!(FfElement::from_matrix(&f).unwrap(), el([[5, -2], [4, -1]], 3));
        assert_eq!(FfElement::from_matrix(&SixVertexMatrix::<Scalar>::identity()).unwrap(), FfElement::identity());
        assert_eq!(FfElement::from_matrix(&m([0, 0, 2, 3, 6, 1])).unwrap(), el([[0, -3], [2, 0]], 6));
        assert_eq!(FfElement::from_matrix(&m([5, 5, 4, 2, 3, 1])), Err(Error::NotFreeFermionic));
    }

    #[test]
    fn compose_examples() {
        let x = el([[1, -1], [1, 1]], 2);
        let sq = x.compose(&x);
        assert_eq!(sq, el([[0, -2], [2, 0]], 4));
        assert_eq!(sq.embed(), m([0, 0, 2, 2, 4, 1]));
        assert_eq!(x.compose(&FfElement::identity()), x);

        let y = el([[5, -2], [4, -1]], 3);
        let yy = y.compose(&y);
        assert_eq!(yy, el([[17, -8], [16, -7]], 9));
        assert_eq!(solve_w(&y.embed(), &y.embed()).unwrap(), yy.embed());
        assert!(ybe_holds(&y.embed(), &yy.embed(), &y.embed()));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(FfElement::<Scalar>::identity().inverse(), FfElement::identity());
        let x = el([[1, -1], [1, 1]], 2);
        let xi = FfElement::new([[s(1, 2), s(1, 2)], [s(-1, 2), s(1, 2)]], s(1, 2)).unwrap();
        assert_eq!(x.inverse(), xi);
        let y = el([[5, -2], [4, -1]], 3);
        assert_eq!(y.compose(&y.inverse()), FfElement::identity());
        assert_eq!(y.inverse().compose(&y), FfElement::identity());
    }

    #[test]
    fn weight_family_examples() {
        let [q1, q2, z1, z2, w] = params([2, 1, 3, 1, 1]);
        assert_eq!(weights_cf(&q1, &q2, &z1, &z2, &w).unwrap(), m([5, 5, 4, 2, 3, 1]));
        assert_eq!(weights_ff(&q1, &q2, &z1, &z2, &w).unwrap(), m([5, -1, 4, 2, 3, 1]));
        let [q1, q2, z1, z2, w] = params([2, 1, 9, 1, 1]);
        assert_eq!(weights_cf(&q1, &q2, &z1, &z2, &w).unwrap(), m([17, 17, 16, 8, 9, 1]));
        assert_eq!(weights_ff(&q1, &q2, &z1, &z2, &w).unwrap(), m([17, -7, 16, 8, 9, 1]));
        let [q1, q2, z1, z2, w] = params([2, 1, 1, 1, 1]);
        assert_eq!(weights_cf(&q1, &q2, &z1, &z2, &w).unwrap(), SixVertexMatrix::identity());
        assert_eq!(weights_ff(&q1, &q2, &z1, &z2, &w).unwrap(), SixVertexMatrix::identity());
        let [q1, _, z1, z2, w] = params([2, 1, 3, 1, 1]);
        assert_eq!(weights_cf(&q1, &q1, &z1, &z2, &w), Err(Error::CZero));
    }

    #[test]
    fn ff_family_is_free_fermionic_and_cf_is_field_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p: [Scalar; 5] = std::array::from_fn(|_| Scalar::sample_nonzero(&mut rng));
            if p[0] == p[1] {
                continue;
            }
            let ff = weights_ff(&p[0], &p[1], &p[2], &p[3], &p[4]).unwrap();
            assert!(ff.is_free_fermionic());
            let cf = weights_cf(&p[0], &p[1], &p[2], &p[3], &p[4]).unwrap();
            assert_eq!(cf.a1(), cf.a2());
        }
    }
}
