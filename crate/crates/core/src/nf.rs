//! The non-free-fermionic six-vertex groupoid.
//!
//! Elements are triples `(u, d1, d2)` with `u` in
//! `Omega-bar = Omega_circ u Omega_B u Omega_b u Omega_a` and
//! `a1 b1 d1 = N(u) = a2 b2 d2`. Over `Omega` the labels are forced to be
//! the object map of `u`; over `Omega_b` and `Omega_a` both sides vanish and
//! any nonzero pair is allowed (the blow-up). The object map of an element
//! is its label pair, and `u * v` is defined exactly when
//! `Delta(u) = Delta(v*)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, SampleScalar};
use crate::sixvertex::{ObjectLabel, OmegaRegion, SixVertexMatrix};
use crate::ybe::compose_weights;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NfElement<T> {
    matrix: SixVertexMatrix<T>,
    d1: T,
    d2: T,
}

impl<T: Field> NfElement<T> {
    /// Checks membership: `matrix` in `Omega-bar`, labels nonzero and
    /// `a1 b1 d1 = N = a2 b2 d2`.
    pub fn new(matrix: SixVertexMatrix<T>, d1: T, d2: T) -> Result<Self> {
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::ZeroLabel);
        }
        let region = matrix.classify().omega;
        if !region.in_omega_bar() {
            return Err(Error::InvalidElement(format!("{matrix} lies outside Omega-bar")));
        }
        let n = matrix.n_value();
        let lhs1 = matrix.a1().clone() * matrix.b1().clone() * d1.clone();
        let lhs2 = matrix.a2().clone() * matrix.b2().clone() * d2.clone();
        if lhs1 != n || lhs2 != n {
            return Err(Error::InvalidElement(format!(
                "labels ({d1}, {d2}) do not satisfy a1 b1 d1 = N = a2 b2 d2 for {matrix}"
            )));
        }
        Ok(Self { matrix, d1, d2 })
    }

    /// The unique element over `u` in `Omega = Omega_circ u Omega_B`.
    pub fn lift(u: SixVertexMatrix<T>) -> Result<Self> {
        if !u.classify().omega.in_omega() {
            return Err(Error::NotInOmega);
        }
        let (d, _) = u.delta_pair()?;
        let (d1, d2) = (d.d1().clone(), d.d2().clone());
        Self::new(u, d1, d2)
    }

    /// A point of the torus fiber over `u` in `Omega_b` or `Omega_a`.
    pub fn boundary_element(u: SixVertexMatrix<T>, d1: T, d2: T) -> Result<Self> {
        if !matches!(u.classify().omega, OmegaRegion::OmegaSmallB | OmegaRegion::OmegaSmallA) {
            return Err(Error::NotBoundary);
        }
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::ZeroLabel);
        }
        Self::new(u, d1, d2)
    }

    /// The idempotent `I_{d1,d2} = (I, d1, d2)`.
    pub fn idempotent(d: &ObjectLabel<T>) -> Self {
        Self::new(SixVertexMatrix::identity(), d.d1().clone(), d.d2().clone())
            .expect("the identity lies in Omega_b")
    }

    pub fn matrix(&self) -> &SixVertexMatrix<T> {
        &self.matrix
    }

    pub fn d1(&self) -> &T {
        &self.d1
    }

    pub fn d2(&self) -> &T {
        &self.d2
    }

    pub fn region(&self) -> OmegaRegion {
        self.matrix.classify().omega
    }

    /// `Delta(e) = (d1, d2)`.
    pub fn delta(&self) -> ObjectLabel<T> {
        ObjectLabel::new(self.d1.clone(), self.d2.clone()).expect("labels are nonzero")
    }

    /// Block invariant `d1 d2`.
    pub fn delta0(&self) -> T {
        self.d1.clone() * self.d2.clone()
    }

    /// Extended star a-weights `(a1(e*), a2(e*))`.
    fn star_a_weights(&self) -> (T, T) {
        let u = &self.matrix;
        match self.region() {
            OmegaRegion::OmegaSmallA => (
                -(self.d1.clone() * u.b1().clone()),
                -(self.d2.clone() * u.b2().clone()),
            ),
            OmegaRegion::OmegaSmallB => (u.a2().clone(), u.a1().clone()),
            OmegaRegion::OmegaBlock => (T::zero(), T::zero()),
            OmegaRegion::OmegaCirc => {
                let det = u.det_mid();
                (det.clone() / u.a1().clone(), det / u.a2().clone())
            }
            OmegaRegion::Outside => unreachable!("elements lie in Omega-bar"),
        }
    }

    /// Labels of `e*`.
    fn star_labels(&self) -> (T, T) {
        let u = &self.matrix;
        if self.region() == OmegaRegion::OmegaSmallA {
            (
                u.b2().clone() / u.b1().clone() * self.d2.clone(),
                u.b1().clone() / u.b2().clone() * self.d1.clone(),
            )
        } else {
            (
                u.a1().clone() / u.a2().clone() * self.d1.clone(),
                u.a2().clone() / u.a1().clone() * self.d2.clone(),
            )
        }
    }

    /// `Delta(e*)`, which is also `Delta(e')`.
    pub fn delta_star(&self) -> ObjectLabel<T> {
        let (d1, d2) = self.star_labels();
        ObjectLabel::new(d1, d2).expect("star labels are nonzero")
    }

    /// The continuous extension of the star map. Fixes `Omega_circ` and
    /// `Gamma_b`, swaps `Gamma_a` with `Omega_B`.
    pub fn star(&self) -> Self {
        let u = &self.matrix;
        let (a1, a2) = self.star_a_weights();
        let m = SixVertexMatrix::new(a1, a2, -u.b1().clone(), -u.b2().clone(), u.c2().clone(), u.c1().clone())
            .expect("c-weights are swapped, still nonzero");
        let (d1, d2) = self.star_labels();
        Self::new(m, d1, d2).expect("star preserves the groupoid")
    }

    /// Groupoid inverse `e' = e* / (c1 c2)`.
    pub fn inverse(&self) -> Self {
        let s = self.star();
        let k = T::one() / (self.matrix.c1().clone() * self.matrix.c2().clone());
        let m = s.matrix.scale(&k).expect("nonzero scale");
        Self::new(m, s.d1, s.d2).expect("labels are scale invariant")
    }

    pub fn is_composable(&self, rhs: &Self) -> bool {
        self.delta() == rhs.delta_star()
    }

    /// `self * rhs`: the normalized solution of `[[self, w, rhs]] = 0` with
    /// `Delta(w) = Delta(rhs)`.
    ///
    /// One formula covers every stratum: the b-weights use the extended
    /// star a-weights of `self`. On `Gamma_a x Gamma_a`, where the
    /// Yang-Baxter system alone leaves `b1(w), b2(w)` free, this picks the
    /// branch with the right object labels.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if !self.is_composable(rhs) {
            return Err(Error::ObjectMismatch {
                left: self.delta().to_string(),
                right: rhs.delta_star().to_string(),
            });
        }
        let (a1s, a2s) = self.star_a_weights();
        let w = compose_weights(&self.matrix, &a1s, &a2s, &rhs.matrix)?;
        Self::new(w, rhs.d1.clone(), rhs.d2.clone())
    }
}

impl<T: fmt::Display> fmt::Display for NfElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; d=({}, {})]", self.matrix, self.d1, self.d2)
    }
}

/// Which label a fiber draw pins.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `Delta(e) = d`: usable as the left factor of a composition.
    Source,
    /// `Delta(e*) = d`: usable as the right factor.
    Target,
}

/// Piece of the groupoid a sample is drawn from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stratum {
    Interior,
    /// `Gamma_b`, the blown-up `Omega_b`.
    BoundaryB,
    /// `Gamma_a`, the blown-up `Omega_a`.
    BoundaryA,
    /// `Omega_B`, singular middle block.
    Block,
}

impl Stratum {
    pub const ALL: [Stratum; 4] = [Self::Interior, Self::BoundaryB, Self::BoundaryA, Self::Block];
}

/// Interior fiber element built from the four free draws
/// `(a1, a2, b1, c1)`; the remaining weights are solved for so the chosen
/// side carries label `d`.
pub fn fiber_from_draws<T: Field>(d: &ObjectLabel<T>, side: Side, draws: [T; 4]) -> Result<NfElement<T>> {
    let [a1, a2, b1, c1] = draws;
    let c = |x: &T| x.clone();
    let (n, b2) = match side {
        Side::Source => {
            let n = c(d.d1()) * c(&a1) * c(&b1);
            let b2 = n.checked_div(&(c(d.d2()) * c(&a2))).ok_or(Error::ZeroLabel)?;
            (n, b2)
        }
        Side::Target => {
            let n = c(d.d1()) * c(&a2) * c(&b1);
            let b2 = n.checked_div(&(c(d.d2()) * c(&a1))).ok_or(Error::DegenerateInput("a1 draw is zero"))?;
            (n, b2)
        }
    };
    let c2 = (c(&a1) * c(&a2) + c(&b1) * c(&b2) - n)
        .checked_div(&c1)
        .ok_or(Error::CZero)?;
    NfElement::lift(SixVertexMatrix::new(a1, a2, b1, b2, c1, c2)?)
}

/// Seeded sampler for the fibers `{e : Delta(e) = d}` and
/// `{e : Delta(e*) = d}`. Carries its generator by value.
#[derive(Clone, Debug)]
pub struct FiberSampler {
    rng: ChaCha8Rng,
    max_retries: usize,
}

impl FiberSampler {
    pub const DEFAULT_RETRIES: usize = 64;

    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), max_retries: Self::DEFAULT_RETRIES }
    }

    pub fn with_max_retries(mut self, n: usize) -> Self {
        self.max_retries = n;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar<T: SampleScalar>(&mut self) -> T {
        T::sample_nonzero(&mut self.rng)
    }

    pub fn label<T: SampleScalar>(&mut self) -> ObjectLabel<T> {
        ObjectLabel::new(self.scalar(), self.scalar()).expect("samples are nonzero")
    }

    pub fn stratum(&mut self) -> Stratum {
        Stratum::ALL[self.rng.random_range(0..4)]
    }

    /// Draws an element with the requested side pinned to `d`.
    pub fn draw<T: SampleScalar>(&mut self, d: &ObjectLabel<T>, side: Side, stratum: Stratum) -> Result<NfElement<T>> {
        for _ in 0..self.max_retries {
            let attempt = match stratum {
                Stratum::Interior => self.interior(d, side),
                Stratum::BoundaryB => self.boundary_b(d, side),
                Stratum::BoundaryA => self.boundary_a(d, side),
                Stratum::Block => self.block(d, side),
            };
            if let Ok(e) = attempt {
                let pinned = match side {
                    Side::Source => e.delta(),
                    Side::Target => e.delta_star(),
                };
                if pinned == *d && e.region() == stratum_region(stratum) {
                    return Ok(e);
                }
            }
        }
        Err(Error::ExhaustedRetries(self.max_retries))
    }

    /// An element of the given stratum with unconstrained labels.
    pub fn free<T: SampleScalar>(&mut self, stratum: Stratum) -> Result<NfElement<T>> {
        let d = self.label();
        self.draw(&d, Side::Source, stratum)
    }

    fn interior<T: SampleScalar>(&mut self, d: &ObjectLabel<T>, side: Side) -> Result<NfElement<T>> {
        let draws = std::array::from_fn(|_| self.scalar());
        fiber_from_draws(d, side, draws)
    }

    fn boundary_b<T: SampleScalar>(&mut self, d: &ObjectLabel<T>, side: Side) -> Result<NfElement<T>> {
        let (a1, a2, c1): (T, T, T) = (self.scalar(), self.scalar(), self.scalar());
        let c2 = a1.clone() * a2.clone() / c1.clone();
        let u = SixVertexMatrix::new(a1.clone(), a2.clone(), T::zero(), T::zero(), c1, c2)?;
        let (d1, d2) = match side {
            Side::Source => (d.d1().clone(), d.d2().clone()),
            // Delta(e*) = (a1/a2 d1, a2/a1 d2) on Gamma_b.
            Side::Target => (
                a2.clone() / a1.clone() * d.d1().clone(),
                a1 / a2 * d.d2().clone(),
            ),
        };
        NfElement::boundary_element(u, d1, d2)
    }

    fn boundary_a<T: SampleScalar>(&mut self, d: &ObjectLabel<T>, side: Side) -> Result<NfElement<T>> {
        let (b1, b2, c1): (T, T, T) = (self.scalar(), self.scalar(), self.scalar());
        let c2 = b1.clone() * b2.clone() / c1.clone();
        let u = SixVertexMatrix::new(T::zero(), T::zero(), b1.clone(), b2.clone(), c1, c2)?;
        let (d1, d2) = match side {
            Side::Source => (d.d1().clone(), d.d2().clone()),
            // Delta(e*) = (b2/b1 d2, b1/b2 d1) on Gamma_a.
            Side::Target => (
                b2.clone() / b1.clone() * d.d2().clone(),
                b1 / b2 * d.d1().clone(),
            ),
        };
        NfElement::boundary_element(u, d1, d2)
    }

    /// On `Omega_B`, `N = a1 a2` and `Delta = (a2/b1, a1/b2)`, so the label
    /// fixes `b1, b2` once the a-weights are drawn.
    fn block<T: SampleScalar>(&mut self, d: &ObjectLabel<T>, side: Side) -> Result<NfElement<T>> {
        let (a1, a2, c1): (T, T, T) = (self.scalar(), self.scalar(), self.scalar());
        let (b1, b2) = match side {
            Side::Source => (a2.clone() / d.d1().clone(), a1.clone() / d.d2().clone()),
            // Delta(e*) = (a1/b1, a2/b2).
            Side::Target => (a1.clone() / d.d1().clone(), a2.clone() / d.d2().clone()),
        };
        let c2 = b1.clone() * b2.clone() / c1.clone();
        NfElement::lift(SixVertexMatrix::new(a1, a2, b1, b2, c1, c2)?)
    }
}

fn stratum_region(s: Stratum) -> OmegaRegion {
    match s {
        Stratum::Interior => OmegaRegion::OmegaCirc,
        Stratum::BoundaryB => OmegaRegion::OmegaSmallB,
        Stratum::BoundaryA => OmegaRegion::OmegaSmallA,
        Stratum::Block => OmegaRegion::OmegaBlock,
    }
}

/// Interior element with the given side pinned to `d`, drawn from `seed`.
pub fn sample_fiber<T: SampleScalar>(d: &ObjectLabel<T>, side: Side, seed: u64) -> Result<NfElement<T>> {
    FiberSampler::new(seed).draw(d, side, Stratum::Interior)
}
