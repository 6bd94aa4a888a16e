//! Exact algebra of six-vertex Yang-Baxter matrices and the groupoids they
//! form, with solvable lattice models built on top.
//!
//! Everything is generic over a [`Field`]; the aliases at the crate root
//! fix the scalar to Gaussian rationals.

pub mod error;
pub mod ff;
pub mod five;
pub mod groupoid;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod nf;
pub mod operator;
pub mod scalar;
pub mod sixvertex;
pub mod verify;
pub mod ybe;

pub use error::{Error, Result};
pub use ff::{weights_cf, weights_ff, FfElement};
pub use five::{FvElement, FvRegion, FvSampler};
pub use groupoid::{GroupoidElement, Label};
pub use lattice::{BoundaryAssignment, Caps, HorizontalMode, LatticeModel, ModelKind, SolvabilityReport};
pub use nf::{fiber_from_draws, sample_fiber, FiberSampler, NfElement, Side, Stratum};
pub use operator::OperatorMatrix;
pub use scalar::{Field, Gaussian, SampleScalar};
pub use sixvertex::{ObjectLabel, OmegaRegion, Region, RegionFlags, SixVertexMatrix};
pub use ybe::{brute_force_w, solve_w, wcond_holds, yb_commutator, yb_commutator_sv, ybe_holds, WSolution};

/// Exact complex scalar with rational parts.
pub type Scalar = Gaussian;
/// Exact real scalar.
pub type RationalScalar = num_rational::BigRational;

pub type SixVertex = SixVertexMatrix<Scalar>;
pub type Operator = OperatorMatrix<Scalar>;
pub type Label2 = ObjectLabel<Scalar>;
pub type Nf = NfElement<Scalar>;
pub type Ff = FfElement<Scalar>;
pub type Fv = FvElement<Scalar>;
pub type Element = GroupoidElement<Scalar>;
pub type Model = LatticeModel<Scalar>;
