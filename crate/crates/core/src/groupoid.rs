//! The three groupoids behind one tagged type, with the representation
//! `pi` to six-vertex matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::FfElement;
use crate::five::FvElement;
use crate::nf::NfElement;
use crate::scalar::Field;
use crate::sixvertex::{ObjectLabel, SixVertexMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupoidElement<T> {
    Ff(FfElement<T>),
    Nf(NfElement<T>),
    Fv(FvElement<T>),
}

/// Value of the object map. The free-fermionic component is a group, so
/// its object set is a single point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Label<T> {
    Point,
    Pair(ObjectLabel<T>),
    Eps(T),
}

impl<T: fmt::Display> fmt::Display for Label<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Point => f.write_str("*"),
            Label::Pair(d) => d.fmt(f),
            Label::Eps(e) => write!(f, "eps={e}"),
        }
    }
}

impl<T> Label<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Label::Point => "ff",
            Label::Pair(_) => "nf",
            Label::Eps(_) => "fv",
        }
    }
}

impl<T: Field> Label<T> {
    /// Identity element at this object.
    pub fn idempotent(&self) -> Result<GroupoidElement<T>> {
        Ok(match self {
            Label::Point => GroupoidElement::Ff(FfElement::identity()),
            Label::Pair(d) => GroupoidElement::Nf(NfElement::idempotent(d)),
            Label::Eps(e) => GroupoidElement::Fv(FvElement::idempotent(e.clone())?),
        })
    }
}

impl<T: Field> GroupoidElement<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Ff(_) => "ff",
            Self::Nf(_) => "nf",
            Self::Fv(_) => "fv",
        }
    }

    /// The vertex-weight matrix `pi(g)`.
    pub fn pi(&self) -> SixVertexMatrix<T> {
        match self {
            Self::Ff(g) => g.embed(),
            Self::Nf(e) => e.matrix().clone(),
            Self::Fv(e) => e.matrix().clone(),
        }
    }

    pub fn delta(&self) -> Label<T> {
        match self {
            Self::Ff(_) => Label::Point,
            Self::Nf(e) => Label::Pair(e.delta()),
            Self::Fv(e) => Label::Eps(e.eps().clone()),
        }
    }

    /// `Delta(g')`, the label a left factor must carry.
    pub fn delta_star(&self) -> Label<T> {
        match self {
            Self::Ff(_) => Label::Point,
            Self::Nf(e) => Label::Pair(e.delta_star()),
            Self::Fv(e) => Label::Eps(e.eps_star()),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Ff(g) => Self::Ff(g.inverse()),
            Self::Nf(e) => Self::Nf(e.inverse()),
            Self::Fv(e) => Self::Fv(e.inverse()),
        }
    }

    pub fn is_composable(&self, rhs: &Self) -> bool {
        self.tag() == rhs.tag() && self.delta() == rhs.delta_star()
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Self::Ff(a), Self::Ff(b)) => Ok(Self::Ff(a.compose(b))),
            (Self::Nf(a), Self::Nf(b)) => a.compose(b).map(Self::Nf),
            (Self::Fv(a), Self::Fv(b)) => a.compose(b).map(Self::Fv),
            _ => Err(Error::TagMismatch(self.tag(), rhs.tag())),
        }
    }
}

impl<T: Field> fmt::Display for GroupoidElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ff(g) => write!(f, "ff{}", g.embed()),
            Self::Nf(e) => write!(f, "nf{e}"),
            Self::Fv(e) => write!(f, "fv{e}"),
        }
    }
}

impl<T> From<FfElement<T>> for GroupoidElement<T> {
    fn from(g: FfElement<T>) -> Self {
        Self::Ff(g)
    }
}

impl<T> From<NfElement<T>> for GroupoidElement<T> {
    fn from(e: NfElement<T>) -> Self {
        Self::Nf(e)
    }
}

impl<T> From<FvElement<T>> for GroupoidElement<T> {
    fn from(e: FvElement<T>) -> Self {
        Self::Fv(e)
    }
}
