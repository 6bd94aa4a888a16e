//! JSON wire format. Scalars travel as `{"re": "p/q", "im": "p/q"}` with
//! reduced fractions; no floats appear anywhere.

use num_complex::Complex;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ff::FfElement;
use crate::five::FvElement;
use crate::groupoid::{GroupoidElement, Label};
use crate::lattice::{BoundaryAssignment, HorizontalMode, LatticeModel};
use crate::nf::NfElement;
use crate::operator::OperatorMatrix;
use crate::scalar::{rational_from_text, rational_to_text};
use crate::sixvertex::{ObjectLabel, Region, SixVertexMatrix};
use crate::Scalar;

pub trait Wire: Sized {
    fn to_wire(&self) -> Value;
    fn from_wire(v: &Value) -> Result<Self>;
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => rational_from_text(s).ok_or_else(|| parse_err(format!("bad rational `{s}`"))),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(parse_err(format!("expected a fraction string, found {other}"))),
    }
}

/// Parses a whole JSON document.
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

impl Wire for Scalar {
    fn to_wire(&self) -> Value {
        json!({ "re": rational_to_text(&self.re), "im": rational_to_text(&self.im) })
    }

    /// Also accepts a bare real value, `"p/q"` or an integer.
    fn from_wire(v: &Value) -> Result<Self> {
        match v {
            Value::Object(_) => {
                let re = rational(field(v, "re")?)?;
                let im = match v.get("im") {
                    Some(x) => rational(x)?,
                    None => BigRational::from_integer(0.into()),
                };
                Ok(Complex::new(re, im))
            }
            _ => Ok(Complex::new(rational(v)?, BigRational::from_integer(0.into()))),
        }
    }
}

const WEIGHTS: [&str; 6] = ["a1", "a2", "b1", "b2", "c1", "c2"];

impl Wire for SixVertexMatrix<Scalar> {
    fn to_wire(&self) -> Value {
        let mut m = Map::new();
        for (k, x) in WEIGHTS.iter().zip(self.weights()) {
            m.insert(k.to_string(), x.to_wire());
        }
        Value::Object(m)
    }

    fn from_wire(v: &Value) -> Result<Self> {
        let mut w = Vec::with_capacity(6);
        for k in WEIGHTS {
            w.push(Scalar::from_wire(field(v, k)?)?);
        }
        let w: [Scalar; 6] = w.try_into().expect("six weights");
        SixVertexMatrix::from_array(w)
    }
}

impl Wire for OperatorMatrix<Scalar> {
    fn to_wire(&self) -> Value {
        let rows: Vec<Value> = self.rows().map(|r| Value::Array(r.iter().map(Wire::to_wire).collect())).collect();
        json!({ "dim": self.dim(), "entries": rows })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        let rows = field(v, "entries")?.as_array().ok_or_else(|| parse_err("`entries` must be an array"))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| parse_err("matrix rows must be arrays"))?
                    .iter()
                    .map(Scalar::from_wire)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = OperatorMatrix::from_rows(rows)?;
        if let Some(dim) = v.get("dim").and_then(Value::as_u64) {
            if dim as usize != m.dim() {
                return Err(Error::DimensionMismatch { expected: dim as usize, found: m.dim() });
            }
        }
        Ok(m)
    }
}

impl Wire for ObjectLabel<Scalar> {
    fn to_wire(&self) -> Value {
        json!({ "d1": self.d1().to_wire(), "d2": self.d2().to_wire() })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        ObjectLabel::new(Scalar::from_wire(field(v, "d1")?)?, Scalar::from_wire(field(v, "d2")?)?)
    }
}

impl Wire for NfElement<Scalar> {
    fn to_wire(&self) -> Value {
        json!({ "matrix": self.matrix().to_wire(), "d1": self.d1().to_wire(), "d2": self.d2().to_wire() })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        NfElement::new(
            SixVertexMatrix::from_wire(field(v, "matrix")?)?,
            Scalar::from_wire(field(v, "d1")?)?,
            Scalar::from_wire(field(v, "d2")?)?,
        )
    }
}

impl Wire for FfElement<Scalar> {
    fn to_wire(&self) -> Value {
        let g = self.g();
        json!({
            "g": [[g[0][0].to_wire(), g[0][1].to_wire()], [g[1][0].to_wire(), g[1][1].to_wire()]],
            "c1": self.c1().to_wire(),
        })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        let rows = field(v, "g")?.as_array().filter(|r| r.len() == 2).ok_or_else(|| parse_err("`g` must be 2x2"))?;
        let row = |r: &Value| -> Result<[Scalar; 2]> {
            let r = r.as_array().filter(|r| r.len() == 2).ok_or_else(|| parse_err("`g` must be 2x2"))?;
            Ok([Scalar::from_wire(&r[0])?, Scalar::from_wire(&r[1])?])
        };
        FfElement::new([row(&rows[0])?, row(&rows[1])?], Scalar::from_wire(field(v, "c1")?)?)
    }
}

impl Wire for FvElement<Scalar> {
    fn to_wire(&self) -> Value {
        json!({ "matrix": self.matrix().to_wire(), "eps": self.eps().to_wire() })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        FvElement::new(SixVertexMatrix::from_wire(field(v, "matrix")?)?, Scalar::from_wire(field(v, "eps")?)?)
    }
}

/// Elements are told apart by shape: `g` means free-fermionic, `eps`
/// five-vertex, `d1`/`d2` the blown-up groupoid.
impl Wire for GroupoidElement<Scalar> {
    fn to_wire(&self) -> Value {
        match self {
            Self::Ff(g) => g.to_wire(),
            Self::Nf(e) => e.to_wire(),
            Self::Fv(e) => e.to_wire(),
        }
    }

    fn from_wire(v: &Value) -> Result<Self> {
        if v.get("g").is_some() {
            FfElement::from_wire(v).map(Self::Ff)
        } else if v.get("eps").is_some() {
            FvElement::from_wire(v).map(Self::Fv)
        } else if v.get("d1").is_some() {
            NfElement::from_wire(v).map(Self::Nf)
        } else {
            Err(parse_err("cannot tell the element kind: expected `g`, `eps` or `d1`/`d2`"))
        }
    }
}

/// The free-fermionic object is the string `"point"`.
impl Wire for Label<Scalar> {
    fn to_wire(&self) -> Value {
        match self {
            Label::Point => json!("point"),
            Label::Pair(d) => d.to_wire(),
            Label::Eps(e) => json!({ "eps": e.to_wire() }),
        }
    }

    fn from_wire(v: &Value) -> Result<Self> {
        if v.as_str() == Some("point") {
            Ok(Label::Point)
        } else if let Some(e) = v.get("eps") {
            Ok(Label::Eps(Scalar::from_wire(e)?))
        } else {
            ObjectLabel::from_wire(v).map(Label::Pair)
        }
    }
}

pub fn region_to_wire(r: &Region) -> Value {
    json!({
        "region": r.omega.name(),
        "flags": serde_json::to_value(r.flags).expect("flags serialize"),
        "s_times": r.in_s_times(),
        "s_bullet": r.in_s_bullet(),
        "s_circ": r.in_s_circ(),
        "free_fermionic": r.is_free_fermionic(),
    })
}

fn bits(v: &Value, key: &str) -> Result<Vec<u8>> {
    let Some(x) = v.get(key) else { return Ok(Vec::new()) };
    x.as_array()
        .ok_or_else(|| parse_err(format!("`{key}` must be an array of 0/1")))?
        .iter()
        .map(|b| match b.as_u64() {
            Some(b @ 0..=1) => Ok(b as u8),
            _ => Err(parse_err(format!("`{key}` entries must be 0 or 1"))),
        })
        .collect()
}

impl Wire for BoundaryAssignment {
    fn to_wire(&self) -> Value {
        json!({
            "mode": serde_json::to_value(self.mode).expect("mode serializes"),
            "west": self.west, "east": self.east, "south": self.south, "north": self.north,
        })
    }

    fn from_wire(v: &Value) -> Result<Self> {
        let mode = match field(v, "mode")?.as_str() {
            Some("fixed") => HorizontalMode::Fixed,
            Some("periodic") => HorizontalMode::Periodic,
            _ => return Err(parse_err("`mode` must be \"fixed\" or \"periodic\"")),
        };
        Ok(Self { mode, west: bits(v, "west")?, east: bits(v, "east")?, south: bits(v, "south")?, north: bits(v, "north")? })
    }
}

fn elements(v: Option<&Value>) -> Result<Vec<GroupoidElement<Scalar>>> {
    match v {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(Value::Array(a)) => a.iter().map(GroupoidElement::from_wire).collect(),
        Some(_) => Err(parse_err("expected an array of elements")),
    }
}

impl Wire for LatticeModel<Scalar> {
    fn to_wire(&self) -> Value {
        let list = |xs: &[GroupoidElement<Scalar>]| Value::Array(xs.iter().map(Wire::to_wire).collect());
        let mut m = Map::new();
        m.insert("m".into(), json!(self.rows()));
        m.insert("n".into(), json!(self.cols()));
        if let Some(d) = self.d() {
            m.insert("d".into(), d.to_wire());
        }
        m.insert("phi".into(), list(self.phi()));
        m.insert("psi".into(), list(self.psi()));
        m.insert("gamma".into(), Value::Array(self.gamma().iter().map(|r| list(r)).collect()));
        Value::Object(m)
    }

    /// With `phi` and `psi` present the grid is rebuilt and any supplied
    /// `gamma` must agree with it; otherwise `gamma` is taken as given.
    fn from_wire(v: &Value) -> Result<Self> {
        let phi = elements(v.get("phi"))?;
        let psi = elements(v.get("psi"))?;
        let gamma = match v.get("gamma") {
            None | Some(Value::Null) => None,
            Some(Value::Array(rows)) => Some(
                rows.iter().map(|r| elements(Some(r))).collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(parse_err("`gamma` must be an array of rows")),
        };
        let model = if !phi.is_empty() || !psi.is_empty() {
            let d = Label::from_wire(field(v, "d")?)?;
            let model = LatticeModel::build(d, phi, psi)?;
            if let Some(g) = gamma {
                if g != model.gamma() {
                    return Err(parse_err("`gamma` disagrees with phi * psi"));
                }
            }
            model
        } else {
            LatticeModel::from_grid(gamma.ok_or_else(|| parse_err("a model needs phi/psi or gamma"))?)?
        };
        for (key, actual) in [("m", model.rows()), ("n", model.cols())] {
            if let Some(x) = v.get(key).and_then(Value::as_u64) {
                if x as usize != actual {
                    return Err(Error::DimensionMismatch { expected: x as usize, found: actual });
                }
            }
        }
        Ok(model)
    }
}

/// Parameters `{"q1","q2","z1","z2","w"}` of the two weight families.
pub fn family_params(v: &Value) -> Result<[Scalar; 5]> {
    let mut out = Vec::with_capacity(5);
    for k in ["q1", "q2", "z1", "z2", "w"] {
        out.push(Scalar::from_wire(field(v, k)?)?);
    }
    Ok(out.try_into().expect("five parameters"))
}
