//! Solvable lattice models `gamma[i][j] = phi[i] * psi[j]`, their
//! solvability checks, and partition functions.
//!
//! Rows are numbered from the top, columns from the left, both from 0.
//! The vertex at `(i, j)` with edge states `(west, south, east, north)`
//! has weight `pi(gamma[i][j])[2 east + north][2 south + west]`, so the
//! all-zero vertex carries `a1` and the all-one vertex `a2`.
//! A row state over `n` columns is an integer whose most significant bit
//! is column 0.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::FfElement;
use crate::five::FvSampler;
use crate::groupoid::{GroupoidElement, Label};
use crate::nf::{FiberSampler, Side, Stratum};
use crate::operator::OperatorMatrix;
use crate::scalar::{Field, SampleScalar};
use crate::ybe::yb_commutator_sv;

/// Size limits for the partition-function routines.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Caps {
    /// Interior edges summed over by `partition_enumerate`.
    pub max_free_edges: usize,
    /// Columns for vector contraction in `partition_transfer`.
    pub max_transfer_cols: usize,
    /// Columns for dense `2^n x 2^n` transfer matrices.
    pub max_dense_cols: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_free_edges: 20, max_transfer_cols: 12, max_dense_cols: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeModel<T> {
    d: Option<Label<T>>,
    phi: Vec<GroupoidElement<T>>,
    psi: Vec<GroupoidElement<T>>,
    gamma: Vec<Vec<GroupoidElement<T>>>,
    caps: Caps,
}

fn mismatch<T: Field>(what: String, found: &Label<T>, d: &Label<T>) -> Error {
    Error::ObjectMismatch { left: format!("{what} has label {found}"), right: d.to_string() }
}

impl<T: Field> LatticeModel<T> {
    /// Builds `gamma[i][j] = phi[i] * psi[j]`. Requires `Delta(phi[i]) = d`
    /// and `Delta(psi[j]') = d`.
    pub fn build(d: Label<T>, phi: Vec<GroupoidElement<T>>, psi: Vec<GroupoidElement<T>>) -> Result<Self> {
        if phi.is_empty() || psi.is_empty() {
            return Err(Error::DegenerateInput("a model needs at least one row and one column"));
        }
        for g in phi.iter().chain(&psi) {
            if g.tag() != d.tag() {
                return Err(Error::TagMismatch(d.tag(), g.tag()));
            }
        }
        for (i, g) in phi.iter().enumerate() {
            let found = g.delta();
            if found != d {
                return Err(mismatch(format!("phi[{i}]"), &found, &d));
            }
        }
        for (j, g) in psi.iter().enumerate() {
            let found = g.delta_star();
            if found != d {
                return Err(mismatch(format!("psi[{j}]'"), &found, &d));
            }
        }
        let gamma = phi
            .iter()
            .map(|f| psi.iter().map(|p| f.compose(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for (i, row) in gamma.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if g.delta() != psi[j].delta() || g.delta_star() != phi[i].delta_star() {
                    return Err(Error::InvalidElement(format!("gamma[{i}][{j}] breaks label constancy")));
                }
            }
        }
        Ok(Self { d: Some(d), phi, psi, gamma, caps: Caps::default() })
    }

    /// A model from an explicit grid, with no `phi`/`psi` data. Nothing
    /// about solvability is assumed; see `check_solvability`.
    pub fn from_grid(gamma: Vec<Vec<GroupoidElement<T>>>) -> Result<Self> {
        let n = gamma.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::DegenerateInput("a model needs at least one row and one column"));
        }
        let tag = gamma[0][0].tag();
        for row in &gamma {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(g) = row.iter().find(|g| g.tag() != tag) {
                return Err(Error::TagMismatch(tag, g.tag()));
            }
        }
        Ok(Self { d: None, phi: Vec::new(), psi: Vec::new(), gamma, caps: Caps::default() })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn rows(&self) -> usize {
        self.gamma.len()
    }

    pub fn cols(&self) -> usize {
        self.gamma[0].len()
    }

    pub fn d(&self) -> Option<&Label<T>> {
        self.d.as_ref()
    }

    pub fn phi(&self) -> &[GroupoidElement<T>] {
        &self.phi
    }

    pub fn psi(&self) -> &[GroupoidElement<T>] {
        &self.psi
    }

    pub fn gamma(&self) -> &[Vec<GroupoidElement<T>>] {
        &self.gamma
    }

    /// Replaces one grid entry, dropping the `phi`/`psi` data.
    pub fn with_entry(mut self, i: usize, j: usize, g: GroupoidElement<T>) -> Result<Self> {
        let (m, n) = (self.rows(), self.cols());
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, limit: m });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, limit: n });
        }
        self.gamma[i][j] = g;
        Self::from_grid(self.gamma)
    }

    /// `rho_i = gamma[i][0] * gamma[i+1][0]'`, for `i + 1 < rows`.
    pub fn row_rho(&self, i: usize) -> Result<GroupoidElement<T>> {
        if i + 1 >= self.rows() {
            return Err(Error::IndexOutOfRange { index: i, limit: self.rows().saturating_sub(1) });
        }
        self.gamma[i][0].compose(&self.gamma[i + 1][0].inverse())
    }

    /// `sigma_j = gamma[0][j]' * gamma[0][j+1]`, for `j + 1 < cols`.
    pub fn col_rho(&self, j: usize) -> Result<GroupoidElement<T>> {
        if j + 1 >= self.cols() {
            return Err(Error::IndexOutOfRange { index: j, limit: self.cols().saturating_sub(1) });
        }
        self.gamma[0][j].inverse().compose(&self.gamma[0][j + 1])
    }

    /// Runs the row and column desiderata, the Yang-Baxter instance at
    /// every site, and the label constancy checks.
    pub fn check_solvability(&self) -> SolvabilityReport {
        let mut report = SolvabilityReport::default();
        let (m, n) = (self.rows(), self.cols());
        let g = &self.gamma;

        for i in 0..m.saturating_sub(1) {
            let rho = match self.row_rho(i) {
                Ok(rho) => rho,
                Err(e) => {
                    report.push(format!("row_rho[{i}]"), Some(e.to_string()));
                    continue;
                }
            };
            for j in 0..n {
                let witness = match g[i][j].compose(&g[i + 1][j].inverse()) {
                    Ok(x) if x == rho => None,
                    Ok(x) => Some(format!("gamma[{i}][{j}] * gamma[{}][{j}]' = {x}, expected {rho}", i + 1)),
                    Err(e) => Some(e.to_string()),
                };
                report.push(format!("row_desideratum[{i},{j}]"), witness);
                let c = yb_commutator_sv(&rho.pi(), &g[i][j].pi(), &g[i + 1][j].pi());
                report.push(format!("row_ybe[{i},{j}]"), nonzero_witness(&c));
            }
        }

        for j in 0..n.saturating_sub(1) {
            let sigma = match self.col_rho(j) {
                Ok(s) => s,
                Err(e) => {
                    report.push(format!("col_rho[{j}]"), Some(e.to_string()));
                    continue;
                }
            };
            for i in 0..m {
                let witness = match g[i][j].inverse().compose(&g[i][j + 1]) {
                    Ok(x) if x == sigma => None,
                    Ok(x) => Some(format!("gamma[{i}][{j}]' * gamma[{i}][{}] = {x}, expected {sigma}", j + 1)),
                    Err(e) => Some(e.to_string()),
                };
                report.push(format!("col_desideratum[{i},{j}]"), witness);
                let c = yb_commutator_sv(&g[i][j].pi(), &g[i][j + 1].pi(), &sigma.pi());
                report.push(format!("col_ybe[{i},{j}]"), nonzero_witness(&c));
            }
        }

        for j in 0..n {
            for i in 1..m {
                let (a, b) = (g[0][j].delta(), g[i][j].delta());
                let witness = (a != b).then(|| format!("Delta(gamma[{i}][{j}]) = {b} but Delta(gamma[0][{j}]) = {a}"));
                report.push(format!("label_column_constancy[{i},{j}]"), witness);
            }
        }
        for i in 0..m {
            for j in 1..n {
                let (a, b) = (g[i][0].delta_star(), g[i][j].delta_star());
                let witness =
                    (a != b).then(|| format!("Delta(gamma[{i}][{j}]') = {b} but Delta(gamma[{i}][0]') = {a}"));
                report.push(format!("label_row_constancy[{i},{j}]"), witness);
            }
        }
        report
    }

    fn site_ops(&self) -> Vec<Vec<OperatorMatrix<T>>> {
        self.gamma.iter().map(|row| row.iter().map(|g| g.pi().to_operator()).collect()).collect()
    }

    /// Sum over all interior edge configurations of the product of vertex
    /// weights, by depth-first search with zero-weight pruning.
    pub fn partition_enumerate(&self, bc: &BoundaryAssignment) -> Result<T> {
        bc.validate(self.rows(), self.cols())?;
        let (m, n) = (self.rows(), self.cols());
        let mut free = (m - 1) * n + m * (n - 1);
        if bc.mode == HorizontalMode::Periodic {
            free += m;
        }
        if free > self.caps.max_free_edges {
            return Err(Error::SizeCap { what: "free edges", size: free, cap: self.caps.max_free_edges });
        }
        let mut walk = Enumeration { ops: self.site_ops(), bc, m, n, above: bc.north.clone(), total: T::zero() };
        for h0 in bc.west_choices(0) {
            walk.visit(0, 0, h0, h0, T::one());
        }
        Ok(walk.total)
    }

    /// Applies row `i` to a vector indexed by south states, giving a vector
    /// indexed by north states. `west`/`east` fix the horizontal boundary;
    /// `None` closes the row periodically.
    pub fn apply_row(&self, i: usize, south: &[T], ends: Option<(u8, u8)>) -> Result<Vec<T>> {
        let n = self.cols();
        if i >= self.rows() {
            return Err(Error::IndexOutOfRange { index: i, limit: self.rows() });
        }
        if n > self.caps.max_transfer_cols {
            return Err(Error::SizeCap { what: "transfer columns", size: n, cap: self.caps.max_transfer_cols });
        }
        let size = 1usize << n;
        if south.len() != size {
            return Err(Error::DimensionMismatch { expected: size, found: south.len() });
        }
        let ops: Vec<_> = self.gamma[i].iter().map(|g| g.pi().to_operator()).collect();
        // Table index: ((h0 * 2 + h) << n) | state, where h0 is the west
        // edge, h the current horizontal edge, and state mixes north bits
        // (columns already passed) with south bits (columns to come).
        let idx = |h0: usize, h: usize, state: usize| ((h0 * 2 + h) << n) | state;
        let mut table = vec![T::zero(); 4 * size];
        let starts: Vec<usize> = match ends {
            Some((w, _)) => vec![w as usize],
            None => vec![0, 1],
        };
        for (s, x) in south.iter().enumerate() {
            if !x.is_zero() {
                for &h0 in &starts {
                    table[idx(h0, h0, s)] = x.clone();
                }
            }
        }
        for (j, op) in ops.iter().enumerate() {
            let bit = n - 1 - j;
            let mut next = vec![T::zero(); 4 * size];
            for h0 in 0..2 {
                for h in 0..2 {
                    for state in 0..size {
                        let val = &table[idx(h0, h, state)];
                        if val.is_zero() {
                            continue;
                        }
                        let s_bit = (state >> bit) & 1;
                        for e in 0..2 {
                            for nb in 0..2 {
                                let w = &op[(2 * e + nb, 2 * s_bit + h)];
                                if w.is_zero() {
                                    continue;
                                }
                                let target = idx(h0, e, (state & !(1 << bit)) | (nb << bit));
                                next[target] = next[target].clone() + val.clone() * w.clone();
                            }
                        }
                    }
                }
            }
            table = next;
        }
        let mut out = vec![T::zero(); size];
        for (state, slot) in out.iter_mut().enumerate() {
            for h0 in 0..2 {
                let h_end = match ends {
                    Some((_, e)) => e as usize,
                    None => h0,
                };
                let x = &table[idx(h0, h_end, state)];
                if !x.is_zero() {
                    *slot = slot.clone() + x.clone();
                }
            }
        }
        Ok(out)
    }

    /// `Z = <north| T_0 ... T_{m-1} |south>`, contracting from the bottom
    /// row up.
    pub fn partition_transfer(&self, bc: &BoundaryAssignment) -> Result<T> {
        bc.validate(self.rows(), self.cols())?;
        let n = self.cols();
        if n > self.caps.max_transfer_cols {
            return Err(Error::SizeCap { what: "transfer columns", size: n, cap: self.caps.max_transfer_cols });
        }
        let mut vec = vec![T::zero(); 1 << n];
        vec[state_index(&bc.south)] = T::one();
        for i in (0..self.rows()).rev() {
            let ends = match bc.mode {
                HorizontalMode::Fixed => Some((bc.west[i], bc.east[i])),
                HorizontalMode::Periodic => None,
            };
            vec = self.apply_row(i, &vec, ends)?;
        }
        Ok(vec[state_index(&bc.north)].clone())
    }

    /// Dense periodic row transfer matrix, entry `[north][south]`.
    pub fn transfer_matrix(&self, i: usize) -> Result<TransferOperator<T>> {
        let n = self.cols();
        if n > self.caps.max_dense_cols {
            return Err(Error::SizeCap { what: "dense transfer columns", size: n, cap: self.caps.max_dense_cols });
        }
        let size = 1usize << n;
        let mut op = OperatorMatrix::zeros(size);
        for s in 0..size {
            let mut e = vec![T::zero(); size];
            e[s] = T::one();
            for (north, x) in self.apply_row(i, &e, None)?.into_iter().enumerate() {
                op[(north, s)] = x;
            }
        }
        Ok(TransferOperator { n, op })
    }

    /// Commutation of adjacent transfer matrices, row pair by row pair.
    pub fn transfer_commutation(&self) -> Result<Vec<TransferCheck>> {
        let mut out = Vec::new();
        let mut prev = self.transfer_matrix(0)?;
        for i in 0..self.rows() - 1 {
            let next = self.transfer_matrix(i + 1)?;
            let rho_invertible = self.row_rho(i).map(|r| r.pi().is_invertible()).unwrap_or(false);
            let commutes = prev.op.commutator(&next.op)?.is_zero();
            out.push(TransferCheck { row: i, rho_invertible, commutes });
            prev = next;
        }
        Ok(out)
    }
}

fn nonzero_witness<T: Field>(c: &OperatorMatrix<T>) -> Option<String> {
    c.first_nonzero().map(|((r, k), x)| format!("commutator entry ({r},{k}) = {x}"))
}

struct Enumeration<'a, T> {
    ops: Vec<Vec<OperatorMatrix<T>>>,
    bc: &'a BoundaryAssignment,
    m: usize,
    n: usize,
    /// Vertical edge states entering the current row from above; entries
    /// left of the current column already hold the row's south edges.
    above: Vec<u8>,
    total: T,
}

impl<T: Field> Enumeration<'_, T> {
    fn visit(&mut self, i: usize, j: usize, west: u8, h0: u8, acc: T) {
        if i == self.m {
            self.total = self.total.clone() + acc;
            return;
        }
        let north = self.above[j];
        for e in 0..2u8 {
            if j + 1 == self.n {
                let east = match self.bc.mode {
                    HorizontalMode::Fixed => self.bc.east[i],
                    HorizontalMode::Periodic => h0,
                };
                if e != east {
                    continue;
                }
            }
            for s in 0..2u8 {
                if i + 1 == self.m && s != self.bc.south[j] {
                    continue;
                }
                let w = &self.ops[i][j][(2 * e as usize + north as usize, 2 * s as usize + west as usize)];
                if w.is_zero() {
                    continue;
                }
                let acc = acc.clone() * w.clone();
                self.above[j] = s;
                if j + 1 < self.n {
                    self.visit(i, j + 1, e, h0, acc);
                } else if i + 1 == self.m {
                    self.visit(self.m, 0, 0, 0, acc);
                } else {
                    for h in self.bc.west_choices(i + 1) {
                        self.visit(i + 1, 0, h, h, acc.clone());
                    }
                }
                self.above[j] = north;
            }
        }
    }
}

fn state_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HorizontalMode {
    Fixed,
    Periodic,
}

/// Edge states on the outer boundary. Periodic mode ignores `west`/`east`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryAssignment {
    pub mode: HorizontalMode,
    pub west: Vec<u8>,
    pub east: Vec<u8>,
    pub south: Vec<u8>,
    pub north: Vec<u8>,
}

impl BoundaryAssignment {
    pub fn fixed(west: Vec<u8>, east: Vec<u8>, south: Vec<u8>, north: Vec<u8>) -> Self {
        Self { mode: HorizontalMode::Fixed, west, east, south, north }
    }

    pub fn periodic(south: Vec<u8>, north: Vec<u8>) -> Self {
        Self { mode: HorizontalMode::Periodic, west: Vec::new(), east: Vec::new(), south, north }
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let mut sides = vec![(&self.south, n), (&self.north, n)];
        if self.mode == HorizontalMode::Fixed {
            sides.push((&self.west, m));
            sides.push((&self.east, m));
        }
        for (v, len) in sides {
            if v.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: v.len() });
            }
            if let Some(&b) = v.iter().find(|&&b| b > 1) {
                return Err(Error::InvalidElement(format!("edge state {b} is not 0 or 1")));
            }
        }
        Ok(())
    }

    fn west_choices(&self, i: usize) -> Vec<u8> {
        match self.mode {
            HorizontalMode::Fixed => self.west.get(i).map_or(Vec::new(), |&w| vec![w]),
            HorizontalMode::Periodic => vec![0, 1],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransferOperator<T> {
    pub n: usize,
    pub op: OperatorMatrix<T>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TransferCheck {
    pub row: usize,
    pub rho_invertible: bool,
    pub commutes: bool,
}

impl TransferCheck {
    /// Commutation is only required when `pi(rho)` is invertible.
    pub fn pass(&self) -> bool {
        self.commutes || !self.rho_invertible
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SolvabilityReport {
    pub checks: Vec<Check>,
}

impl SolvabilityReport {
    fn push(&mut self, name: String, witness: Option<String>) {
        self.checks.push(Check { name, pass: witness.is_none(), witness });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn group_pass(&self, prefix: &str) -> bool {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).all(|c| c.pass)
    }

    pub fn row_solvable(&self) -> bool {
        self.group_pass("row_")
    }

    pub fn column_solvable(&self) -> bool {
        self.group_pass("col_")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for SolvabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    Ff,
    Nf,
    Fv,
}

impl ModelKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ff" => Some(Self::Ff),
            "nf" => Some(Self::Nf),
            "fv" => Some(Self::Fv),
            _ => None,
        }
    }
}

/// A seeded random solvable model. With `mixed`, nf factors are drawn from
/// every stratum and fv factors from both strata; otherwise all factors are
/// interior.
pub fn random_model<T: SampleScalar>(kind: ModelKind, rows: usize, cols: usize, seed: u64, mixed: bool) -> Result<LatticeModel<T>> {
    match kind {
        ModelKind::Nf => {
            let mut sampler = FiberSampler::new(seed);
            let d = sampler.label();
            let pick = |s: &mut FiberSampler| if mixed { s.stratum() } else { Stratum::Interior };
            let phi = (0..rows)
                .map(|_| {
                    let st = pick(&mut sampler);
                    sampler.draw(&d, Side::Source, st).map(GroupoidElement::Nf)
                })
                .collect::<Result<Vec<_>>>()?;
            let psi = (0..cols)
                .map(|_| {
                    let st = pick(&mut sampler);
                    sampler.draw(&d, Side::Target, st).map(GroupoidElement::Nf)
                })
                .collect::<Result<Vec<_>>>()?;
            LatticeModel::build(Label::Pair(d), phi, psi)
        }
        ModelKind::Fv => {
            let mut sampler = FvSampler::new(seed);
            let t: T = sampler.scalar();
            let draw = |s: &mut FvSampler, target: bool| {
                if mixed { s.draw_any(&t, target) } else { s.draw(&t, target, false) }.map(GroupoidElement::Fv)
            };
            let phi = (0..rows).map(|_| draw(&mut sampler, false)).collect::<Result<Vec<_>>>()?;
            let psi = (0..cols).map(|_| draw(&mut sampler, true)).collect::<Result<Vec<_>>>()?;
            LatticeModel::build(Label::Eps(t.clone()), phi, psi)
        }
        ModelKind::Ff => {
            let mut sampler = FiberSampler::new(seed);
            let mut draw = || -> Result<GroupoidElement<T>> {
                for _ in 0..FiberSampler::DEFAULT_RETRIES {
                    let g = [[sampler.scalar(), sampler.scalar()], [sampler.scalar(), sampler.scalar()]];
                    if let Ok(x) = FfElement::new(g, sampler.scalar()) {
                        return Ok(GroupoidElement::Ff(x));
                    }
                }
                Err(Error::ExhaustedRetries(FiberSampler::DEFAULT_RETRIES))
            };
            let phi = (0..rows).map(|_| draw()).collect::<Result<Vec<_>>>()?;
            let psi = (0..cols).map(|_| draw()).collect::<Result<Vec<_>>>()?;
            LatticeModel::build(Label::Point, phi, psi)
        }
    }
}
