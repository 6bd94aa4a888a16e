//! Seeded verification suites. Each check samples its own inputs from the
//! seed and reports the first counterexample it meets.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::ff::{weights_cf, weights_ff, FfElement};
use crate::five::{FvElement, FvSampler};
use crate::groupoid::Label;
use crate::lattice::{random_model, BoundaryAssignment, Check, LatticeModel, ModelKind};
use crate::nf::{FiberSampler, NfElement, Side, Stratum};
use crate::scalar::Field;
use crate::sixvertex::{ObjectLabel, OmegaRegion, SixVertexMatrix};
use crate::ybe::{brute_force_w, solve_w, wcond_holds, yb_commutator_sv, ybe_holds, WSolution};
use crate::Scalar;

type Sv = SixVertexMatrix<Scalar>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Core,
    Ff,
    Nf,
    Fv,
    Lattice,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "core" => Self::Core,
            "ff" => Self::Ff,
            "nf" => Self::Nf,
            "fv" => Self::Fv,
            "lattice" => Self::Lattice,
            "all" => Self::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Core => "core",
            Self::Ff => "ff",
            Self::Nf => "nf",
            Self::Fv => "fv",
            Self::Lattice => "lattice",
            Self::All => "all",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

type CheckFn = fn(usize, u64) -> Check;

const CORE: &[CheckFn] = &[
    cf_family_ybe,
    solve_w_matches_brute_force,
    brute_force_absent_off_condition,
    worked_identity,
    six_commutators,
    delta_product_identities,
    three_delta,
];
const FF: &[CheckFn] = &[ff_family_ybe, ff_group_law];
const NF: &[CheckFn] = &[nf_chain_laws, nf_inverse_laws, nf_star_laws];
const FV: &[CheckFn] = &[fv_laws];
const LATTICE: &[CheckFn] = &[lattice_solvability, lattice_partition_agreement, lattice_transfer_commutation, lattice_beyond_groups];

pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> VerifyReport {
    let groups: Vec<&[CheckFn]> = match suite {
        Suite::Core => vec![CORE],
        Suite::Ff => vec![FF],
        Suite::Nf => vec![NF],
        Suite::Fv => vec![FV],
        Suite::Lattice => vec![LATTICE],
        Suite::All => vec![CORE, FF, NF, FV, LATTICE],
    };
    let checks = groups.into_iter().flatten().map(|f| f(samples, seed)).collect();
    VerifyReport { suite: suite.name(), samples, seed, checks }
}

/// Accumulates the first failure of a check.
struct Tally {
    name: &'static str,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, witness: None }
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn expect_ok<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.expect(false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    fn done(self) -> Check {
        Check { name: self.name.to_string(), pass: self.witness.is_none(), witness: self.witness }
    }
}

fn commutator_witness(u: &Sv, w: &Sv, v: &Sv) -> String {
    let c = yb_commutator_sv(u, w, v);
    match c.first_nonzero() {
        Some(((i, j), x)) => format!("[[{u}, {w}, {v}]] has entry ({i},{j}) = {x}"),
        None => format!("[[{u}, {w}, {v}]] = 0"),
    }
}

/// Admissible parameters for the two weight families: all nonzero and
/// `q1 != q2`.
fn family_params(s: &mut FiberSampler) -> (Scalar, Scalar) {
    loop {
        let (q1, q2): (Scalar, Scalar) = (s.scalar(), s.scalar());
        if q1 != q2 {
            return (q1, q2);
        }
    }
}

type Family = fn(&Scalar, &Scalar, &Scalar, &Scalar, &Scalar) -> Result<Sv>;

fn family_ybe(name: &'static str, family: Family, free_fermionic: bool, n: usize, seed: u64) -> Check {
    let mut t = Tally::new(name);
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let (q1, q2) = family_params(&mut s);
        let z: [Scalar; 4] = std::array::from_fn(|_| s.scalar());
        let (w1, w2): (Scalar, Scalar) = (s.scalar(), s.scalar());
        let u = family(&q1, &q2, &z[0], &z[1], &w1);
        let w = family(&q1, &q2, &(z[0].clone() * z[2].clone()), &(z[1].clone() * z[3].clone()), &(w1.clone() * w2.clone()));
        let v = family(&q1, &q2, &z[2], &z[3], &w2);
        let Some((u, w, v)) = t.expect_ok(u.and_then(|u| Ok((u, w?, v?))), || "family weights".into()) else {
            continue;
        };
        t.expect(ybe_holds(&u, &w, &v), || commutator_witness(&u, &w, &v));
        if free_fermionic {
            for x in [&u, &w, &v] {
                t.expect(x.n_value().is_zero(), || format!("N({x}) = {}", x.n_value()));
            }
        }
    }
    t.done()
}

pub fn cf_family_ybe(n: usize, seed: u64) -> Check {
    family_ybe("cf_family_ybe", weights_cf, false, n, seed)
}

pub fn ff_family_ybe(n: usize, seed: u64) -> Check {
    family_ybe("ff_family_ybe", weights_ff, true, n, seed)
}

/// An interior pair `(u, v)` with `Delta(u) = d = Delta(v*)`.
fn composable_pair(s: &mut FiberSampler) -> Result<(NfElement<Scalar>, NfElement<Scalar>)> {
    let d = s.label();
    Ok((s.draw(&d, Side::Source, Stratum::Interior)?, s.draw(&d, Side::Target, Stratum::Interior)?))
}

pub fn solve_w_matches_brute_force(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("solve_w_matches_brute_force");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let Some((u, v)) = t.expect_ok(composable_pair(&mut s), || "sampling".into()) else { continue };
        let (u, v) = (u.matrix(), v.matrix());
        let Some(w) = t.expect_ok(solve_w(u, v), || format!("solve_w({u}, {v})")) else { continue };
        match brute_force_w(u, v) {
            WSolution::Ray(b) => t.expect(b == w, || format!("brute force {b} vs solve_w {w}")),
            other => t.expect(false, || format!("brute force on ({u}, {v}) gave {other:?}")),
        }
    }
    t.done()
}

pub fn brute_force_absent_off_condition(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("brute_force_absent_off_condition");
    let mut s = FiberSampler::new(seed);
    let mut done = 0;
    while done < n {
        let (d, e): (ObjectLabel<Scalar>, ObjectLabel<Scalar>) = (s.label(), s.label());
        if d == e {
            continue;
        }
        let u = s.draw(&d, Side::Source, Stratum::Interior);
        let v = s.draw(&e, Side::Target, Stratum::Interior);
        let Some((u, v)) = t.expect_ok(u.and_then(|u| Ok((u, v?))), || "sampling".into()) else { break };
        let (u, v) = (u.matrix(), v.matrix());
        if wcond_holds(u, v) != Ok(false) {
            continue;
        }
        done += 1;
        let b = brute_force_w(u, v);
        t.expect(b == WSolution::Absent, || format!("brute force on ({u}, {v}) gave {b:?}"));
        t.expect(solve_w(u, v).is_err(), || format!("solve_w accepted ({u}, {v})"));
    }
    t.done()
}

pub fn worked_identity(_n: usize, _seed: u64) -> Check {
    let mut t = Tally::new("worked_identity");
    let r = Sv::from_ints([5, 5, 4, 2, 3, 1]).expect("valid");
    let expected = Sv::from_ints([17, 17, 16, 8, 9, 1]).expect("valid");
    let w = solve_w(&r, &r);
    t.expect(w.as_ref() == Ok(&expected), || format!("solve_w(r, r) = {w:?}"));
    let i = Scalar::from_int;
    let family = weights_cf(&i(2), &i(1), &i(9), &i(1), &i(1));
    t.expect(family.as_ref() == Ok(&expected), || format!("R^cf(2,1,9,1,1) = {family:?}"));
    t.done()
}

/// Interior triple `(u, w, v)` with `w = solve_w(u, v)`, all three
/// invertible.
fn invertible_triple(s: &mut FiberSampler) -> Result<(Sv, Sv, Sv)> {
    loop {
        let (u, v) = composable_pair(s)?;
        let w = solve_w(u.matrix(), v.matrix())?;
        if [u.matrix(), &w, v.matrix()].iter().all(|x| x.is_invertible()) {
            return Ok((u.matrix().clone(), w, v.matrix().clone()));
        }
    }
}

pub fn six_commutators(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("six_commutators");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let Some((u, w, v)) = t.expect_ok(invertible_triple(&mut s), || "sampling".into()) else { continue };
        let st = |x: &Sv| x.star().expect("invertible");
        let (us, ws, vs) = (st(&u), st(&w), st(&v));
        let cases = [
            (&u, &w, &v),
            (&us, &v, &w),
            (&w, &u, &vs),
            (&v, &us, &ws),
            (&ws, &vs, &u),
            (&vs, &ws, &us),
        ];
        for (a, b, c) in cases {
            t.expect(ybe_holds(a, b, c), || commutator_witness(a, b, c));
        }
    }
    t.done()
}

pub fn delta_product_identities(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("delta_product_identities");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let Some((u, v)) = t.expect_ok(composable_pair(&mut s), || "sampling".into()) else { continue };
        let (u, v) = (u.matrix(), v.matrix());
        let Some(w) = t.expect_ok(solve_w(u, v), || "solve_w".into()) else { continue };
        let c = |x: &Scalar| x.clone();
        let (nu, nv, nw) = (u.n_value(), v.n_value(), w.n_value());
        let pairs = [
            (c(v.a1()) * c(v.b1()) * c(&nw), c(w.a1()) * c(w.b1()) * c(&nv)),
            (c(v.a2()) * c(v.b2()) * c(&nw), c(w.a2()) * c(w.b2()) * c(&nv)),
            (c(w.a1()) * c(w.b2()) * c(&nu), c(u.a1()) * c(u.b2()) * c(&nw)),
            (c(w.a2()) * c(w.b1()) * c(&nu), c(u.a2()) * c(u.b1()) * c(&nw)),
        ];
        for (k, (l, r)) in pairs.into_iter().enumerate() {
            t.expect(l == r, || format!("identity {k} fails for u = {u}, v = {v}: {l} != {r}"));
        }
    }
    t.done()
}

/// On interior triples: `Delta(u) = Delta(v*)`, `Delta(w) = Delta(v)`,
/// `Delta(w*) = Delta(u*)`, and one block for all three.
pub fn three_delta(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("three_delta");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let Some((u, v)) = t.expect_ok(composable_pair(&mut s), || "sampling".into()) else { continue };
        let Some(w) = t.expect_ok(solve_w(u.matrix(), v.matrix()), || "solve_w".into()) else { continue };
        if w.classify().omega != OmegaRegion::OmegaCirc {
            continue;
        }
        let dp = |x: &Sv| x.delta_pair().expect("interior");
        let ((du, dus), (dv, dvs), (dw, dws)) = (dp(u.matrix()), dp(v.matrix()), dp(&w));
        t.expect(du == dvs && dw == dv && dws == dus, || format!("labels disagree on ({u}, {w}, {v})"));
        t.expect(du.block() == dv.block() && dv.block() == dw.block(), || format!("blocks disagree on ({u}, {w}, {v})"));
    }
    t.done()
}

fn random_ff(s: &mut FiberSampler) -> FfElement<Scalar> {
    loop {
        let g = [[s.scalar(), s.scalar()], [s.scalar(), s.scalar()]];
        if let Ok(x) = FfElement::new(g, s.scalar()) {
            return x;
        }
    }
}

pub fn ff_group_law(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("ff_group_law");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let (g, h) = (random_ff(&mut s), random_ff(&mut s));
        let product = g.compose(&h).embed();
        let w = solve_w(&g.embed(), &h.embed());
        t.expect(w.as_ref() == Ok(&product), || format!("solve_w = {w:?}, group product = {product}"));
        let round = FfElement::from_matrix(&product);
        t.expect(round.as_ref() == Ok(&g.compose(&h)), || "embedding does not round-trip".into());
        t.expect(g.compose(&g.inverse()) == FfElement::identity(), || "inverse law".into());
    }
    t.done()
}

/// A composable chain `(u, v, t)`. With `mixed`, every factor comes from a
/// random stratum.
pub fn nf_chain(s: &mut FiberSampler, mixed: bool) -> Result<[NfElement<Scalar>; 3]> {
    let pick = |s: &mut FiberSampler| if mixed { s.stratum() } else { Stratum::Interior };
    let st = pick(s);
    let v = s.free(st)?;
    let st = pick(s);
    let u = s.draw(&v.delta_star(), Side::Source, st)?;
    let st = pick(s);
    let t = s.draw(&v.delta(), Side::Target, st)?;
    Ok([u, v, t])
}

fn has_boundary_factor(chain: &[NfElement<Scalar>]) -> bool {
    chain.iter().any(|e| e.region() != OmegaRegion::OmegaCirc)
}

/// Associativity, transport of labels and blocks, and the Yang-Baxter
/// equation at each composition, on chains of which at least a fifth
/// carry a boundary factor.
pub fn nf_chain_laws(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("nf_chain_laws");
    let mut s = FiberSampler::new(seed);
    let mut boundary_chains = 0;
    for k in 0..n {
        let Some([u, v, w]) = t.expect_ok(nf_chain(&mut s, k % 2 == 1), || "sampling".into()) else { continue };
        if has_boundary_factor(&[u.clone(), v.clone(), w.clone()]) {
            boundary_chains += 1;
        }
        let uv = u.compose(&v);
        let vw = v.compose(&w);
        let Some((uv, vw)) = t.expect_ok(uv.and_then(|a| Ok((a, vw?))), || format!("composing {u}, {v}, {w}")) else {
            continue;
        };
        let left = uv.compose(&w);
        let right = u.compose(&vw);
        t.expect(left.is_ok() && left == right, || format!("({u} * {v}) * {w} = {left:?} but u * (v * w) = {right:?}"));
        for (a, b, ab) in [(&u, &v, &uv), (&v, &w, &vw)] {
            t.expect(ybe_holds(a.matrix(), ab.matrix(), b.matrix()), || commutator_witness(a.matrix(), ab.matrix(), b.matrix()));
            t.expect(ab.delta() == b.delta(), || format!("Delta({ab}) != Delta({b})"));
            t.expect(ab.inverse().delta() == a.inverse().delta(), || format!("Delta of inverses differ for {a} * {b}"));
            t.expect(ab.delta0() == a.delta0() && a.delta0() == b.delta0(), || format!("blocks differ for {a} * {b}"));
        }
    }
    let need = n.div_ceil(5);
    t.expect(boundary_chains >= need, || format!("only {boundary_chains} chains had a boundary factor, need {need}"));
    t.done()
}

/// Inverse axiom, idempotent laws, cancellation and `(u * v)' = v' * u'`.
pub fn nf_inverse_laws(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("nf_inverse_laws");
    let mut s = FiberSampler::new(seed);
    for k in 0..n {
        let Some([r, u, v]) = t.expect_ok(nf_chain(&mut s, k % 2 == 1), || "sampling".into()) else { continue };
        let ui = u.inverse();
        let left_unit = NfElement::idempotent(&u.delta_star());
        let right_unit = NfElement::idempotent(&u.delta());
        t.expect(u.compose(&ui).as_ref() == Ok(&left_unit), || format!("u * u' != I for u = {u}"));
        t.expect(ui.compose(&u).as_ref() == Ok(&right_unit), || format!("u' * u != I for u = {u}"));
        t.expect(left_unit.compose(&u).as_ref() == Ok(&u), || format!("left unit fails for {u}"));
        t.expect(u.compose(&right_unit).as_ref() == Ok(&u), || format!("right unit fails for {u}"));
        t.expect(right_unit.compose(&right_unit).as_ref() == Ok(&right_unit), || "idempotent is not idempotent".into());
        t.expect(ui.inverse() == u, || format!("u'' != u for {u}"));
        let cancel = r.compose(&u).and_then(|x| x.compose(&ui));
        t.expect(cancel.as_ref() == Ok(&r), || format!("(r * u) * u' = {cancel:?}, r = {r}"));
        let cancel = u.compose(&v).and_then(|x| ui.compose(&x));
        t.expect(cancel.as_ref() == Ok(&v), || format!("u' * (u * t) = {cancel:?}, t = {v}"));
        let lhs = u.compose(&v).map(|x| x.inverse());
        let rhs = v.inverse().compose(&ui);
        t.expect(lhs.is_ok() && lhs == rhs, || format!("(u * v)' = {lhs:?} but v' * u' = {rhs:?}"));
    }
    t.done()
}

/// Star is an involution, preserves blocks, swaps `Gamma_a` with
/// `Omega_B`, and sends the boundary element `(g_a, 1, 2)` to
/// `((-2,-6,-2,-3,1,6), 3, 2/3)`.
pub fn nf_star_laws(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("nf_star_laws");
    let mut s = FiberSampler::new(seed);
    for _ in 0..n {
        let st = s.stratum();
        let Some(e) = t.expect_ok(s.free::<Scalar>(st), || "sampling".into()) else { continue };
        let es = e.star();
        t.expect(es.star() == e, || format!("star is not an involution on {e}"));
        t.expect(es.delta0() == e.delta0(), || format!("star changes the block of {e}"));
        let expected = match e.region() {
            OmegaRegion::OmegaSmallA => OmegaRegion::OmegaBlock,
            OmegaRegion::OmegaBlock => OmegaRegion::OmegaSmallA,
            other => other,
        };
        t.expect(es.region() == expected, || format!("star of {e} lands in {:?}", es.region()));
    }
    let i = Scalar::from_int;
    let ga = NfElement::boundary_element(Sv::from_ints([0, 0, 2, 3, 6, 1]).expect("valid"), i(1), i(2));
    let target = NfElement::new(Sv::from_ints([-2, -6, -2, -3, 1, 6]).expect("valid"), i(3), Scalar::from_ratio(2, 3));
    match (ga, target) {
        (Ok(ga), Ok(target)) => {
            t.expect(ga.star() == target, || format!("star of (g_a, 1, 2) is {}", ga.star()));
            t.expect(target.region() == OmegaRegion::OmegaBlock, || "image is not in Omega_B".into());
        }
        (a, b) => t.expect(false, || format!("example construction failed: {a:?} {b:?}")),
    }
    t.done()
}

/// A composable five-vertex chain, boundary factors allowed.
pub fn fv_chain(s: &mut FvSampler) -> Result<[FvElement<Scalar>; 3]> {
    let e: Scalar = s.scalar();
    let v = s.draw_any(&e, false)?;
    let u = s.draw_any(&v.eps_star(), false)?;
    let t = s.draw_any(v.eps(), true)?;
    Ok([u, v, t])
}

pub fn fv_laws(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("fv_laws");
    let mut s = FvSampler::new(seed);
    for _ in 0..n {
        let Some([u, v, w]) = t.expect_ok(fv_chain(&mut s), || "sampling".into()) else { continue };
        let uv = u.compose(&v);
        let vw = v.compose(&w);
        let Some((uv, vw)) = t.expect_ok(uv.and_then(|a| Ok((a, vw?))), || format!("composing {u}, {v}, {w}")) else {
            continue;
        };
        let left = uv.compose(&w);
        let right = u.compose(&vw);
        t.expect(left.is_ok() && left == right, || format!("five-vertex associativity fails on {u}, {v}, {w}"));
        for (a, b, ab) in [(&u, &v, &uv), (&v, &w, &vw)] {
            t.expect(ybe_holds(a.matrix(), ab.matrix(), b.matrix()), || commutator_witness(a.matrix(), ab.matrix(), b.matrix()));
            t.expect(ab.eps() == b.eps(), || format!("eps({ab}) != eps({b})"));
            t.expect(ab.eps_star() == a.eps_star(), || format!("eps*({ab}) != eps*({a})"));
        }
        t.expect(u.star().star() == u, || format!("star is not an involution on {u}"));
        t.expect(u.inverse().inverse() == u, || format!("inverse is not an involution on {u}"));
    }
    let u5 = Sv::from_ints([2, 3, 1, 0, 1, 2]).and_then(FvElement::lift);
    let v5 = Sv::from_ints([1, 1, 1, 0, 1, -1]).and_then(FvElement::lift);
    let expected = Sv::from_ints([2, 3, 2, 0, 1, -2]).and_then(|m| FvElement::new(m, Scalar::from_int(2)));
    let w = u5.and_then(|u| u.compose(&v5?));
    t.expect(w.is_ok() && w == expected, || format!("u5 * v5 = {w:?}"));
    t.done()
}

pub fn lattice_solvability(_n: usize, seed: u64) -> Check {
    let mut t = Tally::new("lattice_solvability");
    let model = random_model::<Scalar>(ModelKind::Nf, 3, 4, seed, false);
    if let Some(model) = t.expect_ok(model, || "building the 3x4 model".into()) {
        let report = model.check_solvability();
        let first = report.failures().next().cloned();
        t.expect(report.all_pass(), || format!("{first:?}"));
        t.expect(report.row_solvable() == report.column_solvable(), || "row and column solvability disagree".into());
        t.expect(report.checks.iter().any(|c| c.name.starts_with("row_ybe")), || "no Yang-Baxter instances ran".into());
    }
    t.done()
}

/// Random boundary with as many 1-edges entering (west, south) as leaving
/// (east, north), so the partition function need not vanish.
pub fn balanced_boundary<R: Rng>(rng: &mut R, m: usize, n: usize, periodic: bool) -> BoundaryAssignment {
    let mut bits = |len: usize| (0..len).map(|_| rng.random_range(0..2u8)).collect::<Vec<_>>();
    loop {
        let (south, north) = (bits(n), bits(n));
        let bc = if periodic {
            BoundaryAssignment::periodic(south, north)
        } else {
            BoundaryAssignment::fixed(bits(m), bits(m), south, north)
        };
        let count = |v: &[u8]| v.iter().map(|&b| b as usize).sum::<usize>();
        if count(&bc.west) + count(&bc.south) == count(&bc.east) + count(&bc.north) {
            return bc;
        }
    }
}

/// Enumeration against transfer contraction on random models of at most
/// 3x3 sites, both boundary modes.
pub fn lattice_partition_agreement(n: usize, seed: u64) -> Check {
    let mut t = Tally::new("lattice_partition_agreement");
    let mut s = FiberSampler::new(seed);
    for k in 0..n.min(10) {
        let (m, c) = (s.rng().random_range(1..=3), s.rng().random_range(1..=3));
        let kind = [ModelKind::Nf, ModelKind::Ff, ModelKind::Fv][k % 3];
        let Some(model) = t.expect_ok(random_model::<Scalar>(kind, m, c, seed + k as u64, true), || "model".into()) else {
            continue;
        };
        for periodic in [false, true] {
            let bc = balanced_boundary(s.rng(), m, c, periodic);
            let a = model.partition_enumerate(&bc);
            let b = model.partition_transfer(&bc);
            t.expect(a.is_ok() && a == b, || format!("{m}x{c} {kind:?} {bc:?}: enumerate {a:?}, transfer {b:?}"));
        }
    }
    t.done()
}

pub fn lattice_transfer_commutation(_n: usize, seed: u64) -> Check {
    let mut t = Tally::new("lattice_transfer_commutation");
    let mut exercised = 0;
    for cols in 1..=4 {
        for kind in [ModelKind::Nf, ModelKind::Ff, ModelKind::Fv] {
            let model = random_model::<Scalar>(kind, 3, cols, seed + cols as u64, true);
            let Some(model) = t.expect_ok(model, || "model".into()) else { continue };
            let Some(checks) = t.expect_ok(model.transfer_commutation(), || "transfer".into()) else { continue };
            for c in checks {
                exercised += c.rho_invertible as usize;
                t.expect(c.pass(), || format!("{kind:?} n={cols}: rows {} and {} do not commute", c.row, c.row + 1));
            }
        }
    }
    t.expect(exercised > 0, || "no row pair had an invertible rho".into());
    t.done()
}

/// A 2x2 blown-up model whose grid labels vary along rows and columns,
/// which a disjoint union of groups cannot produce, still passes every
/// solvability check.
pub fn lattice_beyond_groups(_n: usize, seed: u64) -> Check {
    let mut t = Tally::new("lattice_beyond_groups");
    let model: Result<LatticeModel<Scalar>> = random_model(ModelKind::Nf, 2, 2, seed, false);
    if let Some(model) = t.expect_ok(model, || "model".into()) {
        let g = model.gamma();
        t.expect(g[0][0].delta() != g[0][1].delta(), || "Delta(gamma_11) = Delta(gamma_12)".into());
        t.expect(g[0][0].inverse().delta() != g[1][0].inverse().delta(), || "Delta(gamma_11') = Delta(gamma_21')".into());
        t.expect(g.iter().flatten().any(|x| x.delta() != x.inverse().delta()), || "every element has Delta(g) = Delta(g')".into());
        let report = model.check_solvability();
        t.expect(report.all_pass(), || format!("{:?}", report.failures().next()));
    }
    let group = random_model::<Scalar>(ModelKind::Ff, 2, 2, seed, false);
    if let Some(group) = t.expect_ok(group, || "group model".into()) {
        let labels: Vec<_> = group.gamma().iter().flatten().flat_map(|x| [x.delta(), x.inverse().delta()]).collect();
        t.expect(labels.iter().all(|l| *l == Label::Point), || "group model has nontrivial labels".into());
    }
    t.done()
}
