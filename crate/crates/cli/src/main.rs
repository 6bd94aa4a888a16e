//! `ybg`: JSON front end for the yb-groupoid library.
//!
//! Exit status: 0 on success, 1 when a checked property fails (the report
//! on stdout names the witness), 2 on usage or input errors.

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use yb_groupoid::json::{family_params, parse_document, region_to_wire, Wire};
use yb_groupoid::lattice::{random_model, TransferCheck};
use yb_groupoid::verify::{run_suite, Suite};
use yb_groupoid::{
    brute_force_w, solve_w, weights_cf, weights_ff, Element, Error, FiberSampler, FvElement, FvSampler, Label,
    Model, ModelKind, NfElement, Scalar, Side, SixVertex, Stratum, WSolution,
};

#[derive(Parser)]
#[command(name = "ybg", version, about = "Exact six-vertex Yang-Baxter groupoids and lattice models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Inputs are a file path, `-` for stdin, or inline JSON starting with `{`.
#[derive(Subcommand)]
enum Command {
    /// Region flags and tag of a six-vertex matrix (or of an element's matrix).
    Classify {
        #[arg(long)]
        u: String,
    },
    /// Star of a matrix or of a groupoid element.
    Star {
        #[arg(long)]
        u: String,
    },
    /// Groupoid inverse of an element.
    Inverse {
        #[arg(long)]
        u: String,
    },
    /// Object labels: Delta and Delta of the star.
    Delta {
        #[arg(long)]
        u: String,
    },
    /// Normalized w with [[u, w, v]] = 0.
    SolveW {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Also run the linear-algebra solver and compare.
        #[arg(long)]
        brute_force: bool,
    },
    /// Groupoid composition u * v.
    Compose {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Seeded draw from the fiber over a label.
    Sample {
        /// Label: {"d1","d2"} for nf, {"eps"} for fv.
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value = "source")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "interior")]
        stratum: StratumArg,
        #[arg(long)]
        seed: u64,
    },
    /// The idempotent at a label ("point", {"d1","d2"} or {"eps"}).
    Idempotent {
        #[arg(long)]
        d: String,
    },
    /// Weights of the R^cf or R^ff family from {"q1","q2","z1","z2","w"}.
    Weights {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        params: String,
    },
    /// Run seeded verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Build a lattice model from {"d","phi","psi"}, or a random one.
    ModelBuild {
        #[arg(long, conflicts_with_all = ["rows", "cols", "seed", "kind", "mixed"])]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "nf")]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Draw factors from boundary strata too.
        #[arg(long)]
        mixed: bool,
    },
    /// Solvability report for a model.
    ModelCheck {
        #[arg(long)]
        model: String,
    },
    /// Partition function under a boundary assignment.
    ModelPartition {
        #[arg(long)]
        model: String,
        #[arg(long)]
        boundary: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Commutation of adjacent row transfer matrices.
    ModelTransferCommute {
        #[arg(long)]
        model: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Source,
    Target,
}

#[derive(Clone, Copy, ValueEnum)]
enum StratumArg {
    Interior,
    GammaB,
    GammaA,
    OmegaBlock,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cf,
    Ff,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Ff,
    Nf,
    Fv,
    Lattice,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ff,
    Nf,
    Fv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enumerate,
    Transfer,
    Both,
}

/// Result of a command: the JSON to print and whether every checked
/// property held.
struct Outcome {
    body: Value,
    ok: bool,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Self { body, ok: true }
    }
}

/// Input or usage problem, reported on stderr with exit status 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn read_input(arg: &str) -> Result<Value, UsageError> {
    let text = if arg.trim_start().starts_with('{') || arg.trim_start().starts_with('"') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| UsageError(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(arg).map_err(|e| UsageError(format!("{arg}: {e}")))?
    };
    Ok(parse_document(&text)?)
}

/// Either a bare matrix or a groupoid element.
enum Input {
    Matrix(SixVertex),
    Element(Element),
}

impl Input {
    fn parse(v: &Value) -> Result<Self, UsageError> {
        if v.get("a1").is_some() {
            Ok(Self::Matrix(SixVertex::from_wire(v)?))
        } else {
            Ok(Self::Element(Element::from_wire(v)?))
        }
    }

    fn matrix(&self) -> SixVertex {
        match self {
            Self::Matrix(m) => m.clone(),
            Self::Element(e) => e.pi(),
        }
    }
}

fn error_report(e: &Error) -> Value {
    let kind = match e {
        Error::ObjectMismatch { .. } => "ObjectMismatch",
        Error::NotComposable => "NotComposable",
        Error::TagMismatch(..) => "TagMismatch",
        _ => "Error",
    };
    json!({ "error": kind, "message": e.to_string() })
}

fn star(u: &Value) -> CmdResult {
    Ok(Outcome::ok(match Input::parse(u)? {
        Input::Matrix(m) => m.star()?.to_wire(),
        Input::Element(Element::Nf(e)) => e.star().to_wire(),
        Input::Element(Element::Fv(e)) => e.star().to_wire(),
        Input::Element(Element::Ff(_)) => {
            return Err(UsageError("free-fermionic elements have no star; use `inverse`".into()));
        }
    }))
}

fn delta(u: &Value) -> CmdResult {
    Ok(Outcome::ok(match Input::parse(u)? {
        Input::Matrix(m) => {
            let (d, ds) = m.delta_pair()?;
            json!({ "delta": d.to_wire(), "delta_star": ds.to_wire(), "block": d.block().to_wire() })
        }
        Input::Element(e) => json!({ "delta": e.delta().to_wire(), "delta_star": e.delta_star().to_wire() }),
    }))
}

fn solve(u: &Value, v: &Value, brute: bool) -> CmdResult {
    let (u, v) = (Input::parse(u)?.matrix(), Input::parse(v)?.matrix());
    let w = match solve_w(&u, &v) {
        Ok(w) => w,
        Err(e @ Error::NotComposable) => return Ok(Outcome { body: error_report(&e), ok: false }),
        Err(e) => return Err(e.into()),
    };
    if !brute {
        return Ok(Outcome::ok(w.to_wire()));
    }
    let (oracle, agree) = match brute_force_w(&u, &v) {
        WSolution::Ray(b) => (json!({ "ray": b.to_wire() }), b == w),
        WSolution::Absent => (json!("absent"), false),
        WSolution::MultiDimensional(basis) => (json!({ "dimension": basis.len() }), false),
    };
    Ok(Outcome { body: json!({ "w": w.to_wire(), "brute_force": oracle, "agree": agree }), ok: agree })
}

fn compose(u: &Value, v: &Value) -> CmdResult {
    let (u, v) = (Element::from_wire(u)?, Element::from_wire(v)?);
    match u.compose(&v) {
        Ok(w) => Ok(Outcome::ok(w.to_wire())),
        Err(e @ (Error::ObjectMismatch { .. } | Error::TagMismatch(..))) => {
            let mut body = error_report(&e);
            if u.tag() == v.tag() {
                body["left"] = u.delta().to_wire();
                body["right"] = v.delta_star().to_wire();
            }
            Ok(Outcome { body, ok: false })
        }
        Err(e) => Err(e.into()),
    }
}

fn sample(d: &Value, side: SideArg, stratum: StratumArg, seed: u64) -> CmdResult {
    let target = matches!(side, SideArg::Target);
    match Label::from_wire(d)? {
        Label::Pair(d) => {
            let stratum = match stratum {
                StratumArg::Interior => Stratum::Interior,
                StratumArg::GammaB => Stratum::BoundaryB,
                StratumArg::GammaA => Stratum::BoundaryA,
                StratumArg::OmegaBlock => Stratum::Block,
            };
            let side = if target { Side::Target } else { Side::Source };
            let e: NfElement<Scalar> = FiberSampler::new(seed).draw(&d, side, stratum)?;
            Ok(Outcome::ok(e.to_wire()))
        }
        Label::Eps(t) => {
            let boundary = match stratum {
                StratumArg::Interior => false,
                StratumArg::GammaB => true,
                _ => return Err(UsageError("five-vertex fibers have strata interior and gamma-b only".into())),
            };
            let e: FvElement<Scalar> = FvSampler::new(seed).draw(&t, target, boundary)?;
            Ok(Outcome::ok(e.to_wire()))
        }
        Label::Point => Err(UsageError("the free-fermionic group has a single object; nothing to sample".into())),
    }
}

fn weights(family: FamilyArg, params: &Value) -> CmdResult {
    let [q1, q2, z1, z2, w] = family_params(params)?;
    let m = match family {
        FamilyArg::Cf => weights_cf(&q1, &q2, &z1, &z2, &w)?,
        FamilyArg::Ff => weights_ff(&q1, &q2, &z1, &z2, &w)?,
    };
    Ok(Outcome::ok(m.to_wire()))
}

fn verify(suite: SuiteArg, samples: usize, seed: u64) -> CmdResult {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Ff => Suite::Ff,
        SuiteArg::Nf => Suite::Nf,
        SuiteArg::Fv => Suite::Fv,
        SuiteArg::Lattice => Suite::Lattice,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, samples, seed);
    let ok = report.all_pass();
    Ok(Outcome { body: serde_json::to_value(&report).expect("report serializes"), ok })
}

fn model_build(input: Option<String>, kind: KindArg, rows: usize, cols: usize, seed: Option<u64>, mixed: bool) -> CmdResult {
    let model = match input {
        Some(path) => Model::from_wire(&read_input(&path)?)?,
        None => {
            let seed = seed.ok_or_else(|| UsageError("random models need --seed (or pass --input)".into()))?;
            if rows == 0 || cols == 0 {
                return Err(UsageError("--rows and --cols must be positive".into()));
            }
            let kind = match kind {
                KindArg::Ff => ModelKind::Ff,
                KindArg::Nf => ModelKind::Nf,
                KindArg::Fv => ModelKind::Fv,
            };
            random_model(kind, rows, cols, seed, mixed)?
        }
    };
    Ok(Outcome::ok(model.to_wire()))
}

fn model_check(model: &Value) -> CmdResult {
    let report = Model::from_wire(model)?.check_solvability();
    let ok = report.all_pass();
    let mut body = serde_json::to_value(&report).expect("report serializes");
    body["row_solvable"] = json!(report.row_solvable());
    body["column_solvable"] = json!(report.column_solvable());
    Ok(Outcome { body, ok })
}

fn model_partition(model: &Value, boundary: &Value, method: MethodArg) -> CmdResult {
    let model = Model::from_wire(model)?;
    let bc = yb_groupoid::BoundaryAssignment::from_wire(boundary)?;
    let mut body = serde_json::Map::new();
    let mut values = Vec::new();
    if method != MethodArg::Transfer {
        let z = model.partition_enumerate(&bc)?;
        body.insert("enumerate".into(), z.to_wire());
        values.push(z);
    }
    if method != MethodArg::Enumerate {
        let z = model.partition_transfer(&bc)?;
        body.insert("transfer".into(), z.to_wire());
        values.push(z);
    }
    let ok = values.windows(2).all(|w| w[0] == w[1]);
    if method == MethodArg::Both {
        body.insert("agree".into(), json!(ok));
    }
    Ok(Outcome { body: Value::Object(body), ok })
}

fn model_transfer_commute(model: &Value) -> CmdResult {
    let checks = Model::from_wire(model)?.transfer_commutation()?;
    let ok = checks.iter().all(TransferCheck::pass);
    Ok(Outcome { body: json!({ "checks": checks }), ok })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify { u } => Ok(Outcome::ok(region_to_wire(&Input::parse(&read_input(&u)?)?.matrix().classify()))),
        Command::Star { u } => star(&read_input(&u)?),
        Command::Inverse { u } => Ok(Outcome::ok(Element::from_wire(&read_input(&u)?)?.inverse().to_wire())),
        Command::Delta { u } => delta(&read_input(&u)?),
        Command::SolveW { u, v, brute_force } => solve(&read_input(&u)?, &read_input(&v)?, brute_force),
        Command::Compose { u, v } => compose(&read_input(&u)?, &read_input(&v)?),
        Command::Sample { d, side, stratum, seed } => sample(&read_input(&d)?, side, stratum, seed),
        Command::Idempotent { d } => Ok(Outcome::ok(Label::from_wire(&read_input(&d)?)?.idempotent()?.to_wire())),
        Command::Weights { family, params } => weights(family, &read_input(&params)?),
        Command::Verify { suite, samples, seed } => verify(suite, samples, seed),
        Command::ModelBuild { input, kind, rows, cols, seed, mixed } => model_build(input, kind, rows, cols, seed, mixed),
        Command::ModelCheck { model } => model_check(&read_input(&model)?),
        Command::ModelPartition { model, boundary, method } => {
            model_partition(&read_input(&model)?, &read_input(&boundary)?, method)
        }
        Command::ModelTransferCommute { model } => model_transfer_commute(&read_input(&model)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.body).expect("json serializes");
            // A closed downstream pipe is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("ybg: {msg}");
            ExitCode::from(2)
        }
    }
}
