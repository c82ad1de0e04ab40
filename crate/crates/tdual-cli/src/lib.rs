//! `tdc`: file-level front end for the tdual engine.
//!
//! Every subcommand loads JSON documents, makes one library call and prints
//! the result in canonical form. Exit codes: 0 success, 1 a validation or
//! verification failure, 2 a cohomological obstruction, 3 malformed input.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tdual::cocycle::{
    act_b_tb2r, act_b_td, find_polarization, i_push_tb2r, i_push_td, lele_td, leftleg_td,
    leftleg_tdhalf, p_push_tb1, p_push_tdhalf, polarize, random_gauge_tb1, random_gauge_tdhalf, random_tb1,
    random_tb2r, random_td, random_tdhalf, rele_td, rightleg_td, flip_td, solve_gauge_restricted_tb1,
    solve_gauge_restricted_tdhalf, strip_b_tdhalf, verify_gauge_tb1, verify_gauge_tb2r, verify_gauge_td,
    verify_gauge_tdhalf, CocycleError, CocycleTB1, CocycleTDhalf, GaugeTB1, GaugeTDhalf,
};
use tdual::crossed::pi_invariants;
use tdual::dualize::{dualize, lift_gauge};
use tdual::io::{
    document_json, failure_json, obstruction_json, parse_document, pass_json, render, trace_json, AnyCocycle,
    AnyGauge, Document, IntCochain,
};
use tdual::nerve::{cohomology_rank, cup, Cochain, Nerve, Ring};
use tdual::sample::{Sampler, DEFAULT_SEED};
use tdual::scalars::{AffChar, Circle, IntVec, SkewIntMat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_OBSTRUCTED: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tdc", version, about = "Exact Čech cocycles for torus bundles, T-duality correspondences and their dualization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check all cocycle conditions of a TB2/TB2R/TB1/TD/TDhalf/SO document.
    Validate { file: String },
    /// Lift a TB1 cocycle to a TDhalf cocycle with the same left leg.
    Dualize {
        file: String,
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
        /// Emit the intermediate cochains and the witness gauge as well.
        #[arg(long)]
        trace: bool,
    },
    /// Left leg: TDhalf -> TB1, TD -> TB2R.
    Leftleg { file: String },
    /// Right leg of a TD cocycle.
    Rightleg { file: String },
    /// Exchange the two legs of a TD cocycle.
    Flip { file: String },
    /// Act by a skew integer matrix (TD or TB2R), given as JSON, e.g. '[[0,-1],[1,0]]'.
    Act {
        file: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Push forward along a named map.
    Push {
        file: String,
        #[arg(long = "map")]
        map: PushMap,
    },
    /// Verify that GAUGE relates X to Y.
    EquivVerify { x: String, y: String, gauge: String },
    /// Solve for a gauge X -> Y with the integer and matrix parts taken from a gauge file.
    EquivSolve {
        x: String,
        y: String,
        #[arg(long = "fix-int")]
        fix_int: String,
    },
    /// Lift a TB1 gauge between the left legs of two TDhalf cocycles.
    LiftGauge { x: String, y: String, gauge: String },
    /// Trivialize B by a section and return the TD cocycle; searches for one without --section.
    Polarize {
        file: String,
        #[arg(long = "section")]
        section: Option<String>,
    },
    /// Cup product of two integer cochains.
    Cup { a: String, b: String },
    /// Rank of a cohomology group of a nerve (a file, or circle3|cone|sphere|full:N).
    Rank {
        nerve: String,
        #[arg(long = "deg")]
        deg: usize,
        #[arg(long = "ring", default_value = "Q")]
        ring: RingArg,
    },
    /// Describe the data of a cocycle type.
    Info {
        kind: InfoKind,
        #[arg(long = "n", default_value_t = 1)]
        n: usize,
    },
    /// Write one of the built-in example cocycles.
    GenExample {
        name: ExampleName,
        #[arg(long = "n", default_value_t = 2)]
        n: usize,
        #[arg(long = "seed")]
        seed: Option<u64>,
        /// Cocycle type for zero and random-cone (default TB1).
        #[arg(long = "type")]
        kind: Option<InfoKind>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushMap {
    /// TD -> TDhalf, TB2R -> TB1
    I,
    /// TDhalf -> SO, TB1 -> SO
    P,
    Lele,
    Rele,
    Leftleg,
    Rightleg,
    Flip,
    /// TDhalf with vanishing B -> TD
    Strip,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Z")]
    Z,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfoKind {
    #[value(name = "TB2R")]
    Tb2r,
    #[value(name = "TB1")]
    Tb1,
    #[value(name = "TD")]
    Td,
    #[value(name = "TDhalf")]
    Tdhalf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    #[value(name = "zero")]
    Zero,
    #[value(name = "C_B")]
    CB,
    #[value(name = "random-cone")]
    RandomCone,
    #[value(name = "sphere-obstruction")]
    SphereObstruction,
}

/// Outcome of one subcommand: what to print, where, and the exit status.
struct Outcome {
    code: i32,
    out: Option<Value>,
    diag: Option<String>,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome { code: EXIT_OK, out: Some(v), diag: None }
    }
}

#[derive(Debug)]
struct Malformed(String);

impl<E: std::fmt::Display> From<E> for Malformed {
    fn from(e: E) -> Self {
        Malformed(e.to_string())
    }
}

type R = Result<Outcome, Malformed>;

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    default_seed: u64,
    files: Vec<(String, String)>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String, Malformed> {
        if path == "-" {
            if self.stdin_used {
                return Err(Malformed("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {}", path, e)))
        }
    }
    fn load(&mut self, path: &str) -> Result<Document, Malformed> {
        let text = self.read(path)?;
        Ok(parse_document(&text)?)
    }
    fn cocycle(&mut self, path: &str) -> Result<AnyCocycle, Malformed> {
        match self.load(path)? {
            Document::Cocycle(c) => Ok(c),
            _ => Err(Malformed(format!("{}: expected a cocycle document", path))),
        }
    }
    fn gauge(&mut self, path: &str) -> Result<AnyGauge, Malformed> {
        match self.load(path)? {
            Document::Gauge(g) => Ok(g),
            _ => Err(Malformed(format!("{}: expected a gauge document", path))),
        }
    }
    fn cochain(&mut self, path: &str) -> Result<IntCochain, Malformed> {
        match self.load(path)? {
            Document::Cochain(c) => Ok(c),
            _ => Err(Malformed(format!("{}: expected an integer cochain document", path))),
        }
    }
}

/// Runs one invocation. `args` excludes the program name.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let seed = std::env::var("TDC_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED);
    run_with_seed(args, seed, stdin, stdout, stderr)
}

/// As `run`, with the default seed given explicitly instead of read from TDC_SEED.
pub fn run_with_seed(args: &[String], default_seed: u64, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let argv = std::iter::once("tdc".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { stdin, stdin_used: false, default_seed, files: Vec::new() };
    let outcome = match dispatch(cli.cmd, &mut ctx) {
        Ok(o) => o,
        Err(Malformed(m)) => Outcome { code: EXIT_MALFORMED, out: None, diag: Some(format!("malformed input: {}", m)) },
    };
    for (path, text) in &ctx.files {
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(stderr, "cannot write {}: {}", path, e);
            return EXIT_MALFORMED;
        }
    }
    if let Some(v) = &outcome.out {
        let _ = stdout.write_all(render(v).as_bytes());
    }
    if let Some(d) = &outcome.diag {
        let _ = writeln!(stderr, "{}", d);
    }
    outcome.code
}

fn from_error(e: CocycleError, nerve: &Nerve) -> R {
    match e {
        CocycleError::Failed(f) => Ok(Outcome { code: EXIT_FAIL, diag: Some(f.to_string()), out: Some(failure_json(&f)) }),
        CocycleError::Obstructed(o) => Ok(Outcome {
            code: EXIT_OBSTRUCTED,
            diag: Some(format!("obstruction at {}: degree {} over {}", o.note, o.degree, o.ring.name())),
            out: Some(obstruction_json(&o, nerve)),
        }),
        CocycleError::Precondition(p) => Ok(Outcome {
            code: EXIT_FAIL,
            diag: Some(p.clone()),
            out: Some(json!({ "status": "fail", "reason": p })),
        }),
        CocycleError::Shape(s) => Err(Malformed(s)),
    }
}

fn cocycle_out(c: AnyCocycle) -> Outcome {
    Outcome::ok(document_json(&Document::Cocycle(c)))
}

fn gauge_out(g: AnyGauge) -> Outcome {
    Outcome::ok(document_json(&Document::Gauge(g)))
}

/// Shape errors are malformed input; every other error is reported.
fn checked(c: &AnyCocycle) -> Result<Option<Outcome>, Malformed> {
    match c.validate() {
        Ok(()) => Ok(None),
        Err(e) => from_error(e, c.nerve()).map(Some),
    }
}

fn wrong_type(cmd: &str, got: &AnyCocycle) -> Malformed {
    Malformed(format!("{} does not apply to {} cocycles", cmd, got.type_name()))
}

macro_rules! valid {
    ($c:expr) => {
        if let Some(o) = checked(&$c)? {
            return Ok(o);
        }
    };
}

fn dispatch(cmd: Cmd, ctx: &mut Ctx) -> R {
    match cmd {
        Cmd::Validate { file } => {
            let c = ctx.cocycle(&file)?;
            valid!(c);
            Ok(Outcome::ok(pass_json()))
        }
        Cmd::Dualize { file, output, trace } => {
            let x = match ctx.cocycle(&file)? {
                AnyCocycle::TB1(x) => x,
                AnyCocycle::TB2R(x) => i_push_tb2r(&x),
                other => return Err(wrong_type("dualize", &other)),
            };
            let d = match dualize(&x) {
                Ok(d) => d,
                Err(e) => return from_error(e, &x.nerve),
            };
            let dual = document_json(&Document::Cocycle(AnyCocycle::TDhalf(d.dual)));
            let body = if trace { json!({ "dual": dual, "trace": trace_json(&d.trace, x.n, &x.nerve) }) } else { dual };
            match output {
                Some(path) if path != "-" => {
                    ctx.files.push((path, render(&body)));
                    Ok(Outcome { code: EXIT_OK, out: None, diag: None })
                }
                _ => Ok(Outcome::ok(body)),
            }
        }
        Cmd::Leftleg { file } => push(ctx, &file, PushMap::Leftleg),
        Cmd::Rightleg { file } => push(ctx, &file, PushMap::Rightleg),
        Cmd::Flip { file } => push(ctx, &file, PushMap::Flip),
        Cmd::Push { file, map } => push(ctx, &file, map),
        Cmd::Act { file, b } => {
            let c = ctx.cocycle(&file)?;
            valid!(c);
            let rows: Value = serde_json::from_str(&b).map_err(|e| Malformed(format!("--B: {}", e)))?;
            let mat = parse_matrix(&rows, c.n())?;
            match c {
                AnyCocycle::TD(x) => Ok(cocycle_out(AnyCocycle::TD(act_b_td(&x, &mat)))),
                AnyCocycle::TB2R(x) => Ok(cocycle_out(AnyCocycle::TB2R(act_b_tb2r(&x, &mat)))),
                other => Err(wrong_type("act", &other)),
            }
        }
        Cmd::EquivVerify { x, y, gauge } => {
            let (x, y, g) = (ctx.cocycle(&x)?, ctx.cocycle(&y)?, ctx.gauge(&gauge)?);
            valid!(x);
            valid!(y);
            let nv = x.nerve().clone();
            let res = match (&x, &y, &g) {
                (AnyCocycle::TDhalf(x), AnyCocycle::TDhalf(y), AnyGauge::TDhalf { g, .. }) => verify_gauge_tdhalf(x, y, g),
                (AnyCocycle::TD(x), AnyCocycle::TD(y), AnyGauge::TDhalf { g, .. }) => verify_gauge_td(x, y, g),
                (AnyCocycle::TB1(x), AnyCocycle::TB1(y), AnyGauge::TB1 { g, .. }) => verify_gauge_tb1(x, y, g),
                (AnyCocycle::TB2R(x), AnyCocycle::TB2R(y), AnyGauge::TB1 { g, .. }) => verify_gauge_tb2r(x, y, g),
                _ => return Err(Malformed("cocycle and gauge types do not match".into())),
            };
            match res {
                Ok(()) => Ok(Outcome::ok(pass_json())),
                Err(e) => from_error(e, &nv),
            }
        }
        Cmd::EquivSolve { x, y, fix_int } => {
            let (x, y, g) = (ctx.cocycle(&x)?, ctx.cocycle(&y)?, ctx.gauge(&fix_int)?);
            valid!(x);
            valid!(y);
            let nv = x.nerve().clone();
            match (x, y, g) {
                (AnyCocycle::TDhalf(x), AnyCocycle::TDhalf(y), AnyGauge::TDhalf { g, .. }) => {
                    match solve_gauge_restricted_tdhalf(&x, &y, &g.c, &g.z, &g.z_hat) {
                        Ok(h) => Ok(gauge_out(AnyGauge::TDhalf { n: x.n, nerve: nv, g: h })),
                        Err(e) => from_error(e, &nv),
                    }
                }
                (AnyCocycle::TB1(x), AnyCocycle::TB1(y), AnyGauge::TB1 { g, .. }) => match solve_gauge_restricted_tb1(&x, &y, &g.c, &g.z) {
                    Ok(h) => Ok(gauge_out(AnyGauge::TB1 { n: x.n, nerve: nv, g: h })),
                    Err(e) => from_error(e, &nv),
                },
                _ => Err(Malformed("equiv-solve needs two TDhalf cocycles with a GaugeTDhalf, or two TB1 with a GaugeTB1".into())),
            }
        }
        Cmd::LiftGauge { x, y, gauge } => {
            let (x, y, g) = (ctx.cocycle(&x)?, ctx.cocycle(&y)?, ctx.gauge(&gauge)?);
            match (x, y, g) {
                (AnyCocycle::TDhalf(x), AnyCocycle::TDhalf(y), AnyGauge::TB1 { g, .. }) => {
                    valid!(AnyCocycle::TDhalf(x.clone()));
                    valid!(AnyCocycle::TDhalf(y.clone()));
                    g.check_shape(&x.nerve, x.n).map_err(|e| Malformed(e.to_string()))?;
                    match lift_gauge(&x, &y, &g) {
                        Ok(h) => Ok(gauge_out(AnyGauge::TDhalf { n: x.n, nerve: x.nerve.clone(), g: h })),
                        Err(e) => from_error(e, &x.nerve),
                    }
                }
                _ => Err(Malformed("lift-gauge needs two TDhalf cocycles and a GaugeTB1".into())),
            }
        }
        Cmd::Polarize { file, section } => {
            let x = match ctx.cocycle(&file)? {
                AnyCocycle::TDhalf(x) => x,
                other => return Err(wrong_type("polarize", &other)),
            };
            valid!(AnyCocycle::TDhalf(x.clone()));
            let c = match section {
                Some(path) => match ctx.gauge(&path)? {
                    AnyGauge::TDhalf { g, .. } => g.c,
                    AnyGauge::TB1 { g, .. } => g.c,
                },
                None => match find_polarization(&x) {
                    Ok(c) => c,
                    Err(o) => return from_error(CocycleError::Obstructed(o), &x.nerve),
                },
            };
            match polarize(&x, &c) {
                Ok(td) => Ok(cocycle_out(AnyCocycle::TD(td))),
                Err(e) => from_error(e, &x.nerve),
            }
        }
        Cmd::Cup { a, b } => {
            let (a, b) = (ctx.cochain(&a)?, ctx.cochain(&b)?);
            if a.nerve != b.nerve {
                return Err(Malformed("cochains live on different nerves".into()));
            }
            let values = cup(&a.nerve, &a.values, &b.values)?;
            Ok(Outcome::ok(document_json(&Document::Cochain(IntCochain { nerve: a.nerve, values }))))
        }
        Cmd::Rank { nerve, deg, ring } => {
            let nv = load_nerve(ctx, &nerve)?;
            if deg > nv.dim() {
                return Err(Malformed(format!("degree {} exceeds the nerve's dimension {}", deg, nv.dim())));
            }
            let r = match ring {
                RingArg::Q => Ring::Q,
                RingArg::Z => Ring::Z,
            };
            Ok(Outcome::ok(json!({ "degree": deg, "ring": r.name(), "rank": cohomology_rank(&nv, deg, r) })))
        }
        Cmd::Info { kind, n } => {
            if n == 0 {
                return Err(Malformed("--n must be positive".into()));
            }
            Ok(Outcome::ok(info(kind, n)))
        }
        Cmd::GenExample { name, n, seed, kind } => {
            let seed = seed.unwrap_or(ctx.default_seed);
            let c = gen_example(name, n, seed, kind).map_err(Malformed)?;
            Ok(cocycle_out(c))
        }
    }
}

fn push(ctx: &mut Ctx, file: &str, map: PushMap) -> R {
    let c = ctx.cocycle(file)?;
    valid!(c);
    let name = format!("{:?}", map).to_lowercase();
    let out = match (map, c) {
        (PushMap::I, AnyCocycle::TD(x)) => AnyCocycle::TDhalf(i_push_td(&x)),
        (PushMap::I, AnyCocycle::TB2R(x)) => AnyCocycle::TB1(i_push_tb2r(&x)),
        (PushMap::P, AnyCocycle::TDhalf(x)) => AnyCocycle::SO(p_push_tdhalf(&x)),
        (PushMap::P, AnyCocycle::TB1(x)) => AnyCocycle::SO(p_push_tb1(&x)),
        (PushMap::Lele, AnyCocycle::TD(x)) => AnyCocycle::TB2(lele_td(&x)),
        (PushMap::Rele, AnyCocycle::TD(x)) => AnyCocycle::TB2(rele_td(&x)),
        (PushMap::Leftleg, AnyCocycle::TDhalf(x)) => AnyCocycle::TB1(leftleg_tdhalf(&x)),
        (PushMap::Leftleg, AnyCocycle::TD(x)) => AnyCocycle::TB2R(leftleg_td(&x)),
        (PushMap::Rightleg, AnyCocycle::TD(x)) => AnyCocycle::TB2R(rightleg_td(&x)),
        (PushMap::Flip, AnyCocycle::TD(x)) => AnyCocycle::TD(flip_td(&x)),
        (PushMap::Strip, AnyCocycle::TDhalf(x)) => match strip_b_tdhalf(&x) {
            Some(td) => AnyCocycle::TD(td),
            None => {
                let msg = "B is not identically zero; polarize first".to_string();
                return Ok(Outcome { code: EXIT_FAIL, diag: Some(msg.clone()), out: Some(json!({ "status": "fail", "reason": msg })) });
            }
        },
        (_, other) => return Err(wrong_type(&name, &other)),
    };
    Ok(cocycle_out(out))
}

fn parse_matrix(v: &Value, n: usize) -> Result<SkewIntMat, Malformed> {
    let doc = json!({ "type": "SO", "n": n, "nerve": { "vertices": [0, 1], "simplices": [[0, 1]] }, "data": { "B": { "0,1": v } } });
    match tdual::io::parse_value(&doc)? {
        Document::Cocycle(AnyCocycle::SO(so)) => Ok(so.b.get(&[0, 1]).clone()),
        _ => unreachable!(),
    }
}

fn load_nerve(ctx: &mut Ctx, arg: &str) -> Result<Nerve, Malformed> {
    if let Some(nv) = Nerve::preset(arg) {
        return Ok(nv);
    }
    if let Some(k) = arg.strip_prefix("full:") {
        let k: usize = k.parse()?;
        if k == 0 {
            return Err(Malformed("full:N needs N >= 1".into()));
        }
        return Ok(Nerve::full(k));
    }
    Ok(match ctx.load(arg)? {
        Document::Nerve(nv) => nv,
        Document::Cocycle(c) => c.nerve().clone(),
        Document::Gauge(AnyGauge::TB1 { nerve, .. }) | Document::Gauge(AnyGauge::TDhalf { nerve, .. }) => nerve,
        Document::Cochain(c) => c.nerve,
    })
}

fn info(kind: InfoKind, n: usize) -> Value {
    let (name, fields): (&str, Vec<(&str, usize, String)>) = match kind {
        InfoKind::Tb2r => ("TB2R", vec![
            ("a", 1, format!("Q^{}", n)),
            ("m", 2, format!("Z^{}", n)),
            ("tau", 2, format!("affine characters of T^{}", n)),
        ]),
        InfoKind::Tb1 => ("TB1", vec![
            ("B", 1, format!("so({},Z)", n)),
            ("a", 1, format!("Q^{}", n)),
            ("m", 2, format!("Z^{}", n)),
            ("tau", 2, format!("affine characters of T^{}", n)),
        ]),
        InfoKind::Td => ("TD", vec![
            ("a", 1, format!("Q^{}", n)),
            ("a_hat", 1, format!("Q^{}", n)),
            ("m", 2, format!("Z^{}", n)),
            ("m_hat", 2, format!("Z^{}", n)),
            ("t", 2, "Q/Z".to_string()),
        ]),
        InfoKind::Tdhalf => ("TDhalf", vec![
            ("B", 1, format!("so({},Z)", n)),
            ("a", 1, format!("Q^{}", n)),
            ("a_hat", 1, format!("Q^{}", n)),
            ("m", 2, format!("Z^{}", n)),
            ("m_hat", 2, format!("Z^{}", n)),
            ("t", 2, "Q/Z".to_string()),
        ]),
    };
    let (pi0, pi1) = pi_invariants(name).expect("known type");
    json!({
        "type": name,
        "n": n,
        "pi0": with_n(&pi0, n),
        "pi1": with_n(&pi1, n),
        "fields": fields.iter().map(|(f, d, v)| json!({ "name": f, "degree": d, "values": v })).collect::<Vec<_>>(),
    })
}

fn with_n(s: &str, n: usize) -> String {
    s.replace("{2n}", &(2 * n).to_string()).replace("^n", &format!("^{}", n)).replace("so(n,", &format!("so({},", n))
}

/// The so(n,ℤ) generator in the top-left 2×2 block.
pub fn block_generator(n: usize) -> SkewIntMat {
    let mut lower = vec![tdual::scalars::int(0); n * (n - 1) / 2];
    lower[0] = tdual::scalars::int(1);
    SkewIntMat::from_lower(n, &lower)
}

/// Deterministic example cocycles.
pub fn gen_example(name: ExampleName, n: usize, seed: u64, kind: Option<InfoKind>) -> Result<AnyCocycle, String> {
    if n == 0 {
        return Err("--n must be positive".into());
    }
    let mut s = Sampler::new(seed);
    match name {
        ExampleName::Zero => {
            let nv = Nerve::cone();
            Ok(match kind.unwrap_or(InfoKind::Tb1) {
                InfoKind::Tb2r => AnyCocycle::TB2R(tdual::cocycle::CocycleTB2R::zero(&nv, n)),
                InfoKind::Tb1 => AnyCocycle::TB1(CocycleTB1::zero(&nv, n)),
                InfoKind::Td => AnyCocycle::TD(tdual::cocycle::CocycleTD::zero(&nv, n)),
                InfoKind::Tdhalf => AnyCocycle::TDhalf(CocycleTDhalf::zero(&nv, n)),
            })
        }
        ExampleName::CB => {
            if n < 2 {
                return Err("C_B needs n >= 2 (so(1,Z) is zero)".into());
            }
            Ok(AnyCocycle::TDhalf(c_b(n)))
        }
        ExampleName::RandomCone => {
            let nv = Nerve::cone();
            Ok(match kind.unwrap_or(InfoKind::Tb1) {
                InfoKind::Tb2r => AnyCocycle::TB2R(random_tb2r(&nv, n, &mut s)),
                InfoKind::Tb1 => AnyCocycle::TB1(random_tb1(&nv, n, &mut s)),
                InfoKind::Td => AnyCocycle::TD(random_td(&nv, n, &mut s)),
                InfoKind::Tdhalf => AnyCocycle::TDhalf(random_tdhalf(&nv, n, &mut s)),
            })
        }
        ExampleName::SphereObstruction => Ok(AnyCocycle::TB1(sphere_obstruction(n))),
    }
}

/// TDhalf cocycle on circle3 with B_02 the block generator and everything else zero.
pub fn c_b(n: usize) -> CocycleTDhalf {
    let nv = Nerve::circle3();
    let mut x = CocycleTDhalf::zero(&nv, n);
    x.b.set(&[0, 2], block_generator(n));
    x
}

/// TB1 cocycle on the sphere nerve with winding e_1 on the first triangle.
pub fn sphere_obstruction(n: usize) -> CocycleTB1 {
    let nv = Nerve::sphere();
    let mut x = CocycleTB1::zero(&nv, n);
    let mut w = vec![0i64; n];
    w[0] = 1;
    let first = nv.simplices(2)[0].clone();
    x.tau.set(&first, AffChar::new(Circle::zero(), IntVec::from_i64(&w)));
    x
}

/// Random gauge documents, for scripting pipelines.
pub fn random_gauge(nerve: &Nerve, n: usize, seed: u64, half: bool) -> AnyGauge {
    let mut s = Sampler::new(seed);
    if half {
        AnyGauge::TDhalf { n, nerve: nerve.clone(), g: random_gauge_tdhalf(nerve, n, &mut s, true) }
    } else {
        AnyGauge::TB1 { n, nerve: nerve.clone(), g: random_gauge_tb1(nerve, n, &mut s, true) }
    }
}

/// A C-only TDhalf gauge.
pub fn section_gauge(nerve: &Nerve, n: usize, c: Cochain<SkewIntMat>) -> AnyGauge {
    AnyGauge::TDhalf { n, nerve: nerve.clone(), g: GaugeTDhalf { c, ..GaugeTDhalf::zero(nerve, n) } }
}

/// A gauge with only the integer and matrix parts of g kept.
pub fn integer_part(g: &AnyGauge) -> AnyGauge {
    match g {
        AnyGauge::TB1 { n, nerve, g } => AnyGauge::TB1 {
            n: *n,
            nerve: nerve.clone(),
            g: GaugeTB1 { c: g.c.clone(), z: g.z.clone(), ..GaugeTB1::zero(nerve, *n) },
        },
        AnyGauge::TDhalf { n, nerve, g } => AnyGauge::TDhalf {
            n: *n,
            nerve: nerve.clone(),
            g: GaugeTDhalf { c: g.c.clone(), z: g.z.clone(), z_hat: g.z_hat.clone(), ..GaugeTDhalf::zero(nerve, *n) },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], seed: u64) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with_seed(&args, seed, &mut std::io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn examples_are_valid_and_seeded() {
        for n in 1..=3 {
            for name in [ExampleName::Zero, ExampleName::RandomCone, ExampleName::SphereObstruction] {
                assert!(gen_example(name, n, 4, None).unwrap().validate().is_ok());
            }
        }
        assert!(gen_example(ExampleName::CB, 1, 0, None).is_err());
        assert!(gen_example(ExampleName::CB, 3, 0, None).unwrap().validate().is_ok());
        let a = gen_example(ExampleName::RandomCone, 2, 1, Some(InfoKind::Td)).unwrap();
        assert_eq!(a, gen_example(ExampleName::RandomCone, 2, 1, Some(InfoKind::Td)).unwrap());
        assert_ne!(a, gen_example(ExampleName::RandomCone, 2, 2, Some(InfoKind::Td)).unwrap());
    }

    #[test]
    fn block_generator_shape() {
        let b = block_generator(3);
        assert_eq!(b.entry(1, 0), &tdual::scalars::int(1));
        assert_eq!(b.entry(0, 1), &tdual::scalars::int(-1));
        assert_eq!(b.entry(2, 1), &tdual::scalars::int(0));
    }

    #[test]
    fn matrix_argument_must_be_skew() {
        assert!(parse_matrix(&json!([[0, 1], [-1, 0]]), 2).is_ok());
        assert!(parse_matrix(&json!([[0, 1], [1, 0]]), 2).is_err());
        assert!(parse_matrix(&json!([[0]]), 2).is_err());
    }

    #[test]
    fn default_seed_feeds_random_examples() {
        let a = call(&["gen-example", "random-cone"], 3);
        assert_eq!(a.0, EXIT_OK);
        assert_eq!(a, call(&["gen-example", "random-cone", "--seed", "3"], 9));
        assert_ne!(a.1, call(&["gen-example", "random-cone"], 4).1);
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_three() {
        assert_eq!(call(&["--help"], 0).0, EXIT_OK);
        assert_eq!(call(&["rank", "cone", "--deg", "x"], 0).0, EXIT_MALFORMED);
        assert_eq!(call(&["rank", "cone", "--deg", "7"], 0).0, EXIT_MALFORMED);
        assert_eq!(call(&["info", "TD", "--n", "0"], 0).0, EXIT_MALFORMED);
    }
}
