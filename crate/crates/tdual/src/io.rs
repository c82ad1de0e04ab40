//! Canonical JSON documents for nerves, cocycles, gauges, integer cochains,
//! obstructions and dualization traces.
//!
//! Rationals are strings "p/q" (or "p"); integers are JSON numbers, or
//! strings once they leave the i64 range. Cochain keys are comma-joined
//! ascending vertex ids. Missing fields and keys read as zero.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cocycle::{
    CocycleError, CocycleSO, CocycleTB1, CocycleTB2, CocycleTB2R, CocycleTD, CocycleTDhalf, Failure, GaugeTB1,
    GaugeTDhalf,
};
use crate::dualize::Trace;
use crate::nerve::{Cochain, Nerve, Obstruction};
use crate::scalars::{fmt_rat, parse_rat, to_i64, AffChar, Circle, Int, IntVec, Rat, RatVec, SkewIntMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("malformed document: {0}")]
    Format(String),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Format(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCocycle {
    TB2(CocycleTB2),
    TB2R(CocycleTB2R),
    TB1(CocycleTB1),
    TD(CocycleTD),
    TDhalf(CocycleTDhalf),
    SO(CocycleSO),
}

impl AnyCocycle {
    pub fn type_name(&self) -> &'static str {
        match self {
            AnyCocycle::TB2(_) => "TB2",
            AnyCocycle::TB2R(_) => "TB2R",
            AnyCocycle::TB1(_) => "TB1",
            AnyCocycle::TD(_) => "TD",
            AnyCocycle::TDhalf(_) => "TDhalf",
            AnyCocycle::SO(_) => "SO",
        }
    }
    pub fn n(&self) -> usize {
        match self {
            AnyCocycle::TB2(x) => x.n,
            AnyCocycle::TB2R(x) => x.n,
            AnyCocycle::TB1(x) => x.n,
            AnyCocycle::TD(x) => x.n,
            AnyCocycle::TDhalf(x) => x.n,
            AnyCocycle::SO(x) => x.n,
        }
    }
    pub fn nerve(&self) -> &Nerve {
        match self {
            AnyCocycle::TB2(x) => &x.nerve,
            AnyCocycle::TB2R(x) => &x.nerve,
            AnyCocycle::TB1(x) => &x.nerve,
            AnyCocycle::TD(x) => &x.nerve,
            AnyCocycle::TDhalf(x) => &x.nerve,
            AnyCocycle::SO(x) => &x.nerve,
        }
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        match self {
            AnyCocycle::TB2(x) => x.validate(),
            AnyCocycle::TB2R(x) => x.validate(),
            AnyCocycle::TB1(x) => x.validate(),
            AnyCocycle::TD(x) => x.validate(),
            AnyCocycle::TDhalf(x) => x.validate(),
            AnyCocycle::SO(x) => x.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGauge {
    TB1 { n: usize, nerve: Nerve, g: GaugeTB1 },
    TDhalf { n: usize, nerve: Nerve, g: GaugeTDhalf },
}

/// An integer-valued cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCochain {
    pub nerve: Nerve,
    pub values: Cochain<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Nerve(Nerve),
    Cocycle(AnyCocycle),
    Gauge(AnyGauge),
    Cochain(IntCochain),
}

// ------------------------------------------------------------- scalars

pub fn int_json(i: &Int) -> Value {
    match to_i64(i) {
        Some(v) => json!(v),
        None => json!(i.to_string()),
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

fn parse_int(v: &Value) -> Result<Int, IoError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Int::from(i)),
            None => bad(format!("not an integer: {}", n)),
        },
        Value::String(s) => s.trim().parse::<Int>().or_else(|_| bad(format!("not an integer: {:?}", s))),
        other => bad(format!("expected an integer, got {}", other)),
    }
}

fn parse_rat_value(v: &Value) -> Result<Rat, IoError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(Int::from(i))),
            None => bad(format!("not an exact rational: {} (write it as a \"p/q\" string)", n)),
        },
        Value::String(s) => parse_rat(s).or_else(|e| bad(e.to_string())),
        other => bad(format!("expected a rational, got {}", other)),
    }
}

fn arr<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| IoError::Format(format!("{} must be an array", what)))
}

fn parse_intvec(v: &Value, n: usize, what: &str) -> Result<IntVec, IoError> {
    let a = arr(v, what)?;
    if a.len() != n {
        return bad(format!("{} must have length {}", what, n));
    }
    Ok(IntVec(a.iter().map(parse_int).collect::<Result<_, _>>()?))
}

fn parse_ratvec(v: &Value, n: usize, what: &str) -> Result<RatVec, IoError> {
    let a = arr(v, what)?;
    if a.len() != n {
        return bad(format!("{} must have length {}", what, n));
    }
    Ok(RatVec(a.iter().map(parse_rat_value).collect::<Result<_, _>>()?))
}

fn parse_skew(v: &Value, n: usize, what: &str) -> Result<SkewIntMat, IoError> {
    let rows = arr(v, what)?;
    if rows.len() != n {
        return bad(format!("{} must be {}x{}", what, n, n));
    }
    let mut out = Vec::new();
    for r in rows {
        let r = arr(r, what)?;
        if r.len() != n {
            return bad(format!("{} must be {}x{}", what, n, n));
        }
        out.push(r.iter().map(parse_int).collect::<Result<Vec<_>, _>>()?);
    }
    SkewIntMat::new(out).or_else(|e| bad(format!("{}: {}", what, e)))
}

fn parse_affchar(v: &Value, n: usize, what: &str) -> Result<AffChar, IoError> {
    let o = v.as_object().ok_or_else(|| IoError::Format(format!("{} must be an object", what)))?;
    for k in o.keys() {
        if k != "const" && k != "winding" {
            return bad(format!("{}: unknown key {:?}", what, k));
        }
    }
    let c = match o.get("const") {
        Some(c) => parse_rat_value(c)?,
        None => Rat::from_integer(Int::from(0)),
    };
    let w = match o.get("winding") {
        Some(w) => parse_intvec(w, n, what)?,
        None => IntVec::zeros(n),
    };
    Ok(AffChar::new(Circle::new(c), w))
}

pub fn intvec_json(v: &IntVec) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn ratvec_json(v: &RatVec) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn skew_json(b: &SkewIntMat) -> Value {
    Value::Array(b.rows().iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

pub fn circle_json(c: &Circle) -> Value {
    rat_json(c.value())
}

pub fn affchar_json(a: &AffChar) -> Value {
    json!({ "const": circle_json(&a.constant), "winding": intvec_json(&a.winding) })
}

// ------------------------------------------------------------ cochains

fn key(nerve: &Nerve, s: &[usize]) -> String {
    nerve.id_tuple(s).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn cochain_json<T: Clone>(nerve: &Nerve, c: &Cochain<T>, f: impl Fn(&T) -> Value) -> Value {
    let mut m = Map::new();
    for (s, v) in c.iter() {
        m.insert(key(nerve, s), f(v));
    }
    Value::Object(m)
}

fn parse_key(nerve: &Nerve, k: &str, degree: usize) -> Result<Vec<usize>, IoError> {
    let ids: Vec<u64> = k
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .or_else(|_| bad(format!("bad simplex key {:?}", k)))?;
    if ids.len() != degree + 1 {
        return bad(format!("key {:?} must name {} vertices", k, degree + 1));
    }
    let mut pos = Vec::new();
    for id in &ids {
        match nerve.ids().iter().position(|v| v == id) {
            Some(p) => pos.push(p),
            None => return bad(format!("key {:?} uses unknown vertex {}", k, id)),
        }
    }
    if pos.windows(2).any(|w| w[0] >= w[1]) {
        return bad(format!("key {:?} must list vertices in ascending order", k));
    }
    if !nerve.contains(&pos) {
        return bad(format!("key {:?} is not a simplex of the nerve", k));
    }
    Ok(pos)
}

fn parse_cochain<T: Clone>(
    nerve: &Nerve,
    v: Option<&Value>,
    degree: usize,
    zero: T,
    f: impl Fn(&Value) -> Result<T, IoError>,
) -> Result<Cochain<T>, IoError> {
    let mut c = Cochain::constant(nerve, degree, zero);
    if let Some(v) = v {
        let o = v.as_object().ok_or_else(|| IoError::Format("cochain must be an object".into()))?;
        for (k, val) in o {
            let s = parse_key(nerve, k, degree)?;
            c.set(&s, f(val)?);
        }
    }
    Ok(c)
}

// --------------------------------------------------------------- nerve

pub fn nerve_json(nerve: &Nerve) -> Value {
    json!({
        "vertices": nerve.ids(),
        "simplices": nerve.maximal_id_simplices(),
    })
}

pub fn parse_nerve(v: &Value) -> Result<Nerve, IoError> {
    let o = v.as_object().ok_or_else(|| IoError::Format("nerve must be an object".into()))?;
    let ids: Vec<u64> = match o.get("vertices") {
        Some(vs) => arr(vs, "vertices")?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| IoError::Format("vertex ids are non-negative integers".into())))
            .collect::<Result<_, _>>()?,
        None => return bad("nerve needs \"vertices\""),
    };
    let simplices: Vec<Vec<u64>> = match o.get("simplices") {
        Some(ss) => arr(ss, "simplices")?
            .iter()
            .map(|s| {
                arr(s, "simplex")?
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(|| IoError::Format("vertex ids are non-negative integers".into())))
                    .collect()
            })
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    Nerve::new(ids, &simplices).or_else(|e| bad(e.to_string()))
}

// ---------------------------------------------------------- documents

fn header(kind: &str, n: usize, nerve: &Nerve, data: Map<String, Value>) -> Value {
    json!({ "type": kind, "n": n, "nerve": nerve_json(nerve), "data": Value::Object(data) })
}

pub fn cocycle_json(x: &AnyCocycle) -> Value {
    let nv = x.nerve();
    let mut d = Map::new();
    match x {
        AnyCocycle::TB2(x) => {
            d.insert("a".into(), cochain_json(nv, &x.a, ratvec_json));
            d.insert("tau".into(), cochain_json(nv, &x.tau, affchar_json));
        }
        AnyCocycle::TB2R(x) => {
            d.insert("a".into(), cochain_json(nv, &x.a, ratvec_json));
            d.insert("m".into(), cochain_json(nv, &x.m, intvec_json));
            d.insert("tau".into(), cochain_json(nv, &x.tau, affchar_json));
        }
        AnyCocycle::TB1(x) => {
            d.insert("B".into(), cochain_json(nv, &x.b, skew_json));
            d.insert("a".into(), cochain_json(nv, &x.a, ratvec_json));
            d.insert("m".into(), cochain_json(nv, &x.m, intvec_json));
            d.insert("tau".into(), cochain_json(nv, &x.tau, affchar_json));
        }
        AnyCocycle::TD(x) => {
            d.insert("a".into(), cochain_json(nv, &x.a, ratvec_json));
            d.insert("a_hat".into(), cochain_json(nv, &x.a_hat, ratvec_json));
            d.insert("m".into(), cochain_json(nv, &x.m, intvec_json));
            d.insert("m_hat".into(), cochain_json(nv, &x.m_hat, intvec_json));
            d.insert("t".into(), cochain_json(nv, &x.t, circle_json));
        }
        AnyCocycle::TDhalf(x) => {
            d.insert("B".into(), cochain_json(nv, &x.b, skew_json));
            d.insert("a".into(), cochain_json(nv, &x.a, ratvec_json));
            d.insert("a_hat".into(), cochain_json(nv, &x.a_hat, ratvec_json));
            d.insert("m".into(), cochain_json(nv, &x.m, intvec_json));
            d.insert("m_hat".into(), cochain_json(nv, &x.m_hat, intvec_json));
            d.insert("t".into(), cochain_json(nv, &x.t, circle_json));
        }
        AnyCocycle::SO(x) => {
            d.insert("B".into(), cochain_json(nv, &x.b, skew_json));
        }
    }
    header(x.type_name(), x.n(), nv, d)
}

pub fn gauge_json(g: &AnyGauge) -> Value {
    let mut d = Map::new();
    match g {
        AnyGauge::TB1 { n, nerve, g } => {
            d.insert("C".into(), cochain_json(nerve, &g.c, skew_json));
            d.insert("z".into(), cochain_json(nerve, &g.z, intvec_json));
            d.insert("p".into(), cochain_json(nerve, &g.p, ratvec_json));
            d.insert("eps".into(), cochain_json(nerve, &g.eps, affchar_json));
            header("GaugeTB1", *n, nerve, d)
        }
        AnyGauge::TDhalf { n, nerve, g } => {
            d.insert("C".into(), cochain_json(nerve, &g.c, skew_json));
            d.insert("z".into(), cochain_json(nerve, &g.z, intvec_json));
            d.insert("z_hat".into(), cochain_json(nerve, &g.z_hat, intvec_json));
            d.insert("p".into(), cochain_json(nerve, &g.p, ratvec_json));
            d.insert("p_hat".into(), cochain_json(nerve, &g.p_hat, ratvec_json));
            d.insert("e".into(), cochain_json(nerve, &g.e, circle_json));
            header("GaugeTDhalf", *n, nerve, d)
        }
    }
}

pub fn int_cochain_json(c: &IntCochain) -> Value {
    json!({
        "type": "cochain",
        "ring": "Z",
        "degree": c.values.degree(),
        "nerve": nerve_json(&c.nerve),
        "values": cochain_json(&c.nerve, &c.values, int_json),
    })
}

pub fn document_json(d: &Document) -> Value {
    match d {
        Document::Nerve(nv) => nerve_json(nv),
        Document::Cocycle(x) => cocycle_json(x),
        Document::Gauge(g) => gauge_json(g),
        Document::Cochain(c) => int_cochain_json(c),
    }
}

/// Pretty-printed canonical text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

struct Fields<'a> {
    data: &'a Map<String, Value>,
}

impl<'a> Fields<'a> {
    fn new(data: &'a Map<String, Value>, allowed: &[&str]) -> Result<Self, IoError> {
        for k in data.keys() {
            if !allowed.contains(&k.as_str()) {
                return bad(format!("unknown field {:?}", k));
            }
        }
        Ok(Fields { data })
    }
    fn get(&self, k: &str) -> Option<&'a Value> {
        self.data.get(k)
    }
}

fn parse_n(o: &Map<String, Value>) -> Result<usize, IoError> {
    match o.get("n").and_then(|v| v.as_u64()) {
        Some(n) if n >= 1 => Ok(n as usize),
        _ => bad("\"n\" must be a positive integer"),
    }
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    parse_value(&v)
}

pub fn parse_value(v: &Value) -> Result<Document, IoError> {
    let o = v.as_object().ok_or_else(|| IoError::Format("document must be an object".into()))?;
    let kind = match o.get("type") {
        None => return Ok(Document::Nerve(parse_nerve(v)?)),
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return bad("\"type\" must be a string"),
    };
    let nerve = parse_nerve(o.get("nerve").ok_or_else(|| IoError::Format("missing \"nerve\"".into()))?)?;
    if kind == "cochain" {
        let degree = o.get("degree").and_then(|d| d.as_u64()).ok_or_else(|| IoError::Format("missing \"degree\"".into()))?;
        if degree as usize > crate::nerve::MAX_DIM {
            return bad("degree exceeds 3");
        }
        if let Some(r) = o.get("ring") {
            if r != "Z" {
                return bad("only integer cochains are supported");
            }
        }
        let values = parse_cochain(&nerve, o.get("values"), degree as usize, Int::from(0), parse_int)?;
        return Ok(Document::Cochain(IntCochain { nerve, values }));
    }
    let n = parse_n(o)?;
    let empty = Map::new();
    let data = match o.get("data") {
        Some(Value::Object(d)) => d,
        Some(_) => return bad("\"data\" must be an object"),
        None => &empty,
    };
    let nv = &nerve;
    let b = |f: &Fields| parse_cochain(nv, f.get("B"), 1, SkewIntMat::zero(n), |v| parse_skew(v, n, "B"));
    let a = |f: &Fields, k: &str| parse_cochain(nv, f.get(k), 1, RatVec::zeros(n), |v| parse_ratvec(v, n, k));
    let m = |f: &Fields, k: &str| parse_cochain(nv, f.get(k), 2, IntVec::zeros(n), |v| parse_intvec(v, n, k));
    let tau = |f: &Fields| parse_cochain(nv, f.get("tau"), 2, AffChar::zero(n), |v| parse_affchar(v, n, "tau"));
    let t = |f: &Fields| parse_cochain(nv, f.get("t"), 2, Circle::zero(), |v| Ok(Circle::new(parse_rat_value(v)?)));
    let doc = match kind {
        "TB2" => {
            let f = Fields::new(data, &["a", "tau"])?;
            let a = a(&f, "a")?.map(|_, v| v.frac());
            Document::Cocycle(AnyCocycle::TB2(CocycleTB2 { n, nerve: nv.clone(), a, tau: tau(&f)? }))
        }
        "TB2R" => {
            let f = Fields::new(data, &["a", "m", "tau"])?;
            Document::Cocycle(AnyCocycle::TB2R(CocycleTB2R { n, nerve: nv.clone(), a: a(&f, "a")?, m: m(&f, "m")?, tau: tau(&f)? }))
        }
        "TB1" => {
            let f = Fields::new(data, &["B", "a", "m", "tau"])?;
            Document::Cocycle(AnyCocycle::TB1(CocycleTB1 {
                n,
                nerve: nv.clone(),
                b: b(&f)?,
                a: a(&f, "a")?,
                m: m(&f, "m")?,
                tau: tau(&f)?,
            }))
        }
        "TD" => {
            let f = Fields::new(data, &["a", "a_hat", "m", "m_hat", "t"])?;
            Document::Cocycle(AnyCocycle::TD(CocycleTD {
                n,
                nerve: nv.clone(),
                a: a(&f, "a")?,
                a_hat: a(&f, "a_hat")?,
                m: m(&f, "m")?,
                m_hat: m(&f, "m_hat")?,
                t: t(&f)?,
            }))
        }
        "TDhalf" => {
            let f = Fields::new(data, &["B", "a", "a_hat", "m", "m_hat", "t"])?;
            Document::Cocycle(AnyCocycle::TDhalf(CocycleTDhalf {
                n,
                nerve: nv.clone(),
                b: b(&f)?,
                a: a(&f, "a")?,
                a_hat: a(&f, "a_hat")?,
                m: m(&f, "m")?,
                m_hat: m(&f, "m_hat")?,
                t: t(&f)?,
            }))
        }
        "SO" => {
            let f = Fields::new(data, &["B"])?;
            Document::Cocycle(AnyCocycle::SO(CocycleSO { n, nerve: nv.clone(), b: b(&f)? }))
        }
        "GaugeTB1" => {
            let f = Fields::new(data, &["C", "z", "p", "eps"])?;
            let g = GaugeTB1 {
                c: parse_cochain(nv, f.get("C"), 0, SkewIntMat::zero(n), |v| parse_skew(v, n, "C"))?,
                z: parse_cochain(nv, f.get("z"), 1, IntVec::zeros(n), |v| parse_intvec(v, n, "z"))?,
                p: parse_cochain(nv, f.get("p"), 0, RatVec::zeros(n), |v| parse_ratvec(v, n, "p"))?,
                eps: parse_cochain(nv, f.get("eps"), 1, AffChar::zero(n), |v| parse_affchar(v, n, "eps"))?,
            };
            Document::Gauge(AnyGauge::TB1 { n, nerve: nv.clone(), g })
        }
        "GaugeTDhalf" => {
            let f = Fields::new(data, &["C", "z", "z_hat", "p", "p_hat", "e"])?;
            let g = GaugeTDhalf {
                c: parse_cochain(nv, f.get("C"), 0, SkewIntMat::zero(n), |v| parse_skew(v, n, "C"))?,
                z: parse_cochain(nv, f.get("z"), 1, IntVec::zeros(n), |v| parse_intvec(v, n, "z"))?,
                z_hat: parse_cochain(nv, f.get("z_hat"), 1, IntVec::zeros(n), |v| parse_intvec(v, n, "z_hat"))?,
                p: parse_cochain(nv, f.get("p"), 0, RatVec::zeros(n), |v| parse_ratvec(v, n, "p"))?,
                p_hat: parse_cochain(nv, f.get("p_hat"), 0, RatVec::zeros(n), |v| parse_ratvec(v, n, "p_hat"))?,
                e: parse_cochain(nv, f.get("e"), 1, Circle::zero(), |v| Ok(Circle::new(parse_rat_value(v)?)))?,
            };
            Document::Gauge(AnyGauge::TDhalf { n, nerve: nv.clone(), g })
        }
        other => return bad(format!("unknown type {:?}", other)),
    };
    Ok(doc)
}

// ------------------------------------------------------------ reports

pub fn obstruction_json(o: &Obstruction, nerve: &Nerve) -> Value {
    json!({
        "status": "obstruction",
        "locus": o.note,
        "degree": o.degree,
        "ring": o.ring.name(),
        "rank": o.rank,
        "representative": cochain_json(nerve, &o.representative, ratvec_json),
    })
}

pub fn failure_json(f: &Failure) -> Value {
    json!({ "status": "fail", "condition": f.condition.label(), "simplex": f.simplex })
}

pub fn pass_json() -> Value {
    json!({ "status": "pass" })
}

pub fn trace_json(t: &Trace, n: usize, nerve: &Nerve) -> Value {
    json!({
        "m_hat": cochain_json(nerve, &t.m_hat, intvec_json),
        "a_hat": cochain_json(nerve, &t.a_hat, ratvec_json),
        "lifted": cochain_json(nerve, &t.lifted, rat_json),
        "delta": cochain_json(nerve, &t.delta, rat_json),
        "omega": cochain_json(nerve, &t.omega, rat_json),
        "eps_int": cochain_json(nerve, &t.eps_int, int_json),
        "t": cochain_json(nerve, &t.t, circle_json),
        "beta": cochain_json(nerve, &t.beta, circle_json),
        "witness": gauge_json(&AnyGauge::TB1 { n, nerve: nerve.clone(), g: t.witness.clone() }),
    })
}
