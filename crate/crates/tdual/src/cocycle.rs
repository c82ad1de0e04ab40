//! Typed cocycles for the four 2-groups, their validators, gauges between
//! them, restricted gauge solving and the induced maps on cocycles.
//!
//! Every condition is evaluated on ascending tuples i<j<k(<l) only.

use std::fmt;

use thiserror::Error;

use crate::crossed::{
    CrossedModule, Intertwiner, LeleR, SoAction, Tb2, Tb2R, Tb2RAction, TauM, Td, TdAction, TdArr,
};
use crate::nerve::{self, Cochain, Nerve, Obstruction, SolveError};
use crate::sample::Sampler;
use crate::scalars::{frac, rat_int, AffChar, Circle, IntVec, Rat, RatVec, SkewIntMat};

/// Names of the conditions a validator or gauge check can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    BCocycle,
    ACocycle,
    AHatCocycle,
    TCocycle,
    TauCocycle,
    MImplied,
    MHatImplied,
    BGauge,
    AGauge,
    AHatGauge,
    TGauge,
    TauGauge,
    MGaugeImplied,
    MHatGaugeImplied,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::BCocycle => "B-cocycle",
            Condition::ACocycle => "a-cocycle",
            Condition::AHatCocycle => "a_hat-cocycle",
            Condition::TCocycle => "t-cocycle",
            Condition::TauCocycle => "tau-cocycle",
            Condition::MImplied => "m-cocycle(implied)",
            Condition::MHatImplied => "m_hat-cocycle(implied)",
            Condition::BGauge => "B-gauge",
            Condition::AGauge => "a-gauge",
            Condition::AHatGauge => "a_hat-gauge",
            Condition::TGauge => "t-gauge",
            Condition::TauGauge => "tau-gauge",
            Condition::MGaugeImplied => "m-gauge(implied)",
            Condition::MHatGaugeImplied => "m_hat-gauge(implied)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// First failing equation with its simplex (vertex identifiers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub simplex: Vec<u64>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.simplex.iter().map(|v| v.to_string()).collect();
        write!(f, "{} at ({})", self.condition, ids.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Failed(Failure),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("obstruction at {}", .0.note)]
    Obstructed(Obstruction),
}

impl CocycleError {
    pub fn failure(&self) -> Option<&Failure> {
        match self {
            CocycleError::Failed(f) => Some(f),
            _ => None,
        }
    }
}

fn obstructed(e: SolveError, locus: &str) -> CocycleError {
    match e {
        SolveError::Obstructed(o) => CocycleError::Obstructed(o.with_note(locus)),
        other => CocycleError::Precondition(format!("{}: {}", locus, other)),
    }
}

/// Records the first mismatch; later checks are skipped.
struct Checker<'a> {
    nerve: &'a Nerve,
    failure: Option<Failure>,
}

impl<'a> Checker<'a> {
    fn new(nerve: &'a Nerve) -> Self {
        Checker { nerve, failure: None }
    }
    fn eq<T: PartialEq + fmt::Debug>(&mut self, cond: Condition, s: &[usize], lhs: T, rhs: T) {
        if self.failure.is_none() && lhs != rhs {
            self.failure = Some(Failure {
                condition: cond,
                simplex: self.nerve.id_tuple(s),
                detail: format!("{:?} != {:?}", lhs, rhs),
            });
        }
    }
    fn ok(&self) -> bool {
        self.failure.is_none()
    }
    fn finish(self) -> Result<(), CocycleError> {
        match self.failure {
            None => Ok(()),
            Some(f) => Err(CocycleError::Failed(f)),
        }
    }
}

fn shape<T: Clone>(nerve: &Nerve, c: &Cochain<T>, deg: usize, name: &str, ok: impl Fn(&T) -> bool) -> Result<(), CocycleError> {
    if c.degree() != deg || !c.is_total_on(nerve) {
        return Err(CocycleError::Shape(format!("{} must be a degree-{} cochain on every simplex", name, deg)));
    }
    if c.iter().any(|(_, v)| !ok(v)) {
        return Err(CocycleError::Shape(format!("{} has entries of the wrong length", name)));
    }
    Ok(())
}

fn ij(s: &[usize], a: usize, b: usize) -> [usize; 2] {
    [s[a], s[b]]
}
fn ijk(s: &[usize], a: usize, b: usize, c: usize) -> [usize; 3] {
    [s[a], s[b], s[c]]
}

/// Affine character with a constant value only.
fn konst(r: Rat, n: usize) -> AffChar {
    AffChar::constant(Circle::new(r), n)
}

// ---------------------------------------------------------------- types

/// Cocycle for the 𝕋ⁿ-valued strict 2-group; entries of a are kept in [0,1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTB2 {
    pub n: usize,
    pub nerve: Nerve,
    pub a: Cochain<RatVec>,
    pub tau: Cochain<AffChar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTB2R {
    pub n: usize,
    pub nerve: Nerve,
    pub a: Cochain<RatVec>,
    pub m: Cochain<IntVec>,
    pub tau: Cochain<AffChar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTB1 {
    pub n: usize,
    pub nerve: Nerve,
    pub b: Cochain<SkewIntMat>,
    pub a: Cochain<RatVec>,
    pub m: Cochain<IntVec>,
    pub tau: Cochain<AffChar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTD {
    pub n: usize,
    pub nerve: Nerve,
    pub a: Cochain<RatVec>,
    pub a_hat: Cochain<RatVec>,
    pub m: Cochain<IntVec>,
    pub m_hat: Cochain<IntVec>,
    pub t: Cochain<Circle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTDhalf {
    pub n: usize,
    pub nerve: Nerve,
    pub b: Cochain<SkewIntMat>,
    pub a: Cochain<RatVec>,
    pub a_hat: Cochain<RatVec>,
    pub m: Cochain<IntVec>,
    pub m_hat: Cochain<IntVec>,
    pub t: Cochain<Circle>,
}

/// An so(n,ℤ)-valued 1-cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleSO {
    pub n: usize,
    pub nerve: Nerve,
    pub b: Cochain<SkewIntMat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTB1 {
    pub c: Cochain<SkewIntMat>,
    pub z: Cochain<IntVec>,
    pub p: Cochain<RatVec>,
    pub eps: Cochain<AffChar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTDhalf {
    pub c: Cochain<SkewIntMat>,
    pub z: Cochain<IntVec>,
    pub z_hat: Cochain<IntVec>,
    pub p: Cochain<RatVec>,
    pub p_hat: Cochain<RatVec>,
    pub e: Cochain<Circle>,
}

impl CocycleTB2 {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        CocycleTB2 {
            n,
            nerve: nerve.clone(),
            a: Cochain::constant(nerve, 1, RatVec::zeros(n)),
            tau: Cochain::constant(nerve, 2, AffChar::zero(n)),
        }
    }
    pub fn check_shape(&self) -> Result<(), CocycleError> {
        let (nv, n) = (&self.nerve, self.n);
        shape(nv, &self.a, 1, "a", |v| v.len() == n)?;
        shape(nv, &self.tau, 2, "tau", |v| v.n() == n)
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        self.check_shape()?;
        let nv = &self.nerve;
        let mut ck = Checker::new(nv);
        for s in nv.simplices(2) {
            let (a_ij, a_jk, a_ik) = (self.a.get(&ij(s, 0, 1)), self.a.get(&ij(s, 1, 2)), self.a.get(&ij(s, 0, 2)));
            ck.eq(Condition::ACocycle, s, a_ik.frac(), (a_jk + a_ij).frac());
        }
        for s in nv.simplices(3) {
            if !ck.ok() {
                break;
            }
            let a_kl = self.a.get(&ij(s, 2, 3));
            let lhs = self.tau.get(&ijk(s, 0, 2, 3)) + &self.tau.get(&ijk(s, 0, 1, 2)).translate(a_kl);
            let rhs = self.tau.get(&ijk(s, 0, 1, 3)) + self.tau.get(&ijk(s, 1, 2, 3));
            ck.eq(Condition::TauCocycle, s, lhs, rhs);
        }
        ck.finish()
    }
}

impl CocycleTB2R {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        CocycleTB2R {
            n,
            nerve: nerve.clone(),
            a: Cochain::constant(nerve, 1, RatVec::zeros(n)),
            m: Cochain::constant(nerve, 2, IntVec::zeros(n)),
            tau: Cochain::constant(nerve, 2, AffChar::zero(n)),
        }
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        i_push_tb2r(self).validate()
    }
}

impl CocycleTB1 {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        CocycleTB1 {
            n,
            nerve: nerve.clone(),
            b: Cochain::constant(nerve, 1, SkewIntMat::zero(n)),
            a: Cochain::constant(nerve, 1, RatVec::zeros(n)),
            m: Cochain::constant(nerve, 2, IntVec::zeros(n)),
            tau: Cochain::constant(nerve, 2, AffChar::zero(n)),
        }
    }
    pub fn check_shape(&self) -> Result<(), CocycleError> {
        let (nv, n) = (&self.nerve, self.n);
        shape(nv, &self.b, 1, "B", |v| v.n() == n)?;
        shape(nv, &self.a, 1, "a", |v| v.len() == n)?;
        shape(nv, &self.m, 2, "m", |v| v.len() == n)?;
        shape(nv, &self.tau, 2, "tau", |v| v.n() == n)
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        self.check_shape()?;
        let nv = &self.nerve;
        let mut ck = Checker::new(nv);
        for s in nv.simplices(2) {
            let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
            ck.eq(Condition::BCocycle, s, self.b.get(&e_ik).clone(), self.b.get(&e_jk) + self.b.get(&e_ij));
            let m = self.m.get(s).to_rat();
            ck.eq(Condition::ACocycle, s, self.a.get(&e_ik).clone(), &(self.a.get(&e_jk) + self.a.get(&e_ij)) + &m);
        }
        for s in nv.simplices(3) {
            if !ck.ok() {
                break;
            }
            let (tijk, tikl, tijl, tjkl) = (ijk(s, 0, 1, 2), ijk(s, 0, 2, 3), ijk(s, 0, 1, 3), ijk(s, 1, 2, 3));
            let b_kl = self.b.get(&ij(s, 2, 3));
            let a_kl = self.a.get(&ij(s, 2, 3));
            let a_ik = self.a.get(&ij(s, 0, 2));
            let a_ij = self.a.get(&ij(s, 0, 1));
            let a_jk = self.a.get(&ij(s, 1, 2));
            let m = self.m.get(&tijk);
            let lhs = &(self.tau.get(&tikl) + &self.tau.get(&tijk).translate(a_kl))
                - &AffChar::of_bra(m, b_kl).translate(a_kl);
            let c = b_kl.low(a_ik, &m.to_rat()) + b_kl.low(a_ij, a_jk);
            let rhs = &(&konst(c, self.n) + self.tau.get(&tijl)) + self.tau.get(&tjkl);
            ck.eq(Condition::TauCocycle, s, lhs, rhs);
            let lhs = self.m.get(&tikl) + m;
            ck.eq(Condition::MImplied, s, lhs, self.m.get(&tijl) + self.m.get(&tjkl));
        }
        ck.finish()
    }
}

impl CocycleTD {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        CocycleTD {
            n,
            nerve: nerve.clone(),
            a: Cochain::constant(nerve, 1, RatVec::zeros(n)),
            a_hat: Cochain::constant(nerve, 1, RatVec::zeros(n)),
            m: Cochain::constant(nerve, 2, IntVec::zeros(n)),
            m_hat: Cochain::constant(nerve, 2, IntVec::zeros(n)),
            t: Cochain::constant(nerve, 2, Circle::zero()),
        }
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        i_push_td(self).validate()
    }
}

impl CocycleTDhalf {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        i_push_td(&CocycleTD::zero(nerve, n))
    }
    pub fn check_shape(&self) -> Result<(), CocycleError> {
        let (nv, n) = (&self.nerve, self.n);
        shape(nv, &self.b, 1, "B", |v| v.n() == n)?;
        shape(nv, &self.a, 1, "a", |v| v.len() == n)?;
        shape(nv, &self.a_hat, 1, "a_hat", |v| v.len() == n)?;
        shape(nv, &self.m, 2, "m", |v| v.len() == n)?;
        shape(nv, &self.m_hat, 2, "m_hat", |v| v.len() == n)?;
        shape(nv, &self.t, 2, "t", |_| true)
    }
    pub fn validate(&self) -> Result<(), CocycleError> {
        self.check_shape()?;
        let nv = &self.nerve;
        let mut ck = Checker::new(nv);
        for s in nv.simplices(2) {
            let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
            ck.eq(Condition::BCocycle, s, self.b.get(&e_ik).clone(), self.b.get(&e_jk) + self.b.get(&e_ij));
            let m = self.m.get(s).to_rat();
            ck.eq(Condition::ACocycle, s, self.a.get(&e_ik).clone(), &(&m + self.a.get(&e_jk)) + self.a.get(&e_ij));
            let rhs = &(&(&self.m_hat.get(s).to_rat() + self.a_hat.get(&e_jk)) + self.a_hat.get(&e_ij))
                + &self.b.get(&e_jk).mul_rat(self.a.get(&e_ij));
            ck.eq(Condition::AHatCocycle, s, self.a_hat.get(&e_ik).clone(), rhs);
        }
        for s in nv.simplices(3) {
            if !ck.ok() {
                break;
            }
            let (tijk, tikl, tijl, tjkl) = (ijk(s, 0, 1, 2), ijk(s, 0, 2, 3), ijk(s, 0, 1, 3), ijk(s, 1, 2, 3));
            let b_kl = self.b.get(&ij(s, 2, 3));
            let m = self.m.get(&tijk);
            let mr = m.to_rat();
            let lhs = self.t.get(&tikl) + self.t.get(&tijk);
            let r = m.dot_rat(self.a_hat.get(&ij(s, 2, 3)))
                + b_kl.low(&mr, self.a.get(&ij(s, 0, 2)))
                + b_kl.low(self.a.get(&ij(s, 1, 2)), self.a.get(&ij(s, 0, 1)))
                + self.t.get(&tijl).value()
                + self.t.get(&tjkl).value();
            ck.eq(Condition::TCocycle, s, lhs, Circle::new(r));
            ck.eq(Condition::MImplied, s, self.m.get(&tikl) + m, self.m.get(&tijl) + self.m.get(&tjkl));
            let lhs = &(self.m_hat.get(&tikl) + self.m_hat.get(&tijk)) + &b_kl.mul_int(m);
            ck.eq(Condition::MHatImplied, s, lhs, self.m_hat.get(&tijl) + self.m_hat.get(&tjkl));
        }
        ck.finish()
    }
}

impl CocycleSO {
    pub fn validate(&self) -> Result<(), CocycleError> {
        let n = self.n;
        shape(&self.nerve, &self.b, 1, "B", |v| v.n() == n)?;
        let mut ck = Checker::new(&self.nerve);
        for s in self.nerve.simplices(2) {
            ck.eq(Condition::BCocycle, s, self.b.get(&ij(s, 0, 2)).clone(), self.b.get(&ij(s, 1, 2)) + self.b.get(&ij(s, 0, 1)));
        }
        ck.finish()
    }
    pub fn is_zero(&self) -> bool {
        self.b.is_zero()
    }
    /// A 0-cochain C with B_ij = C_i − C_j, or the obstruction over ℤ.
    pub fn trivialize(&self) -> Result<Cochain<SkewIntMat>, Obstruction> {
        // δC_ij = C_j − C_i = −B_ij
        nerve::solve_z_skew(&self.nerve, &self.b.neg(), self.n)
            .map_err(|e| match e {
                SolveError::Obstructed(o) => o.with_note("B"),
                other => panic!("B is a validated cocycle: {}", other),
            })
    }
}

impl GaugeTB1 {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        GaugeTB1 {
            c: Cochain::constant(nerve, 0, SkewIntMat::zero(n)),
            z: Cochain::constant(nerve, 1, IntVec::zeros(n)),
            p: Cochain::constant(nerve, 0, RatVec::zeros(n)),
            eps: Cochain::constant(nerve, 1, AffChar::zero(n)),
        }
    }
    pub fn check_shape(&self, nerve: &Nerve, n: usize) -> Result<(), CocycleError> {
        shape(nerve, &self.c, 0, "C", |v| v.n() == n)?;
        shape(nerve, &self.z, 1, "z", |v| v.len() == n)?;
        shape(nerve, &self.p, 0, "p", |v| v.len() == n)?;
        shape(nerve, &self.eps, 1, "eps", |v| v.n() == n)
    }
}

impl GaugeTDhalf {
    pub fn zero(nerve: &Nerve, n: usize) -> Self {
        GaugeTDhalf {
            c: Cochain::constant(nerve, 0, SkewIntMat::zero(n)),
            z: Cochain::constant(nerve, 1, IntVec::zeros(n)),
            z_hat: Cochain::constant(nerve, 1, IntVec::zeros(n)),
            p: Cochain::constant(nerve, 0, RatVec::zeros(n)),
            p_hat: Cochain::constant(nerve, 0, RatVec::zeros(n)),
            e: Cochain::constant(nerve, 1, Circle::zero()),
        }
    }
    pub fn check_shape(&self, nerve: &Nerve, n: usize) -> Result<(), CocycleError> {
        shape(nerve, &self.c, 0, "C", |v| v.n() == n)?;
        shape(nerve, &self.z, 1, "z", |v| v.len() == n)?;
        shape(nerve, &self.z_hat, 1, "z_hat", |v| v.len() == n)?;
        shape(nerve, &self.p, 0, "p", |v| v.len() == n)?;
        shape(nerve, &self.p_hat, 0, "p_hat", |v| v.len() == n)?;
        shape(nerve, &self.e, 1, "e", |_| true)
    }
    /// Inverse in the abelian sector (C = 0).
    pub fn inverse_abelian(&self) -> Option<GaugeTDhalf> {
        if !self.c.is_zero() {
            return None;
        }
        Some(GaugeTDhalf {
            c: self.c.clone(),
            z: self.z.neg(),
            z_hat: self.z_hat.neg(),
            p: self.p.neg(),
            p_hat: self.p_hat.neg(),
            e: self.e.neg(),
        })
    }
}

// ------------------------------------------------------------ fibration

/// i: TD → TD½ with B := 0.
pub fn i_push_td(x: &CocycleTD) -> CocycleTDhalf {
    CocycleTDhalf {
        n: x.n,
        nerve: x.nerve.clone(),
        b: Cochain::constant(&x.nerve, 1, SkewIntMat::zero(x.n)),
        a: x.a.clone(),
        a_hat: x.a_hat.clone(),
        m: x.m.clone(),
        m_hat: x.m_hat.clone(),
        t: x.t.clone(),
    }
}

/// i: TB2R → TB1 with B := 0.
pub fn i_push_tb2r(x: &CocycleTB2R) -> CocycleTB1 {
    CocycleTB1 {
        n: x.n,
        nerve: x.nerve.clone(),
        b: Cochain::constant(&x.nerve, 1, SkewIntMat::zero(x.n)),
        a: x.a.clone(),
        m: x.m.clone(),
        tau: x.tau.clone(),
    }
}

/// p: TD½ → disc(so(n,ℤ)), the B-cocycle.
pub fn p_push_tdhalf(x: &CocycleTDhalf) -> CocycleSO {
    CocycleSO { n: x.n, nerve: x.nerve.clone(), b: x.b.clone() }
}

pub fn p_push_tb1(x: &CocycleTB1) -> CocycleSO {
    CocycleSO { n: x.n, nerve: x.nerve.clone(), b: x.b.clone() }
}

/// Forgets a zero B; None when B is nonzero.
pub fn strip_b_tdhalf(x: &CocycleTDhalf) -> Option<CocycleTD> {
    if !x.b.is_zero() {
        return None;
    }
    Some(CocycleTD {
        n: x.n,
        nerve: x.nerve.clone(),
        a: x.a.clone(),
        a_hat: x.a_hat.clone(),
        m: x.m.clone(),
        m_hat: x.m_hat.clone(),
        t: x.t.clone(),
    })
}

pub fn strip_b_tb1(x: &CocycleTB1) -> Option<CocycleTB2R> {
    if !x.b.is_zero() {
        return None;
    }
    Some(CocycleTB2R { n: x.n, nerve: x.nerve.clone(), a: x.a.clone(), m: x.m.clone(), tau: x.tau.clone() })
}

// ---------------------------------------------------------- legs, flips

/// τ_ijk = τ_{t − a_ik·m̂ − a_ij·â_jk, m̂} for the left leg.
fn left_tau(a: &Cochain<RatVec>, a_hat: &Cochain<RatVec>, m_hat: &Cochain<IntVec>, t: &Cochain<Circle>) -> Cochain<AffChar> {
    t.map(|s, tv| {
        let mh = m_hat.get(s);
        let c = tv.value() - mh.dot_rat(a.get(&ij(s, 0, 2))) - a.get(&ij(s, 0, 1)).dot(a_hat.get(&ij(s, 1, 2)));
        AffChar::new(Circle::new(c), mh.clone())
    })
}

pub fn leftleg_tdhalf(x: &CocycleTDhalf) -> CocycleTB1 {
    CocycleTB1 {
        n: x.n,
        nerve: x.nerve.clone(),
        b: x.b.clone(),
        a: x.a.clone(),
        m: x.m.clone(),
        tau: left_tau(&x.a, &x.a_hat, &x.m_hat, &x.t),
    }
}

pub fn leftleg_td(x: &CocycleTD) -> CocycleTB2R {
    strip_b_tb1(&leftleg_tdhalf(&i_push_td(x))).expect("B is zero")
}

/// Right leg through the strict intertwiner.
pub fn rightleg_td(x: &CocycleTD) -> CocycleTB2R {
    decode_tb2r(x.n, &x.nerve, &pushforward(&crate::crossed::ReleR::new(x.n), &encode_td(x), &x.nerve))
}

pub fn flip_td(x: &CocycleTD) -> CocycleTD {
    decode_td(x.n, &x.nerve, &pushforward(&crate::crossed::Flip::new(x.n), &encode_td(x), &x.nerve))
}

/// Pushforward along F_{e^B}.
pub fn act_b_td(x: &CocycleTD, b: &SkewIntMat) -> CocycleTD {
    decode_td(x.n, &x.nerve, &pushforward(&crate::crossed::FeB::new(b.clone()), &encode_td(x), &x.nerve))
}

/// Pushforward along F_B.
pub fn act_b_tb2r(x: &CocycleTB2R, b: &SkewIntMat) -> CocycleTB2R {
    decode_tb2r(x.n, &x.nerve, &pushforward(&crate::crossed::FB::new(b.clone()), &encode_tb2r(x), &x.nerve))
}

pub fn lele_td(x: &CocycleTD) -> CocycleTB2 {
    decode_tb2(x.n, &x.nerve, &pushforward(&crate::crossed::Lele::new(x.n), &encode_td(x), &x.nerve))
}

pub fn rele_td(x: &CocycleTD) -> CocycleTB2 {
    decode_tb2(x.n, &x.nerve, &pushforward(&crate::crossed::Rele::new(x.n), &encode_td(x), &x.nerve))
}

// ------------------------------------------------------ generic layer

/// A cocycle for a crossed module: g on edges, a on triangles.
#[derive(Debug, Clone)]
pub struct RawCocycle<M: CrossedModule> {
    pub g: Cochain<M::Obj>,
    pub a: Cochain<M::Arr>,
}

/// A cocycle for a semi-direct product Γ ⋉ so(n,ℤ).
#[derive(Debug, Clone)]
pub struct RawSdCocycle<M: CrossedModule> {
    pub u: Cochain<SkewIntMat>,
    pub g: Cochain<M::Obj>,
    pub a: Cochain<M::Arr>,
}

/// Which generic condition failed, with both sides.
#[derive(Debug, Clone)]
pub enum GenericFailure<M: CrossedModule> {
    U(Vec<usize>),
    G(Vec<usize>, M::Obj, M::Obj),
    H(Vec<usize>, M::Arr, M::Arr),
}

/// t(a_ijk) + g_jk + g_ij = g_ik and a_ikl + α(g_kl, a_ijk) = a_ijl + a_jkl.
pub fn generic_check_cm<M: CrossedModule>(m: &M, nerve: &Nerve, x: &RawCocycle<M>) -> Result<(), GenericFailure<M>> {
    for s in nerve.simplices(2) {
        let lhs = m.obj_add(&m.obj_add(&m.t(x.a.get(s)), x.g.get(&ij(s, 1, 2))), x.g.get(&ij(s, 0, 1)));
        let rhs = x.g.get(&ij(s, 0, 2)).clone();
        if lhs != rhs {
            return Err(GenericFailure::G(s.clone(), lhs, rhs));
        }
    }
    for s in nerve.simplices(3) {
        let lhs = m.arr_add(x.a.get(&ijk(s, 0, 2, 3)), &m.act(x.g.get(&ij(s, 2, 3)), x.a.get(&ijk(s, 0, 1, 2))));
        let rhs = m.arr_add(x.a.get(&ijk(s, 0, 1, 3)), x.a.get(&ijk(s, 1, 2, 3)));
        if lhs != rhs {
            return Err(GenericFailure::H(s.clone(), lhs, rhs));
        }
    }
    Ok(())
}

/// The semi-direct cocycle conditions.
pub fn generic_check_sd<A: SoAction>(act: &A, nerve: &Nerve, x: &RawSdCocycle<A::M>) -> Result<(), GenericFailure<A::M>> {
    let m = act.base();
    for s in nerve.simplices(2) {
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        if *x.u.get(&e_ik) != x.u.get(&e_jk) + x.u.get(&e_ij) {
            return Err(GenericFailure::U(s.clone()));
        }
        let tw = act.at(x.u.get(&e_jk)).phi(x.g.get(&e_ij));
        let lhs = m.obj_add(&m.obj_add(&m.t(x.a.get(s)), x.g.get(&e_jk)), &tw);
        let rhs = x.g.get(&e_ik).clone();
        if lhs != rhs {
            return Err(GenericFailure::G(s.clone(), lhs, rhs));
        }
    }
    for s in nerve.simplices(3) {
        let (e_ij, e_jk, e_ik, e_kl) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2), ij(s, 2, 3));
        let f_kl = act.at(x.u.get(&e_kl));
        let g_kl = x.g.get(&e_kl);
        let tw = act.at(x.u.get(&e_jk)).phi(x.g.get(&e_ij));
        let sum = m.obj_add(x.g.get(&e_jk), &tw);
        let diff = m.obj_sub(&m.obj_sub(x.g.get(&e_ik), &tw), x.g.get(&e_jk));
        let a_ijk = x.a.get(&ijk(s, 0, 1, 2));
        let inner = m.arr_add(&m.arr_neg(&f_kl.eta(&diff, &sum)), &f_kl.f(a_ijk));
        let lhs = m.arr_add(x.a.get(&ijk(s, 0, 2, 3)), &m.act(g_kl, &inner));
        let rhs = m.arr_sum(&[
            x.a.get(&ijk(s, 0, 1, 3)).clone(),
            x.a.get(&ijk(s, 1, 2, 3)).clone(),
            m.act(g_kl, &f_kl.eta(x.g.get(&e_jk), &tw)),
        ]);
        if lhs != rhs {
            return Err(GenericFailure::H(s.clone(), lhs, rhs));
        }
    }
    Ok(())
}

/// g′ = φ(g), a′_ijk = −η(t a_ijk, g_jk + g_ij) + f(a_ijk) − η(g_jk, g_ij).
pub fn pushforward<F: Intertwiner>(fi: &F, x: &RawCocycle<F::Dom>, nerve: &Nerve) -> RawCocycle<F::Cod> {
    let (d, c) = (fi.dom(), fi.cod());
    let g = x.g.map(|_, v| fi.phi(v));
    let a = x.a.map(|s, h| {
        let (g_ij, g_jk) = (x.g.get(&ij(s, 0, 1)), x.g.get(&ij(s, 1, 2)));
        c.arr_sum(&[
            c.arr_neg(&fi.eta(&d.t(h), &d.obj_add(g_jk, g_ij))),
            fi.f(h),
            c.arr_neg(&fi.eta(g_jk, g_ij)),
        ])
    });
    let _ = nerve;
    RawCocycle { g, a }
}

/// Pushforward along an equivariant intertwiner between semi-direct products.
pub fn pushforward_sd<F, AD, AC>(fi: &F, act: &AD, x: &RawSdCocycle<F::Dom>) -> RawSdCocycle<F::Cod>
where
    F: Intertwiner,
    AD: SoAction<M = F::Dom>,
    AC: SoAction<M = F::Cod>,
{
    let (d, c) = (fi.dom(), fi.cod());
    let g = x.g.map(|_, v| fi.phi(v));
    let a = x.a.map(|s, h| {
        let (g_ij, g_jk) = (x.g.get(&ij(s, 0, 1)), x.g.get(&ij(s, 1, 2)));
        let tw = act.at(x.u.get(&ij(s, 1, 2))).phi(g_ij);
        c.arr_sum(&[
            c.arr_neg(&fi.eta(&d.t(h), &d.obj_add(g_jk, &tw))),
            fi.f(h),
            c.arr_neg(&fi.eta(g_jk, &tw)),
        ])
    });
    RawSdCocycle { u: x.u.clone(), g, a }
}

pub fn encode_td(x: &CocycleTD) -> RawCocycle<Td> {
    RawCocycle {
        g: x.a.map(|s, a| a.concat(x.a_hat.get(s))),
        a: x.m.map(|s, m| TdArr { z: m.concat(x.m_hat.get(s)), t: x.t.get(s).clone() }),
    }
}

pub fn decode_td(n: usize, nerve: &Nerve, r: &RawCocycle<Td>) -> CocycleTD {
    CocycleTD {
        n,
        nerve: nerve.clone(),
        a: r.g.map(|_, g| g.first_half()),
        a_hat: r.g.map(|_, g| g.second_half()),
        m: r.a.map(|_, h| h.z.first_half()),
        m_hat: r.a.map(|_, h| h.z.second_half()),
        t: r.a.map(|_, h| h.t.clone()),
    }
}

pub fn encode_tb2r(x: &CocycleTB2R) -> RawCocycle<Tb2R> {
    RawCocycle { g: x.a.clone(), a: x.m.map(|s, m| TauM { tau: x.tau.get(s).clone(), m: m.clone() }) }
}

pub fn decode_tb2r(n: usize, nerve: &Nerve, r: &RawCocycle<Tb2R>) -> CocycleTB2R {
    CocycleTB2R {
        n,
        nerve: nerve.clone(),
        a: r.g.clone(),
        m: r.a.map(|_, h| h.m.clone()),
        tau: r.a.map(|_, h| h.tau.clone()),
    }
}

pub fn encode_tb2(x: &CocycleTB2) -> RawCocycle<Tb2> {
    RawCocycle { g: x.a.map(|_, v| v.frac()), a: x.tau.clone() }
}

pub fn decode_tb2(n: usize, nerve: &Nerve, r: &RawCocycle<Tb2>) -> CocycleTB2 {
    CocycleTB2 { n, nerve: nerve.clone(), a: r.g.map(|_, v| v.frac()), tau: r.a.clone() }
}

pub fn encode_tdhalf(x: &CocycleTDhalf) -> RawSdCocycle<Td> {
    let r = encode_td(&strip_b_view(x));
    RawSdCocycle { u: x.b.clone(), g: r.g, a: r.a }
}

fn strip_b_view(x: &CocycleTDhalf) -> CocycleTD {
    CocycleTD {
        n: x.n,
        nerve: x.nerve.clone(),
        a: x.a.clone(),
        a_hat: x.a_hat.clone(),
        m: x.m.clone(),
        m_hat: x.m_hat.clone(),
        t: x.t.clone(),
    }
}

pub fn encode_tb1(x: &CocycleTB1) -> RawSdCocycle<Tb2R> {
    RawSdCocycle {
        u: x.b.clone(),
        g: x.a.clone(),
        a: x.m.map(|s, m| TauM { tau: x.tau.get(s).clone(), m: m.clone() }),
    }
}

pub fn decode_tb1(n: usize, nerve: &Nerve, r: &RawSdCocycle<Tb2R>) -> CocycleTB1 {
    CocycleTB1 {
        n,
        nerve: nerve.clone(),
        b: r.u.clone(),
        a: r.g.clone(),
        m: r.a.map(|_, h| h.m.clone()),
        tau: r.a.map(|_, h| h.tau.clone()),
    }
}

fn fail(nerve: &Nerve, cond: Condition, s: &[usize], detail: String) -> CocycleError {
    CocycleError::Failed(Failure { condition: cond, simplex: nerve.id_tuple(s), detail })
}

/// Generic validation of a TD½ cocycle, reported with the specialised labels.
pub fn generic_validate_tdhalf(x: &CocycleTDhalf) -> Result<(), CocycleError> {
    x.check_shape()?;
    let act = TdAction { td: Td { n: x.n } };
    let n = x.n;
    match generic_check_sd(&act, &x.nerve, &encode_tdhalf(x)) {
        Ok(()) => Ok(()),
        Err(GenericFailure::U(s)) => Err(fail(&x.nerve, Condition::BCocycle, &s, "u".into())),
        Err(GenericFailure::G(s, l, r)) => {
            let cond = if l.first_half() != r.first_half() { Condition::ACocycle } else { Condition::AHatCocycle };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
        Err(GenericFailure::H(s, l, r)) => {
            let cond = if l.t != r.t {
                Condition::TCocycle
            } else if l.z.0[..n] != r.z.0[..n] {
                Condition::MImplied
            } else {
                Condition::MHatImplied
            };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
    }
}

pub fn generic_validate_tb1(x: &CocycleTB1) -> Result<(), CocycleError> {
    x.check_shape()?;
    let act = Tb2RAction { tb: Tb2R { n: x.n } };
    match generic_check_sd(&act, &x.nerve, &encode_tb1(x)) {
        Ok(()) => Ok(()),
        Err(GenericFailure::U(s)) => Err(fail(&x.nerve, Condition::BCocycle, &s, "u".into())),
        Err(GenericFailure::G(s, l, r)) => Err(fail(&x.nerve, Condition::ACocycle, &s, format!("{:?} != {:?}", l, r))),
        Err(GenericFailure::H(s, l, r)) => {
            let cond = if l.tau != r.tau { Condition::TauCocycle } else { Condition::MImplied };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
    }
}

pub fn generic_validate_td(x: &CocycleTD) -> Result<(), CocycleError> {
    i_push_td(x).check_shape()?;
    let n = x.n;
    match generic_check_cm(&Td { n }, &x.nerve, &encode_td(x)) {
        Ok(()) => Ok(()),
        Err(GenericFailure::U(s)) => Err(fail(&x.nerve, Condition::BCocycle, &s, "u".into())),
        Err(GenericFailure::G(s, l, r)) => {
            let cond = if l.first_half() != r.first_half() { Condition::ACocycle } else { Condition::AHatCocycle };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
        Err(GenericFailure::H(s, l, r)) => {
            let cond = if l.t != r.t {
                Condition::TCocycle
            } else if l.z.0[..n] != r.z.0[..n] {
                Condition::MImplied
            } else {
                Condition::MHatImplied
            };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
    }
}

pub fn generic_validate_tb2r(x: &CocycleTB2R) -> Result<(), CocycleError> {
    i_push_tb2r(x).check_shape()?;
    match generic_check_cm(&Tb2R { n: x.n }, &x.nerve, &encode_tb2r(x)) {
        Ok(()) => Ok(()),
        Err(GenericFailure::U(s)) => Err(fail(&x.nerve, Condition::BCocycle, &s, "u".into())),
        Err(GenericFailure::G(s, l, r)) => Err(fail(&x.nerve, Condition::ACocycle, &s, format!("{:?} != {:?}", l, r))),
        Err(GenericFailure::H(s, l, r)) => {
            let cond = if l.tau != r.tau { Condition::TauCocycle } else { Condition::MImplied };
            Err(fail(&x.nerve, cond, &s, format!("{:?} != {:?}", l, r)))
        }
    }
}

/// Left leg of a TD½ cocycle computed by the generic equivariant pushforward.
pub fn leftleg_tdhalf_generic(x: &CocycleTDhalf) -> CocycleTB1 {
    let act = TdAction { td: Td { n: x.n } };
    let r = pushforward_sd::<_, _, Tb2RAction>(&LeleR::new(x.n), &act, &encode_tdhalf(x));
    decode_tb1(x.n, &x.nerve, &r)
}

// ---------------------------------------------------------------- gauges

fn same_nerve(x: &Nerve, y: &Nerve, nx: usize, ny: usize) -> Result<(), CocycleError> {
    if x != y || nx != ny {
        return Err(CocycleError::Shape("cocycles live on different nerves or dimensions".into()));
    }
    Ok(())
}

/// Both sides of the TD½ t-gauge equation with e omitted on the left:
/// returns (t′-side sum without e, right side without e_ik).
struct TdGaugeTerms {
    lhs_wo_e: Rat,
    rhs_wo_e: Rat,
}

fn td_gauge_terms(x: &CocycleTDhalf, bp: &Cochain<SkewIntMat>, ap: &Cochain<RatVec>, ahp: &Cochain<RatVec>, tp: Option<&Cochain<Circle>>, g: &GaugeTDhalf, s: &[usize]) -> TdGaugeTerms {
    let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
    let (i, j, k) = (s[0], s[1], s[2]);
    let bp_jk = bp.get(&e_jk);
    let p_i = g.p.get(&[i]);
    let p_j = g.p.get(&[j]);
    let z_ij = g.z.get(&e_ij).to_rat();
    let a_ij = x.a.get(&e_ij);
    let c_k = g.c.get(&[k]);
    let m = x.m.get(s).to_rat();
    let tp_val = tp.map(|t| t.get(s).value().clone()).unwrap_or_default();
    let lhs_wo_e = tp_val + bp_jk.low(ap.get(&e_ij), p_i) - bp_jk.low(&z_ij, &(p_j + a_ij))
        - ahp.get(&e_jk).dot(&z_ij)
        - bp_jk.low(p_j, a_ij);
    let rhs_wo_e = -c_k.low(&m, x.a.get(&e_ik)) + x.t.get(s).value() - g.p_hat.get(&[k]).dot(&m)
        - c_k.low(x.a.get(&e_jk), a_ij);
    TdGaugeTerms { lhs_wo_e, rhs_wo_e }
}

/// The unique y with verify_gauge_tdhalf(x, y, g) passing.
pub fn apply_gauge_tdhalf(x: &CocycleTDhalf, g: &GaugeTDhalf) -> CocycleTDhalf {
    let nv = &x.nerve;
    let b = x.b.map(|s, b| &(b + g.c.get(&[s[1]])) - g.c.get(&[s[0]]));
    let a = x.a.map(|s, a| &(&g.z.get(s).to_rat() + g.p.get(&[s[1]])) + &(a - g.p.get(&[s[0]])));
    let a_hat = x.a_hat.map(|s, ah| {
        let (i, j) = (s[0], s[1]);
        let v = &(&g.z_hat.get(s).to_rat() + g.p_hat.get(&[j])) + &(&g.c.get(&[j]).mul_rat(x.a.get(s)) + ah);
        &(&v - &b.get(s).mul_rat(g.p.get(&[i]))) - g.p_hat.get(&[i])
    });
    let m = x.m.map(|s, m| &(&(g.z.get(&ij(s, 0, 2)) + m) - g.z.get(&ij(s, 0, 1))) - g.z.get(&ij(s, 1, 2)));
    let m_hat = x.m_hat.map(|s, mh| {
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        let v = &(mh + g.z_hat.get(&e_ik)) - &b.get(&e_jk).mul_int(g.z.get(&e_ij));
        let v = &v + &g.c.get(&[s[2]]).mul_int(x.m.get(s));
        &(&v - g.z_hat.get(&e_ij)) - g.z_hat.get(&e_jk)
    });
    let t = Cochain::from_fn(nv, 2, |s| {
        let terms = td_gauge_terms(x, &b, &a, &a_hat, None, g, s);
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        let e = g.e.get(&e_ik).value() - g.e.get(&e_ij).value() - g.e.get(&e_jk).value();
        Circle::new(terms.rhs_wo_e + e - terms.lhs_wo_e)
    });
    CocycleTDhalf { n: x.n, nerve: nv.clone(), b, a, a_hat, m, m_hat, t }
}

pub fn verify_gauge_tdhalf(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTDhalf) -> Result<(), CocycleError> {
    same_nerve(&x.nerve, &y.nerve, x.n, y.n)?;
    x.check_shape()?;
    y.check_shape()?;
    g.check_shape(&x.nerve, x.n)?;
    let nv = &x.nerve;
    let mut ck = Checker::new(nv);
    for s in nv.simplices(1) {
        let (i, j) = (s[0], s[1]);
        let (c_i, c_j) = (g.c.get(&[i]), g.c.get(&[j]));
        ck.eq(Condition::BGauge, s, c_j + x.b.get(s), y.b.get(s) + c_i);
        let lhs = &(&g.z.get(s).to_rat() + g.p.get(&[j])) + x.a.get(s);
        ck.eq(Condition::AGauge, s, lhs, y.a.get(s) + g.p.get(&[i]));
        let lhs = &(&(&g.z_hat.get(s).to_rat() + g.p_hat.get(&[j])) + &c_j.mul_rat(x.a.get(s))) + x.a_hat.get(s);
        let rhs = &(&y.b.get(s).mul_rat(g.p.get(&[i])) + y.a_hat.get(s)) + g.p_hat.get(&[i]);
        ck.eq(Condition::AHatGauge, s, lhs, rhs);
    }
    for s in nv.simplices(2) {
        if !ck.ok() {
            break;
        }
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        let terms = td_gauge_terms(x, &y.b, &y.a, &y.a_hat, Some(&y.t), g, s);
        let lhs = Circle::new(terms.lhs_wo_e + g.e.get(&e_ij).value() + g.e.get(&e_jk).value());
        let rhs = Circle::new(terms.rhs_wo_e + g.e.get(&e_ik).value());
        ck.eq(Condition::TGauge, s, lhs, rhs);
        let lhs = &(y.m.get(s) + g.z.get(&e_ij)) + g.z.get(&e_jk);
        ck.eq(Condition::MGaugeImplied, s, lhs, g.z.get(&e_ik) + x.m.get(s));
        let lhs = &(y.m_hat.get(s) + g.z_hat.get(&e_ij)) + g.z_hat.get(&e_jk);
        let rhs = &(&(x.m_hat.get(s) + g.z_hat.get(&e_ik)) - &y.b.get(&e_jk).mul_int(g.z.get(&e_ij)))
            + &g.c.get(&[s[2]]).mul_int(x.m.get(s));
        ck.eq(Condition::MHatGaugeImplied, s, lhs, rhs);
    }
    ck.finish()
}

/// Known parts of the TB1 τ-gauge equation: τ′ + P + l_{a′_jk}ε_ij + ε_jk = ε_ik + Q.
fn tb1_gauge_pq(x: &CocycleTB1, bp: &Cochain<SkewIntMat>, ap: &Cochain<RatVec>, g: &GaugeTB1, s: &[usize]) -> (AffChar, AffChar) {
    let n = x.n;
    let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
    let (i, j, k) = (s[0], s[1], s[2]);
    let bp_jk = bp.get(&e_jk);
    let (p_i, p_j, p_k) = (g.p.get(&[i]), g.p.get(&[j]), g.p.get(&[k]));
    let a_ij = x.a.get(&e_ij);
    let z_ij = g.z.get(&e_ij);
    let zr = z_ij.to_rat();
    let c_k = g.c.get(&[k]);
    let m = x.m.get(s);
    let p_const = bp_jk.low(p_i, ap.get(&e_ij)) - bp_jk.low(&(p_j + a_ij), &zr) - bp_jk.low(a_ij, p_j);
    let p = &konst(p_const, n) - &AffChar::of_bra(z_ij, bp_jk).translate(ap.get(&e_jk));
    let q_const = -c_k.low(x.a.get(&e_ik), &m.to_rat()) - c_k.low(a_ij, x.a.get(&e_jk));
    let q = &(&konst(q_const, n) + &x.tau.get(s).translate(p_k)) - &AffChar::of_bra(m, c_k).translate(p_k);
    (p, q)
}

pub fn apply_gauge_tb1(x: &CocycleTB1, g: &GaugeTB1) -> CocycleTB1 {
    let nv = &x.nerve;
    let b = x.b.map(|s, b| &(b + g.c.get(&[s[1]])) - g.c.get(&[s[0]]));
    let a = x.a.map(|s, a| &(&g.z.get(s).to_rat() + g.p.get(&[s[1]])) + &(a - g.p.get(&[s[0]])));
    let m = x.m.map(|s, m| &(&(g.z.get(&ij(s, 0, 2)) + m) - g.z.get(&ij(s, 0, 1))) - g.z.get(&ij(s, 1, 2)));
    let tau = Cochain::from_fn(nv, 2, |s| {
        let (p, q) = tb1_gauge_pq(x, &b, &a, g, s);
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        let eps = &(g.eps.get(&e_ik) - &g.eps.get(&e_ij).translate(a.get(&e_jk))) - g.eps.get(&e_jk);
        &(&(&eps + &q) - &p) + &AffChar::zero(x.n)
    });
    CocycleTB1 { n: x.n, nerve: nv.clone(), b, a, m, tau }
}

pub fn verify_gauge_tb1(x: &CocycleTB1, y: &CocycleTB1, g: &GaugeTB1) -> Result<(), CocycleError> {
    same_nerve(&x.nerve, &y.nerve, x.n, y.n)?;
    x.check_shape()?;
    y.check_shape()?;
    g.check_shape(&x.nerve, x.n)?;
    let nv = &x.nerve;
    let mut ck = Checker::new(nv);
    for s in nv.simplices(1) {
        let (i, j) = (s[0], s[1]);
        ck.eq(Condition::BGauge, s, g.c.get(&[j]) + x.b.get(s), y.b.get(s) + g.c.get(&[i]));
        let lhs = &(&g.z.get(s).to_rat() + g.p.get(&[j])) + x.a.get(s);
        ck.eq(Condition::AGauge, s, lhs, y.a.get(s) + g.p.get(&[i]));
    }
    for s in nv.simplices(2) {
        if !ck.ok() {
            break;
        }
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        let (p, q) = tb1_gauge_pq(x, &y.b, &y.a, g, s);
        let lhs = &(&(y.tau.get(s) + &p) + &g.eps.get(&e_ij).translate(y.a.get(&e_jk))) + g.eps.get(&e_jk);
        let rhs = g.eps.get(&e_ik) + &q;
        ck.eq(Condition::TauGauge, s, lhs, rhs);
        let lhs = &(y.m.get(s) + g.z.get(&e_ij)) + g.z.get(&e_jk);
        ck.eq(Condition::MGaugeImplied, s, lhs, g.z.get(&e_ik) + x.m.get(s));
    }
    ck.finish()
}

/// TD gauges are TD½ gauges with C = 0.
pub fn verify_gauge_td(x: &CocycleTD, y: &CocycleTD, g: &GaugeTDhalf) -> Result<(), CocycleError> {
    if !g.c.is_zero() {
        return Err(CocycleError::Precondition("TD gauges have C = 0".into()));
    }
    verify_gauge_tdhalf(&i_push_td(x), &i_push_td(y), g)
}

pub fn apply_gauge_td(x: &CocycleTD, g: &GaugeTDhalf) -> Result<CocycleTD, CocycleError> {
    if !g.c.is_zero() {
        return Err(CocycleError::Precondition("TD gauges have C = 0".into()));
    }
    Ok(strip_b_tdhalf(&apply_gauge_tdhalf(&i_push_td(x), g)).expect("B stays zero"))
}

pub fn verify_gauge_tb2r(x: &CocycleTB2R, y: &CocycleTB2R, g: &GaugeTB1) -> Result<(), CocycleError> {
    if !g.c.is_zero() {
        return Err(CocycleError::Precondition("TB2R gauges have C = 0".into()));
    }
    verify_gauge_tb1(&i_push_tb2r(x), &i_push_tb2r(y), g)
}

pub fn apply_gauge_tb2r(x: &CocycleTB2R, g: &GaugeTB1) -> Result<CocycleTB2R, CocycleError> {
    if !g.c.is_zero() {
        return Err(CocycleError::Precondition("TB2R gauges have C = 0".into()));
    }
    Ok(strip_b_tb1(&apply_gauge_tb1(&i_push_tb2r(x), g)).expect("B stays zero"))
}

/// Gauge between the left legs induced by a TD½ gauge h from x.
pub fn leftleg_gauge(x: &CocycleTDhalf, h: &GaugeTDhalf) -> GaugeTB1 {
    let y = apply_gauge_tdhalf(x, h);
    let eps = h.e.map(|s, e| {
        let (i, j) = (s[0], s[1]);
        let (p_i, p_j) = (h.p.get(&[i]), h.p.get(&[j]));
        let zh = h.z_hat.get(s);
        let c = e.value() - zh.dot_rat(y.a.get(s)) - x.a.get(s).dot(h.p_hat.get(&[j]))
            + x.a_hat.get(s).dot(p_i)
            + (p_i - p_j).dot(h.p_hat.get(&[j]))
            + h.c.get(&[j]).full(p_i, x.a.get(s));
        AffChar::new(Circle::new(c), zh.clone())
    });
    GaugeTB1 { c: h.c.clone(), z: h.z.clone(), p: h.p.clone(), eps }
}

/// p with p_i − p_j = z_ij + a_ij − a′_ij, i.e. δp = a′ − a − z.
fn solve_p(x_a: &Cochain<RatVec>, y_a: &Cochain<RatVec>, z: &Cochain<IntVec>, nerve: &Nerve, n: usize) -> Result<Cochain<RatVec>, CocycleError> {
    let rhs = y_a.map(|s, ap| &(ap - x_a.get(s)) - &z.get(s).to_rat());
    nerve::solve_q_vec(nerve, &rhs, n).map_err(|e| obstructed(e, "p"))
}

/// Solves for a TD½ gauge with C, z, ẑ fixed: p, p̂ over ℚ and e over ℚ/ℤ.
pub fn solve_gauge_restricted_tdhalf(
    x: &CocycleTDhalf,
    y: &CocycleTDhalf,
    c: &Cochain<SkewIntMat>,
    z: &Cochain<IntVec>,
    z_hat: &Cochain<IntVec>,
) -> Result<GaugeTDhalf, CocycleError> {
    same_nerve(&x.nerve, &y.nerve, x.n, y.n)?;
    let (nv, n) = (&x.nerve, x.n);
    let mut g = GaugeTDhalf { c: c.clone(), z: z.clone(), z_hat: z_hat.clone(), ..GaugeTDhalf::zero(nv, n) };
    g.check_shape(nv, n)?;
    check_fixed_parts(x, y, &g)?;
    g.p = solve_p(&x.a, &y.a, z, nv, n)?;
    // p̂_i − p̂_j = ẑ + C_j a + â − â′ − B′ p_i
    let rhs = Cochain::from_fn(nv, 1, |s| {
        let (i, j) = (s[0], s[1]);
        let beta = &(&(&z_hat.get(s).to_rat() + &c.get(&[j]).mul_rat(x.a.get(s))) + x.a_hat.get(s))
            - &(y.a_hat.get(s) + &y.b.get(s).mul_rat(g.p.get(&[i])));
        -beta
    });
    g.p_hat = nerve::solve_q_vec(nv, &rhs, n).map_err(|e| obstructed(e, "p_hat"))?;
    g.e = solve_e(x, y, &g)?;
    verify_gauge_tdhalf(x, y, &g)?;
    Ok(g)
}

fn check_fixed_parts(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTDhalf) -> Result<(), CocycleError> {
    let nv = &x.nerve;
    for s in nv.simplices(1) {
        if g.c.get(&[s[1]]) + x.b.get(s) != y.b.get(s) + g.c.get(&[s[0]]) {
            return Err(CocycleError::Precondition(format!("B-gauge unsatisfiable on edge {:?}", nv.id_tuple(s))));
        }
    }
    for s in nv.simplices(2) {
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        if &(y.m.get(s) + g.z.get(&e_ij)) + g.z.get(&e_jk) != g.z.get(&e_ik) + x.m.get(s) {
            return Err(CocycleError::Precondition(format!("m-gauge unsatisfiable on {:?}", nv.id_tuple(s))));
        }
        let lhs = &(y.m_hat.get(s) + g.z_hat.get(&e_ij)) + g.z_hat.get(&e_jk);
        let rhs = &(&(x.m_hat.get(s) + g.z_hat.get(&e_ik)) - &y.b.get(&e_jk).mul_int(g.z.get(&e_ij)))
            + &g.c.get(&[s[2]]).mul_int(x.m.get(s));
        if lhs != rhs {
            return Err(CocycleError::Precondition(format!("m_hat-gauge unsatisfiable on {:?}", nv.id_tuple(s))));
        }
    }
    Ok(())
}

/// e from the t-gauge equation e_ik − e_ij − e_jk = K, all other data fixed.
pub fn solve_e(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTDhalf) -> Result<Cochain<Circle>, CocycleError> {
    let nv = &x.nerve;
    let rhs = Cochain::from_fn(nv, 2, |s| {
        let terms = td_gauge_terms(x, &y.b, &y.a, &y.a_hat, Some(&y.t), g, s);
        Circle::new(terms.rhs_wo_e - terms.lhs_wo_e)
    });
    let rhs = rhs.map(|_, v| v.clone());
    // δe_ijk = e_jk − e_ik + e_ij = −K
    nerve::solve_circle(nv, &rhs).map_err(|e| obstructed(e, "e"))
}

/// TB1 gauges with C and z fixed: p over ℚ, then ε's winding over ℤ and constant over ℚ/ℤ.
pub fn solve_gauge_restricted_tb1(x: &CocycleTB1, y: &CocycleTB1, c: &Cochain<SkewIntMat>, z: &Cochain<IntVec>) -> Result<GaugeTB1, CocycleError> {
    same_nerve(&x.nerve, &y.nerve, x.n, y.n)?;
    let (nv, n) = (&x.nerve, x.n);
    let mut g = GaugeTB1 { c: c.clone(), z: z.clone(), ..GaugeTB1::zero(nv, n) };
    g.check_shape(nv, n)?;
    for s in nv.simplices(1) {
        if g.c.get(&[s[1]]) + x.b.get(s) != y.b.get(s) + g.c.get(&[s[0]]) {
            return Err(CocycleError::Precondition(format!("B-gauge unsatisfiable on edge {:?}", nv.id_tuple(s))));
        }
    }
    for s in nv.simplices(2) {
        let (e_ij, e_jk, e_ik) = (ij(s, 0, 1), ij(s, 1, 2), ij(s, 0, 2));
        if &(y.m.get(s) + z.get(&e_ij)) + z.get(&e_jk) != z.get(&e_ik) + x.m.get(s) {
            return Err(CocycleError::Precondition(format!("m-gauge unsatisfiable on {:?}", nv.id_tuple(s))));
        }
    }
    g.p = solve_p(&x.a, &y.a, z, nv, n)?;
    // ε_ik − ε_jk − l_{a′_jk} ε_ij = K := τ′ + P − Q
    let k = Cochain::from_fn(nv, 2, |s| {
        let (p, q) = tb1_gauge_pq(x, &y.b, &y.a, &g, s);
        &(y.tau.get(s) + &p) - &q
    });
    let w_rhs = k.map(|_, v| -&v.winding);
    let w = nerve::solve_z_vec(nv, &w_rhs, n).map_err(|e| obstructed(e, "eps_winding"))?;
    let c_rhs = k.map(|s, v| {
        let twist = w.get(&ij(s, 0, 1)).dot_rat(y.a.get(&ij(s, 1, 2)));
        Circle::new(twist - v.constant.value())
    });
    let consts = nerve::solve_circle(nv, &c_rhs).map_err(|e| obstructed(e, "eps_constant"))?;
    g.eps = consts.map(|s, c| AffChar::new(c.clone(), w.get(s).clone()));
    verify_gauge_tb1(x, y, &g)?;
    Ok(g)
}

// ----------------------------------------------------------- polarize

/// Gauges x by the section C and forgets the then-vanishing B.
pub fn polarize(x: &CocycleTDhalf, c: &Cochain<SkewIntMat>) -> Result<CocycleTD, CocycleError> {
    let nv = &x.nerve;
    shape(nv, c, 0, "C", |v| v.n() == x.n)?;
    for s in nv.simplices(1) {
        // B′_ij = B_ij + C_j − C_i must vanish
        if &(x.b.get(s) + c.get(&[s[1]])) - c.get(&[s[0]]) != SkewIntMat::zero(x.n) {
            return Err(CocycleError::Precondition(format!(
                "section does not trivialize B on edge ({})",
                nv.id_tuple(s).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            )));
        }
    }
    let g = GaugeTDhalf { c: c.clone(), ..GaugeTDhalf::zero(nv, x.n) };
    Ok(strip_b_tdhalf(&apply_gauge_tdhalf(x, &g)).expect("B vanishes after the gauge"))
}

/// Searches for a section trivializing B over ℤ.
pub fn find_polarization(x: &CocycleTDhalf) -> Result<Cochain<SkewIntMat>, Obstruction> {
    p_push_tdhalf(x).trivialize().map_err(|o| o.with_note("polarization"))
}

// ------------------------------------------------ trivial torus bundles

/// I_*: (B, m, t) ↦ (B, 0, 0, τ_{t,m}).
pub fn i_star(so: &CocycleSO, m: &Cochain<IntVec>, t: &Cochain<Circle>) -> Result<CocycleTB1, CocycleError> {
    so.validate()?;
    let nv = &so.nerve;
    shape(nv, m, 2, "m", |v| v.len() == so.n)?;
    shape(nv, t, 2, "t", |_| true)?;
    let x = CocycleTB1 {
        n: so.n,
        nerve: nv.clone(),
        b: so.b.clone(),
        a: Cochain::constant(nv, 1, RatVec::zeros(so.n)),
        m: Cochain::constant(nv, 2, IntVec::zeros(so.n)),
        tau: t.map(|s, tv| AffChar::new(tv.clone(), m.get(s).clone())),
    };
    x.validate().map_err(|e| CocycleError::Precondition(format!("inputs are not cocycles: {}", e)))?;
    Ok(x)
}

/// Ĩ_*: (B, (b, m), t) ↦ (B, 0, b, 0, m, t).
pub fn i_tilde_star(so: &CocycleSO, b: &Cochain<RatVec>, m: &Cochain<IntVec>, t: &Cochain<Circle>) -> Result<CocycleTDhalf, CocycleError> {
    so.validate()?;
    let nv = &so.nerve;
    let n = so.n;
    shape(nv, b, 1, "b", |v| v.len() == n)?;
    shape(nv, m, 2, "m", |v| v.len() == n)?;
    shape(nv, t, 2, "t", |_| true)?;
    let x = CocycleTDhalf {
        n,
        nerve: nv.clone(),
        b: so.b.clone(),
        a: Cochain::constant(nv, 1, RatVec::zeros(n)),
        a_hat: b.clone(),
        m: Cochain::constant(nv, 2, IntVec::zeros(n)),
        m_hat: m.clone(),
        t: t.clone(),
    };
    x.validate().map_err(|e| CocycleError::Precondition(format!("inputs are not cocycles: {}", e)))?;
    Ok(x)
}

/// T_*: the underlying torus-bundle class m.
pub fn t_star_tb1(x: &CocycleTB1) -> Cochain<IntVec> {
    x.m.clone()
}

pub fn t_star_tdhalf(x: &CocycleTDhalf) -> Cochain<IntVec> {
    x.m.clone()
}

// ------------------------------------------------------------- random

pub fn random_gauge_tb1(nerve: &Nerve, n: usize, s: &mut Sampler, with_c: bool) -> GaugeTB1 {
    GaugeTB1 {
        c: Cochain::from_fn(nerve, 0, |_| if with_c { s.skew(n) } else { SkewIntMat::zero(n) }),
        z: Cochain::from_fn(nerve, 1, |_| s.intvec(n)),
        p: Cochain::from_fn(nerve, 0, |_| s.ratvec(n)),
        eps: Cochain::from_fn(nerve, 1, |_| s.affchar(n)),
    }
}

pub fn random_gauge_tdhalf(nerve: &Nerve, n: usize, s: &mut Sampler, with_c: bool) -> GaugeTDhalf {
    GaugeTDhalf {
        c: Cochain::from_fn(nerve, 0, |_| if with_c { s.skew(n) } else { SkewIntMat::zero(n) }),
        z: Cochain::from_fn(nerve, 1, |_| s.intvec(n)),
        z_hat: Cochain::from_fn(nerve, 1, |_| s.intvec(n)),
        p: Cochain::from_fn(nerve, 0, |_| s.ratvec(n)),
        p_hat: Cochain::from_fn(nerve, 0, |_| s.ratvec(n)),
        e: Cochain::from_fn(nerve, 1, |_| s.circle()),
    }
}

/// Random valid TB1 cocycle: a random gauge of the trivial one.
pub fn random_tb1(nerve: &Nerve, n: usize, s: &mut Sampler) -> CocycleTB1 {
    let g = random_gauge_tb1(nerve, n, s, true);
    apply_gauge_tb1(&CocycleTB1::zero(nerve, n), &g)
}

pub fn random_tdhalf(nerve: &Nerve, n: usize, s: &mut Sampler) -> CocycleTDhalf {
    let g = random_gauge_tdhalf(nerve, n, s, true);
    apply_gauge_tdhalf(&CocycleTDhalf::zero(nerve, n), &g)
}

pub fn random_td(nerve: &Nerve, n: usize, s: &mut Sampler) -> CocycleTD {
    let g = random_gauge_tdhalf(nerve, n, s, false);
    apply_gauge_td(&CocycleTD::zero(nerve, n), &g).expect("C = 0")
}

pub fn random_tb2r(nerve: &Nerve, n: usize, s: &mut Sampler) -> CocycleTB2R {
    let g = random_gauge_tb1(nerve, n, s, false);
    apply_gauge_tb2r(&CocycleTB2R::zero(nerve, n), &g).expect("C = 0")
}

fn bump_vec(v: &RatVec, s: &mut Sampler) -> RatVec {
    let mut w = v.clone();
    let i = s.index(w.len());
    w.0[i] += crate::scalars::rat(1, 2 + s.range(0, 3));
    w
}

fn bump_int(v: &IntVec, s: &mut Sampler) -> IntVec {
    let mut w = v.clone();
    let i = s.index(w.len());
    w.0[i] += crate::scalars::int(1);
    w
}

fn pick<'a>(nerve: &'a Nerve, k: usize, s: &mut Sampler) -> &'a [usize] {
    let ss = nerve.simplices(k);
    &ss[s.index(ss.len())]
}

/// Changes one entry of one field of a TD½ cocycle.
pub fn perturb_tdhalf(x: &CocycleTDhalf, s: &mut Sampler) -> CocycleTDhalf {
    let mut y = x.clone();
    let nv = x.nerve.clone();
    match s.index(if x.n >= 2 { 6 } else { 5 }) {
        0 => {
            let e = pick(&nv, 1, s);
            y.a.set(e, bump_vec(x.a.get(e), s));
        }
        1 => {
            let e = pick(&nv, 1, s);
            y.a_hat.set(e, bump_vec(x.a_hat.get(e), s));
        }
        2 => {
            let t = pick(&nv, 2, s);
            y.m.set(t, bump_int(x.m.get(t), s));
        }
        3 => {
            let t = pick(&nv, 2, s);
            y.m_hat.set(t, bump_int(x.m_hat.get(t), s));
        }
        4 => {
            let t = pick(&nv, 2, s);
            y.t.set(t, x.t.get(t) + &Circle::from_frac(1, 2 + s.range(0, 3)));
        }
        _ => {
            let e = pick(&nv, 1, s);
            let mut lower = x.b.get(e).lower();
            lower[0] += crate::scalars::int(1);
            y.b.set(e, SkewIntMat::from_lower(x.n, &lower));
        }
    }
    y
}

pub fn perturb_tb1(x: &CocycleTB1, s: &mut Sampler) -> CocycleTB1 {
    let mut y = x.clone();
    let nv = x.nerve.clone();
    match s.index(if x.n >= 2 { 4 } else { 3 }) {
        0 => {
            let e = pick(&nv, 1, s);
            y.a.set(e, bump_vec(x.a.get(e), s));
        }
        1 => {
            let t = pick(&nv, 2, s);
            y.m.set(t, bump_int(x.m.get(t), s));
        }
        2 => {
            let t = pick(&nv, 2, s);
            let tau = x.tau.get(t);
            let bumped = if s.coin() {
                AffChar::new(&tau.constant + &Circle::from_frac(1, 3), tau.winding.clone())
            } else {
                AffChar::new(tau.constant.clone(), bump_int(&tau.winding, s))
            };
            y.tau.set(t, bumped);
        }
        _ => {
            let e = pick(&nv, 1, s);
            let mut lower = x.b.get(e).lower();
            lower[0] += crate::scalars::int(1);
            y.b.set(e, SkewIntMat::from_lower(x.n, &lower));
        }
    }
    y
}

pub fn perturb_td(x: &CocycleTD, s: &mut Sampler) -> CocycleTD {
    let mut h = i_push_td(x);
    // never touch B so the result stays a TD cocycle
    loop {
        let y = perturb_tdhalf(&h, s);
        if y.b == h.b {
            h = y;
            break;
        }
    }
    strip_b_tdhalf(&h).expect("B untouched")
}

pub fn perturb_tb2r(x: &CocycleTB2R, s: &mut Sampler) -> CocycleTB2R {
    let mut h = i_push_tb2r(x);
    loop {
        let y = perturb_tb1(&h, s);
        if y.b == h.b {
            h = y;
            break;
        }
    }
    strip_b_tb1(&h).expect("B untouched")
}

/// Lifted constants of a circle cochain, in [0,1).
pub fn lift_circle(c: &Cochain<Circle>) -> Cochain<Rat> {
    c.map(|_, v| v.value().clone())
}

pub fn frac_rat(r: &Rat) -> Rat {
    frac(r)
}

pub fn int_as_rat(i: &crate::scalars::Int) -> Rat {
    rat_int(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn gen2() -> SkewIntMat {
        SkewIntMat::from_i64(&[&[0, -1], &[1, 0]]).unwrap()
    }

    fn c_b() -> CocycleTDhalf {
        let nv = Nerve::circle3();
        let mut x = CocycleTDhalf::zero(&nv, 2);
        x.b.set(&[0, 2], gen2());
        x
    }

    #[test]
    fn zero_and_c_b_validate() {
        for nv in [Nerve::circle3(), Nerve::cone(), Nerve::sphere()] {
            assert!(CocycleTDhalf::zero(&nv, 2).validate().is_ok());
            assert!(CocycleTB1::zero(&nv, 2).validate().is_ok());
        }
        assert!(c_b().validate().is_ok());
        let ll = leftleg_tdhalf(&c_b());
        assert_eq!(ll.b, c_b().b);
        assert!(ll.a.is_zero() && ll.m.is_zero() && ll.tau.is_zero());
    }

    #[test]
    fn t_perturbation_is_located() {
        let nv = Nerve::cone();
        let mut x = CocycleTDhalf::zero(&nv, 1);
        x.t.set(&[0, 1, 2], Circle::from_frac(1, 2));
        let err = x.validate().unwrap_err();
        let f = err.failure().unwrap();
        assert_eq!(f.condition, Condition::TCocycle);
        assert_eq!(f.simplex, vec![0, 1, 2, 3]);
    }

    #[test]
    fn left_tau_sample() {
        let nv = Nerve::full(3);
        let a = Cochain::from_fn(&nv, 1, |s| match s {
            [0, 2] => RatVec::from_fracs(&[(1, 2)]),
            [0, 1] => RatVec::from_fracs(&[(1, 3)]),
            _ => RatVec::zeros(1),
        });
        let a_hat = Cochain::from_fn(&nv, 1, |s| if s == [1, 2] { RatVec::from_fracs(&[(3, 5)]) } else { RatVec::zeros(1) });
        let m_hat = Cochain::constant(&nv, 2, IntVec::from_i64(&[2]));
        let t = Cochain::constant(&nv, 2, Circle::from_frac(1, 4));
        let tau = left_tau(&a, &a_hat, &m_hat, &t);
        assert_eq!(tau.get(&[0, 1, 2]), &AffChar::new(Circle::from_frac(1, 20), IntVec::from_i64(&[2])));
    }

    #[test]
    fn gauge_application_validates_and_verifies() {
        let mut s = Sampler::new(11);
        for n in 1..=3 {
            let nv = Nerve::cone();
            let x = random_tdhalf(&nv, n, &mut s);
            assert!(x.validate().is_ok(), "{:?}", x.validate());
            let g = random_gauge_tdhalf(&nv, n, &mut s, true);
            let y = apply_gauge_tdhalf(&x, &g);
            assert!(y.validate().is_ok(), "{:?}", y.validate());
            assert!(verify_gauge_tdhalf(&x, &y, &g).is_ok());
            let xb = random_tb1(&nv, n, &mut s);
            assert!(xb.validate().is_ok(), "{:?}", xb.validate());
            let gb = random_gauge_tb1(&nv, n, &mut s, true);
            let yb = apply_gauge_tb1(&xb, &gb);
            assert!(yb.validate().is_ok(), "{:?}", yb.validate());
            assert!(verify_gauge_tb1(&xb, &yb, &gb).is_ok());
        }
    }

    #[test]
    fn c_only_gauge_example() {
        let nv = Nerve::cone();
        let mut s = Sampler::new(4);
        let x = random_tdhalf(&nv, 2, &mut s);
        let c = Cochain::from_fn(&nv, 0, |_| s.skew(2));
        let g = GaugeTDhalf { c: c.clone(), ..GaugeTDhalf::zero(&nv, 2) };
        let y = apply_gauge_tdhalf(&x, &g);
        for e in nv.simplices(1) {
            let (i, j) = (e[0], e[1]);
            assert_eq!(y.b.get(e), &(&(x.b.get(e) + c.get(&[j])) - c.get(&[i])));
            assert_eq!(y.a_hat.get(e), &(&c.get(&[j]).mul_rat(x.a.get(e)) + x.a_hat.get(e)));
        }
        for t in nv.simplices(2) {
            let ck = c.get(&[t[2]]);
            let expect = x.t.get(t).value()
                - ck.low(&x.m.get(t).to_rat(), x.a.get(&[t[0], t[2]]))
                - ck.low(x.a.get(&[t[1], t[2]]), x.a.get(&[t[0], t[1]]));
            assert_eq!(y.t.get(t), &Circle::new(expect));
        }
        let _ = rat(0, 1);
    }

    fn locus(r: Result<(), CocycleError>) -> Option<(Condition, Vec<u64>)> {
        r.err().map(|e| {
            let f = e.failure().unwrap();
            (f.condition, f.simplex.clone())
        })
    }

    #[test]
    fn generic_and_specialised_validators_agree() {
        let mut s = Sampler::new(21);
        for nv in [Nerve::cone(), Nerve::full(5)] {
            for n in 1..=3 {
                for _ in 0..6 {
                    let x = random_tdhalf(&nv, n, &mut s);
                    assert!(generic_validate_tdhalf(&x).is_ok());
                    let y = perturb_tdhalf(&x, &mut s);
                    assert_eq!(locus(y.validate()), locus(generic_validate_tdhalf(&y)));
                    let xb = random_tb1(&nv, n, &mut s);
                    assert!(generic_validate_tb1(&xb).is_ok());
                    let yb = perturb_tb1(&xb, &mut s);
                    assert_eq!(locus(yb.validate()), locus(generic_validate_tb1(&yb)));
                    let xd = perturb_td(&random_td(&nv, n, &mut s), &mut s);
                    assert_eq!(locus(xd.validate()), locus(generic_validate_td(&xd)));
                    let xr = perturb_tb2r(&random_tb2r(&nv, n, &mut s), &mut s);
                    assert_eq!(locus(xr.validate()), locus(generic_validate_tb2r(&xr)));
                }
            }
        }
    }

    #[test]
    fn pushforwards_land_in_cocycles() {
        let mut s = Sampler::new(5);
        let nv = Nerve::full(5);
        for n in 1..=3 {
            let x = random_tdhalf(&nv, n, &mut s);
            let ll = leftleg_tdhalf(&x);
            assert!(ll.validate().is_ok(), "{:?}", ll.validate());
            assert_eq!(ll, leftleg_tdhalf_generic(&x));
            let d = random_td(&nv, n, &mut s);
            for y in [flip_td(&d), act_b_td(&d, &s.skew(n))] {
                assert!(y.validate().is_ok());
            }
            assert!(leftleg_td(&d).validate().is_ok());
            assert!(rightleg_td(&d).validate().is_ok());
            assert!(lele_td(&d).validate().is_ok());
            assert!(rele_td(&d).validate().is_ok());
            let (r, l) = (rightleg_td(&d), leftleg_td(&flip_td(&d)));
            assert_eq!((&r.a, &r.m), (&l.a, &l.m));
            let r = random_tb2r(&nv, n, &mut s);
            assert!(act_b_tb2r(&r, &s.skew(n)).validate().is_ok());
        }
    }

    #[test]
    fn act_b_is_gauge_equivalent_after_inclusion() {
        let mut s = Sampler::new(8);
        let nv = Nerve::cone();
        for n in 2..=3 {
            let x = random_td(&nv, n, &mut s);
            let b = s.skew(n);
            let g = GaugeTDhalf { c: Cochain::constant(&nv, 0, b.clone()), ..GaugeTDhalf::zero(&nv, n) };
            assert!(verify_gauge_tdhalf(&i_push_td(&x), &i_push_td(&act_b_td(&x, &b)), &g).is_ok());
        }
    }

    #[test]
    fn induced_leftleg_gauge_verifies() {
        let mut s = Sampler::new(31);
        let nv = Nerve::full(5);
        for n in 1..=3 {
            for _ in 0..4 {
                let x = random_tdhalf(&nv, n, &mut s);
                let h = random_gauge_tdhalf(&nv, n, &mut s, true);
                let y = apply_gauge_tdhalf(&x, &h);
                let k = leftleg_gauge(&x, &h);
                let r = verify_gauge_tb1(&leftleg_tdhalf(&x), &leftleg_tdhalf(&y), &k);
                assert!(r.is_ok(), "{:?}", r);
            }
        }
    }

    #[test]
    fn restricted_solver_recovers_a_gauge() {
        let mut s = Sampler::new(3);
        let nv = Nerve::cone();
        for n in 1..=3 {
            let x = random_tdhalf(&nv, n, &mut s);
            let h = random_gauge_tdhalf(&nv, n, &mut s, true);
            let y = apply_gauge_tdhalf(&x, &h);
            let g = solve_gauge_restricted_tdhalf(&x, &y, &h.c, &h.z, &h.z_hat).unwrap();
            assert!(verify_gauge_tdhalf(&x, &y, &g).is_ok());
            let xb = random_tb1(&nv, n, &mut s);
            let hb = random_gauge_tb1(&nv, n, &mut s, true);
            let yb = apply_gauge_tb1(&xb, &hb);
            let gb = solve_gauge_restricted_tb1(&xb, &yb, &hb.c, &hb.z).unwrap();
            assert!(verify_gauge_tb1(&xb, &yb, &gb).is_ok());
        }
        // different B-classes with C = 0
        let x = c_b();
        let y = CocycleTDhalf::zero(&x.nerve, 2);
        let zc = Cochain::constant(&x.nerve, 0, SkewIntMat::zero(2));
        let z = Cochain::constant(&x.nerve, 1, IntVec::zeros(2));
        let r = solve_gauge_restricted_tdhalf(&x, &y, &zc, &z, &z);
        assert!(matches!(r, Err(CocycleError::Precondition(_))));
    }

    #[test]
    fn perturbed_gauge_fails_at_t() {
        let mut s = Sampler::new(9);
        let nv = Nerve::cone();
        let x = random_tdhalf(&nv, 2, &mut s);
        let mut g = random_gauge_tdhalf(&nv, 2, &mut s, true);
        let y = apply_gauge_tdhalf(&x, &g);
        let e = g.e.get(&[1, 2]) + &Circle::from_frac(1, 3);
        g.e.set(&[1, 2], e);
        let f = verify_gauge_tdhalf(&x, &y, &g).unwrap_err();
        assert_eq!(f.failure().unwrap().condition, Condition::TGauge);
    }

    #[test]
    fn polarization() {
        let x = c_b();
        let o = find_polarization(&x).unwrap_err();
        assert_eq!(o.degree, 1);
        let mut s = Sampler::new(2);
        let nv = Nerve::cone();
        let y = random_tdhalf(&nv, 2, &mut s);
        let c = find_polarization(&y).unwrap();
        let d = polarize(&y, &c).unwrap();
        assert!(d.validate().is_ok());
        let bad = Cochain::constant(&nv, 0, SkewIntMat::zero(2));
        if !y.b.is_zero() {
            assert!(matches!(polarize(&y, &bad), Err(CocycleError::Precondition(_))));
        }
    }

    #[test]
    fn fibration_and_trivial_bundles() {
        let mut s = Sampler::new(6);
        let nv = Nerve::cone();
        let x = random_td(&nv, 2, &mut s);
        assert!(p_push_tdhalf(&i_push_td(&x)).is_zero());
        let so = p_push_tdhalf(&c_b());
        assert!(so.validate().is_ok() && !so.is_zero());
        let nv = Nerve::circle3();
        let so0 = CocycleSO { n: 1, nerve: nv.clone(), b: Cochain::constant(&nv, 1, SkewIntMat::zero(1)) };
        let m = Cochain::constant(&nv, 2, IntVec::zeros(1));
        let t = Cochain::constant(&nv, 2, Circle::from_frac(1, 7));
        let y = i_star(&so0, &m, &t).unwrap();
        assert_eq!(t_star_tb1(&y), m);
        let b = Cochain::constant(&nv, 1, RatVec::zeros(1));
        let w = i_tilde_star(&so0, &b, &m, &t).unwrap();
        assert!(t_star_tdhalf(&w).is_zero());
    }
}
