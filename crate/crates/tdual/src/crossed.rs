//! Crossed modules, crossed intertwiners, the so(n,ℤ) actions and the
//! semi-direct products they generate.
//!
//! All carriers are abelian, so the group laws are written additively.

use std::fmt::Debug;

use thiserror::Error;

use crate::sample::Sampler;
use crate::scalars::{AffChar, Circle, IntVec, Rat, RatVec, SkewIntMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
}

pub trait CrossedModule: Clone + Debug {
    type Obj: Clone + PartialEq + Debug;
    type Arr: Clone + PartialEq + Debug;

    fn name(&self) -> &'static str;
    fn n(&self) -> usize;
    fn obj_zero(&self) -> Self::Obj;
    fn obj_add(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn obj_neg(&self, a: &Self::Obj) -> Self::Obj;
    fn arr_zero(&self) -> Self::Arr;
    fn arr_add(&self, a: &Self::Arr, b: &Self::Arr) -> Self::Arr;
    fn arr_neg(&self, a: &Self::Arr) -> Self::Arr;
    /// The boundary t: H → G.
    fn t(&self, h: &Self::Arr) -> Self::Obj;
    /// The action α of G on H.
    fn act(&self, g: &Self::Obj, h: &Self::Arr) -> Self::Arr;
    fn sample_obj(&self, s: &mut Sampler) -> Self::Obj;
    fn sample_arr(&self, s: &mut Sampler) -> Self::Arr;

    fn obj_sub(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        self.obj_add(a, &self.obj_neg(b))
    }
    fn arr_sub(&self, a: &Self::Arr, b: &Self::Arr) -> Self::Arr {
        self.arr_add(a, &self.arr_neg(b))
    }
    fn arr_sum(&self, items: &[Self::Arr]) -> Self::Arr {
        items.iter().fold(self.arr_zero(), |acc, x| self.arr_add(&acc, x))
    }
}

pub type Obj<M> = <M as CrossedModule>::Obj;
pub type Arr<M> = <M as CrossedModule>::Arr;

/// G = 𝕋ⁿ (entries kept in [0,1)), H = affine characters, t = 0, α = translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tb2 {
    pub n: usize,
}

impl CrossedModule for Tb2 {
    type Obj = RatVec;
    type Arr = AffChar;
    fn name(&self) -> &'static str {
        "TB2"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn obj_zero(&self) -> RatVec {
        RatVec::zeros(self.n)
    }
    fn obj_add(&self, a: &RatVec, b: &RatVec) -> RatVec {
        (a + b).frac()
    }
    fn obj_neg(&self, a: &RatVec) -> RatVec {
        (-a).frac()
    }
    fn arr_zero(&self) -> AffChar {
        AffChar::zero(self.n)
    }
    fn arr_add(&self, a: &AffChar, b: &AffChar) -> AffChar {
        a + b
    }
    fn arr_neg(&self, a: &AffChar) -> AffChar {
        -a
    }
    fn t(&self, _h: &AffChar) -> RatVec {
        RatVec::zeros(self.n)
    }
    fn act(&self, g: &RatVec, h: &AffChar) -> AffChar {
        h.translate(g)
    }
    fn sample_obj(&self, s: &mut Sampler) -> RatVec {
        s.ratvec(self.n).frac()
    }
    fn sample_arr(&self, s: &mut Sampler) -> AffChar {
        s.affchar(self.n)
    }
}

/// Arrow of the real-lifted torus 2-group: an affine character and a lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauM {
    pub tau: AffChar,
    pub m: IntVec,
}

impl TauM {
    pub fn zero(n: usize) -> Self {
        TauM { tau: AffChar::zero(n), m: IntVec::zeros(n) }
    }
}

/// G = ℝⁿ, H = AffChar × ℤⁿ, t(τ,m) = m, α(g,(τ,m)) = (l_g τ, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tb2R {
    pub n: usize,
}

impl CrossedModule for Tb2R {
    type Obj = RatVec;
    type Arr = TauM;
    fn name(&self) -> &'static str {
        "TB2R"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn obj_zero(&self) -> RatVec {
        RatVec::zeros(self.n)
    }
    fn obj_add(&self, a: &RatVec, b: &RatVec) -> RatVec {
        a + b
    }
    fn obj_neg(&self, a: &RatVec) -> RatVec {
        -a
    }
    fn arr_zero(&self) -> TauM {
        TauM::zero(self.n)
    }
    fn arr_add(&self, a: &TauM, b: &TauM) -> TauM {
        TauM { tau: &a.tau + &b.tau, m: &a.m + &b.m }
    }
    fn arr_neg(&self, a: &TauM) -> TauM {
        TauM { tau: -&a.tau, m: -&a.m }
    }
    fn t(&self, h: &TauM) -> RatVec {
        h.m.to_rat()
    }
    fn act(&self, g: &RatVec, h: &TauM) -> TauM {
        TauM { tau: h.tau.translate(g), m: h.m.clone() }
    }
    fn sample_obj(&self, s: &mut Sampler) -> RatVec {
        s.ratvec(self.n)
    }
    fn sample_arr(&self, s: &mut Sampler) -> TauM {
        TauM { tau: s.affchar(self.n), m: s.intvec(self.n) }
    }
}

/// Arrow of the categorical torus: a lattice vector in ℤ^{2n} and a circle value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TdArr {
    pub z: IntVec,
    pub t: Circle,
}

impl TdArr {
    pub fn zero(n: usize) -> Self {
        TdArr { z: IntVec::zeros(2 * n), t: Circle::zero() }
    }
    pub fn central(n: usize, t: Circle) -> Self {
        TdArr { z: IntVec::zeros(2 * n), t }
    }
}

/// [x,y] = Σ x_{n+i} y_i, without length checks.
pub fn td_pairing(x: &RatVec, y: &RatVec) -> Rat {
    crate::scalars::pairing(x, y).expect("even-length vectors of equal size")
}

/// G = ℝ^{2n}, H = ℤ^{2n} × U(1), t(z,t) = z, α(x,(z,t)) = (z, t − [x,z]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Td {
    pub n: usize,
}

impl CrossedModule for Td {
    type Obj = RatVec;
    type Arr = TdArr;
    fn name(&self) -> &'static str {
        "TD"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn obj_zero(&self) -> RatVec {
        RatVec::zeros(2 * self.n)
    }
    fn obj_add(&self, a: &RatVec, b: &RatVec) -> RatVec {
        a + b
    }
    fn obj_neg(&self, a: &RatVec) -> RatVec {
        -a
    }
    fn arr_zero(&self) -> TdArr {
        TdArr::zero(self.n)
    }
    fn arr_add(&self, a: &TdArr, b: &TdArr) -> TdArr {
        TdArr { z: &a.z + &b.z, t: &a.t + &b.t }
    }
    fn arr_neg(&self, a: &TdArr) -> TdArr {
        TdArr { z: -&a.z, t: -a.t.clone() }
    }
    fn t(&self, h: &TdArr) -> RatVec {
        h.z.to_rat()
    }
    fn act(&self, g: &RatVec, h: &TdArr) -> TdArr {
        TdArr { z: h.z.clone(), t: Circle::new(h.t.value() - td_pairing(g, &h.z.to_rat())) }
    }
    fn sample_obj(&self, s: &mut Sampler) -> RatVec {
        s.ratvec(2 * self.n)
    }
    fn sample_arr(&self, s: &mut Sampler) -> TdArr {
        TdArr { z: s.intvec(2 * self.n), t: s.circle() }
    }
}

/// A crossed intertwiner (φ, f, η) between crossed modules.
pub trait Intertwiner: Clone + Debug {
    type Dom: CrossedModule;
    type Cod: CrossedModule;
    fn dom(&self) -> &Self::Dom;
    fn cod(&self) -> &Self::Cod;
    fn phi(&self, g: &Obj<Self::Dom>) -> Obj<Self::Cod>;
    fn f(&self, h: &Arr<Self::Dom>) -> Arr<Self::Cod>;
    /// Valued in the kernel of the codomain boundary.
    fn eta(&self, g1: &Obj<Self::Dom>, g2: &Obj<Self::Dom>) -> Arr<Self::Cod>;

    /// The functor on arrows (h, g): (−η(t h, g) + f h, φ g).
    fn functor(&self, h: &Arr<Self::Dom>, g: &Obj<Self::Dom>) -> (Arr<Self::Cod>, Obj<Self::Cod>) {
        let c = self.cod();
        let th = self.dom().t(h);
        (c.arr_add(&c.arr_neg(&self.eta(&th, g)), &self.f(h)), self.phi(g))
    }
}

#[derive(Debug, Clone)]
pub struct Identity<M: CrossedModule> {
    pub m: M,
}

impl<M: CrossedModule> Intertwiner for Identity<M> {
    type Dom = M;
    type Cod = M;
    fn dom(&self) -> &M {
        &self.m
    }
    fn cod(&self) -> &M {
        &self.m
    }
    fn phi(&self, g: &M::Obj) -> M::Obj {
        g.clone()
    }
    fn f(&self, h: &M::Arr) -> M::Arr {
        h.clone()
    }
    fn eta(&self, _: &M::Obj, _: &M::Obj) -> M::Arr {
        self.m.arr_zero()
    }
}

/// The swap of the two torus factors on TD; not strictly involutive.
#[derive(Debug, Clone)]
pub struct Flip {
    pub td: Td,
}

impl Flip {
    pub fn new(n: usize) -> Self {
        Flip { td: Td { n } }
    }
}

fn swap_halves(v: &RatVec) -> RatVec {
    v.second_half().concat(&v.first_half())
}

impl Intertwiner for Flip {
    type Dom = Td;
    type Cod = Td;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Td {
        &self.td
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        swap_halves(g)
    }
    fn f(&self, h: &TdArr) -> TdArr {
        TdArr { z: h.z.second_half().concat(&h.z.first_half()), t: h.t.clone() }
    }
    fn eta(&self, g1: &RatVec, g2: &RatVec) -> TdArr {
        TdArr::central(self.td.n, Circle::new(td_pairing(g1, g2)))
    }
}

/// Left leg TD → TB2R: φ = a, f(m⊕m̂, t) = (τ_{t,m̂}, m), η(x,x′) = â·a′.
#[derive(Debug, Clone)]
pub struct LeleR {
    pub td: Td,
    pub tb: Tb2R,
}

impl LeleR {
    pub fn new(n: usize) -> Self {
        LeleR { td: Td { n }, tb: Tb2R { n } }
    }
}

impl Intertwiner for LeleR {
    type Dom = Td;
    type Cod = Tb2R;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Tb2R {
        &self.tb
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        g.first_half()
    }
    fn f(&self, h: &TdArr) -> TauM {
        TauM { tau: AffChar::new(h.t.clone(), h.z.second_half()), m: h.z.first_half() }
    }
    fn eta(&self, g1: &RatVec, g2: &RatVec) -> TauM {
        TauM {
            tau: AffChar::constant(Circle::new(td_pairing(g1, g2)), self.tb.n),
            m: IntVec::zeros(self.tb.n),
        }
    }
}

/// Right leg TD → TB2R, strict: φ = â, f(m⊕m̂, t) = (τ_{t,m}, m̂).
#[derive(Debug, Clone)]
pub struct ReleR {
    pub td: Td,
    pub tb: Tb2R,
}

impl ReleR {
    pub fn new(n: usize) -> Self {
        ReleR { td: Td { n }, tb: Tb2R { n } }
    }
}

impl Intertwiner for ReleR {
    type Dom = Td;
    type Cod = Tb2R;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Tb2R {
        &self.tb
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        g.second_half()
    }
    fn f(&self, h: &TdArr) -> TauM {
        TauM { tau: AffChar::new(h.t.clone(), h.z.first_half()), m: h.z.second_half() }
    }
    fn eta(&self, _: &RatVec, _: &RatVec) -> TauM {
        TauM::zero(self.tb.n)
    }
}

/// Left leg TD → TB2 (torus-valued objects).
#[derive(Debug, Clone)]
pub struct Lele {
    pub td: Td,
    pub tb: Tb2,
}

impl Lele {
    pub fn new(n: usize) -> Self {
        Lele { td: Td { n }, tb: Tb2 { n } }
    }
}

impl Intertwiner for Lele {
    type Dom = Td;
    type Cod = Tb2;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Tb2 {
        &self.tb
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        g.first_half().frac()
    }
    fn f(&self, h: &TdArr) -> AffChar {
        AffChar::new(h.t.clone(), h.z.second_half())
    }
    fn eta(&self, g1: &RatVec, g2: &RatVec) -> AffChar {
        AffChar::constant(Circle::new(td_pairing(g1, g2)), self.tb.n)
    }
}

/// Right leg TD → TB2, strict.
#[derive(Debug, Clone)]
pub struct Rele {
    pub td: Td,
    pub tb: Tb2,
}

impl Rele {
    pub fn new(n: usize) -> Self {
        Rele { td: Td { n }, tb: Tb2 { n } }
    }
}

impl Intertwiner for Rele {
    type Dom = Td;
    type Cod = Tb2;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Tb2 {
        &self.tb
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        g.second_half().frac()
    }
    fn f(&self, h: &TdArr) -> AffChar {
        AffChar::new(h.t.clone(), h.z.first_half())
    }
    fn eta(&self, _: &RatVec, _: &RatVec) -> AffChar {
        AffChar::zero(self.tb.n)
    }
}

/// The so(n,ℤ) action on TB2R: (id, (τ,m) ↦ (τ − ⟨m|B, m), η(a,a′) = ⟨a′|B|a⟩_low).
#[derive(Debug, Clone)]
pub struct FB {
    pub b: SkewIntMat,
    pub tb: Tb2R,
}

impl FB {
    pub fn new(b: SkewIntMat) -> Self {
        let n = b.n();
        FB { b, tb: Tb2R { n } }
    }
}

impl Intertwiner for FB {
    type Dom = Tb2R;
    type Cod = Tb2R;
    fn dom(&self) -> &Tb2R {
        &self.tb
    }
    fn cod(&self) -> &Tb2R {
        &self.tb
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        g.clone()
    }
    fn f(&self, h: &TauM) -> TauM {
        TauM { tau: &h.tau - &AffChar::of_bra(&h.m, &self.b), m: h.m.clone() }
    }
    fn eta(&self, g1: &RatVec, g2: &RatVec) -> TauM {
        TauM { tau: AffChar::constant(Circle::new(self.b.low(g2, g1)), self.tb.n), m: IntVec::zeros(self.tb.n) }
    }
}

/// The so(n,ℤ) action on TD: a⊕â ↦ a⊕(Ba+â), (m⊕m̂,t) ↦ (m⊕(Bm+m̂),t), η = ⟨a|B|a′⟩_low.
#[derive(Debug, Clone)]
pub struct FeB {
    pub b: SkewIntMat,
    pub td: Td,
}

impl FeB {
    pub fn new(b: SkewIntMat) -> Self {
        let n = b.n();
        FeB { b, td: Td { n } }
    }
}

impl Intertwiner for FeB {
    type Dom = Td;
    type Cod = Td;
    fn dom(&self) -> &Td {
        &self.td
    }
    fn cod(&self) -> &Td {
        &self.td
    }
    fn phi(&self, g: &RatVec) -> RatVec {
        let a = g.first_half();
        let ah = &self.b.mul_rat(&a) + &g.second_half();
        a.concat(&ah)
    }
    fn f(&self, h: &TdArr) -> TdArr {
        let m = h.z.first_half();
        let mh = &self.b.mul_int(&m) + &h.z.second_half();
        TdArr { z: m.concat(&mh), t: h.t.clone() }
    }
    fn eta(&self, g1: &RatVec, g2: &RatVec) -> TdArr {
        TdArr::central(self.td.n, Circle::new(self.b.low(&g1.first_half(), &g2.first_half())))
    }
}

/// F2 ∘ F1 = (φ₂∘φ₁, f₂∘f₁, η₂∘(φ₁×φ₁) + f₂∘η₁).
#[derive(Debug, Clone)]
pub struct Composite<F2, F1> {
    pub outer: F2,
    pub inner: F1,
}

impl<F1: Intertwiner, F2: Intertwiner<Dom = F1::Cod>> Intertwiner for Composite<F2, F1> {
    type Dom = F1::Dom;
    type Cod = F2::Cod;
    fn dom(&self) -> &F1::Dom {
        self.inner.dom()
    }
    fn cod(&self) -> &F2::Cod {
        self.outer.cod()
    }
    fn phi(&self, g: &Obj<F1::Dom>) -> Obj<F2::Cod> {
        self.outer.phi(&self.inner.phi(g))
    }
    fn f(&self, h: &Arr<F1::Dom>) -> Arr<F2::Cod> {
        self.outer.f(&self.inner.f(h))
    }
    fn eta(&self, g1: &Obj<F1::Dom>, g2: &Obj<F1::Dom>) -> Arr<F2::Cod> {
        let a = self.outer.eta(&self.inner.phi(g1), &self.inner.phi(g2));
        let b = self.outer.f(&self.inner.eta(g1, g2));
        self.cod().arr_add(&a, &b)
    }
}

pub fn ci_compose<F1: Intertwiner, F2: Intertwiner<Dom = F1::Cod>>(
    outer: &F2,
    inner: &F1,
) -> Result<Composite<F2, F1>, CrossedError> {
    if outer.dom().n() != inner.cod().n() {
        return Err(CrossedError::DimensionMismatch(outer.dom().n(), inner.cod().n()));
    }
    Ok(Composite { outer: outer.clone(), inner: inner.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub sample: usize,
    pub detail: String,
}

/// Outcome of a sampled law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violation: Option<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
    fn run(samples: usize, mut step: impl FnMut(usize) -> Option<(&'static str, String)>) -> Report {
        for i in 0..samples {
            if let Some((law, detail)) = step(i) {
                return Report { checked: i + 1, violation: Some(Violation { law, sample: i, detail }) };
            }
        }
        Report { checked: samples, violation: None }
    }
}

fn differ<T: PartialEq + Debug>(law: &'static str, lhs: T, rhs: T) -> Option<(&'static str, String)> {
    if lhs == rhs {
        None
    } else {
        Some((law, format!("{:?} != {:?}", lhs, rhs)))
    }
}

/// Samples the four intertwiner axioms and the kernel condition on η.
pub fn ci_check_axioms<F: Intertwiner>(fi: &F, samples: usize, s: &mut Sampler) -> Report {
    let d = fi.dom();
    let c = fi.cod();
    Report::run(samples, |_| {
        let g = d.sample_obj(s);
        let g1 = d.sample_obj(s);
        let g2 = d.sample_obj(s);
        let h = d.sample_arr(s);
        let h1 = d.sample_arr(s);
        // boundaries: φ(t h) = t′(f h)
        if let Some(v) = differ("boundary-compat", fi.phi(&d.t(&h)), c.t(&fi.f(&h))) {
            return Some(v);
        }
        // η on boundaries: η(t h, t h′) = 0
        if let Some(v) = differ("eta-on-boundaries", fi.eta(&d.t(&h), &d.t(&h1)), c.arr_zero()) {
            return Some(v);
        }
        // action: η(g, t h − g) + f(α(g,h)) = α′(φg, η(t h − g, g)) + α′(φg, f h)
        let th_g = d.obj_sub(&d.t(&h), &g);
        let pg = fi.phi(&g);
        let lhs = c.arr_add(&fi.eta(&g, &th_g), &fi.f(&d.act(&g, &h)));
        let rhs = c.arr_add(&c.act(&pg, &fi.eta(&th_g, &g)), &c.act(&pg, &fi.f(&h)));
        if let Some(v) = differ("action-compat", lhs, rhs) {
            return Some(v);
        }
        // η cocycle: η(g,g′) + η(g+g′,g″) = α′(φg, η(g′,g″)) + η(g, g′+g″)
        let lhs = c.arr_add(&fi.eta(&g, &g1), &fi.eta(&d.obj_add(&g, &g1), &g2));
        let rhs = c.arr_add(&c.act(&pg, &fi.eta(&g1, &g2)), &fi.eta(&g, &d.obj_add(&g1, &g2)));
        if let Some(v) = differ("eta-cocycle", lhs, rhs) {
            return Some(v);
        }
        differ("eta-kernel", c.t(&fi.eta(&g, &g1)), c.obj_zero())
    })
}

/// Componentwise agreement of two intertwiners with equal domain and codomain.
pub fn ci_agree<F: Intertwiner, G: Intertwiner<Dom = F::Dom, Cod = F::Cod>>(
    a: &F,
    b: &G,
    samples: usize,
    s: &mut Sampler,
) -> Report {
    let d = a.dom();
    Report::run(samples, |_| {
        let g1 = d.sample_obj(s);
        let g2 = d.sample_obj(s);
        let h = d.sample_arr(s);
        differ("phi", a.phi(&g1), b.phi(&g1))
            .or_else(|| differ("f", a.f(&h), b.f(&h)))
            .or_else(|| differ("eta", a.eta(&g1, &g2), b.eta(&g1, &g2)))
    })
}

/// An action of so(n,ℤ) on a crossed module by intertwiners.
pub trait SoAction: Clone + Debug {
    type M: CrossedModule;
    type I: Intertwiner<Dom = Self::M, Cod = Self::M>;
    fn base(&self) -> &Self::M;
    /// Size of the matrices acting.
    fn rank(&self) -> usize;
    fn at(&self, u: &SkewIntMat) -> Self::I;
}

#[derive(Debug, Clone)]
pub struct Tb2RAction {
    pub tb: Tb2R,
}

impl SoAction for Tb2RAction {
    type M = Tb2R;
    type I = FB;
    fn base(&self) -> &Tb2R {
        &self.tb
    }
    fn rank(&self) -> usize {
        self.tb.n
    }
    fn at(&self, u: &SkewIntMat) -> FB {
        FB::new(u.clone())
    }
}

#[derive(Debug, Clone)]
pub struct TdAction {
    pub td: Td,
}

impl SoAction for TdAction {
    type M = Td;
    type I = FeB;
    fn base(&self) -> &Td {
        &self.td
    }
    fn rank(&self) -> usize {
        self.td.n
    }
    fn at(&self, u: &SkewIntMat) -> FeB {
        FeB::new(u.clone())
    }
}

/// F_{u₂}∘F_{u₁} agrees with F_{u₁+u₂} on samples.
pub fn check_action_hom<A: SoAction>(act: &A, samples: usize, s: &mut Sampler) -> Report {
    let n = act.rank();
    let mut out = Report { checked: 0, violation: None };
    for i in 0..samples {
        let u1 = s.skew(n);
        let u2 = s.skew(n);
        let comp = Composite { outer: act.at(&u2), inner: act.at(&u1) };
        let direct = act.at(&(&u1 + &u2));
        let r = ci_agree(&comp, &direct, 1, s);
        out.checked = i + 1;
        if let Some(mut v) = r.violation {
            v.sample = i;
            out.violation = Some(v);
            break;
        }
    }
    out
}

/// The three equivariance identities for F against actions on its domain and codomain.
pub fn ci_check_equivariance<F, AD, AC>(fi: &F, act_dom: &AD, act_cod: &AC, samples: usize, s: &mut Sampler) -> Report
where
    F: Intertwiner,
    AD: SoAction<M = F::Dom>,
    AC: SoAction<M = F::Cod>,
{
    let d = fi.dom();
    let c = fi.cod();
    let n = act_dom.rank();
    Report::run(samples, |_| {
        let u = s.skew(n);
        let fu = act_dom.at(&u);
        let fu_c = act_cod.at(&u);
        let g1 = d.sample_obj(s);
        let g2 = d.sample_obj(s);
        let h = d.sample_arr(s);
        differ("equivariance-phi", fu_c.phi(&fi.phi(&g1)), fi.phi(&fu.phi(&g1)))
            .or_else(|| differ("equivariance-f", fu_c.f(&fi.f(&h)), fi.f(&fu.f(&h))))
            .or_else(|| {
                let lhs = c.arr_add(&fu_c.eta(&fi.phi(&g1), &fi.phi(&g2)), &fu_c.f(&fi.eta(&g1, &g2)));
                let rhs = c.arr_add(&fi.eta(&fu.phi(&g1), &fu.phi(&g2)), &fi.f(&fu.eta(&g1, &g2)));
                differ("equivariance-eta", lhs, rhs)
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdObj<G> {
    pub g: G,
    pub u: SkewIntMat,
}

/// Arrow (h, g, u) with source (g, u) and target (t h + g, u).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdMor<G, H> {
    pub h: H,
    pub g: G,
    pub u: SkewIntMat,
}

pub type SdO<A> = SdObj<Obj<<A as SoAction>::M>>;
pub type SdM<A> = SdMor<Obj<<A as SoAction>::M>, Arr<<A as SoAction>::M>>;

/// The semi-strict 2-group Γ ⋉ so(n,ℤ) of an action.
#[derive(Debug, Clone)]
pub struct SemiDirect<A: SoAction> {
    pub action: A,
}

impl<A: SoAction> SemiDirect<A> {
    pub fn new(action: A) -> Self {
        SemiDirect { action }
    }
    pub fn base(&self) -> &A::M {
        self.action.base()
    }
    pub fn n(&self) -> usize {
        self.action.rank()
    }
    fn check(&self, u: &SkewIntMat) -> Result<(), CrossedError> {
        if u.n() == self.n() {
            Ok(())
        } else {
            Err(CrossedError::DimensionMismatch(u.n(), self.n()))
        }
    }
    pub fn unit(&self) -> SdO<A> {
        SdObj { g: self.base().obj_zero(), u: SkewIntMat::zero(self.n()) }
    }
    /// (g₂,u₂)·(g₁,u₁) = (g₂ + φ_{u₂} g₁, u₂+u₁).
    pub fn mult_obj(&self, x2: &SdO<A>, x1: &SdO<A>) -> Result<SdO<A>, CrossedError> {
        self.check(&x2.u)?;
        self.check(&x1.u)?;
        let b = self.base();
        Ok(SdObj { g: b.obj_add(&x2.g, &self.action.at(&x2.u).phi(&x1.g)), u: &x2.u + &x1.u })
    }
    /// (γ₂,u₂)·(γ₁,u₁) = (γ₂·F_{u₂}(γ₁), u₂+u₁) with the crossed-module groupoid product.
    pub fn mult_mor(&self, m2: &SdM<A>, m1: &SdM<A>) -> Result<SdM<A>, CrossedError> {
        self.check(&m2.u)?;
        self.check(&m1.u)?;
        let b = self.base();
        let (h1, g1) = self.action.at(&m2.u).functor(&m1.h, &m1.g);
        Ok(SdMor { h: b.arr_add(&m2.h, &b.act(&m2.g, &h1)), g: b.obj_add(&m2.g, &g1), u: &m2.u + &m1.u })
    }
    pub fn id(&self, x: &SdO<A>) -> SdM<A> {
        SdMor { h: self.base().arr_zero(), g: x.g.clone(), u: x.u.clone() }
    }
    pub fn source(&self, m: &SdM<A>) -> SdO<A> {
        SdObj { g: m.g.clone(), u: m.u.clone() }
    }
    pub fn target(&self, m: &SdM<A>) -> SdO<A> {
        let b = self.base();
        SdObj { g: b.obj_add(&b.t(&m.h), &m.g), u: m.u.clone() }
    }
    /// m2 ∘ m1, defined when target(m1) = source(m2).
    pub fn compose(&self, m2: &SdM<A>, m1: &SdM<A>) -> Option<SdM<A>> {
        if self.target(m1) != self.source(m2) {
            return None;
        }
        Some(SdMor { h: self.base().arr_add(&m1.h, &m2.h), g: m1.g.clone(), u: m1.u.clone() })
    }
    /// λ(x₃,x₂,x₁) = id_{g₃}·χ_{u₃}(g₂, φ_{u₂} g₁)⁻¹ : (x₃x₂)x₁ → x₃(x₂x₁), an endomorphism.
    pub fn associator(&self, x3: &SdO<A>, x2: &SdO<A>, x1: &SdO<A>) -> Result<SdM<A>, CrossedError> {
        let b = self.base();
        let inner = self.action.at(&x2.u).phi(&x1.g);
        let eta = self.action.at(&x3.u).eta(&x2.g, &inner);
        let src = self.mult_obj(x3, &self.mult_obj(x2, x1)?)?;
        Ok(SdMor { h: b.act(&x3.g, &b.arr_neg(&eta)), g: src.g, u: src.u })
    }
    pub fn sample_obj(&self, s: &mut Sampler) -> SdO<A> {
        SdObj { g: self.base().sample_obj(s), u: s.skew(self.n()) }
    }
    pub fn sample_mor(&self, s: &mut Sampler) -> SdM<A> {
        SdMor { h: self.base().sample_arr(s), g: self.base().sample_obj(s), u: s.skew(self.n()) }
    }
}

/// λ(t₃,t₂,t₁)∘((γ₃·γ₂)·γ₁) = (γ₃·(γ₂·γ₁))∘λ(s₃,s₂,s₁) on sampled arrows.
pub fn check_naturality<A: SoAction>(sd: &SemiDirect<A>, samples: usize, s: &mut Sampler) -> Report {
    Report::run(samples, |_| {
        let (m3, m2, m1) = (sd.sample_mor(s), sd.sample_mor(s), sd.sample_mor(s));
        let right_assoc = sd.mult_mor(&m3, &sd.mult_mor(&m2, &m1).ok()?).ok()?;
        let left_assoc = sd.mult_mor(&sd.mult_mor(&m3, &m2).ok()?, &m1).ok()?;
        let lam_t = sd.associator(&sd.target(&m3), &sd.target(&m2), &sd.target(&m1)).ok()?;
        let lam_s = sd.associator(&sd.source(&m3), &sd.source(&m2), &sd.source(&m1)).ok()?;
        match (sd.compose(&lam_t, &left_assoc), sd.compose(&right_assoc, &lam_s)) {
            (Some(l), Some(r)) => differ("naturality", l, r),
            _ => Some(("naturality", "composites not defined".to_string())),
        }
    })
}

/// Both associator paths ((ab)c)d → a(b(cd)) agree.
pub fn check_pentagon<A: SoAction>(sd: &SemiDirect<A>, samples: usize, s: &mut Sampler) -> Report {
    Report::run(samples, |_| {
        let (a, b, c, d) = (sd.sample_obj(s), sd.sample_obj(s), sd.sample_obj(s), sd.sample_obj(s));
        let ab = sd.mult_obj(&a, &b).ok()?;
        let bc = sd.mult_obj(&b, &c).ok()?;
        let cd = sd.mult_obj(&c, &d).ok()?;
        let p1 = sd.associator(&ab, &c, &d).ok()?;
        let p2 = sd.associator(&a, &b, &cd).ok()?;
        let q1 = sd.mult_mor(&sd.associator(&a, &b, &c).ok()?, &sd.id(&d)).ok()?;
        let q2 = sd.associator(&a, &bc, &d).ok()?;
        let q3 = sd.mult_mor(&sd.id(&a), &sd.associator(&b, &c, &d).ok()?).ok()?;
        let path1 = sd.compose(&p2, &p1);
        let path2 = sd.compose(&q2, &q1).and_then(|x| sd.compose(&q3, &x));
        match (path1, path2) {
            (Some(l), Some(r)) => differ("pentagon", l, r),
            _ => Some(("pentagon", "composites not defined".to_string())),
        }
    })
}

/// The semi-strict homomorphism of semi-direct products induced by an equivariant intertwiner.
#[derive(Debug, Clone)]
pub struct EquivariantLift<F, AD: SoAction, AC: SoAction> {
    pub f: F,
    pub dom: SemiDirect<AD>,
    pub cod: SemiDirect<AC>,
}

impl<F, AD, AC> EquivariantLift<F, AD, AC>
where
    F: Intertwiner,
    AD: SoAction<M = F::Dom>,
    AC: SoAction<M = F::Cod>,
{
    pub fn obj(&self, x: &SdO<AD>) -> SdO<AC> {
        SdObj { g: self.f.phi(&x.g), u: x.u.clone() }
    }
    pub fn mor(&self, m: &SdM<AD>) -> SdM<AC> {
        let (h, g) = self.f.functor(&m.h, &m.g);
        SdMor { h, g, u: m.u.clone() }
    }
    /// χ(x₂,x₁): F(x₂)·F(x₁) → F(x₂x₁), with arrow part η(g₂, φ_{u₂} g₁).
    pub fn multiplicator(&self, x2: &SdO<AD>, x1: &SdO<AD>) -> Result<SdM<AC>, CrossedError> {
        let inner = self.dom.action.at(&x2.u).phi(&x1.g);
        let prod = self.dom.mult_obj(x2, x1)?;
        Ok(SdMor { h: self.f.eta(&x2.g, &inner), g: self.f.phi(&prod.g), u: prod.u })
    }
}

/// λ′∘(χ·id)∘χ = (id·χ)∘χ∘F(λ) on sampled triples.
pub fn check_hom_coherence<F, AD, AC>(lift: &EquivariantLift<F, AD, AC>, samples: usize, s: &mut Sampler) -> Report
where
    F: Intertwiner,
    AD: SoAction<M = F::Dom>,
    AC: SoAction<M = F::Cod>,
{
    let (d, c) = (&lift.dom, &lift.cod);
    Report::run(samples, |_| {
        let (x3, x2, x1) = (d.sample_obj(s), d.sample_obj(s), d.sample_obj(s));
        let (f3, f2, f1) = (lift.obj(&x3), lift.obj(&x2), lift.obj(&x1));
        let x32 = d.mult_obj(&x3, &x2).ok()?;
        let x21 = d.mult_obj(&x2, &x1).ok()?;
        let lam_c = c.associator(&f3, &f2, &f1).ok()?;
        let l1 = c.mult_mor(&lift.multiplicator(&x3, &x2).ok()?, &c.id(&f1)).ok()?;
        let l2 = lift.multiplicator(&x32, &x1).ok()?;
        let r1 = c.mult_mor(&c.id(&f3), &lift.multiplicator(&x2, &x1).ok()?).ok()?;
        let r2 = lift.multiplicator(&x3, &x21).ok()?;
        let r3 = lift.mor(&d.associator(&x3, &x2, &x1).ok()?);
        let left = c.compose(&l1, &l2).and_then(|x| c.compose(&lam_c, &x));
        let right = c.compose(&r2, &r3).and_then(|x| c.compose(&r1, &x));
        match (left, right) {
            (Some(l), Some(r)) => differ("hom-coherence", l, r),
            _ => Some(("hom-coherence", "composites not defined".to_string())),
        }
    })
}

pub type Tb1Group = SemiDirect<Tb2RAction>;
pub type TdHalfGroup = SemiDirect<TdAction>;

pub fn tb1_group(n: usize) -> Tb1Group {
    SemiDirect::new(Tb2RAction { tb: Tb2R { n } })
}

pub fn tdhalf_group(n: usize) -> TdHalfGroup {
    SemiDirect::new(TdAction { td: Td { n } })
}

/// Symbolic (π₀, π₁) of the named 2-groups.
pub fn pi_invariants(name: &str) -> Result<(String, String), CrossedError> {
    let smooth = "C^inf(T^n,U(1)) [affine-character model]".to_string();
    match name {
        "TD" => Ok(("T^{2n}".into(), "U(1)".into())),
        "TDhalf" => Ok(("T^{2n} x| so(n,Z)".into(), "U(1)".into())),
        "TB1" => Ok(("T^n x so(n,Z)".into(), smooth)),
        "TB2R" | "TB2" => Ok(("T^n".into(), smooth)),
        other => Err(CrossedError::UnknownInstance(other.to_string())),
    }
}

/// Closed form of the TB1 arrow product, for cross-checking `mult_mor`.
pub fn tb1_mult_closed_form(m2: &SdM<Tb2RAction>, m1: &SdM<Tb2RAction>) -> SdM<Tb2RAction> {
    let (a2, a1) = (&m2.g, &m1.g);
    let b2 = &m2.u;
    let n = b2.n();
    let c = Circle::new(-b2.low(a1, &m1.h.m.to_rat()));
    let tau = &(&m2.h.tau + &AffChar::constant(c, n)) + &(&m1.h.tau - &AffChar::of_bra(&m1.h.m, b2)).translate(a2);
    SdMor { h: TauM { tau, m: &m2.h.m + &m1.h.m }, g: a2 + a1, u: b2 + &m1.u }
}
