//! Finite nerves of covers, cochains on them, coboundaries, exact
//! coboundary solvers over ℚ, ℤ and ℚ/ℤ, cohomology ranks and cup products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::scalars::{frac, int, rat_int, AffChar, Circle, Int, IntVec, Rat, RatVec, SkewIntMat};

/// Ascending tuple of vertex positions.
pub type Simplex = Vec<usize>;

pub const MAX_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("unknown vertex {0}")]
    UnknownVertex(u64),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(u64),
    #[error("simplex of size {0} outside 1..=4")]
    BadSimplexSize(usize),
    #[error("repeated vertex inside simplex")]
    RepeatedVertex,
    #[error("cup product degree {0} exceeds nerve dimension")]
    DegreeOverflow(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    ids: Vec<u64>,
    simplices: [Vec<Simplex>; MAX_DIM + 1],
    index: [HashMap<Simplex, usize>; MAX_DIM + 1],
}

impl Nerve {
    /// Builds a nerve from vertex identifiers and simplices given by identifiers;
    /// identifiers are sorted, simplices closed under faces.
    pub fn new(mut ids: Vec<u64>, simplices: &[Vec<u64>]) -> Result<Nerve, NerveError> {
        ids.sort_unstable();
        let mut pos = HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            if pos.insert(v, i).is_some() {
                return Err(NerveError::DuplicateVertex(v));
            }
        }
        let mut tuples = Vec::new();
        for s in simplices {
            if s.is_empty() || s.len() > MAX_DIM + 1 {
                return Err(NerveError::BadSimplexSize(s.len()));
            }
            let mut t = s
                .iter()
                .map(|v| pos.get(v).copied().ok_or(NerveError::UnknownVertex(*v)))
                .collect::<Result<Vec<_>, _>>()?;
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(NerveError::RepeatedVertex);
            }
            tuples.push(t);
        }
        Ok(Nerve::from_positions(ids, &tuples))
    }

    fn from_positions(ids: Vec<u64>, tuples: &[Simplex]) -> Nerve {
        let mut sets: [BTreeSet<Simplex>; MAX_DIM + 1] = Default::default();
        for i in 0..ids.len() {
            sets[0].insert(vec![i]);
        }
        for t in tuples {
            for sub in subsets(t) {
                sets[sub.len() - 1].insert(sub);
            }
        }
        let simplices: [Vec<Simplex>; MAX_DIM + 1] = sets.map(|s| s.into_iter().collect());
        let index = std::array::from_fn(|k| {
            simplices[k].iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
        });
        Nerve { ids, simplices, index }
    }

    /// Full simplex on `nv` vertices, truncated at dimension 3.
    pub fn full(nv: usize) -> Nerve {
        let all: Simplex = (0..nv).collect();
        let tuples: Vec<Simplex> = subsets(&all).into_iter().filter(|s| s.len() <= MAX_DIM + 1).collect();
        Nerve::from_positions((0..nv as u64).collect(), &tuples)
    }

    /// Three vertices and three edges, no triangle.
    pub fn circle3() -> Nerve {
        Nerve::from_positions(vec![0, 1, 2], &[vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    /// The full 3-simplex.
    pub fn cone() -> Nerve {
        Nerve::full(4)
    }

    /// Boundary of the tetrahedron.
    pub fn sphere() -> Nerve {
        Nerve::from_positions(
            vec![0, 1, 2, 3],
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
    }

    pub fn preset(name: &str) -> Option<Nerve> {
        match name {
            "circle3" => Some(Nerve::circle3()),
            "cone" => Some(Nerve::cone()),
            "sphere" => Some(Nerve::sphere()),
            _ => None,
        }
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }
    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }
    /// Simplices of dimension k (k+1 vertices); empty above dimension 3.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        if k > MAX_DIM {
            &[]
        } else {
            &self.simplices[k]
        }
    }
    pub fn dim(&self) -> usize {
        (0..=MAX_DIM).rev().find(|&k| !self.simplices[k].is_empty()).unwrap_or(0)
    }
    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && s.len() <= MAX_DIM + 1 && self.index[s.len() - 1].contains_key(s)
    }
    pub fn position(&self, k: usize, s: &[usize]) -> Option<usize> {
        if k > MAX_DIM {
            return None;
        }
        self.index[k].get(s).copied()
    }
    /// Maximal simplices as identifier tuples.
    pub fn maximal_id_simplices(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for k in 1..=MAX_DIM {
            for s in &self.simplices[k] {
                let covered = self.simplices(k + 1).iter().any(|t| is_face(s, t));
                if !covered {
                    out.push(s.iter().map(|&i| self.ids[i]).collect());
                }
            }
        }
        out
    }
    pub fn id_tuple(&self, s: &[usize]) -> Vec<u64> {
        s.iter().map(|&i| self.ids[i]).collect()
    }
    pub fn is_connected(&self) -> bool {
        cohomology_rank(self, 0, Ring::Q) <= 1
    }
}

fn is_face(s: &[usize], t: &[usize]) -> bool {
    s.iter().all(|x| t.contains(x))
}

fn subsets(t: &[usize]) -> Vec<Simplex> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << t.len()) {
        out.push(t.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
    }
    out
}

/// The r-th face of a simplex.
pub fn face(s: &[usize], r: usize) -> Simplex {
    s.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, &v)| v).collect()
}

/// Coefficient groups usable in cochains.
pub trait Abelian: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
}

macro_rules! abelian_ref_ops {
    ($t:ty, $zero:expr) => {
        impl Abelian for $t {
            fn zero_like(&self) -> Self {
                let f: fn(&$t) -> $t = $zero;
                f(self)
            }
            fn plus(&self, o: &Self) -> Self {
                self + o
            }
            fn negate(&self) -> Self {
                -self.clone()
            }
        }
    };
}

abelian_ref_ops!(Rat, |_| Rat::zero());
abelian_ref_ops!(Int, |_| Int::zero());
abelian_ref_ops!(Circle, |_| Circle::zero());
abelian_ref_ops!(IntVec, |v| IntVec::zeros(v.len()));
abelian_ref_ops!(RatVec, |v| RatVec::zeros(v.len()));
abelian_ref_ops!(SkewIntMat, |b| SkewIntMat::zero(b.n()));
abelian_ref_ops!(AffChar, |a| AffChar::zero(a.n()));

/// Degree-k data on the k-simplices of a nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<T> {
    degree: usize,
    values: BTreeMap<Simplex, T>,
}

impl<T: Clone> Cochain<T> {
    pub fn empty(degree: usize) -> Self {
        Cochain { degree, values: BTreeMap::new() }
    }
    pub fn from_fn(nerve: &Nerve, degree: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let values = nerve.simplices(degree).iter().map(|s| (s.clone(), f(s))).collect();
        Cochain { degree, values }
    }
    pub fn constant(nerve: &Nerve, degree: usize, v: T) -> Self {
        Cochain::from_fn(nerve, degree, |_| v.clone())
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    /// Value on a simplex; panics if the simplex is absent.
    pub fn get(&self, s: &[usize]) -> &T {
        self.values.get(s).unwrap_or_else(|| panic!("cochain has no value on {:?}", s))
    }
    pub fn try_get(&self, s: &[usize]) -> Option<&T> {
        self.values.get(s)
    }
    pub fn set(&mut self, s: &[usize], v: T) {
        self.values.insert(s.to_vec(), v);
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &T)> {
        self.values.iter()
    }
    pub fn map<U: Clone>(&self, mut f: impl FnMut(&[usize], &T) -> U) -> Cochain<U> {
        Cochain { degree: self.degree, values: self.values.iter().map(|(s, v)| (s.clone(), f(s, v))).collect() }
    }
    /// True when the cochain has exactly one value on every k-simplex.
    pub fn is_total_on(&self, nerve: &Nerve) -> bool {
        let ss = nerve.simplices(self.degree);
        ss.len() == self.values.len() && ss.iter().all(|s| self.values.contains_key(s))
    }
}

impl<T: Abelian> Cochain<T> {
    pub fn add(&self, o: &Self) -> Self {
        self.map(|s, v| v.plus(o.get(s)))
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.map(|s, v| v.minus(o.get(s)))
    }
    pub fn neg(&self) -> Self {
        self.map(|_, v| v.negate())
    }
    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| *v == v.zero_like())
    }
}

/// (δc)_{i₀…i_{k+1}} = Σ_r (−1)^r c(face_r).
pub fn coboundary<T: Abelian>(nerve: &Nerve, c: &Cochain<T>) -> Cochain<T> {
    let k = c.degree;
    let mut out = Cochain::empty(k + 1);
    for s in nerve.simplices(k + 1) {
        let mut acc: Option<T> = None;
        for r in 0..s.len() {
            let v = c.get(&face(s, r));
            let term = if r % 2 == 0 { v.clone() } else { v.negate() };
            acc = Some(match acc {
                None => term,
                Some(a) => a.plus(&term),
            });
        }
        out.set(s, acc.expect("simplex has faces"));
    }
    out
}

/// Matrix of δ: C^k → C^{k+1}; rows (k+1)-simplices, columns k-simplices.
pub fn coboundary_matrix(nerve: &Nerve, k: usize) -> Vec<Vec<Int>> {
    let cols = nerve.simplices(k).len();
    nerve
        .simplices(k + 1)
        .iter()
        .map(|s| {
            let mut row = vec![Int::zero(); cols];
            for r in 0..s.len() {
                let c = nerve.position(k, &face(s, r)).expect("faces are present");
                row[c] += if r % 2 == 0 { int(1) } else { int(-1) };
            }
            row
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Q,
    Z,
    Circle,
}

impl Ring {
    pub fn name(&self) -> &'static str {
        match self {
            Ring::Q => "Q",
            Ring::Z => "Z",
            Ring::Circle => "Q/Z",
        }
    }
}

/// A cocycle that is not a coboundary on the nerve over the given ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub degree: usize,
    pub ring: Ring,
    /// Scalars are stored as length-1 vectors; circle values as representatives in [0,1).
    pub representative: Cochain<RatVec>,
    /// Rank of the cohomology group of `degree` on the nerve.
    pub rank: usize,
    pub note: String,
}

impl Obstruction {
    pub fn with_note(mut self, note: &str) -> Self {
        self.note = note.to_string();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("input is not a cocycle: coboundary nonzero at {0:?}")]
    NotCocycle(Simplex),
    #[error("nothing to solve for in degree 0")]
    DegreeZero,
    #[error("not a coboundary over {} in degree {}", .0.ring.name(), .0.degree)]
    Obstructed(Obstruction),
}

impl SolveError {
    pub fn obstruction(self) -> Option<Obstruction> {
        match self {
            SolveError::Obstructed(o) => Some(o),
            _ => None,
        }
    }
}

fn column(c: &Cochain<RatVec>, nerve: &Nerve, comp: usize) -> Vec<Rat> {
    nerve.simplices(c.degree).iter().map(|s| c.get(s).0[comp].clone()).collect()
}

fn check_cocycle(nerve: &Nerve, c: &Cochain<RatVec>, ring: Ring) -> Result<(), SolveError> {
    let d = coboundary(nerve, c);
    for (s, v) in d.iter() {
        let bad = match ring {
            Ring::Circle => v.iter().any(|x| !x.is_integer()),
            _ => !v.is_zero(),
        };
        if bad {
            return Err(SolveError::NotCocycle(s.clone()));
        }
    }
    Ok(())
}

/// Core solver for vector-valued cochains of width n.
fn solve_vec(nerve: &Nerve, c: &Cochain<RatVec>, n: usize, ring: Ring) -> Result<Cochain<RatVec>, SolveError> {
    let k = c.degree;
    if k == 0 {
        return Err(SolveError::DegreeZero);
    }
    let c = if ring == Ring::Circle { c.map(|_, v| v.frac()) } else { c.clone() };
    check_cocycle(nerve, &c, ring)?;
    let d = coboundary_matrix(nerve, k - 1);
    let nrows = nerve.simplices(k).len();
    let ncols = nerve.simplices(k - 1).len();
    let dq = linalg::to_rat(&d);
    let mut sol: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]; ncols];
    let kernel = if ring == Ring::Circle { linalg::left_kernel_int(&d, nrows, ncols) } else { Vec::new() };
    for comp in 0..n {
        let b = column(&c, nerve, comp);
        let x = match ring {
            Ring::Q => linalg::solve_q(&dq, ncols, &b),
            Ring::Z => linalg::solve_z(&d, nrows, ncols, &b).map(|x| x.iter().map(rat_int).collect()),
            Ring::Circle => {
                // integer shifts z with Y(b + z) = 0, then a rational solve
                let rhs: Vec<Rat> = kernel
                    .iter()
                    .map(|y| -y.iter().zip(&b).fold(Rat::zero(), |acc, (p, q)| acc + rat_int(p) * q))
                    .collect();
                linalg::solve_z(&kernel, kernel.len(), nrows, &rhs).and_then(|z| {
                    let shifted: Vec<Rat> = b.iter().zip(&z).map(|(x, zz)| x + rat_int(zz)).collect();
                    linalg::solve_q(&dq, ncols, &shifted).map(|x| x.iter().map(frac).collect())
                })
            }
        };
        match x {
            Some(x) => {
                for (i, v) in x.into_iter().enumerate() {
                    sol[i][comp] = v;
                }
            }
            None => {
                return Err(SolveError::Obstructed(Obstruction {
                    degree: k,
                    ring,
                    representative: c.clone(),
                    rank: cohomology_rank(nerve, k, ring),
                    note: String::new(),
                }))
            }
        }
    }
    let mut out = Cochain::empty(k - 1);
    for (s, v) in nerve.simplices(k - 1).iter().zip(sol) {
        out.set(s, RatVec(v));
    }
    Ok(out)
}

fn lift_scalar(c: &Cochain<Rat>) -> Cochain<RatVec> {
    c.map(|_, v| RatVec(vec![v.clone()]))
}

fn unlift_scalar(c: Cochain<RatVec>) -> Cochain<Rat> {
    c.map(|_, v| v.0[0].clone())
}

/// Finds b with δb = c over ℚ.
pub fn solve_q(nerve: &Nerve, c: &Cochain<Rat>) -> Result<Cochain<Rat>, SolveError> {
    solve_vec(nerve, &lift_scalar(c), 1, Ring::Q).map(unlift_scalar)
}

pub fn solve_q_vec(nerve: &Nerve, c: &Cochain<RatVec>, n: usize) -> Result<Cochain<RatVec>, SolveError> {
    solve_vec(nerve, c, n, Ring::Q)
}

/// Finds b with δb = c over ℤ.
pub fn solve_z(nerve: &Nerve, c: &Cochain<Int>) -> Result<Cochain<Int>, SolveError> {
    let lifted = c.map(|_, v| RatVec(vec![rat_int(v)]));
    solve_vec(nerve, &lifted, 1, Ring::Z).map(|b| b.map(|_, v| v.0[0].to_integer()))
}

pub fn solve_z_vec(nerve: &Nerve, c: &Cochain<IntVec>, n: usize) -> Result<Cochain<IntVec>, SolveError> {
    solve_vec(nerve, &c.map(|_, v| v.to_rat()), n, Ring::Z)
        .map(|b| b.map(|_, v| v.to_int().expect("integral solution")))
}

/// Solves entrywise on the strictly lower part of skew matrices.
pub fn solve_z_skew(nerve: &Nerve, c: &Cochain<SkewIntMat>, n: usize) -> Result<Cochain<SkewIntMat>, SolveError> {
    let width = n * n.saturating_sub(1) / 2;
    let lifted = c.map(|_, b| RatVec(b.lower().iter().map(rat_int).collect()));
    solve_vec(nerve, &lifted, width, Ring::Z).map(|b| {
        b.map(|_, v| SkewIntMat::from_lower(n, &v.to_int().expect("integral solution").0))
    })
}

/// Finds b with δb = c in ℚ/ℤ.
pub fn solve_circle(nerve: &Nerve, c: &Cochain<Circle>) -> Result<Cochain<Circle>, SolveError> {
    let lifted = c.map(|_, v| RatVec(vec![v.value().clone()]));
    solve_vec(nerve, &lifted, 1, Ring::Circle).map(|b| b.map(|_, v| Circle::new(v.0[0].clone())))
}

/// Rank of H^k of the nerve; for ℤ and ℚ/ℤ the rank of the free part over ℤ.
pub fn cohomology_rank(nerve: &Nerve, k: usize, _ring: Ring) -> usize {
    if k > MAX_DIM {
        return 0;
    }
    let ck = nerve.simplices(k).len();
    let rank_out = if k < MAX_DIM { linalg::rank_int(&coboundary_matrix(nerve, k), ck) } else { 0 };
    let rank_in = if k > 0 { linalg::rank_int(&coboundary_matrix(nerve, k - 1), nerve.simplices(k - 1).len()) } else { 0 };
    ck - rank_out - rank_in
}

/// (α∪β)_{i₀…i_{p+q}} = α_{i₀…i_p}·β_{i_p…i_{p+q}} with a chosen product.
pub fn cup_with<A: Clone, B: Clone, C: Clone>(
    nerve: &Nerve,
    alpha: &Cochain<A>,
    beta: &Cochain<B>,
    mul: impl Fn(&A, &B) -> C,
) -> Result<Cochain<C>, NerveError> {
    let p = alpha.degree;
    let deg = p + beta.degree;
    if deg > nerve.dim() {
        return Err(NerveError::DegreeOverflow(deg));
    }
    Ok(Cochain::from_fn(nerve, deg, |s| mul(alpha.get(&s[..=p]), beta.get(&s[p..]))))
}

pub fn cup(nerve: &Nerve, alpha: &Cochain<Int>, beta: &Cochain<Int>) -> Result<Cochain<Int>, NerveError> {
    cup_with(nerve, alpha, beta, |a, b| a * b)
}

/// Componentwise cup of ℤⁿ-valued cochains paired by the dot product.
pub fn cup_dot(nerve: &Nerve, alpha: &Cochain<IntVec>, beta: &Cochain<IntVec>) -> Result<Cochain<Int>, NerveError> {
    cup_with(nerve, alpha, beta, |a, b| a.dot(b))
}
