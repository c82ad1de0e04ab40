//! Exact scalars: rationals, the circle group, integer and rational vectors,
//! skew-symmetric integer matrices, the bracket forms and affine characters.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("expected even length, got {0}")]
    OddLength(usize),
    #[error("matrix is not skew-symmetric at ({0},{1})")]
    NotSkew(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(i: &Int) -> Rat {
    Rat::from_integer(i.clone())
}

/// Parses "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Representative of `r` modulo 1 in [0,1).
pub fn frac(r: &Rat) -> Rat {
    r - Rat::from_integer(r.floor().to_integer())
}

/// Element of ℚ/ℤ, stored as its representative in [0,1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle(Rat);

impl Circle {
    pub fn new(r: Rat) -> Self {
        Circle(frac(&r))
    }
    pub fn zero() -> Self {
        Circle(Rat::zero())
    }
    pub fn from_frac(n: i64, d: i64) -> Self {
        Circle::new(rat(n, d))
    }
    /// The representative in [0,1).
    pub fn value(&self) -> &Rat {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Debug for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 1", fmt_rat(&self.0))
    }
}

impl From<Rat> for Circle {
    fn from(r: Rat) -> Self {
        Circle::new(r)
    }
}

impl Add for Circle {
    type Output = Circle;
    fn add(self, o: Circle) -> Circle {
        Circle::new(self.0 + o.0)
    }
}
impl<'a> Add<&'a Circle> for &'a Circle {
    type Output = Circle;
    fn add(self, o: &Circle) -> Circle {
        Circle::new(&self.0 + &o.0)
    }
}
impl Sub for Circle {
    type Output = Circle;
    fn sub(self, o: Circle) -> Circle {
        Circle::new(self.0 - o.0)
    }
}
impl<'a> Sub<&'a Circle> for &'a Circle {
    type Output = Circle;
    fn sub(self, o: &Circle) -> Circle {
        Circle::new(&self.0 - &o.0)
    }
}
impl Neg for Circle {
    type Output = Circle;
    fn neg(self) -> Circle {
        Circle::new(-self.0)
    }
}
impl AddAssign for Circle {
    fn add_assign(&mut self, o: Circle) {
        *self = Circle::new(&self.0 + o.0);
    }
}

macro_rules! vec_type {
    ($name:ident, $elem:ty) => {
        #[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
        pub struct $name(pub Vec<$elem>);

        impl $name {
            pub fn zeros(n: usize) -> Self {
                $name(vec![<$elem>::zero(); n])
            }
            pub fn len(&self) -> usize {
                self.0.len()
            }
            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }
            pub fn iter(&self) -> std::slice::Iter<'_, $elem> {
                self.0.iter()
            }
            /// First half of an even-length vector.
            pub fn first_half(&self) -> Self {
                $name(self.0[..self.0.len() / 2].to_vec())
            }
            pub fn second_half(&self) -> Self {
                $name(self.0[self.0.len() / 2..].to_vec())
            }
            pub fn concat(&self, o: &Self) -> Self {
                let mut v = self.0.clone();
                v.extend(o.0.iter().cloned());
                $name(v)
            }
            pub fn scale(&self, s: &$elem) -> Self {
                $name(self.0.iter().map(|x| x * s).collect())
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                assert_eq!(self.len(), o.len(), "vector length mismatch");
                $name(self.0.iter().zip(&o.0).map(|(x, y)| x + y).collect())
            }
        }
        impl Add for $name {
            type Output = $name;
            fn add(self, o: $name) -> $name {
                &self + &o
            }
        }
        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                assert_eq!(self.len(), o.len(), "vector length mismatch");
                $name(self.0.iter().zip(&o.0).map(|(x, y)| x - y).collect())
            }
        }
        impl Sub for $name {
            type Output = $name;
            fn sub(self, o: $name) -> $name {
                &self - &o
            }
        }
        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.into_iter().map(|x| -x).collect())
            }
        }
        impl<'a> Neg for &'a $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|x| -x).collect())
            }
        }
    };
}

vec_type!(IntVec, Int);
vec_type!(RatVec, Rat);

impl IntVec {
    pub fn from_i64(v: &[i64]) -> Self {
        IntVec(v.iter().map(|&x| Int::from(x)).collect())
    }
    pub fn to_rat(&self) -> RatVec {
        RatVec(self.0.iter().map(rat_int).collect())
    }
    /// m·a for an integer vector and a rational vector.
    pub fn dot_rat(&self, a: &RatVec) -> Rat {
        assert_eq!(self.len(), a.len(), "vector length mismatch");
        self.0
            .iter()
            .zip(&a.0)
            .fold(Rat::zero(), |acc, (m, x)| acc + rat_int(m) * x)
    }
    pub fn dot(&self, o: &IntVec) -> Int {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.0.iter().zip(&o.0).fold(Int::zero(), |acc, (x, y)| acc + x * y)
    }
}

impl RatVec {
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        RatVec(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }
    pub fn dot(&self, o: &RatVec) -> Rat {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.0.iter().zip(&o.0).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
    }
    /// Some(m) when every entry is an integer.
    pub fn to_int(&self) -> Option<IntVec> {
        if self.0.iter().all(|x| x.is_integer()) {
            Some(IntVec(self.0.iter().map(|x| x.to_integer()).collect()))
        } else {
            None
        }
    }
    /// Entrywise reduction into [0,1).
    pub fn frac(&self) -> RatVec {
        RatVec(self.0.iter().map(frac).collect())
    }
}

/// Integer skew-symmetric n×n matrix, an element of so(n,ℤ).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SkewIntMat {
    rows: Vec<Vec<Int>>,
}

impl SkewIntMat {
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self, ScalarError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(ScalarError::NotSquare);
        }
        for i in 0..n {
            for j in 0..=i {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(ScalarError::NotSkew(i, j));
                }
            }
        }
        Ok(SkewIntMat { rows })
    }
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, ScalarError> {
        SkewIntMat::new(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }
    /// Builds the matrix from its strictly lower part: entries (i,j), i>j, row-major.
    pub fn from_lower(n: usize, lower: &[Int]) -> Self {
        let mut rows = vec![vec![Int::zero(); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in 0..i {
                rows[i][j] = lower[k].clone();
                rows[j][i] = -lower[k].clone();
                k += 1;
            }
        }
        SkewIntMat { rows }
    }
    pub fn zero(n: usize) -> Self {
        SkewIntMat { rows: vec![vec![Int::zero(); n]; n] }
    }
    /// The block matrix [[0,−E],[E,0]] of size 2n.
    pub fn poincare_block(n: usize) -> Self {
        let mut rows = vec![vec![Int::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            rows[i][n + i] = Int::from(-1);
            rows[n + i][i] = Int::from(1);
        }
        SkewIntMat { rows }
    }
    pub fn n(&self) -> usize {
        self.rows.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }
    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
    /// Strictly lower entries, row-major.
    pub fn lower(&self) -> Vec<Int> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..i {
                out.push(self.rows[i][j].clone());
            }
        }
        out
    }
    pub fn mul_int(&self, v: &IntVec) -> IntVec {
        assert_eq!(self.n(), v.len(), "vector length mismatch");
        IntVec(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).fold(Int::zero(), |acc, (b, x)| acc + b * x))
                .collect(),
        )
    }
    pub fn mul_rat(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.n(), v.len(), "vector length mismatch");
        RatVec(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).fold(Rat::zero(), |acc, (b, x)| acc + rat_int(b) * x))
                .collect(),
        )
    }
    /// ⟨v|B|w⟩ without length checks.
    pub fn full(&self, v: &RatVec, w: &RatVec) -> Rat {
        assert!(v.len() == self.n() && w.len() == self.n(), "vector length mismatch");
        let mut s = Rat::zero();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if !self.rows[i][j].is_zero() {
                    s += rat_int(&self.rows[i][j]) * &v.0[i] * &w.0[j];
                }
            }
        }
        s
    }
    /// ⟨v|B|w⟩_low without length checks.
    pub fn low(&self, v: &RatVec, w: &RatVec) -> Rat {
        assert!(v.len() == self.n() && w.len() == self.n(), "vector length mismatch");
        let mut s = Rat::zero();
        for i in 0..self.n() {
            for j in 0..i {
                if !self.rows[i][j].is_zero() {
                    s += rat_int(&self.rows[i][j]) * &v.0[i] * &w.0[j];
                }
            }
        }
        s
    }
}

impl<'a> Add<&'a SkewIntMat> for &'a SkewIntMat {
    type Output = SkewIntMat;
    fn add(self, o: &SkewIntMat) -> SkewIntMat {
        assert_eq!(self.n(), o.n(), "matrix size mismatch");
        SkewIntMat {
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}
impl Add for SkewIntMat {
    type Output = SkewIntMat;
    fn add(self, o: SkewIntMat) -> SkewIntMat {
        &self + &o
    }
}
impl<'a> Sub<&'a SkewIntMat> for &'a SkewIntMat {
    type Output = SkewIntMat;
    fn sub(self, o: &SkewIntMat) -> SkewIntMat {
        self + &(-o)
    }
}
impl Sub for SkewIntMat {
    type Output = SkewIntMat;
    fn sub(self, o: SkewIntMat) -> SkewIntMat {
        &self - &o
    }
}
impl<'a> Neg for &'a SkewIntMat {
    type Output = SkewIntMat;
    fn neg(self) -> SkewIntMat {
        SkewIntMat { rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }
}
impl Neg for SkewIntMat {
    type Output = SkewIntMat;
    fn neg(self) -> SkewIntMat {
        -&self
    }
}

fn check_len(a: usize, b: usize) -> Result<(), ScalarError> {
    if a == b {
        Ok(())
    } else {
        Err(ScalarError::LengthMismatch(a, b))
    }
}

/// ⟨v|B|w⟩ = Σ B_ij v_i w_j.
pub fn bracket(v: &RatVec, b: &SkewIntMat, w: &RatVec) -> Result<Rat, ScalarError> {
    check_len(v.len(), b.n())?;
    check_len(w.len(), b.n())?;
    Ok(b.full(v, w))
}

/// ⟨v|B|w⟩_low = Σ_{i>j} B_ij v_i w_j.
pub fn bracket_low(v: &RatVec, b: &SkewIntMat, w: &RatVec) -> Result<Rat, ScalarError> {
    check_len(v.len(), b.n())?;
    check_len(w.len(), b.n())?;
    Ok(b.low(v, w))
}

/// [x,y] = Σ_{i<n} x_{n+i} y_i on vectors of length 2n.
pub fn pairing(x: &RatVec, y: &RatVec) -> Result<Rat, ScalarError> {
    check_len(x.len(), y.len())?;
    if x.len() % 2 != 0 {
        return Err(ScalarError::OddLength(x.len()));
    }
    let n = x.len() / 2;
    Ok((0..n).fold(Rat::zero(), |acc, i| acc + &x.0[n + i] * &y.0[i]))
}

/// Affine character a ↦ constant + winding·a of the n-torus.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AffChar {
    pub constant: Circle,
    pub winding: IntVec,
}

impl AffChar {
    pub fn new(constant: Circle, winding: IntVec) -> Self {
        AffChar { constant, winding }
    }
    pub fn zero(n: usize) -> Self {
        AffChar { constant: Circle::zero(), winding: IntVec::zeros(n) }
    }
    pub fn constant(c: Circle, n: usize) -> Self {
        AffChar { constant: c, winding: IntVec::zeros(n) }
    }
    pub fn n(&self) -> usize {
        self.winding.len()
    }
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.winding.is_zero()
    }
    pub fn eval(&self, a: &RatVec) -> Circle {
        Circle::new(self.constant.value() + self.winding.dot_rat(a))
    }
    /// l_g: (l_g τ)(a) = τ(a − g).
    pub fn translate(&self, g: &RatVec) -> AffChar {
        AffChar {
            constant: Circle::new(self.constant.value() - self.winding.dot_rat(g)),
            winding: self.winding.clone(),
        }
    }
    /// The character a ↦ ⟨m|B|a⟩.
    pub fn of_bra(m: &IntVec, b: &SkewIntMat) -> AffChar {
        AffChar { constant: Circle::zero(), winding: -b.mul_int(m) }
    }
}

impl<'a> Add<&'a AffChar> for &'a AffChar {
    type Output = AffChar;
    fn add(self, o: &AffChar) -> AffChar {
        AffChar { constant: &self.constant + &o.constant, winding: &self.winding + &o.winding }
    }
}
impl Add for AffChar {
    type Output = AffChar;
    fn add(self, o: AffChar) -> AffChar {
        &self + &o
    }
}
impl<'a> Sub<&'a AffChar> for &'a AffChar {
    type Output = AffChar;
    fn sub(self, o: &AffChar) -> AffChar {
        AffChar { constant: &self.constant - &o.constant, winding: &self.winding - &o.winding }
    }
}
impl Sub for AffChar {
    type Output = AffChar;
    fn sub(self, o: AffChar) -> AffChar {
        &self - &o
    }
}
impl Neg for AffChar {
    type Output = AffChar;
    fn neg(self) -> AffChar {
        AffChar { constant: -self.constant, winding: -self.winding }
    }
}
impl<'a> Neg for &'a AffChar {
    type Output = AffChar;
    fn neg(self) -> AffChar {
        -(self.clone())
    }
}

pub fn aff_translate(g: &RatVec, tau: &AffChar) -> Result<AffChar, ScalarError> {
    check_len(g.len(), tau.n())?;
    Ok(tau.translate(g))
}

pub fn aff_of_bra(m: &IntVec, b: &SkewIntMat) -> Result<AffChar, ScalarError> {
    check_len(m.len(), b.n())?;
    Ok(AffChar::of_bra(m, b))
}

/// Floor of a rational as an integer.
pub fn floor_int(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Least common multiple of the denominators.
pub fn common_denom<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Int {
    it.into_iter().fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_i64(i: &Int) -> Option<i64> {
    i.to_i64()
}

pub fn abs_int(i: &Int) -> Int {
    i.abs()
}
