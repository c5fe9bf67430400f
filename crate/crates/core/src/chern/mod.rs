//! Chow-ring calculus: graded rings, polynomials and Chern class operations.
//!
//! Characteristic classes are stored as lists of homogeneous ring classes
//! indexed by degree. Tensor products, exterior and symmetric powers go
//! through the Chern character; sums and differences multiply or divide
//! total Chern classes.

pub mod poly;
pub mod ring;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

pub use poly::{inverse_total_class, monomials_of_degree, Monomial, Poly};
pub use ring::{GradedRing, RingClass};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Graded series `a_0 + a_1 + …` with `a_d` homogeneous of degree `d`.
pub type Series = Vec<RingClass>;

fn check_homogeneous(c: &RingClass, d: usize) -> Result<()> {
    if c.is_zero() || c.homogeneous_degree() == Some(d) {
        Ok(())
    } else {
        Err(Error::Validation(format!("component {} is not homogeneous of degree {}", c, d)))
    }
}

/// Product of two series, truncated at degree `bound`.
pub fn series_mul(a: &[RingClass], b: &[RingClass], bound: usize) -> Series {
    let ring = a[0].ring().clone();
    let mut out = vec![ring.zero(); bound + 1];
    for (i, x) in a.iter().enumerate().take(bound + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(bound + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y)).unwrap();
        }
    }
    out
}

/// Inverse of a series with constant term 1.
pub fn series_inverse(a: &[RingClass], bound: usize) -> Series {
    let ring = a[0].ring().clone();
    let mut s = vec![ring.one()];
    for m in 1..=bound {
        let mut acc = ring.zero();
        for i in 1..=m.min(a.len() - 1) {
            if a[i].is_zero() || s[m - i].is_zero() {
                continue;
            }
            acc = acc.sub(&a[i].mul(&s[m - i])).unwrap();
        }
        s.push(acc);
    }
    s
}

fn pad(mut s: Series, ring: &GradedRing, bound: usize) -> Series {
    s.truncate(bound + 1);
    while s.len() < bound + 1 {
        s.push(ring.zero());
    }
    s
}

/// Rank and total Chern class of a (possibly virtual) bundle.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernData {
    rank: i64,
    total: Series,
}

impl ChernData {
    /// Chern data from `c_0 = 1, c_1, …`; missing components are zero.
    pub fn new(rank: i64, total: Vec<RingClass>) -> Result<ChernData> {
        let ring = total.first().ok_or_else(|| Error::Validation("empty Chern data".into()))?.ring().clone();
        if total[0] != ring.one() {
            return Err(Error::Validation("c_0 must be 1".into()));
        }
        for (d, c) in total.iter().enumerate() {
            if !c.ring().same(&ring) {
                return Err(Error::Ownership);
            }
            check_homogeneous(c, d)?;
        }
        let bound = ring.truncation();
        Ok(ChernData { rank, total: pad(total, &ring, bound) })
    }

    pub fn trivial(ring: &GradedRing, rank: i64) -> ChernData {
        ChernData { rank, total: pad(vec![ring.one()], ring, ring.truncation()) }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &RingClass) -> Result<ChernData> {
        ChernData::new(1, vec![c1.ring().one(), c1.clone()])
    }

    pub fn ring(&self) -> &GradedRing {
        self.total[0].ring()
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    /// `c_i`, zero beyond the truncation.
    pub fn c(&self, i: usize) -> RingClass {
        self.total.get(i).cloned().unwrap_or_else(|| self.ring().zero())
    }

    pub fn components(&self) -> &[RingClass] {
        &self.total
    }

    /// Top Chern class `c_rank` (requires nonnegative rank).
    pub fn top(&self) -> Result<RingClass> {
        if self.rank < 0 {
            return Err(Error::RankMismatch(format!("top Chern class of rank {}", self.rank)));
        }
        Ok(self.c(self.rank as usize))
    }

    /// Total Chern class as a single inhomogeneous class.
    pub fn total_class(&self) -> RingClass {
        self.total.iter().fold(self.ring().zero(), |acc, c| acc.add(c).unwrap())
    }

    /// Segre series `1/c`.
    pub fn segre(&self) -> Series {
        series_inverse(&self.total, self.ring().truncation())
    }

    /// Largest degree carried.
    pub fn bound(&self) -> usize {
        self.total.len() - 1
    }

    /// Copy with components above `bound` dropped.
    pub fn truncated(&self, bound: usize) -> ChernData {
        ChernData { rank: self.rank, total: self.total.iter().take(bound + 1).cloned().collect() }
    }

    pub fn sum(&self, other: &ChernData) -> Result<ChernData> {
        if !self.ring().same(other.ring()) {
            return Err(Error::Ownership);
        }
        let b = self.bound().min(other.bound());
        Ok(ChernData { rank: self.rank + other.rank, total: series_mul(&self.total, &other.total, b) })
    }

    pub fn difference(&self, other: &ChernData) -> Result<ChernData> {
        if !self.ring().same(other.ring()) {
            return Err(Error::Ownership);
        }
        let b = self.bound().min(other.bound());
        let inv = series_inverse(&other.total, b);
        Ok(ChernData { rank: self.rank - other.rank, total: series_mul(&self.total, &inv, b) })
    }

    /// Image in a ring built over this one.
    pub fn pullback(&self, ring: &GradedRing) -> Result<ChernData> {
        if self.bound() < self.ring().truncation() {
            return Err(Error::Precondition("pullback of degree-truncated Chern data".into()));
        }
        let mut total = Vec::with_capacity(self.total.len());
        for c in &self.total {
            total.push(ring.pullback(c)?);
        }
        // classes above the base truncation vanish there, hence also after pullback
        Ok(ChernData { rank: self.rank, total: pad(total, ring, ring.truncation()) })
    }

    pub fn dual(&self) -> ChernData {
        ChernData {
            rank: self.rank,
            total: self
                .total
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// Determinant line bundle.
    pub fn det(&self) -> ChernData {
        ChernData::line(&self.c(1)).expect("degree-1 class")
    }

    /// Chern character components `ch_0 … ch_bound`.
    pub fn ch(&self) -> Series {
        chern_to_ch(self)
    }
}

impl fmt::Debug for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChernData(rank {}, {:?})", self.rank, self.total)
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * Rational::from(k))
}

/// Power sums `p_k = k!·ch_k` of the Chern roots via Newton's identities.
fn power_sums(c: &ChernData) -> Series {
    let ring = c.ring().clone();
    let b = c.bound();
    let mut p: Series = vec![ring.constant(Rational::from(c.rank))];
    for k in 1..=b {
        let mut acc = c.c(k).scale(&Rational::from(k as i64));
        if k % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..k {
            let ci = c.c(i);
            if ci.is_zero() || p[k - i].is_zero() {
                continue;
            }
            let term = ci.mul(&p[k - i]);
            acc = if i % 2 == 1 { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
        }
        p.push(acc);
    }
    p
}

/// Chern character from Chern data.
pub fn chern_to_ch(c: &ChernData) -> Series {
    power_sums(c)
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.scale(&factorial(k).recip()))
        .collect()
}

/// Chern data from a Chern character; `ch_0` must equal `rank`.
pub fn ch_to_chern(ch: &[RingClass], rank: i64) -> Result<ChernData> {
    ch_to_chern_capped(ch, rank, None)
}

/// As [`ch_to_chern`], taking `c_i = 0` for `i > cap` (genuine bundles of rank `cap`).
fn ch_to_chern_capped(ch: &[RingClass], rank: i64, cap: Option<usize>) -> Result<ChernData> {
    let ring = ch.first().ok_or_else(|| Error::Validation("empty Chern character".into()))?.ring().clone();
    if ch[0] != ring.constant(Rational::from(rank)) {
        return Err(Error::Validation(format!("ch_0 = {} but rank is {}", ch[0], rank)));
    }
    for (d, x) in ch.iter().enumerate() {
        check_homogeneous(x, d)?;
    }
    let b = ch.len() - 1;
    let top = cap.map_or(b, |c| c.min(b));
    let p: Series = ch.iter().enumerate().map(|(k, x)| x.scale(&factorial(k))).collect();
    let mut c: Series = vec![ring.one()];
    for k in 1..=top {
        let mut acc = ring.zero();
        for i in 1..=k {
            if p[i].is_zero() || c[k - i].is_zero() {
                continue;
            }
            let term = p[i].mul(&c[k - i]);
            acc = if i % 2 == 1 { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
        }
        c.push(acc.scale(&Rational::new(1, k as i64)));
    }
    Ok(ChernData { rank, total: pad(c, &ring, b) })
}

/// Adams operation on a Chern character: `ch_d ↦ n^d ch_d`.
fn adams(ch: &[RingClass], n: i64) -> Series {
    let mut f = Rational::one();
    let step = Rational::from(n);
    ch.iter()
        .map(|x| {
            let y = x.scale(&f);
            f = &f * &step;
            y
        })
        .collect()
}

/// Chern characters of `λ^0 … λ^k` (exterior) or `S^0 … S^k` (symmetric).
fn lambda_powers(ch: &[RingClass], k: usize, symmetric: bool) -> Vec<Series> {
    let ring = ch[0].ring().clone();
    let b = ch.len() - 1;
    let psi: Vec<Series> = (0..=k).map(|n| if n == 0 { Vec::new() } else { adams(ch, n as i64) }).collect();
    let mut out: Vec<Series> = vec![pad(vec![ring.one()], &ring, b)];
    for j in 1..=k {
        let mut acc = pad(Vec::new(), &ring, b);
        for n in 1..=j {
            let prod = series_mul(&psi[n], &out[j - n], b);
            let neg = !symmetric && n % 2 == 0;
            for d in 0..=b {
                acc[d] = if neg { acc[d].sub(&prod[d]).unwrap() } else { acc[d].add(&prod[d]).unwrap() };
            }
        }
        let inv = Rational::new(1, j as i64);
        out.push(acc.iter().map(|x| x.scale(&inv)).collect());
    }
    out
}

fn rank_of_ch(ch: &[RingClass]) -> Result<i64> {
    let r = ch[0].degree_zero();
    r.to_i64().filter(|_| r.is_integer()).ok_or_else(|| Error::Validation(format!("non-integral rank {}", r)))
}

fn cap_for(rank: i64, genuine: bool) -> Option<usize> {
    (genuine && rank >= 0).then_some(rank as usize)
}

fn power(e: &ChernData, k: usize, symmetric: bool, genuine: bool) -> ChernData {
    let ch = e.ch();
    let l = lambda_powers(&ch, k, symmetric).pop().unwrap();
    let r = rank_of_ch(&l).expect("integral rank");
    ch_to_chern_capped(&l, r, cap_for(r, genuine)).expect("consistent rank")
}

/// Exterior power `∧^k`.
pub fn exterior_power(e: &ChernData, k: usize) -> ChernData {
    power(e, k, false, false)
}

/// Symmetric power `Sym^k`.
pub fn symmetric_power(e: &ChernData, k: usize) -> ChernData {
    power(e, k, true, false)
}

fn tensor_inner(a: &ChernData, b: &ChernData, genuine: bool) -> Result<ChernData> {
    if !a.ring().same(b.ring()) {
        return Err(Error::Ownership);
    }
    let bound = a.bound().min(b.bound());
    let ch = series_mul(&a.ch(), &b.ch(), bound);
    let r = a.rank * b.rank;
    ch_to_chern_capped(&ch, r, cap_for(r, genuine))
}

pub fn tensor(a: &ChernData, b: &ChernData) -> Result<ChernData> {
    tensor_inner(a, b, false)
}

/// Symbolic virtual bundle expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    Atom(String),
    Trivial(i64),
    Sum(Vec<BundleExpr>),
    Diff(Box<BundleExpr>, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Wedge(i64, Box<BundleExpr>),
    Sym(i64, Box<BundleExpr>),
    Det(Box<BundleExpr>),
}

impl BundleExpr {
    pub fn atom(name: &str) -> BundleExpr {
        BundleExpr::Atom(name.to_string())
    }

    pub fn plus(self, other: BundleExpr) -> BundleExpr {
        match self {
            BundleExpr::Sum(mut v) => {
                v.push(other);
                BundleExpr::Sum(v)
            }
            s => BundleExpr::Sum(vec![s, other]),
        }
    }

    pub fn minus(self, other: BundleExpr) -> BundleExpr {
        BundleExpr::Diff(Box::new(self), Box::new(other))
    }

    pub fn dual(self) -> BundleExpr {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn tensor(self, other: BundleExpr) -> BundleExpr {
        BundleExpr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn wedge(self, k: i64) -> BundleExpr {
        BundleExpr::Wedge(k, Box::new(self))
    }

    pub fn sym(self, k: i64) -> BundleExpr {
        BundleExpr::Sym(k, Box::new(self))
    }

    pub fn det(self) -> BundleExpr {
        BundleExpr::Det(Box::new(self))
    }

    /// Whether the expression involves no formal differences.
    pub fn is_genuine(&self) -> bool {
        match self {
            BundleExpr::Atom(_) | BundleExpr::Trivial(_) => true,
            BundleExpr::Diff(..) => false,
            BundleExpr::Sum(v) => v.iter().all(|e| e.is_genuine()),
            BundleExpr::Dual(e) | BundleExpr::Wedge(_, e) | BundleExpr::Sym(_, e) | BundleExpr::Det(e) => {
                e.is_genuine()
            }
            BundleExpr::Tensor(a, b) => a.is_genuine() && b.is_genuine(),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Atom(s) => write!(f, "{}", s),
            BundleExpr::Trivial(r) => write!(f, "O^{}", r),
            BundleExpr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            BundleExpr::Diff(a, b) => write!(f, "({} - {})", a, b),
            BundleExpr::Dual(e) => write!(f, "{}*", e),
            BundleExpr::Tensor(a, b) => write!(f, "({} x {})", a, b),
            BundleExpr::Wedge(k, e) => write!(f, "L{}({})", k, e),
            BundleExpr::Sym(k, e) => write!(f, "S{}({})", k, e),
            BundleExpr::Det(e) => write!(f, "det({})", e),
        }
    }
}

/// Named Chern data of the tautological pieces over one ring.
#[derive(Clone, Debug)]
pub struct BundleEnv {
    ring: GradedRing,
    atoms: HashMap<String, ChernData>,
}

impl BundleEnv {
    pub fn new(ring: &GradedRing) -> BundleEnv {
        BundleEnv { ring: ring.clone(), atoms: HashMap::new() }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn insert(&mut self, name: &str, data: ChernData) -> Result<()> {
        if !data.ring().same(&self.ring) {
            return Err(Error::Ownership);
        }
        self.atoms.insert(name.to_string(), data);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ChernData> {
        self.atoms.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.atoms.keys().map(|s| s.as_str()).collect();
        v.sort();
        v
    }
}

/// Evaluate a bundle expression to Chern data.
pub fn bundle_chern(expr: &BundleExpr, env: &BundleEnv) -> Result<ChernData> {
    bundle_chern_to(expr, env, env.ring.truncation())
}

/// Evaluate a bundle expression keeping only degrees `<= bound`.
pub fn bundle_chern_to(expr: &BundleExpr, env: &BundleEnv, bound: usize) -> Result<ChernData> {
    let bound = bound.min(env.ring.truncation());
    Ok(eval(expr, env, bound)?.0)
}

fn eval(expr: &BundleExpr, env: &BundleEnv, bound: usize) -> Result<(ChernData, bool)> {
    Ok(match expr {
        BundleExpr::Atom(name) => {
            let c = env.get(name).ok_or_else(|| Error::UnboundAtom(name.clone()))?;
            (c.truncated(bound), c.rank >= 0)
        }
        BundleExpr::Trivial(r) => (ChernData::trivial(&env.ring, *r).truncated(bound), *r >= 0),
        BundleExpr::Sum(v) => {
            let mut acc = ChernData::trivial(&env.ring, 0).truncated(bound);
            let mut genuine = true;
            for e in v {
                let (c, g) = eval(e, env, bound)?;
                genuine &= g;
                acc = acc.sum(&c)?;
            }
            (acc, genuine)
        }
        BundleExpr::Diff(a, b) => (eval(a, env, bound)?.0.difference(&eval(b, env, bound)?.0)?, false),
        BundleExpr::Dual(e) => {
            let (c, g) = eval(e, env, bound)?;
            (c.dual(), g)
        }
        BundleExpr::Tensor(a, b) => {
            let (x, ga) = eval(a, env, bound)?;
            let (y, gb) = eval(b, env, bound)?;
            (tensor_inner(&x, &y, ga && gb)?, ga && gb)
        }
        BundleExpr::Wedge(k, e) | BundleExpr::Sym(k, e) => {
            if *k < 0 {
                return Err(Error::Validation(format!("negative power {}", k)));
            }
            let (inner, g) = eval(e, env, bound)?;
            let symmetric = matches!(expr, BundleExpr::Sym(..));
            (power(&inner, *k as usize, symmetric, g), g)
        }
        BundleExpr::Det(e) => (eval(e, env, bound)?.0.det(), true),
    })
}

/// Top Chern class of a bundle of nonnegative rank; sums are handled
/// summand by summand.
pub fn top_chern(expr: &BundleExpr, env: &BundleEnv) -> Result<(i64, RingClass)> {
    if let BundleExpr::Sum(v) = expr {
        if v.iter().all(|e| e.is_genuine()) {
            let mut rank = 0;
            let mut acc = env.ring.one();
            for e in v {
                let (r, c) = top_chern(e, env)?;
                rank += r;
                acc = acc.mul(&c);
            }
            return Ok((rank, acc));
        }
    }
    let rank = expr_rank(expr, env)?;
    if rank < 0 {
        return Err(Error::RankMismatch(format!("top Chern class of rank {}", rank)));
    }
    let c = bundle_chern_to(expr, env, rank as usize)?;
    Ok((rank, c.c(rank as usize)))
}

fn binomial_virtual(r: i64, k: i64) -> i64 {
    // r choose k for any integer r
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..k {
        num *= (r - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Rank of an expression without computing any classes.
pub fn expr_rank(expr: &BundleExpr, env: &BundleEnv) -> Result<i64> {
    Ok(match expr {
        BundleExpr::Atom(name) => env.get(name).ok_or_else(|| Error::UnboundAtom(name.clone()))?.rank,
        BundleExpr::Trivial(r) => *r,
        BundleExpr::Sum(v) => v.iter().map(|e| expr_rank(e, env)).sum::<Result<i64>>()?,
        BundleExpr::Diff(a, b) => expr_rank(a, env)? - expr_rank(b, env)?,
        BundleExpr::Dual(e) => expr_rank(e, env)?,
        BundleExpr::Tensor(a, b) => expr_rank(a, env)? * expr_rank(b, env)?,
        BundleExpr::Wedge(k, e) => {
            if *k < 0 {
                return Err(Error::Validation(format!("negative power {}", k)));
            }
            binomial_virtual(expr_rank(e, env)?, *k)
        }
        BundleExpr::Sym(k, e) => {
            if *k < 0 {
                return Err(Error::Validation(format!("negative power {}", k)));
            }
            binomial_virtual(expr_rank(e, env)? + k - 1, *k)
        }
        BundleExpr::Det(_) => 1,
    })
}

/// Degree-`d` component of a class as a scalar, for rings whose top piece is one-dimensional.
pub fn scalar_part(c: &RingClass, d: usize) -> Option<Rational> {
    let v = c.coordinates(d);
    if v.len() == 1 {
        Some(v[0].clone())
    } else if v.iter().all(|x| x.is_zero()) {
        Some(Rational::zero())
    } else {
        None
    }
}
