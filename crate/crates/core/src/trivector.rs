//! Alternating 3-forms on a 10-dimensional space over Q or a prime field.
//!
//! A trivector is stored by its coefficients on sorted triples; `[ijk]` is the
//! form `e_i^∨ ∧ e_j^∨ ∧ e_k^∨`. Contractions always use the full skew matrix
//! `M_jk = σ(v, e_j, e_k)` on the whole space, so `v` lies in its kernel.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::algebra::Rational;
use crate::error::{Error, Result};

pub const DIM: usize = 10;

/// A field with explicit element type.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A random element; over Q a small integer.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::from(0)
    }
    fn one(&self) -> Rational {
        Rational::from(1)
    }
    fn from_i64(&self, x: i64) -> Rational {
        Rational::from(x)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!num_traits::Zero::is_zero(a)).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        num_traits::Zero::is_zero(a)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        Rational::from(rng.gen_range(-50i64..=50))
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// Prime field `F_p` with `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not a prime below 2^63")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce a rational with denominator prime to `p`.
    pub fn reduce(&self, x: &Rational) -> Result<u64> {
        let m = num_bigint::BigInt::from(self.p);
        let n = num_integer::Integer::mod_floor(&x.numer(), &m);
        let d = num_integer::Integer::mod_floor(&x.denom(), &m);
        let (n, d): (u64, u64) = (n.try_into().expect("reduced"), d.try_into().expect("reduced"));
        let di = self.inv(&d).ok_or_else(|| Error::Precondition(format!("denominator of {x} vanishes mod {}", self.p)))?;
        Ok(mul_mod(n, di, self.p))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a % self.p != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Row-reduce in place, returning pivot columns.
pub fn row_reduce<F: Field>(f: &F, m: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a = m.to_vec();
    row_reduce(f, &mut a).len()
}

/// Basis of `{x : M x = 0}`.
pub fn right_kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.to_vec();
    let piv = row_reduce(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![f.zero(); cols];
            x[fc] = f.one();
            for (r, &pc) in piv.iter().enumerate() {
                x[pc] = f.neg(&a[r][fc]);
            }
            x
        })
        .collect()
}

/// A subspace given by independent row vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: &F, ambient: usize, basis: Vec<Vec<F::Elem>>) -> Result<Subspace<F>> {
        if basis.iter().any(|r| r.len() != ambient) {
            return Err(Error::Dimension(format!("basis vectors must have length {ambient}")));
        }
        if rank(field, &basis) != basis.len() {
            return Err(Error::Validation("subspace basis rows are dependent".into()));
        }
        Ok(Subspace { field: field.clone(), ambient, basis })
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(field: &F, ambient: usize, idx: &[usize]) -> Result<Subspace<F>> {
        let basis = idx
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(Error::Dimension(format!("index {i} out of range")));
                }
                Ok((0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, ambient, basis)
    }

    pub fn whole(field: &F, ambient: usize) -> Subspace<F> {
        Subspace::coordinate(field, ambient, &(0..ambient).collect::<Vec<_>>()).expect("standard basis")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn sum_dim(&self, other: &Subspace<F>) -> usize {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        rank(&self.field, &all)
    }

    pub fn intersection_dim(&self, other: &Subspace<F>) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        rank(&self.field, &all) == self.dim()
    }
}

/// Sign and sorted order of a triple, or `None` with a repeated index.
fn sort_triple(t: [usize; 3]) -> Option<(i64, [usize; 3])> {
    let [a, b, c] = t;
    if a == b || b == c || a == c {
        return None;
    }
    let mut s = [a, b, c];
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some((sign, s))
}

const PERMS: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];

/// An alternating 3-form with coefficients on sorted triples.
#[derive(Clone, Debug)]
pub struct Trivector<F: Field> {
    field: F,
    n: usize,
    coeffs: BTreeMap<[usize; 3], F::Elem>,
}

impl<F: Field> PartialEq for Trivector<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl<F: Field> Trivector<F> {
    pub fn zero(field: &F, n: usize) -> Trivector<F> {
        Trivector { field: field.clone(), n, coeffs: BTreeMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Add `c·[ijk]`, normalizing the order.
    pub fn add_term(&mut self, t: [usize; 3], c: F::Elem) -> Result<()> {
        if t.iter().any(|&i| i >= self.n) {
            return Err(Error::Dimension(format!("index out of range in {t:?}")));
        }
        let (sign, s) = sort_triple(t).ok_or_else(|| Error::Parse(format!("repeated index in {t:?}")))?;
        let c = if sign < 0 { self.field.neg(&c) } else { c };
        let f = self.field.clone();
        let e = self.coeffs.entry(s).or_insert_with(|| f.zero());
        *e = f.add(e, &c);
        if f.is_zero(e) {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    /// Coefficient of a sorted triple.
    pub fn coefficient(&self, t: [usize; 3]) -> F::Elem {
        match sort_triple(t) {
            None => self.field.zero(),
            Some((sign, s)) => match self.coeffs.get(&s) {
                None => self.field.zero(),
                Some(c) if sign > 0 => c.clone(),
                Some(c) => self.field.neg(c),
            },
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&[usize; 3], &F::Elem)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `σ(u, v, w)`.
    pub fn eval(&self, u: &[F::Elem], v: &[F::Elem], w: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (t, c) in &self.coeffs {
            let mut det = f.zero();
            for (p, sign) in PERMS {
                let term = f.mul(&f.mul(&u[t[p[0]]], &v[t[p[1]]]), &w[t[p[2]]]);
                det = if sign > 0 { f.add(&det, &term) } else { f.sub(&det, &term) };
            }
            acc = f.add(&acc, &f.mul(c, &det));
        }
        acc
    }

    /// The skew matrix `M_jk = σ(v, e_j, e_k)`.
    pub fn contraction_matrix(&self, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = vec![vec![f.zero(); self.n]; self.n];
        for (t, c) in &self.coeffs {
            for (p, sign) in PERMS {
                let (i, j, k) = (t[p[0]], t[p[1]], t[p[2]]);
                if f.is_zero(&v[i]) {
                    continue;
                }
                let x = f.mul(c, &v[i]);
                m[j][k] = if sign > 0 { f.add(&m[j][k], &x) } else { f.sub(&m[j][k], &x) };
            }
        }
        m
    }

    /// Hilbert–Mumford weight: the largest `w_i + w_j + w_k` over the support,
    /// `None` for the zero form. A negative maximum means every coefficient is
    /// scaled to zero under `t → 0` by the subgroup acting on `e_i^∨` with
    /// weight `−w_i`, i.e. the form is unstable.
    pub fn hm_weight_max(&self, weights: &[i64]) -> Result<Option<i64>> {
        if weights.len() != self.n {
            return Err(Error::Dimension(format!("{} weights for dimension {}", weights.len(), self.n)));
        }
        if weights.iter().sum::<i64>() != 0 {
            return Err(Error::Precondition("one-parameter subgroup weights must sum to 0".into()));
        }
        Ok(self.coeffs.keys().map(|t| t.iter().map(|&i| weights[i]).sum()).max())
    }

    /// Map into another field through a coefficient map.
    pub fn map_field<G: Field>(&self, g: &G, conv: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Trivector<G>> {
        let mut out = Trivector::zero(g, self.n);
        for (t, c) in &self.coeffs {
            out.add_term(*t, conv(c)?)?;
        }
        Ok(out)
    }

    /// Random form whose coefficients vanish on the triples rejected by `keep`.
    pub fn random<R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R, keep: impl Fn([usize; 3]) -> bool) -> Trivector<F> {
        let mut out = Trivector::zero(field, n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if keep([i, j, k]) {
                        let c = field.sample(rng);
                        out.add_term([i, j, k], c).expect("sorted triple");
                    }
                }
            }
        }
        out
    }
}

impl Trivector<Rationals> {
    pub fn reduce_mod(&self, p: &PrimeField) -> Result<Trivector<PrimeField>> {
        self.map_field(p, |c| p.reduce(c))
    }
}

impl<F: Field> fmt::Display for Trivector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.coeffs.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if n > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            if mag != "1" {
                write!(f, "{mag}")?;
            }
            write!(f, "[{}{}{}]", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

/// Parse a `±`-separated list of `[ijk]` tokens with optional integer coefficients.
pub fn parse_trivector<F: Field>(text: &str, field: &F) -> Result<Trivector<F>> {
    let cleaned: String = text.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Trivector::zero(field, DIM);
    let bytes: Vec<char> = cleaned.chars().collect();
    let mut i = 0;
    if bytes.is_empty() {
        return Err(Error::Parse("empty trivector".into()));
    }
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(Error::Parse(format!("expected + or - at position {i}")));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: i64 = if i > start {
            let s: String = bytes[start..i].iter().collect();
            s.parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?
        } else {
            1
        };
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] != '[' {
            return Err(Error::Parse(format!("expected `[` at position {i}")));
        }
        let close = bytes[i..]
            .iter()
            .position(|&c| c == ']')
            .map(|p| p + i)
            .ok_or_else(|| Error::Parse("unterminated token".into()))?;
        let digits: Vec<char> = bytes[i + 1..close].to_vec();
        if digits.len() != 3 || !digits.iter().all(|c| c.is_ascii_digit()) {
            let tok: String = bytes[i..=close].iter().collect();
            return Err(Error::Parse(format!("malformed token `{tok}`")));
        }
        let t = [0, 1, 2].map(|k| digits[k].to_digit(10).unwrap() as usize);
        if sort_triple(t).is_none() {
            let tok: String = bytes[i..=close].iter().collect();
            return Err(Error::Parse(format!("repeated index in `{tok}`")));
        }
        out.add_term(t, field.from_i64(sign * coef))?;
        i = close + 1;
    }
    Ok(out)
}

/// Rank and kernel of `σ(v, −, −)`.
pub fn contract_rank_kernel<F: Field>(sigma: &Trivector<F>, v: &[F::Elem]) -> Result<(usize, Subspace<F>)> {
    let f = sigma.field();
    if v.len() != sigma.dim() {
        return Err(Error::Dimension(format!("vector of length {}", v.len())));
    }
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(Error::Precondition("contraction with the zero vector".into()));
    }
    let m = sigma.contraction_matrix(v);
    let r = rank(f, &m);
    let ker = right_kernel(f, &m, sigma.dim());
    Ok((r, Subspace::new(f, sigma.dim(), ker)?))
}

/// The rows `(ω(w_a, w_b, w_c))_c` for `a < b`, whose rank is the support rank.
fn restricted_contractions<F: Field>(sigma: &Trivector<F>, w: &Subspace<F>) -> Vec<Vec<F::Elem>> {
    let b = w.basis();
    let m = b.len();
    let mut rows = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            rows.push((0..m).map(|z| sigma.eval(&b[x], &b[y], &b[z])).collect());
        }
    }
    rows
}

/// Dimension of the smallest subspace of `W` carrying `σ|_W`.
pub fn support_rank<F: Field>(sigma: &Trivector<F>, w: &Subspace<F>) -> usize {
    rank(sigma.field(), &restricted_contractions(sigma, w))
}

/// Whether `σ(a, b, c) = 0` for all basis vectors of `A`, `B`, `C`.
pub fn vanishing_check<F: Field>(sigma: &Trivector<F>, a: &Subspace<F>, b: &Subspace<F>, c: &Subspace<F>) -> bool {
    let f = sigma.field();
    a.basis().iter().all(|x| {
        b.basis()
            .iter()
            .all(|y| c.basis().iter().all(|z| f.is_zero(&sigma.eval(x, y, z))))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    X1,
    X2,
    X3,
    X6,
    X7,
}

impl Locus {
    pub fn point_dim(self) -> usize {
        match self {
            Locus::X1 => 1,
            Locus::X2 => 2,
            Locus::X3 => 3,
            Locus::X6 => 6,
            Locus::X7 => 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Membership<F: Field> {
    pub member: bool,
    /// Contraction rank for X₁, support rank for X₇.
    pub rank: Option<usize>,
    /// Kernel of the contraction for X₁; the unique `V₂` for X₇ in rank 5.
    pub witness: Option<Subspace<F>>,
}

pub fn locus_membership<F: Field>(sigma: &Trivector<F>, locus: Locus, point: &Subspace<F>) -> Result<Membership<F>> {
    if point.dim() != locus.point_dim() {
        return Err(Error::Dimension(format!("{locus:?} needs a {}-dimensional subspace, got {}", locus.point_dim(), point.dim())));
    }
    let f = sigma.field();
    let whole = Subspace::whole(f, sigma.dim());
    Ok(match locus {
        Locus::X1 => {
            let (r, k) = contract_rank_kernel(sigma, &point.basis()[0])?;
            Membership { member: r <= 6, rank: Some(r), witness: Some(k) }
        }
        Locus::X2 => Membership { member: vanishing_check(sigma, point, point, &whole), rank: None, witness: None },
        Locus::X3 | Locus::X6 => Membership { member: vanishing_check(sigma, point, point, point), rank: None, witness: None },
        Locus::X7 => {
            let r = support_rank(sigma, point);
            let witness = if r == 5 {
                // {x ∈ V₇ : σ(x, V₇, V₇) = 0}, solved in V₇ coordinates
                let b = point.basis();
                let m = b.len();
                let mut eqs = Vec::new();
                for y in 0..m {
                    for z in y + 1..m {
                        eqs.push((0..m).map(|x| sigma.eval(&b[x], &b[y], &b[z])).collect::<Vec<_>>());
                    }
                }
                let ker = right_kernel(f, &eqs, m);
                let vecs: Vec<Vec<F::Elem>> = ker
                    .iter()
                    .map(|c| {
                        (0..sigma.dim())
                            .map(|j| (0..m).fold(f.zero(), |acc, x| f.add(&acc, &f.mul(&c[x], &b[x][j]))))
                            .collect()
                    })
                    .collect();
                if vecs.len() != 2 {
                    return Err(Error::Consistency(format!("rank-5 restriction with {}-dimensional kernel", vecs.len())));
                }
                Some(Subspace::new(f, sigma.dim(), vecs)?)
            } else {
                None
            };
            Membership { member: r <= 5, rank: Some(r), witness }
        }
    })
}

/// The two configurations of disjoint planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneCase {
    /// `V₄ ∩ V₄′ = 0`.
    Case1,
    /// `V₄ ∩ V₄′` a line.
    Case2,
}

impl PlaneCase {
    /// `(V₇, V₇′, V₄, V₄′)` as index lists.
    pub fn flags(self) -> [Vec<usize>; 4] {
        let v7: Vec<usize> = (0..7).collect();
        let v7p: Vec<usize> = (3..10).collect();
        match self {
            PlaneCase::Case1 => [v7, v7p, vec![1, 2, 3, 4], vec![5, 6, 7, 8]],
            PlaneCase::Case2 => [v7, v7p, vec![0, 1, 2, 3], vec![3, 7, 8, 9]],
        }
    }

    pub fn expected_v4_meet(self) -> usize {
        match self {
            PlaneCase::Case1 => 0,
            PlaneCase::Case2 => 1,
        }
    }
}

/// Named outcome of each flag condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneReport {
    pub checks: Vec<(String, bool)>,
    pub v7_meet: usize,
    pub v4_meet: usize,
    pub v4_sum: usize,
}

impl PlaneReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

pub fn plane_fixture_check<F: Field>(case: PlaneCase, sigma: &Trivector<F>) -> Result<PlaneReport> {
    let f = sigma.field();
    let [v7, v7p, v4, v4p] = case.flags().map(|idx| Subspace::coordinate(f, sigma.dim(), &idx));
    let (v7, v7p, v4, v4p) = (v7?, v7p?, v4?, v4p?);
    let v7_meet = v7.intersection_dim(&v7p);
    let v4_meet = v4.intersection_dim(&v4p);
    let v4_sum = v4.sum_dim(&v4p);
    let mut checks = vec![
        ("sigma(V4,V7,V7) = 0".to_string(), vanishing_check(sigma, &v4, &v7, &v7)),
        ("sigma(V4',V7',V7') = 0".to_string(), vanishing_check(sigma, &v4p, &v7p, &v7p)),
        ("dim(V7 ∩ V7') = 4".to_string(), v7_meet == 4),
        (format!("dim(V4 ∩ V4') = {}", case.expected_v4_meet()), v4_meet == case.expected_v4_meet()),
        ("planes disjoint: dim(V4 + V4') > 4".to_string(), v4_sum > 4),
    ];
    if case == PlaneCase::Case2 {
        let e3 = Subspace::coordinate(f, sigma.dim(), &[3])?;
        checks.push(("V4 ∩ V4' = <e3>".to_string(), v4.contains(&e3.basis()[0]) && v4p.contains(&e3.basis()[0])));
    }
    Ok(PlaneReport { checks, v7_meet, v4_meet, v4_sum })
}

/// Rank of `σ(x, −, −)` for `x = x₃e₃ + x₄e₄ + x₅e₅ + x₆e₆`.
pub fn skew_matrix_rank_at_point<F: Field>(sigma: &Trivector<F>, x: &[F::Elem]) -> Result<usize> {
    let f = sigma.field();
    if x.len() != 4 {
        return Err(Error::Dimension("expected coordinates on <e3, e4, e5, e6>".into()));
    }
    let mut v = vec![f.zero(); sigma.dim()];
    v[3..7].clone_from_slice(x);
    Ok(contract_rank_kernel(sigma, &v)?.0)
}

/// The equation of the surface component of the rank-drop locus on
/// `P(<e3..e6>)` at `x`: `f₁₇f₂₈ − f₂₇f₁₈` in the first case and
/// `det(f_ij)_{i≤2, j≥7}` in the second, with `f_ij = σ(e_i, e_j, x)`.
pub fn surface_equation<F: Field>(case: PlaneCase, sigma: &Trivector<F>, x: &[F::Elem]) -> F::Elem {
    let f = sigma.field();
    let n = sigma.dim();
    let mut v = vec![f.zero(); n];
    v[3..7].clone_from_slice(x);
    let e = |i: usize| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
    let fij = |i: usize, j: usize| sigma.eval(&e(i), &e(j), &v);
    match case {
        PlaneCase::Case1 => f.sub(&f.mul(&fij(1, 7), &fij(2, 8)), &f.mul(&fij(2, 7), &fij(1, 8))),
        PlaneCase::Case2 => {
            let m: Vec<Vec<F::Elem>> = (0..3).map(|i| (7..10).map(|j| fij(i, j)).collect()).collect();
            let t1 = f.mul(&m[0][0], &f.sub(&f.mul(&m[1][1], &m[2][2]), &f.mul(&m[1][2], &m[2][1])));
            let t2 = f.mul(&m[0][1], &f.sub(&f.mul(&m[1][0], &m[2][2]), &f.mul(&m[1][2], &m[2][0])));
            let t3 = f.mul(&m[0][2], &f.sub(&f.mul(&m[1][0], &m[2][1]), &f.mul(&m[1][1], &m[2][0])));
            f.add(&f.sub(&t1, &t2), &t3)
        }
    }
}

/// Whether `x` lies on the lower-dimensional components of the rank-drop
/// locus: the lines `x₃ = x₄ = 0`, `x₅ = x₆ = 0`, or the point `x₄ = x₅ = x₆ = 0`.
pub fn on_special_components<F: Field>(case: PlaneCase, f: &F, x: &[F::Elem]) -> bool {
    let z = |i: usize| f.is_zero(&x[i]);
    match case {
        PlaneCase::Case1 => (z(0) && z(1)) || (z(2) && z(3)),
        PlaneCase::Case2 => z(1) && z(2) && z(3),
    }
}

/// Heuristic search for singular points of the hyperplane section `X₃`:
/// random `V₃` with `σ|_{V₃} = 0`, flagged singular when
/// `σ(V₃, V₃, V₁₀) = 0`. Finding none proves nothing.
pub fn sample_singular_points<F: Field, R: Rng + ?Sized>(sigma: &Trivector<F>, samples: usize, rng: &mut R) -> usize {
    let f = sigma.field();
    let n = sigma.dim();
    let mut found = 0;
    for _ in 0..samples {
        let u: Vec<F::Elem> = (0..n).map(|_| f.sample(rng)).collect();
        let v: Vec<F::Elem> = (0..n).map(|_| f.sample(rng)).collect();
        // σ(u, v, −) as a linear form; pick w in its kernel
        let m = sigma.contraction_matrix(&u);
        let form: Vec<F::Elem> = (0..n).map(|k| (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&v[j], &m[j][k])))).collect();
        let ker = right_kernel(f, &[form], n);
        if ker.is_empty() {
            continue;
        }
        let w: Vec<F::Elem> = (0..n).map(|j| ker.iter().fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&f.sample(rng), &k[j])))).collect();
        let Ok(v3) = Subspace::new(f, n, vec![u, v, w]) else { continue };
        if vanishing_check(sigma, &v3, &v3, &Subspace::whole(f, n)) {
            found += 1;
        }
    }
    found
}

/// A trivector file: `sigma = ...` plus named subspaces `V4 = 1 2 3 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivectorFixture {
    pub sigma: String,
    pub flags: BTreeMap<String, Vec<usize>>,
}

pub fn parse_fixture(text: &str) -> Result<TrivectorFixture> {
    let mut sigma = String::new();
    let mut flags = BTreeMap::new();
    let mut in_sigma = false;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((name, rhs)) = line.split_once('=') {
            let name = name.trim();
            if name == "sigma" {
                sigma.push_str(rhs.trim());
                in_sigma = true;
                continue;
            }
            in_sigma = false;
            let idx = rhs
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{t}` in flag `{name}`"))))
                .collect::<Result<Vec<_>>>()?;
            flags.insert(name.to_string(), idx);
        } else if in_sigma {
            sigma.push_str(line);
        } else {
            return Err(Error::Parse(format!("unexpected line `{line}`")));
        }
    }
    if sigma.is_empty() {
        return Err(Error::Parse("fixture has no `sigma =` line".into()));
    }
    Ok(TrivectorFixture { sigma, flags })
}

/// The two plane-configuration trivectors with coefficients in {0, ±1}.
pub const CASE1_FIXTURE: &str = include_str!("../fixtures/planes-case1.tv");
pub const CASE2_FIXTURE: &str = include_str!("../fixtures/planes-case2.tv");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes_signs() {
        let s = parse_trivector("[021]", &Rationals).unwrap();
        assert_eq!(s.coefficient([0, 1, 2]), Rational::from(-1));
        assert!(parse_trivector("[011]", &Rationals).is_err());
        assert!(parse_trivector("[01]", &Rationals).is_err());
        let t = parse_trivector("−[237]", &Rationals).unwrap();
        assert_eq!(t.coefficient([2, 3, 7]), Rational::from(-1));
        assert_eq!(parse_trivector("2[012]-[345]", &Rationals).unwrap().to_string(), "2[012]-[345]");
    }

    #[test]
    fn primes() {
        assert!(is_prime(10007) && is_prime(1_000_000_007) && !is_prime(10003) && !is_prime(10001));
        assert!(is_prime(9_223_372_036_854_775_783));
    }
}
