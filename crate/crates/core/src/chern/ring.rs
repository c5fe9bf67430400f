//! Graded commutative rings with canonical per-degree monomial bases.
//!
//! A ring is a level over an optional base ring: new generators with
//! positive degrees, homogeneous relations whose coefficients live in the
//! base, and a truncation degree. Every relation must have a nonzero part
//! with degree-0 base coefficients; those parts are row-reduced degree by
//! degree over the rationals (columns in decreasing graded-lex order), and the
//! non-pivot monomials are the standard monomials of the level. A basis of
//! degree `d` consists of pairs (standard monomial `u`, base basis element of
//! degree `d - deg u`). For a single level over the rationals this is the
//! plain degreewise row reduction of the whole relation span.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::poly::{Monomial, Poly};
use crate::algebra::Rational;
use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone)]
pub struct GradedRing(Arc<Inner>);

struct Inner {
    id: u64,
    base: Option<GradedRing>,
    names: Vec<String>,
    weights: Vec<usize>,
    relations: Vec<Relation>,
    truncation: usize,
    fiber: OnceLock<Fiber>,
}

struct RelTerm {
    mono: Monomial,
    base_deg: usize,
    coef: Vec<Rational>,
}

struct Relation {
    degree: usize,
    top: Vec<(Monomial, Rational)>,
    lower: Vec<RelTerm>,
}

/// Relative vector: standard monomial index to a homogeneous base vector.
type Rv = BTreeMap<u32, Vec<Rational>>;

struct Nf(Vec<(u32, Vec<Rational>)>);

#[derive(Clone, Copy, Debug)]
struct Block {
    std: u32,
    base_deg: usize,
    offset: usize,
    len: usize,
}

struct Layout {
    blocks: Vec<Block>,
    dim: usize,
    block_of_std: Vec<Option<u32>>,
}

struct Fiber {
    std: Vec<Monomial>,
    std_deg: Vec<usize>,
    std_index: HashMap<Monomial, u32>,
    border: HashMap<(usize, u32), Arc<Nf>>,
    table: Vec<Option<Arc<Nf>>>,
    layouts: Vec<Layout>,
}

/// An element of a graded ring, stored as one coordinate vector per nonzero degree.
#[derive(Clone)]
pub struct RingClass {
    ring: GradedRing,
    comps: BTreeMap<usize, Vec<Rational>>,
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn axpy(out: &mut [Rational], f: &Rational, x: &[Rational]) {
    if f.is_zero() {
        return;
    }
    for (o, xi) in out.iter_mut().zip(x) {
        o.add_mul(f, xi);
    }
}

fn add_into(out: &mut [Rational], x: &[Rational]) {
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += xi;
        }
    }
}

impl GradedRing {
    /// Ring over the rationals with the given generators, relations and truncation.
    pub fn create(
        generators: &[(&str, usize)],
        relations: Vec<Poly>,
        truncation: usize,
    ) -> Result<GradedRing> {
        let weights: Vec<usize> = generators.iter().map(|g| g.1).collect();
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Validation("generator degrees must be positive".into()));
        }
        let mut rels = Vec::new();
        for p in relations {
            if p.nvars() != weights.len() {
                return Err(Error::Validation("relation over the wrong generators".into()));
            }
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree(&weights).ok_or_else(|| {
                Error::Validation(format!("inhomogeneous relation {:?}", p))
            })?;
            if d == 0 {
                return Err(Error::Validation("relation of degree 0".into()));
            }
            if d > truncation {
                continue;
            }
            rels.push(Relation {
                degree: d,
                top: p.terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
                lower: Vec::new(),
            });
        }
        Ok(GradedRing::assemble(None, generators, weights, rels, truncation))
    }

    /// Ring over `base`: each relation is a list of (monomial in the new
    /// generators, homogeneous base class) terms.
    pub fn extend(
        base: &GradedRing,
        generators: &[(&str, usize)],
        relations: Vec<Vec<(Monomial, RingClass)>>,
        truncation: usize,
    ) -> Result<GradedRing> {
        let weights: Vec<usize> = generators.iter().map(|g| g.1).collect();
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Validation("generator degrees must be positive".into()));
        }
        let mut rels = Vec::new();
        for terms in relations {
            let mut degree = None;
            let mut top = Vec::new();
            let mut lower = Vec::new();
            for (m, c) in terms {
                if m.nvars() != weights.len() {
                    return Err(Error::Validation("relation over the wrong generators".into()));
                }
                if !c.ring.same(base) {
                    return Err(Error::Ownership);
                }
                let Some(cd) = c.homogeneous_degree() else {
                    if c.is_zero() {
                        continue;
                    }
                    return Err(Error::Validation("inhomogeneous relation coefficient".into()));
                };
                let d = m.degree(&weights) + cd;
                if *degree.get_or_insert(d) != d {
                    return Err(Error::Validation("inhomogeneous relation".into()));
                }
                if cd == 0 {
                    top.push((m, c.comps[&0][0].clone()));
                } else {
                    lower.push(RelTerm { mono: m, base_deg: cd, coef: c.comps[&cd].clone() });
                }
            }
            let Some(d) = degree else { continue };
            if top.is_empty() {
                return Err(Error::Validation(
                    "relation has no term with a constant base coefficient".into(),
                ));
            }
            if d == 0 {
                return Err(Error::Validation("relation of degree 0".into()));
            }
            if d <= truncation {
                rels.push(Relation { degree: d, top, lower });
            }
        }
        Ok(GradedRing::assemble(Some(base.clone()), generators, weights, rels, truncation))
    }

    fn assemble(
        base: Option<GradedRing>,
        generators: &[(&str, usize)],
        weights: Vec<usize>,
        relations: Vec<Relation>,
        truncation: usize,
    ) -> GradedRing {
        GradedRing(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            base,
            names: generators.iter().map(|g| g.0.to_string()).collect(),
            weights,
            relations,
            truncation,
            fiber: OnceLock::new(),
        }))
    }

    pub fn same(&self, other: &GradedRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn truncation(&self) -> usize {
        self.0.truncation
    }

    pub fn base(&self) -> Option<&GradedRing> {
        self.0.base.as_ref()
    }

    /// Names of this level's generators.
    pub fn generator_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.0.weights
    }

    fn fiber(&self) -> &Fiber {
        self.0.fiber.get_or_init(|| build_fiber(&self.0))
    }

    /// Dimension of the degree-`d` graded piece.
    pub fn dim(&self, d: usize) -> usize {
        if d > self.0.truncation {
            return 0;
        }
        self.fiber().layouts[d].dim
    }

    /// Sum of the dimensions of all graded pieces.
    pub fn total_dim(&self) -> usize {
        (0..=self.0.truncation).map(|d| self.dim(d)).sum()
    }

    /// Number of standard monomials in this level's generators.
    pub fn fiber_rank(&self) -> usize {
        self.fiber().std.len()
    }

    /// Human-readable names of the degree-`d` basis elements.
    pub fn basis_names(&self, d: usize) -> Vec<String> {
        if d > self.0.truncation {
            return Vec::new();
        }
        let f = self.fiber();
        let mut out = Vec::new();
        for b in &f.layouts[d].blocks {
            let u = f.std[b.std as usize].render(&self.0.names);
            match &self.0.base {
                None => out.push(u),
                Some(base) => {
                    for bn in base.basis_names(b.base_deg) {
                        out.push(match (u.as_str(), bn.as_str()) {
                            ("1", _) => bn.clone(),
                            (_, "1") => u.clone(),
                            _ => format!("{}*{}", bn, u),
                        });
                    }
                }
            }
        }
        out
    }

    fn base_mul(&self, a: &[Rational], da: usize, b: &[Rational], db: usize) -> Option<Vec<Rational>> {
        match &self.0.base {
            None => {
                if da + db == 0 {
                    Some(vec![&a[0] * &b[0]])
                } else {
                    None
                }
            }
            Some(base) => base.mul_homog(a, da, b, db),
        }
    }

    /// Product of homogeneous coordinate vectors of degrees `p` and `q`.
    pub(crate) fn mul_homog(&self, x: &[Rational], p: usize, y: &[Rational], q: usize) -> Option<Vec<Rational>> {
        let t = self.0.truncation;
        if p + q > t {
            return None;
        }
        let f = self.fiber();
        let out_layout = &f.layouts[p + q];
        let mut out = vec![Rational::zero(); out_layout.dim];
        if out_layout.dim == 0 {
            return Some(out);
        }
        let n = f.std.len();
        if self.0.base.is_none() {
            // blocks are single scalars
            for bx in &f.layouts[p].blocks {
                let xv = &x[bx.offset];
                if xv.is_zero() {
                    continue;
                }
                for by in &f.layouts[q].blocks {
                    let yv = &y[by.offset];
                    if yv.is_zero() {
                        continue;
                    }
                    let (i, j) = (bx.std.min(by.std) as usize, bx.std.max(by.std) as usize);
                    let Some(nf) = &f.table[i * n + j] else { continue };
                    let z = xv * yv;
                    for (w, gamma) in &nf.0 {
                        if let Some(bi) = out_layout.block_of_std[*w as usize] {
                            out[out_layout.blocks[bi as usize].offset].add_mul(&z, &gamma[0]);
                        }
                    }
                }
            }
            return Some(out);
        }
        for bx in &f.layouts[p].blocks {
            let xs = &x[bx.offset..bx.offset + bx.len];
            if is_zero_vec(xs) {
                continue;
            }
            let e1 = f.std_deg[bx.std as usize];
            for by in &f.layouts[q].blocks {
                let ys = &y[by.offset..by.offset + by.len];
                if is_zero_vec(ys) {
                    continue;
                }
                let e2 = f.std_deg[by.std as usize];
                let (i, j) = (bx.std.min(by.std) as usize, bx.std.max(by.std) as usize);
                let Some(nf) = &f.table[i * n + j] else { continue };
                let Some(z) = self.base_mul(xs, bx.base_deg, ys, by.base_deg) else { continue };
                if is_zero_vec(&z) {
                    continue;
                }
                let zd = bx.base_deg + by.base_deg;
                for (w, gamma) in &nf.0 {
                    let Some(bi) = out_layout.block_of_std[*w as usize] else { continue };
                    let blk = out_layout.blocks[bi as usize];
                    let gd = e1 + e2 - f.std_deg[*w as usize];
                    let dst = &mut out[blk.offset..blk.offset + blk.len];
                    if gd == 0 {
                        axpy(dst, &gamma[0], &z);
                    } else if let Some(prod) = self.base_mul(&z, zd, gamma, gd) {
                        add_into(dst, &prod);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn zero(&self) -> RingClass {
        RingClass { ring: self.clone(), comps: BTreeMap::new() }
    }

    pub fn one(&self) -> RingClass {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> RingClass {
        let mut comps = BTreeMap::new();
        if !c.is_zero() {
            let mut v = vec![Rational::zero(); self.dim(0)];
            v[0] = c;
            comps.insert(0, v);
        }
        RingClass { ring: self.clone(), comps }
    }

    /// The class of a monomial in this level's generators.
    pub fn monomial(&self, m: &Monomial) -> RingClass {
        let d = m.degree(&self.0.weights);
        if d > self.0.truncation {
            return self.zero();
        }
        let f = self.fiber();
        let rv = nf_monomial(&self.0, &f.std_deg, &f.std_index, &f.border, &mut HashMap::new(), m);
        let nf = nf_from_rv(rv);
        let mut v = vec![Rational::zero(); f.layouts[d].dim];
        for (w, gamma) in &nf.0 {
            if let Some(bi) = f.layouts[d].block_of_std[*w as usize] {
                let blk = f.layouts[d].blocks[bi as usize];
                v[blk.offset..blk.offset + blk.len].clone_from_slice(gamma);
            }
        }
        RingClass::from_parts(self, vec![(d, v)])
    }

    /// The `i`-th generator of this level.
    pub fn generator(&self, i: usize) -> RingClass {
        self.monomial(&Monomial::var(self.0.weights.len(), i))
    }

    /// A generator of this level or any base level, by name.
    pub fn generator_by_name(&self, name: &str) -> Option<RingClass> {
        if let Some(i) = self.0.names.iter().position(|n| n == name) {
            return Some(self.generator(i));
        }
        let base = self.0.base.as_ref()?;
        let c = base.generator_by_name(name)?;
        Some(self.pullback(&c).expect("ancestor class"))
    }

    /// Evaluate a polynomial in this level's generators.
    pub fn eval_poly(&self, p: &Poly) -> RingClass {
        let mut acc = self.zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.monomial(m).scale(c)).unwrap();
        }
        acc
    }

    /// Whether `other` is this ring or one of its base rings.
    pub fn is_ancestor_or_self(&self, other: &GradedRing) -> bool {
        if self.same(other) {
            return true;
        }
        match &self.0.base {
            Some(b) => b.is_ancestor_or_self(other),
            None => false,
        }
    }

    /// Image of a class from this ring or any of its base rings.
    pub fn pullback(&self, c: &RingClass) -> Result<RingClass> {
        if c.ring.same(self) {
            return Ok(c.clone());
        }
        let Some(base) = self.0.base.as_ref() else {
            // the ring of a point maps into every ring
            if c.ring.0.base.is_none() && c.ring.0.names.is_empty() {
                return Ok(self.constant(c.degree_zero()));
            }
            return Err(Error::Ownership);
        };
        let below = base.pullback(c)?;
        let f = self.fiber();
        let mut parts = Vec::new();
        for (&d, v) in &below.comps {
            if d > self.0.truncation {
                continue;
            }
            let lay = &f.layouts[d];
            let Some(bi) = lay.block_of_std[0] else { continue };
            let blk = lay.blocks[bi as usize];
            let mut out = vec![Rational::zero(); lay.dim];
            out[blk.offset..blk.offset + blk.len].clone_from_slice(v);
            parts.push((d, out));
        }
        Ok(RingClass::from_parts(self, parts))
    }

    /// Degree of the largest standard monomial of this level.
    pub fn fiber_top_degree(&self) -> usize {
        let f = self.fiber();
        *f.std_deg.last().unwrap()
    }

    /// Number of standard monomials of this level in the largest degree.
    pub fn fiber_top_count(&self) -> usize {
        let f = self.fiber();
        let e = *f.std_deg.last().unwrap();
        f.std_deg.iter().filter(|&&d| d == e).count()
    }
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing#{}({:?})", self.0.id, self.0.names)
    }
}

fn merge_sub(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    // a - f*b, both sorted by column
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rv_axpy(acc: &mut Rv, f: &Rational, x: &Rv) {
    if f.is_zero() {
        return;
    }
    for (k, v) in x {
        match acc.get_mut(k) {
            Some(a) => axpy(a, f, v),
            None => {
                acc.insert(*k, v.iter().map(|t| t * f).collect());
            }
        }
    }
}

fn rv_of(nf: &Nf) -> Rv {
    nf.0.iter().map(|(k, v)| (*k, v.clone())).collect()
}

fn nf_from_rv(rv: Rv) -> Nf {
    Nf(rv.into_iter().filter(|(_, v)| !is_zero_vec(v)).collect())
}

fn base_mul_of(inner: &Inner, a: &[Rational], da: usize, b: &[Rational], db: usize) -> Option<Vec<Rational>> {
    match &inner.base {
        None => (da + db == 0).then(|| vec![&a[0] * &b[0]]),
        Some(base) => base.mul_homog(a, da, b, db),
    }
}

fn rv_add(acc: &mut Rv, k: u32, v: Vec<Rational>) {
    match acc.get_mut(&k) {
        Some(a) => add_into(a, &v),
        None => {
            acc.insert(k, v);
        }
    }
}

/// `x_j * rv` where `rv` has total degree `d`, using the border normal forms.
fn times_var(
    inner: &Inner,
    std_deg: &[usize],
    border: &HashMap<(usize, u32), Arc<Nf>>,
    j: usize,
    rv: &Rv,
    d: usize,
) -> Rv {
    let mut out = Rv::new();
    for (v, gamma) in rv {
        let Some(nf) = border.get(&(j, *v)) else { continue };
        let g = d - std_deg[*v as usize];
        let xd = std_deg[*v as usize] + inner.weights[j];
        for (w, delta) in &nf.0 {
            let dg = xd - std_deg[*w as usize];
            let prod = if g == 0 {
                delta.iter().map(|x| x * &gamma[0]).collect()
            } else if dg == 0 {
                gamma.iter().map(|x| x * &delta[0]).collect()
            } else {
                match base_mul_of(inner, gamma, g, delta, dg) {
                    Some(p) => p,
                    None => continue,
                }
            };
            rv_add(&mut out, *w, prod);
        }
    }
    out.retain(|_, v| !is_zero_vec(v));
    out
}

fn unit_rv(k: u32) -> Rv {
    let mut r = Rv::new();
    r.insert(k, vec![Rational::one()]);
    r
}

/// Normal form of an arbitrary monomial from the border data.
fn nf_monomial(
    inner: &Inner,
    std_deg: &[usize],
    std_index: &HashMap<Monomial, u32>,
    border: &HashMap<(usize, u32), Arc<Nf>>,
    memo: &mut HashMap<Monomial, Rv>,
    m: &Monomial,
) -> Rv {
    if let Some(&k) = std_index.get(m) {
        return unit_rv(k);
    }
    if let Some(r) = memo.get(m) {
        return r.clone();
    }
    let j = m.exponents().iter().position(|&x| x > 0).expect("the unit monomial is standard");
    let rest = m.div_var(j).unwrap();
    let sub = nf_monomial(inner, std_deg, std_index, border, memo, &rest);
    let r = times_var(inner, std_deg, border, j, &sub, rest.degree(&inner.weights));
    memo.insert(m.clone(), r.clone());
    r
}

struct Row {
    top: Vec<(usize, Rational)>,
    lower: Rv,
}

/// Splits `c * x_j * rv` (rv of total degree `e - w_j`) into symbol terms of
/// degree `e` and an already reduced lower part.
#[allow(clippy::too_many_arguments)]
fn push_times(
    inner: &Inner,
    std_deg: &[usize],
    border: &HashMap<(usize, u32), Arc<Nf>>,
    sym_col: &HashMap<(usize, u32), usize>,
    j: usize,
    rv: &Rv,
    e: usize,
    c: &Rational,
    top: &mut BTreeMap<usize, Rational>,
    lower: &mut Rv,
) {
    let d = e - inner.weights[j];
    let mut rest = Rv::new();
    for (v, gamma) in rv {
        if std_deg[*v as usize] == d {
            *top.entry(sym_col[&(j, *v)]).or_insert_with(Rational::zero) += &(&gamma[0] * c);
        } else {
            rest.insert(*v, gamma.iter().map(|x| x * c).collect());
        }
    }
    for (w, v) in times_var(inner, std_deg, border, j, &rest, d) {
        rv_add(lower, w, v);
    }
}

fn build_fiber(inner: &Inner) -> Fiber {
    let t = inner.truncation;
    let w = &inner.weights;
    let nv = w.len();
    let maxw = w.iter().copied().max().unwrap_or(1);
    let mut std: Vec<Monomial> = vec![Monomial::one(nv)];
    let mut std_deg: Vec<usize> = vec![0];
    let mut std_index: HashMap<Monomial, u32> = HashMap::new();
    std_index.insert(Monomial::one(nv), 0);
    let mut by_deg: Vec<Vec<u32>> = vec![vec![0]];
    let mut border: HashMap<(usize, u32), Arc<Nf>> = HashMap::new();
    let mut memo: HashMap<Monomial, Rv> = HashMap::new();
    let mut last_std = 0usize;
    let mut e = 1usize;
    while nv > 0 && e <= t && e <= last_std + maxw {
        // symbols x_j * u with u standard, columns in decreasing monomial order
        let mut syms: Vec<(Monomial, usize, u32)> = Vec::new();
        for j in 0..nv {
            if w[j] > e {
                continue;
            }
            for &u in &by_deg[e - w[j]] {
                syms.push((std[u as usize].mul(&Monomial::var(nv, j)), j, u));
            }
        }
        syms.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let sym_col: HashMap<(usize, u32), usize> =
            syms.iter().enumerate().map(|(i, s)| ((s.1, s.2), i)).collect();
        let mut rows: Vec<Row> = Vec::new();
        let finish = |top: BTreeMap<usize, Rational>, lower: Rv| Row {
            top: top.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            lower,
        };
        let one = Rational::one();
        let minus = -Rational::one();
        for j in 0..nv {
            for k in j + 1..nv {
                if w[j] + w[k] > e {
                    continue;
                }
                for &u in &by_deg[e - w[j] - w[k]] {
                    let mut top = BTreeMap::new();
                    let mut lower = Rv::new();
                    let a = rv_of(&border[&(k, u)]);
                    let b = rv_of(&border[&(j, u)]);
                    push_times(inner, &std_deg, &border, &sym_col, j, &a, e, &one, &mut top, &mut lower);
                    push_times(inner, &std_deg, &border, &sym_col, k, &b, e, &minus, &mut top, &mut lower);
                    rows.push(finish(top, lower));
                }
            }
        }
        for rel in inner.relations.iter().filter(|r| r.degree == e) {
            let mut top = BTreeMap::new();
            let mut lower = Rv::new();
            for (m, c) in &rel.top {
                let exps = m.exponents();
                let direct = (0..nv).find_map(|j| {
                    if exps[j] == 0 {
                        return None;
                    }
                    std_index.get(&m.div_var(j).unwrap()).map(|&u| sym_col[&(j, u)])
                });
                match direct {
                    Some(col) => *top.entry(col).or_insert_with(Rational::zero) += c,
                    None => {
                        let j = exps.iter().position(|&x| x > 0).unwrap();
                        let rest = m.div_var(j).unwrap();
                        let rv = nf_monomial(inner, &std_deg, &std_index, &border, &mut memo, &rest);
                        push_times(inner, &std_deg, &border, &sym_col, j, &rv, e, c, &mut top, &mut lower);
                    }
                }
            }
            for term in &rel.lower {
                let d2 = term.mono.degree(w);
                let rv = nf_monomial(inner, &std_deg, &std_index, &border, &mut memo, &term.mono);
                for (u, gamma) in rv {
                    let gd = d2 - std_deg[u as usize];
                    if let Some(p) = base_mul_of(inner, &term.coef, term.base_deg, &gamma, gd) {
                        rv_add(&mut lower, u, p);
                    }
                }
            }
            rows.push(finish(top, lower));
        }
        // row echelon on the symbol parts
        let mut pivots: Vec<Option<Row>> = (0..syms.len()).map(|_| None).collect();
        for mut row in rows {
            while let Some((c, v)) = row.top.first().cloned() {
                match &pivots[c] {
                    Some(p) => {
                        let fct = &v / &p.top[0].1;
                        row.top = merge_sub(&row.top, &fct, &p.top);
                        rv_axpy(&mut row.lower, &-fct, &p.lower);
                    }
                    None => break,
                }
            }
            if let Some(&(c, _)) = row.top.first() {
                pivots[c] = Some(row);
            }
        }
        let mut std_of_col: Vec<Option<u32>> = vec![None; syms.len()];
        let mut new_std = Vec::new();
        for (c, s) in syms.iter().enumerate() {
            if pivots[c].is_none() {
                assert!(
                    !std_index.contains_key(&s.0),
                    "relations do not define a free module over the base"
                );
                let k = std.len() as u32;
                std_of_col[c] = Some(k);
                std_index.insert(s.0.clone(), k);
                std.push(s.0.clone());
                std_deg.push(e);
                new_std.push(k);
            }
        }
        let mut nf_col: Vec<Option<Rv>> = vec![None; syms.len()];
        for c in (0..syms.len()).rev() {
            let rv = match &pivots[c] {
                None => unit_rv(std_of_col[c].unwrap()),
                Some(row) => {
                    let mut acc = row.lower.clone();
                    for (c2, coef) in &row.top[1..] {
                        rv_axpy(&mut acc, coef, nf_col[*c2].as_ref().expect("later column reduced first"));
                    }
                    let scale = -row.top[0].1.recip();
                    for v in acc.values_mut() {
                        for x in v.iter_mut() {
                            *x = &*x * &scale;
                        }
                    }
                    acc.retain(|_, v| !is_zero_vec(v));
                    acc
                }
            };
            nf_col[c] = Some(rv);
        }
        for (c, s) in syms.iter().enumerate() {
            border.insert((s.1, s.2), Arc::new(nf_from_rv(nf_col[c].take().unwrap())));
        }
        if !new_std.is_empty() {
            last_std = e;
        }
        by_deg.push(new_std);
        e += 1;
    }
    // pair table NF(s_i * s_k) for i <= k, one degree layer of i at a time
    let n = std.len();
    let mut table: Vec<Option<Arc<Nf>>> = vec![None; n * n];
    for layer in &by_deg {
        let rows: Vec<(usize, Vec<(usize, Arc<Nf>)>)> = layer
            .par_iter()
            .map(|&i| {
                let i = i as usize;
                let mut row = Vec::new();
                for k in i..n {
                    if std_deg[i] + std_deg[k] > t {
                        continue;
                    }
                    let nf = if i == 0 {
                        Nf(vec![(k as u32, vec![Rational::one()])])
                    } else {
                        let s = &std[i];
                        let j = s.exponents().iter().position(|&x| x > 0).unwrap();
                        let prev = std_index[&s.div_var(j).unwrap()] as usize;
                        let Some(sub) = &table[prev.min(k) * n + prev.max(k)] else { continue };
                        let rv = times_var(inner, &std_deg, &border, j, &rv_of(sub), std_deg[prev] + std_deg[k]);
                        nf_from_rv(rv)
                    };
                    row.push((k, Arc::new(nf)));
                }
                (i, row)
            })
            .collect();
        for (i, row) in rows {
            for (k, nf) in row {
                table[i * n + k] = Some(nf);
            }
        }
    }
    let mut layouts = Vec::with_capacity(t + 1);
    for d in 0..=t {
        let mut blocks = Vec::new();
        let mut block_of_std = vec![None; n];
        let mut off = 0;
        for k in 0..n {
            if std_deg[k] > d {
                continue;
            }
            let len = match &inner.base {
                None => usize::from(d == std_deg[k]),
                Some(b) => b.dim(d - std_deg[k]),
            };
            if len == 0 {
                continue;
            }
            block_of_std[k] = Some(blocks.len() as u32);
            blocks.push(Block { std: k as u32, base_deg: d - std_deg[k], offset: off, len });
            off += len;
        }
        layouts.push(Layout { blocks, dim: off, block_of_std });
    }
    Fiber { std, std_deg, std_index, border, table, layouts }
}

impl RingClass {
    fn from_parts(ring: &GradedRing, parts: Vec<(usize, Vec<Rational>)>) -> RingClass {
        let mut comps = BTreeMap::new();
        for (d, v) in parts {
            if d <= ring.truncation() && !is_zero_vec(&v) {
                comps.insert(d, v);
            }
        }
        RingClass { ring: ring.clone(), comps }
    }

    /// Build a homogeneous class from coordinates in the degree-`d` basis.
    pub fn from_coordinates(ring: &GradedRing, d: usize, coords: Vec<Rational>) -> Result<RingClass> {
        if coords.len() != ring.dim(d) {
            return Err(Error::Dimension(format!(
                "degree {} has dimension {}, got {} coordinates",
                d,
                ring.dim(d),
                coords.len()
            )));
        }
        Ok(RingClass::from_parts(ring, vec![(d, coords)]))
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.comps.keys().copied().collect()
    }

    /// Coordinates in degree `d` (all zeros if the component vanishes).
    pub fn coordinates(&self, d: usize) -> Vec<Rational> {
        match self.comps.get(&d) {
            Some(v) => v.clone(),
            None => vec![Rational::zero(); self.ring.dim(d)],
        }
    }

    /// The degree-`d` part of the class.
    pub fn part(&self, d: usize) -> RingClass {
        let mut comps = BTreeMap::new();
        if let Some(v) = self.comps.get(&d) {
            comps.insert(d, v.clone());
        }
        RingClass { ring: self.ring.clone(), comps }
    }

    /// Parts in degrees `0..=d`.
    pub fn truncate(&self, d: usize) -> RingClass {
        RingClass {
            ring: self.ring.clone(),
            comps: self.comps.range(..=d).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.comps.len() == 1 {
            self.comps.keys().next().copied()
        } else {
            None
        }
    }

    /// Constant term.
    pub fn degree_zero(&self) -> Rational {
        self.comps.get(&0).map_or_else(Rational::zero, |v| v[0].clone())
    }

    fn check(&self, other: &RingClass) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::Ownership)
        }
    }

    pub fn add(&self, other: &RingClass) -> Result<RingClass> {
        self.check(other)?;
        let mut comps = self.comps.clone();
        for (d, v) in &other.comps {
            match comps.get_mut(d) {
                Some(a) => {
                    add_into(a, v);
                    if is_zero_vec(a) {
                        comps.remove(d);
                    }
                }
                None => {
                    comps.insert(*d, v.clone());
                }
            }
        }
        Ok(RingClass { ring: self.ring.clone(), comps })
    }

    pub fn sub(&self, other: &RingClass) -> Result<RingClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingClass {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> RingClass {
        if c.is_zero() {
            return self.ring.zero();
        }
        RingClass {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|(d, v)| (*d, v.iter().map(|x| x * c).collect())).collect(),
        }
    }

    /// Product in normal form.
    pub fn mul(&self, other: &RingClass) -> RingClass {
        self.try_mul(other).expect("classes from the same ring")
    }

    pub fn try_mul(&self, other: &RingClass) -> Result<RingClass> {
        self.check(other)?;
        let t = self.ring.truncation();
        let mut comps: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (p, x) in &self.comps {
            for (q, y) in &other.comps {
                if p + q > t {
                    continue;
                }
                if let Some(z) = self.ring.mul_homog(x, *p, y, *q) {
                    match comps.get_mut(&(p + q)) {
                        Some(a) => add_into(a, &z),
                        None => {
                            comps.insert(p + q, z);
                        }
                    }
                }
            }
        }
        comps.retain(|_, v| !is_zero_vec(v));
        Ok(RingClass { ring: self.ring.clone(), comps })
    }

    /// Product keeping only degrees `<= max`.
    pub fn mul_truncated(&self, other: &RingClass, max: usize) -> RingClass {
        let t = self.ring.truncation().min(max);
        let mut comps: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (p, x) in &self.comps {
            for (q, y) in &other.comps {
                if p + q > t {
                    continue;
                }
                if let Some(z) = self.ring.mul_homog(x, *p, y, *q) {
                    match comps.get_mut(&(p + q)) {
                        Some(a) => add_into(a, &z),
                        None => {
                            comps.insert(p + q, z);
                        }
                    }
                }
            }
        }
        comps.retain(|_, v| !is_zero_vec(v));
        RingClass { ring: self.ring.clone(), comps }
    }

    pub fn pow(&self, e: u32) -> RingClass {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Render as a linear combination of basis monomials.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (d, v) in &self.comps {
            let names = self.ring.basis_names(*d);
            for (c, n) in v.iter().zip(names) {
                if c.is_zero() {
                    continue;
                }
                parts.push(if n == "1" { c.to_string() } else { format!("{}*{}", c, n) });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PartialEq for RingClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.comps == other.comps
    }
}

impl Eq for RingClass {}

impl fmt::Debug for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::chern::poly::inverse_total_class;

    #[test]
    fn projective_space() {
        let h = Poly::var(1, 0);
        let r = GradedRing::create(&[("H", 1)], vec![h.pow(10)], 9).unwrap();
        for d in 0..=9 {
            assert_eq!(r.dim(d), 1);
        }
        assert_eq!(r.total_dim(), 10);
        let hc = r.generator(0);
        assert!(hc.pow(5).mul(&hc.pow(5)).is_zero());
        assert_eq!(hc.pow(9).coordinates(9), vec![Rational::one()]);
    }

    fn grassmannian(k: usize, n: usize) -> GradedRing {
        let names: Vec<String> = (1..=k).map(|i| format!("c{}", i)).collect();
        let gens: Vec<(&str, usize)> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i + 1)).collect();
        let s = inverse_total_class(k, n);
        GradedRing::create(&gens, s[n - k + 1..=n].to_vec(), k * (n - k)).unwrap()
    }

    #[test]
    fn grassmannian_dimensions() {
        assert_eq!(grassmannian(3, 10).total_dim(), 120);
        assert_eq!(grassmannian(6, 10).total_dim(), 210);
        assert_eq!(grassmannian(2, 4).dim(2), 2);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let x = Poly::var(1, 0);
        let bad = x.add(&x.pow(2));
        assert!(GradedRing::create(&[("x", 1)], vec![bad], 3).is_err());
    }

    #[test]
    fn extension_over_projective_line() {
        // P(O + O(-1)) style ring over P^1: z^2 + h z = 0
        let base = GradedRing::create(&[("h", 1)], vec![Poly::var(1, 0).pow(2)], 1).unwrap();
        let h = base.generator(0);
        let rel = vec![
            (Monomial::from_exponents(&[2]), base.one()),
            (Monomial::from_exponents(&[1]), h.clone()),
        ];
        let r = GradedRing::extend(&base, &[("z", 1)], vec![rel], 2).unwrap();
        assert_eq!(r.total_dim(), 4);
        let z = r.generator(0);
        let hz = r.pullback(&h).unwrap();
        assert_eq!(z.mul(&z), hz.mul(&z).neg());
        assert_eq!(z.pow(3), r.zero());
        assert_eq!(z.mul(&z).scale(&q(2, 1)), z.mul(&z).add(&z.mul(&z)).unwrap());
    }
}
