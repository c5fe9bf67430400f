//! Towers of flag bundles over a point, zero loci of sections, and exact
//! integration on them.
//!
//! A flag bundle `Flag(r_1, …, r_m; E)` is built as a chain of Grassmannian
//! bundles `G(r_i, F_i)` with `F_i = E - U_1 - … - U_{i-1}`. Only the Chern
//! classes of the subbundles `U_i` become ring generators; the last piece is
//! the truncated quotient `c(E) / Π c(U_i)`.
//!
//! Integration uses the one-dimensional top graded piece of a plain tower,
//! scaled so that the top Chern class of the tangent bundle integrates to the
//! Euler characteristic. Zero loci keep the ambient ring: `∫_Z a` is
//! `∫ a·c_top(V)` and classes are equal on `Z` when their difference is killed
//! by `c_top(V)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{IntMatrix, Rational};
use crate::chern::{
    bundle_chern, bundle_chern_to, expr_rank, inverse_total_class, series_inverse, series_mul,
    top_chern, BundleEnv, BundleExpr, ChernData, GradedRing, Monomial, Poly, RingClass,
};
use crate::error::{Error, Result};

/// Partition indexing a Schubert class, largest part first.
pub type SchubertIndex = Vec<usize>;

#[derive(Clone)]
pub struct Variety(Arc<Inner>);

struct Inner {
    kind: Kind,
    dim: usize,
    env: BundleEnv,
    /// Number of flag-bundle constructions below and including this node.
    levels: usize,
    /// Product of the top Chern classes of all section bundles (1 on plain towers).
    cut: RingClass,
    normalizer: OnceLock<Result<Rational>>,
}

#[derive(Clone)]
pub enum Kind {
    Point,
    FlagBundle { base: Variety, carrier: BundleExpr, ranks: Vec<usize>, names: Vec<String> },
    ZeroLocus { ambient: Variety, section: BundleExpr },
}

fn piece_atom(level: usize, i: usize) -> String {
    format!("$L{}.{}", level, i)
}

fn multinomial(ranks: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    let mut n = 0u64;
    for &r in ranks {
        for k in 1..=r as u64 {
            n += 1;
            acc = acc * BigInt::from(n) / BigInt::from(k);
        }
    }
    acc
}

impl Variety {
    pub fn point() -> Variety {
        let ring = GradedRing::create(&[], Vec::new(), 0).expect("point ring");
        Variety(Arc::new(Inner {
            kind: Kind::Point,
            dim: 0,
            env: BundleEnv::new(&ring),
            levels: 0,
            cut: ring.one(),
            normalizer: OnceLock::new(),
        }))
    }

    /// `Flag(ranks; carrier)` over `base`, naming the pieces `names`.
    pub fn flag_bundle(base: &Variety, carrier: &BundleExpr, ranks: &[usize], names: &[&str]) -> Result<Variety> {
        if base.is_zero_locus() {
            return Err(Error::Unsupported("flag bundles over zero loci".into()));
        }
        if ranks.is_empty() || ranks.contains(&0) {
            return Err(Error::Validation("flag ranks must be positive".into()));
        }
        if names.len() != ranks.len() {
            return Err(Error::Validation(format!("{} names for {} pieces", names.len(), ranks.len())));
        }
        let carrier_data = bundle_chern(carrier, &base.0.env)?;
        let n: usize = ranks.iter().sum();
        if carrier_data.rank() != n as i64 {
            return Err(Error::RankMismatch(format!(
                "carrier has rank {} but the ranks sum to {}",
                carrier_data.rank(),
                n
            )));
        }
        let level = base.0.levels + 1;
        let mut ring = base.ring().clone();
        let mut dim = base.0.dim;
        let mut f = carrier_data;
        let mut pieces: Vec<ChernData> = Vec::new();
        let mut remaining = n;
        for (i, &r) in ranks[..ranks.len() - 1].iter().enumerate() {
            let q = remaining - r;
            let new_dim = dim + r * q;
            let gen_names: Vec<String> = (1..=r).map(|j| format!("c{}({})", j, names[i])).collect();
            let gens: Vec<(&str, usize)> = gen_names.iter().enumerate().map(|(j, s)| (s.as_str(), j + 1)).collect();
            let s = inverse_total_class(r, remaining);
            let is_point = ring.base().is_none() && ring.generator_names().is_empty();
            let new_ring = if is_point {
                // over the point the relations are plain polynomials
                let rels: Vec<Poly> = (q + 1..=remaining).map(|j| s[j].clone()).collect();
                GradedRing::create(&gens, rels, new_dim)?
            } else {
                let mut rels = Vec::new();
                for j in q + 1..=remaining.min(new_dim) {
                    let mut terms: Vec<(Monomial, RingClass)> = Vec::new();
                    for a in 0..=j {
                        let ca = f.c(a);
                        if ca.is_zero() {
                            continue;
                        }
                        for (m, coef) in s[j - a].terms() {
                            terms.push((m.clone(), ca.scale(coef)));
                        }
                    }
                    rels.push(terms);
                }
                GradedRing::extend(&ring, &gens, rels, new_dim)?
            };
            f = f.pullback(&new_ring)?;
            pieces = pieces.into_iter().map(|p| p.pullback(&new_ring)).collect::<Result<_>>()?;
            let mut total = vec![new_ring.one()];
            total.extend((0..r).map(|j| new_ring.generator(j)));
            let u = ChernData::new(r as i64, total)?;
            let inv = series_inverse(u.components(), new_dim);
            let fc = series_mul(f.components(), &inv, new_dim);
            f = ChernData::new(q as i64, fc)?;
            pieces.push(u);
            ring = new_ring;
            dim = new_dim;
            remaining = q;
        }
        // the last piece is the remaining quotient; its classes above the rank must vanish
        let last_rank = ranks[ranks.len() - 1];
        for j in last_rank + 1..=f.bound() {
            if !f.c(j).is_zero() {
                return Err(Error::Consistency(format!(
                    "quotient piece has nonzero c_{} beyond its rank {}",
                    j, last_rank
                )));
            }
        }
        pieces.push(f);
        let mut env = BundleEnv::new(&ring);
        let base_env = &base.0.env;
        for name in base_env.names() {
            env.insert(name, base_env.get(name).unwrap().pullback(&ring)?)?;
        }
        for (i, p) in pieces.into_iter().enumerate() {
            env.insert(&piece_atom(level, i), p.clone())?;
            env.insert(names[i], p)?;
        }
        Ok(Variety(Arc::new(Inner {
            kind: Kind::FlagBundle {
                base: base.clone(),
                carrier: carrier.clone(),
                ranks: ranks.to_vec(),
                names: names.iter().map(|s| s.to_string()).collect(),
            },
            dim,
            cut: ring.one(),
            env,
            levels: level,
            normalizer: OnceLock::new(),
        })))
    }

    /// `Gr(k, n)` over the point with tautological pieces `U` and `Q`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Variety> {
        Variety::flag_bundle(&Variety::point(), &BundleExpr::Trivial(n as i64), &[k, n - k], &["U", "Q"])
    }

    /// Projective space of lines in an `(n+1)`-space, pieces named `sub`, `quot`.
    pub fn projective_space(n: usize, sub: &str, quot: &str) -> Result<Variety> {
        Variety::flag_bundle(&Variety::point(), &BundleExpr::Trivial(n as i64 + 1), &[1, n], &[sub, quot])
    }

    /// Zero locus of a section of `section` on `ambient`.
    pub fn zero_locus(ambient: &Variety, section: &BundleExpr) -> Result<Variety> {
        let rank = expr_rank(section, &ambient.0.env)?;
        if rank < 0 || rank as usize > ambient.0.dim {
            return Err(Error::NegativeDimension(ambient.0.dim as i64 - rank));
        }
        let (_, top) = top_chern(section, &ambient.0.env)?;
        let cut = ambient.0.cut.mul(&top);
        Ok(Variety(Arc::new(Inner {
            kind: Kind::ZeroLocus { ambient: ambient.clone(), section: section.clone() },
            dim: ambient.0.dim - rank as usize,
            env: ambient.0.env.clone(),
            levels: ambient.0.levels,
            cut,
            normalizer: OnceLock::new(),
        })))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn ring(&self) -> &GradedRing {
        self.0.env.ring()
    }

    pub fn env(&self) -> &BundleEnv {
        &self.0.env
    }

    pub fn is_zero_locus(&self) -> bool {
        matches!(self.0.kind, Kind::ZeroLocus { .. })
    }

    pub fn same(&self, other: &Variety) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Product of the top Chern classes of the section bundles cutting this variety.
    pub fn cut_class(&self) -> &RingClass {
        &self.0.cut
    }

    /// The plain tower underneath any zero loci.
    pub fn plain(&self) -> &Variety {
        match &self.0.kind {
            Kind::ZeroLocus { ambient, .. } => ambient.plain(),
            _ => self,
        }
    }

    /// Chern data of a named tautological piece.
    pub fn bundle(&self, name: &str) -> Result<ChernData> {
        self.0.env.get(name).cloned().ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }

    /// Chern data of a bundle expression.
    pub fn chern(&self, expr: &BundleExpr) -> Result<ChernData> {
        bundle_chern(expr, &self.0.env)
    }

    /// Chern data of a bundle expression up to degree `bound`.
    pub fn chern_to(&self, expr: &BundleExpr, bound: usize) -> Result<ChernData> {
        bundle_chern_to(expr, &self.0.env, bound)
    }

    /// Tangent bundle as an expression in the tautological pieces.
    pub fn tangent_bundle(&self) -> BundleExpr {
        match &self.0.kind {
            Kind::Point => BundleExpr::Trivial(0),
            Kind::FlagBundle { base, ranks, .. } => {
                let mut parts = match base.tangent_bundle() {
                    BundleExpr::Trivial(0) => Vec::new(),
                    BundleExpr::Sum(v) => v,
                    t => vec![t],
                };
                let level = self.0.levels;
                for i in 0..ranks.len() {
                    for j in i + 1..ranks.len() {
                        parts.push(
                            BundleExpr::Atom(piece_atom(level, i)).dual().tensor(BundleExpr::Atom(piece_atom(level, j))),
                        );
                    }
                }
                if parts.is_empty() {
                    BundleExpr::Trivial(0)
                } else {
                    BundleExpr::Sum(parts)
                }
            }
            Kind::ZeroLocus { ambient, section } => ambient.tangent_bundle().minus(section.clone()),
        }
    }

    /// Euler characteristic of a plain tower: product of multinomial coefficients.
    pub fn euler_characteristic(&self) -> Result<BigInt> {
        match &self.0.kind {
            Kind::Point => Ok(BigInt::one()),
            Kind::FlagBundle { base, ranks, .. } => Ok(base.euler_characteristic()? * multinomial(ranks)),
            Kind::ZeroLocus { .. } => {
                Err(Error::Unsupported("Euler characteristic of a zero locus".into()))
            }
        }
    }

    /// Top Chern class of the tangent bundle of a plain tower.
    pub fn top_tangent_class(&self) -> Result<RingClass> {
        let t = self.plain().tangent_bundle();
        Ok(top_chern(&t, &self.plain().0.env)?.1)
    }

    fn normalizer(&self) -> Result<Rational> {
        let plain = self.plain();
        plain
            .0
            .normalizer
            .get_or_init(|| {
                let ring = plain.ring();
                if ring.dim(plain.0.dim) != 1 {
                    return Err(Error::Consistency(format!(
                        "top graded piece has dimension {}",
                        ring.dim(plain.0.dim)
                    )));
                }
                let top = plain.top_tangent_class()?;
                let coef = top.coordinates(plain.0.dim)[0].clone();
                if coef.is_zero() {
                    return Err(Error::Consistency("top Chern class of the tangent bundle vanishes".into()));
                }
                Ok(Rational::from_bigint(plain.euler_characteristic()?) / coef)
            })
            .clone()
    }

    fn check_owner(&self, a: &RingClass) -> Result<()> {
        if a.ring().same(self.ring()) {
            Ok(())
        } else {
            Err(Error::Ownership)
        }
    }

    /// Degree of the top-dimensional part of `a`.
    pub fn integral(&self, a: &RingClass) -> Result<Rational> {
        self.check_owner(a)?;
        let plain = self.plain();
        let piece = a.part(self.0.dim);
        let pushed = if self.is_zero_locus() { piece.mul(&self.0.cut) } else { piece };
        let norm = self.normalizer()?;
        let top = pushed.coordinates(plain.0.dim);
        Ok(&top[0] * &norm)
    }

    /// Equality of classes on this variety.
    pub fn class_equal(&self, a: &RingClass, b: &RingClass) -> Result<bool> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        let diff = a.sub(b)?;
        Ok(if self.is_zero_locus() { diff.mul(&self.0.cut).is_zero() } else { diff.is_zero() })
    }

    /// First Chern class of a bundle expression.
    pub fn c1(&self, expr: &BundleExpr) -> Result<RingClass> {
        Ok(self.chern_to(expr, 1)?.c(1))
    }

    /// Pieces of the Grassmannian-bundle level this variety sits on.
    fn grassmannian_pieces(&self) -> Result<(ChernData, usize, usize)> {
        match &self.0.kind {
            Kind::ZeroLocus { ambient, .. } => ambient.grassmannian_pieces(),
            Kind::FlagBundle { ranks, .. } if ranks.len() == 2 => {
                let q = self.0.env.get(&piece_atom(self.0.levels, 1)).unwrap().clone();
                Ok((q, ranks[0], ranks[1]))
            }
            _ => Err(Error::Unsupported("Schubert classes need a Grassmannian-bundle level".into())),
        }
    }

    /// Relative Schubert class `det(c_{λ_i + j - i}(Q))`.
    pub fn schubert_cycle(&self, lambda: &[usize]) -> Result<RingClass> {
        let (q, k, qr) = self.grassmannian_pieces()?;
        let parts: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
        if parts.len() > k || parts.iter().any(|&x| x > qr) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfBox(format!("{:?}", lambda), k, qr));
        }
        let l = parts.len();
        let entry = |i: usize, j: usize| -> RingClass {
            let idx = parts[i] as i64 + j as i64 - i as i64;
            if idx < 0 {
                self.ring().zero()
            } else {
                q.c(idx as usize)
            }
        };
        let m: Vec<Vec<RingClass>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
        Ok(class_determinant(&m, self.ring()))
    }

    /// Relative point class: product over levels of `c_top(Q_i)^{r_i}` for the
    /// successive Grassmannian steps. Integrates to 1 on a plain tower.
    pub fn point_class(&self) -> Result<RingClass> {
        let plain = self.plain();
        let mut acc = plain.ring().one();
        let mut node = plain.clone();
        loop {
            let next = match &node.0.kind {
                Kind::Point => break,
                Kind::FlagBundle { base, ranks, .. } => {
                    let env = &plain.0.env;
                    let mut rest = BundleExpr::Trivial(0);
                    let mut pieces: Vec<BundleExpr> = Vec::new();
                    for i in (0..ranks.len()).rev() {
                        pieces.push(BundleExpr::Atom(piece_atom(node.0.levels, i)));
                    }
                    // at step i the quotient is the sum of the later pieces
                    for i in (0..ranks.len() - 1).rev() {
                        rest = rest.plus(pieces[ranks.len() - 2 - i].clone());
                        let qrank = expr_rank(&rest, env)? as usize;
                        let ctop = bundle_chern_to(&rest, env, qrank)?.c(qrank);
                        acc = acc.mul(&ctop.pow(ranks[i] as u32));
                    }
                    base.clone()
                }
                Kind::ZeroLocus { .. } => unreachable!(),
            };
            node = next;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Point => write!(f, "Point"),
            Kind::FlagBundle { base, carrier, ranks, .. } => write!(f, "Flag({:?}; {}) over {:?}", ranks, carrier, base),
            Kind::ZeroLocus { ambient, section } => write!(f, "Z({}) in {:?}", section, ambient),
        }
    }
}

/// Determinant of a square matrix of ring classes by cofactor expansion.
pub fn class_determinant(m: &[Vec<RingClass>], ring: &GradedRing) -> RingClass {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut memo: HashMap<(usize, u64), RingClass> = HashMap::new();
    fn rec(
        m: &[Vec<RingClass>],
        row: usize,
        cols: u64,
        memo: &mut HashMap<(usize, u64), RingClass>,
        ring: &GradedRing,
    ) -> RingClass {
        if row == m.len() {
            return ring.one();
        }
        if let Some(v) = memo.get(&(row, cols)) {
            return v.clone();
        }
        let mut acc = ring.zero();
        let mut sign = true;
        for j in 0..m.len() {
            if cols & (1 << j) != 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let minor = rec(m, row + 1, cols | (1 << j), memo, ring);
                let term = m[row][j].mul(&minor);
                acc = if sign { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
            }
            sign = !sign;
        }
        memo.insert((row, cols), acc.clone());
        acc
    }
    rec(m, 0, 0, &mut memo, ring)
}

/// Matrix of `∫ σ_a·σ_b·σ_shift` for `a` in `rows` and `b` in `cols`.
pub fn schubert_gram(v: &Variety, rows: &[SchubertIndex], cols: &[SchubertIndex], shift: &[usize]) -> Result<IntMatrix> {
    let sh = v.schubert_cycle(shift)?;
    let ws: usize = shift.iter().sum();
    let row_classes: Vec<RingClass> = rows.iter().map(|l| v.schubert_cycle(l)).collect::<Result<_>>()?;
    let col_classes: Vec<RingClass> = cols.iter().map(|l| v.schubert_cycle(l)).collect::<Result<_>>()?;
    let mut out = IntMatrix::zeros(rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        let left = row_classes[i].mul(&sh);
        for (j, b) in cols.iter().enumerate() {
            let total = a.iter().sum::<usize>() + b.iter().sum::<usize>() + ws;
            if total != v.dim() {
                return Err(Error::Dimension(format!(
                    "{:?}, {:?} and {:?} have total degree {} on a variety of dimension {}",
                    a,
                    b,
                    shift,
                    total,
                    v.dim()
                )));
            }
            let x = v.integral(&left.mul(&col_classes[j]))?;
            if !x.is_integer() {
                return Err(Error::Consistency(format!("non-integral intersection number {}", x)));
            }
            out[(i, j)] = x.numer();
        }
    }
    Ok(out)
}

/// Degree of the top-dimensional part of the total Chern class of `dual(expr)`.
pub fn invariant_divisor_degree(v: &Variety, expr: &BundleExpr) -> Result<Rational> {
    let c = v.chern_to(&expr.clone().dual(), v.dim())?;
    v.integral(&c.c(v.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_basics() {
        let g = Variety::grassmannian(2, 4).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.ring().total_dim(), 6);
        assert_eq!(g.euler_characteristic().unwrap(), BigInt::from(6));
        let p = g.schubert_cycle(&[2, 2]).unwrap();
        assert_eq!(g.integral(&p).unwrap(), Rational::one());
        let s1 = g.schubert_cycle(&[1]).unwrap();
        assert_eq!(g.integral(&s1.pow(4)).unwrap(), Rational::from(2));
    }

    #[test]
    fn projective_space_degrees() {
        let p = Variety::projective_space(4, "O1", "Q").unwrap();
        let h = p.c1(&BundleExpr::atom("O1").dual()).unwrap();
        assert_eq!(p.integral(&h.pow(4)).unwrap(), Rational::one());
        assert_eq!(p.point_class().unwrap(), h.pow(4));
    }
}
