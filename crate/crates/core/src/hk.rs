//! Degree-4 intersection calculus on fourfolds of K3^[2]-type.
//!
//! Quadruple products follow the Fujiki relation
//! `x₁x₂x₃x₄ = q₁₂q₃₄ + q₁₃q₂₄ + q₁₄q₂₃`, and the class `q^∨` is handled only
//! through its contraction rules `q^∨·x·y = 25 q(x, y)` and `q^∨·q^∨ = 575`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Beauville–Bogomolov–Fujiki form restricted to a labelled span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKGram {
    pub names: Vec<String>,
    pub q: RatMatrix,
}

impl HKGram {
    pub fn new(names: &[&str], q: RatMatrix) -> Result<HKGram> {
        if q.rows() != q.cols() || q.rows() != names.len() {
            return Err(Error::Dimension(format!("{} names for a {}x{} form", names.len(), q.rows(), q.cols())));
        }
        if q != q.transpose() {
            return Err(Error::Validation("form is not symmetric".into()));
        }
        Ok(HKGram { names: names.iter().map(|s| s.to_string()).collect(), q })
    }

    pub fn from_integers(names: &[&str], rows: &[Vec<i64>]) -> Result<HKGram> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        HKGram::new(names, RatMatrix::from_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::Dimension(format!("vectors of length {} and {} against rank {}", x.len(), y.len(), self.dim())));
        }
        let mut acc = Rational::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !x[i].is_zero() && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * &self.q[(i, j)];
                }
            }
        }
        Ok(acc)
    }

    /// Coordinate vector of the `i`-th basis class.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        (0..self.dim()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
    }
}

/// `q₁₂q₃₄ + q₁₃q₂₄ + q₁₄q₂₃`.
pub fn fujiki_quartic(g: &HKGram, x1: &[Rational], x2: &[Rational], x3: &[Rational], x4: &[Rational]) -> Result<Rational> {
    Ok(g.pair(x1, x2)? * g.pair(x3, x4)? + g.pair(x1, x3)? * g.pair(x2, x4)? + g.pair(x1, x4)? * g.pair(x2, x3)?)
}

/// One monomial of a degree-4 expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HK4Monomial {
    Quartic([Vec<Rational>; 4]),
    /// `q^∨·x·y`
    QDual(Vec<Rational>, Vec<Rational>),
    /// `q^∨·q^∨`
    QDualSquared,
}

/// Formal linear combination of degree-4 monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HK4Expr {
    pub terms: Vec<(Rational, HK4Monomial)>,
}

/// A degree-2 class `a·q^∨ + Σ cᵢ·xᵢyᵢ`, used to build products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HK2Class {
    pub qdual: Rational,
    pub products: Vec<(Rational, Vec<Rational>, Vec<Rational>)>,
}

impl HK2Class {
    pub fn qdual(c: Rational) -> HK2Class {
        HK2Class { qdual: c, products: Vec::new() }
    }

    pub fn product(c: Rational, x: &[Rational], y: &[Rational]) -> HK2Class {
        HK2Class { qdual: Rational::zero(), products: vec![(c, x.to_vec(), y.to_vec())] }
    }

    pub fn plus(mut self, other: HK2Class) -> HK2Class {
        self.qdual += other.qdual;
        self.products.extend(other.products);
        self
    }

    /// Class of a Lagrangian plane with `(−10)`-class `λ`: `q^∨/20 + λ²/8`.
    pub fn plane(lambda: &[Rational]) -> HK2Class {
        HK2Class::qdual(Rational::new(1, 20)).plus(HK2Class::product(Rational::new(1, 8), lambda, lambda))
    }

    pub fn mul(&self, other: &HK2Class) -> HK4Expr {
        let mut terms = Vec::new();
        if !self.qdual.is_zero() && !other.qdual.is_zero() {
            terms.push((&self.qdual * &other.qdual, HK4Monomial::QDualSquared));
        }
        for (c, x, y) in &other.products {
            if !self.qdual.is_zero() {
                terms.push((&self.qdual * c, HK4Monomial::QDual(x.clone(), y.clone())));
            }
        }
        for (c, x, y) in &self.products {
            if !other.qdual.is_zero() {
                terms.push((&other.qdual * c, HK4Monomial::QDual(x.clone(), y.clone())));
            }
            for (d, z, w) in &other.products {
                terms.push((c * d, HK4Monomial::Quartic([x.clone(), y.clone(), z.clone(), w.clone()])));
            }
        }
        HK4Expr { terms }
    }
}

impl HK4Expr {
    pub fn monomial(c: Rational, m: HK4Monomial) -> HK4Expr {
        HK4Expr { terms: vec![(c, m)] }
    }

    pub fn plus(mut self, other: HK4Expr) -> HK4Expr {
        self.terms.extend(other.terms);
        self
    }
}

pub const QDUAL_SQUARED: i64 = 575;
pub const QDUAL_PAIRING: i64 = 25;

/// Evaluate a degree-4 expression by the Fujiki relation and the `q^∨` rules.
pub fn hk4_eval(g: &HKGram, e: &HK4Expr) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (c, m) in &e.terms {
        let v = match m {
            HK4Monomial::Quartic([a, b, x, y]) => fujiki_quartic(g, a, b, x, y)?,
            HK4Monomial::QDual(x, y) => Rational::from(QDUAL_PAIRING) * g.pair(x, y)?,
            HK4Monomial::QDualSquared => Rational::from(QDUAL_SQUARED),
        };
        acc += c * &v;
    }
    Ok(acc)
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == n && &rd * &rd == d {
        Some(Rational::from(rn) / Rational::from(rd))
    } else {
        None
    }
}

/// Degree-4 numbers `(H⁴, H³D, H²D², HD³, D⁴)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree4Data {
    pub h4: Rational,
    pub h3d: Rational,
    pub h2d2: Rational,
    pub hd3: Rational,
    pub d4: Rational,
}

impl Degree4Data {
    pub fn from_integers(v: [i64; 5]) -> Degree4Data {
        let r = |i: usize| Rational::from(v[i]);
        Degree4Data { h4: r(0), h3d: r(1), h2d2: r(2), hd3: r(3), d4: r(4) }
    }

    pub fn of_gram(g: &HKGram) -> Result<Degree4Data> {
        if g.dim() != 2 {
            return Err(Error::Dimension("expected a rank-2 form".into()));
        }
        let (h, d) = (g.basis_vector(0), g.basis_vector(1));
        Ok(Degree4Data {
            h4: fujiki_quartic(g, &h, &h, &h, &h)?,
            h3d: fujiki_quartic(g, &h, &h, &h, &d)?,
            h2d2: fujiki_quartic(g, &h, &h, &d, &d)?,
            hd3: fujiki_quartic(g, &h, &d, &d, &d)?,
            d4: fujiki_quartic(g, &d, &d, &d, &d)?,
        })
    }
}

/// Recover the rank-2 form from the five degree-4 numbers, with `q(H, H) > 0`.
pub fn gram_from_degree4(data: &Degree4Data) -> Result<HKGram> {
    let three = Rational::integer(3);
    let a = rational_sqrt(&(&data.h4 / &three))
        .ok_or_else(|| Error::NoSolution(format!("H^4/3 = {} is not a rational square", &data.h4 / &three)))?;
    if a <= Rational::zero() {
        return Err(Error::Branch("polarization square must be positive".into()));
    }
    let b = &data.h3d / &(&three * &a);
    let c = (&data.h2d2 - Rational::integer(2) * &b * &b) / &a;
    let g = HKGram::new(&["H", "D"], RatMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]]))?;
    let back = Degree4Data::of_gram(&g)?;
    if &back != data {
        return Err(Error::NoSolution(format!(
            "degree-4 data inconsistent with any form: HD^3 {} vs {}, D^4 {} vs {}",
            back.hd3, data.hd3, back.d4, data.d4
        )));
    }
    Ok(g)
}

/// Roots of `[P]·[P′] = target` as a function of `x = q(λ, λ′)`, given
/// `q(λ, λ)` and `q(λ′, λ′)`.
///
/// Expanding gives `575/400 + (25/160)(a + b) + (2x² + ab)/64 = target`.
pub fn plane_product_roots(a: &Rational, b: &Rational, target: &Rational) -> Vec<Rational> {
    let constant = Rational::new(575, 400) + Rational::new(25, 160) * (a + b) + a * b / Rational::integer(64) - target;
    // (2/64) x² + constant = 0
    let x2 = -constant * Rational::integer(32);
    let mut out = BTreeSet::new();
    if let Some(r) = rational_sqrt(&x2) {
        out.insert(r.clone());
        out.insert(-r);
    }
    out.into_iter().collect()
}

/// `[P]·[P′]` evaluated through [`hk4_eval`] for a three-class template `(λ, λ′)`.
pub fn plane_product(q_ll: &Rational, q_l2l2: &Rational, x: &Rational) -> Result<Rational> {
    let g = HKGram::new(
        &["λ", "λ'"],
        RatMatrix::from_rows(vec![vec![q_ll.clone(), x.clone()], vec![x.clone(), q_l2l2.clone()]]),
    )?;
    let (l, l2) = (g.basis_vector(0), g.basis_vector(1));
    hk4_eval(&g, &HK2Class::plane(&l).mul(&HK2Class::plane(&l2)))
}

/// The values of `q(λ, λ′)` making two planes with `(−10)`-classes disjoint.
pub fn disjoint_planes_solve(q_ll: &Rational, q_l2l2: &Rational) -> Result<Vec<Rational>> {
    let roots = plane_product_roots(q_ll, q_l2l2, &Rational::zero());
    for r in &roots {
        if !plane_product(q_ll, q_l2l2, r)?.is_zero() {
            return Err(Error::Consistency(format!("root {r} does not annihilate [P].[P']")));
        }
    }
    Ok(roots)
}

/// Which correspondence the constants are derived through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dv28Route {
    /// Through `X₃`: input is the square of the Schubert part `z₁`.
    Hyperplane,
    /// Through `X₁`: input is the square of the algebraic part `x₁` of `z·h`.
    Peskine,
}

/// Outcome of the constant chase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dv28Constants {
    pub q_ll2: Rational,
    pub c: Rational,
    /// `z²` on the hyperplane route, `(z·h)²` on the Peskine route.
    pub total_sq: Rational,
    pub x0_sq: Rational,
    /// Branches discarded, with the non-integral square they would give.
    pub rejected: Vec<(Rational, Rational)>,
}

/// `q(H − 11λ, H − 11λ)` coefficient: `l·(H − 11λ) = 1 − (11/2) q(λ, ·)`.
fn line_pairing(q: &Rational) -> Rational {
    Rational::one() - Rational::new(11, 2) * q
}

pub fn dv28_constants(route: Dv28Route, part_sq: &Rational) -> Result<Dv28Constants> {
    let self_line = line_pairing(&Rational::integer(-10));
    match route {
        Dv28Route::Hyperplane => {
            let mut kept = None;
            let mut rejected = Vec::new();
            for q in [Rational::integer(2), Rational::integer(-2)] {
                // z₀·z₀′ = −z₁² = c·l·(H − 11λ′)
                let c = -part_sq / &line_pairing(&q);
                let z_sq = &c * &self_line + part_sq;
                if z_sq.is_integer() && kept.is_none() {
                    kept = Some((q, c, z_sq));
                } else {
                    rejected.push((q, z_sq));
                }
            }
            let (q, c, z_sq) = kept.ok_or_else(|| Error::Branch("no branch gives an integral z^2".into()))?;
            Ok(Dv28Constants { q_ll2: q, x0_sq: &c * &self_line, c, total_sq: z_sq, rejected })
        }
        Dv28Route::Peskine => {
            // z·z′·h² = x₀·x₀′ + x₁², equal to 2 with q(λ,λ′) = 2 and 3 with q(λ,λ′) = −2
            let mut cs = Vec::new();
            for (q, zz) in [(Rational::integer(2), Rational::integer(2)), (Rational::integer(-2), Rational::integer(3))] {
                cs.push((q.clone(), (zz - part_sq) / line_pairing(&q)));
            }
            if cs[0].1 != cs[1].1 {
                return Err(Error::NoSolution(format!("the two plane configurations give c = {} and {}", cs[0].1, cs[1].1)));
            }
            let c = cs[0].1.clone();
            let x0_sq = &c * &self_line;
            let total = &x0_sq + part_sq;
            if !total.is_integer() {
                return Err(Error::Branch(format!("(z.h)^2 = {total} is not integral")));
            }
            Ok(Dv28Constants { q_ll2: cs[0].0.clone(), c, total_sq: total, x0_sq, rejected: Vec::new() })
        }
    }
}

/// The two square roots `x₁ = ±(3/11)(h³ + π)` compatible with
/// `x₁² = 27/11` under the `(h³, π)` form `[[15, 7], [7, 4]]`, positive first.
pub fn palatini_part_candidates(x1_sq: &Rational) -> Result<Vec<Rational>> {
    // (h³ + π)² = 15 + 14 + 4
    let base = Rational::integer(33);
    let t = rational_sqrt(&(x1_sq / &base)).ok_or_else(|| Error::NoSolution("x1 is not a rational multiple of h^3 + pi".into()))?;
    Ok(vec![t.clone(), -t])
}

/// Intersection matrix of `(h³, π, z·h)` with `x₁ = t(h³ + π)`.
pub fn peskine_middle_gram(t: &Rational, zh_sq: &Rational) -> Vec<Vec<Rational>> {
    let (a, b, c) = (Rational::integer(15), Rational::integer(7), Rational::integer(4));
    let zh_h3 = t * &(&a + &b);
    let zh_pi = t * &(&b + &c);
    vec![vec![a, b.clone(), zh_h3.clone()], vec![b, c, zh_pi.clone()], vec![zh_h3, zh_pi, zh_sq.clone()]]
}

/// Numerical `i64` view for small integral results.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_square_is_three() {
        let g = HKGram::from_integers(&["λ"], &[vec![-10]]).unwrap();
        let l = g.basis_vector(0);
        let p = HK2Class::plane(&l);
        assert_eq!(hk4_eval(&g, &p.mul(&p)).unwrap(), Rational::integer(3));
    }

    #[test]
    fn sqrt() {
        assert_eq!(rational_sqrt(&Rational::new(9, 4)), Some(Rational::new(3, 2)));
        assert_eq!(rational_sqrt(&Rational::new(13, 3)), None);
    }
}
