use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Exponent vector over the generators of one ring level.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Box<[u16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(e: &[u16]) -> Monomial {
        Monomial(e.to_vec().into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self, weights: &[usize]) -> usize {
        self.0.iter().zip(weights).map(|(&e, &w)| e as usize * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Divide by the generator `i`, if it divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, n) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(n.clone()),
                _ => parts.push(format!("{}^{}", n, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Lexicographic comparison of exponent vectors: a larger exponent on an
/// earlier generator wins. Combined with a degree comparison this is the
/// graded-lex order.
pub fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.0.cmp(&b.0)
}

/// All monomials of weighted degree `d`, in decreasing lex order.
pub fn monomials_of_degree(weights: &[usize], d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; weights.len()];
    fn rec(weights: &[usize], i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone().into_boxed_slice()));
            }
            return;
        }
        if i + 1 == weights.len() {
            if left % weights[i] == 0 {
                cur[i] = (left / weights[i]) as u16;
                out.push(Monomial(cur.clone().into_boxed_slice()));
                cur[i] = 0;
            }
            return;
        }
        let mut e = left / weights[i];
        loop {
            cur[i] = e as u16;
            rec(weights, i + 1, left - e * weights[i], cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    if weights.is_empty() {
        if d == 0 {
            out.push(Monomial(Box::new([])));
        }
        return out;
    }
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

/// Polynomial with rational coefficients in the generators of one level.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Poly {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Weighted degree if homogeneous (`None` for zero or inhomogeneous).
    pub fn homogeneous_degree(&self, weights: &[usize]) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree(weights));
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("{}*{:?}", c, m)).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Components of `1/(1 + x_1 + x_2 + …)` in degrees `0..=max`, where `x_i`
/// is the `i`-th variable of weight `i` (so the input is a total Chern class).
pub fn inverse_total_class(nvars: usize, max: usize) -> Vec<Poly> {
    let mut s: Vec<Poly> = Vec::with_capacity(max + 1);
    s.push(Poly::constant(nvars, Rational::one()));
    for m in 1..=max {
        let mut acc = Poly::zero(nvars);
        for i in 1..=nvars.min(m) {
            acc = acc.sub(&Poly::var(nvars, i - 1).mul(&s[m - i]));
        }
        s.push(acc);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // partitions of 10 into parts of size at most 3
        assert_eq!(monomials_of_degree(&[1, 2, 3], 10).len(), 14);
        assert_eq!(monomials_of_degree(&[1], 5).len(), 1);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        let ms = monomials_of_degree(&[1, 1], 2);
        assert_eq!(ms[0].exponents(), &[2, 0]);
        assert_eq!(ms[2].exponents(), &[0, 2]);
    }

    #[test]
    fn inverse_of_rank_two_class() {
        // 1/(1+a+b) degree 2 part is a^2 - b
        let s = inverse_total_class(2, 2);
        let a = Poly::var(2, 0);
        let b = Poly::var(2, 1);
        assert_eq!(s[2], a.mul(&a).sub(&b));
    }
}
