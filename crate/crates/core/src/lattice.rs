//! Integral quadratic forms: discriminants, saturation, orthogonal
//! complements, glue, modular obstructions and the twisted Mukai lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{hermite_kernel, hermite_normal_form, smith_normal_form, solve_right};
use crate::algebra::{det_exact, IntMatrix, RatMatrix, Rational};
use crate::error::{Error, Result};

/// A free Z-module with a symmetric integral bilinear form.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Lattice> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("{}x{} Gram matrix", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::Validation("Gram matrix is not symmetric".into()));
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Lattice> {
        Lattice::new(IntMatrix::from_rows(rows))
    }

    /// The hyperbolic plane U.
    pub fn hyperbolic_plane() -> Lattice {
        Lattice { gram: IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]) }
    }

    /// E8(-1): the negated Cartan matrix of E8.
    pub fn e8_negative() -> Lattice {
        // chain 0-2-3-4-5-6-7 with node 1 attached to node 3
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g[(i, i)] = BigInt::from(-2);
        }
        for &(a, b) in &edges {
            g[(a, b)] = BigInt::one();
            g[(b, a)] = BigInt::one();
        }
        let l = Lattice { gram: g };
        debug_assert!(l.is_even() && l.det().abs().is_one() && l.is_negative_definite());
        l
    }

    /// The rank-one lattice ⟨k⟩.
    pub fn rank_one(k: i64) -> Lattice {
        Lattice { gram: IntMatrix::from_rows(&[vec![k]]) }
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.direct_sum(&other.gram) }
    }

    pub fn power(&self, n: usize) -> Lattice {
        let mut out = Lattice { gram: IntMatrix::empty(0) };
        for _ in 0..n {
            out = out.direct_sum(self);
        }
        out
    }

    /// The K3 lattice U^3 ⊕ E8(-1)^2.
    pub fn k3() -> Lattice {
        Lattice::hyperbolic_plane().power(3).direct_sum(&Lattice::e8_negative().power(2))
    }

    /// U^3 ⊕ E8(-1)^2 ⊕ ⟨-2⟩, the second cohomology of a K3^[2]-type fourfold.
    pub fn k3_n2() -> Lattice {
        Lattice::k3().direct_sum(&Lattice::rank_one(-2))
    }

    /// Parse a `+`-separated term such as `U^3 + E8(-1)^2 + <-2>` or `[[2,1],[1,2]]`.
    pub fn parse(text: &str) -> Result<Lattice> {
        let mut out = Lattice { gram: IntMatrix::empty(0) };
        for term in split_top_level(text) {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty summand in `{text}`")));
            }
            let (base, exp) = match term.rfind('^') {
                Some(i) if !term[i + 1..].contains(']') => {
                    let e: usize = term[i + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    (term[..i].trim(), e)
                }
                _ => (term, 1),
            };
            let piece = if base == "U" {
                Lattice::hyperbolic_plane()
            } else if base == "E8(-1)" {
                Lattice::e8_negative()
            } else if let Some(inner) = base.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
                let k: i64 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad rank-one term `{base}`")))?;
                Lattice::rank_one(k)
            } else if base.starts_with('[') {
                Lattice::new(parse_matrix_literal(base)?)?
            } else {
                return Err(Error::Parse(format!("unknown lattice `{base}`")));
            };
            out = out.direct_sum(&piece.power(exp));
        }
        Ok(out)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        det_exact(&self.gram).expect("square Gram")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Sylvester's criterion on leading principal minors.
    pub fn is_negative_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let m = IntMatrix::from_rows(
                &(0..k).map(|i| (0..k).map(|j| self.gram[(i, j)].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            );
            let d = det_exact(&m).expect("square");
            if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
    }

    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if v[j].is_zero() || self.gram[(i, j)].is_zero() {
                    continue;
                }
                acc += &u[i] * &v[j] * Rational::from(&self.gram[(i, j)]);
            }
        }
        acc
    }

    pub fn square(&self, u: &[Rational]) -> Rational {
        self.pair(u, u)
    }

    /// The pairings of `u` against every basis vector, i.e. `u·G`.
    pub fn pairings(&self, u: &[Rational]) -> Vec<Rational> {
        (0..self.rank())
            .map(|j| {
                let mut acc = Rational::zero();
                for i in 0..self.rank() {
                    if !u[i].is_zero() && !self.gram[(i, j)].is_zero() {
                        acc += &u[i] * Rational::from(&self.gram[(i, j)]);
                    }
                }
                acc
            })
            .collect()
    }

    fn check_vector(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in rank {} lattice", v.len(), self.rank())));
        }
        Ok(())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({:?})", self.gram)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' | '<' => depth += 1,
            ']' | ')' | '>' => depth -= 1,
            '+' | '⊕' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parse `[[a,b],[c,d]]` into an integer matrix.
pub fn parse_matrix_literal(s: &str) -> Result<IntMatrix> {
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad matrix literal `{s}`")))?;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for chunk in body.split(']') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let inner = chunk.strip_prefix('[').ok_or_else(|| Error::Parse(format!("bad row in `{s}`")))?;
        let row = inner
            .split(',')
            .map(|x| x.trim().replace('−', "-").parse::<BigInt>().map_err(|_| Error::Parse(format!("bad entry `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse(format!("ragged matrix literal `{s}`")));
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// Discriminant `|det G|` and the Smith invariant factors of `G`.
pub fn disc_and_group(l: &Lattice) -> Result<(BigInt, Vec<BigInt>)> {
    let d = l.det();
    if d.is_zero() {
        return Err(Error::Degenerate);
    }
    let (snf, _, _) = smith_normal_form(l.gram());
    Ok((d.abs(), snf))
}

/// Gcd of the pairings of `v` with the whole lattice.
pub fn divisibility(l: &Lattice, v: &[BigInt]) -> Result<BigInt> {
    if v.len() != l.rank() {
        return Err(Error::Dimension(format!("vector of length {} in rank {} lattice", v.len(), l.rank())));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("divisibility of the zero vector".into()));
    }
    let vr: Vec<Rational> = v.iter().map(Rational::from).collect();
    let g = l
        .pairings(&vr)
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer().expect("integral pairing")));
    if g.is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(g)
}

/// A sublattice given by rational basis rows in ambient coordinates whose
/// induced Gram matrix is integral.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: RatMatrix,
    gram: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: &Lattice, basis: RatMatrix) -> Result<Sublattice> {
        if basis.cols() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "basis with {} columns in rank {} lattice",
                basis.cols(),
                ambient.rank()
            )));
        }
        if basis.rank() != basis.rows() {
            return Err(Error::Validation("basis rows are linearly dependent".into()));
        }
        let rows = basis.row_vecs();
        let k = rows.len();
        let mut gram = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let p = ambient.pair(&rows[i], &rows[j]);
                let z = p.to_integer().ok_or_else(|| {
                    Error::GlueRejected(format!("induced pairing ({i},{j}) = {p} is not integral"))
                })?;
                gram[(i, j)] = z.clone();
                gram[(j, i)] = z;
            }
        }
        Ok(Sublattice { ambient: ambient.clone(), basis, gram })
    }

    pub fn from_integer_rows(ambient: &Lattice, rows: &[Vec<i64>]) -> Result<Sublattice> {
        Sublattice::new(ambient, IntMatrix::from_rows(rows).to_rational())
    }

    pub fn whole(ambient: &Lattice) -> Sublattice {
        Sublattice::new(ambient, RatMatrix::identity(ambient.rank())).expect("identity basis")
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn as_lattice(&self) -> Lattice {
        Lattice { gram: self.gram.clone() }
    }

    pub fn disc(&self) -> BigInt {
        det_exact(&self.gram).expect("square").abs()
    }

    pub fn is_even(&self) -> bool {
        self.as_lattice().is_even()
    }

    /// Ambient coordinates of the integer combination `coeffs·basis`.
    pub fn vector(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient.rank()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(i).iter().enumerate() {
                out[j].add_mul(c, x);
            }
        }
        out
    }

    /// Coordinates of an ambient vector in this basis, if it lies in the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        solve_right(&self.basis.transpose(), v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Rational::is_integer))
    }
}

/// Saturated integral kernel of the pairing against `s`.
pub fn orthogonal_complement(s: &Sublattice) -> Result<Sublattice> {
    let amb = s.ambient();
    let den = s.basis().common_denominator();
    let scaled = s.basis().scale(&Rational::from(&den)).to_integer().expect("cleared denominators");
    // columns: G·bᵀ for each basis row b
    let p = amb.gram().mul(&scaled.transpose())?;
    let k = hermite_kernel(&p);
    Sublattice::new(amb, k.to_rational())
}

/// Saturation of an integral sublattice and its index `[Sat : S]`.
pub fn saturate_and_index(s: &Sublattice) -> Result<(Sublattice, BigInt)> {
    let b = s
        .basis()
        .to_integer()
        .ok_or_else(|| Error::Precondition("saturation needs an integral basis".into()))?;
    let n = s.ambient().rank();
    let sat = if s.rank() == n {
        IntMatrix::identity(n)
    } else {
        let k = hermite_kernel(&b.transpose());
        hermite_kernel(&k.transpose())
    };
    let (snf, _, _) = smith_normal_form(&b);
    let index = snf.iter().fold(BigInt::one(), |acc, x| acc * x);
    let sat = Sublattice::new(s.ambient(), sat.to_rational())?;
    let ds = s.disc();
    if !ds.is_zero() && &index * &index * sat.disc() != ds {
        return Err(Error::Consistency(format!(
            "index {index} does not satisfy index^2 * {} = {ds}",
            sat.disc()
        )));
    }
    Ok((sat, index))
}

/// Enlarge `s` by rational glue vectors, rejecting non-integral results.
pub fn adjoin_rational_vectors(s: &Sublattice, glue: &RatMatrix) -> Result<Sublattice> {
    if glue.rows() == 0 {
        return Ok(s.clone());
    }
    let all = s.basis().stack(glue)?;
    let den = all.common_denominator();
    let scaled = all.scale(&Rational::from(&den)).to_integer().expect("cleared denominators");
    let (h, _) = hermite_normal_form(&scaled);
    let rows: Vec<Vec<Rational>> = h
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.iter().map(|x| Rational::from(x) / Rational::from(&den)).collect())
        .collect();
    Sublattice::new(s.ambient(), RatMatrix::from_rows(rows))
}

/// `{u ∈ S : u·w ∈ nZ}` together with its index in `S`.
pub fn kernel_mod_pairing(s: &Sublattice, w: &[Rational], n: &BigInt) -> Result<(Sublattice, BigInt)> {
    if !n.is_positive() {
        return Err(Error::Precondition(format!("modulus {n} must be positive")));
    }
    s.ambient().check_vector(w)?;
    let vals: Vec<Rational> = (0..s.rank())
        .map(|i| s.ambient().pair(s.basis().row(i), w) / Rational::from(n))
        .collect();
    let den = vals.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let c: Vec<BigInt> = vals
        .iter()
        .map(|x| (x * &Rational::from(&den)).to_integer().expect("cleared denominator"))
        .collect();
    let g = c.iter().fold(den.clone(), |acc, x| acc.gcd(x));
    let index = &den / &g;
    // x·c + y·den = 0, projected to x
    let k = s.rank();
    let mut col = IntMatrix::zeros(k + 1, 1);
    for i in 0..k {
        col[(i, 0)] = c[i].clone();
    }
    col[(k, 0)] = den;
    let ker = hermite_kernel(&col);
    let proj: Vec<Vec<BigInt>> = ker.row_vecs().into_iter().map(|r| r[..k].to_vec()).collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&proj));
    let coeffs: Vec<Vec<Rational>> = h
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.iter().map(Rational::from).collect())
        .collect();
    let rows: Vec<Vec<Rational>> = coeffs.iter().map(|cf| s.vector(cf)).collect();
    let out = Sublattice::new(s.ambient(), RatMatrix::from_rows(rows))?;
    Ok((out, index))
}

/// Outcome of a residue-class search for `Q(a, b) ≡ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representability {
    Obstructed,
    Inconclusive { witness: (u64, u64) },
}

fn binary_form(form: &IntMatrix) -> Result<(BigInt, BigInt, BigInt)> {
    if form.rows() != 2 || form.cols() != 2 || !form.is_symmetric() {
        return Err(Error::Dimension("expected a symmetric 2x2 form".into()));
    }
    Ok((form[(0, 0)].clone(), BigInt::from(2) * &form[(0, 1)], form[(1, 1)].clone()))
}

/// Exhaustive residue search modulo `modulus`.
pub fn nonrepresentability_mod(form: &IntMatrix, target: &BigInt, modulus: u64) -> Result<Representability> {
    if modulus < 2 {
        return Err(Error::Precondition(format!("modulus {modulus} must be at least 2")));
    }
    let (a, b, c) = binary_form(form)?;
    let m = BigInt::from(modulus);
    let t = target.mod_floor(&m);
    for x in 0..modulus {
        for y in 0..modulus {
            let (xb, yb) = (BigInt::from(x), BigInt::from(y));
            let v = &a * &xb * &xb + &b * &xb * &yb + &c * &yb * &yb;
            if v.mod_floor(&m) == t {
                return Ok(Representability::Inconclusive { witness: (x, y) });
            }
        }
    }
    Ok(Representability::Obstructed)
}

/// First integral solution of `Q(a, b) = target` with `|a|, |b| ≤ bound`.
pub fn bounded_search(form: &IntMatrix, target: &BigInt, bound: i64) -> Result<Option<(i64, i64)>> {
    let (a, b, c) = binary_form(form)?;
    for x in -bound..=bound {
        for y in -bound..=bound {
            let (xb, yb) = (BigInt::from(x), BigInt::from(y));
            if &(&a * &xb * &xb + &b * &xb * &yb + &c * &yb * &yb) == target {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// A Mukai vector `(r, c, s)` with `c` in K3-lattice coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MukaiVector {
    pub r: Rational,
    pub c: Vec<Rational>,
    pub s: Rational,
}

impl MukaiVector {
    pub fn new(r: Rational, c: Vec<Rational>, s: Rational) -> MukaiVector {
        MukaiVector { r, c, s }
    }

    /// `η_B(u) = (0, u, u·B)`.
    pub fn eta(k3: &Lattice, b: &[Rational], u: &[Rational]) -> MukaiVector {
        MukaiVector { r: Rational::zero(), c: u.to_vec(), s: k3.pair(u, b) }
    }

    pub fn flat(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.c.len() + 2);
        v.push(self.r.clone());
        v.extend(self.c.iter().cloned());
        v.push(self.s.clone());
        v
    }

    pub fn from_flat(v: &[Rational]) -> MukaiVector {
        let n = v.len();
        MukaiVector { r: v[0].clone(), c: v[1..n - 1].to_vec(), s: v[n - 1].clone() }
    }

    pub fn add(&self, o: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &o.r,
            c: self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect(),
            s: &self.s + &o.s,
        }
    }

    pub fn scale(&self, f: &Rational) -> MukaiVector {
        MukaiVector { r: &self.r * f, c: self.c.iter().map(|x| x * f).collect(), s: &self.s * f }
    }

    pub fn is_integral(&self) -> bool {
        self.r.is_integer() && self.s.is_integer() && self.c.iter().all(Rational::is_integer)
    }

    pub fn is_zero_middle(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_middle() {
            write!(f, "({}, 0, {})", self.r, self.s)
        } else {
            let c: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
            write!(f, "({}, [{}], {})", self.r, c.join(" "), self.s)
        }
    }
}

/// `c₁·c₂ − r₁s₂ − r₂s₁`.
pub fn mukai_pairing(k3: &Lattice, a: &MukaiVector, b: &MukaiVector) -> Result<Rational> {
    k3.check_vector(&a.c)?;
    k3.check_vector(&b.c)?;
    Ok(k3.pair(&a.c, &b.c) - &a.r * &b.s - &b.r * &a.s)
}

/// The Mukai lattice `H⁰ ⊕ H² ⊕ H⁴` in coordinates `(r, c, s)`.
pub fn mukai_lattice(k3: &Lattice) -> Lattice {
    let n = k3.rank();
    let mut g = IntMatrix::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            g[(i + 1, j + 1)] = k3.gram()[(i, j)].clone();
        }
    }
    g[(0, n + 1)] = BigInt::from(-1);
    g[(n + 1, 0)] = BigInt::from(-1);
    Lattice { gram: g }
}

/// Reduce `½A` to a B-field with `B·B = B·h = ½`, working in the first two
/// hyperbolic planes `(e₁, f₁, e₂, f₂)` with `h = e₁ + 3f₁`.
pub fn bfield_normalize(h: &[i64], a: &[i64]) -> Result<Vec<Rational>> {
    if h.len() != 4 || a.len() != 4 {
        return Err(Error::Dimension("expected coordinates on U ⊕ U".into()));
    }
    if h != [1, 3, 0, 0] {
        return Err(Error::Precondition("polarization must be e1 + 3 f1".into()));
    }
    let u2 = Lattice::hyperbolic_plane().power(2);
    let ar: Vec<Rational> = a.iter().map(|&x| Rational::from(x)).collect();
    let hr: Vec<Rational> = h.iter().map(|&x| Rational::from(x)).collect();
    let aa = u2.square(&ar).to_integer().expect("integral");
    if aa.mod_floor(&BigInt::from(8)) != BigInt::from(6) {
        return Err(Error::Precondition(format!("A·A = {aa} is not 6 mod 8")));
    }
    if u2.pair(&ar, &hr).to_integer().expect("integral").is_even() {
        return Err(Error::Precondition("A·h must be odd".into()));
    }
    let half = Rational::new(1, 2);
    let res: Vec<Rational> = a.iter().map(|&x| if x.rem_euclid(2) == 1 { half.clone() } else { Rational::zero() }).collect();
    if res[2] != half || res[3] != half {
        return Err(Error::Precondition("residue on the second plane must be ½e2 + ½f2".into()));
    }
    // first plane: choose the integral lift giving B·h = 3·e + f = ½
    let (e1, f1) = if res[0] == half && res[1].is_zero() {
        (half.clone(), Rational::integer(-1))
    } else if res[0].is_zero() && res[1] == half {
        (Rational::zero(), half.clone())
    } else {
        return Err(Error::Precondition("residue on the first plane must be ½e1 or ½f1".into()));
    };
    // second plane: ½e2 + t f2 contributes t to B·B
    let t = &half - Rational::integer(2) * &e1 * &f1;
    let b = vec![e1, f1, half.clone(), t];
    debug_assert_eq!(u2.square(&b), half);
    debug_assert_eq!(u2.pair(&b, &hr), half);
    Ok(b)
}

/// Result of the index computation for `η_B(Λ_B,prim) + Zφ(H) + Zφ(D)` in `v^⊥`.
#[derive(Clone, Debug)]
pub struct EmbeddingIndex {
    pub index: BigInt,
    /// Whether `φ(H)`, `φ(D)` and the image all lie in `v^⊥`; the index is
    /// taken in the saturation of their span, which is then `v^⊥` itself.
    pub in_v_perp: bool,
    pub invariant_factors: Vec<BigInt>,
    /// `η_B(2h − 24B)`, when `B` is a normalized order-two field.
    pub eta_u1: Option<MukaiVector>,
    /// `η_B(u₁) − φ(H) + 11φ(D)`.
    pub witness: Option<MukaiVector>,
    /// Order of `witness / index` in the quotient.
    pub witness_order: Option<BigInt>,
}

/// Index of the transcendental image plus `φ(H) = (−2, 2h−2B, 0)` and
/// `φ(D) = (2, 2B, 1)` in its saturation, which is `v^⊥` for `v = (2, 2B, 0)`
/// when `B` is normalized. Only `2B` integral is required.
pub fn eta_image_index(k3: &Lattice, h: &[Rational], b: &[Rational]) -> Result<EmbeddingIndex> {
    k3.check_vector(h)?;
    k3.check_vector(b)?;
    let two = Rational::integer(2);
    let b2: Vec<Rational> = b.iter().map(|x| x * &two).collect();
    if !b2.iter().all(Rational::is_integer) {
        return Err(Error::Precondition("2B must be integral".into()));
    }
    let hb = Sublattice::new(k3, RatMatrix::from_rows(vec![h.to_vec()]))?;
    let prim = orthogonal_complement(&hb)?;
    let (lam, _) = kernel_mod_pairing(&prim, b, &BigInt::one())?;
    let mukai = mukai_lattice(k3);
    let v = MukaiVector::new(two.clone(), b2.clone(), Rational::zero());
    let phi_h = MukaiVector::new(
        Rational::integer(-2),
        h.iter().zip(&b2).map(|(x, y)| x * &two - y).collect(),
        Rational::zero(),
    );
    let phi_d = MukaiVector::new(two.clone(), b2.clone(), Rational::one());
    let mut rows: Vec<Vec<Rational>> = (0..lam.rank())
        .map(|i| MukaiVector::eta(k3, b, lam.basis().row(i)).flat())
        .collect();
    rows.push(phi_h.flat());
    rows.push(phi_d.flat());
    let sum = Sublattice::new(&mukai, RatMatrix::from_rows(rows))?;
    // the saturation of the sum is v^⊥ exactly when every generator is orthogonal to v
    let in_v_perp = (0..sum.rank()).all(|i| mukai.pair(sum.basis().row(i), &v.flat()).is_zero());
    let int_basis = sum.basis().to_integer().ok_or_else(|| Error::Consistency("non-integral image vector".into()))?;
    let (snf, _, _) = smith_normal_form(&int_basis);
    let (_, index) = saturate_and_index(&sum)?;

    let (mut eta_u1, mut witness, mut witness_order) = (None, None, None);
    let half = Rational::new(1, 2);
    if k3.square(b) == half && k3.pair(b, h) == half && k3.square(h) == Rational::integer(6) {
        let u1: Vec<Rational> = h.iter().zip(b).map(|(x, y)| x * &two - y * &Rational::integer(24)).collect();
        let e = MukaiVector::eta(k3, b, &u1);
        let w = e.add(&phi_h.scale(&Rational::integer(-1))).add(&phi_d.scale(&Rational::integer(11)));
        if !index.is_zero() {
            let unit = w.scale(&Rational::from(&index).recip());
            if let Some(c) = sum.coordinates(&unit.flat()) {
                witness_order = Some(c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom())));
            }
        }
        eta_u1 = Some(e);
        witness = Some(w);
    }
    Ok(EmbeddingIndex { index, in_v_perp, invariant_factors: snf, eta_u1, witness, witness_order })
}

/// [`eta_image_index`] for a B-field normalized so that `B·B = B·h = ½`.
pub fn twisted_embedding_index(k3: &Lattice, h: &[Rational], b: &[Rational]) -> Result<EmbeddingIndex> {
    let half = Rational::new(1, 2);
    if k3.square(b) != half || k3.pair(b, h) != half {
        return Err(Error::Precondition("B-field is not normalized to B·B = B·h = ½".into()));
    }
    let r = eta_image_index(k3, h, b)?;
    if !r.in_v_perp {
        return Err(Error::Consistency("φ(H) or φ(D) not orthogonal to v".into()));
    }
    Ok(r)
}

/// Whether `h − B − ½A` is integral and pairs integrally with `B`.
pub fn glue_vector_in_lambda_b(k3: &Lattice, h: &[Rational], a: &[Rational], b: &[Rational]) -> Result<bool> {
    k3.check_vector(a)?;
    let half = Rational::new(1, 2);
    let g: Vec<Rational> = (0..k3.rank()).map(|i| &h[i] - &b[i] - &a[i] * &half).collect();
    Ok(g.iter().all(Rational::is_integer) && k3.pair(&g, b).is_integer())
}

/// Smith invariant factors of an integral matrix given as rows.
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
    smith_normal_form(&IntMatrix::from_rows(rows)).0
}

/// Convenience conversion for small integer vectors.
pub fn ratvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// Lossless `i64` view of a small integer, for reports.
pub fn small(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_is_even_unimodular_negative_definite() {
        let e8 = Lattice::e8_negative();
        assert!(e8.is_even());
        assert_eq!(e8.det(), BigInt::one());
        assert!(e8.is_negative_definite());
    }

    #[test]
    fn parse_matches_builders() {
        let l = Lattice::parse("U^3 + E8(-1)^2 + <-2>").unwrap();
        assert_eq!(l, Lattice::k3_n2());
        assert_eq!(l.rank(), 23);
        assert_eq!(l.det().abs(), BigInt::from(2));
        let m = Lattice::parse("[[22,2],[2,-2]]").unwrap();
        assert_eq!(m.det(), BigInt::from(-48));
        assert!(Lattice::parse("[[1,2],[3,4]]").is_err());
    }

    #[test]
    fn adjoin_half_vector() {
        let l = Lattice::from_rows(&[vec![22, 2], vec![2, -10]]).unwrap();
        let s = Sublattice::whole(&l);
        let glue = RatMatrix::from_rows(vec![vec![Rational::new(1, 2), Rational::new(1, 2)]]);
        let t = adjoin_rational_vectors(&s, &glue).unwrap();
        assert_eq!(t.gram(), &IntMatrix::from_rows(&[vec![4, -4], vec![-4, -10]]));
        let h = Lattice::rank_one(22);
        let bad = RatMatrix::from_rows(vec![vec![Rational::new(1, 2)]]);
        assert!(matches!(adjoin_rational_vectors(&Sublattice::whole(&h), &bad), Err(Error::GlueRejected(_))));
    }
}
