//! Structural checks that are not tied to particular numbers.
//!
//! Each check returns `Ok(false)` on a violated property and `Err` only when
//! the computation itself fails. The proptest suites and the `properties`
//! scenario both call these.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{det_exact, smith_normal_form, IntMatrix, Rational};
use crate::chern::{
    ch_to_chern, chern_to_ch, exterior_power, symmetric_power, ChernData, GradedRing, RingClass,
};
use crate::error::Result;
use crate::hk::{fujiki_quartic, HKGram};
use crate::lattice::{saturate_and_index, Lattice, Sublattice};
use crate::variety::Variety;

fn subsets(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if acc.len() == k {
        out.push(acc.clone());
        return;
    }
    for i in start..n {
        acc.push(i);
        subsets(n, k, i + 1, acc, out);
        acc.pop();
    }
}

fn multisets(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if acc.len() == k {
        out.push(acc.clone());
        return;
    }
    for i in start..n {
        acc.push(i);
        multisets(n, k, i, acc, out);
        acc.pop();
    }
}

/// `∧^k` or `Sym^k` of a rank-`r` bundle through the λ-ring route, compared
/// with the product `∏(1 + Σ_{i∈S} x_i)` over the Chern roots.
pub fn lambda_matches_roots(r: usize, k: usize, symmetric: bool) -> Result<bool> {
    let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, usize)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    let trunc = r + 2;
    let ring = GradedRing::create(&gens, vec![], trunc)?;
    let x: Vec<RingClass> = (0..r).map(|i| ring.generator(i)).collect();
    let one = ring.one();
    // elementary symmetric functions
    let mut total = one.clone();
    for xi in &x {
        total = total.mul(&one.add(xi)?);
    }
    let e = ChernData::new(r as i64, (0..=r).map(|d| total.part(d)).collect())?;
    let mut idx = Vec::new();
    if symmetric {
        multisets(r, k, 0, &mut Vec::new(), &mut idx);
    } else {
        subsets(r, k, 0, &mut Vec::new(), &mut idx);
    }
    let mut expected = one.clone();
    for s in &idx {
        let mut root = ring.zero();
        for &i in s {
            root = root.add(&x[i])?;
        }
        expected = expected.mul(&one.add(&root)?).truncate(trunc);
    }
    let got = if symmetric { symmetric_power(&e, k) } else { exterior_power(&e, k) };
    if got.rank() != idx.len() as i64 {
        return Ok(false);
    }
    Ok((0..=trunc).all(|d| got.c(d) == expected.part(d)))
}

/// `ch` followed by its inverse returns the input.
pub fn ch_round_trip(r: usize, seed: u64) -> Result<bool> {
    let gens: Vec<(String, usize)> = (1..=r).map(|i| (format!("c{i}"), i)).collect();
    let g: Vec<(&str, usize)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let ring = GradedRing::create(&g, vec![], r + 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = vec![ring.one()];
    for i in 0..r {
        total.push(ring.generator(i).scale(&Rational::from(rng.gen_range(-3i64..=3))));
    }
    let c = ChernData::new(r as i64, total)?;
    let back = ch_to_chern(&chern_to_ch(&c), r as i64)?;
    Ok(back == c)
}

/// `(a + b)² = a² + 2ab + b²` for random classes on a Grassmannian.
pub fn ring_binomial(seed: u64) -> Result<bool> {
    let g = Variety::grassmannian(2, 5)?;
    let ring = g.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_class = |d: usize| -> Result<RingClass> {
        let coords = (0..ring.dim(d)).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect();
        RingClass::from_coordinates(ring, d, coords)
    };
    let a = random_class(1)?.add(&random_class(2)?)?;
    let b = random_class(1)?.add(&random_class(3)?)?;
    let s = a.add(&b)?;
    let lhs = s.mul(&s);
    let rhs = a.mul(&a).add(&a.mul(&b).scale(&Rational::from(2)))?.add(&b.mul(&b))?;
    Ok(lhs == rhs)
}

fn partitions_in_box(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for p in (0..=max).rev() {
            acc.push(p);
            rec(k, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, m, &mut Vec::new(), &mut out);
    out
}

/// `∫σ_λ σ_μ = δ_{μ, λ^c}` for all pairs of complementary degree on `Gr(k, n)`.
pub fn schubert_duality(k: usize, n: usize) -> Result<bool> {
    let g = Variety::grassmannian(k, n)?;
    let m = n - k;
    let parts = partitions_in_box(k, m);
    let classes: Vec<RingClass> = parts.iter().map(|l| g.schubert_cycle(l)).collect::<Result<_>>()?;
    for (i, l) in parts.iter().enumerate() {
        let dual: Vec<usize> = l.iter().rev().map(|&p| m - p).collect();
        for (j, mu) in parts.iter().enumerate() {
            if l.iter().sum::<usize>() + mu.iter().sum::<usize>() != g.dim() {
                continue;
            }
            let expected = Rational::from(i64::from(*mu == dual));
            if g.integral(&classes[i].mul(&classes[j]))? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Product of random elementary matrices with its inverse.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        // u ← E u with E = 1 + c e_ij; inv ← inv E⁻¹
        for col in 0..n {
            let t = &u[(j, col)] * &c;
            u[(i, col)] += t;
        }
        for row in 0..n {
            let t = &inv[(row, i)] * &c;
            inv[(row, j)] -= t;
        }
    }
    (u, inv)
}

/// Determinant, invariant factors and saturation index are unchanged by a
/// random change of basis of the ambient lattice and of the sublattice.
pub fn lattice_invariants_stable(n: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // positive definite, so every sublattice is nondegenerate
    let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = (0..n).map(|k| a[i][k] * a[j][k]).sum::<i64>() + i64::from(i == j);
        }
    }
    let gram = IntMatrix::from_rows(&rows);
    let (u, uinv) = random_unimodular(n, 3 * n, &mut rng);
    let gram2 = u.mul(&gram)?.mul(&u.transpose())?;
    if det_exact(&gram)? != det_exact(&gram2)? || smith_normal_form(&gram).0 != smith_normal_form(&gram2).0 {
        return Ok(false);
    }
    let l1 = Lattice::new(gram)?;
    let l2 = Lattice::new(gram2)?;
    let k = rng.gen_range(1..n);
    let sub: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
    let s = IntMatrix::from_rows(&sub);
    if s.rank() < k {
        return Ok(true);
    }
    let (v, _) = random_unimodular(k, 2 * k, &mut rng);
    // x ↦ x·U⁻¹ carries old coordinates to new ones
    let s2 = v.mul(&s)?.mul(&uinv)?;
    let sub1 = Sublattice::new(&l1, s.to_rational())?;
    let sub2 = Sublattice::new(&l2, s2.to_rational())?;
    let (_, i1) = saturate_and_index(&sub1)?;
    let (_, i2) = saturate_and_index(&sub2)?;
    Ok(i1 == i2 && sub1.disc() == sub2.disc())
}

/// Fujiki's relation is symmetric in its four arguments and the degree-4
/// numbers of a random rank-2 form give back the form.
pub fn fujiki_symmetric(seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, c) = (rng.gen_range(1..=30i64), rng.gen_range(-10..=10i64), rng.gen_range(-30..=30i64));
    let g = HKGram::from_integers(&["H", "D"], &[vec![2 * a, b], vec![b, c]])?;
    let v = |rng: &mut ChaCha8Rng| -> Vec<Rational> { (0..2).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect() };
    let xs = [v(&mut rng), v(&mut rng), v(&mut rng), v(&mut rng)];
    let base = fujiki_quartic(&g, &xs[0], &xs[1], &xs[2], &xs[3])?;
    for p in [[1, 0, 2, 3], [2, 3, 0, 1], [3, 2, 1, 0], [0, 2, 3, 1]] {
        if fujiki_quartic(&g, &xs[p[0]], &xs[p[1]], &xs[p[2]], &xs[p[3]])? != base {
            return Ok(false);
        }
    }
    let data = crate::hk::Degree4Data::of_gram(&g)?;
    let back = crate::hk::gram_from_degree4(&data)?;
    Ok(crate::hk::Degree4Data::of_gram(&back)? == data)
}

/// Swapping two arguments of a trivector flips the sign of its value.
pub fn trivector_antisymmetric(seed: u64) -> Result<bool> {
    use crate::trivector::{Field, PrimeField, Trivector, DIM};
    let p = PrimeField::new(10007)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Trivector::random(&p, DIM, &mut rng, |_| true);
    let mut v = || (0..DIM).map(|_| p.sample(&mut rng)).collect::<Vec<_>>();
    let (x, y, z) = (v(), v(), v());
    let a = s.eval(&x, &y, &z);
    Ok(s.eval(&y, &x, &z) == p.neg(&a) && s.eval(&x, &z, &y) == p.neg(&a) && s.eval(&x, &x, &z) == 0)
}

/// χ-normalization on the plain towers used by the scenarios.
pub fn chi_on_towers() -> Result<bool> {
    let point = Variety::point();
    let towers = [
        Variety::grassmannian(2, 4)?,
        Variety::grassmannian(2, 5)?,
        Variety::grassmannian(3, 6)?,
        Variety::grassmannian(2, 7)?,
        Variety::grassmannian(3, 5)?,
        Variety::projective_space(5, "U1", "Q")?,
        Variety::flag_bundle(&point, &crate::chern::BundleExpr::Trivial(6), &[1, 2, 3], &["A", "B", "C"])?,
    ];
    for v in &towers {
        if !crate::towers::chi_normalization(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
