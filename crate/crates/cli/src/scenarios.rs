//! The registered scenarios. Each returns its values as canonical strings in
//! a fixed order; comparison against the goldens happens in the runner.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hkcalc::algebra::{det_exact, smith_normal_form, solve_right, IntMatrix, RatMatrix, Rational};
use hkcalc::fixtures;
use hkcalc::hk::{self, Dv28Route, HK2Class, HKGram};
use hkcalc::lattice::{self, Lattice, Representability, Sublattice};
use hkcalc::towers::{self, DivisorCase, PeskineSize};
use hkcalc::trivector::{self as tv, PlaneCase, Rationals};
use hkcalc::variety::{schubert_gram, Variety};
use hkcalc::Result;

pub type Values = Vec<(String, String)>;

#[derive(Clone, Debug, Default)]
pub struct Context {
    pub seed: u64,
}

pub struct Scenario {
    pub name: &'static str,
    pub run: fn(&Context) -> Result<Values>,
}

pub const REGISTRY: &[Scenario] = &[
    Scenario { name: "divisor-degrees", run: divisor_degrees },
    Scenario { name: "schubert-gram", run: schubert_gram_scenario },
    Scenario { name: "vanishing-projection", run: vanishing_projection },
    Scenario { name: "sigma443-lattice", run: sigma443 },
    Scenario { name: "sigma722-lattice", run: sigma722 },
    Scenario { name: "k3-normal", run: k3_normal },
    Scenario { name: "peskine", run: peskine },
    Scenario { name: "taut-check", run: taut_check },
    Scenario { name: "dv-divisor", run: dv_divisor },
    Scenario { name: "plane-lattices", run: plane_lattices },
    Scenario { name: "nonrep", run: nonrep },
    Scenario { name: "mukai", run: mukai },
    Scenario { name: "dv28-constants", run: dv28_constants },
    Scenario { name: "trivector-fixtures", run: trivector_fixtures },
    Scenario { name: "properties", run: properties },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    REGISTRY.iter().find(|s| s.name == name)
}

fn v(name: impl Into<String>, value: impl ToString) -> (String, String) {
    (name.into(), value.to_string())
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn matrix<T: ToString>(rows: &[Vec<T>]) -> String {
    format!("[{}]", rows.iter().map(|r| list(r)).collect::<Vec<_>>().join(", "))
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.row_vecs()
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn divisor_degrees(_: &Context) -> Result<Values> {
    DivisorCase::ALL.iter().map(|&c| Ok(v(c.name(), towers::divisor_degree(c)?))).collect()
}

/// Schubert classes of codimension 10 on `Gr(3, 10)`, in the displayed order.
pub const GRAM_BASIS: [[usize; 3]; 10] =
    [[7, 3, 0], [7, 2, 1], [6, 4, 0], [6, 3, 1], [6, 2, 2], [5, 5, 0], [5, 4, 1], [5, 3, 2], [4, 4, 2], [4, 3, 3]];

fn label(l: &[usize]) -> String {
    l.iter().map(ToString::to_string).collect()
}

/// `∫ α·β·σ₁` on `Gr(3, 10)` over [`GRAM_BASIS`].
pub fn middle_gram() -> Result<IntMatrix> {
    let g = Variety::grassmannian(3, 10)?;
    let basis: Vec<Vec<usize>> = GRAM_BASIS.iter().map(|b| b.to_vec()).collect();
    schubert_gram(&g, &basis, &basis, &[1, 0, 0])
}

fn schubert_gram_scenario(_: &Context) -> Result<Values> {
    let m = middle_gram()?;
    let mut out: Values = GRAM_BASIS.iter().zip(int_rows(&m)).map(|(b, r)| v(format!("row {}", label(b)), list(&r))).collect();
    out.push(v("det", det_exact(&m)?));
    Ok(out)
}

fn basis_index(l: [usize; 3]) -> usize {
    GRAM_BASIS.iter().position(|b| *b == l).expect("basis element")
}

/// `x` with `Gram·x = e_433`, i.e. the class pairing to 1 with `σ₄₃₃` only.
pub fn vanishing_part() -> Result<Vec<Rational>> {
    let m = middle_gram()?;
    let mut e = vec![Rational::from(0); GRAM_BASIS.len()];
    e[basis_index([4, 3, 3])] = Rational::from(1);
    solve_right(&m.to_rational(), &e).ok_or_else(|| hkcalc::Error::NoSolution("singular Schubert Gram matrix".into()))
}

fn scaled(xs: &[Rational]) -> String {
    let den = xs.iter().fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denom()));
    let nums: Vec<BigInt> = xs.iter().map(|x| (x * &Rational::from(den.clone())).numer()).collect();
    format!("(1/{den}){}", tuple(&nums))
}

fn vanishing_projection(_: &Context) -> Result<Values> {
    let x = vanishing_part()?;
    let z1_sq = x[basis_index([4, 3, 3])].clone();
    Ok(vec![v("z1 coefficients", scaled(&x)), v("z1^2", z1_sq)])
}

fn adjoined_lattice(pair_with: [usize; 3], z_sq: i64) -> Result<IntMatrix> {
    let m = middle_gram()?;
    let n = m.rows();
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = m[(i, j)].clone();
        }
    }
    let k = basis_index(pair_with);
    g[(k, n)] = BigInt::from(1);
    g[(n, k)] = BigInt::from(1);
    g[(n, n)] = BigInt::from(z_sq);
    Ok(g)
}

fn sigma443(_: &Context) -> Result<Values> {
    let g = adjoined_lattice([4, 3, 3], 3)?;
    let d = det_exact(&g)?;
    Ok(vec![v("rank", g.rows()), v("|det|", d.magnitude()), v("SNF", tuple(&smith_normal_form(&g).0))])
}

fn sigma722(_: &Context) -> Result<Values> {
    // σ₅₅₀ is dual to σ₇₂₂ in the 3×7 box
    let g = adjoined_lattice([5, 5, 0], 2)?;
    let d = det_exact(&g)?;
    let snf = smith_normal_form(&g).0;
    Ok(vec![v("rank", g.rows()), v("|det|", d.magnitude()), v("SNF tail", tuple(&snf[snf.len() - 2..]))])
}

fn k3_normal(_: &Context) -> Result<Values> {
    Ok(vec![v("c10(N)", towers::k3_normal_c10()?)])
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("n/a".into(), |x| x.to_string())
}

fn peskine(_: &Context) -> Result<Values> {
    let p = towers::peskine(PeskineSize::Full)?;
    let s = towers::peskine(PeskineSize::Smoke)?;
    Ok(vec![
        v("dim", p.dim),
        v("h^6", p.h_top),
        v("pi^2", opt(p.pi_sq)),
        v("pi.h^3", opt(p.pi_h3)),
        v("t = 17/3 h^4 - 7 pi.h", opt(p.t_identity)),
        v("palatini degree", opt(p.palatini)),
        v("smoke tower h^2", s.h_top),
    ])
}

fn taut_check(_: &Context) -> Result<Values> {
    let t = towers::taut_check()?;
    Ok(vec![
        v("dim", t.dim),
        v("h^2", t.h_sq),
        v("c1(det U4/1^dual) = 3h", t.sub_is_3h),
        v("c1(det U8/4) = 2h", t.quot_is_2h),
        v("c1((det E^dual)^2 (x) L^3) = 0", t.conic_trivial),
    ])
}

fn dv_divisor(_: &Context) -> Result<Values> {
    let h4 = towers::fourfold_h4()?;
    let rest = towers::divisor_restrictions()?;
    let d = towers::degree4_data(h4, &rest);
    let g = hk::gram_from_degree4(&d)?;
    let back = hk::Degree4Data::of_gram(&g)?;
    let e = [g.basis_vector(0), g.basis_vector(1)];
    let q: Vec<Vec<Rational>> = e.iter().map(|x| e.iter().map(|y| g.pair(x, y)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let det = &(&q[0][0] * &q[1][1]) - &(&q[0][1] * &q[1][0]);
    // the explicit embedding of the same form
    let l = fixtures::hk_lattice();
    let s = Sublattice::from_integer_rows(&l, &[fixtures::polarization(), fixtures::ruled_divisor()])?;
    let perp = lattice::orthogonal_complement(&s)?;
    Ok(vec![
        v("D^4", &d.d4),
        v("D^3.H", &d.hd3),
        v("D^2.H^2", &d.h2d2),
        v("D.H^3", &d.h3d),
        v("H^4", &d.h4),
        v("BBF Gram", matrix(&q)),
        v("consistent on all five", back == d),
        v("disc", det.abs()),
        v("Gram of <H, D> in the lattice", matrix(&int_rows(s.gram()))),
        v("orthogonal complement rank", perp.rank()),
        v("orthogonal complement disc", perp.disc()),
    ])
}

fn plane_lattices(_: &Context) -> Result<Values> {
    let l = fixtures::hk_lattice();
    let (h, lam) = (fixtures::polarization(), fixtures::plane_class());
    let s = Sublattice::from_integer_rows(&l, &[h.clone(), lam.clone()])?;
    let hr = lattice::ratvec(&h);
    let lr = lattice::ratvec(&lam);
    let half = Rational::new(1, 2);
    let glue: Vec<Rational> = hr.iter().zip(&lr).map(|(a, b)| (a + b) * &half).collect();
    let over = lattice::adjoin_rational_vectors(&s, &RatMatrix::from_rows(vec![glue.clone()]))?;
    let basis = [glue, lr];
    let gram: Vec<Vec<Rational>> = basis.iter().map(|x| basis.iter().map(|y| l.pair(x, y)).collect()).collect();
    let over_det = &gram[0][0] * &gram[1][1] - &gram[0][1] * &gram[1][0];
    let half_h: Vec<Rational> = hr.iter().map(|a| a * &half).collect();
    let half_h_rejected = lattice::adjoin_rational_vectors(&s, &RatMatrix::from_rows(vec![half_h])).is_err();

    let ts = hk::palatini_part_candidates(&Rational::new(27, 11))?;
    let mid = hk::peskine_middle_gram(&ts[0], &Rational::from(5));
    let mid_int = IntMatrix::from_rows(&mid.iter().map(|r| r.iter().map(|x| x.to_integer().expect("integral")).collect()).collect::<Vec<Vec<BigInt>>>());
    let diag = Lattice::from_rows(&[vec![22, 0], vec![0, -2]])?;
    let small = Lattice::from_rows(&[vec![15, 7], vec![7, 4]])?;
    Ok(vec![
        v("Gram <H, lambda>", matrix(&int_rows(s.gram()))),
        v("det <H, lambda>", s.as_lattice().det()),
        v("overlattice with (H + lambda)/2 integral", over.rank() == 2),
        v("overlattice Gram", matrix(&gram)),
        v("overlattice det", over_det),
        v("overlattice even", over.is_even()),
        v("H/2 rejected as glue", half_h_rejected),
        v("middle Gram", matrix(&int_rows(&mid_int))),
        v("middle Gram SNF", tuple(&smith_normal_form(&mid_int).0)),
        v("disc diag(22, -2)", lattice::disc_and_group(&diag)?.0),
        v("det [[15, 7], [7, 4]]", small.det()),
    ])
}

fn nonrep(_: &Context) -> Result<Values> {
    let f1 = IntMatrix::from_rows(&[vec![22, 2], vec![2, -2]]);
    let f2 = IntMatrix::from_rows(&[vec![4, -4], vec![-4, -10]]);
    let show = |r: Representability| match r {
        Representability::Obstructed => "no solutions".to_string(),
        Representability::Inconclusive { witness } => format!("solution {witness:?}"),
    };
    let search = |x: Option<(i64, i64)>| x.map_or("no solutions".to_string(), |w| format!("solution {w:?}"));
    Ok(vec![
        v("22a^2 + 4ab - 2b^2 = -10 mod 25", show(lattice::nonrepresentability_mod(&f1, &BigInt::from(-10), 25)?)),
        v("4a^2 - 8ab - 10b^2 = 28 mod 49", show(lattice::nonrepresentability_mod(&f2, &BigInt::from(28), 49)?)),
        v("22a^2 + 4ab - 2b^2 = -10, |a|,|b| <= 50", search(lattice::bounded_search(&f1, &BigInt::from(-10), 50)?)),
        v("4a^2 - 8ab - 10b^2 = 28, |a|,|b| <= 50", search(lattice::bounded_search(&f2, &BigInt::from(28), 50)?)),
    ])
}

fn combination(v: &[Rational]) -> String {
    const NAMES: [&str; 4] = ["e1", "f1", "e2", "f2"];
    let mut out = String::new();
    for (x, n) in v.iter().zip(NAMES) {
        if x.is_zero() {
            continue;
        }
        let (neg, mag) = if x.is_negative() { (true, -x) } else { (false, x.clone()) };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Rational::from(1) {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(n);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn mukai(_: &Context) -> Result<Values> {
    let k3 = fixtures::k3_lattice();
    let h = lattice::ratvec(&fixtures::k3_polarization());
    let mut out = Vec::new();
    for (i, a) in fixtures::brauer_class_lifts().iter().enumerate() {
        let b4 = lattice::bfield_normalize(&fixtures::k3_polarization()[..4], &a[..4])?;
        let b = fixtures::k3_from_u2(&b4);
        let tag = i + 1;
        out.push(v(format!("B{tag}"), combination(&b4)));
        out.push(v(format!("B{tag}.B{tag}"), k3.pair(&b, &b)));
        out.push(v(format!("B{tag}.h"), k3.pair(&b, &h)));
        let twice_b: Vec<Rational> = b.iter().map(|x| x * &Rational::from(2)).collect();
        let vv = lattice::MukaiVector::new(Rational::from(2), twice_b, Rational::from(0));
        out.push(v(format!("v^2, v = (2, 2B{tag}, 0)"), lattice::mukai_pairing(&k3, &vv, &vv)?));
        let u: Vec<Rational> = h.iter().zip(&b).map(|(x, y)| x * &Rational::from(2) - y * &Rational::from(24)).collect();
        let eta = lattice::MukaiVector::eta(&k3, &b, &u);
        let eta_s = if eta.r.is_zero() && eta.c == u {
            format!("(0, 2h - 24B, {})", eta.s)
        } else {
            eta.to_string()
        };
        out.push(v(format!("eta_B{tag}(2h - 24B{tag})"), eta_s));
        let idx = lattice::twisted_embedding_index(&k3, &h, &b)?;
        out.push(v(format!("embedding index, B{tag}"), &idx.index));
        out.push(v(format!("witness, B{tag}"), opt(idx.witness.as_ref())));
        out.push(v(format!("h - B{tag} - A/2 in Lambda_B{tag}"), lattice::glue_vector_in_lambda_b(&k3, &h, &lattice::ratvec(a), &b)?));
    }
    let zero = lattice::ratvec(&[0; fixtures::K3_RANK]);
    let control = lattice::eta_image_index(&k3, &h, &zero)?;
    out.push(v("index in the saturation, B = 0", control.index));
    Ok(out)
}

fn dv28_constants(_: &Context) -> Result<Values> {
    let g = HKGram::from_integers(&["lambda"], &[vec![-10]])?;
    let l = g.basis_vector(0);
    let p = HK2Class::plane(&l);
    let p_sq = hk::hk4_eval(&g, &p.mul(&p))?;
    let qd = HK2Class::qdual(Rational::from(1)).mul(&HK2Class::product(Rational::from(1), &l, &l));
    let qd_l2 = hk::hk4_eval(&g, &qd)?;
    let roots = hk::disjoint_planes_solve(&Rational::from(-10), &Rational::from(-10))?;
    let hyp = hk::dv28_constants(Dv28Route::Hyperplane, &Rational::new(5, 11))?;
    let pes = hk::dv28_constants(Dv28Route::Peskine, &Rational::new(27, 11))?;
    let rejected: Vec<String> = hyp.rejected.iter().map(|(q, z)| format!("q = {q}: z^2 = {z}")).collect();
    let ts = hk::palatini_part_candidates(&Rational::new(27, 11))?;
    Ok(vec![
        v("[P]^2", p_sq),
        v("qdual.lambda^2", qd_l2),
        v("q(lambda, lambda') for disjoint planes", list(&roots)),
        v("q(lambda, lambda')", &hyp.q_ll2),
        v("c", &hyp.c),
        v("z^2", &hyp.total_sq),
        v("z0^2", &hyp.x0_sq),
        v("rejected", list(&rejected)),
        v("c, second route", &pes.c),
        v("(z.h)^2", &pes.total_sq),
        v("x1", format!("({})(h^3 + pi)", ts[0])),
    ])
}

fn trivector_fixtures(ctx: &Context) -> Result<Values> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let q = |xs: [i64; 4]| xs.map(Rational::from).to_vec();
    for (case, text, tag) in [(PlaneCase::Case1, tv::CASE1_FIXTURE, 1), (PlaneCase::Case2, tv::CASE2_FIXTURE, 2)] {
        let fx = tv::parse_fixture(text)?;
        let s = tv::parse_trivector(&fx.sigma, &Rationals)?;
        let r = tv::plane_fixture_check(case, &s)?;
        let status = if r.passed() { "pass".to_string() } else { format!("failed: {}", r.failures().join("; ")) };
        out.push(v(format!("case {tag} flag conditions"), status));
        out.push(v(format!("case {tag} dim V4 meet V4'"), r.v4_meet));
        out.push(v(format!("case {tag} dim V4 + V4'"), r.v4_sum));
        let mut line_max = |pick: fn(i64, i64) -> [i64; 4]| -> Result<usize> {
            let mut m = 0;
            for _ in 0..20 {
                let (a, b) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
                if a == 0 && b == 0 {
                    continue;
                }
                m = m.max(tv::skew_matrix_rank_at_point(&s, &q(pick(a, b)))?);
            }
            Ok(m)
        };
        match case {
            PlaneCase::Case1 => {
                out.push(v("case 1 max rank on x3 = x4 = 0", line_max(|a, b| [0, 0, a, b])?));
                out.push(v("case 1 max rank on x5 = x6 = 0", line_max(|a, b| [a, b, 0, 0])?));
            }
            PlaneCase::Case2 => {
                out.push(v("case 2 rank at x4 = x5 = x6 = 0", tv::skew_matrix_rank_at_point(&s, &q([1, 0, 0, 0]))?));
            }
        }
        let mut hits = 0;
        let mut eights = 0;
        while hits < 100 {
            let x: Vec<Rational> = (0..4).map(|_| Rational::from(rng.gen_range(-30i64..=30))).collect();
            if tv::on_special_components(case, &Rationals, &x) || tv::surface_equation(case, &s, &x).is_zero() {
                continue;
            }
            hits += 1;
            if tv::skew_matrix_rank_at_point(&s, &x)? == 8 {
                eights += 1;
            }
        }
        out.push(v(format!("case {tag} off-locus samples of rank 8"), format!("{eights}/{hits}")));
    }
    let w = [3, 3, 3, 3, 3, 3, 3, -7, -7, -7];
    let mut vanishing = tv::Trivector::zero(&Rationals, tv::DIM);
    for i in 0..10 {
        for j in i + 1..10 {
            for k in j + 1..10 {
                if k >= 7 {
                    vanishing.add_term([i, j, k], Rational::from(1))?;
                }
            }
        }
    }
    let show = |m: Option<i64>| m.map_or("-inf".to_string(), |x| x.to_string());
    out.push(v("weight max, sigma vanishing on V7", show(vanishing.hm_weight_max(&w)?)));
    out.push(v("weight max, [012]", show(tv::parse_trivector("[012]", &Rationals)?.hm_weight_max(&w)?)));
    out.push(v("weight max, sigma = 0", show(tv::Trivector::zero(&Rationals, tv::DIM).hm_weight_max(&w)?)));
    Ok(out)
}

fn properties(ctx: &Context) -> Result<Values> {
    use hkcalc::properties as p;
    let mut wedge = true;
    let mut sym = true;
    for r in 1..=4 {
        for k in 0..=r {
            wedge &= p::lambda_matches_roots(r, k, false)?;
        }
        for k in 0..=3 {
            sym &= p::lambda_matches_roots(r, k, true)?;
        }
    }
    let mut duality = Vec::new();
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        duality.push(v(format!("Schubert duality on Gr({k},{n})"), p::schubert_duality(k, n)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut all = |f: &dyn Fn(u64) -> Result<bool>| -> Result<bool> {
        for _ in 0..16 {
            if !f(rng.gen())? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let lattice_ok = all(&|s| p::lattice_invariants_stable(2 + (s % 4) as usize, s))?;
    let ch_ok = all(&|s| p::ch_round_trip(1 + (s % 4) as usize, s))?;
    let ring_ok = all(&p::ring_binomial)?;
    let fujiki_ok = all(&p::fujiki_symmetric)?;
    let anti_ok = all(&p::trivector_antisymmetric)?;
    let mut out = vec![v("exterior powers vs Chern roots, rank <= 4", wedge), v("symmetric powers vs Chern roots, rank <= 4", sym)];
    out.extend(duality);
    out.extend([
        v("integral of c_top(T) equals chi", p::chi_on_towers()?),
        v("det, SNF, saturation index under base change", lattice_ok),
        v("ch round trip", ch_ok),
        v("(a + b)^2 = a^2 + 2ab + b^2", ring_ok),
        v("Fujiki symmetry and degree-4 round trip", fujiki_ok),
        v("trivector antisymmetry", anti_ok),
    ]);
    Ok(out)
}
