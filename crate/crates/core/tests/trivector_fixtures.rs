use hkcalc::algebra::Rational;
use hkcalc::trivector::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(case: PlaneCase) -> Trivector<Rationals> {
    let text = match case {
        PlaneCase::Case1 => CASE1_FIXTURE,
        PlaneCase::Case2 => CASE2_FIXTURE,
    };
    let fx = parse_fixture(text).unwrap();
    parse_trivector(&fx.sigma, &Rationals).unwrap()
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

#[test]
fn fixture_flags_match_declared_case() {
    for case in [PlaneCase::Case1, PlaneCase::Case2] {
        let text = if case == PlaneCase::Case1 { CASE1_FIXTURE } else { CASE2_FIXTURE };
        let fx = parse_fixture(text).unwrap();
        let [v7, v7p, v4, v4p] = case.flags();
        assert_eq!(fx.flags["V7"], v7);
        assert_eq!(fx.flags["V7'"], v7p);
        assert_eq!(fx.flags["V4"], v4);
        assert_eq!(fx.flags["V4'"], v4p);
        let r = plane_fixture_check(case, &fixture(case)).unwrap();
        assert!(r.passed(), "{case:?}: {:?}", r.failures());
    }
}

#[test]
fn broken_fixture_names_failure() {
    let mut s = fixture(PlaneCase::Case1);
    s.add_term([1, 2, 3], Rational::from(1)).unwrap();
    let r = plane_fixture_check(PlaneCase::Case1, &s).unwrap();
    assert_eq!(r.failures(), vec!["sigma(V4,V7,V7) = 0"]);
}

#[test]
fn rank_drop_on_special_components() {
    let s = fixture(PlaneCase::Case1);
    for x in [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 2, -3], [1, 0, 0, 0], [0, 1, 0, 0], [4, 7, 0, 0]] {
        assert!(skew_matrix_rank_at_point(&s, &q(&x)).unwrap() <= 6, "{x:?}");
    }
    let s = fixture(PlaneCase::Case2);
    assert!(skew_matrix_rank_at_point(&s, &q(&[1, 0, 0, 0])).unwrap() <= 6);
}

#[test]
fn generic_points_have_rank_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in [PlaneCase::Case1, PlaneCase::Case2] {
        let s = fixture(case);
        let mut n = 0;
        while n < 100 {
            let x = q(&(0..4).map(|_| rng.gen_range(-20..=20)).collect::<Vec<_>>());
            if on_special_components(case, &Rationals, &x) || surface_equation(case, &s, &x) == Rational::from(0) {
                continue;
            }
            assert_eq!(skew_matrix_rank_at_point(&s, &x).unwrap(), 8, "{case:?} at {x:?}");
            n += 1;
        }
    }
}

#[test]
fn reduction_mod_p_agrees() {
    let p = PrimeField::new(1_000_003).unwrap();
    for case in [PlaneCase::Case1, PlaneCase::Case2] {
        let s = fixture(case);
        let sp = s.reduce_mod(&p).unwrap();
        assert!(plane_fixture_check(case, &sp).unwrap().passed());
        for x in [[1i64, 0, 0, 0], [0, 0, 1, 0], [2, -1, 3, 5]] {
            let xp: Vec<u64> = x.iter().map(|&c| p.from_i64(c)).collect();
            assert_eq!(skew_matrix_rank_at_point(&s, &q(&x)).unwrap(), skew_matrix_rank_at_point(&sp, &xp).unwrap());
        }
    }
}

#[test]
fn generic_contraction_rank() {
    let p = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = Trivector::random(&p, DIM, &mut rng, |_| true);
    let v: Vec<u64> = (0..DIM).map(|_| p.sample(&mut rng)).collect();
    let (r, k) = contract_rank_kernel(&s, &v).unwrap();
    assert_eq!(r, 8);
    assert_eq!(k.dim(), 2);
    assert!(k.contains(&v));
}

#[test]
fn flag_vanishing_forces_x1() {
    // σ(V1, V6, V10) = 0 with V1 = <e0>, V6 = <e0..e5>
    let p = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = Trivector::random(&p, DIM, &mut rng, |t| !(t[0] == 0 && t[1] <= 5));
    let e0 = Subspace::coordinate(&p, DIM, &[0]).unwrap();
    let m = locus_membership(&s, Locus::X1, &e0).unwrap();
    assert!(m.member);
    assert!(m.rank.unwrap() <= 4);
    assert!(m.witness.unwrap().dim() >= 6);
}

#[test]
fn x7_rank_five_has_kernel_plane() {
    let p = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // supported on <e0..e4> inside V7 = <e0..e6>
    let s = Trivector::random(&p, DIM, &mut rng, |t| t[2] <= 4 || t[0] >= 7);
    let v7 = Subspace::coordinate(&p, DIM, &(0..7).collect::<Vec<_>>()).unwrap();
    let m = locus_membership(&s, Locus::X7, &v7).unwrap();
    assert!(m.member);
    assert_eq!(m.rank, Some(5));
    let w = m.witness.unwrap();
    assert_eq!(w.sum_dim(&Subspace::coordinate(&p, DIM, &[5, 6]).unwrap()), 2);
}

#[test]
fn hm_weights() {
    let w = [3, 3, 3, 3, 3, 3, 3, -7, -7, -7];
    let mut s = Trivector::zero(&Rationals, DIM);
    for i in 0..DIM {
        for j in i + 1..DIM {
            for k in j + 1..DIM {
                if k >= 7 {
                    s.add_term([i, j, k], Rational::from(1)).unwrap();
                }
            }
        }
    }
    assert_eq!(s.hm_weight_max(&w).unwrap(), Some(-1));
    assert_eq!(parse_trivector("[012]", &Rationals).unwrap().hm_weight_max(&w).unwrap(), Some(9));
    assert_eq!(Trivector::zero(&Rationals, DIM).hm_weight_max(&w).unwrap(), None);
    assert!(s.hm_weight_max(&[1; 10]).is_err());
}

#[test]
fn x3_sampling_finds_no_singular_points() {
    let p = PrimeField::new(1_000_003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = Trivector::random(&p, DIM, &mut rng, |_| true);
    assert_eq!(sample_singular_points(&s, 50, &mut rng), 0);
}

#[test]
fn x2_and_x3_membership() {
    let s = parse_trivector("[012]+[345]", &Rationals).unwrap();
    let sub = |idx: &[usize]| Subspace::coordinate(&Rationals, DIM, idx).unwrap();
    assert!(locus_membership(&s, Locus::X3, &sub(&[0, 1, 3])).unwrap().member);
    assert!(!locus_membership(&s, Locus::X3, &sub(&[0, 1, 2])).unwrap().member);
    assert!(locus_membership(&s, Locus::X2, &sub(&[6, 7])).unwrap().member);
    assert!(!locus_membership(&s, Locus::X2, &sub(&[0, 1])).unwrap().member);
    assert!(locus_membership(&s, Locus::X2, &sub(&[0])).is_err());
}
