use hkcalc::algebra::{q, Rational};
use hkcalc::hk::*;

#[test]
fn hyperplane_route() {
    let c = dv28_constants(Dv28Route::Hyperplane, &q(5, 11)).unwrap();
    assert_eq!(c.q_ll2, Rational::from(2));
    assert_eq!(c.c, q(1, 22));
    assert_eq!(c.total_sq, Rational::from(3));
    assert_eq!(c.x0_sq, q(28, 11));
    assert_eq!(c.rejected, vec![(Rational::from(-2), q(-5, 3))]);
}

#[test]
fn peskine_route() {
    let c = dv28_constants(Dv28Route::Peskine, &q(27, 11)).unwrap();
    assert_eq!(c.c, q(1, 22));
    assert_eq!(c.total_sq, Rational::from(5));
    let t = palatini_part_candidates(&q(27, 11)).unwrap();
    assert_eq!(t, vec![q(3, 11), q(-3, 11)]);
    let m = peskine_middle_gram(&t[0], &c.total_sq);
    let ints: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    assert_eq!(ints, vec![vec![15, 7, 6], vec![7, 4, 3], vec![6, 3, 5]]);
}

#[test]
fn plane_products() {
    assert_eq!(disjoint_planes_solve(&Rational::from(-10), &Rational::from(-10)).unwrap(), vec![Rational::from(-2), Rational::from(2)]);
    let g = HKGram::from_integers(&["λ"], &[vec![-10]]).unwrap();
    let l = g.basis_vector(0);
    let e = HK2Class::qdual(Rational::from(1)).mul(&HK2Class::product(Rational::from(1), &l, &l));
    assert_eq!(hk4_eval(&g, &e).unwrap(), Rational::from(-250));
}

#[test]
fn inconsistent_degree4_rejected() {
    let mut d = Degree4Data::from_integers([1452, 132, -36, -12, 12]);
    assert!(gram_from_degree4(&d).is_ok());
    d.d4 = Rational::from(13);
    assert!(gram_from_degree4(&d).is_err());
}
