use hkcalc::algebra::Rational;
use hkcalc::hk::{gram_from_degree4, Degree4Data};
use hkcalc::towers::*;
use hkcalc::variety::Variety;

fn r(x: i64) -> Rational {
    Rational::from(x)
}

#[test]
fn grassmannian_divisor_degree() {
    assert_eq!(divisor_degree(DivisorCase::Grassmannian).unwrap(), r(640));
}

#[test]
fn k3_normal_bundle() {
    assert_eq!(k3_normal_c10().unwrap(), r(2));
}

#[test]
fn peskine_smoke() {
    let p = peskine(PeskineSize::Smoke).unwrap();
    assert_eq!(p.h_top, r(2));
    assert!(p.pi_sq.is_none());
}

#[test]
fn peskine_full() {
    let p = peskine(PeskineSize::Full).unwrap();
    assert_eq!(p.dim, 6);
    assert_eq!(p.h_top, r(15));
    assert_eq!((p.pi_sq, p.pi_h3), (Some(r(4)), Some(r(7))));
    assert_eq!(p.t_identity, Some(true));
    assert_eq!(p.palatini, Some(r(7)));
}

#[test]
fn taut() {
    let t = taut_check().unwrap();
    assert_eq!(t.dim, 2);
    assert!(t.sub_is_3h && t.quot_is_2h && t.conic_trivial);
}

#[test]
fn divisor_quintuple_and_gram() {
    let h4 = fourfold_h4().unwrap();
    assert_eq!(h4, r(1452));
    let rest = divisor_restrictions().unwrap();
    assert_eq!(rest, [r(12), r(-12), r(-36), r(132)]);
    let d = degree4_data(h4, &rest);
    assert_eq!(d, Degree4Data::from_integers([1452, 132, -36, -12, 12]));
    let g = gram_from_degree4(&d).unwrap();
    assert_eq!(Degree4Data::of_gram(&g).unwrap(), d);
}

#[test]
fn chi_on_small_towers() {
    for v in [
        Variety::grassmannian(2, 4).unwrap(),
        Variety::grassmannian(2, 5).unwrap(),
        Variety::grassmannian(3, 6).unwrap(),
        Variety::projective_space(4, "U1", "Q").unwrap(),
    ] {
        assert!(chi_normalization(&v).unwrap());
    }
}
