use hkcalc::algebra::{IntMatrix, RatMatrix, Rational};
use hkcalc::fixtures;
use hkcalc::lattice::*;
use num_bigint::BigInt;

fn rows(v: &[Vec<i64>]) -> RatMatrix {
    IntMatrix::from_rows(v).to_rational()
}

#[test]
fn dv24_fixture() {
    let l = fixtures::hk_lattice();
    let (h, d) = (fixtures::polarization(), fixtures::ruled_divisor());
    let s = Sublattice::new(&l, rows(&[h.clone(), d.clone()])).unwrap();
    assert_eq!(s.gram(), &IntMatrix::from_rows(&[vec![22, 2], vec![2, -2]]));
    let hb: Vec<BigInt> = h.iter().map(|&x| x.into()).collect();
    let db: Vec<BigInt> = d.iter().map(|&x| x.into()).collect();
    assert_eq!(divisibility(&l, &hb).unwrap(), BigInt::from(2));
    assert_eq!(divisibility(&l, &db).unwrap(), BigInt::from(1));
    let (_, idx) = saturate_and_index(&s).unwrap();
    assert_eq!(idx, BigInt::from(1));
    let c = orthogonal_complement(&s).unwrap();
    assert_eq!(c.rank(), 21);
    let (d, snf) = disc_and_group(&c.as_lattice()).unwrap();
    assert_eq!(d, BigInt::from(24));
    assert_eq!(snf.last(), Some(&BigInt::from(24)));
    let ch = orthogonal_complement(&Sublattice::new(&l, rows(&[h])).unwrap()).unwrap();
    assert_eq!((ch.rank(), ch.disc()), (22, BigInt::from(11)));
}

#[test]
fn twisted_index() {
    let k3 = fixtures::k3_lattice();
    let h = ratvec(&fixtures::k3_polarization());
    for a in fixtures::brauer_class_lifts() {
        let b = bfield_normalize(&fixtures::k3_polarization()[..4], &a[..4]).unwrap();
        let b = fixtures::k3_from_u2(&b);
        let ar = ratvec(&a);
        assert!(glue_vector_in_lambda_b(&k3, &h, &ar, &b).unwrap());
        let hs = Sublattice::new(&k3, RatMatrix::from_rows(vec![h.clone()])).unwrap();
        let prim = orthogonal_complement(&hs).unwrap();
        let (_, i2) = kernel_mod_pairing(&prim, &ar, &BigInt::from(2)).unwrap();
        assert_eq!(i2, BigInt::from(2));
        let r = twisted_embedding_index(&k3, &h, &b).unwrap();
        assert_eq!(r.eta_u1.as_ref().map(|w| w.s.clone()), Some(Rational::from(-11)));
        assert_eq!(r.index, BigInt::from(24));
        assert_eq!(r.witness.unwrap().to_string(), "(24, 0, 0)");
    }
    let zero = ratvec(&[0; 22]);
    let r = eta_image_index(&k3, &h, &zero).unwrap();
    assert_eq!(r.index, BigInt::from(2));
    assert!(!r.in_v_perp);
}

#[test]
fn arithmetic_obstructions() {
    let f1 = IntMatrix::from_rows(&[vec![22, 2], vec![2, -2]]);
    let f2 = IntMatrix::from_rows(&[vec![4, -4], vec![-4, -10]]);
    assert_eq!(nonrepresentability_mod(&f1, &BigInt::from(-10), 25).unwrap(), Representability::Obstructed);
    assert_eq!(nonrepresentability_mod(&f2, &BigInt::from(28), 49).unwrap(), Representability::Obstructed);
    assert_eq!(bounded_search(&f1, &BigInt::from(-10), 50).unwrap(), None);
    assert_eq!(bounded_search(&f2, &BigInt::from(28), 50).unwrap(), None);
    // 22 is represented by the first form
    assert!(matches!(nonrepresentability_mod(&f1, &BigInt::from(22), 25).unwrap(), Representability::Inconclusive { .. }));
}
