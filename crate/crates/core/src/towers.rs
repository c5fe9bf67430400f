//! Concrete towers and the intersection numbers read off them.
//!
//! Each function builds its flag-bundle tower from scratch, so they are
//! independent and may run in parallel.

use crate::algebra::{q, Rational};
use crate::chern::BundleExpr as B;
use crate::error::Result;
use crate::hk::Degree4Data;
use crate::variety::{invariant_divisor_degree, Variety};

fn a(s: &str) -> B {
    B::atom(s)
}

/// The three families of invariant divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorCase {
    /// `Gr(3, 10)`, bundle `∧³U ⊕ ∧²U ⊗ Q`.
    Grassmannian,
    /// `Fl(1, 6; 10)`, bundle `U₁ ⊗ ∧²U₆/₁ ⊕ U₁ ⊗ U₆/₁ ⊗ Q`.
    Flag1,
    /// `Fl(4, 7; 10)`, bundle `∧³U₄ ⊕ ∧²U₄ ⊗ U₇/₄ ⊕ U₄ ⊗ ∧²U₇/₄`.
    Flag4,
}

impl DivisorCase {
    pub const ALL: [DivisorCase; 3] = [DivisorCase::Grassmannian, DivisorCase::Flag1, DivisorCase::Flag4];

    pub fn name(self) -> &'static str {
        match self {
            DivisorCase::Grassmannian => "Gr(3,10)",
            DivisorCase::Flag1 => "Fl(1,6;10)",
            DivisorCase::Flag4 => "Fl(4,7;10)",
        }
    }
}

/// Degree of the invariant divisor cut by a trivector in `P(∧³V₁₀^∨)`.
pub fn divisor_degree(case: DivisorCase) -> Result<Rational> {
    let (v, e) = match case {
        DivisorCase::Grassmannian => (Variety::grassmannian(3, 10)?, a("U").wedge(3).plus(a("U").wedge(2).tensor(a("Q")))),
        DivisorCase::Flag1 => (
            Variety::flag_bundle(&Variety::point(), &B::Trivial(10), &[1, 5, 4], &["U1", "U61", "Q"])?,
            a("U1").tensor(a("U61").wedge(2)).plus(a("U1").tensor(a("U61")).tensor(a("Q"))),
        ),
        DivisorCase::Flag4 => (
            Variety::flag_bundle(&Variety::point(), &B::Trivial(10), &[4, 3, 3], &["U4", "U74", "Q"])?,
            a("U4").wedge(3).plus(a("U4").wedge(2).tensor(a("U74"))).plus(a("U4").tensor(a("U74").wedge(2))),
        ),
    };
    invariant_divisor_degree(&v, &e)
}

/// `c₁₀` of the normal bundle of the K3 surface model, on `Gr(2, 7)`.
pub fn k3_normal_c10() -> Result<Rational> {
    let g = Variety::grassmannian(2, 7)?;
    let n = a("U")
        .plus(B::Trivial(1))
        .dual()
        .tensor(a("Q").plus(B::Trivial(2)))
        .minus(a("Q").det())
        .minus(a("U").dual().tensor(a("Q")));
    let c = g.chern(&n)?;
    g.integral(&c.c(10))
}

/// Size of the Peskine tower: the full one over `P⁹` or the smoke test over `P⁵`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeskineSize {
    Full,
    Smoke,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeskineNumbers {
    pub dim: usize,
    pub h_top: Rational,
    /// `(∫π², ∫π·h³, t = 17/3 h⁴ − 7π·h, ∫(6h² − s)h⁴/3)`, full tower only.
    pub pi_sq: Option<Rational>,
    pub pi_h3: Option<Rational>,
    pub t_identity: Option<bool>,
    pub palatini: Option<Rational>,
}

/// The zero locus of `(U₁ ⊗ ∧²U₄/₁ ⊕ U₁ ⊗ U₄/₁ ⊗ Q)^∨` on the flag bundle over
/// `P^n`, with `h = c₁(U₁^∨)`, `s = σ₂`, `t = σ₄` and `π = (6h² − s)h/3`.
pub fn peskine(size: PeskineSize) -> Result<PeskineNumbers> {
    let n = match size {
        PeskineSize::Full => 9,
        PeskineSize::Smoke => 5,
    };
    let p = Variety::projective_space(n, "U1", "Q")?;
    let g = Variety::flag_bundle(&p, &a("Q"), &[3, n - 3], &["U41", "Q"])?;
    let x = Variety::zero_locus(&g, &a("U1").tensor(a("U41").wedge(2)).plus(a("U1").tensor(a("U41")).tensor(a("Q"))).dual())?;
    let h = x.c1(&a("U1").dual())?;
    let h_top = x.integral(&h.pow(x.dim() as u32))?;
    let mut out = PeskineNumbers { dim: x.dim(), h_top, pi_sq: None, pi_h3: None, t_identity: None, palatini: None };
    if size == PeskineSize::Full {
        let s = x.schubert_cycle(&[2, 0, 0])?;
        let t = x.schubert_cycle(&[4, 0, 0])?;
        let third = q(1, 3);
        let pal = h.pow(2).scale(&6.into()).sub(&s)?.scale(&third);
        let pi = pal.mul(&h);
        out.pi_sq = Some(x.integral(&pi.mul(&pi))?);
        out.pi_h3 = Some(x.integral(&pi.mul(&h.pow(3)))?);
        let rhs = h.pow(4).scale(&q(17, 3)).sub(&pi.mul(&h).scale(&7.into()))?;
        out.t_identity = Some(x.class_equal(&t, &rhs)?);
        out.palatini = Some(x.integral(&pal.mul(&h.pow(4)))?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TautCheck {
    pub dim: usize,
    pub h_sq: Rational,
    /// `c₁(det U₄/₁^∨) = 3h`.
    pub sub_is_3h: bool,
    /// `c₁(det U₈/₄) = 2h`.
    pub quot_is_2h: bool,
    /// `c₁((det E^∨)^{⊗2} ⊗ L^{⊗3}) = 0` for `E = U₄/₁^∨`, `L = det U₈/₄`.
    pub conic_trivial: bool,
}

/// The K3 surface model over `Gr(2, 4)`.
pub fn taut_check() -> Result<TautCheck> {
    let g = Variety::grassmannian(2, 4)?;
    let f = Variety::flag_bundle(&g, &a("U").plus(B::Trivial(5)), &[3, 4], &["U3", "U4"])?;
    let s = Variety::zero_locus(&f, &a("U").det().plus(a("U3").det()).plus(a("U3").wedge(2).tensor(a("U4"))).dual())?;
    let h = s.c1(&a("U").dual())?;
    let e = s.c1(&a("U3").dual())?;
    let l = s.c1(&a("U4"))?;
    let de = a("U3").det();
    let dl = a("U4").det();
    let conic = s.c1(&de.clone().tensor(de).tensor(dl.clone()).tensor(dl.clone()).tensor(dl))?;
    Ok(TautCheck {
        dim: s.dim(),
        h_sq: s.integral(&h.pow(2))?,
        sub_is_3h: s.class_equal(&e, &h.scale(&3.into()))?,
        quot_is_2h: s.class_equal(&l, &h.scale(&2.into()))?,
        conic_trivial: s.class_equal(&conic, &s.ring().zero())?,
    })
}

/// `∫ h⁴` on the hyperkähler fourfold cut from `Gr(6, 10)`.
pub fn fourfold_h4() -> Result<Rational> {
    let g = Variety::grassmannian(6, 10)?;
    let x = Variety::zero_locus(&g, &a("U").wedge(3).dual())?;
    let h = x.c1(&a("Q"))?;
    x.integral(&h.pow(4))
}

/// `(∫_D D³, ∫_D D²H, ∫_D DH², ∫_D H³)` on the divisor model over `Gr(3, 5)`,
/// using `D|_D = K_D`.
pub fn divisor_restrictions() -> Result<[Rational; 4]> {
    let g = Variety::grassmannian(3, 5)?;
    let f = Variety::flag_bundle(&g, &a("Q").plus(B::Trivial(4)), &[2, 4], &["U2", "Q2"])?;
    let u = a("U");
    let d = Variety::zero_locus(
        &f,
        &B::Trivial(1)
            .plus(u.clone())
            .tensor(a("U2").det())
            .plus(u.clone().det())
            .plus(u.clone().wedge(2).tensor(a("U2")))
            .dual(),
    )?;
    let h = d.c1(&B::Trivial(1).plus(u).plus(a("U2")).dual())?;
    let k = d.c1(&d.tangent_bundle().dual())?;
    Ok([
        d.integral(&k.pow(3))?,
        d.integral(&k.pow(2).mul(&h))?,
        d.integral(&k.mul(&h.pow(2)))?,
        d.integral(&h.pow(3))?,
    ])
}

/// The five degree-4 numbers `(H⁴, H³D, H²D², HD³, D⁴)`.
pub fn degree4_data(h4: Rational, restrictions: &[Rational; 4]) -> Degree4Data {
    let [d4, d3h, d2h2, dh3] = restrictions.clone();
    Degree4Data { h4, h3d: dh3, h2d2: d2h2, hd3: d3h, d4 }
}

/// `∫c_top(T) = χ` on a plain tower, cross-checked by `∫[pt] = 1` for the
/// Schubert point class, which does not depend on the normalization.
pub fn chi_normalization(v: &Variety) -> Result<bool> {
    let top = v.top_tangent_class()?;
    let chi = Rational::from_bigint(v.euler_characteristic()?);
    Ok(v.integral(&top)? == chi && v.integral(&v.point_class()?)? == Rational::from(1))
}
