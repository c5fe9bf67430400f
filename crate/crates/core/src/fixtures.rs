//! Explicit lattice realizations used by the scenarios.
//!
//! Coordinates are on `U^3 ⊕ E8(-1)^2` (the K3 lattice, basis
//! `e1 f1 e2 f2 e3 f3` then the two E8 blocks) and on `U^3 ⊕ E8(-1)^2 ⊕ ⟨-2⟩`
//! with the last coordinate `ℓ`, `ℓ² = -2`. Any primitive embedding with the
//! right Gram matrix and divisibilities would do: every reported quantity is
//! an isometry invariant.

use crate::algebra::Rational;
use crate::lattice::{ratvec, Lattice};

pub const K3_RANK: usize = 22;
pub const HK_RANK: usize = 23;

fn unit(n: usize, pairs: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, x) in pairs {
        v[i] += x;
    }
    v
}

/// Polarization `H = 2(e1 + 3f1) + ℓ`: square 22, divisibility 2.
pub fn polarization() -> Vec<i64> {
    unit(HK_RANK, &[(0, 2), (1, 6), (22, 1)])
}

/// `D = f1 + e2 − f2`: `D² = −2`, `H·D = 2`, divisibility 1.
pub fn ruled_divisor() -> Vec<i64> {
    unit(HK_RANK, &[(1, 1), (2, 1), (3, -1)])
}

/// `λ = 2(e2 − f2) − ℓ`: `λ² = −10`, `H·λ = 2`, and `½(H + λ)` is integral.
pub fn plane_class() -> Vec<i64> {
    unit(HK_RANK, &[(2, 2), (3, -2), (22, -1)])
}

/// Degree-6 polarization `h = e1 + 3f1` on the K3 lattice.
pub fn k3_polarization() -> Vec<i64> {
    unit(K3_RANK, &[(0, 1), (1, 3)])
}

/// The two residue patterns for `A` (`A·A = 6`, `A·h` odd).
pub fn brauer_class_lifts() -> [Vec<i64>; 2] {
    [unit(K3_RANK, &[(0, 1), (2, 1), (3, 3)]), unit(K3_RANK, &[(1, 1), (2, 1), (3, 3)])]
}

/// Embed `U ⊕ U` coordinates into the K3 lattice.
pub fn k3_from_u2(v: &[Rational]) -> Vec<Rational> {
    let mut out = ratvec(&[0; K3_RANK]);
    out[..4].clone_from_slice(&v[..4]);
    out
}

pub fn hk_lattice() -> Lattice {
    Lattice::k3_n2()
}

pub fn k3_lattice() -> Lattice {
    Lattice::k3()
}
