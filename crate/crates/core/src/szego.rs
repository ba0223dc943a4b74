//! Szegő polynomials and the CMV transfer-matrix calculus.
//!
//! Two recursions coexist. The classical Szegő system drives the monic
//! orthogonal polynomials φ_+ and their reversed *-polynomials φ*_+:
//!
//!   (φ_+, φ*_+)(ζ, k) = S(ζ, k) (φ_+, φ*_+)(ζ, k−1),
//!   S(ζ, k) = [[ζ, α_k], [conj(α_k) ζ, 1]],  (φ_+, φ*_+)(ζ, 0) = (1, 1).
//!
//! The CMV basis change turns S into the parity-dependent transfer matrix
//!
//!   T(z, k) = (1/ρ_k) [[α_k, z], [1/z, conj(α_k)]]        (k odd),
//!   T(z, k) = (1/ρ_k) [[conj(α_k), 1], [1, α_k]]          (k even),
//!
//! with det T = −1, which propagates the two-component lattice solutions
//! (p_±, r_±), (q_±, s_±) used throughout Weyl theory. All components are
//! Laurent polynomials in z; forward steps multiply by T(z, k), backward
//! steps by its closed-form inverse.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64};
use crate::verblunsky::VerblunskySequence;

const ONE: C64 = C64::new(1.0, 0.0);

/// S(ζ, k) of the Szegő recursion.
pub fn szego_matrix(seq: &VerblunskySequence, zeta: C64, k: i64) -> Result<Mat2> {
    if zeta == C64::new(0.0, 0.0) {
        return Err(Error::ZeroSpectralParameter);
    }
    let a = seq.alpha(k)?;
    Ok(Mat2([[zeta, a], [a.conj() * zeta, ONE]]))
}

/// Monic polynomial / *-polynomial pair at one degree.
#[derive(Debug, Clone, Copy)]
pub struct SzegoPair {
    pub k: usize,
    pub phi: C64,
    pub phi_star: C64,
}

/// Runs the Szegő recursion up to degree n at the point `zeta`.
///
/// `zeta` is nominally on the unit circle; any nonzero value is accepted for
/// analytic continuation. Returns values for k = 0..=n.
pub fn szego_recurse(seq: &VerblunskySequence, zeta: C64, n: usize) -> Result<Vec<SzegoPair>> {
    if zeta == C64::new(0.0, 0.0) {
        return Err(Error::ZeroSpectralParameter);
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut v = (ONE, ONE);
    out.push(SzegoPair {
        k: 0,
        phi: v.0,
        phi_star: v.1,
    });
    for k in 1..=n {
        v = szego_matrix(seq, zeta, k as i64)?.apply(v);
        out.push(SzegoPair {
            k,
            phi: v.0,
            phi_star: v.1,
        });
    }
    Ok(out)
}

/// Normalization constant γ_k = Π_{j=1}^{k} ρ_j^{−1}, γ_0 = 1.
pub fn gamma_prod(seq: &VerblunskySequence, k: usize) -> Result<f64> {
    let mut g = 1.0;
    for j in 1..=k as i64 {
        g /= seq.rho(j)?;
    }
    Ok(g)
}

/// Parity-dependent CMV transfer matrix T(z, k).
pub fn transfer_matrix(seq: &VerblunskySequence, z: C64, k: i64) -> Result<Mat2> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::ZeroSpectralParameter);
    }
    let a = seq.alpha(k)?;
    let r = C64::new(1.0 / seq.rho(k)?, 0.0);
    Ok(if k.rem_euclid(2) == 1 {
        Mat2([[a * r, z * r], [r / z, a.conj() * r]])
    } else {
        Mat2([[a.conj() * r, r], [r, a * r]])
    })
}

/// Closed-form inverse of T(z, k); uses det T = −1, never a generic solve,
/// so the z ↔ 1/z Laurent structure survives exactly.
pub fn transfer_inverse(seq: &VerblunskySequence, z: C64, k: i64) -> Result<Mat2> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::ZeroSpectralParameter);
    }
    let a = seq.alpha(k)?;
    let r = C64::new(1.0 / seq.rho(k)?, 0.0);
    Ok(if k.rem_euclid(2) == 1 {
        Mat2([[-a.conj() * r, z * r], [r / z, -a * r]])
    } else {
        Mat2([[-a * r, r], [r, -a.conj() * r]])
    })
}

/// The four basis solutions of the transfer recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// (p_+, r_+)
    PPlus,
    /// (q_+, s_+)
    QPlus,
    /// (p_−, r_−)
    PMinus,
    /// (q_−, s_−)
    QMinus,
}

/// Initial value at the base point k0; the parity of k0 selects the branch.
pub fn initial_value(kind: SolutionKind, z: C64, k0: i64) -> (C64, C64) {
    let odd = k0.rem_euclid(2) == 1;
    match (kind, odd) {
        (SolutionKind::PPlus, true) => (z, ONE),
        (SolutionKind::PPlus, false) => (ONE, ONE),
        (SolutionKind::QPlus, true) => (z, -ONE),
        (SolutionKind::QPlus, false) => (-ONE, ONE),
        (SolutionKind::PMinus, true) => (ONE, -ONE),
        (SolutionKind::PMinus, false) => (-z, ONE),
        (SolutionKind::QMinus, true) => (ONE, ONE),
        (SolutionKind::QMinus, false) => (z, ONE),
    }
}

/// A two-component solution tabulated on a window of lattice sites.
#[derive(Debug, Clone)]
pub struct LatticeSolution {
    pub k0: i64,
    pub k_lo: i64,
    /// `values[i]` = (u, v) at site k_lo + i.
    pub values: Vec<(C64, C64)>,
}

impl LatticeSolution {
    pub fn k_hi(&self) -> i64 {
        self.k_lo + self.values.len() as i64 - 1
    }

    pub fn value(&self, k: i64) -> (C64, C64) {
        assert!(
            k >= self.k_lo && k <= self.k_hi(),
            "site {k} outside window"
        );
        self.values[(k - self.k_lo) as usize]
    }
}

/// Propagates from the initial value at k0 across [k_lo, k_hi]:
/// (u,v)(k) = T(z,k) (u,v)(k−1) forward, and via the closed-form inverse
/// backward. Each step contributes one factor of z or 1/z at most, so the
/// components at site k are Laurent polynomials with degrees bounded by
/// about |k − k0|/2 + 1 on each side; coefficient recovery goes through
/// `laurent::LaurentPoly::from_samples`.
pub fn propagate(
    seq: &VerblunskySequence,
    kind: SolutionKind,
    z: C64,
    k0: i64,
    k_lo: i64,
    k_hi: i64,
) -> Result<LatticeSolution> {
    propagate_from(seq, initial_value(kind, z, k0), z, k0, k_lo, k_hi)
}

/// Same, starting from an arbitrary vector at k0 (the recursion is linear, so
/// Weyl solutions q_+ + M p_+ propagate as a single combined vector).
pub fn propagate_from(
    seq: &VerblunskySequence,
    init: (C64, C64),
    z: C64,
    k0: i64,
    k_lo: i64,
    k_hi: i64,
) -> Result<LatticeSolution> {
    if k_lo > k_hi {
        return Err(Error::InvalidWindow { k_lo, k_hi });
    }
    if z == C64::new(0.0, 0.0) {
        return Err(Error::ZeroSpectralParameter);
    }
    let n = (k_hi - k_lo + 1) as usize;
    let mut values = vec![(C64::new(0.0, 0.0), C64::new(0.0, 0.0)); n];
    let idx = |k: i64| (k - k_lo) as usize;

    let mut cur = init;
    if k0 >= k_lo && k0 <= k_hi {
        values[idx(k0)] = cur;
    }
    // forward from k0
    for k in (k0 + 1)..=k_hi {
        cur = transfer_matrix(seq, z, k)?.apply(cur);
        if k >= k_lo {
            values[idx(k)] = cur;
        }
    }
    // backward from k0
    cur = init;
    for k in (k_lo..=(k0 - 1)).rev() {
        cur = transfer_inverse(seq, z, k + 1)?.apply(cur);
        if k <= k_hi {
            values[idx(k)] = cur;
        }
    }
    Ok(LatticeSolution { k0, k_lo, values })
}
