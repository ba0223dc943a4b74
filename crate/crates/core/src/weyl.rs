//! Weyl–Titchmarsh theory: half-lattice m-functions, the full-lattice pair
//! M_±, the Schur functions Φ_± (Φ_− always handled through its reciprocal
//! ψ = 1/Φ_−), the 2×2 matrix function M_{ℓ,ℓ′}, and the resolvent kernel.
//!
//! Three evaluation routes are provided and cross-checked:
//!
//! * resolvent truncation — m_± as diagonal entries of
//!   (U ± z)(U − z)^{−1} on split finite sections, M_− through the Möbius
//!   map with a_k = 1 + α_k, b_k = 1 − α_k;
//! * Riccati cutoff — Φ_+ is iterated backward from Φ_+ = 0 at a far cutoff
//!   via Φ(k−1) = z(conj(α_k) − Φ(k))/(α_k Φ(k) − 1), and ψ forward via
//!   ψ(k) = (α_k + zψ(k−1))/(1 + conj(α_k) z ψ(k−1)); both maps send the
//!   closed disk into itself for |z| < 1, so the free value 0 at the cutoff
//!   is forgotten geometrically and the cutoff is doubled until the induced
//!   M-values settle;
//! * closed form — for periodic coefficients Φ_± are eigenvector ratios of
//!   the monodromy matrix, and a geometric family α_k = α_0 g^k is first
//!   gauge-reduced to the constant family (spectra rotate accordingly).
//!
//! For |z| > 1 the measure-side extension M(z) = −conj(M(1/conj z)) is used;
//! the truncation route evaluates there directly and the two are compared in
//! tests.

use crate::cmv::CmvSection;
use crate::error::{Error, Result};
use crate::linalg::{resolvent_column, Mat2, C64};
use crate::measure::SpectralMeasure;
use crate::szego::{initial_value, propagate_from, SolutionKind};
use crate::util::unit_pow;
use crate::verblunsky::VerblunskySequence;

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// Cutoff policy for the Riccati route.
#[derive(Debug, Clone, Copy)]
pub struct RiccatiOptions {
    /// Doubling stops when successive M-values differ by less than this.
    pub m_tol: f64,
    pub k_start: usize,
    pub k_max: usize,
}

impl Default for RiccatiOptions {
    fn default() -> Self {
        Self {
            m_tol: 1e-9,
            k_start: 64,
            k_max: 1 << 18,
        }
    }
}

/// Evaluation route for Weyl functions.
#[derive(Debug, Clone, Copy, Default)]
pub enum MMethod {
    /// Finite-section resolvent with `n` sites per half-lattice.
    Truncation { n: usize },
    /// Backward/forward Riccati iteration from a far cutoff.
    Riccati(RiccatiOptions),
    /// Monodromy eigenvectors (periodic) or gauge reduction to a constant
    /// family (geometric). Errors for other generators.
    Closed,
    /// Closed when the generator admits it, Riccati otherwise.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy)]
pub struct MPair {
    pub plus: C64,
    pub minus: C64,
}

fn check_off_circle(z: C64) -> Result<()> {
    let m = z.norm();
    if (m - 1.0).abs() < 1e-12 {
        return Err(Error::OnUnitCircle { modulus: m });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Half-lattice m-functions on finite sections
// ---------------------------------------------------------------------------

/// m_+(z, k0) = (δ_{k0}, (U_{+,k0} + z)(U_{+,k0} − z)^{−1} δ_{k0}) on the
/// n-site split section.
pub fn m_plus(seq: &VerblunskySequence, k0: i64, z: C64, n: usize) -> Result<C64> {
    check_off_circle(z)?;
    if n < 8 {
        return Err(Error::SectionTooSmall { need: 8, got: n });
    }
    let sec = CmvSection::half_lattice(seq, k0, n, 0.0)?;
    let idx = sec.local_index(k0);
    let x = resolvent_column(&sec.to_dense(), z, idx)?;
    let ux = sec.u_banded().apply(x.as_slice());
    Ok(ux[idx] + z * x[idx])
}

/// m_−(z, k0) = −(δ_{k0}, (U_{−,k0} + z)(U_{−,k0} − z)^{−1} δ_{k0}); the
/// half-lattice operator on (−∞, k0] comes from splitting at k0 + 1.
pub fn m_minus(seq: &VerblunskySequence, k0: i64, z: C64, n: usize) -> Result<C64> {
    check_off_circle(z)?;
    if n < 8 {
        return Err(Error::SectionTooSmall { need: 8, got: n });
    }
    let sec = CmvSection::build(seq, k0 - n as i64, k0, 0.0, 0.0)?;
    let idx = sec.local_index(k0);
    let x = resolvent_column(&sec.to_dense(), z, idx)?;
    let ux = sec.u_banded().apply(x.as_slice());
    Ok(-(ux[idx] + z * x[idx]))
}

/// Cached eigendecomposition of a half-lattice section; m-values become
/// measure transforms, so sweeping many z costs one diagonalization.
pub struct HalfLatticeSpectrum {
    measure: SpectralMeasure,
    sign: f64,
}

impl HalfLatticeSpectrum {
    pub fn plus(seq: &VerblunskySequence, k0: i64, n: usize) -> Result<Self> {
        let sec = CmvSection::half_lattice(seq, k0, n, 0.0)?;
        Ok(Self {
            measure: sec.eigendecompose()?.scalar_measure(k0),
            sign: 1.0,
        })
    }

    pub fn minus(seq: &VerblunskySequence, k0: i64, n: usize) -> Result<Self> {
        let sec = CmvSection::build(seq, k0 - n as i64, k0, 0.0, 0.0)?;
        Ok(Self {
            measure: sec.eigendecompose()?.scalar_measure(k0),
            sign: -1.0,
        })
    }

    pub fn measure(&self) -> &SpectralMeasure {
        &self.measure
    }

    pub fn m(&self, z: C64) -> Result<C64> {
        Ok(self.measure.herglotz_transform(0.0, z)? * self.sign)
    }
}

// ---------------------------------------------------------------------------
// Riccati route
// ---------------------------------------------------------------------------

/// One backward sweep: Φ_+(z, ·) from Φ = 0 at k_hi + span down to k_lo,
/// recording values on [k_lo, k_hi].
fn phi_plus_sweep(
    seq: &VerblunskySequence,
    z: C64,
    k_lo: i64,
    k_hi: i64,
    span: usize,
) -> Result<Vec<C64>> {
    let mut phi = ZERO;
    let top = k_hi + span as i64;
    let mut out = vec![ZERO; (k_hi - k_lo + 1) as usize];
    for k in ((k_lo + 1)..=top).rev() {
        if k <= k_hi {
            out[(k - k_lo) as usize] = phi;
        }
        let a = seq.alpha(k)?;
        phi = z * (a.conj() - phi) / (a * phi - ONE);
        if phi.norm() > 1.0 + 1e-8 && z.norm() < 1.0 {
            return Err(Error::NonContraction {
                modulus: phi.norm(),
            });
        }
    }
    out[0] = phi;
    Ok(out)
}

/// One forward sweep for ψ = 1/Φ_−: from ψ = 0 at k_lo − span up to k_hi.
fn psi_minus_sweep(
    seq: &VerblunskySequence,
    z: C64,
    k_lo: i64,
    k_hi: i64,
    span: usize,
) -> Result<Vec<C64>> {
    let mut psi = ZERO;
    let bottom = k_lo - span as i64;
    let mut out = vec![ZERO; (k_hi - k_lo + 1) as usize];
    for k in (bottom + 1)..=k_hi {
        let a = seq.alpha(k)?;
        psi = (a + z * psi) / (ONE + a.conj() * z * psi);
        if psi.norm() > 1.0 + 1e-8 && z.norm() < 1.0 {
            return Err(Error::NonContraction {
                modulus: psi.norm(),
            });
        }
        if k >= k_lo {
            out[(k - k_lo) as usize] = psi;
        }
    }
    Ok(out)
}

/// Largest cutoff the generator can feed on the given side.
fn available_span(seq: &VerblunskySequence, from: i64, forward: bool) -> usize {
    match seq.stored_range() {
        None => usize::MAX,
        Some((lo, hi)) => {
            if forward {
                (hi - from).max(0) as usize
            } else {
                (from - lo).max(0) as usize
            }
        }
    }
}

fn cayley_m(phi: C64) -> C64 {
    (ONE + phi) / (ONE - phi)
}

/// Adaptive-cutoff Φ_+(z, k); |z| ≤ 1 expected. For explicit windows the
/// cutoff is clamped to the stored range and the best value is returned.
pub fn phi_plus_riccati(
    seq: &VerblunskySequence,
    k0: i64,
    z: C64,
    opts: RiccatiOptions,
) -> Result<C64> {
    let avail = available_span(seq, k0, true);
    let mut span = opts.k_start.min(avail.max(4));
    let mut phi = phi_plus_sweep(seq, z, k0, k0, span)?[0];
    loop {
        if span >= opts.k_max || span >= avail {
            return Ok(phi);
        }
        span = (span * 2).min(opts.k_max).min(avail);
        let next = phi_plus_sweep(seq, z, k0, k0, span)?[0];
        let settled = (cayley_m(next) - cayley_m(phi)).norm() <= opts.m_tol;
        phi = next;
        if settled {
            return Ok(phi);
        }
    }
}

/// Adaptive-cutoff ψ(z, k) = 1/Φ_−(z, k).
pub fn psi_minus_riccati(
    seq: &VerblunskySequence,
    k0: i64,
    z: C64,
    opts: RiccatiOptions,
) -> Result<C64> {
    let avail = available_span(seq, k0, false);
    let mut span = opts.k_start.min(avail.max(4));
    let mut psi = psi_minus_sweep(seq, z, k0, k0, span)?[0];
    loop {
        if span >= opts.k_max || span >= avail {
            return Ok(psi);
        }
        span = (span * 2).min(opts.k_max).min(avail);
        let next = psi_minus_sweep(seq, z, k0, k0, span)?[0];
        let settled =
            ((ONE + next) / (next - ONE) - (ONE + psi) / (psi - ONE)).norm() <= opts.m_tol;
        psi = next;
        if settled {
            return Ok(psi);
        }
    }
}

/// Φ_+(z, k) for every k in [k_lo, k_hi] from a single sweep.
pub fn phi_plus_window(
    seq: &VerblunskySequence,
    z: C64,
    k_lo: i64,
    k_hi: i64,
    span: usize,
) -> Result<Vec<C64>> {
    phi_plus_sweep(seq, z, k_lo, k_hi, span)
}

/// ψ(z, k) for every k in [k_lo, k_hi] from a single sweep.
pub fn psi_minus_window(
    seq: &VerblunskySequence,
    z: C64,
    k_lo: i64,
    k_hi: i64,
    span: usize,
) -> Result<Vec<C64>> {
    psi_minus_sweep(seq, z, k_lo, k_hi, span)
}

// ---------------------------------------------------------------------------
// Closed route: monodromy eigenvectors and gauge reduction
// ---------------------------------------------------------------------------

fn monodromy_of_cycle(cycle: &[C64], k0: i64, z: C64) -> Result<Mat2> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    let w = cycle.len() as i64;
    let mut m = Mat2::identity();
    for j in 1..=w {
        let k = k0 + j;
        let alpha = cycle[((k % w + w) % w) as usize];
        let rho = (1.0 - alpha.norm_sqr()).sqrt();
        let r = C64::new(1.0 / rho, 0.0);
        let t = if k.rem_euclid(2) == 1 {
            Mat2([[alpha * r, z * r], [r / z, alpha.conj() * r]])
        } else {
            Mat2([[alpha.conj() * r, r], [r, alpha * r]])
        };
        m = t.mul(&m);
    }
    Ok(m)
}

/// Floquet multipliers of a 2×2 monodromy matrix with det = 1: the branch of
/// sqrt(Δ² − 1) is fixed by |ρ_+| ≤ 1 ≤ |ρ_−|.
fn multipliers_of(m: &Mat2) -> (C64, C64) {
    let delta = m.trace() * C64::new(0.5, 0.0);
    let s = (delta * delta - ONE).sqrt();
    let a = delta - s;
    let b = delta + s;
    if a.norm() <= b.norm() {
        (a, b)
    } else {
        (b, a)
    }
}

fn eigenvector_for(m: &Mat2, rho: C64) -> (C64, C64) {
    let c1 = (m.0[0][1], rho - m.0[0][0]);
    let c2 = (rho - m.0[1][1], m.0[1][0]);
    let n1 = c1.0.norm_sqr() + c1.1.norm_sqr();
    let n2 = c2.0.norm_sqr() + c2.1.norm_sqr();
    if n1 >= n2 {
        c1
    } else {
        c2
    }
}

/// (Φ_+, ψ) at site k for an honestly periodic cycle; an odd period is
/// doubled first. Valid off the unit circle.
fn phi_pair_periodic(cycle: &[C64], k: i64, z: C64) -> Result<(C64, C64)> {
    let cycle: Vec<C64> = if cycle.len() % 2 == 1 {
        cycle.iter().chain(cycle.iter()).copied().collect()
    } else {
        cycle.to_vec()
    };
    let m = monodromy_of_cycle(&cycle, k, z)?;
    let (rp, rm) = multipliers_of(&m);
    let vp = eigenvector_for(&m, rp);
    let vm = eigenvector_for(&m, rm);
    let odd = k.rem_euclid(2) == 1;
    let phi_plus = if odd { z * vp.1 / vp.0 } else { vp.0 / vp.1 };
    let psi = if odd { vm.0 / (z * vm.1) } else { vm.1 / vm.0 };
    if !phi_plus.is_finite() || !psi.is_finite() {
        return Err(Error::Unconverged {
            what: "monodromy eigenvector ratio degenerated".into(),
        });
    }
    Ok((phi_plus, psi))
}

/// Closed-form (Φ_+(z,k), ψ(z,k)). Periodic sequences go through the
/// monodromy matrix; geometric sequences are gauge-reduced to the constant
/// family β ≡ |α_0| via γ_1 = conj(g), γ_0 = conj(α_0)/|α_0| and the scaling
/// Φ_±(z,k; α) = γ_0 γ_1^k Φ_±(γ_1 z, k; β).
pub fn phi_pair_closed(seq: &VerblunskySequence, k: i64, z: C64) -> Result<(C64, C64)> {
    if z == ZERO {
        // Phi_+(0, k) = 0 and psi(0, k) = alpha_k for every sequence.
        if seq.periodic_cycle().is_none() && seq.geometric_parameters().is_none() {
            return Err(Error::NotPeriodic);
        }
        return Ok((ZERO, seq.alpha(k)?));
    }
    if let Some(cycle) = seq.periodic_cycle() {
        return phi_pair_periodic(&cycle, k, z);
    }
    if let Some((alpha0, g)) = seq.geometric_parameters() {
        let a = alpha0.norm();
        if a == 0.0 {
            return Ok((ZERO, ZERO));
        }
        let gamma1 = g.conj();
        let gamma0 = alpha0.conj() / a;
        let factor = gamma0 * unit_pow(gamma1, k);
        let (phi_b, psi_b) = phi_pair_periodic(&[C64::new(a, 0.0)], k, gamma1 * z)?;
        return Ok((factor * phi_b, factor.conj() * psi_b));
    }
    Err(Error::NotPeriodic)
}

// ---------------------------------------------------------------------------
// The assembled Weyl pair and derived functions
// ---------------------------------------------------------------------------

/// (Φ_+(z,k0), ψ(z,k0)) by the requested route; |z| < 1 expected.
pub fn phi_pair(seq: &VerblunskySequence, k0: i64, z: C64, method: MMethod) -> Result<(C64, C64)> {
    match method {
        MMethod::Closed => phi_pair_closed(seq, k0, z),
        MMethod::Auto => match phi_pair_closed(seq, k0, z) {
            Ok(p) => Ok(p),
            Err(Error::NotPeriodic) => phi_pair(seq, k0, z, MMethod::Riccati(Default::default())),
            Err(e) => Err(e),
        },
        MMethod::Riccati(opts) => Ok((
            phi_plus_riccati(seq, k0, z, opts)?,
            psi_minus_riccati(seq, k0, z, opts)?,
        )),
        MMethod::Truncation { .. } => Err(Error::Config {
            what: "phi_pair needs Riccati, Closed or Auto".into(),
        }),
    }
}

/// M_±(z, k0). Inside the disk M_+ is Caratheodory and M_− anti-Caratheodory;
/// outside, the measure-side reflection M(z) = −conj(M(1/conj z)) applies
/// (the truncation route computes there directly).
pub fn m_pair(seq: &VerblunskySequence, k0: i64, z: C64, method: MMethod) -> Result<MPair> {
    check_off_circle(z)?;
    match method {
        MMethod::Truncation { n } => {
            let plus = m_plus(seq, k0, z, n)?;
            let mm = m_minus(seq, k0 - 1, z, n)?;
            let a = seq.a(k0)?;
            let b = seq.b(k0)?;
            let i = C64::new(0.0, 1.0);
            let den = i * a.im + b.re * mm;
            if den.norm() < 1e-12 {
                return Err(Error::MoebiusDegenerate);
            }
            let minus = (C64::new(a.re, 0.0) + i * b.im * mm) / den;
            Ok(MPair { plus, minus })
        }
        _ => {
            if z.norm() > 1.0 {
                let inner = m_pair(seq, k0, 1.0 / z.conj(), method)?;
                return Ok(MPair {
                    plus: -inner.plus.conj(),
                    minus: -inner.minus.conj(),
                });
            }
            let (phi, psi) = phi_pair(seq, k0, z, method)?;
            let minus = (psi + ONE) / (psi - ONE);
            Ok(MPair {
                plus: cayley_m(phi),
                minus,
            })
        }
    }
}

/// M_{1,1}(z, k) = (1 − M_+ M_−)/(M_+ − M_−).
pub fn m11(seq: &VerblunskySequence, k: i64, z: C64, method: MMethod) -> Result<C64> {
    let p = m_pair(seq, k, z, method)?;
    let den = p.plus - p.minus;
    if den.norm() < 1e-12 {
        return Err(Error::DegenerateWeylPair);
    }
    Ok((ONE - p.plus * p.minus) / den)
}

/// Φ_{1,1} = Φ_+/Φ_− = Φ_+ · ψ.
pub fn phi11(seq: &VerblunskySequence, k: i64, z: C64, method: MMethod) -> Result<C64> {
    let (phi, psi) = phi_pair(seq, k, z, method)?;
    Ok(phi * psi)
}

/// The full 2×2 M-matrix at (z, k): diagonal entries are Caratheodory, the
/// off-diagonal pair depends on the parity of k.
pub fn m_matrix(seq: &VerblunskySequence, k: i64, z: C64, method: MMethod) -> Result<Mat2> {
    let p = m_pair(seq, k, z, method)?;
    let den = p.plus - p.minus;
    if den.norm() < 1e-12 {
        return Err(Error::DegenerateWeylPair);
    }
    let a = seq.a(k)?;
    let b = seq.b(k)?;
    let rho = seq.rho(k)?;
    let rho2 = C64::new(rho * rho, 0.0);
    let m00 = ONE + (a.conj() - b.conj() * p.plus) * (a + b * p.minus) / (rho2 * den);
    let m11v = (ONE - p.plus * p.minus) / den;
    let odd = k.rem_euclid(2) == 1;
    let scale = -ONE / (C64::new(rho, 0.0) * den);
    let term_one = (ONE - p.plus) * (a.conj() - b.conj() * p.minus);
    let term_two = (ONE + p.plus) * (a + b * p.minus);
    let (m01, m10) = if odd {
        (scale * term_one, scale * term_two)
    } else {
        (scale * term_two, scale * term_one)
    };
    Ok(Mat2([[m00, m01], [m10, m11v]]))
}

/// Wronskian of the Weyl solutions: the determinant of the column pair
/// (u_+, v_+), (u_−, v_−) at site k1 equals
/// (−1)^k1 · (M_+ − M_−) · (2z if k0 odd, else 2).
pub fn weyl_wronskian(
    seq: &VerblunskySequence,
    k0: i64,
    z: C64,
    k1: i64,
    method: MMethod,
) -> Result<C64> {
    let p = m_pair(seq, k0, z, method)?;
    let (up, vp) = weyl_solution_at(seq, k0, z, p.plus, k1)?;
    let (um, vm) = weyl_solution_at(seq, k0, z, p.minus, k1)?;
    Ok(up * vm - um * vp)
}

fn weyl_solution_at(
    seq: &VerblunskySequence,
    k0: i64,
    z: C64,
    m: C64,
    k: i64,
) -> Result<(C64, C64)> {
    let q0 = initial_value(SolutionKind::QPlus, z, k0);
    let p0 = initial_value(SolutionKind::PPlus, z, k0);
    let init = (q0.0 + m * p0.0, q0.1 + m * p0.1);
    let sol = propagate_from(seq, init, z, k0, k.min(k0), k.max(k0))?;
    Ok(sol.value(k))
}

/// Resolvent kernel (U − z)^{−1}(k, k′) built from the Weyl solutions
/// u_± = q_+ + M_± p_+, v_± = s_+ + M_± r_+:
///
///   u_−(k) v_+(k′) for k < k′ (and k = k′ odd),
///   v_−(k′) u_+(k) for k′ < k (and k = k′ even),
///
/// divided by −z (M_+ − M_−) (2z if k0 odd else 2). At z = 0 the kernel is
/// conj(U(k′, k)).
pub fn resolvent_entry(
    seq: &VerblunskySequence,
    k0: i64,
    z: C64,
    k: i64,
    kp: i64,
    method: MMethod,
) -> Result<C64> {
    check_off_circle(z)?;
    if z == ZERO {
        // (U - 0)^{-1} = U*; read the conjugate entry off a small section.
        let lo = k.min(kp).min(k0) - 6;
        let hi = k.max(kp).max(k0) + 6;
        let sec = CmvSection::build(seq, lo, hi, 0.0, 0.0)?;
        return Ok(sec.entry(kp, k).conj());
    }
    let p = m_pair(seq, k0, z, method)?;
    if (p.plus - p.minus).norm() < 1e-12 {
        return Err(Error::DegenerateWeylPair);
    }
    let lo = k.min(kp).min(k0);
    let hi = k.max(kp).max(k0);
    let q0 = initial_value(SolutionKind::QPlus, z, k0);
    let p0 = initial_value(SolutionKind::PPlus, z, k0);
    let plus_sol = propagate_from(
        seq,
        (q0.0 + p.plus * p0.0, q0.1 + p.plus * p0.1),
        z,
        k0,
        lo,
        hi,
    )?;
    let minus_sol = propagate_from(
        seq,
        (q0.0 + p.minus * p0.0, q0.1 + p.minus * p0.1),
        z,
        k0,
        lo,
        hi,
    )?;
    let odd_k0 = k0.rem_euclid(2) == 1;
    let c = if odd_k0 { 2.0 * z } else { C64::new(2.0, 0.0) };
    let den = z * (p.plus - p.minus) * c;
    let num = if k < kp || (k == kp && k.rem_euclid(2) == 1) {
        minus_sol.value(k).0 * plus_sol.value(kp).1
    } else {
        minus_sol.value(kp).1 * plus_sol.value(k).0
    };
    Ok(-num / den)
}

/// Evaluator bundle at a fixed base site, tagged with its method.
pub struct WeylData {
    pub seq: VerblunskySequence,
    pub k0: i64,
    pub method: MMethod,
}

impl WeylData {
    pub fn new(seq: VerblunskySequence, k0: i64, method: MMethod) -> Self {
        Self { seq, k0, method }
    }

    pub fn m_pair(&self, z: C64) -> Result<MPair> {
        m_pair(&self.seq, self.k0, z, self.method)
    }

    pub fn phi_plus(&self, z: C64) -> Result<C64> {
        Ok(phi_pair(&self.seq, self.k0, z, self.method)?.0)
    }

    /// ψ = 1/Φ_−, the bounded representative of the anti-Schur side.
    pub fn phi_minus_inv(&self, z: C64) -> Result<C64> {
        Ok(phi_pair(&self.seq, self.k0, z, self.method)?.1)
    }

    pub fn m11(&self, z: C64) -> Result<C64> {
        m11(&self.seq, self.k0, z, self.method)
    }

    pub fn phi11(&self, z: C64) -> Result<C64> {
        phi11(&self.seq, self.k0, z, self.method)
    }

    pub fn m_matrix(&self, z: C64) -> Result<Mat2> {
        m_matrix(&self.seq, self.k0, z, self.method)
    }

    pub fn provenance(&self) -> &'static str {
        match self.method {
            MMethod::Truncation { .. } => "resolvent-truncation",
            MMethod::Riccati(_) => "riccati-cutoff",
            MMethod::Closed => "floquet-closed",
            MMethod::Auto => "auto",
        }
    }
}
