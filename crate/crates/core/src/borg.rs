//! Borg-type inverse spectral machinery.
//!
//! Forward direction: a connected closed arc [θ0, θ1] of the circle, as the
//! spectrum of a reflectionless CMV operator, forces the geometric family
//! α_k = α_0 g^k with g = −e^{i(θ0+θ1)/2} and |α_0| = cos((θ1−θ0)/4); the
//! phase of α_0 is a unitary invariant and stays free. Inverse direction: a
//! geometric family is gauge-reduced to the constant family β ≡ |α_0|
//! (γ_1 = conj(g) rotates spectra by arg g), whose period-2 band is
//! {θ : cos θ ≤ 1 − 2|α_0|²}.
//!
//! The boundary phase of M_{1,1} for such an operator is the three-level
//! step profile: 0 on the arc, +π/2 on (θ1, θ_*), −π/2 on (θ_*, θ0 + 2π),
//! with θ_* = (θ0+θ1)/2 + π placed so the profile has zero mean.
//!
//! Reflectionless verification evaluates radial limits of Φ_±, M_±, M_{1,1}
//! and Φ_{1,1} on band-interior grids (edges excluded by a margin) and takes
//! medians: the boundary statements hold almost everywhere, so a max over a
//! grid would be dominated by edge outliers.

use crate::arc::CircleArc;
use crate::error::{Error, Result};
use crate::floquet::FloquetData;
use crate::herglotz::{radial_limit_c, RadialSchedule, XiProfile};
use crate::linalg::C64;
use crate::util::{median, parallel_map};
use crate::verblunsky::VerblunskySequence;
use crate::weyl::{phi_pair, MMethod};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

const ONE: C64 = C64::new(1.0, 0.0);

fn c64_pair<S: serde::Serializer>(v: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&v.re)?;
    t.serialize_element(&v.im)?;
    t.end()
}

/// Output of the forward construction.
#[derive(Debug, Clone, Serialize)]
pub struct BorgResult {
    pub theta0: f64,
    pub theta1: f64,
    /// g = −exp(i(θ0+θ1)/2).
    #[serde(serialize_with = "c64_pair")]
    pub ratio: C64,
    /// |α_0| = cos((θ1−θ0)/4).
    pub alpha0_modulus: f64,
    /// Chosen phase of α_0 (free parameter; recorded convention).
    pub phase: f64,
    /// Gap midpoint θ_* = (θ0+θ1)/2 + π (mod 2π).
    pub theta_star: f64,
}

/// θ_* for an arc.
pub fn theta_star(arc: &CircleArc) -> f64 {
    (arc.midpoint() + PI).rem_euclid(TAU)
}

/// The geometric sequence whose spectrum is the given closed arc. A full
/// circle yields the zero sequence. The phase of α_0 is the caller's choice.
pub fn borg_forward(arc: &CircleArc, phase: f64) -> (VerblunskySequence, BorgResult) {
    let ratio = -C64::from_polar(1.0, arc.midpoint());
    let modulus = if arc.is_full_circle() {
        0.0
    } else {
        (arc.width() / 4.0).cos()
    };
    let alpha0 = C64::from_polar(modulus, phase);
    let seq =
        VerblunskySequence::geometric(alpha0, ratio).expect("arc geometry keeps |alpha0| < 1");
    let result = BorgResult {
        theta0: arc.theta0(),
        theta1: arc.theta1(),
        ratio,
        alpha0_modulus: modulus,
        phase,
        theta_star: theta_star(arc),
    };
    (seq, result)
}

/// Spectrum of a geometric family, via gauge reduction to the constant
/// family and the period-2 band. |α_0| = 0 returns the full circle.
pub fn borg_inverse(seq: &VerblunskySequence) -> Result<CircleArc> {
    let (alpha0, ratio) = seq.geometric_parameters().ok_or(Error::NotGeometric)?;
    let a = alpha0.norm();
    if a < 1e-14 {
        return Ok(CircleArc::full_circle());
    }
    let bands = FloquetData::constant_modulus(a)?.band_arcs(1 << 12, 1e-12)?;
    if bands.arcs.len() != 1 {
        return Err(Error::Unconverged {
            what: format!(
                "constant-modulus band scan produced {} arcs",
                bands.arcs.len()
            ),
        });
    }
    // sigma(U_alpha) = gamma1^{-1} sigma(U_beta) with gamma1 = conj(g)
    Ok(bands.arcs[0].rotated(ratio.arg()))
}

/// The three-level step profile of Ξ_{1,1} for an arc-spectrum operator.
#[derive(Debug, Clone)]
pub struct StepProfile {
    pub arc: CircleArc,
    pub theta_star: f64,
}

impl StepProfile {
    pub fn new(arc: &CircleArc) -> Result<Self> {
        if arc.is_full_circle() {
            return Err(Error::Config {
                what: "step profile needs an arc of width < 2*pi".into(),
            });
        }
        Ok(Self {
            arc: *arc,
            theta_star: theta_star(arc),
        })
    }

    /// Pointwise value; exact jump angles get the midpoint of the two sides.
    pub fn value(&self, theta: f64) -> f64 {
        let t0 = self.arc.theta0();
        let t1 = self.arc.theta1();
        let ts = self.theta_star.rem_euclid(TAU);
        let d = (theta - t0).rem_euclid(TAU);
        let w = t1 - t0;
        let ds = (ts - t0).rem_euclid(TAU);
        let eps = 1e-13;
        if d < eps || d > TAU - eps {
            return -PI / 4.0; // jump 0 ↔ −π/2 at θ0
        }
        if (d - w).abs() < eps {
            return PI / 4.0; // jump 0 ↔ +π/2 at θ1
        }
        if (d - ds).abs() < eps {
            return 0.0; // jump +π/2 ↔ −π/2 at θ_*
        }
        if d < w {
            0.0
        } else if d < ds {
            FRAC_PI_2
        } else {
            -FRAC_PI_2
        }
    }

    /// Sampled profile on the uniform grid.
    pub fn sample(&self, grid: usize) -> XiProfile {
        XiProfile {
            site: None,
            xi: (0..grid)
                .map(|m| self.value(TAU * m as f64 / grid as f64))
                .collect(),
        }
    }

    /// Exact mean ∮ Ξ dμ0 = (2θ_* − θ0 − 2π − θ1)/4; zero by the choice of
    /// θ_*.
    pub fn mean_exact(&self) -> f64 {
        let t0 = self.arc.theta0();
        let t1 = self.arc.theta1();
        let ts = t0 + (self.theta_star - t0).rem_euclid(TAU);
        0.25 * (2.0 * ts - t0 - TAU - t1)
    }

    /// Exact ∮ Ξ(ζ) conj(ζ)^j dμ0 (piecewise integration of the steps),
    /// j ≥ 1.
    pub fn conj_moment_exact(&self, j: i64) -> C64 {
        assert!(j >= 1);
        let t0 = self.arc.theta0();
        let t1 = self.arc.theta1();
        let ts = t0 + (self.theta_star - t0).rem_euclid(TAU);
        let c = C64::new(0.0, -(j as f64));
        let seg = |a: f64, b: f64| ((c * b).exp() - (c * a).exp()) / c;
        (FRAC_PI_2 * seg(t1, ts) - FRAC_PI_2 * seg(ts, t0 + TAU)) / TAU
    }
}

/// Step profile samples plus θ_*.
pub fn xi_step_profile(arc: &CircleArc, grid: usize) -> Result<(XiProfile, f64)> {
    let p = StepProfile::new(arc)?;
    Ok((p.sample(grid), p.theta_star))
}

/// Options for reflectionless verification.
#[derive(Debug, Clone, Copy)]
pub struct ReflectionlessOptions {
    pub tol: f64,
    /// Radians excluded at each band edge.
    pub edge_margin: f64,
    pub grid_per_arc: usize,
    pub schedule: RadialSchedule,
    pub method: MMethod,
}

impl Default for ReflectionlessOptions {
    fn default() -> Self {
        Self {
            tol: 1e-4,
            edge_margin: 1e-3,
            grid_per_arc: 96,
            schedule: RadialSchedule::new(4, 12),
            method: MMethod::Auto,
        }
    }
}

/// Residual medians at one site.
#[derive(Debug, Clone, Serialize)]
pub struct SiteReport {
    pub site: i64,
    /// |Φ_+ conj(Φ_−) − 1|.
    pub phi_product: f64,
    /// |M_+ + conj(M_−)|.
    pub m_sum: f64,
    /// |Ξ_{1,1}|.
    pub xi: f64,
    /// |Im M_{1,1}|.
    pub im_m11: f64,
    /// |Im Φ_{1,1}|.
    pub im_phi11: f64,
    /// Φ_{1,1} stayed inside (−1, 1) up to tol.
    pub phi11_range_ok: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReflectionlessReport {
    pub tol: f64,
    pub edge_margin: f64,
    pub sites: Vec<SiteReport>,
    pub verdict: bool,
}

struct PointResiduals {
    phi_product: f64,
    m_sum: f64,
    xi: f64,
    im_m11: f64,
    im_phi11: f64,
    re_phi11: f64,
}

fn point_residuals(
    seq: &VerblunskySequence,
    k: i64,
    theta: f64,
    opts: &ReflectionlessOptions,
) -> Result<PointResiduals> {
    let zeta = C64::from_polar(1.0, theta);
    let radii = opts.schedule.radii();
    let mut phis = Vec::with_capacity(radii.len());
    let mut psis = Vec::with_capacity(radii.len());
    let mut m11s = Vec::with_capacity(radii.len());
    let mut phi11s = Vec::with_capacity(radii.len());
    for &r in &radii {
        let (phi, psi) = phi_pair(seq, k, zeta * r, opts.method)?;
        let mp = (ONE + phi) / (ONE - phi);
        let mm = (psi + ONE) / (psi - ONE);
        let den = mp - mm;
        m11s.push((ONE - mp * mm) / den);
        phi11s.push(phi * psi);
        phis.push(phi);
        psis.push(psi);
    }
    let (phi, _) = radial_limit_c(&phis);
    let (psi, _) = radial_limit_c(&psis);
    let (m11, _) = radial_limit_c(&m11s);
    let (phi11, _) = radial_limit_c(&phi11s);

    let mp = (ONE + phi) / (ONE - phi);
    let mm = (psi + ONE) / (psi - ONE);
    // |Φ_+ conj(Φ_−) − 1| = |Φ_+ − conj(ψ)| / |ψ|; the difference form is
    // the same statement and stays conditioned when ψ → 0 (free points).
    let diff = (phi - psi.conj()).norm();
    let phi_product = if psi.norm() > 1e-3 {
        diff / psi.norm()
    } else {
        diff
    };
    Ok(PointResiduals {
        phi_product,
        m_sum: (mp + mm.conj()).norm(),
        xi: m11.arg().abs(),
        im_m11: m11.im.abs(),
        im_phi11: phi11.im.abs(),
        re_phi11: phi11.re,
    })
}

/// Verifies the reflectionless identities on the interiors of the given
/// spectral arcs at the given sites. Verdicts are medians-below-tol for all
/// five residual families, plus the range condition on Φ_{1,1}.
pub fn check_reflectionless(
    seq: &VerblunskySequence,
    spectrum: &[CircleArc],
    sites: &[i64],
    opts: &ReflectionlessOptions,
) -> Result<ReflectionlessReport> {
    let mut thetas = Vec::new();
    for arc in spectrum {
        if let Ok(g) = arc.interior_grid(opts.grid_per_arc, opts.edge_margin) {
            thetas.extend(g);
        }
    }
    if thetas.is_empty() {
        return Err(Error::EmptyArcInterior);
    }
    let threads = crate::util::effective_threads();
    let mut sites_out = Vec::with_capacity(sites.len());
    let mut all = true;
    for &k in sites {
        let pts: Vec<Result<PointResiduals>> = parallel_map(thetas.len(), threads, |i| {
            point_residuals(seq, k, thetas[i], opts)
        });
        let mut phi_product = Vec::new();
        let mut m_sum = Vec::new();
        let mut xi = Vec::new();
        let mut im_m11 = Vec::new();
        let mut im_phi11 = Vec::new();
        let mut range_ok = true;
        for p in pts {
            let p = p?;
            phi_product.push(p.phi_product);
            m_sum.push(p.m_sum);
            xi.push(p.xi);
            im_m11.push(p.im_m11);
            im_phi11.push(p.im_phi11);
            if p.re_phi11.abs() >= 1.0 + opts.tol {
                range_ok = false;
            }
        }
        let report = SiteReport {
            site: k,
            phi_product: median(&phi_product),
            m_sum: median(&m_sum),
            xi: median(&xi),
            im_m11: median(&im_m11),
            im_phi11: median(&im_phi11),
            phi11_range_ok: range_ok,
            verdict: false,
        };
        let verdict = report.phi_product < opts.tol
            && report.m_sum < opts.tol
            && report.xi < opts.tol
            && report.im_m11 < opts.tol
            && report.im_phi11 < opts.tol
            && range_ok;
        all &= verdict;
        sites_out.push(SiteReport { verdict, ..report });
    }
    Ok(ReflectionlessReport {
        tol: opts.tol,
        edge_margin: opts.edge_margin,
        sites: sites_out,
        verdict: all,
    })
}
