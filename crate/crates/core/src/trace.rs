//! Trace-formula hierarchy: diagonal moments M_j(U, k) = 2 (δ_k, (U*)^j δ_k),
//! their log-Taylor images L_j(U, k), and the quadrature identity
//! L_j = 2i ∮ dμ0 Ξ_{1,1}(ζ, k) conj(ζ)^j.
//!
//! Moments are exact: the five-diagonal band spreads a basis vector by at
//! most two sites per application, so a split section with n ≥ 4J + 8 sites
//! centered at k reproduces the doubly infinite values bit for bit and the
//! result is independent of the splitting phases. An eigendecomposition
//! route would hit the same numbers only up to spectral quadrature error,
//! which is why the matvec is the primary path (the cross-check lives in
//! the tests).

use crate::cmv::CmvSection;
use crate::error::{Error, Result};
use crate::herglotz::{exp_herglotz, CaratheodoryFunction, Orientation, RadialSchedule, XiProfile};
use crate::linalg::C64;
use crate::verblunsky::VerblunskySequence;
use crate::weyl::{m11, MMethod};

/// Default cap on the expansion order; the log-recursion stays benign but
/// quadrature residual targets would need grids growing like 4^j beyond it.
pub const J_CAP: usize = 12;

/// M_j(U, k) for j = 1..=j_max by banded application of U*.
///
/// `n` optionally enlarges the section; anything below 4 j_max + 8 is an
/// error because boundary effects could then reach site k.
pub fn moments(
    seq: &VerblunskySequence,
    k: i64,
    j_max: usize,
    n: Option<usize>,
) -> Result<Vec<C64>> {
    let need = 4 * j_max + 8;
    let n = n.unwrap_or(need);
    if n < need {
        return Err(Error::SectionTooSmall { need, got: n });
    }
    let half = (n / 2) as i64;
    let sec = CmvSection::build(seq, k - half, k + half, 0.0, 0.0)?;
    let idx = sec.local_index(k);
    let mut v = vec![C64::new(0.0, 0.0); sec.n()];
    v[idx] = C64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(j_max);
    for _ in 0..j_max {
        v = sec.u_banded().apply_adjoint(&v);
        out.push(2.0 * v[idx]);
    }
    Ok(out)
}

/// Taylor coefficients of ln(1 + Σ c_j z^j):
/// d_1 = c_1, d_j = c_j − Σ_{ℓ<j} (ℓ/j) c_{j−ℓ} d_ℓ.
pub fn log_taylor(c: &[C64]) -> Vec<C64> {
    let mut d: Vec<C64> = Vec::with_capacity(c.len());
    for j in 1..=c.len() {
        let mut v = c[j - 1];
        for (l, dl) in d.iter().enumerate().map(|(i, d)| (i + 1, d)) {
            v -= (l as f64 / j as f64) * c[j - l - 1] * dl;
        }
        d.push(v);
    }
    d
}

/// Inverse of `log_taylor`: coefficients of exp(Σ d_j z^j) − 1.
pub fn exp_taylor(d: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = Vec::with_capacity(d.len());
    for j in 1..=d.len() {
        let mut v = d[j - 1];
        for l in 1..j {
            v += (l as f64 / j as f64) * c[j - l - 1] * d[l - 1];
        }
        c.push(v);
    }
    c
}

/// L_j(U, k) = log-Taylor coefficients of M_{1,1}(·, k) at the origin.
pub fn l_coeffs(
    seq: &VerblunskySequence,
    k: i64,
    j_max: usize,
    n: Option<usize>,
) -> Result<Vec<C64>> {
    Ok(log_taylor(&moments(seq, k, j_max, n)?))
}

/// Bundled per-site expansion data.
#[derive(Debug, Clone)]
pub struct TraceCoefficients {
    pub site: i64,
    pub moments: Vec<C64>,
    pub l: Vec<C64>,
}

impl TraceCoefficients {
    pub fn compute(seq: &VerblunskySequence, k: i64, j_max: usize) -> Result<Self> {
        let m = moments(seq, k, j_max, None)?;
        let l = log_taylor(&m);
        Ok(Self {
            site: k,
            moments: m,
            l,
        })
    }
}

/// Residuals |L_j − 2i ∮ dμ0 Ξ_{1,1}(ζ,k) conj(ζ)^j| for j = 1..=j_max.
///
/// Ξ is a step function inside spectral gaps (it flips between ±π/2 at the
/// interior zero of Im M_{1,1}), so a plain node sum would mislocate each
/// jump by up to half a cell and stall at O(1/grid). The quadrature here is
/// trapezoid on the Ξ grid with every detected gap jump bisected to
/// ~10⁻³ of a cell and the two constant pieces integrated in closed form.
pub fn xi_quadrature_check(
    seq: &VerblunskySequence,
    k: i64,
    j_max: usize,
    grid: usize,
    sched: RadialSchedule,
    method: MMethod,
) -> Result<Vec<f64>> {
    let l = l_coeffs(seq, k, j_max, None)?;
    let xi = xi_profile(seq, k, grid, sched, method)?;
    let jumps = locate_gap_jumps(seq, k, &xi, sched, method)?;
    Ok(l.iter()
        .enumerate()
        .map(|(i, lj)| {
            let q = 2.0 * C64::new(0.0, 1.0) * conj_moment_with_jumps(&xi, &jumps, (i + 1) as i64);
            (lj - q).norm()
        })
        .collect())
}

/// Radial limit of Ξ_{1,1} at a single angle.
fn xi_at(
    seq: &VerblunskySequence,
    k: i64,
    theta: f64,
    sched: RadialSchedule,
    method: MMethod,
) -> Result<f64> {
    let zeta = C64::from_polar(1.0, theta);
    let vals: Result<Vec<C64>> = sched
        .radii()
        .iter()
        .map(|&r| m11(seq, k, zeta * r, method))
        .collect();
    let (m, _) = crate::herglotz::radial_limit_c(&vals?);
    Ok(m.arg())
}

/// Cells [θ_i, θ_{i+1}] across which Ξ jumps: the ±π/2 flip at the interior
/// zero of a gap, or the 0 ↔ ±π/2 step at an arc edge. The jump angle is
/// refined by bisecting the crossing of the cell's midvalue.
fn locate_gap_jumps(
    seq: &VerblunskySequence,
    k: i64,
    xi: &XiProfile,
    sched: RadialSchedule,
    method: MMethod,
) -> Result<Vec<(usize, f64)>> {
    let n = xi.grid();
    let step = std::f64::consts::TAU / n as f64;
    let jump_floor = 0.7 * std::f64::consts::FRAC_PI_2;
    let mut out = Vec::new();
    for i in 0..n {
        let a = xi.xi[i];
        let b = xi.xi[(i + 1) % n];
        if (b - a).abs() > jump_floor {
            let mid = 0.5 * (a + b);
            let mut lo = xi.theta(i);
            let mut hi = lo + step;
            let below_lo = a < mid;
            for _ in 0..12 {
                let t = 0.5 * (lo + hi);
                if (xi_at(seq, k, t, sched, method)? < mid) == below_lo {
                    lo = t;
                } else {
                    hi = t;
                }
            }
            out.push((i, 0.5 * (lo + hi)));
        }
    }
    Ok(out)
}

/// ∮ Ξ(ζ) conj(ζ)^j dμ0 for the piecewise model: linear between nodes,
/// except in jump cells, which split into two constant pieces at the
/// refined jump angle. Exact segment integrals of (a + bθ) e^{−ijθ}.
fn conj_moment_with_jumps(xi: &XiProfile, jumps: &[(usize, f64)], j: i64) -> C64 {
    let n = xi.grid();
    let step = std::f64::consts::TAU / n as f64;
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..n {
        let t0 = xi.theta(i);
        let t1 = t0 + step;
        let v0 = xi.xi[i];
        let v1 = xi.xi[(i + 1) % n];
        if let Some(&(_, tau)) = jumps.iter().find(|&&(cell, _)| cell == i) {
            sum += segment_linear_moment(t0, tau, v0, v0, j);
            sum += segment_linear_moment(tau, t1, v1, v1, j);
        } else {
            sum += segment_linear_moment(t0, t1, v0, v1, j);
        }
    }
    sum / std::f64::consts::TAU
}

/// ∫_a^b ξ(θ) e^{−ijθ} dθ for ξ linear with ξ(a) = va, ξ(b) = vb, j ≥ 1.
fn segment_linear_moment(a: f64, b: f64, va: f64, vb: f64, j: i64) -> C64 {
    debug_assert!(j >= 1);
    let slope = if b > a { (vb - va) / (b - a) } else { 0.0 };
    let c = C64::new(0.0, -(j as f64)); // d/dθ e^{cθ} with c = -ij
    let ea = (c * a).exp();
    let eb = (c * b).exp();
    // ∫ e^{cθ} dθ = e^{cθ}/c; ∫ θ e^{cθ} dθ = e^{cθ}(θ/c − 1/c²)
    let int_one = (eb - ea) / c;
    let int_theta = eb * (b / c - 1.0 / (c * c)) - ea * (a / c - 1.0 / (c * c));
    (va - slope * a) * int_one + slope * int_theta
}

/// Boundary phase profile of M_{1,1}(·, k) on a uniform grid.
pub fn xi_profile(
    seq: &VerblunskySequence,
    k: i64,
    grid: usize,
    sched: RadialSchedule,
    method: MMethod,
) -> Result<XiProfile> {
    let seq = seq.clone();
    let f =
        CaratheodoryFunction::from_fn(Orientation::Caratheodory, move |z| m11(&seq, k, z, method));
    let e = exp_herglotz(&f, grid, sched)?;
    let mut xi = e.xi;
    xi.site = Some(k);
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;
    use num_complex::Complex64 as C;

    fn random_periodic(rng: &mut SplitMix64, len: usize, rad: f64) -> VerblunskySequence {
        VerblunskySequence::periodic((0..len).map(|_| rng.disk(rad)).collect()).unwrap()
    }

    #[test]
    fn first_moment_formula() {
        // M_1(U, k) = -2 alpha_k conj(alpha_{k+1})
        let mut rng = SplitMix64::new(3);
        for _ in 0..6 {
            let seq = random_periodic(&mut rng, 4, 0.8);
            for k in -3..=3i64 {
                let m = moments(&seq, k, 1, None).unwrap()[0];
                let expect = -2.0 * seq.alpha(k).unwrap() * seq.alpha(k + 1).unwrap().conj();
                assert!((m - expect).norm() < 1e-13, "k={k}: {m} vs {expect}");
            }
        }
    }

    #[test]
    fn free_moments_vanish() {
        let seq = VerblunskySequence::free();
        let m = moments(&seq, 0, 8, None).unwrap();
        for (j, v) in m.iter().enumerate() {
            assert!(v.norm() == 0.0, "M_{} = {v}", j + 1);
        }
        let l = l_coeffs(&seq, 0, 8, None).unwrap();
        assert!(l.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn moments_independent_of_section_size() {
        let mut rng = SplitMix64::new(9);
        let seq = random_periodic(&mut rng, 5, 0.8);
        let a = moments(&seq, 2, 3, Some(32)).unwrap();
        let b = moments(&seq, 2, 3, Some(64)).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-14);
        }
        assert!(matches!(
            moments(&seq, 2, 3, Some(16)),
            Err(Error::SectionTooSmall { .. })
        ));
    }

    #[test]
    fn band_locality_ignores_distant_patches() {
        let mut rng = SplitMix64::new(4);
        let seq = random_periodic(&mut rng, 3, 0.7);
        let j_max = 3usize;
        let base = moments(&seq, 0, j_max, None).unwrap();
        // patch far outside alpha_{k-j-2..k+j+2}
        let patched = seq
            .clone()
            .with_patch(j_max as i64 + 9, C::new(0.31, -0.2))
            .unwrap()
            .with_patch(-(j_max as i64) - 9, C::new(-0.77, 0.1))
            .unwrap();
        let got = moments(&patched, 0, j_max, None).unwrap();
        for (x, y) in base.iter().zip(got.iter()) {
            assert!((x - y).norm() == 0.0, "distant patch leaked into a moment");
        }
        // a patch inside the window must change something
        let near = seq.clone().with_patch(1, C::new(0.31, -0.2)).unwrap();
        let got = moments(&near, 0, j_max, None).unwrap();
        assert!(got
            .iter()
            .zip(base.iter())
            .any(|(x, y)| (x - y).norm() > 1e-6));
    }

    #[test]
    fn log_taylor_log1p_series() {
        // g(z) = 1 + z has ln g = z - z^2/2 + z^3/3 - ...
        let mut c = vec![C::new(0.0, 0.0); 8];
        c[0] = C::new(1.0, 0.0);
        let d = log_taylor(&c);
        for (i, dj) in d.iter().enumerate() {
            let j = (i + 1) as f64;
            let expect = if i % 2 == 0 { 1.0 / j } else { -1.0 / j };
            assert!((dj - C::new(expect, 0.0)).norm() < 1e-14, "j={}", i + 1);
        }
        // zeros map to zeros
        let z = vec![C::new(0.0, 0.0); 5];
        assert!(log_taylor(&z).iter().all(|v| v.norm() == 0.0));
    }

    proptest::proptest! {
        /// log_taylor and exp_taylor are inverse on arbitrary heads.
        #[test]
        fn log_exp_taylor_inverse(res in proptest::collection::vec(-1.0f64..1.0, 6),
                                  ims in proptest::collection::vec(-1.0f64..1.0, 6)) {
            let c: Vec<C> = res.iter().zip(ims.iter()).map(|(&r, &i)| C::new(r, i)).collect();
            let back = exp_taylor(&log_taylor(&c));
            for (x, y) in c.iter().zip(back.iter()) {
                proptest::prop_assert!((x - y).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn exp_log_roundtrip_random_heads() {
        let mut rng = SplitMix64::new(27);
        for _ in 0..50 {
            let c: Vec<C> = (0..8).map(|_| rng.disk(1.0)).collect();
            let back = exp_taylor(&log_taylor(&c));
            for (x, y) in c.iter().zip(back.iter()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn l_coeffs_match_series_fit_of_ln_m11() {
        // independent oracle: fit Taylor coefficients of ln M11 on |z| = 0.1
        let mut rng = SplitMix64::new(33);
        let seq = random_periodic(&mut rng, 3, 0.6);
        let k = 1i64;
        let l = l_coeffs(&seq, k, 4, None).unwrap();
        let nfit = 64usize;
        let r = 0.1f64;
        let mut fitted = [C::new(0.0, 0.0); 5];
        let samples: Vec<C> = (0..nfit)
            .map(|m| {
                let z = C::from_polar(r, std::f64::consts::TAU * m as f64 / nfit as f64);
                m11(&seq, k, z, MMethod::Closed).unwrap().ln()
            })
            .collect();
        for (j, f) in fitted.iter_mut().enumerate() {
            let mut s = C::new(0.0, 0.0);
            for (m, v) in samples.iter().enumerate() {
                let w = C::from_polar(
                    1.0,
                    -std::f64::consts::TAU * (m as f64) * (j as f64) / nfit as f64,
                );
                s += v * w;
            }
            *f = s / (nfit as f64 * r.powi(j as i32));
        }
        assert!(fitted[0].norm() < 1e-10); // ln M11(0) = 0
        for j in 1..=4usize {
            assert!(
                (l[j - 1] - fitted[j]).norm() < 1e-6,
                "L_{j}: {} vs {}",
                l[j - 1],
                fitted[j]
            );
        }
    }

    #[test]
    fn moments_agree_with_spectral_route() {
        // cross-check only: M_j = 2 ∮ conj(zeta)^j dmu_k against the banded
        // matvec (the matvec is exact, the spectral route carries the
        // eigendecomposition error)
        let mut rng = SplitMix64::new(61);
        let seq = random_periodic(&mut rng, 3, 0.7);
        let k = 1i64;
        let m = moments(&seq, k, 4, None).unwrap();
        let sec = crate::cmv::CmvSection::build(&seq, k - 24, k + 24, 0.0, 0.0).unwrap();
        let mu = sec.eigendecompose().unwrap().scalar_measure(k);
        for (j, mj) in m.iter().enumerate() {
            let spectral = 2.0 * mu.moment(-(j as i64 + 1));
            assert!(
                (mj - spectral).norm() < 1e-10,
                "moment {} differs: {mj} vs {spectral}",
                j + 1
            );
        }
    }

    #[test]
    fn exponential_representation_constant_vanishes_for_m11() {
        // M11(0,k) = 1 forces d = -Re ln M11(0) = 0 in the exponential
        // representation; asserted, not assumed
        let mut rng = SplitMix64::new(71);
        let seq = random_periodic(&mut rng, 4, 0.7);
        let k = 0i64;
        let s2 = seq.clone();
        let f = CaratheodoryFunction::from_fn(Orientation::Caratheodory, move |z| {
            m11(&s2, k, z, MMethod::Closed)
        });
        let e = exp_herglotz(&f, 64, RadialSchedule::default()).unwrap();
        assert!(e.d.abs() < 1e-12, "d = {}", e.d);
    }

    #[test]
    fn xi_quadrature_residuals_free_case() {
        let seq = VerblunskySequence::free();
        let res = xi_quadrature_check(
            &seq,
            0,
            3,
            1 << 8,
            RadialSchedule::default(),
            MMethod::Closed,
        )
        .unwrap();
        for r in res {
            assert!(r < 1e-12);
        }
    }

    #[test]
    fn xi_quadrature_residuals_periodic() {
        let mut rng = SplitMix64::new(41);
        let seq = random_periodic(&mut rng, 2, 0.55);
        let res = xi_quadrature_check(
            &seq,
            0,
            3,
            1 << 12,
            RadialSchedule::new(4, 14),
            MMethod::Closed,
        )
        .unwrap();
        for (j, r) in res.iter().enumerate() {
            assert!(*r < 1e-4, "residual {} at j = {}", r, j + 1);
        }
    }
}
