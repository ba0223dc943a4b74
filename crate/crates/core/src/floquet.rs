//! Floquet theory for periodic Verblunsky coefficients.
//!
//! The monodromy matrix over one (even) period ω based at k0 is the ordered
//! transfer product 𝔐(z, k0) = T(z, k0+ω) ⋯ T(z, k0+1); odd periods are
//! doubled on input so that det 𝔐 = (−1)^ω = 1. The Floquet discriminant
//! Δ(z) = tr 𝔐 / 2 does not depend on k0, is real on the unit circle, and
//! the spectrum of the doubly infinite operator is exactly
//! {ζ : −1 ≤ Δ(ζ) ≤ 1}, a finite union of closed arcs swept out by the
//! band scanner below. The multipliers ρ_± = Δ ∓ sqrt(Δ² − 1) carry the
//! branch with |ρ_+| ≤ 1 ≤ |ρ_−| off the circle, fixed per point by
//! comparison rather than by a principal branch.

use crate::arc::CircleArc;
use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64};
use crate::verblunsky::VerblunskySequence;
use std::f64::consts::TAU;

/// Monodromy and band data for one periodic sequence.
#[derive(Debug, Clone)]
pub struct FloquetData {
    /// Even-length effective cycle; alpha_k = cycle[k mod ω].
    cycle: Vec<C64>,
    base: i64,
}

impl FloquetData {
    /// Requires an honestly periodic sequence (no incompatible twist, no
    /// patches). An odd period is doubled.
    pub fn new(seq: &VerblunskySequence, base: i64) -> Result<Self> {
        let mut cycle = seq.periodic_cycle().ok_or(Error::NotPeriodic)?;
        if cycle.len() % 2 == 1 {
            let copy = cycle.clone();
            cycle.extend(copy);
        }
        Ok(Self { cycle, base })
    }

    /// Constant-|α| helper used by the Borg machinery: the period-2 cycle
    /// (a, a) with a = |α| ∈ [0, 1).
    pub fn constant_modulus(a: f64) -> Result<Self> {
        let seq = VerblunskySequence::constant(C64::new(a, 0.0))?;
        Self::new(&seq, 0)
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    fn alpha(&self, k: i64) -> C64 {
        let w = self.cycle.len() as i64;
        self.cycle[((k % w + w) % w) as usize]
    }

    /// 𝔐(z, base) = T(z, base+ω) ⋯ T(z, base+1).
    pub fn monodromy(&self, z: C64) -> Result<Mat2> {
        self.monodromy_at(self.base, z)
    }

    pub fn monodromy_at(&self, k0: i64, z: C64) -> Result<Mat2> {
        if z == C64::new(0.0, 0.0) {
            return Err(Error::ZeroSpectralParameter);
        }
        let mut m = Mat2::identity();
        for j in 1..=self.cycle.len() as i64 {
            let k = k0 + j;
            let alpha = self.alpha(k);
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

    /// Δ(z) = tr 𝔐(z)/2; base-point independent.
    pub fn discriminant(&self, z: C64) -> Result<C64> {
        Ok(self.monodromy(z)?.trace() * C64::new(0.5, 0.0))
    }

    /// Δ(e^{iθ}), which is real on the circle; the imaginary part is
    /// asserted small and dropped.
    pub fn discriminant_theta(&self, theta: f64) -> Result<f64> {
        let d = self.discriminant(C64::from_polar(1.0, theta))?;
        debug_assert!(d.im.abs() < 1e-9, "discriminant not real on the circle");
        Ok(d.re)
    }

    /// Floquet multipliers (ρ_+, ρ_−) with |ρ_+| ≤ 1 ≤ |ρ_−|, ρ_+ρ_− = 1.
    pub fn multipliers(&self, z: C64) -> Result<(C64, C64)> {
        let delta = self.discriminant(z)?;
        let s = (delta * delta - C64::new(1.0, 0.0)).sqrt();
        let a = delta - s;
        let b = delta + s;
        Ok(if a.norm() <= b.norm() { (a, b) } else { (b, a) })
    }

    /// Band arcs {θ : −1 ≤ Δ(e^{iθ}) ≤ 1} from an N-point scan with
    /// bisection-refined edges; interior tangencies Δ = ±1 are reported as
    /// closed gaps, and grid maxima that poke out of [−1, 1] split the band.
    pub fn band_arcs(&self, grid: usize, refine_tol: f64) -> Result<BandStructure> {
        assert!(grid >= 16);
        let vals: Result<Vec<f64>> = (0..grid)
            .map(|i| self.discriminant_theta(TAU * i as f64 / grid as f64))
            .collect();
        let vals = vals?;
        // one-ulp excursions at exactly-closed gaps must not split a band
        let inband: Vec<bool> = vals.iter().map(|&d| d.abs() <= 1.0 + 1e-12).collect();
        let theta = |i: usize| TAU * (i % grid) as f64 / grid as f64;

        if inband.iter().all(|&b| b) {
            let closed_gaps = self.interior_tangencies(&vals, 0, grid, refine_tol)?;
            return Ok(BandStructure {
                arcs: vec![CircleArc::full_circle()],
                closed_gaps,
            });
        }
        if inband.iter().all(|&b| !b) {
            return Ok(BandStructure {
                arcs: Vec::new(),
                closed_gaps: Vec::new(),
            });
        }

        // start the walk in a gap so no band straddles the seam
        let start = inband.iter().position(|&b| !b).unwrap();
        let mut arcs = Vec::new();
        let mut closed_gaps = Vec::new();
        let mut i = start;
        while i < start + grid {
            if !inband[i % grid] {
                i += 1;
                continue;
            }
            // run of in-band samples [i, j]
            let mut j = i;
            while j + 1 < start + grid && inband[(j + 1) % grid] {
                j += 1;
            }
            let lo = self.refine_edge(theta(i - 1), theta(i), refine_tol)?;
            let hi = self.refine_edge(theta(j + 1), theta(j), refine_tol)?;
            let hi = if hi < lo { hi + TAU } else { hi };
            arcs.push(CircleArc::closed(lo, hi)?);
            closed_gaps.extend(self.interior_tangencies(&vals, i, j + 1, refine_tol)?);
            i = j + 1;
        }
        Ok(BandStructure { arcs, closed_gaps })
    }

    /// Bisection for the band edge between an out-of-band angle and an
    /// in-band angle: root of Δ ∓ 1, the sign picked by the outside value.
    fn refine_edge(&self, theta_out: f64, theta_in: f64, tol: f64) -> Result<f64> {
        let target = if self.discriminant_theta(theta_out)? > 1.0 {
            1.0
        } else {
            -1.0
        };
        let mut a = theta_out;
        let mut b = theta_in;
        let g = |t: f64| -> Result<f64> { Ok(self.discriminant_theta(t)? - target) };
        let mut ga = g(a)?;
        for _ in 0..200 {
            if (b - a).abs() <= tol {
                break;
            }
            let m = 0.5 * (a + b);
            let gm = g(m)?;
            if (gm > 0.0) == (ga > 0.0) {
                a = m;
                ga = gm;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b).rem_euclid(2.0 * TAU))
    }

    /// Scans an in-band sample run for interior grid maxima of |Δ| and
    /// resolves each by golden-section (there are at most O(period) of
    /// them): |Δ|_max within tol of 1 is a closed gap (tangency); beyond 1
    /// it is a band split the grid failed to sample, reported as an error
    /// demanding a finer grid.
    fn interior_tangencies(
        &self,
        vals: &[f64],
        lo: usize,
        hi: usize,
        tol: f64,
    ) -> Result<Vec<f64>> {
        let grid = vals.len();
        let theta = |i: usize| TAU * (i % grid) as f64 / grid as f64;
        let mut out = Vec::new();
        for i in lo..hi {
            let c = vals[i % grid].abs();
            let p = vals[(i + grid - 1) % grid].abs();
            let n = vals[(i + 1) % grid].abs();
            // strict interior maxima only; edge-adjacent samples are ruled
            // out by the in-band neighbor condition

            if c >= p && c >= n && p.max(n) <= 1.0 + 1e-12 {
                let (t, v) = self.golden_max_abs(
                    theta(i) - TAU / grid as f64,
                    theta(i) + TAU / grid as f64,
                    tol,
                )?;
                if (v - 1.0).abs() <= 1e-8 {
                    out.push(t.rem_euclid(TAU));
                } else if v > 1.0 {
                    return Err(Error::Unconverged {
                        what: format!("band splits between grid points near theta = {t}"),
                    });
                }
            }
        }
        Ok(out)
    }

    fn golden_max_abs(&self, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = self.discriminant_theta(c)?.abs();
        let mut fd = self.discriminant_theta(d)?.abs();
        while (b - a).abs() > tol {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = self.discriminant_theta(c)?.abs();
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = self.discriminant_theta(d)?.abs();
            }
        }
        let t = 0.5 * (a + b);
        Ok((t, self.discriminant_theta(t)?.abs()))
    }
}

/// Band arcs plus any closed-gap (tangency) angles found inside them.
#[derive(Debug, Clone)]
pub struct BandStructure {
    pub arcs: Vec<CircleArc>,
    pub closed_gaps: Vec<f64>,
}

impl BandStructure {
    pub fn contains(&self, theta: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta))
    }

    /// Distance from e^{iθ} to the band set (0 when inside).
    pub fn angle_distance(&self, theta: f64) -> f64 {
        if self.contains(theta) {
            return 0.0;
        }
        self.arcs
            .iter()
            .flat_map(|a| [a.theta0(), a.theta1()])
            .map(|e| crate::arc::angle_distance(theta, e))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Closed-form period-2 discriminant for nonnegative moduli (a1, a2):
/// Δ(e^{iθ}) = (cos θ + a1 a2) / (ρ1 ρ2).
pub fn period2_discriminant(a1: f64, a2: f64, theta: f64) -> f64 {
    assert!((0.0..1.0).contains(&a1) && (0.0..1.0).contains(&a2));
    let rho = ((1.0 - a1 * a1) * (1.0 - a2 * a2)).sqrt();
    (theta.cos() + a1 * a2) / rho
}

/// Band edges of the period-2 family in terms of λ_± = −a1 a2 ± ρ1 ρ2:
/// the spectrum is {θ : λ_− ≤ cos θ ≤ λ_+}.
pub fn period2_lambda(a1: f64, a2: f64) -> (f64, f64) {
    let rho = ((1.0 - a1 * a1) * (1.0 - a2 * a2)).sqrt();
    (-a1 * a2 + rho, -a1 * a2 - rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::CmvSection;
    use crate::util::SplitMix64;
    use num_complex::Complex64 as C;
    use std::f64::consts::PI;

    #[test]
    fn free_discriminant_is_cosine() {
        let f = FloquetData::new(&VerblunskySequence::free(), 0).unwrap();
        assert_eq!(f.period(), 2);
        for m in 0..16 {
            let th = TAU * m as f64 / 16.0 + 0.05;
            assert!((f.discriminant_theta(th).unwrap() - th.cos()).abs() < 1e-13);
        }
        let bands = f.band_arcs(512, 1e-10).unwrap();
        assert_eq!(bands.arcs.len(), 1);
        assert!(bands.arcs[0].is_full_circle());
        // Delta = cos touches +1 at 0 and -1 at pi tangentially
        assert_eq!(bands.closed_gaps.len(), 2);
        assert!(bands.closed_gaps[0].abs() < 1e-6);
        assert!((bands.closed_gaps[1] - PI).abs() < 1e-6);
    }

    #[test]
    fn determinant_one_and_circle_symmetry() {
        let mut rng = SplitMix64::new(6);
        let seq = VerblunskySequence::periodic((0..3).map(|_| rng.disk(0.7)).collect()).unwrap();
        let f = FloquetData::new(&seq, 0).unwrap();
        assert_eq!(f.period(), 6); // odd period doubled
        for _ in 0..50 {
            let z = rng.disk(1.5) + C::new(0.1, 0.1);
            if z.norm() < 0.05 {
                continue;
            }
            let m = f.monodromy(z).unwrap();
            assert!((m.det() - C::new(1.0, 0.0)).norm() < 1e-10);
        }
        // on the circle: M11 = conj(M22), M12 = conj(M21), so Delta is real
        for m in 0..12 {
            let zeta = C::from_polar(1.0, TAU * m as f64 / 12.0 + 0.1);
            let mm = f.monodromy(zeta).unwrap();
            assert!((mm.0[0][0] - mm.0[1][1].conj()).norm() < 1e-12);
            assert!((mm.0[0][1] - mm.0[1][0].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn discriminant_is_base_point_independent() {
        let mut rng = SplitMix64::new(14);
        let seq = VerblunskySequence::periodic((0..4).map(|_| rng.disk(0.75)).collect()).unwrap();
        let fa = FloquetData::new(&seq, 0).unwrap();
        let fb = FloquetData::new(&seq, 7).unwrap();
        for _ in 0..20 {
            let z = rng.disk(1.3) + C::new(0.05, 0.0);
            if z.norm() < 0.05 {
                continue;
            }
            let da = fa.discriminant(z).unwrap();
            let db = fb.discriminant(z).unwrap();
            assert!((da - db).norm() < 1e-10 * da.norm().max(1.0));
        }
    }

    #[test]
    fn multipliers_reciprocal_and_branch() {
        let mut rng = SplitMix64::new(25);
        let seq = VerblunskySequence::periodic(vec![C::new(0.3, 0.2), C::new(-0.1, 0.4)]).unwrap();
        let f = FloquetData::new(&seq, 0).unwrap();
        for _ in 0..40 {
            let z = rng.disk(0.95);
            if z.norm() < 0.05 {
                continue;
            }
            let (rp, rm) = f.multipliers(z).unwrap();
            assert!((rp * rm - C::new(1.0, 0.0)).norm() < 1e-10);
            assert!(rp.norm() <= 1.0 + 1e-12 && rm.norm() >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn period2_closed_form_equals_monodromy() {
        let mut rng = SplitMix64::new(36);
        for _ in 0..5 {
            let a1 = rng.range(0.0, 0.9);
            let a2 = rng.range(0.0, 0.9);
            let seq = VerblunskySequence::periodic(vec![C::new(a2, 0.0), C::new(a1, 0.0)]).unwrap();
            // cycle[k mod 2]: alpha_1 = cycle[1] = a1, alpha_2 = cycle[0] = a2
            let f = FloquetData::new(&seq, 0).unwrap();
            for _ in 0..100 {
                let th = rng.range(0.0, TAU);
                let closed = period2_discriminant(a1, a2, th);
                let route = f.discriminant_theta(th).unwrap();
                assert!((closed - route).abs() < 1e-12, "{closed} vs {route}");
            }
        }
    }

    #[test]
    fn symmetric_half_band() {
        // |alpha| = (1/sqrt2, 1/sqrt2): band is exactly {cos θ ≤ 0}
        let a = std::f64::consts::FRAC_1_SQRT_2;
        assert!((period2_discriminant(a, a, PI / 2.0) - 1.0).abs() < 1e-14);
        let f = FloquetData::constant_modulus(a).unwrap();
        let bands = f.band_arcs(4096, 1e-12).unwrap();
        assert_eq!(bands.arcs.len(), 1);
        let arc = bands.arcs[0];
        assert!((arc.theta0() - PI / 2.0).abs() < 1e-10, "{}", arc.theta0());
        assert!((arc.theta1() - 3.0 * PI / 2.0).abs() < 1e-10);
        // constant modulus means the gap at θ = π is exactly closed
        assert_eq!(bands.closed_gaps.len(), 1);
        assert!((bands.closed_gaps[0] - PI).abs() < 1e-6);
    }

    #[test]
    fn two_band_example() {
        // |alpha| = (0.3, 0.6): two arcs with edges at arccos(λ±),
        // λ± = −0.18 ± sqrt(0.5824)
        let (lp, lm) = period2_lambda(0.3, 0.6);
        assert!((lp - (-0.18 + 0.5824f64.sqrt())).abs() < 1e-15);
        assert!((lm - (-0.18 - 0.5824f64.sqrt())).abs() < 1e-15);
        let seq = VerblunskySequence::periodic(vec![C::new(0.6, 0.0), C::new(0.3, 0.0)]).unwrap();
        let f = FloquetData::new(&seq, 0).unwrap();
        let bands = f.band_arcs(4096, 1e-12).unwrap();
        assert_eq!(bands.arcs.len(), 2);
        let e0 = lp.acos();
        let e1 = lm.acos();
        let got: Vec<(f64, f64)> = bands
            .arcs
            .iter()
            .map(|a| (a.theta0(), a.theta1()))
            .collect();
        assert!((got[0].0 - e0).abs() < 1e-10 && (got[0].1 - e1).abs() < 1e-10);
        assert!((got[1].0 - (TAU - e1)).abs() < 1e-10 && (got[1].1 - (TAU - e0)).abs() < 1e-10);
        assert!(bands.closed_gaps.is_empty());
    }

    #[test]
    fn coarse_grid_over_unresolved_gap_is_an_error() {
        // a1 slightly different from a2 opens a narrow true gap near pi;
        // a 16-point scan cannot see it, and the tangency refinement must
        // refuse to call it closed
        let seq = VerblunskySequence::periodic(vec![C::new(0.33, 0.0), C::new(0.3, 0.0)]).unwrap();
        let f = FloquetData::new(&seq, 0).unwrap();
        // 17 samples keep theta = pi (the gap center) between grid points
        match f.band_arcs(17, 1e-10) {
            Err(Error::Unconverged { .. }) => {}
            other => panic!("expected an unresolved-split error, got {other:?}"),
        }
        // a fine scan resolves the two arcs
        let bands = f.band_arcs(1 << 13, 1e-10).unwrap();
        assert_eq!(bands.arcs.len(), 2);
    }

    #[test]
    fn truncation_spectra_approach_bands() {
        // eigenvalues of split sections land inside the bands up to O(1/n),
        // with the measured distance decreasing as n grows
        let mut rng = SplitMix64::new(47);
        let seq =
            VerblunskySequence::periodic(vec![C::new(0.45, 0.1), C::new(-0.2, 0.35)]).unwrap();
        let f = FloquetData::new(&seq, 0).unwrap();
        let bands = f.band_arcs(8192, 1e-12).unwrap();
        let _ = &mut rng;
        let mut prev = f64::INFINITY;
        for n in [128usize, 256, 512] {
            let sec = CmvSection::build(&seq, 0, n as i64 - 1, 0.0, 0.0).unwrap();
            let eig = sec.eigendecompose().unwrap();
            let worst = eig
                .values
                .iter()
                .map(|v| bands.angle_distance(v.arg()))
                .fold(0.0f64, f64::max);
            assert!(worst < prev || worst < 1e-12, "n={n}: {worst} vs {prev}");
            assert!(worst < 12.0 / n as f64, "n={n}: Hausdorff-type gap {worst}");
            prev = worst;
        }
    }
}
