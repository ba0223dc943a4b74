//! Caratheodory and Schur function calculus.
//!
//! A Caratheodory function maps 𝔻 to the right half-plane and is determined
//! by a nonnegative measure on ∂𝔻 through f(z) = ic + ∮ dμ (ζ+z)/(ζ−z).
//! Everything boundary-related is computed through radial limits r ↑ 1 along
//! the schedule r_m = 1 − 2^{−m} with Richardson extrapolation in 1 − r:
//! the a.c. density is lim Re f(rζ), point masses are lim (1−r)/2 · f(rζ),
//! arc masses integrate Re f over the arc, and the exponential representation
//! reads the boundary phase Υ(ζ) = lim arg(i f(rζ)) ∈ [0, π], recorded here
//! as Ξ = Υ − π/2 ∈ [−π/2, π/2].
//!
//! Band edges converge slowly; callers deepen the schedule there rather than
//! changing the machinery.

use crate::arc::CircleArc;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::measure::{Atom, SpectralMeasure};
use crate::util::parallel_map;
use std::f64::consts::{PI, TAU};
use std::sync::Arc as StdArc;

/// Radii r_m = 1 − 2^{−m} for m in [m_lo, m_hi].
#[derive(Debug, Clone, Copy)]
pub struct RadialSchedule {
    pub m_lo: u32,
    pub m_hi: u32,
}

impl Default for RadialSchedule {
    fn default() -> Self {
        Self { m_lo: 4, m_hi: 14 }
    }
}

impl RadialSchedule {
    pub fn new(m_lo: u32, m_hi: u32) -> Self {
        assert!(m_lo <= m_hi);
        Self { m_lo, m_hi }
    }

    /// Same schedule pushed `extra` octaves closer to the circle; used near
    /// band edges.
    pub fn deeper(&self, extra: u32) -> Self {
        Self {
            m_lo: self.m_lo,
            m_hi: self.m_hi + extra,
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        (self.m_lo..=self.m_hi)
            .map(|m| 1.0 - 2f64.powi(-(m as i32)))
            .collect()
    }

    pub fn len(&self) -> usize {
        (self.m_hi - self.m_lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Richardson extrapolation of g(h) sampled at h = 2^{−m}, m increasing.
/// Returns the extrapolated limit and a correction-based error estimate.
pub fn radial_limit(values: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty());
    let mut row: Vec<f64> = values.to_vec();
    let mut err = f64::INFINITY;
    let levels = row.len().min(6);
    for j in 1..levels {
        let fac = 2f64.powi(j as i32);
        let mut next = Vec::with_capacity(row.len() - 1);
        for i in 1..row.len() {
            next.push((fac * row[i] - row[i - 1]) / (fac - 1.0));
        }
        err = (next.last().unwrap() - row.last().unwrap()).abs();
        row = next;
    }
    (*row.last().unwrap(), err)
}

pub fn radial_limit_c(values: &[C64]) -> (C64, f64) {
    let (re, e1) = radial_limit(&values.iter().map(|v| v.re).collect::<Vec<_>>());
    let (im, e2) = radial_limit(&values.iter().map(|v| v.im).collect::<Vec<_>>());
    (C64::new(re, im), e1.max(e2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Re f ≥ 0 on 𝔻.
    Caratheodory,
    /// Re f ≤ 0 on 𝔻.
    AntiCaratheodory,
}

type Evaluator = StdArc<dyn Fn(C64) -> Result<C64> + Send + Sync>;

/// A Caratheodory (or anti-Caratheodory) function as an evaluator on ℂ∖∂𝔻.
#[derive(Clone)]
pub struct CaratheodoryFunction {
    eval: Evaluator,
    pub orientation: Orientation,
}

impl CaratheodoryFunction {
    pub fn from_fn<F>(orientation: Orientation, f: F) -> Self
    where
        F: Fn(C64) -> Result<C64> + Send + Sync + 'static,
    {
        Self {
            eval: StdArc::new(f),
            orientation,
        }
    }

    /// f(z) = ic + ∮ dμ (ζ+z)/(ζ−z); for |z| > 1 this is the measure-side
    /// extension, which obeys f(z) = −conj(f(1/conj z)).
    pub fn from_measure(measure: SpectralMeasure, c: f64) -> Self {
        Self::from_fn(Orientation::Caratheodory, move |z| {
            measure.herglotz_transform(c, z)
        })
    }

    pub fn constant(value: C64) -> Self {
        let o = if value.re >= 0.0 {
            Orientation::Caratheodory
        } else {
            Orientation::AntiCaratheodory
        };
        Self::from_fn(o, move |_| Ok(value))
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let m = z.norm();
        if (m - 1.0).abs() < 1e-12 {
            return Err(Error::OnUnitCircle { modulus: m });
        }
        (self.eval)(z)
    }

    /// Im f(0).
    pub fn imag_constant(&self) -> Result<f64> {
        Ok(self.eval(C64::new(0.0, 0.0))?.im)
    }

    /// Re f(0) = total mass of the representing measure.
    pub fn mass(&self) -> Result<f64> {
        Ok(self.eval(C64::new(0.0, 0.0))?.re)
    }
}

/// A Schur (or anti-Schur) function; an anti-Schur function stores its
/// reciprocal as the bounded object.
#[derive(Clone)]
pub struct SchurFunction {
    eval: Evaluator,
    pub orientation: SchurOrientation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurOrientation {
    /// |φ| ≤ 1 on 𝔻.
    Schur,
    /// |1/φ| ≤ 1 on 𝔻; the evaluator returns φ itself (possibly ∞).
    AntiSchur,
}

impl SchurFunction {
    pub fn from_fn<F>(orientation: SchurOrientation, f: F) -> Self
    where
        F: Fn(C64) -> Result<C64> + Send + Sync + 'static,
    {
        Self {
            eval: StdArc::new(f),
            orientation,
        }
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        (self.eval)(z)
    }
}

/// Cayley transform φ = (f − 1)/(f + 1); Caratheodory ↦ Schur and
/// anti-Caratheodory ↦ anti-Schur.
pub fn cayley(f: &CaratheodoryFunction) -> SchurFunction {
    let inner = f.clone();
    let orientation = match f.orientation {
        Orientation::Caratheodory => SchurOrientation::Schur,
        Orientation::AntiCaratheodory => SchurOrientation::AntiSchur,
    };
    SchurFunction::from_fn(orientation, move |z| {
        let v = inner.eval(z)?;
        Ok((v - 1.0) / (v + 1.0))
    })
}

/// Inverse Cayley transform f = (1 + φ)/(1 − φ). Evaluation at a pole
/// (φ = 1) yields an infinity marker, not an error.
pub fn cayley_inverse(phi: &SchurFunction) -> CaratheodoryFunction {
    let inner = phi.clone();
    let orientation = match phi.orientation {
        SchurOrientation::Schur => Orientation::Caratheodory,
        SchurOrientation::AntiSchur => Orientation::AntiCaratheodory,
    };
    CaratheodoryFunction::from_fn(orientation, move |z| {
        let v = inner.eval(z)?;
        let denom = 1.0 - v;
        if denom.norm() == 0.0 {
            return Ok(C64::new(f64::INFINITY, 0.0));
        }
        Ok((1.0 + v) / denom)
    })
}

/// ic + ∮ dμ (ζ+z)/(ζ−z); thin wrapper kept for symmetry with the operation
/// names used elsewhere.
pub fn herglotz_eval(measure: &SpectralMeasure, c: f64, z: C64) -> Result<C64> {
    measure.herglotz_transform(c, z)
}

/// Radial-limit a.c. density at ζ.
#[derive(Debug, Clone, Copy)]
pub struct AcDensity {
    pub value: f64,
    /// Extrapolant dipped below −1e−8 and was clamped to zero.
    pub clamped: bool,
    /// Re f(rζ) grows like 1/(1−r): ζ sits in the singular support.
    pub diverged: bool,
}

/// dμ_ac/dμ0 (ζ) = lim_{r↑1} Re f(rζ).
pub fn ac_density(f: &CaratheodoryFunction, zeta: C64, sched: RadialSchedule) -> Result<AcDensity> {
    let m = zeta.norm();
    if (m - 1.0).abs() > 1e-12 {
        return Err(Error::Config {
            what: format!("ac_density expects |zeta| = 1, got {m}"),
        });
    }
    let radii = sched.radii();
    let vals: Result<Vec<f64>> = radii.iter().map(|&r| Ok(f.eval(zeta * r)?.re)).collect();
    let vals = vals?;
    // divergence: (1-r) * Re f stabilizing at a positive level. Bounded f
    // halves this quantity per octave (ratio 0.5); an atom keeps it flat
    // (ratio 1). The 0.75 margin keeps truncation noise on bounded values
    // from flipping the test.
    let n = vals.len();
    if n >= 3 {
        let t_last = (1.0 - radii[n - 1]) * vals[n - 1];
        let t_prev = (1.0 - radii[n - 2]) * vals[n - 2];
        if t_last > 1e-6 && t_last > 0.75 * t_prev {
            return Ok(AcDensity {
                value: f64::INFINITY,
                clamped: false,
                diverged: true,
            });
        }
    }
    let (value, _) = radial_limit(&vals);
    if value < -1e-8 {
        Ok(AcDensity {
            value: 0.0,
            clamped: true,
            diverged: false,
        })
    } else {
        Ok(AcDensity {
            value: value.max(0.0),
            clamped: false,
            diverged: false,
        })
    }
}

/// Outcome of the pure-point probe lim (1−r)/2 · f(rζ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomProbe {
    Atom {
        weight: f64,
    },
    /// Limit landed in the gray zone (1e−7, 1e−4]; reported, not asserted.
    Unresolved {
        weight: f64,
    },
    None,
}

const ATOM_THRESHOLD: f64 = 1e-4;
const ATOM_FLOOR: f64 = 1e-7;

pub fn atom_weight(
    f: &CaratheodoryFunction,
    zeta: C64,
    sched: RadialSchedule,
) -> Result<AtomProbe> {
    let radii = sched.radii();
    let vals: Result<Vec<f64>> = radii
        .iter()
        .map(|&r| Ok(0.5 * (1.0 - r) * f.eval(zeta * r)?.re))
        .collect();
    let (w, _) = radial_limit(&vals?);
    Ok(if w > ATOM_THRESHOLD {
        AtomProbe::Atom { weight: w }
    } else if w > ATOM_FLOOR {
        AtomProbe::Unresolved { weight: w }
    } else {
        AtomProbe::None
    })
}

/// Measure reconstructed from a Caratheodory function over one arc:
/// a sampled density, detected atoms, and the arc mass
/// μ(arc) = lim_{r↑1} (2π)^{−1} ∫ Re f(r e^{iθ}) dθ.
#[derive(Debug, Clone)]
pub struct ReconstructedMeasure {
    pub arc: CircleArc,
    pub thetas: Vec<f64>,
    pub density: Vec<f64>,
    pub atoms: Vec<Atom>,
    /// Grid angles where the atom probe landed in the gray zone.
    pub unresolved: Vec<f64>,
    pub mass: f64,
    /// False when the radial extrapolation of the arc mass had not settled;
    /// the mass is still reported.
    pub converged: bool,
}

pub fn reconstruct_measure(
    f: &CaratheodoryFunction,
    arc: &CircleArc,
    grid: usize,
    sched: RadialSchedule,
) -> Result<ReconstructedMeasure> {
    assert!(grid >= 4);
    let thetas: Vec<f64> = (0..grid)
        .map(|i| arc.theta0() + (i as f64 + 0.5) * arc.width() / grid as f64)
        .collect();
    let radii = sched.radii();

    // Arc mass at each radius by the midpoint rule, then r ↑ 1.
    let mut masses = Vec::with_capacity(radii.len());
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(radii.len());
    for &r in &radii {
        let row: Result<Vec<f64>> = thetas
            .iter()
            .map(|&t| Ok(f.eval(C64::from_polar(r, t))?.re))
            .collect();
        let row = row?;
        masses.push(row.iter().sum::<f64>() * arc.width() / (grid as f64 * TAU));
        rows.push(row);
    }
    let (mass, mass_err) = radial_limit(&masses);
    let converged = mass_err <= 1e-6 * mass.abs().max(1.0);

    let threads = crate::util::effective_threads();
    let density_probe: Vec<(f64, Option<Atom>, bool)> = parallel_map(grid, threads, |i| {
        let zeta = C64::from_polar(1.0, thetas[i]);
        let column: Vec<f64> = rows.iter().map(|row| row[i]).collect();
        let (d, _) = radial_limit(&column);
        match atom_weight(f, zeta, sched) {
            Ok(AtomProbe::Atom { weight }) => (f64::INFINITY, Some(Atom { zeta, weight }), false),
            Ok(AtomProbe::Unresolved { .. }) => (d.max(0.0), None, true),
            _ => (d.max(0.0), None, false),
        }
    });

    let mut density = Vec::with_capacity(grid);
    let mut atoms = Vec::new();
    let mut unresolved = Vec::new();
    for (i, (d, atom, gray)) in density_probe.into_iter().enumerate() {
        density.push(d);
        if let Some(a) = atom {
            atoms.push(a);
        }
        if gray {
            unresolved.push(thetas[i]);
        }
    }

    Ok(ReconstructedMeasure {
        arc: *arc,
        thetas,
        density,
        atoms,
        unresolved,
        mass,
        converged,
    })
}

/// Boundary phase profile Ξ(ζ) ∈ [−π/2, π/2] on a uniform grid.
#[derive(Debug, Clone)]
pub struct XiProfile {
    pub site: Option<i64>,
    pub xi: Vec<f64>,
}

impl XiProfile {
    pub fn grid(&self) -> usize {
        self.xi.len()
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.xi.len() as f64
    }

    /// ∮ Ξ dμ0 by the uniform rule.
    pub fn mean(&self) -> f64 {
        self.xi.iter().sum::<f64>() / self.xi.len() as f64
    }

    /// ∮ Ξ(ζ) conj(ζ)^j dμ0.
    pub fn conj_moment(&self, j: i64) -> C64 {
        let n = self.xi.len();
        let mut s = C64::new(0.0, 0.0);
        for (m, &x) in self.xi.iter().enumerate() {
            s += C64::from_polar(1.0, -TAU * (m as f64) * (j as f64) / n as f64) * x;
        }
        s / n as f64
    }

    /// value range check against [−π/2 − slack, π/2 + slack]
    pub fn range_violation(&self) -> f64 {
        self.xi
            .iter()
            .map(|&x| (x.abs() - PI / 2.0).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Exponential representation data: f(z) = exp(−i(id' + ∮ dμ0 Υ (ζ+z)/(ζ−z)))
/// bookkeeping reduced to d = −Re ln f(0) and the boundary profile.
pub struct ExpHerglotz {
    pub d: f64,
    pub upsilon: Vec<f64>,
    pub xi: XiProfile,
}

/// Boundary phase by radial continuation. The argument of i·f is tracked
/// continuously along each radius starting from z = 0; a persistent jump
/// above π between refined radial neighbors is an error (the caller must
/// refine), never silently unwrapped.
pub fn exp_herglotz(
    f: &CaratheodoryFunction,
    grid: usize,
    sched: RadialSchedule,
) -> Result<ExpHerglotz> {
    let f0 = f.eval(C64::new(0.0, 0.0))?;
    if f0.norm() == 0.0 {
        return Err(Error::VanishingAtOrigin);
    }
    let d = -f0.norm().ln();
    let threads = crate::util::effective_threads();
    let per_point: Vec<Result<f64>> = parallel_map(grid, threads, |j| {
        let zeta = C64::from_polar(1.0, TAU * j as f64 / grid as f64);
        tracked_upsilon(f, zeta, f0, sched)
    });
    let mut upsilon = Vec::with_capacity(grid);
    for v in per_point {
        upsilon.push(v?);
    }
    let xi = XiProfile {
        site: None,
        xi: upsilon.iter().map(|u| u - PI / 2.0).collect(),
    };
    Ok(ExpHerglotz { d, upsilon, xi })
}

/// Υ(ζ) = lim_{r↑1} arg(i f(rζ)), with the branch carried from arg(i f(0)).
///
/// Points whose extrapolation has not settled (band edges, where boundary
/// convergence degrades to fractional powers of 1 − r) get their schedule
/// extended octave by octave before the limit is accepted.
fn tracked_upsilon(
    f: &CaratheodoryFunction,
    zeta: C64,
    f0: C64,
    sched: RadialSchedule,
) -> Result<f64> {
    let i = C64::new(0.0, 1.0);
    let mut arg_prev = (i * f0).arg();
    let mut w_prev = i * f0;
    let mut r_prev = 0.0f64;
    let mut tracked = Vec::new();
    let mut m_hi = sched.m_hi;
    let mut m = sched.m_lo;
    let mut u;
    loop {
        while m <= m_hi {
            let r = 1.0 - 2f64.powi(-(m as i32));
            let w = i * f.eval(zeta * r)?;
            arg_prev = continue_arg(f, zeta, r_prev, w_prev, arg_prev, r, w, 0)?;
            w_prev = w;
            r_prev = r;
            tracked.push(arg_prev);
            m += 1;
        }
        let (limit, err) = radial_limit(&tracked);
        u = limit;
        if err <= 1e-7 || m_hi >= sched.m_hi + 16 {
            break;
        }
        m_hi += 4;
    }
    // Caratheodory range is [0, π]; tolerate rounding spill.
    Ok(u.clamp(-1e-8, PI + 1e-8).clamp(0.0, PI))
}

#[allow(clippy::too_many_arguments)]
fn continue_arg(
    f: &CaratheodoryFunction,
    zeta: C64,
    r_prev: f64,
    w_prev: C64,
    arg_prev: f64,
    r: f64,
    w: C64,
    depth: u32,
) -> Result<f64> {
    let step = (w / w_prev).arg();
    if step.abs() <= PI / 2.0 {
        return Ok(arg_prev + step);
    }
    if depth >= 24 {
        return Err(Error::BranchTracking { jump: step.abs() });
    }
    let r_mid = 0.5 * (r_prev + r);
    let w_mid = C64::new(0.0, 1.0) * f.eval(zeta * r_mid)?;
    let a_mid = continue_arg(f, zeta, r_prev, w_prev, arg_prev, r_mid, w_mid, depth + 1)?;
    continue_arg(f, zeta, r_mid, w_mid, a_mid, r, w, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;
    use num_complex::Complex64 as C;

    #[test]
    fn radial_limit_converges_linearly_corrected() {
        // g(h) = 3 - 2h + h^2 at h = 2^-m
        let vals: Vec<f64> = (4..=12)
            .map(|m| {
                let h = 2f64.powi(-m);
                3.0 - 2.0 * h + h * h
            })
            .collect();
        let (l, _) = radial_limit(&vals);
        assert!((l - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_function_density_and_mass() {
        let f = CaratheodoryFunction::constant(C::new(1.0, 0.0));
        let sched = RadialSchedule::default();
        for m in 0..8 {
            let zeta = C::from_polar(1.0, 0.7 * m as f64);
            let d = ac_density(&f, zeta, sched).unwrap();
            assert!((d.value - 1.0).abs() < 1e-12 && !d.clamped && !d.diverged);
            assert_eq!(atom_weight(&f, zeta, sched).unwrap(), AtomProbe::None);
        }
        // measure over an arc: mass = width / 2pi, flat density 1
        let arc = CircleArc::closed(0.3, 0.3 + 1.6).unwrap();
        let rec = reconstruct_measure(&f, &arc, 64, sched).unwrap();
        assert!((rec.mass - 1.6 / TAU).abs() < 1e-10);
        assert!(rec.atoms.is_empty() && rec.unresolved.is_empty());
        assert!(rec.density.iter().all(|&d| (d - 1.0).abs() < 1e-10));
        assert!(rec.converged);
    }

    #[test]
    fn single_atom_is_detected_with_weight() {
        let zeta0 = C::new(1.0, 0.0);
        let f = CaratheodoryFunction::from_measure(SpectralMeasure::point_mass(zeta0, 1.0), 0.0);
        let sched = RadialSchedule::new(4, 18);
        match atom_weight(&f, zeta0, sched).unwrap() {
            AtomProbe::Atom { weight } => assert!((weight - 1.0).abs() < 1e-6),
            other => panic!("expected atom, got {other:?}"),
        }
        // ac density at the atom diverges
        let d = ac_density(&f, zeta0, sched).unwrap();
        assert!(d.diverged);
        // away from the atom the density is the kernel's ac part: zero mass
        let far = C::from_polar(1.0, 2.5);
        match atom_weight(&f, far, sched).unwrap() {
            AtomProbe::None => {}
            other => panic!("false positive {other:?}"),
        }
    }

    #[test]
    fn reconstruction_finds_grid_aligned_atom() {
        let zeta0 = C::new(1.0, 0.0);
        let f = CaratheodoryFunction::from_measure(SpectralMeasure::point_mass(zeta0, 1.0), 0.0);
        // odd grid over [-1/2, 1/2] puts the middle node exactly on the atom
        let arc = CircleArc::closed(-0.5, 0.5).unwrap();
        let rec = reconstruct_measure(&f, &arc, 25, RadialSchedule::new(4, 18)).unwrap();
        assert_eq!(rec.atoms.len(), 1);
        assert!((rec.atoms[0].weight - 1.0).abs() < 1e-6);
        // a grid this coarse cannot resolve the Poisson spike at the deepest
        // radii, and the mass extrapolation must say so
        assert!(!rec.converged);
    }

    #[test]
    fn cayley_pair_roundtrip() {
        let mu = SpectralMeasure::Atomic {
            atoms: vec![
                Atom {
                    zeta: C::from_polar(1.0, 1.0),
                    weight: 0.6,
                },
                Atom {
                    zeta: C::from_polar(1.0, 4.0),
                    weight: 0.4,
                },
            ],
        };
        let f = CaratheodoryFunction::from_measure(mu, 0.3);
        let phi = cayley(&f);
        let back = cayley_inverse(&phi);
        let mut rng = SplitMix64::new(77);
        for _ in 0..100 {
            let z = rng.disk(0.97);
            let a = f.eval(z).unwrap();
            let b = back.eval(z).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
            assert!(phi.eval(z).unwrap().norm() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn cayley_of_constants() {
        let f = CaratheodoryFunction::constant(C::new(1.0, 0.0));
        let phi = cayley(&f);
        assert!(phi.eval(C::new(0.2, 0.1)).unwrap().norm() < 1e-15);
        // anti case: f = -1 maps to phi with 1/phi = 0 (phi = inf marker at
        // the Cayley pole is avoided; (f-1)/(f+1) = -2/0)
        let fm = CaratheodoryFunction::constant(C::new(-1.0, 0.0));
        let phim = cayley(&fm);
        let v = phim.eval(C::new(0.1, 0.0)).unwrap();
        assert!(!v.is_finite() || v.norm() > 1e12);
    }

    #[test]
    fn reflection_symmetry_of_measure_extension() {
        let mu = SpectralMeasure::Atomic {
            atoms: vec![
                Atom {
                    zeta: C::from_polar(1.0, 0.5),
                    weight: 0.5,
                },
                Atom {
                    zeta: C::from_polar(1.0, 3.0),
                    weight: 0.5,
                },
            ],
        };
        let f = CaratheodoryFunction::from_measure(mu, 0.1);
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let z = rng.disk(0.9);
            if z.norm() < 1e-3 {
                continue;
            }
            let out = 1.0 / z.conj();
            let lhs = f.eval(out).unwrap();
            let rhs = -f.eval(z).unwrap().conj();
            assert!((lhs - rhs).norm() < 1e-11);
        }
    }

    #[test]
    fn exp_herglotz_of_one_is_flat() {
        let f = CaratheodoryFunction::constant(C::new(1.0, 0.0));
        let e = exp_herglotz(&f, 64, RadialSchedule::default()).unwrap();
        assert!(e.d.abs() < 1e-14);
        assert!(e.upsilon.iter().all(|&u| (u - PI / 2.0).abs() < 1e-12));
        assert!(e.xi.xi.iter().all(|&x| x.abs() < 1e-12));
        assert!(e.xi.mean().abs() < 1e-12);
    }

    #[test]
    fn exp_herglotz_vanishing_origin_is_error() {
        let f = CaratheodoryFunction::from_fn(Orientation::Caratheodory, Ok);
        assert!(matches!(
            exp_herglotz(&f, 8, RadialSchedule::default()),
            Err(Error::VanishingAtOrigin)
        ));
    }

    #[test]
    fn branch_tracking_rejects_discontinuous_argument() {
        // a synthetic evaluator whose phase genuinely jumps by pi across a
        // radius cannot be continued no matter how fine the refinement
        let f = CaratheodoryFunction::from_fn(Orientation::Caratheodory, |z| {
            Ok(if z.norm() < 0.55 {
                C::new(1.0, 0.0)
            } else {
                C::new(-1.0, 0.0)
            })
        });
        assert!(matches!(
            exp_herglotz(&f, 4, RadialSchedule::default()),
            Err(Error::BranchTracking { .. })
        ));
    }

    #[test]
    fn cayley_inverse_pole_is_infinity_marker() {
        let phi = SchurFunction::from_fn(SchurOrientation::Schur, |_| Ok(C::new(1.0, 0.0)));
        let f = cayley_inverse(&phi);
        let v = f.eval(C::new(0.3, 0.0)).unwrap();
        assert!(v.re.is_infinite());
    }

    #[test]
    fn xi_bounds_and_zero_mean_for_m11_like_function() {
        // a Caratheodory function with f(0) = 1 and a smooth positive density
        // has a smooth Xi profile: zero dmu0-mean, values in [-pi/2, pi/2]
        let n = 1usize << 10;
        let density: Vec<f64> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                1.0 + 0.8 * t.cos() + 0.15 * (2.0 * t).sin()
            })
            .collect();
        let mu = SpectralMeasure::Density {
            density,
            atoms: vec![],
        };
        let f = CaratheodoryFunction::from_measure(mu, 0.0);
        // f(0) = mass = 1, so d = 0 and ∮ Xi dmu0 = 0
        let e = exp_herglotz(&f, 1 << 10, RadialSchedule::new(4, 16)).unwrap();
        assert!(e.d.abs() < 1e-12);
        assert!(e.xi.range_violation() < 1e-8);
        assert!(e.xi.mean().abs() < 1e-6, "mean {}", e.xi.mean());
    }

    #[test]
    fn gap_values_purely_imaginary_and_decreasing() {
        // measure supported on [pi/2, 3pi/2]: on the complementary gap the
        // continuation is purely imaginary with strictly decreasing Im.
        let n = 512;
        let atoms: Vec<Atom> = (0..n)
            .map(|j| {
                let t = PI / 2.0 + PI * (j as f64 + 0.5) / n as f64;
                Atom {
                    zeta: C::from_polar(1.0, t),
                    weight: 1.0 / n as f64,
                }
            })
            .collect();
        let f = CaratheodoryFunction::from_measure(SpectralMeasure::Atomic { atoms }, 0.0);
        let r = 1.0 - 1e-10;
        let gap: Vec<f64> = (1..40).map(|i| -PI / 2.0 + PI * i as f64 / 40.0).collect();
        let mut prev_im = f64::INFINITY;
        for &t in &gap {
            let v = f.eval(C::from_polar(r, t)).unwrap();
            assert!(v.re.abs() < 1e-7, "Re {} at {t}", v.re);
            assert!(v.im < prev_im, "not strictly decreasing at {t}");
            prev_im = v.im;
        }
    }
}
