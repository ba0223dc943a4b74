//! Verblunsky coefficient sequences and gauge transforms.
//!
//! A sequence α = {α_k}_{k∈ℤ} ⊂ 𝔻 determines everything else in this crate:
//! ρ_k = sqrt(1 − |α_k|²), a_k = 1 + α_k, b_k = 1 − α_k, the CMV operator,
//! its transfer matrices and its Weyl theory. Three generators are supported:
//! an explicit finite window, a periodic cycle, and a geometric family
//! α_k = α_0 g^k with |g| = 1.
//!
//! Gauge transforms β_k = γ_0 γ_1^k α_k (|γ_0| = |γ_1| = 1) act on sequences.
//! Explicit and geometric generators absorb the gauge into their data; a
//! periodic cycle only stays periodic when γ_1^ω = 1, so the gauge is kept as
//! a stored twist and periodicity is re-checked on demand.

use crate::error::{Error, Result};
use crate::util::unit_pow;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Largest admitted coefficient modulus. Values with |α| ≥ 1 − 1e−12 are
/// rejected at construction: ρ_k conditioning degenerates next to the circle,
/// and unimodular values are reserved for the lattice-splitting boundary
/// device in the `cmv` module.
pub const MAX_COEFFICIENT_MODULUS: f64 = 1.0 - 1e-12;

/// Tolerance for accepting an allegedly unimodular number before
/// renormalizing it to exact unit modulus.
pub const UNIMODULAR_TOL: f64 = 1e-14;

fn check_coefficient(alpha: Complex64) -> Result<Complex64> {
    let m = alpha.norm();
    if m >= MAX_COEFFICIENT_MODULUS {
        Err(Error::CoefficientOutsideDisk { modulus: m })
    } else {
        Ok(alpha)
    }
}

fn check_unimodular(g: Complex64) -> Result<Complex64> {
    let m = g.norm();
    if (m - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular { modulus: m });
    }
    Ok(g / m)
}

/// A gauge transform (γ_0, γ_1), both unimodular, acting as
/// α_k ↦ γ_0 γ_1^k α_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeTransform {
    gamma0: Complex64,
    gamma1: Complex64,
}

impl GaugeTransform {
    pub fn new(gamma0: Complex64, gamma1: Complex64) -> Result<Self> {
        Ok(Self {
            gamma0: check_unimodular(gamma0)?,
            gamma1: check_unimodular(gamma1)?,
        })
    }

    pub fn identity() -> Self {
        Self {
            gamma0: Complex64::new(1.0, 0.0),
            gamma1: Complex64::new(1.0, 0.0),
        }
    }

    pub fn gamma0(&self) -> Complex64 {
        self.gamma0
    }

    pub fn gamma1(&self) -> Complex64 {
        self.gamma1
    }

    /// Multiplier γ_0 γ_1^k at site k.
    pub fn factor(&self, k: i64) -> Complex64 {
        self.gamma0 * unit_pow(self.gamma1, k)
    }

    /// Composition: applying `self` then `other` equals applying
    /// (γ_0 γ_0', γ_1 γ_1').
    pub fn compose(&self, other: &GaugeTransform) -> Self {
        Self {
            gamma0: self.gamma0 * other.gamma0,
            gamma1: self.gamma1 * other.gamma1,
        }
    }

    pub fn is_identity(&self) -> bool {
        (self.gamma0 - 1.0).norm() == 0.0 && (self.gamma1 - 1.0).norm() == 0.0
    }
}

/// Generator rule of a Verblunsky sequence.
#[derive(Debug, Clone)]
pub enum Generator {
    /// Finitely many stored coefficients; α_(offset + j) = `values[j]`.
    /// Requests outside the stored range are errors.
    Explicit { values: Vec<Complex64>, offset: i64 },
    /// α_k = cycle[k mod ω].
    Periodic { cycle: Vec<Complex64> },
    /// α_k = α_0 g^k with |g| = 1.
    Geometric { alpha0: Complex64, ratio: Complex64 },
}

/// A two-sided Verblunsky sequence: a generator, an accumulated gauge twist,
/// and finitely many patched sites (used for perturbation probes).
#[derive(Debug, Clone)]
pub struct VerblunskySequence {
    generator: Generator,
    twist: GaugeTransform,
    patches: BTreeMap<i64, Complex64>,
}

impl VerblunskySequence {
    pub fn explicit(values: Vec<Complex64>, offset: i64) -> Result<Self> {
        for &v in &values {
            check_coefficient(v)?;
        }
        if values.is_empty() {
            return Err(Error::Config {
                what: "explicit generator needs at least one value".into(),
            });
        }
        Ok(Self {
            generator: Generator::Explicit { values, offset },
            twist: GaugeTransform::identity(),
            patches: BTreeMap::new(),
        })
    }

    pub fn periodic(cycle: Vec<Complex64>) -> Result<Self> {
        for &v in &cycle {
            check_coefficient(v)?;
        }
        if cycle.is_empty() {
            return Err(Error::Config {
                what: "periodic generator needs a nonempty cycle".into(),
            });
        }
        Ok(Self {
            generator: Generator::Periodic { cycle },
            twist: GaugeTransform::identity(),
            patches: BTreeMap::new(),
        })
    }

    pub fn geometric(alpha0: Complex64, ratio: Complex64) -> Result<Self> {
        check_coefficient(alpha0)?;
        let ratio = check_unimodular(ratio)?;
        Ok(Self {
            generator: Generator::Geometric { alpha0, ratio },
            twist: GaugeTransform::identity(),
            patches: BTreeMap::new(),
        })
    }

    /// The zero (free) sequence.
    pub fn free() -> Self {
        Self::periodic(vec![Complex64::new(0.0, 0.0)]).unwrap()
    }

    /// Constant sequence α_k ≡ alpha.
    pub fn constant(alpha: Complex64) -> Result<Self> {
        Self::periodic(vec![alpha])
    }

    /// Overrides the coefficient at one site. The patch participates in
    /// subsequent gauge transforms like any other coefficient.
    pub fn with_patch(mut self, k: i64, alpha: Complex64) -> Result<Self> {
        check_coefficient(alpha)?;
        self.patches.insert(k, alpha);
        Ok(self)
    }

    pub fn alpha(&self, k: i64) -> Result<Complex64> {
        if let Some(&p) = self.patches.get(&k) {
            return Ok(p);
        }
        let base = match &self.generator {
            Generator::Explicit { values, offset } => {
                let lo = *offset;
                let hi = *offset + values.len() as i64 - 1;
                if k < lo || k > hi {
                    return Err(Error::IndexOutOfRange { k, lo, hi });
                }
                values[(k - lo) as usize]
            }
            Generator::Periodic { cycle } => {
                let w = cycle.len() as i64;
                cycle[((k % w + w) % w) as usize]
            }
            Generator::Geometric { alpha0, ratio } => alpha0 * unit_pow(*ratio, k),
        };
        if self.twist.is_identity() {
            Ok(base)
        } else {
            Ok(self.twist.factor(k) * base)
        }
    }

    /// ρ_k = sqrt(1 − |α_k|²) ∈ (0, 1].
    pub fn rho(&self, k: i64) -> Result<f64> {
        Ok((1.0 - self.alpha(k)?.norm_sqr()).sqrt())
    }

    /// a_k = 1 + α_k (positive real part).
    pub fn a(&self, k: i64) -> Result<Complex64> {
        Ok(1.0 + self.alpha(k)?)
    }

    /// b_k = 1 − α_k (positive real part).
    pub fn b(&self, k: i64) -> Result<Complex64> {
        Ok(1.0 - self.alpha(k)?)
    }

    /// Coefficients α_k for k in [k_lo, k_hi].
    pub fn window(&self, k_lo: i64, k_hi: i64) -> Result<Vec<Complex64>> {
        if k_lo > k_hi {
            return Err(Error::InvalidWindow { k_lo, k_hi });
        }
        (k_lo..=k_hi).map(|k| self.alpha(k)).collect()
    }

    /// β_k = γ_0 γ_1^k α_k. Explicit and geometric generators fold the gauge
    /// into their data; periodic generators accumulate it as a twist.
    pub fn apply_gauge(&self, t: &GaugeTransform) -> Self {
        let patches: BTreeMap<i64, Complex64> = self
            .patches
            .iter()
            .map(|(&k, &v)| (k, t.factor(k) * v))
            .collect();
        match &self.generator {
            Generator::Explicit { values, offset } => {
                let values = values
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| t.factor(offset + j as i64) * v)
                    .collect();
                Self {
                    generator: Generator::Explicit {
                        values,
                        offset: *offset,
                    },
                    twist: self.twist,
                    patches,
                }
            }
            Generator::Geometric { alpha0, ratio } => Self {
                generator: Generator::Geometric {
                    alpha0: t.gamma0() * alpha0,
                    ratio: check_unimodular(t.gamma1() * ratio).expect("unimodular product"),
                },
                twist: self.twist,
                patches,
            },
            Generator::Periodic { .. } => Self {
                generator: self.generator.clone(),
                twist: self.twist.compose(t),
                patches,
            },
        }
    }

    /// Effective cycle when the sequence is honestly periodic: the generator
    /// is a cycle of length ω, any accumulated twist satisfies γ_1^ω = 1 (to
    /// 1e−12), and no patches are present. Returns `None` otherwise.
    pub fn periodic_cycle(&self) -> Option<Vec<Complex64>> {
        if !self.patches.is_empty() {
            return None;
        }
        match &self.generator {
            Generator::Periodic { cycle } => {
                let w = cycle.len() as i64;
                if !self.twist.is_identity() {
                    let wrap = unit_pow(self.twist.gamma1(), w);
                    if (wrap - 1.0).norm() > 1e-12 {
                        return None;
                    }
                }
                Some(
                    cycle
                        .iter()
                        .enumerate()
                        .map(|(j, &v)| self.twist.factor(j as i64) * v)
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// (α_0, g) when the sequence is a pure geometric family without patches.
    pub fn geometric_parameters(&self) -> Option<(Complex64, Complex64)> {
        if !self.patches.is_empty() {
            return None;
        }
        match &self.generator {
            Generator::Geometric { alpha0, ratio } => Some((*alpha0, *ratio)),
            _ => None,
        }
    }

    /// Range of k for which coefficients exist: `None` means all of ℤ.
    pub fn stored_range(&self) -> Option<(i64, i64)> {
        match &self.generator {
            Generator::Explicit { values, offset } => {
                Some((*offset, *offset + values.len() as i64 - 1))
            }
            _ => None,
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn geometric_window_direct_evaluation() {
        // alpha0 = 0.5, g = -i: alpha_k = 0.5 * (-i)^k.
        let seq = VerblunskySequence::geometric(c(0.5, 0.0), c(0.0, -1.0)).unwrap();
        let w = seq.window(0, 3).unwrap();
        let expect = [c(0.5, 0.0), c(0.0, -0.5), c(-0.5, 0.0), c(0.0, 0.5)];
        for (got, want) in w.iter().zip(expect.iter()) {
            assert!((got - want).norm() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn periodic_window_is_cyclic_both_directions() {
        let seq = VerblunskySequence::periodic(vec![c(0.3, 0.0)]).unwrap();
        let w = seq.window(-2, 2).unwrap();
        assert!(w.iter().all(|v| (v - c(0.3, 0.0)).norm() == 0.0));

        let seq2 = VerblunskySequence::periodic(vec![c(0.1, 0.0), c(0.0, 0.2)]).unwrap();
        assert_eq!(seq2.alpha(-1).unwrap(), seq2.alpha(1).unwrap());
        assert_eq!(seq2.alpha(-4).unwrap(), seq2.alpha(0).unwrap());
    }

    #[test]
    fn explicit_window_reads_and_rejects_out_of_range() {
        let seq = VerblunskySequence::explicit(vec![c(0.1, 0.0), c(0.2, 0.0)], 0).unwrap();
        let w = seq.window(0, 1).unwrap();
        assert_eq!(w, vec![c(0.1, 0.0), c(0.2, 0.0)]);
        assert!(matches!(
            seq.alpha(2),
            Err(Error::IndexOutOfRange { k: 2, .. })
        ));
        assert!(matches!(seq.window(1, 0), Err(Error::InvalidWindow { .. })));
    }

    #[test]
    fn construction_rejects_near_unit_coefficients() {
        assert!(VerblunskySequence::constant(c(1.0 - 1e-13, 0.0)).is_err());
        assert!(VerblunskySequence::constant(c(0.999, 0.0)).is_ok());
        assert!(VerblunskySequence::geometric(c(0.5, 0.0), c(0.9, 0.0)).is_err());
    }

    #[test]
    fn gauge_on_geometric_folds_into_parameters() {
        // Geometric(0.5, -i) with (1, i) becomes the constant 0.5 sequence.
        let seq = VerblunskySequence::geometric(c(0.5, 0.0), c(0.0, -1.0)).unwrap();
        let t = GaugeTransform::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let g = seq.apply_gauge(&t);
        let (a0, r) = g.geometric_parameters().unwrap();
        assert!((a0 - c(0.5, 0.0)).norm() < 1e-15);
        assert!((r - c(1.0, 0.0)).norm() < 1e-15);
        for k in -5..5 {
            assert!((g.alpha(k).unwrap() - c(0.5, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn identity_gauge_is_identity() {
        let seq = VerblunskySequence::periodic(vec![c(0.3, 0.1), c(-0.2, 0.4)]).unwrap();
        let g = seq.apply_gauge(&GaugeTransform::identity());
        for k in -4..4 {
            assert_eq!(seq.alpha(k).unwrap(), g.alpha(k).unwrap());
        }
    }

    #[test]
    fn gauge_on_periodic_elementwise() {
        let seq = VerblunskySequence::periodic(vec![c(0.3, 0.0), c(0.4, 0.0)]).unwrap();
        let t = GaugeTransform::new(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let g = seq.apply_gauge(&t);
        let cy = g.periodic_cycle().unwrap();
        assert!((cy[0] - c(-0.3, 0.0)).norm() < 1e-15);
        assert!((cy[1] - c(-0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn twisted_periodic_loses_and_regains_periodicity() {
        let seq = VerblunskySequence::periodic(vec![c(0.3, 0.0), c(0.4, 0.0)]).unwrap();
        // gamma1 = i has i^2 = -1 != 1: no longer representable as a 2-cycle.
        let t = GaugeTransform::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let g = seq.apply_gauge(&t);
        assert!(g.periodic_cycle().is_none());
        // a second application restores gamma1^2 = -1 * -1 ... i*i = -1, (-1)^2 = 1 over period 2
        let g2 = g.apply_gauge(&t);
        assert!(g2.periodic_cycle().is_some());
        for k in -3..6 {
            let expect = c(0.0, 1.0).powi(2 * k as i32) * seq.alpha(k).unwrap();
            assert!((g2.alpha(k).unwrap() - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn patches_override_and_gauge() {
        let seq = VerblunskySequence::free()
            .with_patch(3, c(0.5, 0.0))
            .unwrap();
        assert_eq!(seq.alpha(3).unwrap(), c(0.5, 0.0));
        assert_eq!(seq.alpha(2).unwrap(), c(0.0, 0.0));
        let t = GaugeTransform::new(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let g = seq.apply_gauge(&t);
        assert_eq!(g.alpha(3).unwrap(), c(-0.5, 0.0));
        assert!(g.periodic_cycle().is_none());
    }

    proptest! {
        /// |alpha_k| < 1 and rho_k^2 + |alpha_k|^2 = 1 to 1e-14 for all generators.
        #[test]
        fn rho_alpha_identity(re in -0.7f64..0.7, im in -0.7f64..0.7, phase in 0.0f64..6.26) {
            let seq = VerblunskySequence::geometric(
                C::new(re, im),
                C::from_polar(1.0, phase),
            ).unwrap();
            for k in -20..20 {
                let a = seq.alpha(k).unwrap();
                prop_assert!(a.norm() < 1.0);
                let r = seq.rho(k).unwrap();
                prop_assert!(r > 0.0 && r <= 1.0);
                prop_assert!((r * r + a.norm_sqr() - 1.0).abs() < 1e-14);
                prop_assert!(seq.a(k).unwrap().re > 0.0);
                prop_assert!(seq.b(k).unwrap().re > 0.0);
            }
        }

        /// Gauge composition: (g0,g1) then (g0',g1') equals (g0 g0', g1 g1').
        #[test]
        fn gauge_composition(p0 in 0.0f64..6.26, p1 in 0.0f64..6.26,
                             q0 in 0.0f64..6.26, q1 in 0.0f64..6.26) {
            let seq = VerblunskySequence::periodic(vec![
                C::new(0.3, 0.1), C::new(-0.2, 0.25), C::new(0.05, -0.4),
            ]).unwrap();
            let t1 = GaugeTransform::new(C::from_polar(1.0, p0), C::from_polar(1.0, p1)).unwrap();
            let t2 = GaugeTransform::new(C::from_polar(1.0, q0), C::from_polar(1.0, q1)).unwrap();
            let a = seq.apply_gauge(&t1).apply_gauge(&t2);
            let b = seq.apply_gauge(&t1.compose(&t2));
            for k in -12..12 {
                prop_assert!((a.alpha(k).unwrap() - b.alpha(k).unwrap()).norm() < 1e-12);
            }
        }
    }
}
