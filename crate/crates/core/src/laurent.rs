//! Laurent polynomials with coefficient recovery by evaluation-interpolation.
//!
//! Coefficient extraction samples the function at N-th roots of unity and
//! inverts the discrete Fourier sum directly. With degrees confined to
//! [−D, D] and N > 2D there is no aliasing, so recovery is exact up to
//! rounding. Synthetic division would work as well; sampling was chosen
//! because every solution object here is already an evaluator.

use crate::linalg::C64;
use std::f64::consts::TAU;

#[derive(Debug, Clone)]
pub struct LaurentPoly {
    /// Degree of `coeffs[0]`; `coeffs[j]` multiplies z^(lo + j).
    pub lo: i64,
    pub coeffs: Vec<C64>,
}

impl LaurentPoly {
    /// Recovers coefficients of a Laurent polynomial with degrees in
    /// [−max_deg, max_deg] from samples of `f` at roots of unity.
    pub fn from_samples(mut f: impl FnMut(C64) -> C64, max_deg: usize) -> Self {
        let n = (2 * max_deg + 2).next_power_of_two();
        let samples: Vec<C64> = (0..n)
            .map(|m| f(C64::from_polar(1.0, TAU * m as f64 / n as f64)))
            .collect();
        let mut coeffs = Vec::with_capacity(2 * max_deg + 1);
        for d in -(max_deg as i64)..=(max_deg as i64) {
            let mut c = C64::new(0.0, 0.0);
            for (m, s) in samples.iter().enumerate() {
                let w = C64::from_polar(1.0, -TAU * (m as f64) * (d as f64) / n as f64);
                c += s * w;
            }
            coeffs.push(c / n as f64);
        }
        Self {
            lo: -(max_deg as i64),
            coeffs,
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        let zinv = 1.0 / z;
        let mut sum = C64::new(0.0, 0.0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let d = self.lo + j as i64;
            sum += if d >= 0 {
                c * z.powi(d as i32)
            } else {
                c * zinv.powi((-d) as i32)
            };
        }
        sum
    }

    /// Coefficient of z^d, zero outside the stored range.
    pub fn coeff(&self, d: i64) -> C64 {
        let idx = d - self.lo;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Largest |coefficient| outside [lo_keep, hi_keep]; a cheap check that a
    /// function believed to be a Laurent polynomial of known span really is.
    pub fn tail_mass(&self, lo_keep: i64, hi_keep: i64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| {
                let d = self.lo + *j as i64;
                d < lo_keep || d > hi_keep
            })
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn recovers_known_coefficients() {
        let f = |z: C64| {
            C64::new(2.0, 0.0) * z.powi(3) - z
                + C64::new(0.0, 1.0)
                + C64::new(0.5, -0.25) * (1.0 / z).powi(2)
        };
        let p = LaurentPoly::from_samples(f, 4);
        assert!((p.coeff(3) - C64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((p.coeff(1) + C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((p.coeff(0) - C64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((p.coeff(-2) - C64::new(0.5, -0.25)).norm() < 1e-12);
        assert!(p.coeff(2).norm() < 1e-12);
        assert!(p.tail_mass(-2, 3) < 1e-12);
    }

    #[test]
    fn eval_matches_source_off_circle() {
        let mut rng = SplitMix64::new(12);
        let f = |z: C64| z.powi(2) * C64::new(1.5, 0.5) + (1.0 / z) * C64::new(0.0, -2.0);
        let p = LaurentPoly::from_samples(f, 3);
        for _ in 0..20 {
            let z = rng.disk(0.9) + C64::new(0.2, 0.0);
            if z.norm() < 0.05 {
                continue;
            }
            assert!((p.eval(z) - f(z)).norm() < 1e-10);
        }
    }
}
