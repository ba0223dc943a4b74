//! Measures on the unit circle and their Herglotz transforms.
//!
//! Two scalar representations coexist: purely atomic measures (what a finite
//! eigendecomposition produces) and densities sampled on a uniform grid with
//! respect to dμ0 = dθ/2π, with a separate list of flagged atoms. The 2×2
//! matrix-valued measure d(δ_i, E(·)δ_j) keeps one rank-one Hermitian weight
//! per eigenvector.
//!
//! Quadrature convention: a density sampled at N uniform angles (N a power of
//! two) is integrated by the periodic trapezoid rule, i.e. the plain mean.
//! This is exact for Laurent polynomials of degree < N/2, which is what every
//! moment test in this crate leans on.

use crate::error::{Error, Result};
use crate::linalg::C64;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub zeta: C64,
    pub weight: f64,
}

/// Scalar nonnegative measure on ∂𝔻.
#[derive(Debug, Clone)]
pub enum SpectralMeasure {
    Atomic {
        atoms: Vec<Atom>,
    },
    /// `density[j]` is dμ/dμ0 at ζ_j = exp(2πi j / N); atoms ride on top.
    Density {
        density: Vec<f64>,
        atoms: Vec<Atom>,
    },
}

impl SpectralMeasure {
    /// Normalized Lebesgue measure dμ0 sampled at `n` angles.
    pub fn lebesgue(n: usize) -> Self {
        SpectralMeasure::Density {
            density: vec![1.0; n],
            atoms: Vec::new(),
        }
    }

    pub fn point_mass(zeta: C64, weight: f64) -> Self {
        SpectralMeasure::Atomic {
            atoms: vec![Atom { zeta, weight }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        match self {
            SpectralMeasure::Atomic { atoms } => atoms,
            SpectralMeasure::Density { atoms, .. } => atoms,
        }
    }

    pub fn total_mass(&self) -> f64 {
        match self {
            SpectralMeasure::Atomic { atoms } => atoms.iter().map(|a| a.weight).sum(),
            SpectralMeasure::Density { density, atoms } => {
                let grid: f64 = density.iter().sum::<f64>() / density.len() as f64;
                grid + atoms.iter().map(|a| a.weight).sum::<f64>()
            }
        }
    }

    /// ∮ dμ(ζ) ζ^j.
    pub fn moment(&self, j: i64) -> C64 {
        let pow = |z: C64| {
            if j >= 0 {
                z.powi(j as i32)
            } else {
                z.conj().powi((-j) as i32)
            }
        };
        match self {
            SpectralMeasure::Atomic { atoms } => atoms.iter().map(|a| pow(a.zeta) * a.weight).sum(),
            SpectralMeasure::Density { density, atoms } => {
                let n = density.len();
                let mut s = C64::new(0.0, 0.0);
                for (m, &d) in density.iter().enumerate() {
                    let zeta = C64::from_polar(1.0, TAU * m as f64 / n as f64);
                    s += pow(zeta) * d;
                }
                s /= n as f64;
                s + atoms.iter().map(|a| pow(a.zeta) * a.weight).sum::<C64>()
            }
        }
    }

    /// ic + ∮ dμ(ζ) (ζ + z)/(ζ − z); errors within 1e−12 of the circle.
    pub fn herglotz_transform(&self, c: f64, z: C64) -> Result<C64> {
        let m = z.norm();
        if (m - 1.0).abs() < 1e-12 {
            return Err(Error::OnUnitCircle { modulus: m });
        }
        let kernel = |zeta: C64| (zeta + z) / (zeta - z);
        let mut sum = C64::new(0.0, c);
        match self {
            SpectralMeasure::Atomic { atoms } => {
                for a in atoms {
                    sum += kernel(a.zeta) * a.weight;
                }
            }
            SpectralMeasure::Density { density, atoms } => {
                let n = density.len();
                let mut grid = C64::new(0.0, 0.0);
                for (j, &d) in density.iter().enumerate() {
                    let zeta = C64::from_polar(1.0, TAU * j as f64 / n as f64);
                    grid += kernel(zeta) * d;
                }
                sum += grid / n as f64;
                for a in atoms {
                    sum += kernel(a.zeta) * a.weight;
                }
            }
        }
        Ok(sum)
    }
}

/// One rank-one Hermitian 2×2 weight per eigenvector.
#[derive(Debug, Clone, Copy)]
pub struct MatrixAtom {
    pub zeta: C64,
    pub weight: [[C64; 2]; 2],
}

#[derive(Debug, Clone)]
pub struct MatrixSpectralMeasure {
    pub atoms: Vec<MatrixAtom>,
}

impl MatrixSpectralMeasure {
    /// tr ∮ dΩ = sum of the two diagonal masses.
    pub fn trace_mass(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| (a.weight[0][0] + a.weight[1][1]).re)
            .sum()
    }

    /// Largest violation of positive semidefiniteness over all atoms
    /// (negative diagonal or negative determinant).
    pub fn psd_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.atoms {
            let d0 = a.weight[0][0].re;
            let d1 = a.weight[1][1].re;
            let det = (a.weight[0][0] * a.weight[1][1] - a.weight[0][1] * a.weight[1][0]).re;
            worst = worst.max(-d0).max(-d1).max(-det);
        }
        worst
    }

    /// Largest |Ω_{1,0} − conj(Ω_{0,1})| over atoms.
    pub fn hermitian_violation(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| (a.weight[1][0] - a.weight[0][1].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise Herglotz transform ∮ dΩ(ζ) (ζ+z)/(ζ−z).
    pub fn herglotz_transform(&self, z: C64) -> Result<crate::linalg::Mat2> {
        let m = z.norm();
        if (m - 1.0).abs() < 1e-12 {
            return Err(Error::OnUnitCircle { modulus: m });
        }
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for a in &self.atoms {
            let k = (a.zeta + z) / (a.zeta - z);
            for (row, w_row) in out.iter_mut().zip(a.weight.iter()) {
                for (entry, w) in row.iter_mut().zip(w_row.iter()) {
                    *entry += w * k;
                }
            }
        }
        Ok(crate::linalg::Mat2(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn lebesgue_kernel_normalization() {
        // ∮ dμ0 (ζ+z)/(ζ−z) = 1 inside the disk.
        let mu0 = SpectralMeasure::lebesgue(1 << 12);
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let z = rng.disk(0.95);
            let f = mu0.herglotz_transform(0.0, z).unwrap();
            assert!(
                (f - C64::new(1.0, 0.0)).norm() < 1e-10,
                "kernel normalization failed at z = {z}"
            );
        }
    }

    #[test]
    fn single_atom_arithmetic() {
        let mu = SpectralMeasure::point_mass(C64::new(1.0, 0.0), 1.0);
        let f0 = mu.herglotz_transform(0.0, C64::new(0.0, 0.0)).unwrap();
        assert!((f0 - C64::new(1.0, 0.0)).norm() < 1e-15);
        let f = mu.herglotz_transform(0.0, C64::new(0.5, 0.0)).unwrap();
        assert!((f - C64::new(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn transform_at_origin_is_ic_plus_mass() {
        let mu = SpectralMeasure::Atomic {
            atoms: vec![
                Atom {
                    zeta: C64::from_polar(1.0, 0.4),
                    weight: 0.25,
                },
                Atom {
                    zeta: C64::from_polar(1.0, 2.0),
                    weight: 0.5,
                },
            ],
        };
        let f0 = mu.herglotz_transform(0.7, C64::new(0.0, 0.0)).unwrap();
        assert!((f0 - C64::new(0.75, 0.7)).norm() < 1e-15);
    }

    #[test]
    fn circle_evaluation_is_rejected() {
        let mu = SpectralMeasure::lebesgue(64);
        assert!(matches!(
            mu.herglotz_transform(0.0, C64::new(1.0, 0.0)),
            Err(Error::OnUnitCircle { .. })
        ));
    }

    #[test]
    fn lebesgue_moments_vanish() {
        let mu = SpectralMeasure::lebesgue(256);
        assert!((mu.moment(0) - C64::new(1.0, 0.0)).norm() < 1e-14);
        for j in 1..6 {
            assert!(mu.moment(j).norm() < 1e-14);
            assert!(mu.moment(-j).norm() < 1e-14);
        }
    }
}
