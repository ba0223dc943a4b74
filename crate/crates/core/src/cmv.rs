//! Finite sections of the CMV operator U = VW.
//!
//! V carries the 2×2 blocks θ_j with even j (acting on sites j−1, j) and W
//! those with odd j. Setting a coefficient α_j to a unimodular value e^{is}
//! makes θ_j diagonal and severs the coupling between sites j−1 and j, so a
//! finite window [k_lo, k_hi] equipped with splitting phases at k_lo and
//! k_hi+1 is an exactly unitary matrix, not an ad hoc truncation. Interior
//! splits are allowed too; they decompose the section into a direct sum.
//!
//! Index parity is global: θ_j goes to V or W according to the parity of the
//! absolute index j, never the position within the section.

use crate::error::{Error, Result};
use crate::linalg::{unitary_eigen, Banded, C64};
use crate::measure::{Atom, MatrixAtom, MatrixSpectralMeasure, SpectralMeasure};
use crate::verblunsky::VerblunskySequence;
use nalgebra::DMatrix;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// One 2×2 factor θ = [[−α, ρ], [ρ, conj(α)]] with ρ = sqrt(1 − |α|²).
#[derive(Debug, Clone, Copy)]
pub struct ThetaFactor {
    pub alpha: C64,
    pub rho: f64,
}

impl ThetaFactor {
    pub fn new(alpha: C64) -> Result<Self> {
        let m = alpha.norm();
        if m >= 1.0 {
            return Err(Error::CoefficientOutsideDisk { modulus: m });
        }
        Ok(Self {
            alpha,
            rho: (1.0 - alpha.norm_sqr()).sqrt(),
        })
    }

    /// Boundary factor with α = e^{is}: diagonal, ρ = 0.
    pub fn splitting(s: f64) -> Self {
        Self {
            alpha: C64::from_polar(1.0, s),
            rho: 0.0,
        }
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [
            [-self.alpha, C64::new(self.rho, 0.0)],
            [C64::new(self.rho, 0.0), self.alpha.conj()],
        ]
    }

    /// max |θ*θ − I|.
    pub fn unitarity_residual(&self) -> f64 {
        let m = self.matrix();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let s = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                let id = if i == j { ONE } else { ZERO };
                worst = worst.max((s - id).norm());
            }
        }
        worst
    }

    pub fn det(&self) -> C64 {
        -self.alpha * self.alpha.conj() - C64::new(self.rho * self.rho, 0.0)
    }
}

/// A finite unitary section of the CMV operator on sites [k_lo, k_hi].
#[derive(Debug, Clone)]
pub struct CmvSection {
    k_lo: i64,
    k_hi: i64,
    /// Sorted splitting positions and phases; first is k_lo, last is k_hi + 1.
    splits: Vec<(i64, f64)>,
    v: Banded,
    w: Banded,
    u: Banded,
}

impl CmvSection {
    /// Section on [k_lo, k_hi] with splitting phases s_lo at k_lo and s_hi at
    /// k_hi + 1. Requires k_hi − k_lo ≥ 2.
    pub fn build(
        seq: &VerblunskySequence,
        k_lo: i64,
        k_hi: i64,
        s_lo: f64,
        s_hi: f64,
    ) -> Result<Self> {
        Self::build_with_splits(seq, k_lo, k_hi, &[(k_lo, s_lo), (k_hi + 1, s_hi)])
    }

    /// Half-lattice section: sites [k0, k0 + n], split with phase 0 at k0
    /// (the standard half-lattice convention) and `s_hi` at k0 + n + 1.
    pub fn half_lattice(seq: &VerblunskySequence, k0: i64, n: usize, s_hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::SectionTooSmall {
                need: 3,
                got: n + 1,
            });
        }
        Self::build(seq, k0, k0 + n as i64, 0.0, s_hi)
    }

    /// General builder: `splits` must be sorted, start at k_lo, end at
    /// k_hi + 1, and may list interior positions, each of which decouples the
    /// section into a direct sum at that bond.
    pub fn build_with_splits(
        seq: &VerblunskySequence,
        k_lo: i64,
        k_hi: i64,
        splits: &[(i64, f64)],
    ) -> Result<Self> {
        if k_hi - k_lo < 2 {
            return Err(Error::SectionTooSmall {
                need: 3,
                got: (k_hi - k_lo + 1).max(0) as usize,
            });
        }
        let n = (k_hi - k_lo + 1) as usize;
        if splits.first().map(|&(p, _)| p) != Some(k_lo)
            || splits.last().map(|&(p, _)| p) != Some(k_hi + 1)
            || splits.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return Err(Error::Config {
                what: "splits must be sorted and bracket the section".into(),
            });
        }

        // Effective coefficients on [k_lo, k_hi + 1]: splits take the
        // unimodular value e^{is} (so ρ = 0); everything else comes from seq.
        let mut alpha = Vec::with_capacity(n + 1);
        let mut rho = Vec::with_capacity(n + 1);
        for j in k_lo..=k_hi + 1 {
            if let Some(&(_, s)) = splits.iter().find(|&&(p, _)| p == j) {
                alpha.push(C64::from_polar(1.0, s));
                rho.push(0.0);
            } else {
                alpha.push(seq.alpha(j)?);
                rho.push(seq.rho(j)?);
            }
        }
        let al = |j: i64| -> C64 {
            if j < k_lo || j > k_hi + 1 {
                ZERO
            } else {
                alpha[(j - k_lo) as usize]
            }
        };
        let rh = |j: i64| -> f64 {
            if j < k_lo || j > k_hi + 1 {
                0.0
            } else {
                rho[(j - k_lo) as usize]
            }
        };
        let is_split = |j: i64| splits.iter().any(|&(p, _)| p == j);

        // Factors V (even θ blocks) and W (odd θ blocks).
        let mut v = Banded::zero(n, 1);
        let mut w = Banded::zero(n, 1);
        for j in k_lo..=k_hi + 1 {
            let factor = if j.rem_euclid(2) == 0 { &mut v } else { &mut w };
            let lo = j - 1 - k_lo;
            let hi = j - k_lo;
            if is_split(j) {
                if lo >= 0 && lo < n as i64 {
                    factor.set(lo as usize, lo as usize, -al(j));
                }
                if hi >= 0 && hi < n as i64 {
                    factor.set(hi as usize, hi as usize, al(j).conj());
                }
            } else {
                let (lo, hi) = (lo as usize, hi as usize);
                let r = C64::new(rh(j), 0.0);
                factor.set(lo, lo, -al(j));
                factor.set(lo, hi, r);
                factor.set(hi, lo, r);
                factor.set(hi, hi, al(j).conj());
            }
        }

        // The five-diagonal matrix assembled directly from the entry
        // formulas; U = VW holds entrywise and is verified by tests.
        let mut u = Banded::zero(n, 2);
        for k in k_lo..=k_hi {
            let i = (k - k_lo) as usize;
            let mut put = |kp: i64, val: C64| {
                if kp >= k_lo && kp <= k_hi && val != ZERO {
                    u.set(i, (kp - k_lo) as usize, val);
                }
            };
            put(k, -al(k).conj() * al(k + 1));
            if k.rem_euclid(2) == 0 {
                put(k - 2, C64::new(rh(k - 1) * rh(k), 0.0));
                put(k - 1, al(k - 1).conj() * rh(k));
                put(k + 1, al(k).conj() * rh(k + 1));
            } else {
                put(k - 1, -al(k + 1) * rh(k));
                put(k + 1, -al(k + 2) * rh(k + 1));
                put(k + 2, C64::new(rh(k + 1) * rh(k + 2), 0.0));
            }
        }

        Ok(Self {
            k_lo,
            k_hi,
            splits: splits.to_vec(),
            v,
            w,
            u,
        })
    }

    pub fn k_lo(&self) -> i64 {
        self.k_lo
    }

    pub fn k_hi(&self) -> i64 {
        self.k_hi
    }

    pub fn n(&self) -> usize {
        (self.k_hi - self.k_lo + 1) as usize
    }

    pub fn splits(&self) -> &[(i64, f64)] {
        &self.splits
    }

    pub fn local_index(&self, k: i64) -> usize {
        assert!(k >= self.k_lo && k <= self.k_hi, "site {k} outside section");
        (k - self.k_lo) as usize
    }

    /// Matrix entry at global sites (k, k').
    pub fn entry(&self, k: i64, kp: i64) -> C64 {
        self.u.get(self.local_index(k), self.local_index(kp))
    }

    pub fn u_banded(&self) -> &Banded {
        &self.u
    }

    pub fn v_banded(&self) -> &Banded {
        &self.v
    }

    pub fn w_banded(&self) -> &Banded {
        &self.w
    }

    /// max |U − V·W| over the band.
    pub fn factorization_residual(&self) -> f64 {
        self.u.max_abs_diff(&self.v.mul(&self.w))
    }

    /// ‖U*U − I‖_max.
    pub fn unitarity_residual(&self) -> f64 {
        self.u.unitarity_residual()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        self.u.to_dense()
    }

    /// Dense eigendecomposition. The section must be unitary to 1e−10.
    pub fn eigendecompose(&self) -> Result<SectionSpectrum> {
        let resid = self.unitarity_residual();
        if resid > 1e-10 {
            return Err(Error::NotUnitary { residual: resid });
        }
        let e = unitary_eigen(&self.to_dense())?;
        Ok(SectionSpectrum {
            k_lo: self.k_lo,
            values: e.values,
            vectors: e.vectors,
        })
    }

    /// Matrix Market coordinate dump (complex general, 1-based indices).
    pub fn to_matrix_market(&self) -> String {
        let n = self.n();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i.saturating_sub(2)..(i + 3).min(n) {
                let v = self.u.get(i, j);
                if v != ZERO {
                    entries.push((i + 1, j + 1, v));
                }
            }
        }
        let mut out = String::from("%%MatrixMarket matrix coordinate complex general\n");
        out.push_str(&format!("{} {} {}\n", n, n, entries.len()));
        for (i, j, v) in entries {
            out.push_str(&format!("{} {} {:.16e} {:.16e}\n", i, j, v.re, v.im));
        }
        out
    }
}

/// Eigendecomposition of a section, with the global index bookkeeping needed
/// to read off spectral measures.
pub struct SectionSpectrum {
    k_lo: i64,
    pub values: Vec<C64>,
    pub vectors: DMatrix<C64>,
}

impl SectionSpectrum {
    /// Scalar spectral measure d(δ_k, E(·) δ_k): weight |⟨δ_k, φ_j⟩|² at ζ_j.
    pub fn scalar_measure(&self, k: i64) -> SpectralMeasure {
        let i = (k - self.k_lo) as usize;
        let atoms = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &zeta)| Atom {
                zeta,
                weight: self.vectors[(i, j)].norm_sqr(),
            })
            .collect();
        SpectralMeasure::Atomic { atoms }
    }

    /// 2×2 matrix measure for the site pair (k−1, k): rank-one weights
    /// φ_j(i) conj(φ_j(i')) per eigenvector.
    pub fn matrix_measure(&self, k: i64) -> MatrixSpectralMeasure {
        let i0 = (k - 1 - self.k_lo) as usize;
        let i1 = (k - self.k_lo) as usize;
        let atoms = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &zeta)| {
                let c0 = self.vectors[(i0, j)];
                let c1 = self.vectors[(i1, j)];
                MatrixAtom {
                    zeta,
                    weight: [
                        [c0 * c0.conj(), c0 * c1.conj()],
                        [c1 * c0.conj(), c1 * c1.conj()],
                    ],
                }
            })
            .collect();
        MatrixSpectralMeasure { atoms }
    }
}
