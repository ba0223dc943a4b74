//! Dense and banded complex linear algebra.
//!
//! The eigensolver handles unitary matrices only: a unitary U is mapped by the
//! Cayley transform H = i (I + e^{−iτ}U)(I − e^{−iτ}U)^{−1} to a Hermitian
//! matrix whose eigenvectors are exactly the eigenvectors of U, and the
//! Hermitian problem is delegated to nalgebra. The pole e^{iτ} is moved until
//! it is well separated from the spectrum. Eigenvalues of U are recovered as
//! Rayleigh quotients and renormalized to the circle.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// 2×2 complex matrix with the handful of operations the transfer-matrix
/// calculus needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[C64::new(1.0, 0.0), ZERO], [ZERO, C64::new(1.0, 0.0)]])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn apply(&self, v: (C64, C64)) -> (C64, C64) {
        (
            self.0[0][0] * v.0 + self.0[0][1] * v.1,
            self.0[1][0] * v.0 + self.0[1][1] * v.1,
        )
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        Mat2([
            [self.0[0][0] * s, self.0[0][1] * s],
            [self.0[1][0] * s, self.0[1][1] * s],
        ])
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }
}

/// Banded complex matrix: entry (i, i + d) lives on diagonal d, |d| ≤ bw.
#[derive(Debug, Clone)]
pub struct Banded {
    n: usize,
    bw: usize,
    /// `diags[d + bw][i]` = entry (i, i + d); out-of-range positions are zero.
    diags: Vec<Vec<C64>>,
}

impl Banded {
    pub fn zero(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            diags: vec![vec![ZERO; n]; 2 * bw + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        let d = j as i64 - i as i64;
        if d.unsigned_abs() as usize > self.bw || i >= self.n || j >= self.n {
            ZERO
        } else {
            self.diags[(d + self.bw as i64) as usize][i]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        let d = j as i64 - i as i64;
        assert!(
            d.unsigned_abs() as usize <= self.bw && i < self.n && j < self.n,
            "entry ({i},{j}) outside band"
        );
        self.diags[(d + self.bw as i64) as usize][i] = v;
    }

    /// y = A x.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![ZERO; self.n];
        for d in -(self.bw as i64)..=(self.bw as i64) {
            let diag = &self.diags[(d + self.bw as i64) as usize];
            for i in 0..self.n {
                let j = i as i64 + d;
                if j >= 0 && (j as usize) < self.n {
                    y[i] += diag[i] * x[j as usize];
                }
            }
        }
        y
    }

    /// y = A* x (conjugate transpose).
    pub fn apply_adjoint(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![ZERO; self.n];
        for d in -(self.bw as i64)..=(self.bw as i64) {
            let diag = &self.diags[(d + self.bw as i64) as usize];
            for i in 0..self.n {
                let j = i as i64 + d;
                if j >= 0 && (j as usize) < self.n {
                    y[j as usize] += diag[i].conj() * x[i];
                }
            }
        }
        y
    }

    /// Banded product; the result has bandwidth bw_a + bw_b.
    pub fn mul(&self, other: &Banded) -> Banded {
        assert_eq!(self.n, other.n);
        let bw = self.bw + other.bw;
        let mut out = Banded::zero(self.n, bw);
        for i in 0..self.n {
            let k_lo = i.saturating_sub(self.bw);
            let k_hi = (i + self.bw).min(self.n - 1);
            for k in k_lo..=k_hi {
                let aik = self.get(i, k);
                if aik == ZERO {
                    continue;
                }
                let j_lo = k.saturating_sub(other.bw);
                let j_hi = (k + other.bw).min(self.n - 1);
                for j in j_lo..=j_hi {
                    let v = aik * other.get(k, j);
                    if v != ZERO {
                        let cur = out.get(i, j);
                        out.set(i, j, cur + v);
                    }
                }
            }
        }
        out
    }

    /// max |A − B| entrywise over the union of the bands.
    pub fn max_abs_diff(&self, other: &Banded) -> f64 {
        assert_eq!(self.n, other.n);
        let bw = self.bw.max(other.bw);
        let mut m = 0.0f64;
        for i in 0..self.n {
            let j_lo = i.saturating_sub(bw);
            let j_hi = (i + bw).min(self.n - 1);
            for j in j_lo..=j_hi {
                m = m.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        m
    }

    /// ‖A*A − I‖_max.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        let mut m = 0.0f64;
        for i in 0..self.n {
            let j_lo = i.saturating_sub(prod.bw);
            let j_hi = (i + prod.bw).min(self.n - 1);
            for j in j_lo..=j_hi {
                let id = if i == j { C64::new(1.0, 0.0) } else { ZERO };
                m = m.max((prod.get(i, j) - id).norm());
            }
        }
        m
    }

    pub fn adjoint(&self) -> Banded {
        let mut out = Banded::zero(self.n, self.bw);
        for i in 0..self.n {
            let j_lo = i.saturating_sub(self.bw);
            let j_hi = (i + self.bw).min(self.n - 1);
            for j in j_lo..=j_hi {
                let v = self.get(i, j);
                if v != ZERO {
                    out.set(j, i, v.conj());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(self.n, self.n, ZERO);
        for i in 0..self.n {
            let j_lo = i.saturating_sub(self.bw);
            let j_hi = (i + self.bw).min(self.n - 1);
            for j in j_lo..=j_hi {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }
}

/// Eigendecomposition of a unitary matrix: unimodular eigenvalues sorted by
/// angle, orthonormal eigenvector columns.
pub struct UnitaryEigen {
    pub values: Vec<C64>,
    pub vectors: DMatrix<C64>,
}

/// Residual ceiling accepted from the eigensolver.
const EIGEN_RESIDUAL_TOL: f64 = 1e-9;

pub fn unitary_eigen(u: &DMatrix<C64>) -> Result<UnitaryEigen> {
    let n = u.nrows();
    assert_eq!(n, u.ncols());
    // Pole candidates spread by the golden angle; data-dependent retry.
    let poles = [
        0.5f64, 2.9000462, 0.4672744, 4.2231302, 1.7845130, 5.6110274,
    ];
    let mut best: Option<(f64, UnitaryEigen)> = None;
    for &tau in &poles {
        let phase = C64::from_polar(1.0, -tau);
        let up = u.map(|x| x * phase);
        let id = DMatrix::<C64>::identity(n, n);
        let denom = &id - &up;
        let lu = denom.lu();
        let rhs = (&id + &up).map(|x| x * C64::new(0.0, 1.0));
        let Some(h) = lu.solve(&rhs) else {
            continue;
        };
        // Guard against a pole that fell near the spectrum.
        let hmax = h.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
        if !hmax.is_finite() || hmax > 1e9 {
            continue;
        }
        let h = (h.adjoint() + &h).map(|x| x * C64::new(0.5, 0.0));
        let se = h.symmetric_eigen();
        let mut vectors = se.eigenvectors;
        let (values, residual) = rayleigh_values(u, &vectors);
        if residual < EIGEN_RESIDUAL_TOL {
            return Ok(sorted(values, vectors));
        }
        // One re-orthogonalization pass, then give this pole up.
        gram_schmidt(&mut vectors);
        let (values, residual) = rayleigh_values(u, &vectors);
        if residual < EIGEN_RESIDUAL_TOL {
            return Ok(sorted(values, vectors));
        }
        if best.as_ref().map(|(r, _)| residual < *r).unwrap_or(true) {
            best = Some((residual, sorted(values, vectors)));
        }
    }
    match best {
        Some((residual, _)) => Err(Error::DefectiveEigenbasis { residual }),
        None => Err(Error::DefectiveEigenbasis { residual: f64::NAN }),
    }
}

fn rayleigh_values(u: &DMatrix<C64>, vectors: &DMatrix<C64>) -> (Vec<C64>, f64) {
    let n = u.nrows();
    let mut values = Vec::with_capacity(n);
    let mut worst = 0.0f64;
    for j in 0..n {
        let v = vectors.column(j);
        let uv = u * v;
        let mut zeta = (v.adjoint() * &uv)[(0, 0)];
        let nn = zeta.norm();
        if nn > 0.0 {
            zeta /= nn;
        }
        let res = (&uv - v.map(|x| x * zeta)).norm();
        worst = worst.max(res);
        values.push(zeta);
    }
    (values, worst)
}

fn gram_schmidt(m: &mut DMatrix<C64>) {
    let n = m.ncols();
    for j in 0..n {
        for i in 0..j {
            let proj = (m.column(i).adjoint() * m.column(j))[(0, 0)];
            let col_i = m.column(i).clone_owned();
            let mut col_j = m.column_mut(j);
            col_j.zip_apply(&col_i, |a, b| *a -= proj * b);
        }
        let norm = m.column(j).norm();
        if norm > 0.0 {
            m.column_mut(j).scale_mut(1.0 / norm);
        }
    }
}

fn sorted(values: Vec<C64>, vectors: DMatrix<C64>) -> UnitaryEigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    let angle = |z: &C64| z.arg().rem_euclid(std::f64::consts::TAU);
    order.sort_by(|&a, &b| angle(&values[a]).partial_cmp(&angle(&values[b])).unwrap());
    let sorted_vals: Vec<C64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vecs = DMatrix::from_element(n, n, ZERO);
    for (dst, &src) in order.iter().enumerate() {
        sorted_vecs.set_column(dst, &vectors.column(src));
    }
    UnitaryEigen {
        values: sorted_vals,
        vectors: sorted_vecs,
    }
}

/// Solves (A − zI) x = e_idx and verifies the residual.
pub fn resolvent_column(a: &DMatrix<C64>, z: C64, idx: usize) -> Result<DVector<C64>> {
    let n = a.nrows();
    let shifted = a - DMatrix::<C64>::identity(n, n).map(|x| x * z);
    let mut rhs = DVector::from_element(n, ZERO);
    rhs[idx] = C64::new(1.0, 0.0);
    let lu = shifted.clone().lu();
    let x = lu.solve(&rhs).ok_or(Error::ResolventSingular {
        residual: f64::INFINITY,
    })?;
    let res = (&shifted * &x - &rhs).norm();
    if !res.is_finite() || res > 1e-8 {
        return Err(Error::ResolventSingular { residual: res });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    fn random_unitary(n: usize, seed: u64) -> DMatrix<C64> {
        // product of 2x2 unitary rotations on neighboring coordinates
        let mut rng = SplitMix64::new(seed);
        let mut u = DMatrix::<C64>::identity(n, n);
        for sweep in 0..3 {
            for k in 0..n - 1 {
                let a = rng.disk(0.9);
                let r = (1.0 - a.norm_sqr()).sqrt();
                let mut b = DMatrix::<C64>::identity(n, n);
                b[(k, k)] = -a;
                b[(k, k + 1)] = C64::new(r, 0.0);
                b[(k + 1, k)] = C64::new(r, 0.0);
                b[(k + 1, k + 1)] = a.conj();
                u = if sweep % 2 == 0 { b * u } else { u * b };
            }
        }
        u
    }

    #[test]
    fn banded_roundtrip_and_matvec() {
        let mut b = Banded::zero(6, 2);
        b.set(0, 0, C64::new(1.0, 0.0));
        b.set(0, 2, C64::new(0.0, 2.0));
        b.set(3, 1, C64::new(-1.0, 0.5));
        let x: Vec<C64> = (0..6).map(|i| C64::new(i as f64, 1.0)).collect();
        let dense = b.to_dense();
        let y = b.apply(&x);
        let yd = dense * DVector::from_vec(x.clone());
        for i in 0..6 {
            assert!((y[i] - yd[i]).norm() < 1e-14);
        }
        let ya = b.apply_adjoint(&x);
        let yad = b.to_dense().adjoint() * DVector::from_vec(x);
        for i in 0..6 {
            assert!((ya[i] - yad[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn banded_mul_matches_dense() {
        let mut rng = SplitMix64::new(3);
        let mut a = Banded::zero(8, 1);
        let mut b = Banded::zero(8, 1);
        for i in 0..8usize {
            for dj in -1i64..=1 {
                let j = i as i64 + dj;
                if (0..8).contains(&j) {
                    a.set(i, j as usize, rng.disk(1.0));
                    b.set(i, j as usize, rng.disk(1.0));
                }
            }
        }
        let c = a.mul(&b);
        assert_eq!(c.bandwidth(), 2);
        let dense = a.to_dense() * b.to_dense();
        assert!((c.to_dense() - dense).norm() < 1e-13);
    }

    #[test]
    fn unitary_eigen_residuals_and_unimodularity() {
        for seed in [1u64, 2, 9] {
            let u = random_unitary(24, seed);
            let e = unitary_eigen(&u).unwrap();
            for j in 0..24 {
                assert!((e.values[j].norm() - 1.0).abs() < 1e-12);
                let v = e.vectors.column(j);
                let res = (&u * v - v.map(|x| x * e.values[j])).norm();
                assert!(res < 1e-10, "residual {res} at seed {seed}");
            }
            // orthonormal basis
            let g = e.vectors.adjoint() * &e.vectors;
            assert!((g - DMatrix::<C64>::identity(24, 24)).norm() < 1e-10);
        }
    }

    #[test]
    fn eigen_handles_degenerate_pairs() {
        // permutation-like unitary has systematically repeated eigenvalues
        let n = 16;
        let mut u = DMatrix::<C64>::from_element(n, n, ZERO);
        for i in 0..n {
            u[(i, (i + 2) % n)] = C64::new(1.0, 0.0);
        }
        let e = unitary_eigen(&u).unwrap();
        for j in 0..n {
            let v = e.vectors.column(j);
            assert!((&u * v - v.map(|x| x * e.values[j])).norm() < 1e-10);
        }
    }

    #[test]
    fn resolvent_column_solves() {
        let u = random_unitary(12, 5);
        let z = C64::new(0.3, 0.2);
        let x = resolvent_column(&u, z, 4).unwrap();
        let shifted = &u - DMatrix::<C64>::identity(12, 12).map(|e| e * z);
        let mut rhs = DVector::from_element(12, ZERO);
        rhs[4] = C64::new(1.0, 0.0);
        assert!((shifted * x - rhs).norm() < 1e-10);
    }
}
