//! Dense Hermitian linear algebra at desk scale: a cyclic complex Jacobi
//! eigensolver and the functional calculus built on it (square root, absolute
//! value, operator norm, positive/negative parts).
//!
//! All operations are pure; matrices are plain owned values and safe to share
//! across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, value);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadInput("empty matrix".into()));
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::BadInput(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::BadInput(format!("non-finite entry at ({i},{j})")));
                }
                m.set(i, j, *z);
            }
        }
        Ok(m)
    }

    /// Real matrix shortcut for tests and examples.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| Complex64::new(*x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, Complex64::new(*v, 0.0));
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.entries[i * self.dim + j] = z;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Exact Hermitian symmetrization (A + A†)/2.
    pub fn hermitize(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, z);
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_entry_distance(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Hermitian matrix: validated wrapper around [`ComplexMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
}

impl HermitianMatrix {
    /// Checks Hermitian symmetry within `hermit_tol` (absolute).
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let asym = m.asymmetry();
        if asym > Tolerances::DEFAULT.hermit_tol {
            return Err(Error::NotHermitian { max_asymmetry: asym });
        }
        Ok(HermitianMatrix { m })
    }

    /// Symmetrizes first, for matrices that are Hermitian by construction but
    /// carry roundoff from products.
    pub fn symmetrized(m: &ComplexMatrix) -> Self {
        HermitianMatrix { m: m.hermitize() }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix {
            m: ComplexMatrix::identity(dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        HermitianMatrix {
            m: ComplexMatrix::diagonal(values),
        }
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and a
/// unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub basis: ComplexMatrix,
}

impl Spectrum {
    /// basis · diag(eigenvalues) · basis†, for reconstruction checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.basis.dim();
        let mut scaled = self.basis.clone();
        for j in 0..n {
            for i in 0..n {
                let z = scaled.get(i, j) * self.eigenvalues[j];
                scaled.set(i, j, z);
            }
        }
        scaled.mul(&self.basis.adjoint())
    }

    /// Applies a real function to the eigenvalues and reassembles.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mapped = Spectrum {
            eigenvalues: self.eigenvalues.iter().map(|&x| f(x)).collect(),
            basis: self.basis.clone(),
        };
        HermitianMatrix::symmetrized(&mapped.reconstruct())
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each pivot (p,q) first peels the phase off A[p][q] and then applies the
/// classical symmetric 2x2 rotation, so the update is a genuine unitary
/// similarity. Rotation budget: 100 N^2, after which `NoConvergence` is
/// raised.
pub fn hermitian_eig(a: &HermitianMatrix) -> Result<Spectrum> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut q = ComplexMatrix::identity(n);

    if n == 1 {
        return Ok(Spectrum {
            eigenvalues: vec![m.get(0, 0).re],
            basis: q,
        });
    }

    let scale = m.frobenius_norm().max(1.0);
    let stop = Tolerances::DEFAULT.eig_off_tol * scale;
    let skip = 1e-16 * scale;
    let budget = 100 * n * n;
    let mut rotations = 0usize;

    loop {
        let mut off_sq = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off_sq += m.get(p, r).norm_sqr();
            }
        }
        if off_sq.sqrt() <= stop {
            break;
        }

        for p in 0..(n - 1) {
            for r in (p + 1)..n {
                let beta = m.get(p, r);
                let beta_abs = beta.norm();
                if beta_abs <= skip {
                    continue;
                }
                rotations += 1;
                if rotations > budget {
                    return Err(Error::NoConvergence { rotations });
                }

                // phase so that e^{-i phi} * A[p][r] is real positive
                let phase = beta / beta_abs;
                let alpha = m.get(p, p).re;
                let gamma = m.get(r, r).re;
                let tau = (gamma - alpha) / (2.0 * beta_abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // unitary block: U[p][p]=c, U[p][r]=s, U[r][p]=-s*conj(phase),
                // U[r][r]=c*conj(phase); apply A <- U† A U on rows/cols p,r.
                let phc = phase.conj();
                for j in 0..n {
                    if j == p || j == r {
                        continue;
                    }
                    let ajp = m.get(j, p);
                    let ajr = m.get(j, r);
                    m.set(j, p, ajp * c - ajr * (phc * s));
                    m.set(j, r, ajp * s + ajr * (phc * c));
                    m.set(p, j, m.get(j, p).conj());
                    m.set(r, j, m.get(j, r).conj());
                }
                m.set(p, p, Complex64::new(alpha - t * beta_abs, 0.0));
                m.set(r, r, Complex64::new(gamma + t * beta_abs, 0.0));
                m.set(p, r, Complex64::new(0.0, 0.0));
                m.set(r, p, Complex64::new(0.0, 0.0));

                for j in 0..n {
                    let qjp = q.get(j, p);
                    let qjr = q.get(j, r);
                    q.set(j, p, qjp * c - qjr * (phc * s));
                    q.set(j, r, qjp * s + qjr * (phc * c));
                }
            }
        }
    }

    // sort ascending, permuting eigenvector columns alongside
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut basis = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for i in 0..n {
            basis.set(i, col, q.get(i, src));
        }
    }

    Ok(Spectrum { eigenvalues, basis })
}

/// Square root of a PSD Hermitian matrix via the spectral calculus.
/// Eigenvalues in [-psd_tol, 0) are clamped to 0; anything lower is rejected.
pub fn matrix_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spectrum = hermitian_eig(a)?;
    let min = spectrum
        .eigenvalues
        .first()
        .copied()
        .expect("nonempty spectrum");
    if min < -Tolerances::DEFAULT.psd_tol {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(spectrum.apply(|x| x.max(0.0).sqrt()))
}

/// |A| = sqrt(A† A) for an arbitrary square complex matrix.
pub fn matrix_abs(a: &ComplexMatrix) -> Result<HermitianMatrix> {
    let gram = a.adjoint().mul(a);
    matrix_sqrt(&HermitianMatrix::symmetrized(&gram))
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint().mul(a);
    let spectrum = hermitian_eig(&HermitianMatrix::symmetrized(&gram))
        .expect("Gram matrix eigensolve cannot fail on finite input");
    let max = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
    max.max(0.0).sqrt()
}

/// Jordan split of a Hermitian matrix into PSD parts: A = pos - neg with
/// pos·neg = 0.
pub fn positive_negative_parts(a: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let spectrum = hermitian_eig(a)?;
    let pos = spectrum.apply(|x| x.max(0.0));
    let neg = spectrum.apply(|x| (-x).max(0.0));
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!(
            (a - b).abs() <= tol,
            "{what}: {a} vs {b} (diff {:e}, tol {tol:e})",
            (a - b).abs()
        );
    }

    fn random_hermitian(rng: &mut SplitMix64, n: usize) -> HermitianMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(rng.uniform(-1.0, 1.0), 0.0));
            for j in (i + 1)..n {
                let z = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn eig_identity() {
        let spectrum = hermitian_eig(&HermitianMatrix::identity(2)).unwrap();
        assert_eq!(spectrum.eigenvalues, vec![1.0, 1.0]);
        let gram = spectrum.basis.adjoint().mul(&spectrum.basis);
        assert!(gram.max_entry_distance(&ComplexMatrix::identity(2)) <= 1e-10);
    }

    #[test]
    fn eig_already_diagonal() {
        let spectrum = hermitian_eig(&HermitianMatrix::diagonal(&[4.0, 9.0])).unwrap();
        assert_eq!(spectrum.eigenvalues, vec![4.0, 9.0]);
        assert!(spectrum
            .basis
            .max_entry_distance(&ComplexMatrix::identity(2))
            <= 1e-12);
    }

    #[test]
    fn eig_symmetric_two_by_two() {
        // characteristic polynomial x^2 - 4x + 3 by hand: eigenvalues 1 and 3
        let a = HermitianMatrix::new(
            ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap(),
        )
        .unwrap();
        let spectrum = hermitian_eig(&a).unwrap();
        assert_close(spectrum.eigenvalues[0], 1.0, 1e-12, "lambda_0");
        assert_close(spectrum.eigenvalues[1], 3.0, 1e-12, "lambda_1");
        assert!(spectrum.reconstruct().max_entry_distance(a.as_matrix()) <= 1e-12);
    }

    #[test]
    fn eig_complex_pauli_y() {
        let i = Complex64::new(0.0, 1.0);
        let a = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![Complex64::new(0.0, 0.0), i],
                vec![-i, Complex64::new(0.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let spectrum = hermitian_eig(&a).unwrap();
        assert_close(spectrum.eigenvalues[0], -1.0, 1e-12, "lambda_0");
        assert_close(spectrum.eigenvalues[1], 1.0, 1e-12, "lambda_1");
        assert!(spectrum.reconstruct().max_entry_distance(a.as_matrix()) <= 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_reconstructs_random() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..200 {
            let n = 2 + (rng.next_u64() % 5) as usize; // 2..=6
            let a = random_hermitian(&mut rng, n);
            let spectrum = hermitian_eig(&a).unwrap();
            let norm = operator_norm(a.as_matrix());
            assert!(
                spectrum.reconstruct().max_entry_distance(a.as_matrix())
                    <= 1e-10 * (1.0 + norm),
                "reconstruction drift at n={n}"
            );
            let gram = spectrum.basis.adjoint().mul(&spectrum.basis);
            assert!(gram.max_entry_distance(&ComplexMatrix::identity(n)) <= 1e-10);
            for w in spectrum.eigenvalues.windows(2) {
                assert!(w[0] <= w[1], "eigenvalues not ascending");
            }
        }
    }

    #[test]
    fn sqrt_identity_and_diagonal() {
        let s = matrix_sqrt(&HermitianMatrix::identity(3)).unwrap();
        assert!(s.as_matrix().max_entry_distance(&ComplexMatrix::identity(3)) <= 1e-12);

        let s = matrix_sqrt(&HermitianMatrix::diagonal(&[4.0, 9.0])).unwrap();
        assert!(
            s.as_matrix()
                .max_entry_distance(&ComplexMatrix::diagonal(&[2.0, 3.0]))
                <= 1e-12
        );
    }

    #[test]
    fn sqrt_squares_back_to_input() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..1000 {
            let n = 2 + (rng.next_u64() % 3) as usize;
            let b = random_hermitian(&mut rng, n);
            let a = HermitianMatrix::symmetrized(&b.as_matrix().adjoint().mul(b.as_matrix()));
            let s = matrix_sqrt(&a).unwrap();
            let sq = s.as_matrix().mul(s.as_matrix());
            let norm = operator_norm(a.as_matrix());
            assert!(
                sq.max_entry_distance(a.as_matrix()) <= 1e-9 * (1.0 + norm),
                "sqrt(A)^2 != A"
            );
        }
    }

    #[test]
    fn sqrt_rejects_negative() {
        let err = matrix_sqrt(&HermitianMatrix::diagonal(&[1.0, -0.5]));
        assert!(matches!(err, Err(Error::NotPsd { .. })));
    }

    #[test]
    fn abs_flips_eigenvalue_signs() {
        let a = matrix_abs(&ComplexMatrix::diagonal(&[-3.0, 5.0])).unwrap();
        assert!(
            a.as_matrix()
                .max_entry_distance(&ComplexMatrix::diagonal(&[3.0, 5.0]))
                <= 1e-12
        );
        let id = matrix_abs(&ComplexMatrix::identity(2)).unwrap();
        assert!(id.as_matrix().max_entry_distance(&ComplexMatrix::identity(2)) <= 1e-12);
    }

    #[test]
    fn abs_of_nilpotent() {
        // A†A = diag(0, 4) by hand
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let abs = matrix_abs(&a).unwrap();
        assert!(
            abs.as_matrix()
                .max_entry_distance(&ComplexMatrix::diagonal(&[0.0, 2.0]))
                <= 1e-12
        );
    }

    #[test]
    fn abs_matches_eigenvalue_magnitudes() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..200 {
            let n = 2 + (rng.next_u64() % 5) as usize;
            let a = random_hermitian(&mut rng, n);
            let abs = matrix_abs(a.as_matrix()).unwrap();
            let mut expected: Vec<f64> = hermitian_eig(&a)
                .unwrap()
                .eigenvalues
                .iter()
                .map(|x| x.abs())
                .collect();
            expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let got = hermitian_eig(&abs).unwrap().eigenvalues;
            for (e, g) in expected.iter().zip(&got) {
                assert_close(*e, *g, 1e-9, "|A| eigenvalue");
            }
        }
    }

    #[test]
    fn operator_norm_examples() {
        assert_close(operator_norm(&ComplexMatrix::identity(4)), 1.0, 1e-12, "id");
        assert_close(
            operator_norm(&ComplexMatrix::diagonal(&[-3.0, 2.0])),
            3.0,
            1e-12,
            "diag",
        );
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert_close(operator_norm(&a), 2.0, 1e-12, "nilpotent");
    }

    #[test]
    fn operator_norm_unitary_invariance() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..100 {
            let n = 2 + (rng.next_u64() % 4) as usize;
            let u = hermitian_eig(&random_hermitian(&mut rng, n)).unwrap().basis;
            let a = random_hermitian(&mut rng, n).into_matrix();
            let conj = u.mul(&a).mul(&u.adjoint());
            let lhs = operator_norm(&conj);
            let rhs = operator_norm(&a);
            assert!(
                (lhs - rhs).abs() <= 1e-9 * rhs.max(1.0),
                "norm not unitarily invariant: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn parts_split_examples() {
        let (p, q) = positive_negative_parts(&HermitianMatrix::diagonal(&[3.0, -2.0])).unwrap();
        assert!(p.as_matrix().max_entry_distance(&ComplexMatrix::diagonal(&[3.0, 0.0])) <= 1e-12);
        assert!(q.as_matrix().max_entry_distance(&ComplexMatrix::diagonal(&[0.0, 2.0])) <= 1e-12);

        // PSD input keeps everything in the positive part
        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let (p, q) = positive_negative_parts(&a).unwrap();
        assert!(p.as_matrix().max_entry_distance(a.as_matrix()) <= 1e-12);
        assert!(operator_norm(q.as_matrix()) <= 1e-12);

        // eigenvalues +-1 with eigenvectors (1, +-1)/sqrt(2) by hand
        let x = HermitianMatrix::new(
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let (p, q) = positive_negative_parts(&x).unwrap();
        let half = ComplexMatrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let half_neg = ComplexMatrix::from_real_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap();
        assert!(p.as_matrix().max_entry_distance(&half) <= 1e-12);
        assert!(q.as_matrix().max_entry_distance(&half_neg) <= 1e-12);
    }

    #[test]
    fn parts_reconstruct_and_annihilate() {
        let mut rng = SplitMix64::new(19);
        for _ in 0..1000 {
            let n = 2 + (rng.next_u64() % 3) as usize;
            let a = random_hermitian(&mut rng, n);
            let (p, q) = positive_negative_parts(&a).unwrap();
            let norm = operator_norm(a.as_matrix());
            let diff = p.as_matrix().sub(q.as_matrix());
            assert!(diff.max_entry_distance(a.as_matrix()) <= 1e-9 * (1.0 + norm));
            let prod = p.as_matrix().mul(q.as_matrix());
            assert!(
                operator_norm(&prod) <= 1e-9 * (1.0 + norm * norm),
                "parts not orthogonal"
            );
        }
    }
}
