//! Dense Hermitian eigendecomposition.
//!
//! Matrices that admit a diagonal phase gauge with real entries (every
//! Hamiltonian built by this crate does) are solved as real symmetric
//! problems and the gauge is folded back into the eigenvectors on access.
//! Anything else goes through the complex solver.

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::{Mat, MatRef, Par};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{BasisTag, HermitianMatrix, RealGauge};

/// Largest dimension accepted by default (`L = 14`).
pub const DEFAULT_MAX_DIM: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub max_dim: usize,
    /// Allowed `max |H_rc - conj(H_cr)|` relative to `max(1, max |H|)`.
    pub hermiticity_tol: f64,
    /// Use the real-symmetric path when a real gauge exists.
    pub real_fast_path: bool,
    /// Let the solver use the rayon pool. Off by default so that results do
    /// not depend on the thread count.
    pub parallel: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            max_dim: DEFAULT_MAX_DIM,
            hermiticity_tol: 1e-12,
            real_fast_path: true,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone)]
enum Eigenvectors {
    Real { columns: Mat<f64>, gauge: RealGauge },
    Complex(Mat<Complex64>),
}

/// Eigenvalues in ascending order with eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors: Eigenvectors,
    basis: BasisTag,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn is_real_gauge(&self) -> bool {
        matches!(self.vectors, Eigenvectors::Real { .. })
    }

    /// Component `n` of eigenvector `i`.
    pub fn component(&self, n: usize, i: usize) -> Complex64 {
        match &self.vectors {
            Eigenvectors::Real { columns, gauge } => gauge.phases[n] * columns[(n, i)],
            Eigenvectors::Complex(columns) => columns[(n, i)],
        }
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|n| self.component(n, i)).collect()
    }

    /// `|psi_n|^2` of eigenvector `i`.
    pub fn probabilities(&self, i: usize) -> Vec<f64> {
        match &self.vectors {
            Eigenvectors::Real { columns, .. } => columns.col(i).iter().map(|x| x * x).collect(),
            Eigenvectors::Complex(columns) => columns.col(i).iter().map(|x| x.norm_sqr()).collect(),
        }
    }

    /// `max_i ||H v_i - lambda_i v_i||`.
    pub fn max_residual(&self, h: &HermitianMatrix) -> f64 {
        (0..self.dim())
            .map(|i| {
                let v = self.eigenvector(i);
                let hv = h.apply(&v);
                hv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.eigenvalues[i]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max |V^dagger V - 1|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        let v = self.to_dense_vectors();
        let gram = v.adjoint() * &v;
        let mut worst = 0.0f64;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn to_dense_vectors(&self) -> Mat<Complex64> {
        Mat::from_fn(self.dim(), self.dim(), |n, i| self.component(n, i))
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> Mat<Complex64> {
        let v = self.to_dense_vectors();
        let scaled = Mat::from_fn(self.dim(), self.dim(), |n, i| v[(n, i)] * self.eigenvalues[i]);
        scaled * v.adjoint()
    }
}

fn check_input(h: &HermitianMatrix, options: &EigenOptions) -> Result<()> {
    if h.dim() == 0 {
        return Err(Error::Empty("matrix of dimension zero"));
    }
    if h.dim() > options.max_dim {
        return Err(Error::Capacity {
            what: "dense eigenproblem",
            requested: h.dim(),
            cap: options.max_dim,
        });
    }
    let defect = h.hermiticity_defect();
    if defect > options.hermiticity_tol * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

fn descriptor(h: &HermitianMatrix) -> String {
    format!(
        "{}x{} matrix in the {} basis with {} nonzeros",
        h.dim(),
        h.dim(),
        h.basis(),
        h.nnz()
    )
}

type Solved<T> = (Vec<<T as faer::traits::ComplexField>::Real>, Option<Mat<T>>);

fn solve<T: faer::traits::ComplexField>(
    a: MatRef<'_, T>,
    vectors: bool,
    parallel: bool,
) -> std::result::Result<Solved<T>, evd::EvdError> {
    let n = a.nrows();
    let par = if parallel { Par::rayon(0) } else { Par::Seq };
    let compute = if vectors {
        ComputeEigenvectors::Yes
    } else {
        ComputeEigenvectors::No
    };
    let mut s = Diag::<T>::zeros(n);
    let mut u = vectors.then(|| Mat::<T>::zeros(n, n));
    let mut buffer = MemBuffer::new(evd::self_adjoint_evd_scratch::<T>(n, compute, par, Default::default()));
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        u.as_mut().map(|u| u.as_mut()),
        par,
        MemStack::new(&mut buffer),
        Default::default(),
    )?;
    let values = s
        .column_vector()
        .iter()
        .map(|x| faer::traits::math_utils::real(x))
        .collect();
    Ok((values, u))
}

/// Full decomposition with default options.
pub fn diagonalize(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    diagonalize_with(h, &EigenOptions::default())
}

pub fn diagonalize_with(h: &HermitianMatrix, options: &EigenOptions) -> Result<SpectralDecomposition> {
    check_input(h, options)?;
    let fail = |_| Error::NoConvergence {
        descriptor: descriptor(h),
    };
    let gauge = options.real_fast_path.then(|| h.real_gauge(1e-12)).flatten();
    let (eigenvalues, vectors) = match gauge {
        Some(gauge) => {
            let dense = h.to_dense_real(&gauge);
            let (values, columns) = solve(dense.as_ref(), true, options.parallel).map_err(fail)?;
            (
                values,
                Eigenvectors::Real {
                    columns: columns.unwrap(),
                    gauge,
                },
            )
        }
        None => {
            let dense = h.to_dense();
            let (values, columns) = solve(dense.as_ref(), true, options.parallel).map_err(fail)?;
            (values, Eigenvectors::Complex(columns.unwrap()))
        }
    };
    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
        basis: h.basis(),
    })
}

/// Ascending eigenvalues only.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    eigenvalues_with(h, &EigenOptions::default())
}

pub fn eigenvalues_with(h: &HermitianMatrix, options: &EigenOptions) -> Result<Vec<f64>> {
    check_input(h, options)?;
    let fail = |_| Error::NoConvergence {
        descriptor: descriptor(h),
    };
    let gauge = options.real_fast_path.then(|| h.real_gauge(1e-12)).flatten();
    let values = match gauge {
        Some(gauge) => {
            solve(h.to_dense_real(&gauge).as_ref(), false, options.parallel)
                .map_err(fail)?
                .0
        }
        None => solve(h.to_dense().as_ref(), false, options.parallel).map_err(fail)?.0,
    };
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_spin_block_closed_form() {
        let (delta, omega) = (3.0, 4.0);
        let h = HermitianMatrix::from_triplets(
            2,
            BasisTag::Z,
            [
                (0, 0, c(-delta / 2.0, 0.0)),
                (1, 1, c(delta / 2.0, 0.0)),
                (0, 1, c(0.0, -omega / 2.0)),
                (1, 0, c(0.0, omega / 2.0)),
            ],
        );
        let d = diagonalize(&h).unwrap();
        assert!(d.is_real_gauge());
        assert!((d.eigenvalues()[0] + 2.5).abs() < 1e-14);
        assert!((d.eigenvalues()[1] - 2.5).abs() < 1e-14);
        assert!(d.max_residual(&h) < 1e-13);
    }

    #[test]
    fn diagonal_input() {
        let h = HermitianMatrix::from_diagonal(BasisTag::Z, &[3.0, -1.0, 2.0]);
        let d = diagonalize(&h).unwrap();
        assert_eq!(d.eigenvalues(), &[-1.0, 2.0, 3.0]);
        for (i, n) in [1usize, 2, 0].into_iter().enumerate() {
            assert!((d.probabilities(i)[n] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let h = HermitianMatrix::from_triplets(2, BasisTag::Z, [(0, 1, c(1.0, 0.0)), (1, 0, c(0.5, 0.0))]);
        assert!(matches!(diagonalize(&h), Err(Error::NotHermitian { .. })));
        assert!(matches!(eigenvalues(&h), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rejects_oversized_input() {
        let h = HermitianMatrix::from_diagonal(BasisTag::Z, &[0.0; 8]);
        let options = EigenOptions {
            max_dim: 4,
            ..Default::default()
        };
        assert!(matches!(diagonalize_with(&h, &options), Err(Error::Capacity { .. })));
    }

    #[test]
    fn complex_path_matches_real_path() {
        let h = HermitianMatrix::from_triplets(
            3,
            BasisTag::Z,
            [
                (0, 0, c(1.0, 0.0)),
                (0, 1, c(0.0, 1.0)),
                (1, 0, c(0.0, -1.0)),
                (1, 2, c(2.0, 0.0)),
                (2, 1, c(2.0, 0.0)),
            ],
        );
        let fast = diagonalize(&h).unwrap();
        let slow = diagonalize_with(
            &h,
            &EigenOptions {
                real_fast_path: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(fast.is_real_gauge() && !slow.is_real_gauge());
        for (a, b) in fast.eigenvalues().iter().zip(slow.eigenvalues()) {
            assert!((a - b).abs() < 1e-13);
        }
        for i in 0..3 {
            for (p, q) in fast.probabilities(i).iter().zip(slow.probabilities(i)) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }
}
