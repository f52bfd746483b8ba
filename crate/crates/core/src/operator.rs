//! Sparse Hermitian operators on the `2^L`-dimensional register space.

use std::collections::VecDeque;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::IndexConvention;

/// Which product basis a matrix (or eigenvector) is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BasisTag {
    /// Computational basis of `I^z_k` eigenstates.
    #[default]
    #[serde(rename = "z", alias = "ZBasis")]
    Z,
    /// Eigenbasis of the non-interacting single-qubit Hamiltonians.
    #[serde(rename = "quasiparticle", alias = "QuasiparticleBasis", alias = "quasi")]
    Quasiparticle,
}

impl std::fmt::Display for BasisTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BasisTag::Z => "z",
            BasisTag::Quasiparticle => "quasiparticle",
        })
    }
}

impl std::str::FromStr for BasisTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" | "Z" | "ZBasis" => Ok(BasisTag::Z),
            "quasiparticle" | "quasi" | "q" | "QuasiparticleBasis" => Ok(BasisTag::Quasiparticle),
            other => Err(format!("unknown basis `{other}` (expected `z` or `quasiparticle`)")),
        }
    }
}

/// Coordinate-list Hermitian matrix.
///
/// Entries are kept sorted by `(row, col)` with duplicates summed and exact
/// zeros dropped. Hermiticity is not enforced on construction; builders in
/// this crate produce it exactly and [`crate::eigen::diagonalize`] checks it.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    basis: BasisTag,
    convention: IndexConvention,
    entries: Vec<(usize, usize, Complex64)>,
}

/// Diagonal phase transformation `D` such that `D^dagger H D` is real.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGauge {
    pub phases: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn from_triplets(
        dim: usize,
        basis: BasisTag,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut raw: Vec<_> = triplets.into_iter().collect();
        assert!(
            raw.iter().all(|&(r, c, _)| r < dim && c < dim),
            "triplet index out of range for dimension {dim}"
        );
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|&(_, _, v)| v != Complex64::new(0.0, 0.0));
        HermitianMatrix {
            dim,
            basis,
            convention: IndexConvention::BigEndianGroundZero,
            entries,
        }
    }

    pub fn from_diagonal(basis: BasisTag, diagonal: &[f64]) -> Self {
        Self::from_triplets(
            diagonal.len(),
            basis,
            diagonal
                .iter()
                .enumerate()
                .map(|(i, &d)| (i, i, Complex64::new(d, 0.0))),
        )
    }

    pub fn zeros(dim: usize, basis: BasisTag) -> Self {
        Self::from_triplets(dim, basis, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn convention(&self) -> IndexConvention {
        self.convention
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn off_diagonal_nnz(&self) -> usize {
        self.entries.iter().filter(|(r, c, _)| r != c).count()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut diag = vec![0.0; self.dim];
        for &(r, c, v) in &self.entries {
            if r == c {
                diag[r] = v.re;
            }
        }
        diag
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|(r, c, _)| r == c)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// `max |H_rc - conj(H_cr)|` over stored entries and their mirrors.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(r, c, v)| (v - self.entry(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_triplets(
            self.dim,
            self.basis,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * factor)),
        )
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &HermitianMatrix, factor: f64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.basis, other.basis, "basis mismatch");
        Self::from_triplets(
            self.dim,
            self.basis,
            self.entries
                .iter()
                .copied()
                .chain(other.entries.iter().map(|&(r, c, v)| (r, c, v * factor))),
        )
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for &(r, c, h) in &self.entries {
            out[r] += h * v[c];
        }
        out
    }

    pub fn to_dense(&self) -> Mat<Complex64> {
        let mut m = Mat::<Complex64>::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    /// Finds a diagonal phase gauge making every entry real, if one exists.
    ///
    /// Phases are propagated along a spanning forest of the sparsity graph
    /// and the result is verified on every entry to within `tol` relative
    /// to the entry modulus.
    pub fn real_gauge(&self, tol: f64) -> Option<RealGauge> {
        let row_starts = self.row_starts();
        let mut phases: Vec<Option<Complex64>> = vec![None; self.dim];
        let mut queue = VecDeque::new();
        for root in 0..self.dim {
            if phases[root].is_some() {
                continue;
            }
            phases[root] = Some(Complex64::new(1.0, 0.0));
            queue.push_back(root);
            while let Some(r) = queue.pop_front() {
                let dr = phases[r].unwrap();
                for &(_, c, v) in &self.entries[row_starts[r]..row_starts[r + 1]] {
                    if phases[c].is_none() {
                        // conj(d_r) v d_c = |v| when d_c = d_r conj(v) / |v|
                        phases[c] = Some(dr * v.conj() / v.norm());
                        queue.push_back(c);
                    }
                }
            }
        }
        let phases: Vec<Complex64> = phases.into_iter().map(Option::unwrap).collect();
        let consistent = self.entries.iter().all(|&(r, c, v)| {
            let w = phases[r].conj() * v * phases[c];
            w.im.abs() <= tol * v.norm()
        });
        consistent.then_some(RealGauge { phases })
    }

    /// Dense real matrix `Re(D^dagger H D)`.
    pub fn to_dense_real(&self, gauge: &RealGauge) -> Mat<f64> {
        let mut m = Mat::<f64>::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = (gauge.phases[r].conj() * v * gauge.phases[c]).re;
        }
        m
    }

    fn row_starts(&self) -> Vec<usize> {
        let mut starts = vec![0usize; self.dim + 1];
        for &(r, _, _) in &self.entries {
            starts[r + 1] += 1;
        }
        for i in 0..self.dim {
            starts[i + 1] += starts[i];
        }
        starts
    }
}
