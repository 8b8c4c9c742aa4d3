//! Subspaces of graded pieces with canonical echelon bases.
//!
//! A subspace is stored as a reduced row echelon matrix whose columns are
//! indexed by an ambient monomial list, so two subspaces are equal exactly
//! when their stored data are equal.  Sums, intersections, containment
//! tests, and preimages under linear maps all reduce to row operations.

use std::sync::Arc;

use super::matrix::Matrix;
use super::rat::Rat;
use crate::grading::ExponentVector;
use crate::{Error, Result};

/// A linear subspace of the span of an ambient monomial list.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: Arc<Vec<ExponentVector>>,
    mat: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Spans the given coordinate rows inside the ambient space.
    pub fn from_rows(ambient: Arc<Vec<ExponentVector>>, rows: Vec<Vec<Rat>>) -> Self {
        let cols = ambient.len();
        Self::from_matrix(ambient, Matrix::from_rows(cols, rows))
    }

    /// Canonicalizes an arbitrary spanning matrix.
    pub fn from_matrix(ambient: Arc<Vec<ExponentVector>>, mat: Matrix) -> Self {
        assert_eq!(mat.cols(), ambient.len(), "row width differs from ambient");
        let mat = mat.rref();
        let pivots = (0..mat.rows())
            .map(|r| {
                (0..mat.cols())
                    .find(|&c| !mat.at(r, c).is_zero())
                    .expect("rref keeps no zero rows")
            })
            .collect();
        Subspace { ambient, mat, pivots }
    }

    pub fn zero(ambient: Arc<Vec<ExponentVector>>) -> Self {
        let cols = ambient.len();
        Self::from_matrix(ambient, Matrix::zero(0, cols))
    }

    pub fn full(ambient: Arc<Vec<ExponentVector>>) -> Self {
        let n = ambient.len();
        Self::from_matrix(ambient, Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn ambient(&self) -> &Arc<Vec<ExponentVector>> {
        &self.ambient
    }

    /// The canonical echelon basis, one row per basis vector.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.mat
    }

    fn same_ambient(&self, other: &Subspace) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient
    }

    /// Reduces `v` against the stored echelon rows in place.
    fn reduce(&self, v: &mut [Rat]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for c in p..v.len() {
                let coef = self.mat.at(r, c);
                if coef.is_zero() {
                    continue;
                }
                let t = &v[c] - &(coef * &factor);
                v[c] = t;
            }
        }
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector length differs from ambient");
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Rat::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok((0..other.mat.rows()).all(|r| self.contains_vector(other.mat.row(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        let stacked = self.mat.stack(&other.mat);
        Ok(Subspace::from_matrix(self.ambient.clone(), stacked))
    }

    /// Rows spanning the annihilator `{q : q . v = 0 for all v here}`.
    pub fn annihilator(&self) -> Matrix {
        self.mat.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        let stacked = self.annihilator().stack(&other.annihilator());
        Ok(Subspace::from_matrix(self.ambient.clone(), stacked.kernel()))
    }

    /// The preimage `{x : map * x in target}` inside `domain_ambient`.
    /// `map` sends domain coordinates to target-ambient coordinates.
    pub fn preimage(
        map: &Matrix,
        target: &Subspace,
        domain_ambient: Arc<Vec<ExponentVector>>,
    ) -> Subspace {
        assert_eq!(map.rows(), target.ambient_dim(), "map codomain differs from target");
        assert_eq!(map.cols(), domain_ambient.len(), "map domain differs from ambient");
        let q = target.annihilator();
        let constraints = q.mul(map);
        Subspace::from_matrix(domain_ambient, constraints.kernel())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}): {:?}",
            self.dim(),
            self.ambient_dim(),
            self.mat
        )
    }
}
