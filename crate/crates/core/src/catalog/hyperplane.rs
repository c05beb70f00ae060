//! Linear models of group actions on a hyperplane section
//! `{x ∈ K^M : R x = 0}`, written in the coordinates that survive after
//! solving the relations for trailing variables.

use crate::cyclo::Cyclotomic;
use crate::invariants::{PolyError, Polynomial};
use crate::linalg::{rref, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperplaneError {
    #[error("relations must be linearly independent")]
    Dependent,
    #[error("relations have {got} coordinates, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("matrix does not preserve the relations")]
    NotPreserved,
    #[error("matrix is {0}x{0}, expected {1}x{1}")]
    WrongSize(usize, usize),
}

/// Coordinates `x_k` (kept) and `x_e = Σ c_{e,k} x_k` (eliminated).
#[derive(Debug, Clone)]
pub struct HyperplaneModel {
    ambient: usize,
    relations: Matrix,
    kept: Vec<usize>,
    /// `ι`: `M × k`, the embedding of kept coordinates into the hyperplane.
    embed: Matrix,
    /// `π`: `k × M`, reading off the kept coordinates.
    project: Matrix,
}

impl HyperplaneModel {
    /// Builds the model. Each relation eliminates its last coordinate that is
    /// still available (scanning from the right).
    pub fn new(ambient: usize, relations: &[Vec<Cyclotomic>]) -> Result<Self, HyperplaneError> {
        for r in relations {
            if r.len() != ambient {
                return Err(HyperplaneError::WrongLength {
                    got: r.len(),
                    expected: ambient,
                });
            }
        }
        let rcount = relations.len();
        // reverse the columns so pivots land on trailing coordinates
        let reversed: Vec<Vec<Cyclotomic>> = relations
            .iter()
            .map(|r| r.iter().rev().cloned().collect())
            .collect();
        let rel_rev = if rcount == 0 {
            Matrix::zeros(0, ambient)
        } else {
            Matrix::from_rows(reversed).map_err(|_| HyperplaneError::Dependent)?
        };
        let (red, rank) = rref(&rel_rev);
        if rank != rcount {
            return Err(HyperplaneError::Dependent);
        }
        let mut eliminated = Vec::new();
        for i in 0..rank {
            let p = (0..ambient).find(|&j| !red[(i, j)].is_zero()).unwrap();
            eliminated.push((i, ambient - 1 - p));
        }
        let kept: Vec<usize> = (0..ambient)
            .filter(|c| !eliminated.iter().any(|(_, e)| e == c))
            .collect();
        let k = kept.len();
        let mut embed = Matrix::zeros(ambient, k);
        for (col, &c) in kept.iter().enumerate() {
            embed[(c, col)] = Cyclotomic::one();
        }
        // row i of red: x_e + Σ_{kept} red[i][rev(c)] x_c = 0
        for &(i, e) in &eliminated {
            for (col, &c) in kept.iter().enumerate() {
                let coef = &red[(i, ambient - 1 - c)];
                if !coef.is_zero() {
                    embed[(e, col)] = -coef;
                }
            }
        }
        let mut project = Matrix::zeros(k, ambient);
        for (row, &c) in kept.iter().enumerate() {
            project[(row, c)] = Cyclotomic::one();
        }
        let relations = if rcount == 0 {
            Matrix::zeros(0, ambient)
        } else {
            Matrix::from_rows(relations.to_vec()).unwrap()
        };
        Ok(HyperplaneModel {
            ambient,
            relations,
            kept,
            embed,
            project,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.kept.len()
    }

    /// 0-based indices of the surviving coordinates.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn embedding(&self) -> &Matrix {
        &self.embed
    }

    /// Whether `x ↦ Ax` maps the hyperplane into itself.
    pub fn preserves(&self, a: &Matrix) -> bool {
        if self.relations.rows() == 0 {
            return true;
        }
        let ra = &self.relations * a;
        let before = Subspace::row_space(&self.relations);
        let both = Subspace::span(
            self.ambient,
            &[self.relations.to_rows(), ra.to_rows()].concat(),
        )
        .unwrap();
        both.dim() == before.dim()
    }

    /// The restriction `π A ι` of an ambient matrix.
    pub fn reduce_matrix(&self, a: &Matrix) -> Result<Matrix, HyperplaneError> {
        if a.rows() != self.ambient || a.cols() != self.ambient {
            return Err(HyperplaneError::WrongSize(a.rows(), self.ambient));
        }
        if !self.preserves(a) {
            return Err(HyperplaneError::NotPreserved);
        }
        Ok(&(&self.project * a) * &self.embed)
    }

    /// `F(ι y)`: an ambient form restricted to the hyperplane.
    pub fn reduce_polynomial(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let f = f.with_nvars(self.ambient)?;
        f.substitute_linear(&self.embed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Cyclotomic> {
        vec![Cyclotomic::one(); n]
    }

    #[test]
    fn sum_zero_hyperplane_eliminates_last() {
        let m = HyperplaneModel::new(7, &[ones(7)]).unwrap();
        assert_eq!(m.kept(), &[0, 1, 2, 3, 4, 5]);
        let p = Matrix::permutation(&[1, 2, 3, 4, 5, 6, 0]);
        let r = m.reduce_matrix(&p).unwrap();
        assert_eq!(r.rows(), 6);
        assert_eq!(crate::group::matrix_order(&r, 100), Some(7));
    }

    #[test]
    fn two_relations() {
        let mut r1 = vec![Cyclotomic::zero(); 8];
        let mut r2 = vec![Cyclotomic::zero(); 8];
        for i in 0..3 {
            r1[i] = Cyclotomic::one();
        }
        for i in 3..8 {
            r2[i] = Cyclotomic::one();
        }
        let m = HyperplaneModel::new(8, &[r1, r2]).unwrap();
        assert_eq!(m.kept(), &[0, 1, 3, 4, 5, 6]);
        // swapping the blocks is not allowed
        let bad = Matrix::permutation(&[3, 1, 2, 0, 4, 5, 6, 7]);
        assert_eq!(m.reduce_matrix(&bad).unwrap_err(), HyperplaneError::NotPreserved);
    }

    #[test]
    fn no_relations_is_identity() {
        let m = HyperplaneModel::new(6, &[]).unwrap();
        let p = Matrix::permutation(&[1, 0, 2, 3, 4, 5]);
        assert_eq!(m.reduce_matrix(&p).unwrap(), p);
    }
}
