//! Invariant cohomology under a finite group of Lie algebra automorphisms.
//!
//! For a finite-index normal subgroup `H ⊂ Γ`, rational cohomology of `Γ`
//! is the `Γ/H`-invariant part of the cohomology of `H`. With `H` given by
//! its Lie algebra and `Γ/H` by automorphism matrices, the invariant part is
//! the image of the averaging projector.

use num_traits::One;
use thiserror::Error;

use crate::cohomology::cohomology_basis;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("empty group")]
    Empty,
    #[error("element {element} is {rows}x{cols}, expected {dim}x{dim}")]
    Dimension {
        element: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("element {0} is not invertible")]
    Singular(usize),
    #[error("not an automorphism (element {element}, pair {i},{j})")]
    NotAutomorphism { element: usize, i: usize, j: usize },
    #[error("identity is not among the elements")]
    MissingIdentity,
    #[error("not closed under product (elements {0} and {1})")]
    NotClosed(usize, usize),
}

/// A finite group acting on a Lie algebra, listed element by element.
/// Matrices act on column coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupAction {
    target: LieAlgebra,
    elements: Vec<Matrix>,
}

impl FiniteGroupAction {
    /// Builds and validates the action.
    pub fn new(target: LieAlgebra, elements: Vec<Matrix>) -> Result<Self, ActionError> {
        let a = FiniteGroupAction { target, elements };
        validate_action(&a)?;
        Ok(a)
    }

    pub fn trivial(target: LieAlgebra) -> Self {
        let n = target.dim();
        FiniteGroupAction {
            target,
            elements: vec![Matrix::identity(n)],
        }
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Checks shapes, invertibility, the automorphism property on basis pairs,
/// presence of the identity and closure under products, in that order.
/// Finiteness makes closure under products imply closure under inverses.
pub fn validate_action(a: &FiniteGroupAction) -> Result<(), ActionError> {
    let n = a.target.dim();
    if a.elements.is_empty() {
        return Err(ActionError::Empty);
    }
    for (e, m) in a.elements.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(ActionError::Dimension {
                element: e,
                rows: m.rows(),
                cols: m.cols(),
                dim: n,
            });
        }
        if m.rank() < n {
            return Err(ActionError::Singular(e));
        }
        let images = m.columns();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = m.mul_vec(&a.target.bracket_basis(i, j));
                let rhs = a.target.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(ActionError::NotAutomorphism { element: e, i, j });
                }
            }
        }
    }
    if !a.elements.contains(&Matrix::identity(n)) {
        return Err(ActionError::MissingIdentity);
    }
    for (x, g) in a.elements.iter().enumerate() {
        for (y, h) in a.elements.iter().enumerate() {
            if !a.elements.contains(&(g * h)) {
                return Err(ActionError::NotClosed(x, y));
            }
        }
    }
    Ok(())
}

/// Matrices of every element on `H^k`, in the coordinates of
/// [`cohomology_basis`] representatives. An element `φ` acts on cochains by
/// `ω ↦ ω ∘ φ⁻¹`, so the map is a left action.
pub fn induced_action_on_cohomology(a: &FiniteGroupAction, k: usize) -> Vec<Matrix> {
    let basis = cohomology_basis(&a.target, k);
    let reps = basis.representative_matrix();
    let ext = a.target.exterior();
    a.elements
        .iter()
        .map(|phi| {
            let dual = phi.inverse().expect("validated elements are invertible").transpose();
            let on_forms = ext.induced_map(&dual, k);
            basis
                .classes_of(&(&on_forms * &reps))
                .expect("automorphisms commute with the differential")
        })
        .collect()
}

/// `(1/|G|) Σ φ` on `H^k`.
pub fn averaging_projector(a: &FiniteGroupAction, k: usize) -> Matrix {
    let actions = induced_action_on_cohomology(a, k);
    let dim = cohomology_basis(&a.target, k).dim();
    let sum = actions.iter().fold(Matrix::zeros(dim, dim), |acc, m| acc.add(m));
    sum.scale(&(Rational::one() / Rational::from_integer(a.order().into())))
}

/// `dim H^k(L)^G` for `k = 0..=dim L`.
pub fn invariant_dims(a: &FiniteGroupAction) -> Vec<usize> {
    (0..=a.target.dim()).map(|k| averaging_projector(a, k).rank()).collect()
}

/// Whether `p` squares to itself.
pub fn is_idempotent(p: &Matrix) -> bool {
    &(p * p) == p
}
