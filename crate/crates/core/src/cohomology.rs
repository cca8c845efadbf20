//! Chevalley–Eilenberg cohomology of a Lie algebra.
//!
//! Cochains are alternating forms `Λ^k L*` in the lexicographic basis of
//! the dual basis `e^0, …, e^{n-1}`. On one-forms the differential is
//! `dξ(x, y) = -ξ([x, y])`, so `d e^g = -Σ_{i<j} c^g_{ij} e^i ∧ e^j`, and it
//! is extended to higher degrees as a derivation. For nilpotent algebras
//! this computes the rational cohomology of the corresponding lattice.

use num_traits::Zero;

use crate::exterior::{binomial, ExteriorAlgebra};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace};
use crate::rational::Rational;

/// Differential on one-forms, `Λ^1 L* -> Λ^2 L*` (shape `C(n,2) x n`).
pub fn ce_differential_on_generators(l: &LieAlgebra) -> Matrix {
    l.bracket_matrix().transpose().scale(&crate::rational::int(-1))
}

/// `d_k : Λ^k L* -> Λ^{k+1} L*`.
pub fn ce_differential(l: &LieAlgebra, k: usize) -> Matrix {
    l.exterior().derivation(&ce_differential_on_generators(l), k)
}

/// All differentials `d_0 … d_n`.
pub fn ce_complex(l: &LieAlgebra) -> Vec<Matrix> {
    (0..=l.dim()).map(|k| ce_differential(l, k)).collect()
}

/// Explicit cocycles, coboundaries and class representatives in one degree.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    degree: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    representatives: Vec<Vec<Rational>>,
    // columns: coboundary basis, then representatives
    decomposition: Matrix,
}

impl CohomologyBasis {
    /// Cohomology at the middle of `incoming: C^{k-1} -> C^k` and
    /// `outgoing: C^k -> C^{k+1}`.
    pub fn from_differentials(degree: usize, incoming: &Matrix, outgoing: &Matrix) -> Self {
        assert_eq!(incoming.rows(), outgoing.cols(), "differentials do not compose");
        let ambient = outgoing.cols();
        let cocycles = outgoing.kernel();
        let coboundaries = incoming.image();
        debug_assert!(cocycles.contains_subspace(&coboundaries), "d∘d ≠ 0");
        let representatives = cocycles.complement_representatives(&coboundaries);
        let columns: Vec<Vec<Rational>> = coboundaries.basis().iter().chain(&representatives).cloned().collect();
        let decomposition = Matrix::from_columns(ambient, &columns).expect("vectors in ambient");
        CohomologyBasis {
            degree,
            cocycles,
            coboundaries,
            representatives,
            decomposition,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.representatives
    }

    /// Representatives as the columns of a `C(n,k) x dim H^k` matrix.
    pub fn representative_matrix(&self) -> Matrix {
        Matrix::from_columns(self.cocycles.ambient_dim(), &self.representatives)
            .expect("representatives live in the cochain space")
    }

    /// Coordinates of the classes of the given cocycles (columns of
    /// `cocycles`) in the representative basis. `None` if some column is not
    /// closed.
    pub fn classes_of(&self, cocycles: &Matrix) -> Option<Matrix> {
        let x = self.decomposition.solve_columns(cocycles)?;
        let b = self.coboundaries.dim();
        Some(
            Matrix::from_rows(
                cocycles.cols(),
                &(b..x.rows()).map(|r| x.row(r).to_vec()).collect::<Vec<_>>(),
            )
            .expect("rows have one entry per cocycle"),
        )
    }

    pub fn class_of(&self, cocycle: &[Rational]) -> Option<Vec<Rational>> {
        let m = Matrix::from_columns(cocycle.len(), &[cocycle.to_vec()]).ok()?;
        self.classes_of(&m).map(|c| c.column(0))
    }
}

fn incoming_differential(l: &LieAlgebra, k: usize) -> Matrix {
    if k == 0 {
        Matrix::zeros(1, 0)
    } else {
        ce_differential(l, k - 1)
    }
}

pub fn cohomology_basis(l: &LieAlgebra, k: usize) -> CohomologyBasis {
    assert!(k <= l.dim(), "degree {k} exceeds dimension {}", l.dim());
    CohomologyBasis::from_differentials(k, &incoming_differential(l, k), &ce_differential(l, k))
}

/// `b_k = dim ker d_k - rank d_{k-1}` for `k = 0..=n`.
pub fn betti_numbers(l: &LieAlgebra) -> Vec<usize> {
    let n = l.dim();
    let ranks: Vec<usize> = (0..=n).map(|k| ce_differential(l, k).rank()).collect();
    (0..=n)
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            binomial(n, k) - ranks[k] - incoming
        })
        .collect()
}

pub fn euler_characteristic_of(betti: &[usize]) -> i64 {
    betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

pub fn euler_characteristic(l: &LieAlgebra) -> i64 {
    euler_characteristic_of(&betti_numbers(l))
}

/// Annihilator of `[L, L]` in `L*`, with the basis dual to the quotient basis
/// of `L / [L, L]` chosen by [`LieAlgebra::abelianization_indices`].
pub fn abelianization_dual_basis(l: &LieAlgebra) -> Vec<Vec<Rational>> {
    l.derived_subalgebra().to_matrix().kernel_basis()
}

/// The map `H²(L/[L,L]) = Λ²(L/[L,L])* -> H²(L)` induced by the projection,
/// as a `dim H²(L) x C(b_1, 2)` matrix in the representative basis of
/// [`cohomology_basis`].
pub fn restriction_to_abelianization_map(l: &LieAlgebra) -> Matrix {
    let ext = l.exterior();
    let dual = abelianization_dual_basis(l);
    let m = dual.len();
    let pairs = crate::exterior::wedge_basis(m, 2);
    let forms: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|p| ext.wedge(1, &dual[p.indices()[0]], 1, &dual[p.indices()[1]]))
        .collect();
    if l.dim() < 2 {
        return Matrix::zeros(0, pairs.len());
    }
    let h2 = cohomology_basis(l, 2);
    let forms = Matrix::from_columns(ext.dim(2), &forms).expect("2-forms");
    h2.classes_of(&forms)
        .expect("wedges of forms vanishing on [L,L] are closed")
}

/// Outcome of the one-formality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneFormality {
    /// `dim H²(L/[L,L]) = C(b_1, 2)`.
    pub h2_abelianization: usize,
    pub image_dim: usize,
    pub h2: usize,
}

impl OneFormality {
    pub fn is_one_formal(&self) -> bool {
        self.image_dim == self.h2
    }
}

/// One-formality holds iff `H²(L/[L,L]) -> H²(L)` is onto. Requires a
/// nilpotent algebra.
pub fn one_formality(l: &LieAlgebra) -> Result<OneFormality, LieError> {
    l.lower_central_series()?;
    let map = restriction_to_abelianization_map(l);
    Ok(OneFormality {
        h2_abelianization: map.cols(),
        image_dim: map.rank(),
        h2: map.rows(),
    })
}

pub fn is_one_formal(l: &LieAlgebra) -> Result<bool, LieError> {
    one_formality(l).map(|f| f.is_one_formal())
}

/// Checks `d_{k+1} ∘ d_k = 0` in every degree.
pub fn differential_squares_to_zero(l: &LieAlgebra) -> bool {
    let ds = ce_complex(l);
    ds.windows(2).all(|w| (&w[1] * &w[0]).is_zero())
}

/// `d_2 ∘ d_1` on one-forms, the part of `d² = 0` equivalent to Jacobi.
pub fn d_squared_on_one_forms_vanishes(l: &LieAlgebra) -> bool {
    if l.dim() < 3 {
        return true;
    }
    (&ce_differential(l, 2) * &ce_differential(l, 1)).is_zero()
}

/// Nonzero entries of a cochain, rendered with the algebra's dual labels.
pub fn describe_form(l: &LieAlgebra, k: usize, v: &[Rational]) -> String {
    let basis = ExteriorAlgebra::new(l.dim()).basis(k);
    let mut out = String::new();
    for (idx, q) in basis.iter().zip(v) {
        if q.is_zero() {
            continue;
        }
        let sym = if idx.degree() == 0 {
            "1".to_string()
        } else {
            idx.indices()
                .iter()
                .map(|&i| format!("{}*", l.labels()[i]))
                .collect::<Vec<_>>()
                .join("^")
        };
        out.push_str(&crate::rational::signed_term(q, &sym, out.is_empty()));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
