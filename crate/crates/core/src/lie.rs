//! Finite-dimensional Lie algebras over Q given by structure constants.
//!
//! The bracket is stored as the linear map `Λ²L -> L`, i.e. a
//! `n x C(n,2)` matrix whose column for the pair `i < j` holds the
//! coordinates of `[e_i, e_j]`. Antisymmetry is implicit in that storage.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::exterior::{binomial, lex_rank, ExteriorAlgebra, MultiIndex};
use crate::linalg::{Matrix, Subspace};
use crate::rational::{signed_term, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("jacobi violated at ({0},{1},{2})")]
    JacobiViolated(usize, usize, usize),
    #[error("not nilpotent: lower central series stabilizes at dimension {0}")]
    NotNilpotent(usize),
    #[error("bracket ({i},{j}) must have i < j")]
    UnorderedPair { i: usize, j: usize },
    #[error("bracket ({i},{j}) given more than once")]
    DuplicatePair { i: usize, j: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("bracket matrix has shape {rows}x{cols}, expected {dim}x{pairs}")]
    BracketShape {
        rows: usize,
        cols: usize,
        dim: usize,
        pairs: usize,
    },
}

/// One bracket `[e_i, e_j] = Σ v_k e_k` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<(usize, Rational)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, value: Vec<(usize, Rational)>) -> Self {
        BracketEntry { i, j, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    bracket: Matrix,
}

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            labels: default_labels(dim),
            bracket: Matrix::zeros(dim, binomial(dim, 2)),
        }
    }

    /// Builds and validates an algebra from sparse structure constants.
    /// Pairs must be given with `i < j` and at most once.
    pub fn from_brackets(dim: usize, labels: Option<Vec<String>>, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let algebra = Self::from_brackets_unchecked(dim, labels, entries)?;
        algebra.validate()?;
        Ok(algebra)
    }

    /// Like [`LieAlgebra::from_brackets`] but skips the Jacobi check. Such
    /// an algebra must go through [`LieAlgebra::validate`] before any
    /// cohomology call.
    pub fn from_brackets_unchecked(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: &[BracketEntry],
    ) -> Result<Self, LieError> {
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(LieError::LabelCount {
                    expected: dim,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => default_labels(dim),
        };
        let mut bracket = Matrix::zeros(dim, binomial(dim, 2));
        let mut seen = BTreeSet::new();
        for e in entries {
            for index in [e.i, e.j] {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if e.i >= e.j {
                return Err(LieError::UnorderedPair { i: e.i, j: e.j });
            }
            if !seen.insert((e.i, e.j)) {
                return Err(LieError::DuplicatePair { i: e.i, j: e.j });
            }
            let col = pair_index(dim, e.i, e.j);
            for (k, q) in &e.value {
                if *k >= dim {
                    return Err(LieError::IndexOutOfRange { index: *k, dim });
                }
                bracket[(*k, col)] += q;
            }
        }
        Ok(LieAlgebra { dim, labels, bracket })
    }

    /// Wraps a dense bracket matrix (`dim x C(dim,2)`) without validation.
    pub fn from_bracket_matrix_unchecked(labels: Vec<String>, bracket: Matrix) -> Result<Self, LieError> {
        let dim = labels.len();
        if bracket.rows() != dim || bracket.cols() != binomial(dim, 2) {
            return Err(LieError::BracketShape {
                rows: bracket.rows(),
                cols: bracket.cols(),
                dim,
                pairs: binomial(dim, 2),
            });
        }
        Ok(LieAlgebra { dim, labels, bracket })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::LabelCount {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// The bracket as a map `Λ²L -> L`.
    pub fn bracket_matrix(&self) -> &Matrix {
        &self.bracket
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Rational>)> {
        let pairs = crate::exterior::wedge_basis(self.dim, 2);
        pairs
            .iter()
            .enumerate()
            .filter_map(|(col, p)| {
                let v = self.bracket.column(col);
                if v.iter().all(Zero::is_zero) {
                    None
                } else {
                    Some((p.indices()[0], p.indices()[1], v))
                }
            })
            .collect()
    }

    /// `[e_i, e_j]` for any pair of basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec![Rational::zero(); self.dim],
            std::cmp::Ordering::Less => self.bracket.column(pair_index(self.dim, i, j)),
            std::cmp::Ordering::Greater => self
                .bracket
                .column(pair_index(self.dim, j, i))
                .into_iter()
                .map(|q| -q)
                .collect(),
        }
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if i == j || vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (o, b) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every triple `i < j < k` and reports the
    /// first failure.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        let basis: Vec<Vec<Rational>> = Matrix::identity(n).columns();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.bracket_basis(i, j), &basis[k]);
                    let b = self.bracket(&self.bracket_basis(j, k), &basis[i]);
                    let c = self.bracket(&self.bracket_basis(k, i), &basis[j]);
                    let jacobi_holds = a.iter().zip(&b).zip(&c).all(|((x, y), z)| (x + y + z).is_zero());
                    if !jacobi_holds {
                        return Err(LieError::JacobiViolated(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[U, L]` for a subspace `U`.
    pub fn bracket_with_algebra(&self, u: &Subspace) -> Subspace {
        let basis = Matrix::identity(self.dim).columns();
        let vectors = u
            .basis()
            .iter()
            .flat_map(|v| basis.iter().map(move |e| (v, e)))
            .map(|(v, e)| self.bracket(v, e));
        Subspace::span(self.dim, vectors)
    }

    /// `C^1 = L ⊇ C^2 = [L,L] ⊇ …`, ending with the first zero term.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, LieError> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().expect("series starts non-empty");
            if last.is_zero() {
                return Ok(series);
            }
            let next = self.bracket_with_algebra(last);
            if next.dim() == last.dim() {
                return Err(LieError::NotNilpotent(next.dim()));
            }
            series.push(next);
        }
    }

    /// Length of the lower central series minus one. The zero algebra has
    /// class 0.
    pub fn nilpotency_class(&self) -> Result<usize, LieError> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().is_ok()
    }

    /// `C^2(L) = [L, L]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        self.bracket.image()
    }

    pub fn center(&self) -> Subspace {
        // x is central iff ad(x) = 0; ad(x) e_j = Σ_i x_i [e_i, e_j]
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.bracket_basis(i, j)).collect();
            let m = Matrix::from_columns(n, &cols).expect("square");
            for r in 0..n {
                rows.push(m.row(r).to_vec());
            }
        }
        Matrix::from_rows(n, &rows).expect("rows of length n").kernel()
    }

    /// Abelian algebra on `L / [L, L]`. The quotient basis is formed by the
    /// images of the basis vectors that are not pivots of `[L, L]`.
    pub fn abelianization(&self) -> LieAlgebra {
        let free = self.abelianization_indices();
        let labels = free.iter().map(|&i| self.labels[i].clone()).collect();
        LieAlgebra::abelian(free.len())
            .with_labels(labels)
            .expect("label count matches")
    }

    /// Basis indices whose images form the quotient basis of `L / [L, L]`.
    pub fn abelianization_indices(&self) -> Vec<usize> {
        let (_, pivots) = self.derived_subalgebra().to_matrix().rref();
        (0..self.dim).filter(|i| !pivots.contains(i)).collect()
    }

    /// Structure constants in the basis given by the columns of `p`
    /// (the new `e'_a = Σ_i p[i][a] e_i`).
    pub fn change_basis(&self, p: &Matrix) -> Option<LieAlgebra> {
        let inv = p.inverse()?;
        let cols = p.columns();
        let mut bracket = Matrix::zeros(self.dim, binomial(self.dim, 2));
        for (col, pair) in crate::exterior::wedge_basis(self.dim, 2).iter().enumerate() {
            let (a, b) = (pair.indices()[0], pair.indices()[1]);
            let v = inv.mul_vec(&self.bracket(&cols[a], &cols[b]));
            for (r, q) in v.into_iter().enumerate() {
                bracket[(r, col)] = q;
            }
        }
        Some(LieAlgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            bracket,
        })
    }

    /// Same basis, all brackets negated. Isomorphic via `x ↦ -x`.
    pub fn negated(&self) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            bracket: self.bracket.scale(&crate::rational::int(-1)),
        }
    }

    /// `L ⊕ M` with the basis of `L` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut bracket = Matrix::zeros(n, binomial(n, 2));
        for (i, j, v) in self.nonzero_brackets() {
            let col = pair_index(n, i, j);
            for (k, q) in v.into_iter().enumerate() {
                bracket[(k, col)] = q;
            }
        }
        for (i, j, v) in other.nonzero_brackets() {
            let col = pair_index(n, i + self.dim, j + self.dim);
            for (k, q) in v.into_iter().enumerate() {
                bracket[(k + self.dim, col)] = q;
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        LieAlgebra {
            dim: n,
            labels,
            bracket,
        }
    }

    /// Human-readable bracket table, one nonzero bracket per line.
    pub fn describe_brackets(&self) -> Vec<String> {
        self.nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| {
                let mut rhs = String::new();
                for (k, q) in v.iter().enumerate() {
                    if !q.is_zero() {
                        rhs.push_str(&signed_term(q, &self.labels[k], rhs.is_empty()));
                    }
                }
                format!("[{}, {}] = {}", self.labels[i], self.labels[j], rhs)
            })
            .collect()
    }

    pub fn exterior(&self) -> ExteriorAlgebra {
        ExteriorAlgebra::new(self.dim)
    }
}

/// Column of the pair `(i, j)`, `i < j`, in the lexicographic basis of `Λ²`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    lex_rank(n, &MultiIndex::new(vec![i, j]).expect("i < j"))
}

/// Small catalogue of algebras used throughout tests and examples.
pub mod catalog {
    use super::*;
    use crate::rational::int;

    /// Real Heisenberg algebra `h3` on `(x, y, z)` with `[x, y] = z`.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            Some(vec!["x".into(), "y".into(), "z".into()]),
            &[BracketEntry::new(0, 1, vec![(2, int(1))])],
        )
        .expect("h3 is a Lie algebra")
    }

    /// Complex Heisenberg algebra as a real 6-dimensional algebra on
    /// `(x1, y1, x2, y2, z1, z2)`: `[x1,y1] = z1`, `[x2,y2] = -z1`,
    /// `[x1,y2] = z2`, `[x2,y1] = z2`.
    pub fn complex_heisenberg() -> LieAlgebra {
        let labels = ["x1", "y1", "x2", "y2", "z1", "z2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (x1, y1, x2, y2, z1, z2) = (0, 1, 2, 3, 4, 5);
        LieAlgebra::from_brackets(
            6,
            Some(labels),
            &[
                BracketEntry::new(x1, y1, vec![(z1, int(1))]),
                BracketEntry::new(x2, y2, vec![(z1, int(-1))]),
                BracketEntry::new(x1, y2, vec![(z2, int(1))]),
                // [x2, y1] = z2, stored as [y1, x2] = -z2
                BracketEntry::new(y1, x2, vec![(z2, int(-1))]),
            ],
        )
        .expect("complex Heisenberg is a Lie algebra")
    }

    /// Free 2-step nilpotent algebra on `g` generators:
    /// `[a_i, a_j] = z_{ij}` for each pair.
    pub fn free_two_step(g: usize) -> LieAlgebra {
        let pairs = crate::exterior::wedge_basis(g, 2);
        let entries: Vec<BracketEntry> = pairs
            .iter()
            .enumerate()
            .map(|(c, p)| BracketEntry::new(p.indices()[0], p.indices()[1], vec![(g + c, int(1))]))
            .collect();
        LieAlgebra::from_brackets(g + pairs.len(), None, &entries).expect("free 2-step is Lie")
    }

    /// Standard filiform algebra `L_n`: `[e0, e_i] = e_{i+1}` for `1 ≤ i < n-1`.
    pub fn filiform(n: usize) -> LieAlgebra {
        let entries: Vec<BracketEntry> = (1..n.saturating_sub(1))
            .map(|i| BracketEntry::new(0, i, vec![(i + 1, int(1))]))
            .collect();
        LieAlgebra::from_brackets(n, None, &entries).expect("filiform is Lie")
    }

    /// `sl2`-type algebra `[e0,e1] = e2, [e0,e2] = e1, [e1,e2] = e0`; Jacobi
    /// holds but it is not nilpotent.
    pub fn so21() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            None,
            &[
                BracketEntry::new(0, 1, vec![(2, int(1))]),
                BracketEntry::new(0, 2, vec![(1, int(1))]),
                BracketEntry::new(1, 2, vec![(0, int(1))]),
            ],
        )
        .expect("so(2,1)-type algebra is Lie")
    }
}
