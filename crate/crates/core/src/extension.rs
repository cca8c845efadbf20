//! Z-central extensions `1 -> Z -> Γ -> A -> 1` of free abelian groups.
//!
//! The Hochschild–Serre sequence of such an extension degenerates at `E_3`
//! and splits every `H^k(Γ)` into
//!
//! ```text
//! 0 -> H^k(A) / (H^{k-2}(A) ∧ cl) -> H^k(Γ) -> Ker(∧cl : H^{k-1}(A) -> H^{k+1}(A)) -> 0
//! ```
//!
//! with `H^•(A) = Λ^•(Q^rank)`. When `H¹(A)` is Hodge-typed (first `g`
//! basis vectors holomorphic, last `g` antiholomorphic) and `cl` has type
//! (1,1), the quotient carries weight `k` and the kernel weight `k + 1` with
//! Hodge numbers shifted by (1,1).

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exterior::{binomial, wedge_basis, ExteriorAlgebra, MultiIndex};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("hodge-typed extension needs an even rank, got {0}")]
    OddRank(usize),
    #[error("class entry ({i},{j}) must have i < j < rank = {rank}")]
    BadIndex { i: usize, j: usize, rank: usize },
    #[error("class entry ({i},{j}) given more than once")]
    DuplicateEntry { i: usize, j: usize },
    #[error("class vector has length {found}, expected {expected}")]
    ClassLength { expected: usize, found: usize },
    #[error("cl not of type (1,1): nonzero coefficient on ({i},{j})")]
    NotType11 { i: usize, j: usize },
    #[error("extension is not hodge-typed")]
    NotHodgeTyped,
    #[error("rank must be at least 1")]
    ZeroRank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDatum {
    rank: usize,
    hodge_typed: bool,
    /// Coefficients of `cl` on the lexicographic basis of `Λ²H¹(A)`.
    cl: Vec<Rational>,
}

impl ExtensionDatum {
    pub fn new(rank: usize, hodge_typed: bool, entries: &[(usize, usize, Rational)]) -> Result<Self, ExtensionError> {
        let mut cl = vec![Rational::zero(); binomial(rank, 2)];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, q) in entries {
            if !(i < j && *j < rank) {
                return Err(ExtensionError::BadIndex { i: *i, j: *j, rank });
            }
            if !seen.insert((*i, *j)) {
                return Err(ExtensionError::DuplicateEntry { i: *i, j: *j });
            }
            cl[crate::lie::pair_index(rank, *i, *j)] = q.clone();
        }
        Self::from_class(rank, hodge_typed, cl)
    }

    pub fn from_class(rank: usize, hodge_typed: bool, cl: Vec<Rational>) -> Result<Self, ExtensionError> {
        if hodge_typed && !rank.is_multiple_of(2) {
            return Err(ExtensionError::OddRank(rank));
        }
        if cl.len() != binomial(rank, 2) {
            return Err(ExtensionError::ClassLength {
                expected: binomial(rank, 2),
                found: cl.len(),
            });
        }
        Ok(ExtensionDatum { rank, hodge_typed, cl })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hodge_typed(&self) -> bool {
        self.hodge_typed
    }

    /// Half the rank: the complex dimension of the torus when Hodge-typed.
    pub fn genus(&self) -> usize {
        self.rank / 2
    }

    pub fn class(&self) -> &[Rational] {
        &self.cl
    }

    /// Nonzero entries `(i, j, cl_ij)` in lexicographic order.
    pub fn class_entries(&self) -> Vec<(usize, usize, Rational)> {
        wedge_basis(self.rank, 2)
            .into_iter()
            .zip(&self.cl)
            .filter(|(_, q)| !q.is_zero())
            .map(|(p, q)| (p.indices()[0], p.indices()[1], q.clone()))
            .collect()
    }

    fn exterior(&self) -> ExteriorAlgebra {
        ExteriorAlgebra::new(self.rank)
    }

    /// `(holomorphic count, antiholomorphic count)` of a basis monomial.
    pub fn bidegree(&self, idx: &MultiIndex) -> (usize, usize) {
        let g = self.genus();
        let p = idx.indices().iter().filter(|&&i| i < g).count();
        (p, idx.degree() - p)
    }

    /// Errors unless every nonzero coefficient pairs a holomorphic with an
    /// antiholomorphic index.
    pub fn check_type_11(&self) -> Result<(), ExtensionError> {
        if !self.hodge_typed {
            return Err(ExtensionError::NotHodgeTyped);
        }
        for (i, j, _) in self.class_entries() {
            let idx = MultiIndex::new(vec![i, j]).expect("i < j");
            if self.bidegree(&idx) != (1, 1) {
                return Err(ExtensionError::NotType11 { i, j });
            }
        }
        Ok(())
    }

    /// Whether swapping holomorphic and antiholomorphic indices maps `cl` to a
    /// multiple of itself.
    pub fn is_conjugation_stable(&self) -> bool {
        let g = self.genus();
        let swap = |i: usize| if i < g { i + g } else { i - g };
        let mut conj = vec![Rational::zero(); self.cl.len()];
        for (i, j, q) in self.class_entries() {
            let (sign, idx) = crate::exterior::sort_with_sign(&[swap(i), swap(j)]).expect("distinct");
            let pos = crate::exterior::lex_rank(self.rank, &idx);
            conj[pos] = if sign < 0 { -q } else { q };
        }
        let Some(p) = self.cl.iter().position(|q| !q.is_zero()) else {
            return true;
        };
        if conj[p].is_zero() {
            return false;
        }
        let ratio = &conj[p] / &self.cl[p];
        self.cl.iter().zip(&conj).all(|(a, b)| a * &ratio == *b)
    }
}

/// Matrix of `ω ↦ ω ∧ cl` from `Λ^j H¹(A)` to `Λ^{j+2} H¹(A)`.
pub fn cup_with_class(e: &ExtensionDatum, j: usize) -> Matrix {
    e.exterior().right_multiplication(j, 2, &e.cl)
}

fn cup_rank(e: &ExtensionDatum, j: isize) -> usize {
    if j < 0 || j as usize > e.rank {
        0
    } else {
        cup_with_class(e, j as usize).rank()
    }
}

fn coker_dim(e: &ExtensionDatum, k: usize) -> usize {
    binomial(e.rank, k) - cup_rank(e, k as isize - 2)
}

fn kernel_dim(e: &ExtensionDatum, k: usize) -> usize {
    if k == 0 || k - 1 > e.rank {
        return 0;
    }
    binomial(e.rank, k - 1) - cup_rank(e, k as isize - 1)
}

/// `dim H^k(Γ)` for `k = 0..=rank+1`.
pub fn gysin_dims(e: &ExtensionDatum) -> Vec<usize> {
    (0..=e.rank + 1).map(|k| coker_dim(e, k) + kernel_dim(e, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surjectivity {
    pub h2_abelianization: usize,
    pub h2: usize,
    pub surjective: bool,
}

/// `H²(Γ_ab) -> H²(Γ)` is onto iff `∧cl` is injective on `H¹(A)`.
pub fn h2ab_to_h2_surjectivity(e: &ExtensionDatum) -> Surjectivity {
    Surjectivity {
        h2_abelianization: binomial(e.rank, 2),
        h2: coker_dim(e, 2) + kernel_dim(e, 2),
        surjective: kernel_dim(e, 2) == 0,
    }
}

/// One graded piece `Gr^W_weight H^k(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgePiece {
    pub weight: usize,
    pub dim: usize,
    /// `h^{p,q}` keyed by `(p, q)`, `p + q = weight`.
    pub hodge_numbers: Option<BTreeMap<(usize, usize), usize>>,
}

impl HodgePiece {
    /// `(h^{w,0}, h^{w-1,1}, …, h^{0,w})`.
    pub fn hodge_vector(&self) -> Option<Vec<usize>> {
        let h = self.hodge_numbers.as_ref()?;
        Some(
            (0..=self.weight)
                .rev()
                .map(|p| h.get(&(p, self.weight - p)).copied().unwrap_or(0))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGradedHodge {
    pub degree: usize,
    pub pieces: Vec<HodgePiece>,
}

impl WeightGradedHodge {
    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.dim).sum()
    }

    pub fn is_pure_of_weight(&self, w: usize) -> bool {
        self.pieces.iter().all(|p| p.weight == w)
    }
}

/// Weight pieces without Hodge numbers; valid for any datum.
pub fn weight_pieces(e: &ExtensionDatum, k: usize) -> WeightGradedHodge {
    let pieces = [(k, coker_dim(e, k)), (k + 1, kernel_dim(e, k))]
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(weight, dim)| HodgePiece {
            weight,
            dim,
            hodge_numbers: None,
        })
        .collect();
    WeightGradedHodge { degree: k, pieces }
}

/// Sub-block of `∧cl : Λ^j -> Λ^{j+2}` from bidegree `(p, q)` to `(p+1, q+1)`.
fn cup_block(e: &ExtensionDatum, j: usize, p: usize, q: usize) -> Matrix {
    let full = cup_with_class(e, j);
    let source = wedge_basis(e.rank, j);
    let target = wedge_basis(e.rank, j + 2);
    let cols: Vec<usize> = (0..source.len())
        .filter(|&c| e.bidegree(&source[c]) == (p, q))
        .collect();
    let rows: Vec<usize> = (0..target.len())
        .filter(|&r| e.bidegree(&target[r]) == (p + 1, q + 1))
        .collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            m[(ri, ci)] = full[(r, c)].clone();
        }
    }
    m
}

/// Count of basis monomials of `Λ^k` with bidegree `(p, q)`: `C(g,p)·C(g,q)`.
fn hodge_number_of_torus(g: usize, p: usize, q: usize) -> usize {
    binomial(g, p) * binomial(g, q)
}

/// Weight-graded Hodge numbers of `H^k(Γ)`. Requires a Hodge-typed datum
/// with `cl` of type (1,1).
pub fn gysin_mhs(e: &ExtensionDatum, k: usize) -> Result<WeightGradedHodge, ExtensionError> {
    e.check_type_11()?;
    let g = e.genus();
    let mut pieces = Vec::new();

    if k <= e.rank {
        let mut quotient = BTreeMap::new();
        for p in 0..=k {
            let q = k - p;
            let mut h = hodge_number_of_torus(g, p, q);
            if k >= 2 && p >= 1 && q >= 1 {
                h -= cup_block(e, k - 2, p - 1, q - 1).rank();
            }
            if h > 0 {
                quotient.insert((p, q), h);
            }
        }
        let dim: usize = quotient.values().sum();
        if dim > 0 {
            pieces.push(HodgePiece {
                weight: k,
                dim,
                hodge_numbers: Some(quotient),
            });
        }
    }

    if k >= 1 && k - 1 <= e.rank {
        let j = k - 1;
        let mut kernel = BTreeMap::new();
        for p in 0..=j {
            let q = j - p;
            let block = cup_block(e, j, p, q);
            let h = block.cols() - block.rank();
            if h > 0 {
                kernel.insert((p + 1, q + 1), h);
            }
        }
        let dim: usize = kernel.values().sum();
        if dim > 0 {
            pieces.push(HodgePiece {
                weight: k + 1,
                dim,
                hodge_numbers: Some(kernel),
            });
        }
    }
    Ok(WeightGradedHodge { degree: k, pieces })
}

/// `H²(Γ)` is pure of weight 2 iff `∧cl` is injective on `H¹(A)`.
pub fn purity_check_h2(e: &ExtensionDatum) -> Result<bool, ExtensionError> {
    Ok(gysin_mhs(e, 2)?.is_pure_of_weight(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CarlsonToledo {
    pub h2: usize,
}

impl CarlsonToledo {
    pub fn nonzero(&self) -> bool {
        self.h2 > 0
    }
}

/// Computes `dim H²(Γ)`; the conjecture holds for the datum iff it is positive.
pub fn carlson_toledo_check(e: &ExtensionDatum) -> Result<CarlsonToledo, ExtensionError> {
    if e.rank == 0 {
        return Err(ExtensionError::ZeroRank);
    }
    Ok(CarlsonToledo {
        h2: coker_dim(e, 2) + kernel_dim(e, 2),
    })
}

/// Two-step nilpotent algebra on `(a_0, …, a_{r-1}, z)` with
/// `[a_i, a_j] = cl_ij · z`.
pub fn associated_lie_algebra(e: &ExtensionDatum) -> LieAlgebra {
    let z = e.rank;
    let entries: Vec<BracketEntry> = e
        .class_entries()
        .into_iter()
        .map(|(i, j, q)| BracketEntry::new(i, j, vec![(z, q)]))
        .collect();
    let labels = (0..e.rank).map(|i| format!("a{i}")).chain(["z".to_string()]).collect();
    LieAlgebra::from_brackets(e.rank + 1, Some(labels), &entries)
        .expect("a central extension by a one-dimensional center satisfies Jacobi")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("nomizu mismatch in degree {degree}: gysin {gysin}, lie {lie}")]
pub struct NomizuMismatch {
    pub degree: usize,
    pub gysin: usize,
    pub lie: usize,
}

/// Gysin dimensions against Chevalley–Eilenberg Betti numbers of the
/// associated Lie algebra.
pub fn nomizu_crosscheck(e: &ExtensionDatum) -> Result<Vec<usize>, NomizuMismatch> {
    let gysin = gysin_dims(e);
    let lie = crate::cohomology::betti_numbers(&associated_lie_algebra(e));
    for (degree, (&a, &b)) in gysin.iter().zip(&lie).enumerate() {
        if a != b {
            return Err(NomizuMismatch {
                degree,
                gysin: a,
                lie: b,
            });
        }
    }
    Ok(gysin)
}
