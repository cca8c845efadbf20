//! 1-minimal models of formal cohomology data and their dual Lie towers.
//!
//! Starting from `H¹`, `H²` and the cup product `Λ²H¹ -> H²`, the tower is
//! `M(1) = Λ(H¹)` with zero differential, and `M(i+1) = M(i) ⊗ Λ(V_{i+1})`
//! where `V_{i+1}` is the kernel of `H²(M(i)) -> H²`. Every generator sits in
//! degree one, so the tower is the Chevalley–Eilenberg complex of a nilpotent
//! Lie algebra at each stage. The stage index of a generator is its weight.

use std::ops::Range;

use num_traits::Zero;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::cohomology::{ce_differential, CohomologyBasis};
use crate::exterior::{binomial, wedge_basis, ExteriorAlgebra};
use crate::lie::{pair_index, LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CupDataError {
    #[error("cup matrix has shape {rows}x{cols}, expected {b2}x{pairs}")]
    Shape {
        rows: usize,
        cols: usize,
        b2: usize,
        pairs: usize,
    },
    #[error("hodge split ({p},{q}) does not add up to b1 = {b1}")]
    HodgeSplit { p: usize, q: usize, b1: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("max_stage must be at least 1")]
    NoStages,
    #[error("stage {stage} does not exist (tower has {stages})")]
    MissingStage { stage: usize, stages: usize },
    #[error("{source}")]
    BudgetExceeded {
        source: BudgetExceeded,
        partial: Box<HirschTower>,
    },
}

/// `b1`, `b2` and the cup product `Λ²H¹ -> H²` (a `b2 x C(b1,2)` matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupData {
    b1: usize,
    b2: usize,
    hodge_split: Option<(usize, usize)>,
    cup: Matrix,
}

impl CupData {
    pub fn new(b1: usize, b2: usize, cup: Matrix, hodge_split: Option<(usize, usize)>) -> Result<Self, CupDataError> {
        if cup.rows() != b2 || cup.cols() != binomial(b1, 2) {
            return Err(CupDataError::Shape {
                rows: cup.rows(),
                cols: cup.cols(),
                b2,
                pairs: binomial(b1, 2),
            });
        }
        if let Some((p, q)) = hodge_split {
            if p + q != b1 {
                return Err(CupDataError::HodgeSplit { p, q, b1 });
            }
        }
        Ok(CupData {
            b1,
            b2,
            hodge_split,
            cup,
        })
    }

    /// Cup data of a real torus of dimension `b1`: `Λ²H¹ ≅ H²`.
    pub fn torus(b1: usize) -> Self {
        let pairs = binomial(b1, 2);
        CupData::new(b1, pairs, Matrix::identity(pairs), None).expect("square identity")
    }

    /// `b2 = 0`: every product of one-classes vanishes.
    pub fn trivial_cup(b1: usize) -> Self {
        CupData::new(b1, 0, Matrix::zeros(0, binomial(b1, 2)), None).expect("empty cup")
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    pub fn hodge_split(&self) -> Option<(usize, usize)> {
        self.hodge_split
    }

    pub fn cup(&self) -> &Matrix {
        &self.cup
    }

    pub fn is_injective(&self) -> bool {
        self.cup.rank() == self.cup.cols()
    }

    /// Evaluation `Λ²(all generators) -> H²` for a tower with `total`
    /// generators: stage-one generators go to their `H¹` classes, all others
    /// to zero.
    fn evaluation(&self, total: usize) -> Matrix {
        let mut proj = Matrix::zeros(binomial(self.b1, 2), binomial(total, 2));
        for (row, p) in wedge_basis(self.b1, 2).iter().enumerate() {
            let (i, j) = (p.indices()[0], p.indices()[1]);
            proj[(row, pair_index(total, i, j))] = crate::rational::int(1);
        }
        &self.cup * &proj
    }
}

/// A degree-one generator of the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerGenerator {
    pub label: String,
    /// Stage at which the generator was adjoined.
    pub weight: usize,
    /// `d` of the generator as `(i, j, coefficient)` on `e_i ∧ e_j`, `i < j`,
    /// sorted lexicographically. Indices refer to earlier generators.
    pub differential: Vec<(usize, usize, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerStatus {
    /// `V_{i+1} = 0`: the tower is complete.
    Stabilized,
    /// Stopped at `max_stage` with a nonzero next kernel.
    StageLimit,
    /// Stopped because the next stage would exceed the budget.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirschTower {
    generators: Vec<TowerGenerator>,
    /// Generator index range of each stage, stage 1 first.
    stages: Vec<Range<usize>>,
    status: TowerStatus,
    /// `dim V_{i+1}` for the last stage `i`.
    next_kernel_dim: usize,
}

impl HirschTower {
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn generators(&self) -> &[TowerGenerator] {
        &self.generators
    }

    pub fn status(&self) -> TowerStatus {
        self.status
    }

    pub fn is_stabilized(&self) -> bool {
        self.status == TowerStatus::Stabilized
    }

    /// `dim V_{i+1}` past the last built stage (zero iff stabilized).
    pub fn next_kernel_dim(&self) -> usize {
        self.next_kernel_dim
    }

    /// Number of generators adjoined at `stage` (1-based), i.e. `dim V_stage`.
    pub fn new_generators(&self, stage: usize) -> usize {
        self.stages[stage - 1].len()
    }

    pub fn total_generators(&self, stage: usize) -> usize {
        self.stages[stage - 1].end
    }

    pub fn stage_range(&self, stage: usize) -> Range<usize> {
        self.stages[stage - 1].clone()
    }

    fn check_stage(&self, stage: usize) -> Result<(), TowerError> {
        if stage == 0 || stage > self.stages.len() {
            Err(TowerError::MissingStage {
                stage,
                stages: self.stages.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Differential on the degree-one generators of `M(stage)`, as a
    /// `C(N,2) x N` matrix with `N = total_generators(stage)`.
    pub fn differential_on_generators(&self, stage: usize) -> Matrix {
        let n = self.total_generators(stage);
        let mut m = Matrix::zeros(binomial(n, 2), n);
        for (g, gen) in self.generators[..n].iter().enumerate() {
            for (i, j, q) in &gen.differential {
                m[(pair_index(n, *i, *j), g)] = q.clone();
            }
        }
        m
    }

    /// `d : Λ^k -> Λ^{k+1}` of `M(stage)`.
    pub fn differential(&self, stage: usize, k: usize) -> Matrix {
        let n = self.total_generators(stage);
        ExteriorAlgebra::new(n).derivation(&self.differential_on_generators(stage), k)
    }

    /// `H²(M(stage))` with explicit representatives.
    pub fn h2(&self, stage: usize) -> CohomologyBasis {
        CohomologyBasis::from_differentials(2, &self.differential(stage, 1), &self.differential(stage, 2))
    }

    /// Checks decomposability, `d² = 0` on generators, zero differential on
    /// stage one and the weight bound of every differential.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (g, gen) in self.generators.iter().enumerate() {
            for (i, j, _) in &gen.differential {
                if !(i < j && *j < g) {
                    return Err(format!("d of generator {g} is not decomposable in earlier generators"));
                }
                let bound = 2 * (gen.weight.max(2) - 1);
                let w = self.generators[*i].weight + self.generators[*j].weight;
                if w > bound {
                    return Err(format!("d of generator {g} has a term of weight {w} > {bound}"));
                }
            }
            if gen.weight == 1 && !gen.differential.is_empty() {
                return Err(format!("stage-one generator {g} has nonzero differential"));
            }
        }
        let last = self.stages.len();
        let d1 = self.differential(last, 1);
        let d2 = self.differential(last, 2);
        if !(&d2 * &d1).is_zero() {
            return Err("d² ≠ 0 on generators".into());
        }
        Ok(())
    }
}

/// `H²(M(stage)) -> H²` together with the basis it is written in.
#[derive(Debug, Clone)]
pub struct TowerH2Map {
    pub h2: CohomologyBasis,
    /// `b2 x dim H²(M(stage))`.
    pub map: Matrix,
}

pub fn tower_h2_map(t: &HirschTower, stage: usize, cup: &CupData) -> Result<TowerH2Map, TowerError> {
    t.check_stage(stage)?;
    let h2 = t.h2(stage);
    let eval = cup.evaluation(t.total_generators(stage));
    let map = &eval * &h2.representative_matrix();
    Ok(TowerH2Map { h2, map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerOptions {
    pub max_stage: usize,
    pub budget: Budget,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            max_stage: 6,
            budget: Budget::default(),
        }
    }
}

fn stage_label(stage: usize, k: usize) -> String {
    if stage == 1 {
        format!("e{k}")
    } else {
        format!("v{stage}_{k}")
    }
}

/// Builds `M(1) ⊂ M(2) ⊂ …` until `V_{i+1} = 0` or `max_stage` is reached.
pub fn build_tower(c: &CupData, options: TowerOptions) -> Result<HirschTower, TowerError> {
    if options.max_stage == 0 {
        return Err(TowerError::NoStages);
    }
    let mut tower = HirschTower {
        generators: (0..c.b1)
            .map(|k| TowerGenerator {
                label: stage_label(1, k),
                weight: 1,
                differential: Vec::new(),
            })
            .collect(),
        stages: std::iter::once(0..c.b1).collect(),
        status: TowerStatus::StageLimit,
        next_kernel_dim: 0,
    };
    options
        .budget
        .check("Λ² of the stage-1 generators", binomial(c.b1, 2))
        .map_err(|source| TowerError::BudgetExceeded {
            source,
            partial: Box::new(tower.clone()),
        })?;

    loop {
        let stage = tower.stage_count();
        let TowerH2Map { h2, map } = tower_h2_map(&tower, stage, c)?;
        let kernel = map.kernel_basis();
        tower.next_kernel_dim = kernel.len();
        if kernel.is_empty() {
            tower.status = TowerStatus::Stabilized;
            return Ok(tower);
        }
        if stage == options.max_stage {
            tower.status = TowerStatus::StageLimit;
            return Ok(tower);
        }
        let total = tower.generators.len();
        let new_total = total + kernel.len();
        if let Err(source) = options.budget.check(
            format!("Λ² of {new_total} generators at stage {}", stage + 1),
            binomial(new_total, 2),
        ) {
            tower.status = TowerStatus::BudgetExceeded;
            return Err(TowerError::BudgetExceeded {
                source,
                partial: Box::new(tower),
            });
        }
        let reps = h2.representative_matrix();
        let pairs = wedge_basis(total, 2);
        for (k, coeffs) in kernel.iter().enumerate() {
            let cocycle = reps.mul_vec(coeffs);
            let differential = pairs
                .iter()
                .zip(cocycle)
                .filter(|(_, q)| !q.is_zero())
                .map(|(p, q)| (p.indices()[0], p.indices()[1], q))
                .collect();
            tower.generators.push(TowerGenerator {
                label: stage_label(stage + 1, k),
                weight: stage + 1,
                differential,
            });
        }
        tower.stages.push(total..new_total);
    }
}

/// The Malcev tower `… -> L_2 -> L_1 -> 0` dual to a Hirsch tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTower {
    pub algebras: Vec<LieAlgebra>,
    /// `projections[i] : L_{i+2} -> L_{i+1}`.
    pub projections: Vec<Matrix>,
}

impl LieTower {
    /// Each projection is onto and its kernel is central.
    pub fn check_central_extensions(&self) -> Result<(), String> {
        for (i, p) in self.projections.iter().enumerate() {
            let upper = &self.algebras[i + 1];
            if p.rank() != p.rows() {
                return Err(format!("projection L{} -> L{} is not onto", i + 2, i + 1));
            }
            let center = upper.center();
            if !center.contains_subspace(&p.kernel()) {
                return Err(format!("kernel of L{} -> L{} is not central", i + 2, i + 1));
            }
        }
        Ok(())
    }
}

/// Dualizes each stage: `[e_a, e_b]` has coefficient `-(coefficient of
/// e_a∧e_b in d g)` on `g`, matching the Chevalley–Eilenberg sign.
pub fn dual_lie_tower(t: &HirschTower) -> Result<LieTower, LieError> {
    let mut algebras = Vec::new();
    let mut projections = Vec::new();
    for stage in 1..=t.stage_count() {
        let n = t.total_generators(stage);
        let bracket = t
            .differential_on_generators(stage)
            .transpose()
            .scale(&crate::rational::int(-1));
        let labels = t.generators[..n].iter().map(|g| g.label.clone()).collect();
        let l = LieAlgebra::from_bracket_matrix_unchecked(labels, bracket)?;
        l.validate()?;
        let class = l.nilpotency_class()?;
        debug_assert!(class <= stage);
        if stage > 1 {
            let prev = t.total_generators(stage - 1);
            let mut p = Matrix::zeros(prev, n);
            for i in 0..prev {
                p[(i, i)] = crate::rational::int(1);
            }
            projections.push(p);
        }
        algebras.push(l);
    }
    Ok(LieTower { algebras, projections })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundtripError {
    #[error("roundtrip mismatch at stage {stage}, degree {degree}")]
    Mismatch { stage: usize, degree: usize },
    #[error("dual tower invalid: {0}")]
    Dual(#[from] LieError),
}

/// The Chevalley–Eilenberg differential of each dual algebra must equal the
/// tower differential of the same stage.
pub fn roundtrip_check(t: &HirschTower) -> Result<(), RoundtripError> {
    let dual = dual_lie_tower(t)?;
    for (s, l) in dual.algebras.iter().enumerate() {
        let stage = s + 1;
        for degree in [1, 2] {
            if degree > l.dim() {
                continue;
            }
            if ce_differential(l, degree) != t.differential(stage, degree) {
                return Err(RoundtripError::Mismatch { stage, degree });
            }
        }
    }
    Ok(())
}
