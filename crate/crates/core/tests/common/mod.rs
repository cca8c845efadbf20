#![allow(dead_code)]

use std::path::PathBuf;

use nilcohom::extension::{associated_lie_algebra, ExtensionDatum};
use nilcohom::exterior::binomial;
use nilcohom::lie::catalog;
use nilcohom::rational::{frac, int};
use nilcohom::transfer::FiniteGroupAction;
use nilcohom::{LieAlgebra, Matrix, Rational};
use rand::Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != int(0) {
            return q;
        }
    }
}

/// Random class with about `density` of the allowed pairs nonzero. A
/// Hodge-typed datum only gets (1,1) pairs `i < g <= j`.
pub fn random_extension<R: Rng>(rng: &mut R, max_rank: usize, hodge_typed: bool, density: f64) -> ExtensionDatum {
    let rank = if hodge_typed {
        2 * rng.gen_range(1..=max_rank / 2)
    } else {
        rng.gen_range(1..=max_rank)
    };
    let g = rank / 2;
    let mut entries = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            let allowed = !hodge_typed || (i < g && j >= g);
            if allowed && rng.gen_bool(density) {
                entries.push((i, j, nonzero_rational(rng)));
            }
        }
    }
    ExtensionDatum::new(rank, hodge_typed, &entries).expect("generated datum is well formed")
}

/// Unit lower triangular times unit upper triangular: always invertible.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.4) {
                lower[(i, j)] = small_rational(rng);
            }
            if rng.gen_bool(0.4) {
                upper[(j, i)] = small_rational(rng);
            }
        }
    }
    &lower * &upper
}

/// Structure constants with random entries and no Jacobi guarantee.
pub fn random_antisymmetric<R: Rng>(rng: &mut R, n: usize, density: f64) -> LieAlgebra {
    let mut bracket = Matrix::zeros(n, binomial(n, 2));
    for r in 0..n {
        for c in 0..binomial(n, 2) {
            if rng.gen_bool(density) {
                bracket[(r, c)] = small_rational(rng);
            }
        }
    }
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    LieAlgebra::from_bracket_matrix_unchecked(labels, bracket).expect("shape matches")
}

/// Nilpotent algebras whose structure is known by construction.
pub fn golden_nilpotent() -> Vec<(String, LieAlgebra)> {
    let mut out = vec![
        ("h3".to_string(), catalog::heisenberg()),
        ("complex heisenberg".to_string(), catalog::complex_heisenberg()),
        ("abelian 1".to_string(), LieAlgebra::abelian(1)),
        ("abelian 4".to_string(), LieAlgebra::abelian(4)),
        ("free two-step 3".to_string(), catalog::free_two_step(3)),
        (
            "h3 + abelian 2".to_string(),
            catalog::heisenberg().direct_sum(&LieAlgebra::abelian(2)),
        ),
        (
            "h3 + h3".to_string(),
            catalog::heisenberg().direct_sum(&catalog::heisenberg()),
        ),
    ];
    for n in 3..=7 {
        out.push((format!("filiform {n}"), catalog::filiform(n)));
    }
    out
}

/// A golden algebra, an algebra attached to a random extension, or a sum of
/// both, written in a random basis.
pub fn random_nilpotent<R: Rng>(rng: &mut R, max_dim: usize) -> LieAlgebra {
    let golden = golden_nilpotent();
    loop {
        let base = match rng.gen_range(0..3) {
            0 => golden[rng.gen_range(0..golden.len())].1.clone(),
            1 => associated_lie_algebra(&random_extension(rng, max_dim - 1, false, 0.4)),
            _ => {
                let a = &golden[rng.gen_range(0..golden.len())].1;
                let e = random_extension(rng, 3, false, 0.5);
                a.direct_sum(&associated_lie_algebra(&e))
            }
        };
        if base.dim() <= max_dim {
            let p = random_invertible(rng, base.dim());
            return base.change_basis(&p).expect("invertible change of basis");
        }
    }
}

/// Jacobi identity evaluated directly on basis triples.
pub fn jacobi_holds(l: &LieAlgebra) -> bool {
    let n = l.dim();
    let e = Matrix::identity(n).columns();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = l.bracket(&e[i], &l.bracket(&e[j], &e[k]));
                let b = l.bracket(&e[j], &l.bracket(&e[k], &e[i]));
                let c = l.bracket(&e[k], &l.bracket(&e[i], &e[j]));
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| x + y + z != int(0)) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Rational> {
    (0..binomial(n, k))
        .map(|_| if rng.gen_bool(0.5) { small_rational(rng) } else { int(0) })
        .collect()
}

pub fn close_under_products(gens: &[Matrix]) -> Vec<Matrix> {
    let n = gens[0].rows();
    let mut group = vec![Matrix::identity(n)];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in gens {
                let p = g * h;
                if !group.contains(&p) {
                    group.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    group
}

pub fn diag(signs: &[i64]) -> Matrix {
    let mut m = Matrix::identity(signs.len());
    for (i, s) in signs.iter().enumerate() {
        m[(i, i)] = int(*s);
    }
    m
}

/// A random extension algebra with a group of sign automorphisms, written
/// in a random basis so the matrices are not diagonal.
pub fn random_action<R: Rng>(rng: &mut R) -> FiniteGroupAction {
    let e = random_extension(rng, 4, false, 0.5);
    let l: LieAlgebra = associated_lie_algebra(&e);
    let r = e.rank();
    let mut gens = Vec::new();
    // a ↦ -a, z ↦ z always respects the brackets
    gens.push(diag(&(0..r).map(|_| -1).chain([1]).collect::<Vec<_>>()));
    for _ in 0..3 {
        let eps: Vec<i64> = (0..r).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let entries = e.class_entries();
        let ez = entries.first().map_or(1, |(i, j, _)| eps[*i] * eps[*j]);
        if entries.iter().all(|(i, j, _)| eps[*i] * eps[*j] == ez) {
            gens.push(diag(&eps.iter().copied().chain([ez]).collect::<Vec<_>>()));
        }
    }
    let group = close_under_products(&gens);
    let p = random_invertible(rng, l.dim());
    let pinv = p.inverse().unwrap();
    let moved = l.change_basis(&p).unwrap();
    let elements = group.iter().map(|g| &(&pinv * g) * &p).collect();
    FiniteGroupAction::new(moved, elements).expect("conjugated sign automorphisms")
}
