mod common;

use common::*;
use nilcohom::cohomology::{betti_numbers, differential_squares_to_zero, euler_characteristic, one_formality};
use nilcohom::extension::{
    cup_with_class, gysin_dims, gysin_mhs, h2ab_to_h2_surjectivity, nomizu_crosscheck, purity_check_h2, ExtensionDatum,
};
use nilcohom::exterior::{binomial, ExteriorAlgebra};
use nilcohom::minimal_model::{build_tower, dual_lie_tower, roundtrip_check, CupData, TowerOptions};
use nilcohom::rational::int;
use nilcohom::transfer::{averaging_projector, invariant_dims, is_idempotent, FiniteGroupAction};
use nilcohom::{Matrix, Rational};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c)
            .prop_map(move |v| Matrix::from_row_major(r, c, v.into_iter().map(int).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix_strategy(6, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(|q| *q == int(0)));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(5, 6)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn wedge_graded_commutative_and_associative(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let ext = ExteriorAlgebra::new(n);
        let (p, q, r) = (rng.gen_range(0..=n), rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = random_form(&mut rng, n, p);
        let b = random_form(&mut rng, n, q);
        let c = random_form(&mut rng, n, r);
        let ab = ext.wedge(p, &a, q, &b);
        let ba = ext.wedge(q, &b, p, &a);
        let sign = if (p * q) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert!(ab.iter().zip(&ba).all(|(x, y)| *x == y * &sign));
        prop_assert_eq!(
            ext.wedge(p + q, &ab, r, &c),
            ext.wedge(p, &a, q + r, &ext.wedge(q, &b, r, &c))
        );
    }

    #[test]
    fn d_squared_zero_iff_jacobi(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = if rng.gen_bool(0.5) {
            let n = rng.gen_range(3..=5);
            random_antisymmetric(&mut rng, n, 0.3)
        } else {
            random_nilpotent(&mut rng, 6)
        };
        let jacobi = jacobi_holds(&l);
        prop_assert_eq!(differential_squares_to_zero(&l), jacobi);
        prop_assert_eq!(l.validate().is_ok(), jacobi);
    }

    #[test]
    fn nilpotent_poincare_duality_and_euler(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = random_nilpotent(&mut rng, 7);
        prop_assert!(l.is_nilpotent());
        let b = betti_numbers(&l);
        let n = l.dim();
        for k in 0..=n {
            prop_assert_eq!(b[k], b[n - k]);
        }
        prop_assert_eq!(euler_characteristic(&l), 0);
        prop_assert_eq!(b[1], n - l.derived_subalgebra().dim());
    }

    #[test]
    fn betti_invariant_under_basis_change_and_negation(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let golden = golden_nilpotent();
        let (_, l) = &golden[rng.gen_range(0..golden.len())];
        let p = random_invertible(&mut rng, l.dim());
        let moved = l.change_basis(&p).unwrap();
        prop_assert_eq!(betti_numbers(&moved), betti_numbers(l));
        prop_assert_eq!(betti_numbers(&l.negated()), betti_numbers(l));
        let f = one_formality(l).unwrap();
        let g = one_formality(&moved).unwrap();
        prop_assert_eq!(f, g);
    }
}

fn random_cup(rng: &mut ChaCha8Rng) -> CupData {
    let b1 = rng.gen_range(1..=3);
    let b2 = rng.gen_range(0..=3);
    let pairs = binomial(b1, 2);
    let cols: Vec<Vec<Rational>> = (0..pairs)
        .map(|_| (0..b2).map(|_| small_rational(rng)).collect())
        .collect();
    let cup = if b2 == 0 {
        Matrix::zeros(0, pairs)
    } else {
        Matrix::from_columns(b2, &cols).unwrap()
    };
    CupData::new(b1, b2, cup, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn towers_are_consistent(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cup = random_cup(&mut rng);
        let t = build_tower(&cup, TowerOptions { max_stage: 3, ..TowerOptions::default() }).unwrap();
        prop_assert_eq!(t.check_invariants(), Ok(()));
        prop_assert!(roundtrip_check(&t).is_ok());
        let lt = dual_lie_tower(&t).unwrap();
        prop_assert_eq!(lt.check_central_extensions(), Ok(()));
        prop_assert_eq!(t.new_generators(1), cup.b1());
        // stage 2 adds the kernel of the cup product
        if t.stage_count() >= 2 {
            prop_assert_eq!(t.new_generators(2), binomial(cup.b1(), 2) - cup.cup().rank());
        } else {
            prop_assert!(t.is_stabilized());
            prop_assert!(cup.is_injective());
        }
        for l in &lt.algebras {
            prop_assert!(l.is_nilpotent());
        }
    }
}

fn kernel_dim_on_h1(e: &ExtensionDatum) -> usize {
    let m = cup_with_class(e, 1);
    m.cols() - m.rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gysin_identities(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let e = random_extension(&mut rng, 6, false, 0.4);
        let dims = gysin_dims(&e);
        let r = e.rank();
        prop_assert_eq!(dims.len(), r + 2);
        for k in 0..dims.len() {
            prop_assert_eq!(dims[k], dims[r + 1 - k]);
        }
        let euler: i64 = dims.iter().enumerate().map(|(k, d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
        prop_assert_eq!(euler, 0);
        prop_assert_eq!(dims[1], r + usize::from(e.class().iter().all(|q| *q == int(0))));
        let s = h2ab_to_h2_surjectivity(&e);
        prop_assert_eq!(s.surjective, kernel_dim_on_h1(&e) == 0);
        prop_assert_eq!(s.h2, dims[2]);
        prop_assert!(nomizu_crosscheck(&e).is_ok());
    }

    #[test]
    fn hodge_pieces_sum_and_purity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let e = random_extension(&mut rng, 6, true, 0.5);
        let dims = gysin_dims(&e);
        for (k, d) in dims.iter().enumerate() {
            let h = gysin_mhs(&e, k).unwrap();
            prop_assert_eq!(h.total_dim(), *d);
            for piece in &h.pieces {
                let hodge = piece.hodge_numbers.as_ref().unwrap();
                prop_assert_eq!(hodge.values().sum::<usize>(), piece.dim);
                prop_assert!(hodge.keys().all(|(p, q)| p + q == piece.weight));
            }
        }
        prop_assert_eq!(purity_check_h2(&e).unwrap(), kernel_dim_on_h1(&e) == 0);
    }

    #[test]
    fn hodge_symmetry_for_conjugation_stable_class(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = rng.gen_range(1..=3);
        // cl = Σ c_ab z_a ∧ z̄_b with c symmetric
        let mut entries = Vec::new();
        for a in 0..g {
            for b in a..g {
                if rng.gen_bool(0.6) {
                    let c = nonzero_rational(&mut rng);
                    entries.push((a, g + b, c.clone()));
                    if a != b {
                        entries.push((b, g + a, c));
                    }
                }
            }
        }
        let e = ExtensionDatum::new(2 * g, true, &entries).unwrap();
        prop_assert!(e.is_conjugation_stable());
        for k in 0..=2 * g + 1 {
            for piece in gysin_mhs(&e, k).unwrap().pieces {
                let v = piece.hodge_vector().unwrap();
                let mut rev = v.clone();
                rev.reverse();
                prop_assert_eq!(v, rev);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transfer_properties(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_action(&mut rng);
        let inv = invariant_dims(&a);
        let betti = betti_numbers(a.target());
        prop_assert_eq!(inv[0], 1);
        for (i, b) in inv.iter().zip(&betti) {
            prop_assert!(i <= b);
        }
        for k in 0..=a.target().dim() {
            prop_assert!(is_idempotent(&averaging_projector(&a, k)));
        }
        let mut shuffled = a.elements().to_vec();
        shuffled.shuffle(&mut rng);
        let b = FiniteGroupAction::new(a.target().clone(), shuffled).unwrap();
        prop_assert_eq!(invariant_dims(&b), inv);
        let trivial = FiniteGroupAction::trivial(a.target().clone());
        prop_assert_eq!(invariant_dims(&trivial), betti);
    }
}
