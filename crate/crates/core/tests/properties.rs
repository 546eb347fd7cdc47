use mmsym_core::catalog::{builtin, parse_exact, to_json};
use mmsym_core::scalar::{int, rat};
use mmsym_core::search::*;
use mmsym_core::symmetry::*;
use mmsym_core::tensor::matmul_form;
use mmsym_core::{flat_index, matmul_tensor, Decomposition, ExactMat, ExactScalar, ExactTriple, Tensor3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_rational() -> impl Strategy<Value = ExactScalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn mat(n: usize) -> impl Strategy<Value = ExactMat> {
    proptest::collection::vec(small_rational(), n * n).prop_map(move |v| ExactMat::from_vec(n, v).unwrap())
}

fn nonzero_mat(n: usize) -> impl Strategy<Value = ExactMat> {
    mat(n).prop_filter("nonzero", |m| !m.is_zero())
}

fn invertible(n: usize) -> impl Strategy<Value = ExactMat> {
    proptest::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| ExactMat::from_vec(n, v.into_iter().map(int).collect()).unwrap())
        .prop_filter("invertible", |m| m.inverse().is_some())
}

fn triple(n: usize) -> impl Strategy<Value = ExactTriple> {
    (nonzero_mat(n), nonzero_mat(n), nonzero_mat(n)).prop_map(|(x, y, z)| ExactTriple { x, y, z })
}

fn element(n: usize) -> impl Strategy<Value = GroupElement> {
    (invertible(n), invertible(n), invertible(n), 0u8..3, any::<bool>())
        .prop_map(|(g, h, k, c, t)| GroupElement::new(g, h, k, c, t).unwrap())
}

fn decomposition(n: usize, max_terms: usize) -> impl Strategy<Value = Decomposition<ExactScalar>> {
    proptest::collection::vec(triple(n), 0..max_terms).prop_map(move |t| Decomposition::new(n, t, "random").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flat_index_is_a_bijection(n in 1usize..6) {
        let mut seen = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                let k = flat_index(i, j, n).unwrap();
                prop_assert_eq!(k, i * n + j);
                prop_assert!(!seen[k]);
                seen[k] = true;
            }
        }
        prop_assert!(flat_index(n, 0, n).is_err());
    }

    #[test]
    fn evaluate_is_additive(a in decomposition(2, 4), b in decomposition(2, 4)) {
        let mut terms = a.terms().to_vec();
        terms.extend_from_slice(b.terms());
        let union = Decomposition::new(2, terms, "union").unwrap();
        prop_assert_eq!(union.evaluate(), a.evaluate().add(&b.evaluate()));
    }

    #[test]
    fn trilinear_form_is_trace(n in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let mut m = || ExactMat::from_fn(n, |_, _| rat(rng.random_range(-5..=5), rng.random_range(1..=4)));
            let (x, y, z) = (m(), m(), m());
            prop_assert_eq!(matmul_form(n, &x, &y, &z), x.mul(&y).mul(&z).trace());
        }
    }

    #[test]
    fn group_law(e1 in element(2), e2 in element(2), t in triple(2)) {
        let lhs = e1.apply(&e2.apply(&t));
        let rhs = e1.compose(&e2).apply(&t);
        prop_assert_eq!(canonical_triple(&lhs), canonical_triple(&rhs));
    }

    #[test]
    fn inverse_undoes(e in element(3), t in triple(3)) {
        let back = e.inverse().apply(&e.apply(&t));
        prop_assert_eq!(canonical_triple(&back), canonical_triple(&t));
    }

    #[test]
    fn elements_preserve_the_tensor(e in element(2)) {
        prop_assert!(e.is_tensor_symmetry());
    }

    #[test]
    fn linear_elements_preserve_the_tensor_n3(g in invertible(3), h in invertible(3), k in invertible(3)) {
        prop_assert!(GroupElement::linear(g, h, k).unwrap().is_tensor_symmetry());
    }

    #[test]
    fn equality_ignores_order_and_admissible_scaling(
        idx in 0usize..7,
        perm_seed in any::<u64>(),
        a in prop::sample::select(vec![1i64, 2, -3, 5]),
        b in prop::sample::select(vec![1i64, -1, 4, 7]),
    ) {
        let name = ["standard3", "z4z3", "lader_z3", "twofix_z3", "addtl1", "addtl2", "addtl3"][idx];
        let d = builtin(name).unwrap();
        let mut terms = d.terms().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        for i in (1..terms.len()).rev() {
            terms.swap(i, rng.random_range(0..=i));
        }
        let t = terms[0].clone();
        terms[0] = ExactTriple { x: t.x.scale(&int(a)), y: t.y.scale(&int(b)), z: t.z.scale(&(rat(1, a) * rat(1, b))) };
        let e = d.with_terms(terms).unwrap();
        prop_assert!(decompositions_equal(&d, &e));
        prop_assert!(decompositions_equal(&e, &d));
    }

    #[test]
    fn graphs_survive_diagonal_conjugation(idx in 0usize..7, d1 in 1i64..4, d2 in 1i64..4, s in any::<bool>()) {
        let name = ["standard3", "z4z3", "lader_z3", "twofix_z3", "addtl1", "addtl2", "addtl3"][idx];
        let d = builtin(name).unwrap();
        let g = ExactMat::from_fn(3, |i, j| if i != j { int(0) } else { [int(1), int(if s { -d1 } else { d1 }), int(d2)][i].clone() });
        let image = GroupElement::conjugation(g).unwrap().apply_decomposition(&d);
        let (a, b) = (incidence_graph(&d), incidence_graph(&image));
        prop_assert!(graphs_isomorphic(&a, &b).unwrap().is_some());
        let (pa, pb) = (pairing_graph(&d), pairing_graph(&image));
        prop_assert_eq!(pa.cube_edge_count(), pb.cube_edge_count());
        prop_assert_eq!(pa.color_count(), pb.color_count());
    }

    #[test]
    fn file_round_trip(d in decomposition(3, 5)) {
        let back = parse_exact(&to_json(&d)).unwrap();
        prop_assert_eq!(back.terms(), d.terms());
    }

    #[test]
    fn build_targets_is_idempotent(seed in any::<u64>(), zeros in 0usize..28, cap in 0.5f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = FactorMatrix::<f64>::random(4, 7, 2.0, &mut rng);
        let once = build_targets(&x, zeros, cap);
        prop_assert_eq!(build_targets(&once, zeros, cap), once.clone());
        prop_assert!(once.count_below(1e-300) >= zeros);
        prop_assert!(once.as_slice().iter().all(|v| v.abs() <= cap));
    }

    #[test]
    fn projection_inverts_assembly(seed in any::<u64>(), p in 0usize..4, q in 0usize..4) {
        prop_assume!(p + q > 0);
        let c = CyclicFactors::<f64>::random(2, p, q, 1.0, seed);
        let back = cyclic_project(&c.assemble(), p, q).unwrap();
        prop_assert!(back.a.max_abs_diff(&c.a) <= 1e-15);
        for (u, v) in back.blocks().iter().zip(c.blocks()) {
            prop_assert!(u.max_abs_diff(v) <= 1e-15);
        }
    }

    #[test]
    fn projection_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FactorMatrices::new(
            2,
            FactorMatrix::random(4, 7, 1.0, &mut rng),
            FactorMatrix::random(4, 7, 1.0, &mut rng),
            FactorMatrix::random(4, 7, 1.0, &mut rng),
        ).unwrap();
        let once = cyclic_project(&f, 1, 2).unwrap().assemble();
        let twice = cyclic_project(&once, 1, 2).unwrap().assemble();
        prop_assert!(once.x.max_abs_diff(&twice.x) <= 1e-15);
        prop_assert!(once.y.max_abs_diff(&twice.y) <= 1e-15);
        prop_assert!(once.z.max_abs_diff(&twice.z) <= 1e-15);
    }

    #[test]
    fn cyclic_objective_is_assembled_objective(seed in any::<u64>(), n in 1usize..4, p in 0usize..4, q in 0usize..4) {
        let c = CyclicFactors::<f64>::random(n, p, q, 1.0, seed);
        let a = objective_cyclic(&c).unwrap();
        let b = objective_full(&c.assemble()).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn factor_file_keeps_bits(bits in proptest::collection::vec(any::<u64>(), 28 * 3)) {
        let vals: Vec<f64> = bits.iter().map(|b| f64::from_bits(*b)).filter(|v| v.is_finite()).collect();
        prop_assume!(vals.len() == bits.len());
        let cols = |k: usize| FactorMatrix::from_columns(4, &vals[k * 28..(k + 1) * 28].chunks(4).map(|c| c.to_vec()).collect::<Vec<_>>());
        let f = FactorMatrices::new(2, cols(0), cols(1), cols(2)).unwrap();
        let (g, _, _) = parse_factors(&to_factor_json(&f, 1, 2)).unwrap();
        let raw = |m: &FactorMatrix<f64>| m.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(raw(&g.x), raw(&f.x));
        prop_assert_eq!(raw(&g.y), raw(&f.y));
        prop_assert_eq!(raw(&g.z), raw(&f.z));
    }
}

fn max_fd_error(c: &CyclicFactors<f64>) -> f64 {
    let g = gradient_cyclic(c).unwrap().to_params();
    let theta = c.to_params();
    let h = 1e-5;
    let f = |t: &[f64]| {
        let mut d = c.clone();
        d.set_params(t);
        objective_cyclic(&d).unwrap().powi(2)
    };
    let mut worst = 0.0f64;
    for i in 0..theta.len() {
        let mut up = theta.clone();
        let mut down = theta.clone();
        up[i] += h;
        down[i] -= h;
        let fd = (f(&up) - f(&down)) / (2.0 * h);
        worst = worst.max((fd - g[i]).abs() / g[i].abs().max(1.0));
    }
    worst
}

#[test]
fn gradient_matches_central_differences() {
    for (n, p, q) in [(2, 1, 2), (3, 11, 4)] {
        for seed in 0..10 {
            let c = CyclicFactors::<f64>::random(n, p, q, 1.0, seed);
            let err = max_fd_error(&c);
            assert!(err <= 1e-5, "(n,P,Q)=({n},{p},{q}) seed {seed}: {err:e}");
        }
    }
}

#[test]
fn als_without_ridge_never_increases_the_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..20 {
        let m = 4;
        let data: Vec<f64> = (0..m * m * m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let t = Tensor3::from_vec(m, data).unwrap();
        let mut f = FactorMatrices::new(
            2,
            FactorMatrix::random(m, 5, 1.0, &mut rng),
            FactorMatrix::random(m, 5, 1.0, &mut rng),
            FactorMatrix::random(m, 5, 1.0, &mut rng),
        )
        .unwrap();
        let obj = |f: &FactorMatrices<f64>| t.sub(&model_tensor(f)).norm_sq();
        for slot in Slot::ALL {
            let before = obj(&f);
            let upd = als_update(&t, &f, slot, 0.0, &FactorMatrix::zeros(m, 5)).unwrap();
            *f.slot_mut(slot) = upd;
            let after = obj(&f);
            assert!(after <= before + 1e-10, "trial {trial} {slot:?}: {before} -> {after}");
        }
    }
}

#[test]
fn averaging_projectors_are_idempotent_in_float_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let data: Vec<f64> = (0..729).map(|_| rng.random_range(-1.0..1.0)).collect();
    let t = Tensor3::from_vec(9, data).unwrap();
    let once = mmsym_core::invariants::cyclic_average(&t);
    let twice = mmsym_core::invariants::cyclic_average(&once);
    assert!(twice.sub(&once).norm_sq().sqrt() < 1e-12);
    assert_eq!(mmsym_core::invariants::cyclic_average(&matmul_tensor::<f64>(3)), matmul_tensor::<f64>(3));
}
