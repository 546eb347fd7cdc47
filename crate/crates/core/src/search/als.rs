//! One regularized least-squares update of a single factor.

use super::factors::{FactorMatrices, FactorMatrix, Slot};
use super::SearchError;
use crate::linalg::solve_dense;
use crate::scalar::Real;
use crate::tensor::Tensor3;

/// Exact minimizer over the chosen factor of
/// ‖T − Σ x_r⊗y_r⊗z_r‖² + λ‖F − F̃‖², all other factors fixed.
pub fn als_update<F: Real>(
    t: &Tensor3<F>,
    f: &FactorMatrices<F>,
    slot: Slot,
    lambda: F,
    target: &FactorMatrix<F>,
) -> Result<FactorMatrix<F>, SearchError> {
    let m = f.n * f.n;
    let r = f.rank();
    if t.m() != m {
        return Err(SearchError::Shape(format!("tensor side {} but factors have {} rows", t.m(), m)));
    }
    if target.rows() != m || target.cols() != r {
        return Err(SearchError::Shape("target shape differs from factor".into()));
    }
    if lambda < F::zero() {
        return Err(SearchError::InvalidParameter("lambda must be >= 0".into()));
    }
    let (u, v) = match slot {
        Slot::X => (&f.y, &f.z),
        Slot::Y => (&f.x, &f.z),
        Slot::Z => (&f.x, &f.y),
    };
    let (gu, gv) = (u.gram(), v.gram());
    let mut h: Vec<F> = gu.iter().zip(&gv).map(|(a, b)| *a * *b).collect();
    for i in 0..r {
        h[i * r + i] = h[i * r + i] + lambda;
    }
    // rhs row a: Σ T_(slot)[a, ·] (u ⊙ v) + λ F̃[a, ·]
    let mut rhs = vec![vec![F::zero(); r]; m];
    for i0 in 0..m {
        for i1 in 0..m {
            for i2 in 0..m {
                let val = *t.get(i0, i1, i2);
                if val == F::zero() {
                    continue;
                }
                let (a, b, c) = match slot {
                    Slot::X => (i0, i1, i2),
                    Slot::Y => (i1, i0, i2),
                    Slot::Z => (i2, i0, i1),
                };
                let row = &mut rhs[a];
                for j in 0..r {
                    row[j] = row[j] + val * u.get(b, j) * v.get(c, j);
                }
            }
        }
    }
    for (a, row) in rhs.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = *x + lambda * target.get(a, j);
        }
    }
    let sol = solve_dense(&h, r, &rhs).ok_or(SearchError::SingularGram(slot))?;
    Ok(FactorMatrix::from_rows(&sol).expect("rectangular"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::objective::objective_full_sq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_factors(n: usize, r: usize, seed: u64) -> FactorMatrices<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = n * n;
        FactorMatrices::new(
            n,
            FactorMatrix::random(m, r, 1.0, &mut rng),
            FactorMatrix::random(m, r, 1.0, &mut rng),
            FactorMatrix::random(m, r, 1.0, &mut rng),
        )
        .unwrap()
    }

    #[test]
    fn recovers_rank_one() {
        let truth = random_factors(2, 1, 3);
        let t = crate::search::model_tensor(&truth);
        let mut f = truth.clone();
        f.x = FactorMatrix::zeros(4, 1);
        let x = als_update(&t, &f, Slot::X, 0.0, &FactorMatrix::zeros(4, 1)).unwrap();
        assert!(x.max_abs_diff(&truth.x) < 1e-12);
    }

    #[test]
    fn large_lambda_returns_target() {
        let f = random_factors(2, 7, 5);
        let t = crate::tensor::matmul_tensor::<f64>(2);
        let target = random_factors(2, 7, 6).y;
        let y = als_update(&t, &f, Slot::Y, 1e8, &target).unwrap();
        assert!(y.max_abs_diff(&target) < 1e-4);
    }

    #[test]
    fn lambda_zero_does_not_increase() {
        for seed in 0..20 {
            let mut f = random_factors(2, 7, seed);
            let t = crate::tensor::matmul_tensor::<f64>(2);
            for slot in Slot::ALL {
                let before = objective_full_sq(&f).unwrap();
                let upd = als_update(&t, &f, slot, 0.0, &FactorMatrix::zeros(4, 7)).unwrap();
                *f.slot_mut(slot) = upd;
                let after = objective_full_sq(&f).unwrap();
                assert!(after <= before + 1e-10, "seed {seed}: {before} -> {after}");
            }
        }
    }

    #[test]
    fn singular_at_lambda_zero_is_reported() {
        let mut f = random_factors(2, 2, 1);
        let c = f.y.col(0).to_vec();
        f.y.col_mut(1).copy_from_slice(&c);
        let c = f.z.col(0).to_vec();
        f.z.col_mut(1).copy_from_slice(&c);
        let t = crate::tensor::matmul_tensor::<f64>(2);
        let err = als_update(&t, &f, Slot::X, 0.0, &FactorMatrix::zeros(4, 2)).unwrap_err();
        assert!(err.to_string().contains("lambda > 0"));
        assert!(als_update(&t, &f, Slot::X, 0.1, &FactorMatrix::zeros(4, 2)).is_ok());
    }
}
