//! Least-squares objective and its analytic gradient.

use super::factors::{lit, CyclicFactors, FactorMatrices, FactorMatrix};
use super::SearchError;
use crate::scalar::Real;
use crate::tensor::{matmul_tensor, Tensor3};

/// Σ_r x_r ⊗ y_r ⊗ z_r.
pub fn model_tensor<F: Real>(f: &FactorMatrices<F>) -> Tensor3<F> {
    let m = f.n * f.n;
    let mut t = Tensor3::zeros(m);
    for j in 0..f.rank() {
        t.add_outer(f.x.col(j), f.y.col(j), f.z.col(j));
    }
    t
}

fn check<F: Real>(f: &FactorMatrices<F>) -> Result<(), SearchError> {
    if f.x.is_finite() && f.y.is_finite() && f.z.is_finite() {
        Ok(())
    } else {
        Err(SearchError::NonFinite)
    }
}

/// ‖M⟨n⟩ − Σ x_r⊗y_r⊗z_r‖².
pub fn objective_full_sq<F: Real>(f: &FactorMatrices<F>) -> Result<F, SearchError> {
    check(f)?;
    Ok(matmul_tensor::<F>(f.n).sub(&model_tensor(f)).norm_sq())
}

/// ‖M⟨n⟩ − Σ x_r⊗y_r⊗z_r‖ (Frobenius).
pub fn objective_full<F: Real>(f: &FactorMatrices<F>) -> Result<F, SearchError> {
    objective_full_sq(f).map(|v| v.sqrt())
}

/// The objective of the assembled factors.
pub fn objective_cyclic<F: Real>(f: &CyclicFactors<F>) -> Result<F, SearchError> {
    objective_full(&f.assemble())
}

/// Gradients of the squared objective with respect to X, Y and Z.
pub fn gradient_full<F: Real>(f: &FactorMatrices<F>) -> Result<[FactorMatrix<F>; 3], SearchError> {
    check(f)?;
    let m = f.n * f.n;
    let e = matmul_tensor::<F>(f.n).sub(&model_tensor(f));
    let r = f.rank();
    let mut gx = FactorMatrix::zeros(m, r);
    let mut gy = FactorMatrix::zeros(m, r);
    let mut gz = FactorMatrix::zeros(m, r);
    let two = lit::<F>(-2.0);
    for j in 0..r {
        let (x, y, z) = (f.x.col(j), f.y.col(j), f.z.col(j));
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = *e.get(a, b, c);
                    if v == F::zero() {
                        continue;
                    }
                    let (xa, yb, zc) = (x[a], y[b], z[c]);
                    gx.set(a, j, gx.get(a, j) + v * yb * zc);
                    gy.set(b, j, gy.get(b, j) + v * xa * zc);
                    gz.set(c, j, gz.get(c, j) + v * xa * yb);
                }
            }
        }
    }
    for g in [&mut gx, &mut gy, &mut gz] {
        for v in g.as_mut_slice() {
            *v = *v * two;
        }
    }
    Ok([gx, gy, gz])
}

/// Gradient of the squared cyclic objective: each block collects the
/// gradients of its three copies.
pub fn gradient_cyclic<F: Real>(f: &CyclicFactors<F>) -> Result<CyclicFactors<F>, SearchError> {
    let (p, q) = (f.p(), f.q());
    let [gx, gy, gz] = gradient_full(&f.assemble())?;
    let blk = |g: &FactorMatrix<F>, i: usize| if i == 0 { g.block(0, p) } else { g.block(p + (i - 1) * q, q) };
    let sum = |u: FactorMatrix<F>, v: FactorMatrix<F>, w: FactorMatrix<F>| {
        let mut out = u.clone();
        for (k, o) in out.as_mut_slice().iter_mut().enumerate() {
            *o = u.as_slice()[k] + v.as_slice()[k] + w.as_slice()[k];
        }
        out
    };
    Ok(CyclicFactors {
        n: f.n,
        a: sum(blk(&gx, 0), blk(&gy, 0), blk(&gz, 0)),
        b: sum(blk(&gx, 1), blk(&gy, 2), blk(&gz, 3)),
        c: sum(blk(&gx, 2), blk(&gy, 3), blk(&gz, 1)),
        d: sum(blk(&gx, 3), blk(&gy, 1), blk(&gz, 2)),
    })
}
