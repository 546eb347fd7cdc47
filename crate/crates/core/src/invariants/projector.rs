//! Group-averaging projectors on A⊗A⊗A and their exact ranks.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cancel::CancelToken;
use crate::linalg::SparseEchelon;
use crate::mat::Mat;
use crate::scalar::{int, Scalar};
use crate::symmetry::{cyclic_generator, generate_group, GroupElement};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("element list is not closed under composition")]
    NotClosed,
    #[error("element list is empty")]
    Empty,
    #[error("tensor side {found} does not match n² = {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cancelled")]
    Cancelled,
}

/// (T + shift T + shift² T) / 3.
pub fn cyclic_average<S: Scalar>(t: &Tensor3<S>) -> Tensor3<S> {
    let s1 = t.shift();
    let s2 = s1.shift();
    t.add(&s1).add(&s2).scale(&(S::one() / S::from_i64(3)))
}

/// Columns: image of each slot basis matrix E_a under a linear map.
type SlotMap = Vec<Vec<(usize, BigRational)>>;

fn slot_map(n: usize, f: impl Fn(&Mat<BigRational>) -> Mat<BigRational>) -> SlotMap {
    (0..n * n)
        .map(|a| {
            let img = f(&Mat::unit(n, a / n, a % n));
            img.as_slice()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect()
        })
        .collect()
}

/// The linear action of one element on basis tensors e_a⊗e_b⊗e_c.
pub struct TensorAction {
    n: usize,
    cyclic: u8,
    transpose: bool,
    maps: [SlotMap; 3],
}

pub fn tensor_action(e: &GroupElement) -> TensorAction {
    let n = e.n();
    let (gi, hi, ki) = (
        e.g().inverse().expect("invertible"),
        e.h().inverse().expect("invertible"),
        e.k().inverse().expect("invertible"),
    );
    TensorAction {
        n,
        cyclic: e.cyclic(),
        transpose: e.transpose(),
        maps: [
            slot_map(n, |x| e.g().mul(x).mul(&hi)),
            slot_map(n, |y| e.h().mul(y).mul(&ki)),
            slot_map(n, |z| e.k().mul(z).mul(&gi)),
        ],
    }
}

impl TensorAction {
    fn tr(&self, a: usize) -> usize {
        (a % self.n) * self.n + a / self.n
    }

    /// Adds `coeff · e(e_a⊗e_b⊗e_c)` into `out` (keys are flat offsets).
    pub fn apply_basis(&self, (a, b, c): (usize, usize, usize), coeff: &BigRational, out: &mut BTreeMap<usize, BigRational>) {
        let (mut x, mut y, mut z) = (a, b, c);
        if self.transpose {
            (x, y, z) = (self.tr(x), self.tr(z), self.tr(y));
        }
        for _ in 0..self.cyclic {
            (x, y, z) = (z, x, y);
        }
        let m = self.n * self.n;
        for (i, vi) in &self.maps[0][x] {
            for (j, vj) in &self.maps[1][y] {
                let vij = vi * vj;
                for (k, vk) in &self.maps[2][z] {
                    let e = out.entry((i * m + j) * m + k).or_insert_with(BigRational::zero);
                    *e += &vij * vk * coeff;
                }
            }
        }
    }

    pub fn apply(&self, t: &Tensor3<BigRational>) -> Tensor3<BigRational> {
        let m = t.m();
        let mut acc = BTreeMap::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = t.get(a, b, c);
                    if !v.is_zero() {
                        self.apply_basis((a, b, c), v, &mut acc);
                    }
                }
            }
        }
        let mut out = Tensor3::zeros(m);
        for (o, v) in acc {
            out.set(o / (m * m), (o / m) % m, o % m, v);
        }
        out
    }
}

fn check_closed(elements: &[GroupElement]) -> Result<(), InvariantError> {
    if elements.is_empty() {
        return Err(InvariantError::Empty);
    }
    let keys: HashSet<GroupElement> = elements.iter().map(GroupElement::canonical).collect();
    for a in elements {
        for b in elements {
            if !keys.contains(&a.compose(b).canonical()) {
                return Err(InvariantError::NotClosed);
            }
        }
    }
    Ok(())
}

/// Mean of the translates of `t` over a finite group given as a list.
pub fn group_average(t: &Tensor3<BigRational>, elements: &[GroupElement]) -> Result<Tensor3<BigRational>, InvariantError> {
    check_closed(elements)?;
    let n = elements[0].n();
    if t.m() != n * n {
        return Err(InvariantError::DimensionMismatch { expected: n * n, found: t.m() });
    }
    let mut acc = Tensor3::zeros(t.m());
    for e in elements {
        acc = acc.add(&tensor_action(e).apply(t));
    }
    Ok(acc.scale(&(BigRational::from_integer(1.into()) / int(elements.len() as i64))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectorRank {
    pub rank: usize,
    /// trace(P); equals the rank for an idempotent P.
    pub trace: u64,
}

/// Exact rank of the averaging projector over `elements`, from its columns
/// P(e_b) by incremental sparse row reduction.
pub fn projector_rank(elements: &[GroupElement], cancel: &CancelToken) -> Result<ProjectorRank, InvariantError> {
    check_closed(elements)?;
    let n = elements[0].n();
    let m = n * n;
    let actions: Vec<TensorAction> = elements.iter().map(tensor_action).collect();
    let weight = BigRational::from_integer(1.into()) / int(elements.len() as i64);
    let mut echelon = SparseEchelon::new();
    let mut seen: HashSet<Vec<(usize, BigRational)>> = HashSet::new();
    let mut trace = BigRational::zero();
    for b in 0..m * m * m {
        if cancel.is_cancelled() {
            return Err(InvariantError::Cancelled);
        }
        let basis = (b / (m * m), (b / m) % m, b % m);
        let mut col = BTreeMap::new();
        for act in &actions {
            act.apply_basis(basis, &weight, &mut col);
        }
        col.retain(|_, v: &mut BigRational| !v.is_zero());
        if let Some(v) = col.get(&b) {
            trace += v;
        }
        if col.is_empty() {
            continue;
        }
        // columns that agree up to scale add nothing
        let lead = col.values().next().cloned().expect("nonempty");
        let key: Vec<(usize, BigRational)> = col.iter().map(|(&k, v)| (k, v / &lead)).collect();
        if !seen.insert(key) {
            continue;
        }
        echelon.insert_rational(&col);
    }
    Ok(ProjectorRank {
        rank: echelon.rank(),
        trace: trace.to_integer().try_into().unwrap_or(u64::MAX),
    })
}

/// Conjugation group generated by x ↦ g x g⁻¹.
pub fn conjugation_group(g: Mat<BigRational>) -> Vec<GroupElement> {
    let e = GroupElement::conjugation(g).expect("invertible generator");
    generate_group(&[e], 10_000).expect("finite order")
}

/// {id, π, π²} acting on n×n matrices (dim A = n²).
pub fn z3_group(n: usize) -> Vec<GroupElement> {
    generate_group(&[GroupElement::pi(n)], 3).expect("order 3")
}

/// Z_{n+1} acting by conjugation with the order-(n+1) companion matrix.
pub fn znp1_group(n: usize) -> Vec<GroupElement> {
    conjugation_group(cyclic_generator(n))
}

/// Z_{n+1}×Z₃: conjugation and the cyclic shift.
pub fn znp1_z3_group(n: usize) -> Vec<GroupElement> {
    let c = GroupElement::conjugation(cyclic_generator(n)).expect("invertible");
    generate_group(&[c, GroupElement::pi(n)], 10_000).expect("finite order")
}
