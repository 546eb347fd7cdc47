//! Squared norms of the projections of M⟨3⟩ onto the invariant summands.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::dims::SummandKind;
use super::gaussian::GaussQ;
use crate::scalar::int;
use crate::tensor::matmul_tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    pub kind: SummandKind,
    pub labels: [u64; 3],
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.labels;
        let p = if self.kind == SummandKind::Sym { "S" } else { "Λ" };
        match (a == b, b == c) {
            (true, true) => write!(f, "{p}³A{a}"),
            (true, false) => write!(f, "{p}²A{a}⊗A{c}"),
            (false, true) => write!(f, "A{a}⊗{p}²A{b}"),
            (false, false) => write!(f, "A{a}⊗A{b}⊗A{c} ({})", if self.kind == SummandKind::Sym { "sym" } else { "alt" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentNorms {
    /// Squared norm per invariant summand (label sum ≡ 0 mod 4).
    pub components: BTreeMap<ComponentLabel, BigRational>,
    /// Squared norm of everything outside the listed summands.
    pub outside: BigRational,
    /// ‖M⟨3⟩‖².
    pub total: BigRational,
}

const PERMS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

/// Uses the orthogonal order-4 generator [[0,−1,0],[1,0,0],[0,0,−1]]
/// (conjugate to a₀ and with the same characteristic polynomial) so that
/// the isotypic blocks are mutually orthogonal. Its eigenvectors
/// e₁ − i e₂, e₃, e₁ + i e₂ have eigenvalues i, −1, −i.
pub fn m3_component_norms() -> ComponentNorms {
    let (o, l) = (GaussQ::real(int(1)), GaussQ::zero());
    let i = GaussQ::i();
    let v: [([GaussQ; 3], u64); 3] = [
        ([o.clone(), -&i, l.clone()], 1),
        ([l.clone(), l.clone(), o.clone()], 2),
        ([o.clone(), i.clone(), l.clone()], 3),
    ];
    let vnorm = |a: usize| v[a].0.iter().fold(BigRational::zero(), |acc, x| acc + x.norm_sq());

    // w_p = v_a v_b^*, p = 3a + b
    let mut w: Vec<Vec<GaussQ>> = Vec::new();
    let mut norm: Vec<BigRational> = Vec::new();
    let mut label: Vec<u64> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let mut m = Vec::with_capacity(9);
            for r in 0..3 {
                for c in 0..3 {
                    m.push(&v[a].0[r] * &v[b].0[c].conj());
                }
            }
            w.push(m);
            norm.push(vnorm(a) * vnorm(b));
            label.push((4 + v[a].1 - v[b].1) % 4);
        }
    }

    let t = matmul_tensor::<BigRational>(3);
    let mut coeff = vec![GaussQ::zero(); 729];
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                if t.get(a, b, c).is_zero() {
                    continue;
                }
                for p in 0..9 {
                    let wp = w[p][a].conj();
                    for q in 0..9 {
                        let wpq = &wp * &w[q][b].conj();
                        for r in 0..9 {
                            let idx = (p * 9 + q) * 9 + r;
                            coeff[idx] = &coeff[idx] + &(&wpq * &w[r][c].conj());
                        }
                    }
                }
            }
        }
    }
    for p in 0..9 {
        for q in 0..9 {
            for r in 0..9 {
                let idx = (p * 9 + q) * 9 + r;
                let s = BigRational::from_integer(1.into()) / (&norm[p] * &norm[q] * &norm[r]);
                coeff[idx] = coeff[idx].scale(&s);
            }
        }
    }

    let mut components: BTreeMap<ComponentLabel, BigRational> = BTreeMap::new();
    let mut outside = BigRational::zero();
    let mut total = BigRational::zero();
    for p in 0..9 {
        for q in 0..9 {
            for r in 0..9 {
                let idx = [p, q, r];
                let weight = &norm[p] * &norm[q] * &norm[r];
                total += coeff[(p * 9 + q) * 9 + r].norm_sq() * &weight;
                let mut labels = [label[p], label[q], label[r]];
                labels.sort_unstable();
                for kind in [SummandKind::Sym, SummandKind::Alt] {
                    let mut acc = GaussQ::zero();
                    for (perm, sign) in PERMS {
                        let j = (idx[perm[0]] * 9 + idx[perm[1]]) * 9 + idx[perm[2]];
                        let term = if kind == SummandKind::Alt && sign < 0 { -&coeff[j] } else { coeff[j].clone() };
                        acc = &acc + &term;
                    }
                    let part = acc.scale(&crate::scalar::rat(1, 6)).norm_sq() * &weight;
                    if labels.iter().sum::<u64>() % 4 == 0 {
                        *components.entry(ComponentLabel { kind, labels }).or_insert_with(BigRational::zero) += part;
                    } else {
                        outside += part;
                    }
                }
            }
        }
    }
    ComponentNorms { components, outside, total }
}
