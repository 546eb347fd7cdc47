//! Elements of the symmetry group of M⟨n⟩: (PGL×PGL×PGL) ⋊ Z₃ ⋊ Z₂.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SymmetryError;
use crate::decomposition::{Decomposition, RankOneTriple};
use crate::mat::Mat;

pub type QMat = Mat<BigRational>;

/// `L(g,h,k) ∘ σ^cyclic ∘ T^transpose`, applied right to left: transpose
/// first, then the cyclic shift, then the linear triple
/// x ↦ g x h⁻¹, y ↦ h y k⁻¹, z ↦ k z g⁻¹.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    g: QMat,
    h: QMat,
    k: QMat,
    g_inv: QMat,
    h_inv: QMat,
    k_inv: QMat,
    cyclic: u8,
    transpose: bool,
}

impl GroupElement {
    pub fn new(g: QMat, h: QMat, k: QMat, cyclic: u8, transpose: bool) -> Result<Self, SymmetryError> {
        let n = g.n();
        if h.n() != n || k.n() != n {
            return Err(SymmetryError::DimensionMismatch);
        }
        let g_inv = g.inverse().ok_or(SymmetryError::Singular('g'))?;
        let h_inv = h.inverse().ok_or(SymmetryError::Singular('h'))?;
        let k_inv = k.inverse().ok_or(SymmetryError::Singular('k'))?;
        Ok(GroupElement {
            g,
            h,
            k,
            g_inv,
            h_inv,
            k_inv,
            cyclic: cyclic % 3,
            transpose,
        })
    }

    pub fn linear(g: QMat, h: QMat, k: QMat) -> Result<Self, SymmetryError> {
        Self::new(g, h, k, 0, false)
    }

    /// x ↦ g x g⁻¹ in every slot.
    pub fn conjugation(g: QMat) -> Result<Self, SymmetryError> {
        Self::new(g.clone(), g.clone(), g, 0, false)
    }

    pub fn identity(n: usize) -> Self {
        let i = Mat::identity(n);
        Self::new(i.clone(), i.clone(), i, 0, false).expect("identity is invertible")
    }

    /// The standard cyclic shift (x, y, z) ↦ (z, x, y).
    pub fn pi(n: usize) -> Self {
        let mut e = Self::identity(n);
        e.cyclic = 1;
        e
    }

    /// (x, y, z) ↦ (xᵀ, zᵀ, yᵀ).
    pub fn transposition(n: usize) -> Self {
        let mut e = Self::identity(n);
        e.transpose = true;
        e
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }
    pub fn g(&self) -> &QMat {
        &self.g
    }
    pub fn h(&self) -> &QMat {
        &self.h
    }
    pub fn k(&self) -> &QMat {
        &self.k
    }
    pub fn cyclic(&self) -> u8 {
        self.cyclic
    }
    pub fn transpose(&self) -> bool {
        self.transpose
    }

    pub fn apply(&self, t: &RankOneTriple<BigRational>) -> RankOneTriple<BigRational> {
        let (mut x, mut y, mut z) = (t.x.clone(), t.y.clone(), t.z.clone());
        if self.transpose {
            let (tx, ty, tz) = (x.transpose(), z.transpose(), y.transpose());
            x = tx;
            y = ty;
            z = tz;
        }
        for _ in 0..self.cyclic {
            let (nx, ny, nz) = (z, x, y);
            x = nx;
            y = ny;
            z = nz;
        }
        RankOneTriple {
            x: self.g.mul(&x).mul(&self.h_inv),
            y: self.h.mul(&y).mul(&self.k_inv),
            z: self.k.mul(&z).mul(&self.g_inv),
        }
    }

    pub fn apply_decomposition(&self, d: &Decomposition<BigRational>) -> Decomposition<BigRational> {
        let terms = d.terms().iter().map(|t| self.apply(t)).collect();
        d.with_terms(terms).expect("group action preserves validity")
    }

    /// `self ∘ other` (other applied first), in normal form.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let (mut g2, mut h2, mut k2) = (other.g.clone(), other.h.clone(), other.k.clone());
        let mut c2 = other.cyclic;
        if self.transpose {
            // T·L(g,h,k) = L(h⁻ᵀ, g⁻ᵀ, k⁻ᵀ)·T and T·σ = σ²·T
            let ng = other.h_inv.transpose();
            let nh = other.g_inv.transpose();
            let nk = other.k_inv.transpose();
            g2 = ng;
            h2 = nh;
            k2 = nk;
            c2 = (3 - c2) % 3;
        }
        // σ·L(g,h,k) = L(k,g,h)·σ
        for _ in 0..self.cyclic {
            let (ng, nh, nk) = (k2, g2, h2);
            g2 = ng;
            h2 = nh;
            k2 = nk;
        }
        GroupElement::new(
            self.g.mul(&g2),
            self.h.mul(&h2),
            self.k.mul(&k2),
            (self.cyclic + c2) % 3,
            self.transpose ^ other.transpose,
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let lin_inv = GroupElement::new(
            self.g_inv.clone(),
            self.h_inv.clone(),
            self.k_inv.clone(),
            0,
            false,
        )
        .expect("inverse is invertible");
        let mut rot = GroupElement::identity(n);
        rot.cyclic = (3 - self.cyclic) % 3;
        let mut tr = GroupElement::identity(n);
        tr.transpose = self.transpose;
        tr.compose(&rot).compose(&lin_inv)
    }

    pub fn pow(&self, e: u32) -> GroupElement {
        let mut out = GroupElement::identity(self.n());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    /// Projective normal form: each of g, h, k scaled so its first nonzero
    /// entry is 1. Two elements act identically iff their keys agree.
    pub fn canonical(&self) -> GroupElement {
        let norm = |m: &QMat| {
            let s = m.first_nonzero().cloned().unwrap_or_else(BigRational::one);
            m.scale(&(BigRational::one() / s))
        };
        GroupElement::new(norm(&self.g), norm(&self.h), norm(&self.k), self.cyclic, self.transpose)
            .expect("scaling keeps invertibility")
    }

    pub fn is_identity(&self) -> bool {
        self.canonical() == GroupElement::identity(self.n())
    }

    /// True iff the element maps M⟨n⟩ to itself.
    pub fn is_tensor_symmetry(&self) -> bool {
        let std = crate::decomposition::standard_decomposition::<BigRational>(self.n());
        self.apply_decomposition(&std).residual().1.is_zero()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupElement")
            .field("g", &self.g)
            .field("h", &self.h)
            .field("k", &self.k)
            .field("cyclic", &self.cyclic)
            .field("transpose", &self.transpose)
            .finish()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, h={}, k={}, cyclic={}, transpose={})",
            self.g, self.h, self.k, self.cyclic, self.transpose
        )
    }
}

/// Companion matrix of 1 + t + … + tⁿ: ones on the subdiagonal and −1 in
/// the last column. It has order n + 1.
pub fn cyclic_generator(n: usize) -> QMat {
    Mat::from_fn(n, |i, j| {
        if j == n - 1 {
            BigRational::from_integer((-1).into())
        } else if i == j + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// a₀ for n = 3: [[0,0,−1],[1,0,−1],[0,1,−1]].
pub fn a0() -> QMat {
    cyclic_generator(3)
}

fn q3(rows: [[i64; 3]; 3]) -> QMat {
    Mat::from_i64_rows(rows)
}

/// τ₁₃ε₂.
fn tau13_eps2() -> QMat {
    q3([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
}

fn eps2() -> QMat {
    q3([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
}

fn tau12() -> QMat {
    q3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
}

/// Built-in named elements. `n` is needed for the families that exist for
/// every n; the Laderman-family maps are defined for n = 3 only.
pub fn named_element(name: &str, n: usize) -> Result<GroupElement, SymmetryError> {
    let unknown = || SymmetryError::UnknownElement(name.to_string());
    let e = match name {
        "id" | "identity" => GroupElement::identity(n),
        "pi" => GroupElement::pi(n),
        "transpose" => GroupElement::transposition(n),
        "a0conj" => GroupElement::conjugation(cyclic_generator(n))?,
        "lader_phi" | "lader_zeta" | "lader_exchange" if n != 3 => return Err(unknown()),
        "lader_phi" => GroupElement::linear(tau13_eps2(), tau13_eps2(), Mat::identity(3))?,
        "lader_zeta" => {
            let e = eps2();
            let lin = GroupElement::new(e.clone(), e.clone(), e, 1, false)?;
            lin.compose(&GroupElement::transposition(3))
        }
        "lader_exchange" => GroupElement::linear(tau12(), Mat::identity(3), tau12().mul(&eps2()))?,
        _ => return Err(unknown()),
    };
    Ok(e)
}

pub const NAMED_ELEMENTS: &[&str] = &[
    "id",
    "pi",
    "transpose",
    "a0conj",
    "lader_phi",
    "lader_zeta",
    "lader_exchange",
];

/// Parses a word such as `pi^2*lader_phi`; factors compose right to left.
pub fn parse_word(word: &str, n: usize) -> Result<GroupElement, SymmetryError> {
    let mut out = GroupElement::identity(n);
    for factor in word.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| SymmetryError::UnknownElement(word.to_string()))?,
            ),
            None => (factor, 1),
        };
        let e = named_element(name, n)?.pow(exp);
        out = out.compose(&e);
    }
    Ok(out)
}

/// Closure of `gens` under composition, deduplicated projectively.
pub fn generate_group(gens: &[GroupElement], limit: usize) -> Result<Vec<GroupElement>, SymmetryError> {
    let Some(first) = gens.first() else {
        return Err(SymmetryError::DimensionMismatch);
    };
    let id = GroupElement::identity(first.n());
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.canonical());
    let mut elements = vec![id];
    let mut frontier = 0;
    while frontier < elements.len() {
        let e = elements[frontier].clone();
        frontier += 1;
        for s in gens {
            let p = s.compose(&e).canonical();
            if seen.insert(p.clone()) {
                if elements.len() >= limit {
                    return Err(SymmetryError::GroupTooLarge(limit));
                }
                elements.push(p);
            }
        }
    }
    Ok(elements)
}
