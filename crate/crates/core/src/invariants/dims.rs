//! Closed-form invariant dimensions.

use std::fmt;

/// C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// dim (A^{⊗3})^{Z₃} for dim A = m: (m³ + 2m)/3.
pub fn z3_invariant_dim(m: u64) -> u64 {
    (m * m * m + 2 * m) / 3
}

/// dim (A^{⊗3})^{Z_{n+1}} = n⁵ − n⁴ + n³ − n² + n.
pub fn znp1_invariant_dim(n: u64) -> u64 {
    n.pow(5) - n.pow(4) + n.pow(3) - n.pow(2) + n
}

/// The same dimension summed over summand types: all three factors in A₀,
/// exactly one in A₀, or none.
pub fn znp1_summand_table(n: u64) -> u64 {
    n.pow(3) + 3 * n * n * (n - 1).pow(2) + n * (n - 1) * (n - 1).pow(3)
}

/// The same dimension by enumerating ordered label triples α+β+γ ≡ 0.
pub fn znp1_by_enumeration(n: u64) -> u64 {
    let modulus = n + 1;
    let d = |u: u64| if u == 0 { n } else { n - 1 };
    let mut total = 0;
    for a in 0..modulus {
        for b in 0..modulus {
            let c = (2 * modulus - a - b) % modulus;
            total += d(a) * d(b) * d(c);
        }
    }
    total
}

/// Flat indices spanning A_u: entry (i, j) has label (i − j) mod (n + 1)
/// under the diagonal generator diag(ω, ω², …, ωⁿ).
pub fn isotypic_index(n: usize) -> Vec<Vec<usize>> {
    let modulus = n + 1;
    let mut out = vec![Vec::new(); modulus];
    for i in 0..n {
        for j in 0..n {
            out[(i + modulus - j) % modulus].push(i * n + j);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandKind {
    Sym,
    Alt,
}

/// One block of (S³A)^{Z_{n+1}} or (Λ³A)^{Z_{n+1}}, indexed by the sorted
/// label multiset {α ≤ β ≤ γ} with α + β + γ ≡ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub kind: SummandKind,
    pub labels: [u64; 3],
    pub dim: u64,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.labels;
        let p = if self.kind == SummandKind::Sym { "S" } else { "Λ" };
        match (a == b, b == c) {
            (true, true) => write!(f, "{p}³A{a}")?,
            (true, false) => write!(f, "{p}²A{a}⊗A{c}")?,
            (false, true) => write!(f, "A{a}⊗{p}²A{b}")?,
            (false, false) => write!(f, "A{a}⊗A{b}⊗A{c}")?,
        }
        write!(f, " [{}]", self.dim)
    }
}

/// Every invariant block with its dimension (including empty ones).
pub fn znp1_z3_summands(n: u64) -> Vec<Summand> {
    let modulus = n + 1;
    let d = |u: u64| if u == 0 { n } else { n - 1 };
    let mut out = Vec::new();
    for a in 0..modulus {
        for b in a..modulus {
            for c in b..modulus {
                if (a + b + c) % modulus != 0 {
                    continue;
                }
                let (sym, alt) = if a == b && b == c {
                    (binomial(d(a) + 2, 3), binomial(d(a), 3))
                } else if a == b {
                    (binomial(d(a) + 1, 2) * d(c), binomial(d(a), 2) * d(c))
                } else if b == c {
                    (d(a) * binomial(d(b) + 1, 2), d(a) * binomial(d(b), 2))
                } else {
                    (d(a) * d(b) * d(c), d(a) * d(b) * d(c))
                };
                out.push(Summand { kind: SummandKind::Sym, labels: [a, b, c], dim: sym });
                out.push(Summand { kind: SummandKind::Alt, labels: [a, b, c], dim: alt });
            }
        }
    }
    out
}

/// (dim of symmetric part, dim of alternating part, total).
pub fn znp1_z3_invariant_dim(n: u64) -> (u64, u64, u64) {
    let s = znp1_z3_summands(n);
    let sym: u64 = s.iter().filter(|x| x.kind == SummandKind::Sym).map(|x| x.dim).sum();
    let alt: u64 = s.iter().filter(|x| x.kind == SummandKind::Alt).map(|x| x.dim).sum();
    (sym, alt, sym + alt)
}

/// Per-type tally: the number of label solutions for each shape times the
/// shape's dimension.
pub fn znp1_z3_by_type(n: u64) -> (u64, u64) {
    let m = n + 1;
    let nonzero = || 1..m;
    let uuu = nonzero().filter(|u| (3 * u) % m == 0).count() as u64;
    let zuu = nonzero().filter(|u| (2 * u) % m == 0).count() as u64;
    let uuv = nonzero()
        .flat_map(|u| nonzero().map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && (2 * u + v) % m == 0)
        .count() as u64;
    let zuv = nonzero()
        .flat_map(|u| nonzero().map(move |v| (u, v)))
        .filter(|&(u, v)| u < v && (u + v) % m == 0)
        .count() as u64;
    let uvw = nonzero()
        .flat_map(|u| nonzero().flat_map(move |v| nonzero().map(move |w| (u, v, w))))
        .filter(|&(u, v, w)| u < v && v < w && (u + v + w) % m == 0)
        .count() as u64;
    let counts = [1, uuu, zuu, 0, uuv, zuv, uvw];
    let sym_dims = [
        binomial(n + 2, 3),
        binomial(n + 1, 3),
        n * binomial(n, 2),
        0,
        (n - 1) * binomial(n, 2),
        n * (n - 1).pow(2),
        (n - 1).pow(3),
    ];
    let alt_dims = [
        binomial(n, 3),
        binomial(n - 1, 3),
        n * binomial(n - 1, 2),
        0,
        (n - 1) * binomial(n - 1, 2),
        n * (n - 1).pow(2),
        (n - 1).pow(3),
    ];
    let dot = |d: &[u64; 7]| counts.iter().zip(d).map(|(c, d)| c * d).sum();
    (dot(&sym_dims), dot(&alt_dims))
}
