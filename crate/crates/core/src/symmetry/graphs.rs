//! Incidence and pairing graphs of the rank-one matrices in a decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::canonical::orbit_partition;
use super::GroupElement;
use crate::decomposition::Decomposition;
use crate::mat::Mat;

/// Projective point: primitive integer vector, first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<BigInt>);

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn from_rational(v: &[BigRational]) -> Option<Self> {
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        Self::from_integers(ints)
    }

    pub fn from_integers(mut v: Vec<BigInt>) -> Option<Self> {
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return None;
        }
        let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in v.iter_mut() {
            *x = &*x / &g;
            if neg {
                *x = -&*x;
            }
        }
        Some(ProjPoint(v))
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self::from_integers(v.iter().map(|&x| BigInt::from(x)).collect()).expect("nonzero vector")
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dot(&self, other: &ProjPoint) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Column and row points of a rank-one matrix, `None` otherwise.
pub fn rank_one_factors(m: &Mat<BigRational>) -> Option<(ProjPoint, ProjPoint)> {
    if m.rank() != 1 {
        return None;
    }
    let n = m.n();
    let col = (0..n).find(|&j| (0..n).any(|i| !m.get(i, j).is_zero()))?;
    let row = (0..n).find(|&i| (0..n).any(|j| !m.get(i, j).is_zero()))?;
    let c: Vec<BigRational> = (0..n).map(|i| m.get(i, col).clone()).collect();
    let r: Vec<BigRational> = (0..n).map(|j| m.get(row, j).clone()).collect();
    Some((ProjPoint::from_rational(&c)?, ProjPoint::from_rational(&r)?))
}

/// How vertex weights are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// Occurrences among first-slot factors only.
    #[default]
    FirstSlot,
    /// Occurrences in any slot.
    AllSlots,
}

/// Weighted bipartite graph: top vertices are column points, bottom
/// vertices are row points, edge iff row · column = 0. Vertices are listed
/// by descending weight, then by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub top: Vec<(ProjPoint, usize)>,
    pub bottom: Vec<(ProjPoint, usize)>,
    pub edges: BTreeSet<(usize, usize)>,
}

fn ordered(weights: BTreeMap<ProjPoint, usize>) -> Vec<(ProjPoint, usize)> {
    let mut v: Vec<_> = weights.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v
}

fn vertex_weights(
    d: &Decomposition<BigRational>,
    mode: WeightMode,
) -> (BTreeMap<ProjPoint, usize>, BTreeMap<ProjPoint, usize>) {
    let mut top = BTreeMap::new();
    let mut bottom = BTreeMap::new();
    for t in d.terms() {
        for (slot, m) in t.slots().into_iter().enumerate() {
            if let Some((c, r)) = rank_one_factors(m) {
                let w = usize::from(slot == 0 || mode == WeightMode::AllSlots);
                *top.entry(c).or_insert(0) += w;
                *bottom.entry(r).or_insert(0) += w;
            }
        }
    }
    (top, bottom)
}

pub fn incidence_graph(d: &Decomposition<BigRational>) -> IncidenceGraph {
    incidence_graph_with(d, WeightMode::FirstSlot)
}

pub fn incidence_graph_with(d: &Decomposition<BigRational>, mode: WeightMode) -> IncidenceGraph {
    let (top, bottom) = vertex_weights(d, mode);
    let top = ordered(top);
    let bottom = ordered(bottom);
    let mut edges = BTreeSet::new();
    for (i, (c, _)) in top.iter().enumerate() {
        for (j, (r, _)) in bottom.iter().enumerate() {
            if c.dot(r).is_zero() {
                edges.insert((i, j));
            }
        }
    }
    IncidenceGraph { top, bottom, edges }
}

impl IncidenceGraph {
    pub fn top_index(&self, p: &ProjPoint) -> Option<usize> {
        self.top.iter().position(|(q, _)| q == p)
    }

    pub fn bottom_index(&self, p: &ProjPoint) -> Option<usize> {
        self.bottom.iter().position(|(q, _)| q == p)
    }

    /// Edges as (column point, row point) pairs.
    pub fn edge_points(&self) -> BTreeSet<(ProjPoint, ProjPoint)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.top[i].0.clone(), self.bottom[j].0.clone()))
            .collect()
    }

    /// Relabels vertices: old top i becomes `top_perm[i]`, likewise bottom.
    pub fn permuted(&self, top_perm: &[usize], bottom_perm: &[usize]) -> IncidenceGraph {
        let mut top = self.top.clone();
        for (i, v) in self.top.iter().enumerate() {
            top[top_perm[i]] = v.clone();
        }
        let mut bottom = self.bottom.clone();
        for (j, v) in self.bottom.iter().enumerate() {
            bottom[bottom_perm[j]] = v.clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| (top_perm[i], bottom_perm[j]))
            .collect();
        IncidenceGraph { top, bottom, edges }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n  rankdir=TB;\n");
        s.push_str("  { rank=same;");
        for i in 0..self.top.len() {
            s.push_str(&format!(" t{i};"));
        }
        s.push_str(" }\n  { rank=same;");
        for j in 0..self.bottom.len() {
            s.push_str(&format!(" b{j};"));
        }
        s.push_str(" }\n");
        for (i, (p, w)) in self.top.iter().enumerate() {
            s.push_str(&format!("  t{i} [label=\"{w}\", tooltip=\"{p}\"];\n"));
        }
        for (j, (p, w)) in self.bottom.iter().enumerate() {
            s.push_str(&format!("  b{j} [label=\"{w}\", tooltip=\"{p}\"];\n"));
        }
        for (i, j) in &self.edges {
            s.push_str(&format!("  t{i} -- b{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingEdge {
    pub top: usize,
    pub bottom: usize,
    /// Colour group: the smallest term index of the group.
    pub color: usize,
    pub cube: bool,
}

/// Which (column, row) pairs occur together as rank-one matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingGraph {
    pub top: Vec<(ProjPoint, usize)>,
    pub bottom: Vec<(ProjPoint, usize)>,
    pub edges: Vec<PairingEdge>,
}

/// When the cyclic shift preserves `d`, each shift-orbit of non-cube terms
/// contributes one colour group (the rank-one factors of one member) and
/// each rank-one cube one dashed edge. Otherwise every term is its own
/// colour group.
pub fn pairing_graph(d: &Decomposition<BigRational>) -> PairingGraph {
    let inc = incidence_graph(d);
    let groups = orbit_partition(d, &[GroupElement::pi(d.n())])
        .unwrap_or_else(|_| (0..d.rank()).map(|i| vec![i]).collect());
    let mut edges = Vec::new();
    for group in groups {
        let rep = group[0];
        let t = &d.terms()[rep];
        let slots: Vec<_> = if t.is_cube() { vec![&t.x] } else { t.slots().to_vec() };
        for m in slots {
            if let Some((c, r)) = rank_one_factors(m) {
                edges.push(PairingEdge {
                    top: inc.top_index(&c).expect("vertex present"),
                    bottom: inc.bottom_index(&r).expect("vertex present"),
                    color: rep,
                    cube: t.is_cube(),
                });
            }
        }
    }
    PairingGraph {
        top: inc.top,
        bottom: inc.bottom,
        edges,
    }
}

impl PairingGraph {
    pub fn cube_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.cube).count()
    }

    pub fn color_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.cube)
            .map(|e| e.color)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn to_dot(&self, name: &str) -> String {
        const PALETTE: &[&str] = &[
            "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold3",
            "navy", "olivedrab",
        ];
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, (p, w)) in self.top.iter().enumerate() {
            s.push_str(&format!("  t{i} [label=\"{w}\", tooltip=\"{p}\"];\n"));
        }
        for (j, (p, w)) in self.bottom.iter().enumerate() {
            s.push_str(&format!("  b{j} [label=\"{w}\", tooltip=\"{p}\"];\n"));
        }
        let colors: Vec<usize> = self
            .edges
            .iter()
            .map(|e| e.color)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for e in &self.edges {
            if e.cube {
                s.push_str(&format!("  t{} -- b{} [style=dashed];\n", e.top, e.bottom));
            } else {
                let c = colors.iter().position(|&c| c == e.color).unwrap_or(0);
                s.push_str(&format!(
                    "  t{} -- b{} [color={}, term={}];\n",
                    e.top,
                    e.bottom,
                    PALETTE[c % PALETTE.len()],
                    e.color
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}
