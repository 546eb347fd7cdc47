//! Brute-force isomorphism of small weighted bipartite graphs.

use super::graphs::IncidenceGraph;
use super::SymmetryError;

pub const MAX_ISO_VERTICES: usize = 10;

/// `top[i]` is the image of top vertex i, likewise `bottom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

/// Lexicographically smallest weight- and edge-preserving bijection.
pub fn graphs_isomorphic(
    a: &IncidenceGraph,
    b: &IncidenceGraph,
) -> Result<Option<Bijection>, SymmetryError> {
    for g in [a, b] {
        if g.top.len() > MAX_ISO_VERTICES || g.bottom.len() > MAX_ISO_VERTICES {
            return Err(SymmetryError::GraphTooLarge(MAX_ISO_VERTICES));
        }
    }
    if a.top.len() != b.top.len() || a.bottom.len() != b.bottom.len() || a.edges.len() != b.edges.len() {
        return Ok(None);
    }
    let mut search = Search {
        a,
        b,
        top: vec![usize::MAX; a.top.len()],
        bottom: vec![usize::MAX; a.bottom.len()],
        used_top: vec![false; b.top.len()],
        used_bottom: vec![false; b.bottom.len()],
    };
    Ok(search.tops(0).then(|| Bijection {
        top: search.top,
        bottom: search.bottom,
    }))
}

struct Search<'g> {
    a: &'g IncidenceGraph,
    b: &'g IncidenceGraph,
    top: Vec<usize>,
    bottom: Vec<usize>,
    used_top: Vec<bool>,
    used_bottom: Vec<bool>,
}

impl Search<'_> {
    fn degree(g: &IncidenceGraph, top: bool, v: usize) -> usize {
        g.edges
            .iter()
            .filter(|&&(i, j)| if top { i == v } else { j == v })
            .count()
    }

    fn tops(&mut self, i: usize) -> bool {
        if i == self.top.len() {
            return self.bottoms(0);
        }
        for c in 0..self.b.top.len() {
            if self.used_top[c]
                || self.a.top[i].1 != self.b.top[c].1
                || Self::degree(self.a, true, i) != Self::degree(self.b, true, c)
            {
                continue;
            }
            self.used_top[c] = true;
            self.top[i] = c;
            if self.tops(i + 1) {
                return true;
            }
            self.used_top[c] = false;
        }
        false
    }

    fn bottoms(&mut self, j: usize) -> bool {
        if j == self.bottom.len() {
            return true;
        }
        for c in 0..self.b.bottom.len() {
            if self.used_bottom[c] || self.a.bottom[j].1 != self.b.bottom[c].1 {
                continue;
            }
            let consistent = (0..self.top.len()).all(|i| {
                self.a.edges.contains(&(i, j)) == self.b.edges.contains(&(self.top[i], c))
            });
            if !consistent {
                continue;
            }
            self.used_bottom[c] = true;
            self.bottom[j] = c;
            if self.bottoms(j + 1) {
                return true;
            }
            self.used_bottom[c] = false;
        }
        false
    }
}
