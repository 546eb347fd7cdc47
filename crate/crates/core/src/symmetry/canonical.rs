use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;

use super::{GroupElement, SymmetryError};
use crate::decomposition::{Decomposition, RankOneTriple};

/// Rank-one term with x and y scaled so their first nonzero entry is 1.
pub type CanonicalTriple = RankOneTriple<BigRational>;

pub fn canonical_triple(t: &RankOneTriple<BigRational>) -> CanonicalTriple {
    let a = t.x.first_nonzero().cloned().unwrap_or_else(BigRational::one);
    let b = t.y.first_nonzero().cloned().unwrap_or_else(BigRational::one);
    RankOneTriple {
        x: t.x.scale(&(BigRational::one() / a.clone())),
        y: t.y.scale(&(BigRational::one() / b.clone())),
        z: t.z.scale(&(a * b)),
    }
}

fn sorted_canonical(d: &Decomposition<BigRational>) -> Vec<CanonicalTriple> {
    let mut v: Vec<_> = d.terms().iter().map(canonical_triple).collect();
    v.sort();
    v
}

/// Multiset equality of canonical triples (term order and admissible
/// rescalings are ignored).
pub fn decompositions_equal(a: &Decomposition<BigRational>, b: &Decomposition<BigRational>) -> bool {
    a.n() == b.n() && sorted_canonical(a) == sorted_canonical(b)
}

pub fn is_decomposition_symmetry(e: &GroupElement, d: &Decomposition<BigRational>) -> bool {
    e.n() == d.n() && decompositions_equal(&e.apply_decomposition(d), d)
}

/// Index of each term's image under `e`, or the first term whose image is
/// missing. Repeated terms are matched one-to-one.
fn term_permutation(e: &GroupElement, d: &Decomposition<BigRational>) -> Result<Vec<usize>, usize> {
    let mut slots: HashMap<CanonicalTriple, Vec<usize>> = HashMap::new();
    for (i, t) in d.terms().iter().enumerate().rev() {
        slots.entry(canonical_triple(t)).or_default().push(i);
    }
    let mut perm = Vec::with_capacity(d.rank());
    for (i, t) in d.terms().iter().enumerate() {
        match slots.get_mut(&canonical_triple(&e.apply(t))).and_then(|v| v.pop()) {
            Some(j) => perm.push(j),
            None => return Err(i),
        }
    }
    Ok(perm)
}

/// Orbits of the group generated by `generators`, each sorted, ordered by
/// smallest member.
pub fn orbit_partition(
    d: &Decomposition<BigRational>,
    generators: &[GroupElement],
) -> Result<Vec<Vec<usize>>, SymmetryError> {
    let r = d.rank();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (gi, e) in generators.iter().enumerate() {
        if e.n() != d.n() {
            return Err(SymmetryError::DimensionMismatch);
        }
        let perm = term_permutation(e, d).map_err(|term| SymmetryError::NotASymmetry {
            generator: gi,
            term,
        })?;
        for (i, j) in perm.into_iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..r {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Terms grouped by their sorted (rank x, rank y, rank z).
pub fn rank_triple_partition(d: &Decomposition<BigRational>) -> BTreeMap<[usize; 3], Vec<usize>> {
    let mut out: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for (i, t) in d.terms().iter().enumerate() {
        let mut key = [t.x.rank(), t.y.rank(), t.z.rank()];
        key.sort_unstable();
        out.entry(key).or_default().push(i);
    }
    out
}
