//! Characteristic-polynomial fingerprints.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::canonical::orbit_partition;
use super::GroupElement;
use crate::decomposition::Decomposition;
use crate::poly::Poly;

/// Cubes contribute one polynomial each to `symmetric`. Non-cube terms
/// contribute their sorted 3-multiset to `triples`, counted once per orbit
/// of the cyclic shift when the shift preserves the decomposition
/// (`grouped_by_shift`), otherwise once per term.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Fingerprint {
    pub symmetric: BTreeMap<Poly, usize>,
    pub triples: BTreeMap<[Poly; 3], usize>,
    /// Number of non-cube terms.
    pub triple_terms: usize,
    pub grouped_by_shift: bool,
}

impl Fingerprint {
    pub fn symmetric_terms(&self) -> usize {
        self.symmetric.values().sum()
    }
}

pub fn fingerprint(d: &Decomposition<BigRational>) -> Fingerprint {
    let shift_orbits = orbit_partition(d, &[GroupElement::pi(d.n())]).ok();
    let grouped_by_shift = shift_orbits.is_some();
    let groups = shift_orbits.unwrap_or_else(|| (0..d.rank()).map(|i| vec![i]).collect());
    let mut fp = Fingerprint {
        grouped_by_shift,
        ..Default::default()
    };
    for group in groups {
        for &i in &group {
            let t = &d.terms()[i];
            if t.is_cube() {
                *fp.symmetric.entry(t.x.charpoly()).or_insert(0) += 1;
            } else {
                fp.triple_terms += 1;
            }
        }
        let rep = &d.terms()[group[0]];
        if !rep.is_cube() {
            let mut key = [rep.x.charpoly(), rep.y.charpoly(), rep.z.charpoly()];
            key.sort();
            *fp.triples.entry(key).or_insert(0) += 1;
        }
    }
    fp
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symmetric terms:")?;
        for (p, c) in &self.symmetric {
            writeln!(f, "  {c:>3}  {p}")?;
        }
        let unit = if self.grouped_by_shift { "orbits" } else { "terms" };
        writeln!(f, "triple {unit} ({} terms):", self.triple_terms)?;
        for (k, c) in &self.triples {
            writeln!(f, "  {c:>3}  {{{}, {}, {}}}", k[0], k[1], k[2])?;
        }
        Ok(())
    }
}
