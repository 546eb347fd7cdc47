#![allow(dead_code)]

pub mod figures;
pub mod tables;

use std::collections::{BTreeMap, BTreeSet};

use mmsym_core::symmetry::{IncidenceGraph, PairingGraph, ProjPoint};

pub type Pt = [i64; 3];

pub fn point(p: &Pt) -> ProjPoint {
    ProjPoint::from_i64(p)
}

pub fn weights(list: &[(Pt, usize)]) -> BTreeMap<ProjPoint, usize> {
    list.iter().map(|(p, w)| (point(p), *w)).collect()
}

pub fn edge_set(list: &[(Pt, Pt)]) -> BTreeSet<(ProjPoint, ProjPoint)> {
    list.iter().map(|(a, b)| (point(a), point(b))).collect()
}

/// Checks vertex weights and edges; returns a description of the first
/// mismatch.
pub fn compare_incidence(g: &IncidenceGraph, want: &figures::Incidence) -> Result<(), String> {
    let top: BTreeMap<_, _> = g.top.iter().cloned().collect();
    let bottom: BTreeMap<_, _> = g.bottom.iter().cloned().collect();
    if top != weights(want.top) {
        return Err(format!("top vertices differ: {top:?}"));
    }
    if bottom != weights(want.bottom) {
        return Err(format!("bottom vertices differ: {bottom:?}"));
    }
    if g.edge_points() != edge_set(want.edges) {
        return Err(format!("edges differ: got {}, want {}", g.edges.len(), want.edges.len()));
    }
    Ok(())
}

pub fn compare_pairing(g: &PairingGraph, want: &figures::Pairing) -> Result<(), String> {
    let pair = |t: usize, b: usize| (g.top[t].0.clone(), g.bottom[b].0.clone());
    let dashed: BTreeSet<_> = g.edges.iter().filter(|e| e.cube).map(|e| pair(e.top, e.bottom)).collect();
    if dashed != edge_set(want.dashed) {
        return Err(format!("dashed edges differ: got {}", dashed.len()));
    }
    let mut groups: BTreeMap<usize, Vec<(ProjPoint, ProjPoint)>> = BTreeMap::new();
    for e in g.edges.iter().filter(|e| !e.cube) {
        groups.entry(e.color).or_default().push(pair(e.top, e.bottom));
    }
    let mut got: Vec<Vec<_>> = groups
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    got.sort();
    let mut expected: Vec<Vec<_>> = want
        .groups
        .iter()
        .map(|grp| {
            let mut v: Vec<_> = grp.iter().map(|(a, b)| (point(a), point(b))).collect();
            v.sort();
            v
        })
        .collect();
    expected.sort();
    if got != expected {
        return Err(format!("colour groups differ: got {} groups, want {}", got.len(), expected.len()));
    }
    Ok(())
}
