//! Mechanical cancellation for C_{2k+2}(1,k) at p = 2.
//!
//! The pair-counting route splits the edges left after removing the four
//! edges at the twin of the removed vertex into a forest F for one Dodgson
//! factor and a forest G for the other. Pairs are grouped by what F does on
//! the edges at the two end twin pairs; the reflection d -> 2k - d maps each
//! group onto its mirror, so mirrored groups cancel and only symmetric
//! groups can contribute.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{FamilyKind, RecurrenceError};
use crate::graph::{for_each_forest, is_partition_forest, mask_iter, EdgeMask, Graph};
use crate::graph_polys::{dodgson_vs_forests, DodgsonSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseClass {
    /// End-pair edges F uses, as vertex pairs.
    pub edges: Vec<(usize, usize)>,
    pub count: u64,
    pub mirror_count: u64,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseAnalysis {
    pub k: usize,
    pub classes: Vec<CaseClass>,
    pub total: u64,
    /// Sum over classes that are their own mirror.
    pub symmetric_total: u64,
    /// Every class count equals its mirror's.
    pub mirrors_balanced: bool,
}

impl CaseAnalysis {
    pub fn c2(&self) -> u8 {
        (self.total % 2) as u8
    }
}

fn mirror_edges(g: &Graph, k: usize) -> Result<Vec<usize>, RecurrenceError> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            g.find_edge(2 * k - u, 2 * k - v)
                .ok_or_else(|| RecurrenceError::Layout(format!("no mirror for edge ({u},{v})")))
        })
        .collect()
}

fn map_mask(mask: EdgeMask, perm: &[usize]) -> EdgeMask {
    mask_iter(mask).fold(0, |acc, e| acc | (1 << perm[e]))
}

pub fn two_k_plus_2_cases(k: usize) -> Result<CaseAnalysis, RecurrenceError> {
    let kind = FamilyKind::TwoKPlus2;
    if k < kind.min_index() {
        return Err(RecurrenceError::OutOfRange {
            family: kind.name().into(),
            index: k,
            min: kind.min_index(),
        });
    }
    let g = kind.graph(k)?;
    let e = kind.dodgson_edges(&g, k)?;
    let [a, b, c, d] = [e[0], e[1], e[2], e[3]];
    let first = dodgson_vs_forests(&g, &DodgsonSpec::new(&[a, b], &[c, d], &[]))?;
    let second = dodgson_vs_forests(&g, &DodgsonSpec::new(&[a, c], &[b, d], &[]))?;
    let removed: EdgeMask = e.iter().fold(0, |m, &x| m | (1 << x));
    let allowed = g.all_edges() & !removed;

    let ends = [0, k + 1, k - 1, 2 * k];
    let layer: EdgeMask = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| ends.contains(u) || ends.contains(v))
        .fold(0, |m, (i, _)| m | (1 << i))
        & allowed;
    let mirror = mirror_edges(&g, k)?;

    let mut counts: BTreeMap<EdgeMask, u64> = BTreeMap::new();
    for (s, _) in &first {
        for (t, _) in &second {
            for_each_forest(&g, allowed, s, |f| {
                if is_partition_forest(&g, allowed & !f, t) {
                    *counts.entry(f & layer).or_insert(0) += 1;
                }
            });
        }
    }

    let classes: Vec<CaseClass> = counts
        .iter()
        .map(|(&m, &count)| {
            let mm = map_mask(m, &mirror);
            CaseClass {
                edges: mask_iter(m).map(|x| g.edge(x)).collect(),
                count,
                mirror_count: counts.get(&mm).copied().unwrap_or(0),
                symmetric: mm == m,
            }
        })
        .collect();
    Ok(CaseAnalysis {
        k,
        total: classes.iter().map(|c| c.count).sum(),
        symmetric_total: classes.iter().filter(|c| c.symmetric).map(|c| c.count).sum(),
        mirrors_balanced: classes.iter().all(|c| c.count == c.mirror_count),
        classes,
    })
}
