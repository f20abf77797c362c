//! Transfer systems over 𝔽₂ on strips.
//!
//! The strip of length m with gaps (j,k) has vertices 0..m and edges
//! (i, i+j), (i, i+k). Its boundary is the first k and the last k vertices,
//! numbered as positions: L_i = i is position i and R_i = m-1-i is position
//! k+i. A state is an unordered pair of partitions of all boundary positions;
//! its value on a strip is the parity of the number of ways to split the edge
//! set into a forest of the first shape and a forest of the second shape.
//! Removing both end vertices leaves the strip of length m-2, and each state
//! value is a sum of state values there.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FamilyKind, RecurrenceError};
use crate::graph::{
    all_partitions, forest_pair_count, mask_iter, Dsu, EdgeMask, Graph, GraphError, SetPartition,
};
use crate::graph_polys::{dodgson_vs_forests, DodgsonSpec};

/// Hard cap on reachable states.
pub const STATE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strip {
    pub short_gap: usize,
    pub long_gap: usize,
}

impl Strip {
    pub fn new(short_gap: usize, long_gap: usize) -> Result<Self, RecurrenceError> {
        if short_gap == 0 || short_gap >= long_gap {
            return Err(RecurrenceError::Layout(format!(
                "strip gaps must satisfy 0 < j < k, got ({short_gap},{long_gap})"
            )));
        }
        Ok(Strip {
            short_gap,
            long_gap,
        })
    }

    /// Boundary vertices per side.
    pub fn width(&self) -> usize {
        self.long_gap
    }

    pub fn positions(&self) -> usize {
        2 * self.width()
    }

    /// Shortest strip whose boundary positions are distinct vertices.
    pub fn base_len(&self) -> usize {
        2 * self.width()
    }

    pub fn graph(&self, len: usize) -> Result<Graph, GraphError> {
        let mut edges = Vec::new();
        for gap in [self.short_gap, self.long_gap] {
            for i in 0..len.saturating_sub(gap) {
                edges.push((i, i + gap));
            }
        }
        Graph::new(len, edges)
    }

    /// Vertex at each boundary position.
    pub fn boundary(&self, len: usize) -> Vec<usize> {
        let w = self.width();
        (0..w).chain((0..w).map(|i| len - 1 - i)).collect()
    }

    fn position_of(&self, len: usize, v: usize) -> Option<usize> {
        self.boundary(len).iter().position(|&b| b == v)
    }

    /// Number of parts a state must have in total to be nonzero.
    fn part_total(&self) -> usize {
        self.short_gap + self.long_gap
    }

    /// Edges at the two end vertices, in local numbering: l_i = i and
    /// r_i = width + 1 + i for i in 0..=width.
    pub(super) fn layer_edges(&self) -> Vec<(usize, usize)> {
        let w = self.width();
        let r = |i: usize| w + 1 + i;
        vec![
            (0, self.short_gap),
            (0, self.long_gap),
            (r(0), r(self.short_gap)),
            (r(0), r(self.long_gap)),
        ]
    }

    fn flip(&self, p: &SetPartition) -> SetPartition {
        let w = self.width();
        p.map_vertices(|i| (i + w) % (2 * w))
            .expect("a permutation keeps parts disjoint")
    }
}

/// Unordered pair of boundary partitions; `first <= second`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[String; 2]", into = "[String; 2]")]
pub struct TransferState {
    pub first: SetPartition,
    pub second: SetPartition,
}

impl TransferState {
    pub fn new(a: SetPartition, b: SetPartition) -> Self {
        if a <= b {
            TransferState {
                first: a,
                second: b,
            }
        } else {
            TransferState {
                first: b,
                second: a,
            }
        }
    }
}

impl fmt::Display for TransferState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.first, self.second)
    }
}

impl TryFrom<[String; 2]> for TransferState {
    type Error = GraphError;
    fn try_from(v: [String; 2]) -> Result<Self, GraphError> {
        Ok(TransferState::new(
            SetPartition::from_str(&v[0])?,
            SetPartition::from_str(&v[1])?,
        ))
    }
}

impl From<TransferState> for [String; 2] {
    fn from(s: TransferState) -> Self {
        [s.first.to_string(), s.second.to_string()]
    }
}

/// States, transitions and seed of a family's transfer system.
///
/// `transitions[i]` lists the states whose values at length m-2 sum to the
/// value of state i at length m (valid once m-2 >= the base length). The
/// family value at n is the sum of the `seed` states on the strip of length
/// n - `strip_offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSystem {
    pub family: FamilyKind,
    pub strip: Strip,
    pub strip_offset: usize,
    pub step: usize,
    pub states: Vec<TransferState>,
    pub transitions: Vec<Vec<usize>>,
    pub seed: Vec<usize>,
}

/// State values on strips of a few lengths, aligned with the system's states.
pub type BaseValues = BTreeMap<usize, Vec<u8>>;

// ---------------------------------------------------------------------------
// One layer step
// ---------------------------------------------------------------------------

pub(super) struct StepTable {
    pub(super) partitions: Vec<SetPartition>,
    layer: Vec<(usize, usize)>,
    /// by_result[s][π] = partitions π' at length m-2 that, with the layer
    /// edges in subset s, form a forest of shape π at length m.
    pub(super) by_result: Vec<Vec<Vec<usize>>>,
}

impl StepTable {
    pub(super) fn new(strip: &Strip, layer: Vec<(usize, usize)>) -> Self {
        let positions: Vec<usize> = (0..strip.positions()).collect();
        let partitions = all_partitions(&positions);
        let index: HashMap<SetPartition, usize> = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let subsets = 1usize << layer.len();
        let mut by_result = vec![vec![Vec::new(); partitions.len()]; subsets];
        for (s, slot) in by_result.iter_mut().enumerate() {
            for (pi, p) in partitions.iter().enumerate() {
                if let Some(q) = step_result(strip, &layer, s, p) {
                    slot[index[&q]].push(pi);
                }
            }
        }
        StepTable {
            partitions,
            layer,
            by_result,
        }
    }

    fn full_subset(&self) -> usize {
        (1 << self.layer.len()) - 1
    }

    /// Unordered successor pairs of the ordered pair (a, b), mod 2.
    fn successors(&self, strip: &Strip, a: usize, b: usize) -> BTreeMap<(usize, usize), u8> {
        let mut out = BTreeMap::new();
        let full = self.full_subset();
        for s in 0..=full {
            for &x in &self.by_result[s][a] {
                for &y in &self.by_result[full ^ s][b] {
                    if self.partitions[x].len() + self.partitions[y].len() != strip.part_total() {
                        continue;
                    }
                    *out.entry((x.min(y), x.max(y))).or_insert(0) ^= 1;
                }
            }
        }
        out.retain(|_, v| *v == 1);
        out
    }
}

/// Shape on the old boundary of the forest "π'-forest below, plus the layer
/// edges in `subset`", or None if that is not a forest with every tree
/// meeting the old boundary.
fn step_result(
    strip: &Strip,
    layer: &[(usize, usize)],
    subset: usize,
    next: &SetPartition,
) -> Option<SetPartition> {
    let w = strip.width();
    let locals = 2 * (w + 1);
    // New position i is local l_{i+1}; new position w+i is local r_{i+1}.
    let local_of_new = |pos: usize| if pos < w { pos + 1 } else { pos + 2 };
    let old_position = |local: usize| match local {
        l if l < w => Some(l),
        l if l > w && l < 2 * w + 1 => Some(l - 1),
        _ => None,
    };
    let mut dsu = Dsu::new(locals);
    for part in next.parts() {
        for &v in &part[1..] {
            dsu.union(local_of_new(part[0]), local_of_new(v));
        }
    }
    for (bit, &(a, b)) in layer.iter().enumerate() {
        if subset >> bit & 1 == 1 && !dsu.union(a, b) {
            return None;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for local in 0..locals {
        if let Some(pos) = old_position(local) {
            groups.entry(dsu.find(local)).or_default().push(pos);
        }
    }
    if (0..locals).any(|v| !groups.contains_key(&dsu.find(v))) {
        return None;
    }
    SetPartition::new(groups.into_values().collect()).ok()
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

/// Full partitions of all positions restricting to `partial` on its vertices
/// with every part meeting them.
pub(super) fn extensions(table: &StepTable, partial: &SetPartition) -> Vec<usize> {
    let dom = partial.vertices();
    table
        .partitions
        .iter()
        .enumerate()
        .filter(|(_, full)| {
            full.parts().iter().all(|part| part.iter().any(|v| dom.contains(v)))
                && partial.parts().iter().all(|sp| {
                    let block = full.part_of(sp[0]);
                    sp.iter().all(|&v| full.part_of(v) == block)
                })
                && dom.iter().all(|&v| {
                    let block = full.part_of(v);
                    dom.iter()
                        .filter(|&&u| full.part_of(u) == block)
                        .all(|&u| partial.part_of(u) == partial.part_of(v))
                })
        })
        .map(|(i, _)| i)
        .collect()
}

/// Seed pairs of a family as partitions of strip positions, with the set of
/// layer edges (local numbering) missing from the seed graph.
fn family_seed(
    kind: FamilyKind,
    strip: &Strip,
) -> Result<(Vec<SetPartition>, Vec<SetPartition>, Vec<(usize, usize)>), RecurrenceError> {
    let n = 16;
    let g = kind.graph(n)?;
    let edges = kind.dodgson_edges(&g, n)?;
    let (first, second) = match *edges.as_slice() {
        [i, j, k] => (
            DodgsonSpec::new(&[i], &[j], &[k]),
            DodgsonSpec::new(&[i, k], &[j, k], &[]),
        ),
        [i, j, k, l] => (
            DodgsonSpec::new(&[i, j], &[k, l], &[]),
            DodgsonSpec::new(&[i, k], &[j, l], &[]),
        ),
        _ => return Err(RecurrenceError::Layout("seed needs 3 or 4 edges".into())),
    };
    let len = g.vertex_count();
    let strip_graph = strip.graph(len)?;
    let used = crate::graph::mask_of(&edges);
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let kept: Vec<(usize, usize)> = mask_iter(g.all_edges() & !used)
        .map(|e| norm(g.edge(e)))
        .collect();
    let strip_edges: Vec<(usize, usize)> = strip_graph.edges().iter().map(|&e| norm(e)).collect();
    if kept.iter().any(|e| !strip_edges.contains(e)) {
        return Err(RecurrenceError::Layout(format!(
            "{} minus its seed edges is not a strip",
            kind.name()
        )));
    }
    let w = strip.width();
    let to_local = |v: usize| {
        if v <= w {
            Some(v)
        } else if len - 1 - v <= w {
            Some(w + 1 + (len - 1 - v))
        } else {
            None
        }
    };
    let mut missing = Vec::new();
    for &(a, b) in strip_edges.iter().filter(|e| !kept.contains(e)) {
        let local = match (to_local(a), to_local(b)) {
            (Some(x), Some(y)) => (x.min(y), x.max(y)),
            _ => return Err(RecurrenceError::Layout("seed edge away from the ends".into())),
        };
        if !strip.layer_edges().contains(&local) {
            return Err(RecurrenceError::Layout(format!(
                "missing strip edge ({a},{b}) is not at an end vertex"
            )));
        }
        missing.push(local);
    }
    let to_positions = |spec: &DodgsonSpec| -> Result<Vec<SetPartition>, RecurrenceError> {
        dodgson_vs_forests(&g, spec)?
            .into_iter()
            .map(|(p, _)| {
                if p.vertices().iter().any(|&v| strip.position_of(len, v).is_none()) {
                    return Err(RecurrenceError::Layout(format!(
                        "seed partition {p} leaves the boundary"
                    )));
                }
                Ok(p.map_vertices(|v| strip.position_of(len, v).unwrap())?)
            })
            .collect()
    };
    Ok((to_positions(&first)?, to_positions(&second)?, missing))
}

/// Reachable-state transfer system for a strip family at p = 2.
pub fn build_transfer(kind: FamilyKind) -> Result<RecurrenceSystem, RecurrenceError> {
    let strip = kind.strip().ok_or_else(|| RecurrenceError::Unsupported {
        family: kind.name().into(),
        route: "transfer".into(),
        p: 2,
    })?;
    let table = StepTable::new(&strip, strip.layer_edges());
    let (first, second, missing) = family_seed(kind, &strip)?;

    let mut seed_pairs: BTreeMap<(usize, usize), u8> = BTreeMap::new();
    let mut toggle = |key: (usize, usize)| *seed_pairs.entry(key).or_insert(0) ^= 1;
    let strip_offset;
    if missing.is_empty() {
        strip_offset = 1;
        for s in &first {
            for t in &second {
                for a in extensions(&table, s) {
                    for b in extensions(&table, t) {
                        let pa = &table.partitions;
                        if pa[a].len() + pa[b].len() == strip.part_total() {
                            toggle((a.min(b), a.max(b)));
                        }
                    }
                }
            }
        }
    } else {
        // The seed graph is a strip with some end edges gone: take one
        // irregular layer step down to the strip two shorter.
        strip_offset = 3;
        let layer: Vec<(usize, usize)> = strip
            .layer_edges()
            .into_iter()
            .filter(|e| !missing.contains(e))
            .collect();
        let irregular = StepTable::new(&strip, layer);
        for s in &first {
            for t in &second {
                for a in extensions(&irregular, s) {
                    for b in extensions(&irregular, t) {
                        for (key, _) in irregular.successors(&strip, a, b) {
                            toggle(key);
                        }
                    }
                }
            }
        }
    }
    seed_pairs.retain(|_, v| *v == 1);

    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    for &key in seed_pairs.keys() {
        index.insert(key, order.len());
        order.push(key);
        queue.push_back(key);
    }
    let mut rows: Vec<Vec<usize>> = Vec::new();
    while let Some((a, b)) = queue.pop_front() {
        let mut row = Vec::new();
        for (key, _) in table.successors(&strip, a, b) {
            let id = *index.entry(key).or_insert_with(|| {
                order.push(key);
                queue.push_back(key);
                order.len() - 1
            });
            row.push(id);
        }
        if order.len() > STATE_CAP {
            return Err(RecurrenceError::StateCap(STATE_CAP));
        }
        row.sort_unstable();
        rows.push(row);
    }
    let states = order
        .iter()
        .map(|&(a, b)| TransferState::new(table.partitions[a].clone(), table.partitions[b].clone()))
        .collect();
    let seed = seed_pairs.keys().map(|k| index[k]).collect();
    Ok(RecurrenceSystem {
        family: kind,
        strip,
        strip_offset,
        step: 2,
        states,
        transitions: rows,
        seed,
    })
}

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

/// Parity of forest splittings of the strip of length `len` for two
/// (possibly partial) partitions of boundary positions.
pub fn strip_pair_value(
    strip: &Strip,
    len: usize,
    first: &SetPartition,
    second: &SetPartition,
) -> Result<u8, RecurrenceError> {
    let g = strip.graph(len)?;
    let boundary = strip.boundary(len);
    let map = |p: &SetPartition| p.map_vertices(|i| boundary[i]);
    let (a, b) = match (map(first), map(second)) {
        (Ok(a), Ok(b)) => (a, b),
        // Positions collide on very short strips.
        _ => return Ok(0),
    };
    Ok((forest_pair_count(&g, g.all_edges(), &a, &b) % 2) as u8)
}

/// Values of every state of `sys` on the strip of length `len`, by
/// enumerating all edge subsets.
pub fn seed_states(sys: &RecurrenceSystem, len: usize) -> Result<Vec<u8>, RecurrenceError> {
    let strip = sys.strip;
    if len < strip.base_len() {
        return Err(RecurrenceError::SeedGap(len));
    }
    let g = strip.graph(len)?;
    let e = g.edge_count();
    if e > 26 {
        return Err(RecurrenceError::Layout(format!(
            "strip of length {len} is too long to enumerate"
        )));
    }
    let boundary = strip.boundary(len);
    let positions: Vec<usize> = (0..strip.positions()).collect();
    let index: HashMap<SetPartition, usize> = all_partitions(&positions)
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let shape = |mask: EdgeMask| -> Option<usize> {
        let mut dsu = Dsu::new(len);
        for ed in mask_iter(mask) {
            let (t, h) = g.edge(ed);
            if !dsu.union(t, h) {
                return None;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &v) in boundary.iter().enumerate() {
            groups.entry(dsu.find(v)).or_default().push(pos);
        }
        if (0..len).any(|v| !groups.contains_key(&dsu.find(v))) {
            return None;
        }
        Some(index[&SetPartition::new(groups.into_values().collect()).ok()?])
    };
    let full: EdgeMask = g.all_edges();
    let shapes: Vec<Option<usize>> = (0..1u64 << e).map(|m| shape(m as EdgeMask)).collect();
    let mut parity: HashMap<(usize, usize), u8> = HashMap::new();
    for m in 0..1u64 << e {
        if let (Some(a), Some(b)) = (shapes[m as usize], shapes[(full & !(m as EdgeMask)) as usize]) {
            *parity.entry((a, b)).or_insert(0) ^= 1;
        }
    }
    Ok(sys
        .states
        .iter()
        .map(|s| parity.get(&(index[&s.first], index[&s.second])).copied().unwrap_or(0))
        .collect())
}

/// Base values at the two shortest strip lengths.
pub fn base_values(sys: &RecurrenceSystem) -> Result<BaseValues, RecurrenceError> {
    let b = sys.strip.base_len();
    let mut out = BaseValues::new();
    for len in [b, b + 1] {
        out.insert(len, seed_states(sys, len)?);
    }
    Ok(out)
}

/// Family value at index n, iterating down to the closest base length of
/// the same parity.
pub fn run_transfer(sys: &RecurrenceSystem, base: &BaseValues, n: usize) -> Result<u8, RecurrenceError> {
    let len = n
        .checked_sub(sys.strip_offset)
        .ok_or(RecurrenceError::SeedGap(0))?;
    let (&start, values) = base
        .range(..=len)
        .rev()
        .find(|(&l, _)| (len - l) % 2 == 0)
        .ok_or(RecurrenceError::SeedGap(len))?;
    if values.len() != sys.states.len() {
        return Err(RecurrenceError::SeedGap(start));
    }
    if start < sys.strip.base_len() {
        return Err(RecurrenceError::SeedGap(start));
    }
    let mut cur = values.clone();
    for _ in 0..(len - start) / sys.step {
        cur = sys
            .transitions
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &j| acc ^ cur[j]))
            .collect();
    }
    Ok(sys.seed.iter().fold(0u8, |acc, &i| acc ^ cur[i]))
}

impl RecurrenceSystem {
    /// State permutation induced by swapping the two ends of the strip;
    /// None where the mirrored state is not in the system.
    pub fn flip_permutation(&self) -> Vec<Option<usize>> {
        let index: HashMap<&TransferState, usize> =
            self.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        self.states
            .iter()
            .map(|s| {
                let m = TransferState::new(self.strip.flip(&s.first), self.strip.flip(&s.second));
                index.get(&m).copied()
            })
            .collect()
    }

    /// True iff the transition matrix commutes with the end swap on every
    /// state whose mirror was reached. A reached mirror has its successors'
    /// mirrors reached too, so the check is closed.
    pub fn commutes_with_flip(&self) -> bool {
        let perm = self.flip_permutation();
        self.transitions.iter().enumerate().all(|(i, row)| {
            let Some(pi) = perm[i] else { return true };
            let mapped: Option<Vec<usize>> = row.iter().map(|&j| perm[j]).collect();
            let Some(mut mapped) = mapped else { return false };
            mapped.sort_unstable();
            mapped == self.transitions[pi]
        })
    }
}
