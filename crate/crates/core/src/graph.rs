//! Graphs with stable edge ids, circulant constructors, completion and
//! decompletion, signed incidence matrices and spanning-forest enumeration.
//!
//! Edge ids are positions in the edge list and never move: deleting edges
//! is expressed through an [`EdgeMask`] of allowed edges rather than by
//! rebuilding the list, so polynomial variables keep their meaning across
//! deletions.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bitset over edge ids. Graphs handled here have at most 128 edges.
pub type EdgeMask = u128;

pub const MAX_EDGES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} = ({tail}, {head}) has an endpoint outside 0..{vertex_count}")]
    EndpointOutOfRange {
        index: usize,
        tail: usize,
        head: usize,
        vertex_count: usize,
    },
    #[error("edge {index} is a self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("graph has {0} edges; at most {MAX_EDGES} are supported")]
    TooManyEdges(usize),
    #[error("invalid circulant C_{n}({j},{k}): {reason}")]
    InvalidCirculant {
        n: usize,
        j: usize,
        k: usize,
        reason: String,
    },
    #[error("graph is not 4-regular (vertex {vertex} has degree {degree})")]
    NotFourRegular { vertex: usize, degree: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("removing vertex {0} disconnects the graph")]
    DisconnectedDecompletion(usize),
    #[error("vertex {vertex} out of range 0..{vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("cannot complete: {0}")]
    NotCompletable(String),
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("cannot parse graph descriptor {descriptor:?}: {reason}")]
    BadDescriptor { descriptor: String, reason: String },
}

/// Undirected multigraph with oriented edges; orientation only signs the
/// incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        Graph::new(raw.vertex_count, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            vertex_count: g.vertex_count,
            edges: g.edges,
        }
    }
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if edges.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        for (index, &(tail, head)) in edges.iter().enumerate() {
            if tail >= vertex_count || head >= vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    index,
                    tail,
                    head,
                    vertex_count,
                });
            }
            if tail == head {
                return Err(GraphError::SelfLoop {
                    index,
                    vertex: tail,
                });
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// Mask with every edge id set.
    pub fn all_edges(&self) -> EdgeMask {
        full_mask(self.edges.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(t, h)| t == v || h == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(t, h) in &self.edges {
            deg[t] += 1;
            deg[h] += 1;
        }
        deg
    }

    /// Loop number |E| - |V| + 1 of a connected graph.
    pub fn loop_number(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertex_count)
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_masked(self.all_edges())
    }

    /// Connectivity of the spanning subgraph using only edges in `allowed`.
    pub fn is_connected_masked(&self, allowed: EdgeMask) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut dsu = Dsu::new(self.vertex_count);
        let mut comps = self.vertex_count;
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if allowed >> i & 1 == 1 && dsu.union(t, h) {
                comps -= 1;
            }
        }
        comps == 1
    }

    /// The graph with `v` and its incident edges removed; higher vertex ids
    /// shift down by one and the surviving edges keep their relative order.
    pub fn without_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(t, h)| t != v && h != v)
            .map(|&(t, h)| (shift(t), shift(h)))
            .collect();
        Graph::new(self.vertex_count - 1, edges)
    }

    /// Multiplicity adjacency matrix, ignoring orientation.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count;
        let mut adj = vec![vec![0u32; n]; n];
        for &(t, h) in &self.edges {
            adj[t][h] += 1;
            adj[h][t] += 1;
        }
        adj
    }

    /// Edges incident to `v`, as ids.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].0 == v || self.edges[i].1 == v)
            .collect()
    }

    /// Vertices touched by the edges in `mask`, ascending.
    pub fn endpoints(&self, mask: EdgeMask) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for i in mask_iter(mask) {
            let (t, h) = self.edges[i];
            set.insert(t);
            set.insert(h);
        }
        set.into_iter().collect()
    }

    /// Find the id of an edge joining `u` and `v` (either orientation).
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(t, h)| (t == u && h == v) || (t == v && h == u))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={} E=[", self.vertex_count)?;
        for (i, (t, h)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}-{h}")?;
        }
        write!(f, "]")
    }
}

pub fn full_mask(len: usize) -> EdgeMask {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

pub fn mask_of(ids: &[usize]) -> EdgeMask {
    ids.iter().fold(0, |m, &i| m | 1u128 << i)
}

pub fn mask_iter(mask: EdgeMask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Union-find with rollback (union by size, no path compression).
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(rb);
        true
    }

    pub(crate) fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub(crate) fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            let rb = self.history.pop().unwrap();
            let ra = self.parent[rb];
            self.size[ra] -= self.size[rb];
            self.parent[rb] = rb;
        }
    }
}

// ---------------------------------------------------------------------------
// Circulants, completion, decompletion
// ---------------------------------------------------------------------------

/// Parameters of a 4-regular circulant C_n(j,k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantSpec {
    pub n: usize,
    pub j: usize,
    pub k: usize,
}

impl CirculantSpec {
    pub fn new(n: usize, j: usize, k: usize) -> Result<Self, GraphError> {
        let spec = CirculantSpec { n, j, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let CirculantSpec { n, j, k } = *self;
        let fail = |reason: &str| {
            Err(GraphError::InvalidCirculant {
                n,
                j,
                k,
                reason: reason.to_string(),
            })
        };
        if n < 5 {
            return fail("n must be at least 5");
        }
        if j < 1 || j >= k {
            return fail("gaps must satisfy 1 <= j < k");
        }
        if k > n / 2 {
            return fail("gap k exceeds floor(n/2)");
        }
        if 2 * k == n {
            return fail("k = n/2 (graph would not be 4-regular)");
        }
        if 2 * j == n {
            return fail("j = n/2 (graph would not be 4-regular)");
        }
        if j + k == n {
            return fail("j = n-k (graph would not be 4-regular)");
        }
        Ok(())
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}({},{})", self.n, self.j, self.k)
    }
}

/// C_n(j,k) on vertices 0..n-1: edges (i, i+j) for ascending i, then
/// (i, i+k) for ascending i.
pub fn make_circulant(spec: CirculantSpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let n = spec.n;
    let mut edges = Vec::with_capacity(2 * n);
    for gap in [spec.j, spec.k] {
        for i in 0..n {
            edges.push((i, (i + gap) % n));
        }
    }
    Graph::new(n, edges)
}

/// Remove vertex `v` from a connected 4-regular graph.
pub fn decomplete(g: &Graph, v: usize) -> Result<Graph, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            vertex_count: g.vertex_count(),
        });
    }
    for (vertex, &degree) in g.degrees().iter().enumerate() {
        if degree != 4 {
            return Err(GraphError::NotFourRegular { vertex, degree });
        }
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let out = g.without_vertex(v)?;
    if !out.is_connected() {
        return Err(GraphError::DisconnectedDecompletion(v));
    }
    Ok(out)
}

/// Add one vertex joined to each degree-3 vertex, producing a 4-regular graph.
pub fn complete(g: &Graph) -> Result<Graph, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let deg = g.degrees();
    let mut threes = Vec::new();
    for (v, &d) in deg.iter().enumerate() {
        match d {
            3 => threes.push(v),
            4 => {}
            _ => {
                return Err(GraphError::NotCompletable(format!(
                    "vertex {v} has degree {d}; only degrees 3 and 4 are completable"
                )))
            }
        }
    }
    if threes.len() != 4 {
        return Err(GraphError::NotCompletable(format!(
            "need exactly four degree-3 vertices, found {}",
            threes.len()
        )));
    }
    let new_vertex = g.vertex_count();
    let mut edges = g.edges().to_vec();
    edges.extend(threes.iter().map(|&v| (new_vertex, v)));
    Graph::new(new_vertex + 1, edges)
}

/// C_n(j,k) with vertex 0 removed.
pub fn decompleted_circulant(spec: CirculantSpec) -> Result<Graph, GraphError> {
    decomplete(&make_circulant(spec)?, 0)
}

/// Vertex-deleted (V-1) x E incidence matrix: +1 at the tail, -1 at the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIncidenceMatrix {
    /// Vertex id of each row.
    pub rows: Vec<usize>,
    pub cols: usize,
    pub entries: Vec<Vec<i8>>,
}

pub fn incidence_matrix(
    g: &Graph,
    removed_vertex: usize,
) -> Result<SignedIncidenceMatrix, GraphError> {
    if removed_vertex >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: removed_vertex,
            vertex_count: g.vertex_count(),
        });
    }
    let rows: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| v != removed_vertex)
        .collect();
    let mut entries = vec![vec![0i8; g.edge_count()]; rows.len()];
    for (r, &v) in rows.iter().enumerate() {
        for (e, &(t, h)) in g.edges().iter().enumerate() {
            if t == v {
                entries[r][e] = 1;
            } else if h == v {
                entries[r][e] = -1;
            }
        }
    }
    Ok(SignedIncidenceMatrix {
        rows,
        cols: g.edge_count(),
        entries,
    })
}

// ---------------------------------------------------------------------------
// Set partitions and spanning forests
// ---------------------------------------------------------------------------

/// Partition of a subset of vertices. Canonical: vertices ascending within a
/// part, parts ordered by their minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    parts: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        for p in &parts {
            if p.is_empty() {
                return Err(GraphError::InvalidPartition("empty part".into()));
            }
            for w in p.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {} repeated",
                        w[0]
                    )));
                }
            }
            for &v in p {
                if !seen.insert(v) {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} in two parts"
                    )));
                }
            }
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Ok(SetPartition { parts })
    }

    /// Partition with every vertex in its own part.
    pub fn singletons(vertices: &[usize]) -> Self {
        SetPartition::new(vertices.iter().map(|&v| vec![v]).collect())
            .expect("distinct vertices")
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All vertices mentioned, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }

    /// Apply a vertex relabelling and re-canonicalize.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Result<Self, GraphError> {
        SetPartition::new(
            self.parts
                .iter()
                .map(|p| p.iter().map(|&v| f(v)).collect())
                .collect(),
        )
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            write!(f, "{{")?;
            for (i, v) in p.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = GraphError;

    /// Parses the display form, e.g. `{0,3}{1}{2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |r: &str| GraphError::InvalidPartition(format!("{s:?}: {r}"));
        let mut parts = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(|| bad("expected '{'"))?;
            let end = body.find('}').ok_or_else(|| bad("unclosed part"))?;
            let part = body[..end]
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad("bad vertex")))
                .collect::<Result<Vec<_>, _>>()?;
            parts.push(part);
            rest = body[end + 1..].trim_start();
        }
        SetPartition::new(parts)
    }
}

/// All set partitions of `items` (Bell-number many), each canonical.
pub fn all_partitions(items: &[usize]) -> Vec<SetPartition> {
    fn rec(items: &[usize], i: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        if i == items.len() {
            out.push(SetPartition::new(cur.clone()).expect("disjoint by construction"));
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[i]);
            rec(items, i + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[i]]);
        rec(items, i + 1, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(items, 0, &mut Vec::new(), &mut out);
    out
}

/// Spanning forests whose trees are in bijection with the parts of `p`.
pub fn enumerate_forests(g: &Graph, p: &SetPartition) -> Vec<EdgeMask> {
    enumerate_forests_in(g, g.all_edges(), p)
}

/// As [`enumerate_forests`], on the spanning subgraph with edges `allowed`.
pub fn enumerate_forests_in(g: &Graph, allowed: EdgeMask, p: &SetPartition) -> Vec<EdgeMask> {
    let mut out = Vec::new();
    for_each_forest(g, allowed, p, |f| out.push(f));
    out
}

/// Visit the forests of [`enumerate_forests_in`] without collecting them.
pub fn for_each_forest(g: &Graph, allowed: EdgeMask, p: &SetPartition, mut visit: impl FnMut(EdgeMask)) {
    let n = g.vertex_count();
    if p.vertices().iter().any(|&v| v >= n) || p.len() > n {
        return;
    }
    if p.is_empty() {
        if n == 0 {
            visit(0);
        }
        return;
    }
    let edges: Vec<usize> = mask_iter(allowed & g.all_edges()).collect();
    let need = n - p.len();
    let mut label = vec![usize::MAX; n];
    for (i, part) in p.parts().iter().enumerate() {
        for &v in part {
            label[v] = i;
        }
    }
    let mut st = ForestSearch {
        g,
        edges: &edges,
        parts: p.parts(),
        dsu: Dsu::new(n),
        root_label: label,
        need,
    };
    st.rec(0, 0, 0, &mut visit);
}

struct ForestSearch<'a> {
    g: &'a Graph,
    edges: &'a [usize],
    parts: &'a [Vec<usize>],
    dsu: Dsu,
    /// Part label carried by each root (usize::MAX when unlabelled).
    root_label: Vec<usize>,
    need: usize,
}

impl ForestSearch<'_> {
    fn rec(&mut self, idx: usize, chosen: usize, mask: EdgeMask, visit: &mut impl FnMut(EdgeMask)) {
        if chosen == self.need {
            let ok = self.parts.iter().all(|part| {
                let r = self.dsu.find(part[0]);
                part.iter().all(|&v| self.dsu.find(v) == r)
            });
            if ok {
                visit(mask);
            }
            return;
        }
        if self.edges.len() - idx < self.need - chosen {
            return;
        }
        let e = self.edges[idx];
        let (t, h) = self.g.edge(e);
        let (rt, rh) = (self.dsu.find(t), self.dsu.find(h));
        if rt != rh {
            let (lt, lh) = (self.root_label[rt], self.root_label[rh]);
            if lt == usize::MAX || lh == usize::MAX || lt == lh {
                let cp = self.dsu.checkpoint();
                self.dsu.union(t, h);
                let r = self.dsu.find(t);
                let old = self.root_label[r];
                self.root_label[r] = if lt != usize::MAX { lt } else { lh };
                self.rec(idx + 1, chosen + 1, mask | 1u128 << e, visit);
                self.root_label[r] = old;
                self.dsu.rollback(cp);
            }
        }
        self.rec(idx + 1, chosen, mask, visit);
    }
}

/// True iff `forest` is a spanning forest of `g` whose trees are in
/// bijection with the parts of `p`.
pub fn is_partition_forest(g: &Graph, forest: EdgeMask, p: &SetPartition) -> bool {
    let n = g.vertex_count();
    if p.vertices().iter().any(|&v| v >= n) {
        return false;
    }
    let mut dsu = Dsu::new(n);
    for e in mask_iter(forest) {
        let (t, h) = g.edge(e);
        if !dsu.union(t, h) {
            return false;
        }
    }
    let mut owner = vec![usize::MAX; n];
    for (i, part) in p.parts().iter().enumerate() {
        for &v in part {
            let r = dsu.find(v);
            if owner[r] != usize::MAX && owner[r] != i {
                return false;
            }
            owner[r] = i;
        }
    }
    (0..n).all(|v| owner[dsu.find(v)] != usize::MAX)
}

/// Number of splittings of `allowed` into a `first`-forest and a
/// `second`-forest.
pub fn forest_pair_count(g: &Graph, allowed: EdgeMask, first: &SetPartition, second: &SetPartition) -> u64 {
    let allowed = allowed & g.all_edges();
    let mut count = 0;
    for_each_forest(g, allowed, first, |f| {
        if is_partition_forest(g, allowed & !f, second) {
            count += 1;
        }
    });
    count
}

// ---------------------------------------------------------------------------
// Isomorphism (small instances)
// ---------------------------------------------------------------------------

/// Backtracking isomorphism test on multiplicity adjacency matrices with
/// degree and neighbour-degree pruning. Intended for graphs with a few
/// dozen vertices.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (adj_a, adj_b) = (a.adjacency(), b.adjacency());
    let sig = |adj: &Vec<Vec<u32>>, deg: &Vec<usize>, v: usize| {
        let mut nd: Vec<(usize, u32)> = (0..adj.len())
            .filter(|&u| adj[v][u] > 0)
            .map(|u| (deg[u], adj[v][u]))
            .collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let (deg_a, deg_b) = (a.degrees(), b.degrees());
    let sig_a: Vec<_> = (0..n).map(|v| sig(&adj_a, &deg_a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| sig(&adj_b, &deg_b, v)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    // Map vertices of `a` in BFS order so each new vertex has mapped neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for start in 0..n {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        order.push(start);
        let mut qi = order.len() - 1;
        while qi < order.len() {
            let v = order[qi];
            qi += 1;
            for u in 0..n {
                if adj_a[v][u] > 0 && !placed[u] {
                    placed[u] = true;
                    order.push(u);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        order: &[usize],
        adj_a: &[Vec<u32>],
        adj_b: &[Vec<u32>],
        sig_a: &[(usize, Vec<(usize, u32)>)],
        sig_b: &[(usize, Vec<(usize, u32)>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for w in 0..adj_b.len() {
            if used[w] || sig_a[v] != sig_b[w] || adj_a[v][v] != adj_b[w][w] {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&u| adj_a[v][u] == adj_b[w][map[u]]);
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if rec(i + 1, order, adj_a, adj_b, sig_a, sig_b, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    rec(0, &order, &adj_a, &adj_b, &sig_a, &sig_b, &mut map, &mut used)
}

// ---------------------------------------------------------------------------
// Descriptors and files
// ---------------------------------------------------------------------------

/// Resolve `circulant:n:j,k`, `circulant-decompleted:n:j,k`, or a path to a
/// JSON graph file.
pub fn load_graph(descriptor: &str) -> Result<Graph, GraphError> {
    let bad = |reason: String| GraphError::BadDescriptor {
        descriptor: descriptor.to_string(),
        reason,
    };
    if let Some((kind, rest)) = descriptor.split_once(':') {
        if kind == "circulant" || kind == "circulant-decompleted" {
            let (n, gaps) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected n:j,k".into()))?;
            let (j, k) = gaps
                .split_once(',')
                .ok_or_else(|| bad("expected gaps j,k".into()))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| bad(format!("{s:?}: {e}")))
            };
            let spec = CirculantSpec::new(parse(n)?, parse(j)?, parse(k)?)?;
            return if kind == "circulant" {
                make_circulant(spec)
            } else {
                decompleted_circulant(spec)
            };
        }
    }
    let text = std::fs::read_to_string(Path::new(descriptor)).map_err(|e| bad(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn circulant_5_1_2_is_k5() {
        let g = make_circulant(CirculantSpec::new(5, 1, 2).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 10);
        let adj = g.adjacency();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(adj[u][v], u32::from(u != v));
            }
        }
    }

    #[test]
    fn circulant_edge_order_and_regularity() {
        let g = make_circulant(CirculantSpec::new(8, 1, 3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert_eq!(g.edge(0), (0, 1));
        assert_eq!(g.edge(7), (7, 0));
        assert_eq!(g.edge(8), (0, 3));
        assert_eq!(g.edge(15), (7, 2));
    }

    #[test]
    fn circulant_rejects_half_gap() {
        let err = CirculantSpec::new(6, 1, 3).unwrap_err();
        assert!(err.to_string().contains("k = n/2"), "{err}");
        assert!(CirculantSpec::new(4, 1, 2).is_err());
        assert!(CirculantSpec::new(9, 3, 3).is_err());
        assert!(CirculantSpec::new(9, 1, 5).is_err());
    }

    #[test]
    fn decomplete_k5_gives_k4() {
        let k5 = make_circulant(CirculantSpec::new(5, 1, 2).unwrap()).unwrap();
        let k4 = decomplete(&k5, 0).unwrap();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn decomplete_c8_1_3_degrees() {
        let g = decompleted_circulant(CirculantSpec::new(8, 1, 3).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, vec![3, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn decomplete_rejects_non_regular() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            decomplete(&path, 0),
            Err(GraphError::NotFourRegular { .. })
        ));
    }

    #[test]
    fn complete_k4_and_round_trip() {
        let k5 = make_circulant(CirculantSpec::new(5, 1, 2).unwrap()).unwrap();
        let k4 = decomplete(&k5, 0).unwrap();
        assert!(is_isomorphic(&complete(&k4).unwrap(), &k5));
        let c8 = make_circulant(CirculantSpec::new(8, 1, 3).unwrap()).unwrap();
        let back = complete(&decomplete(&c8, 0).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &c8));
        assert!(matches!(complete(&c8), Err(GraphError::NotCompletable(_))));
    }

    #[test]
    fn incidence_examples() {
        let m = incidence_matrix(&triangle(), 2).unwrap();
        assert_eq!(m.rows, vec![0, 1]);
        for c in 0..3 {
            let nz = m.entries.iter().filter(|r| r[c] != 0).count();
            assert!(nz <= 2);
        }
        let single = Graph::new(2, vec![(0, 1)]).unwrap();
        let m = incidence_matrix(&single, 1).unwrap();
        assert_eq!(m.entries, vec![vec![1]]);
        // Full incidence (remove nothing) has zero column sums: check via two removals.
        let g = make_circulant(CirculantSpec::new(7, 1, 3).unwrap()).unwrap();
        let m = incidence_matrix(&g, 0).unwrap();
        for e in 0..g.edge_count() {
            let s: i32 = m.entries.iter().map(|r| r[e] as i32).sum();
            let (t, h) = g.edge(e);
            let expected = if t == 0 { -1 } else if h == 0 { 1 } else { 0 };
            assert_eq!(s, expected);
        }
    }

    #[test]
    fn forests_of_triangle() {
        let g = triangle();
        let one = SetPartition::new(vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(enumerate_forests(&g, &one).len(), 3);
        let split = SetPartition::new(vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(enumerate_forests(&g, &split), vec![0b010]);
        let all = SetPartition::singletons(&[0, 1, 2]);
        assert_eq!(enumerate_forests(&g, &all), vec![0]);
    }

    #[test]
    fn partition_canonical_form_and_parse() {
        let p = SetPartition::new(vec![vec![5, 2], vec![1], vec![7, 3]]).unwrap();
        assert_eq!(p.to_string(), "{1}{2,5}{3,7}");
        assert_eq!("{1}{2,5}{3,7}".parse::<SetPartition>().unwrap(), p);
        assert!(SetPartition::new(vec![vec![1, 2], vec![2]]).is_err());
        assert_eq!(all_partitions(&[0, 1, 2, 3]).len(), 15);
    }

    #[test]
    fn zigzag_decompletions_are_isomorphic() {
        for n in 5..10 {
            let g = make_circulant(CirculantSpec::new(n, 1, 2).unwrap()).unwrap();
            let base = decomplete(&g, 0).unwrap();
            for v in 1..n {
                assert!(is_isomorphic(&base, &decomplete(&g, v).unwrap()));
            }
        }
    }

    #[test]
    fn json_round_trip_preserves_edge_ids() {
        let g = decompleted_circulant(CirculantSpec::new(9, 2, 3).unwrap()).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with("{\"vertex_count\":8,\"edges\":[["));
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"vertex_count":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn descriptors() {
        let g = load_graph("circulant-decompleted:5:1,2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        let g = load_graph("circulant:8:1,3").unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!(load_graph("circulant:6:1,3").is_err());
        assert!(load_graph("circulant:x").is_err());
    }
}
