//! Kirchhoff, Dodgson and spanning-forest polynomials, the 5-invariant and
//! single steps of denominator reduction.
//!
//! The matrix behind everything is
//!
//! ```text
//!     M = [ Λ    Eᵀ ]      Λ = diag(a_0 .. a_{E-1})
//!         [ -E   0  ]      E = incidence matrix minus the highest vertex row
//! ```
//!
//! with edge rows/columns first. Dodgson polynomials are minors of M. They
//! are expanded here by enumerating pairs of spanning trees: deleting the
//! diagonal entries of a monomial S leaves a block anti-diagonal matrix
//! whose determinant is det E[:, R∖S] · det E[:, C∖S], so the coefficient
//! of S is (-1)^{Σ r(e)+c(e)} times two ±1 tree determinants. The plain
//! row-by-row determinant expansion is kept as an independent check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{discriminant_sqrt, AlgebraError, MultilinearPoly, Poly};
use crate::graph::{
    for_each_forest, mask_iter, Dsu, EdgeMask, Graph, GraphError, SetPartition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("graph is not connected")]
    Disconnected,
    #[error("malformed Dodgson spec: {0}")]
    BadSpec(String),
    #[error("edges must be distinct and valid: {0:?}")]
    BadEdges(Vec<usize>),
    #[error("no consistent forest decomposition: {0}")]
    NoDecomposition(String),
    #[error("edge {0} is not among the remaining edges")]
    NotRemaining(usize),
    #[error("symbolic determinant limited to {limit} rows, matrix has {rows}")]
    TooLarge { rows: usize, limit: usize },
}

/// Which rows and columns of M to delete, and which variables to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DodgsonSpec {
    pub rows: EdgeMask,
    pub cols: EdgeMask,
    pub zeroed: EdgeMask,
}

impl DodgsonSpec {
    pub fn new(rows: &[usize], cols: &[usize], zeroed: &[usize]) -> Self {
        use crate::graph::mask_of;
        DodgsonSpec {
            rows: mask_of(rows),
            cols: mask_of(cols),
            zeroed: mask_of(zeroed),
        }
    }

    pub fn kirchhoff() -> Self {
        DodgsonSpec {
            rows: 0,
            cols: 0,
            zeroed: 0,
        }
    }

    fn validate(&self, g: &Graph) -> Result<(), PolyError> {
        if self.rows.count_ones() != self.cols.count_ones() {
            return Err(PolyError::BadSpec(format!(
                "{} deleted rows but {} deleted columns",
                self.rows.count_ones(),
                self.cols.count_ones()
            )));
        }
        let all = g.all_edges();
        if (self.rows | self.cols | self.zeroed) & !all != 0 {
            return Err(PolyError::BadSpec("edge id out of range".into()));
        }
        Ok(())
    }

    /// Edges whose endpoints carry the forest partitions.
    pub fn boundary_edges(&self) -> EdgeMask {
        (self.rows | self.cols | self.zeroed) & !(self.rows & self.cols)
    }
}

/// A Dodgson polynomial with its global sign split off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dodgson {
    /// Leading coefficient positive (or zero polynomial).
    pub poly: MultilinearPoly,
    /// raw = sign · poly.
    pub sign: i8,
}

impl Dodgson {
    pub fn raw(&self) -> MultilinearPoly {
        if self.sign < 0 {
            self.poly.neg()
        } else {
            self.poly.clone()
        }
    }
}

/// Sum over spanning trees of the product of the edges not in the tree.
pub fn kirchhoff(g: &Graph) -> Result<MultilinearPoly, PolyError> {
    if !g.is_connected() {
        return Err(PolyError::Disconnected);
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let whole = SetPartition::new(vec![all])?;
    Ok(forest_poly(g, &whole))
}

/// Φ^P: sum over compatible spanning forests of the complement monomials.
pub fn forest_poly(g: &Graph, p: &SetPartition) -> MultilinearPoly {
    forest_poly_in(g, g.all_edges(), p)
}

/// Φ^P on the spanning subgraph with edge set `allowed`; variables keep
/// their ids in `g`.
pub fn forest_poly_in(g: &Graph, allowed: EdgeMask, p: &SetPartition) -> MultilinearPoly {
    let allowed = allowed & g.all_edges();
    let mut terms = Vec::new();
    for_each_forest(g, allowed, p, |f| terms.push((allowed & !f, 1)));
    MultilinearPoly::from_distinct_terms(allowed, terms)
}

/// Raw minor of M with the fixed layout, expanded over spanning-tree pairs.
pub fn dodgson_raw(g: &Graph, spec: &DodgsonSpec) -> Result<MultilinearPoly, PolyError> {
    spec.validate(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(PolyError::BadSpec("empty graph".into()));
    }
    let all = g.all_edges();
    let (rows_del, cols_del) = (spec.rows, spec.cols);
    let free = all & !(rows_del | cols_del);
    let only_cols = cols_del & !rows_del; // edges in R' but not free
    let only_rows = rows_del & !cols_del; // edges in C' but not free
    let forced = spec.zeroed & free;
    let universe = free;
    if n == 1 {
        // M reduces to Λ with rows/cols deleted.
        return Ok(if rows_del == cols_del {
            MultilinearPoly::from_distinct_terms(universe, vec![(free & !spec.zeroed, 1)])
        } else {
            MultilinearPoly::zero().with_universe(universe)
        });
    }
    let need = (n - 1)
        .checked_sub(only_cols.count_ones() as usize)
        .ok_or_else(|| PolyError::BadSpec("too many deleted rows".into()))?;
    let mut dsu_r = Dsu::new(n);
    let mut dsu_c = Dsu::new(n);
    for e in mask_iter(only_cols) {
        let (t, h) = g.edge(e);
        if !dsu_r.union(t, h) {
            return Ok(MultilinearPoly::zero().with_universe(universe));
        }
    }
    for e in mask_iter(only_rows) {
        let (t, h) = g.edge(e);
        if !dsu_c.union(t, h) {
            return Ok(MultilinearPoly::zero().with_universe(universe));
        }
    }
    // Parity of r(e)+c(e) for each free edge (positions among kept rows/cols).
    let pos_parity: Vec<u8> = (0..g.edge_count())
        .map(|e| {
            let below = (1u128 << e) - 1;
            let r = (below & !rows_del).count_ones();
            let c = (below & !cols_del).count_ones();
            ((r + c) & 1) as u8
        })
        .collect();
    let free_edges: Vec<usize> = mask_iter(free).collect();
    let mut out: Vec<(EdgeMask, i128)> = Vec::new();
    let mut search = PairSearch {
        g,
        free_edges: &free_edges,
        forced,
        dsu_r,
        dsu_c,
        need,
    };
    search.rec(0, 0, 0, &mut |tree: EdgeMask| {
        let s = free & !tree;
        let parity = mask_iter(s).fold(0u8, |acc, e| acc ^ pos_parity[e]);
        let dr = tree_incidence_det(g, tree | only_cols);
        let dc = tree_incidence_det(g, tree | only_rows);
        let mut c = (dr * dc) as i128;
        if parity == 1 {
            c = -c;
        }
        out.push((s, c));
    });
    Ok(MultilinearPoly::from_distinct_terms(universe, out))
}

struct PairSearch<'a> {
    g: &'a Graph,
    free_edges: &'a [usize],
    forced: EdgeMask,
    dsu_r: Dsu,
    dsu_c: Dsu,
    need: usize,
}

impl PairSearch<'_> {
    fn rec(&mut self, idx: usize, chosen: usize, tree: EdgeMask, visit: &mut impl FnMut(EdgeMask)) {
        if chosen == self.need {
            // Remaining forced edges would have to join the tree too.
            let rest: EdgeMask = self.free_edges[idx..]
                .iter()
                .fold(0, |m, &e| m | 1u128 << e);
            if rest & self.forced == 0 {
                visit(tree);
            }
            return;
        }
        if self.free_edges.len() - idx < self.need - chosen {
            return;
        }
        let e = self.free_edges[idx];
        let (t, h) = self.g.edge(e);
        let (cr, cc) = (self.dsu_r.checkpoint(), self.dsu_c.checkpoint());
        if self.dsu_r.find(t) != self.dsu_r.find(h) && self.dsu_c.find(t) != self.dsu_c.find(h) {
            self.dsu_r.union(t, h);
            self.dsu_c.union(t, h);
            self.rec(idx + 1, chosen + 1, tree | 1u128 << e, visit);
            self.dsu_r.rollback(cr);
            self.dsu_c.rollback(cc);
        }
        if self.forced >> e & 1 == 0 {
            self.rec(idx + 1, chosen, tree, visit);
        }
    }
}

/// det of the incidence matrix (highest vertex row removed) restricted to
/// the columns of a spanning tree, computed by peeling leaves.
fn tree_incidence_det(g: &Graph, tree: EdgeMask) -> i64 {
    let n = g.vertex_count();
    let root = n - 1;
    let mut rows: Vec<usize> = (0..root).collect();
    let mut cols: Vec<usize> = mask_iter(tree).collect();
    debug_assert_eq!(rows.len(), cols.len());
    let mut deg = vec![0usize; n];
    for &e in &cols {
        let (t, h) = g.edge(e);
        deg[t] += 1;
        deg[h] += 1;
    }
    let mut sign = 1i64;
    while !rows.is_empty() {
        let ri = rows
            .iter()
            .position(|&v| deg[v] == 1)
            .expect("a tree has a non-root leaf");
        let v = rows[ri];
        let ci = cols
            .iter()
            .position(|&e| {
                let (t, h) = g.edge(e);
                t == v || h == v
            })
            .expect("leaf edge");
        let e = cols[ci];
        let (t, h) = g.edge(e);
        let entry = if t == v { 1 } else { -1 };
        if (ri + ci) % 2 == 1 {
            sign = -sign;
        }
        sign *= entry;
        let other = if t == v { h } else { t };
        deg[v] -= 1;
        deg[other] -= 1;
        rows.remove(ri);
        cols.remove(ci);
    }
    sign
}

/// Dodgson polynomial, sign-normalized.
pub fn dodgson(g: &Graph, spec: &DodgsonSpec) -> Result<Dodgson, PolyError> {
    let (poly, sign) = dodgson_raw(g, spec)?.normalized();
    Ok(Dodgson { poly, sign })
}

/// Largest matrix the plain determinant expansion accepts.
pub const EXPANSION_LIMIT: usize = 24;

/// The same minor by direct row-by-row Laplace expansion, memoized on the
/// set of used columns. Independent of the tree-pair route; small graphs only.
pub fn dodgson_by_expansion(g: &Graph, spec: &DodgsonSpec) -> Result<MultilinearPoly, PolyError> {
    spec.validate(g)?;
    let e_count = g.edge_count();
    let n = g.vertex_count();
    let size = e_count + n - 1;
    if size - spec.rows.count_ones() as usize > EXPANSION_LIMIT {
        return Err(PolyError::TooLarge {
            rows: size,
            limit: EXPANSION_LIMIT,
        });
    }
    #[derive(Clone, Copy)]
    enum Entry {
        Const(i128),
        Var(usize),
    }
    // Build kept rows and columns of M.
    let root = n - 1;
    let row_ids: Vec<(bool, usize)> = (0..e_count)
        .filter(|&e| spec.rows >> e & 1 == 0)
        .map(|e| (true, e))
        .chain((0..root).map(|v| (false, v)))
        .collect();
    let col_ids: Vec<(bool, usize)> = (0..e_count)
        .filter(|&e| spec.cols >> e & 1 == 0)
        .map(|e| (true, e))
        .chain((0..root).map(|v| (false, v)))
        .collect();
    let inc = |v: usize, e: usize| -> i128 {
        let (t, h) = g.edge(e);
        if t == v {
            1
        } else if h == v {
            -1
        } else {
            0
        }
    };
    let entry = |r: (bool, usize), c: (bool, usize)| -> Option<Entry> {
        match (r, c) {
            ((true, e), (true, f)) => (e == f && spec.zeroed >> e & 1 == 0).then_some(Entry::Var(e)),
            ((true, e), (false, v)) => {
                let x = inc(v, e);
                (x != 0).then_some(Entry::Const(x))
            }
            ((false, v), (true, e)) => {
                let x = -inc(v, e);
                (x != 0).then_some(Entry::Const(x))
            }
            _ => None,
        }
    };
    let universe = g.all_edges() & !(spec.rows | spec.cols);
    if row_ids.len() != col_ids.len() {
        return Err(PolyError::BadSpec("non-square minor".into()));
    }
    let mut level: HashMap<u32, MultilinearPoly> = HashMap::from([(0u32, MultilinearPoly::one())]);
    for &r in &row_ids {
        let mut next: HashMap<u32, MultilinearPoly> = HashMap::new();
        for (used, poly) in &level {
            for (ci, &c) in col_ids.iter().enumerate() {
                if used >> ci & 1 == 1 {
                    continue;
                }
                let Some(x) = entry(r, c) else { continue };
                let inversions = (used >> ci).count_ones();
                let sign: i128 = if inversions % 2 == 1 { -1 } else { 1 };
                let term = match x {
                    Entry::Const(k) => poly.scale(sign * k)?,
                    Entry::Var(e) => poly.mul(&MultilinearPoly::var(e))?.scale(sign)?,
                };
                let key = used | 1 << ci;
                let slot = next.entry(key).or_insert_with(MultilinearPoly::zero);
                *slot = slot.add(&term)?;
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    let full = if col_ids.len() == 32 {
        u32::MAX
    } else {
        (1u32 << col_ids.len()) - 1
    };
    Ok(level
        .remove(&full)
        .unwrap_or_else(MultilinearPoly::zero)
        .with_universe(universe))
}

/// Forest partitions and signs with dodgson_raw = Σ sign·Φ^P on g∖(I∪J∪K).
pub fn dodgson_vs_forests(
    g: &Graph,
    spec: &DodgsonSpec,
) -> Result<Vec<(SetPartition, i8)>, PolyError> {
    let raw = dodgson_raw(g, spec)?;
    let allowed = g.all_edges() & !(spec.rows | spec.cols | spec.zeroed);
    let ends = g.endpoints(spec.boundary_edges());
    let n = g.vertex_count();
    let mut groups: HashMap<SetPartition, Vec<(EdgeMask, i128)>> = HashMap::new();
    for &(m, c) in raw.terms() {
        if m & !allowed != 0 {
            return Err(PolyError::NoDecomposition(format!(
                "monomial uses a deleted edge: {m:#x}"
            )));
        }
        let forest = allowed & !m;
        let mut dsu = Dsu::new(n);
        for e in mask_iter(forest) {
            let (t, h) = g.edge(e);
            dsu.union(t, h);
        }
        let roots_with_ends: Vec<usize> = ends.iter().map(|&v| dsu.find(v)).collect();
        if (0..n).any(|v| !roots_with_ends.contains(&dsu.find(v))) {
            return Err(PolyError::NoDecomposition(
                "a tree avoids every boundary vertex".into(),
            ));
        }
        let mut parts: HashMap<usize, Vec<usize>> = HashMap::new();
        for (&v, &r) in ends.iter().zip(&roots_with_ends) {
            parts.entry(r).or_default().push(v);
        }
        let p = SetPartition::new(parts.into_values().collect())?;
        groups.entry(p).or_default().push((m, c));
    }
    let mut out = Vec::new();
    for (p, terms) in groups {
        let c0 = terms[0].1;
        if c0.abs() != 1 || terms.iter().any(|t| t.1 != c0) {
            return Err(PolyError::NoDecomposition(format!(
                "coefficients within {p} are not a common ±1"
            )));
        }
        let phi = forest_poly_in(g, allowed, &p);
        let group = MultilinearPoly::from_distinct_terms(allowed, terms);
        if group != phi.scale(c0)? {
            return Err(PolyError::NoDecomposition(format!(
                "monomials of {p} differ from its forest polynomial"
            )));
        }
        out.push((p, c0 as i8));
    }
    out.sort();
    Ok(out)
}

/// Σ sign·Φ^P on the subgraph with edges `allowed`.
pub fn forest_combination(
    g: &Graph,
    allowed: EdgeMask,
    terms: &[(SetPartition, i8)],
) -> Result<MultilinearPoly, PolyError> {
    let mut acc = MultilinearPoly::zero().with_universe(allowed);
    for (p, s) in terms {
        acc = acc.add(&forest_poly_in(g, allowed, p).scale(*s as i128)?)?;
    }
    Ok(acc)
}

/// A 5-invariant with its global sign split off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveInvariant {
    pub poly: Poly,
    pub sign: i8,
}

/// ⁵Ψ(i,j,k,l,m): split Ψ^{ij,kl} = A·a_m + B and Ψ^{ik,jl} = C·a_m + D,
/// then take AD − BC. The relative sign comes from the minors themselves.
pub fn five_invariant(g: &Graph, edges: [usize; 5]) -> Result<FiveInvariant, PolyError> {
    let mut sorted = edges;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[4] >= g.edge_count() {
        return Err(PolyError::BadEdges(edges.to_vec()));
    }
    let [i, j, k, l, m] = edges;
    let f = dodgson_raw(g, &DodgsonSpec::new(&[i, j], &[k, l], &[]))?;
    let h = dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, l], &[]))?;
    let (a, b) = f.split_var(m);
    let (c, d) = h.split_var(m);
    let to = |p: &MultilinearPoly| Poly::from_multilinear(p);
    let value = to(&a)?.mul(&to(&d)?)?.sub(&to(&b)?.mul(&to(&c)?)?)?;
    let (poly, sign) = value.normalized();
    Ok(FiveInvariant { poly, sign })
}

/// D^j in denominator reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionState {
    pub step: usize,
    pub poly: Poly,
    pub remaining: Vec<usize>,
    pub history: Vec<usize>,
}

impl ReductionState {
    /// D^5 from the first five edges of `order`; the rest stay pending.
    pub fn start(g: &Graph, order: &[usize]) -> Result<Self, PolyError> {
        if order.len() < 5 {
            return Err(PolyError::BadEdges(order.to_vec()));
        }
        let five = [order[0], order[1], order[2], order[3], order[4]];
        let inv = five_invariant(g, five)?;
        let remaining = (0..g.edge_count()).filter(|e| !five.contains(e)).collect();
        Ok(ReductionState {
            step: 5,
            poly: inv.poly,
            remaining,
            history: five.to_vec(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// The variable does not occur; the next polynomial is zero.
    Absent,
    /// Degree one: the next polynomial is the linear coefficient.
    Linear,
    /// Degree two with a square discriminant.
    Quadratic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub kind: StepKind,
    /// Contents of the linear coefficient and the constant part.
    pub content_linear: i128,
    pub content_constant: i128,
}

/// Reduce `edge`: `Ok(None)` when D^j does not factor into two factors
/// linear in that variable.
pub fn reduce_step(
    state: &ReductionState,
    edge: usize,
) -> Result<Option<(ReductionState, StepReport)>, PolyError> {
    let Some(pos) = state.remaining.iter().position(|&e| e == edge) else {
        return Err(PolyError::NotRemaining(edge));
    };
    let coeffs = state.poly.coefficients_in(edge);
    let get = |i: usize| coeffs.get(i).cloned().unwrap_or_default();
    if coeffs.len() > 3 {
        return Ok(None);
    }
    let (a2, a1, a0) = (get(2), get(1), get(0));
    let (kind, next) = if a2.is_zero() {
        if a1.is_zero() {
            (StepKind::Absent, Poly::zero())
        } else {
            (StepKind::Linear, a1.clone())
        }
    } else {
        let disc = a1.mul(&a1)?.sub(&a2.mul(&a0)?.scale(4)?)?;
        let Some(s) = discriminant_sqrt(&disc) else {
            return Ok(None);
        };
        // 4·A2·D = (2·A2·x + A1 - s)(2·A2·x + A1 + s)
        let x = Poly::var(edge)?;
        let lin = a2.scale(2)?.mul(&x)?.add(&a1)?;
        let lhs = lin.sub(&s)?.mul(&lin.add(&s)?)?;
        if lhs != state.poly.scale(4)?.mul(&a2)? {
            return Ok(None);
        }
        (StepKind::Quadratic, s)
    };
    let mut remaining = state.remaining.clone();
    remaining.remove(pos);
    let mut history = state.history.clone();
    history.push(edge);
    let report = StepReport {
        kind,
        content_linear: a1.content(),
        content_constant: a0.content(),
    };
    Ok(Some((
        ReductionState {
            step: state.step + 1,
            poly: next.normalized().0,
            remaining,
            history,
        },
        report,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{decompleted_circulant, CirculantSpec};

    fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn ml(s: &str) -> MultilinearPoly {
        s.parse().unwrap()
    }

    #[test]
    fn kirchhoff_small() {
        assert_eq!(
            kirchhoff(&triangle()).unwrap(),
            ml("+ 1·x_{0} + 1·x_{1} + 1·x_{2}")
        );
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(kirchhoff(&c4).unwrap().len(), 4);
        let k4 = decompleted_circulant(CirculantSpec::new(5, 1, 2).unwrap()).unwrap();
        let psi = kirchhoff(&k4).unwrap();
        assert_eq!(psi.len(), 16);
        assert!(psi.terms().iter().all(|&(m, c)| m.count_ones() == 3 && c == 1));
        let two = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(kirchhoff(&two), Err(PolyError::Disconnected));
    }

    #[test]
    fn dodgson_examples() {
        let t = triangle();
        let d = dodgson(&t, &DodgsonSpec::new(&[0], &[0], &[])).unwrap();
        assert_eq!(d.poly, MultilinearPoly::one());
        let d = dodgson(&t, &DodgsonSpec::new(&[], &[], &[0])).unwrap();
        assert_eq!(d.poly, ml("+ 1·x_{1} + 1·x_{2}"));
        assert_eq!(d.sign, 1);
        assert!(dodgson(&t, &DodgsonSpec::new(&[0, 1], &[0], &[])).is_err());
    }

    #[test]
    fn tree_pairs_match_expansion_on_k4() {
        let k4 = decompleted_circulant(CirculantSpec::new(5, 1, 2).unwrap()).unwrap();
        let specs = [
            DodgsonSpec::kirchhoff(),
            DodgsonSpec::new(&[0], &[2], &[1]),
            DodgsonSpec::new(&[0, 1], &[2, 3], &[]),
            DodgsonSpec::new(&[0, 4], &[4, 5], &[2]),
            DodgsonSpec::new(&[3], &[3], &[]),
        ];
        for spec in specs {
            assert_eq!(
                dodgson_raw(&k4, &spec).unwrap(),
                dodgson_by_expansion(&k4, &spec).unwrap(),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn forest_poly_examples() {
        let t = triangle();
        let singles = SetPartition::singletons(&[0, 1, 2]);
        assert_eq!(forest_poly(&t, &singles), ml("+ 1·x_{0}x_{1}x_{2}"));
        let one = SetPartition::new(vec![vec![1]]).unwrap();
        // A single part {v} on a connected graph gives spanning trees.
        assert_eq!(forest_poly(&t, &one), kirchhoff(&t).unwrap());
    }

    #[test]
    fn reduce_step_examples() {
        let p = |s: &str| s.parse::<Poly>().unwrap();
        let state = |poly: Poly| ReductionState {
            step: 5,
            poly,
            remaining: vec![0, 1, 2],
            history: vec![],
        };
        // (x0 + x1)(x0 + x2)
        let s = state(p("+ 1·x_{0}^2 + 1·x_{0}x_{1} + 1·x_{0}x_{2} + 1·x_{1}x_{2}"));
        let (next, rep) = reduce_step(&s, 0).unwrap().unwrap();
        assert_eq!(rep.kind, StepKind::Quadratic);
        assert_eq!(next.poly, p("+ 1·x_{1} - 1·x_{2}"));
        assert_eq!(next.remaining, vec![1, 2]);
        let s = state(p("+ 3·x_{0}x_{1} + 1·x_{2}"));
        let (next, rep) = reduce_step(&s, 0).unwrap().unwrap();
        assert_eq!((rep.kind, next.poly), (StepKind::Linear, p("+ 3·x_{1}")));
        let s = state(p("+ 1·x_{0}^2 + 1·x_{1}x_{2}"));
        assert_eq!(reduce_step(&s, 0).unwrap(), None);
        let s = state(p("+ 1·x_{1}x_{2}"));
        let (next, rep) = reduce_step(&s, 0).unwrap().unwrap();
        assert_eq!((rep.kind, next.poly.is_zero()), (StepKind::Absent, true));
        assert_eq!(reduce_step(&s, 7), Err(PolyError::NotRemaining(7)));
    }
}
