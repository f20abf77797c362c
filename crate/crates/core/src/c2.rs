//! Point counting over 𝔽_p^N and the routes to c₂.
//!
//! The direct route never expands Ψ. At a point a, let Z be the set of
//! edges with a_e = 0. Only spanning trees containing Z contribute, so
//! Ψ(a) = 0 exactly when Z contains a cycle or when the reduced Laplacian of
//! G/Z with weights 1/a_e is singular. That matrix has one row per
//! component of Z minus one, so each point costs a small elimination.
//!
//! Polynomials that are already symbolic (Dodgson products, D^j) are
//! evaluated on the whole cube at once: a coefficient tensor is turned into
//! a value table one axis at a time.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{det_gf2, det_mod_in_place, AlgebraError, MultilinearPoly, Poly, Prime};
use crate::graph::{mask_iter, EdgeMask, Graph};
use crate::graph_polys::{
    dodgson_raw, reduce_step, DodgsonSpec, PolyError, ReductionState, StepKind,
};

pub const DEFAULT_POINT_BUDGET: u128 = 1 << 32;
/// Dense value tables are held in memory; cap their size separately.
pub const DENSE_TABLE_LIMIT: u128 = 1 << 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum C2Error {
    #[error("point budget exceeded: {p}^{vars} points > budget {budget}")]
    BudgetExceeded { p: u32, vars: usize, budget: u128 },
    #[error("[Ψ]_{p} = {count} is not divisible by p²")]
    NotDivisible { p: u32, count: u128 },
    #[error("graph must be connected with at least three vertices")]
    TooSmall,
    #[error("hypothesis 2 + |E| <= 2|V| fails: |E| = {edges}, |V| = {vertices}")]
    Hypothesis { edges: usize, vertices: usize },
    #[error("variant {variant} needs {needed} distinct edges, got {got:?}")]
    BadEdges {
        variant: u8,
        needed: usize,
        got: Vec<usize>,
    },
    #[error("degree condition fails: {vars} variables but degrees sum to {degree}")]
    DegreeCondition { vars: usize, degree: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Worker count and point budget for exhaustive counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountConfig {
    pub workers: usize,
    pub budget: u128,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_POINT_BUDGET,
        }
    }
}

impl CountConfig {
    /// Defaults overridden by C2KIT_WORKERS and C2KIT_POINT_BUDGET.
    pub fn from_env() -> Self {
        let mut cfg = CountConfig::default();
        if let Some(w) = std::env::var("C2KIT_WORKERS").ok().and_then(|s| s.parse().ok()) {
            cfg.workers = usize::max(w, 1);
        }
        if let Some(b) = std::env::var("C2KIT_POINT_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            cfg.budget = b;
        }
        cfg
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    fn check(&self, p: Prime, vars: usize) -> Result<u128, C2Error> {
        let over = C2Error::BudgetExceeded {
            p: p.get(),
            vars,
            budget: self.budget,
        };
        let total = (p.get() as u128)
            .checked_pow(vars as u32)
            .ok_or(over.clone())?;
        if total > self.budget {
            return Err(over);
        }
        Ok(total)
    }
}

/// A function on 𝔽_p^N whose zeros are counted.
pub trait PointFunction: Sync {
    type Scratch: Send;
    fn num_vars(&self) -> usize;
    fn scratch(&self) -> Self::Scratch;
    fn is_zero(&self, point: &[u32], scratch: &mut Self::Scratch) -> bool;
}

/// Number of zeros of `f` in 𝔽_p^N. The cube is split on the first few
/// coordinates into at least `workers` chunks; totals are exact sums.
pub fn count_points<F: PointFunction>(f: &F, p: Prime, cfg: &CountConfig) -> Result<u128, C2Error> {
    let n = f.num_vars();
    cfg.check(p, n)?;
    let pm = p.get() as u128;
    let mut split = 0usize;
    while split < n && pm.pow(split as u32) < cfg.workers as u128 {
        split += 1;
    }
    let chunks = pm.pow(split as u32) as u64;
    let run = || -> u128 {
        (0..chunks)
            .into_par_iter()
            .map(|c| count_chunk(f, p, split, c))
            .sum()
    };
    if cfg.workers <= 1 {
        return Ok((0..chunks).map(|c| count_chunk(f, p, split, c)).sum());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| C2Error::Pool(e.to_string()))?;
    Ok(pool.install(run))
}

fn count_chunk<F: PointFunction>(f: &F, p: Prime, split: usize, chunk: u64) -> u128 {
    let n = f.num_vars();
    let pm = p.get();
    let mut point = vec![0u32; n];
    let mut c = chunk;
    for x in point.iter_mut().take(split) {
        *x = (c % pm as u64) as u32;
        c /= pm as u64;
    }
    let mut scratch = f.scratch();
    let mut count = 0u128;
    loop {
        if f.is_zero(&point, &mut scratch) {
            count += 1;
        }
        // Odometer over the free coordinates.
        let mut i = split;
        loop {
            if i == n {
                return count;
            }
            point[i] += 1;
            if point[i] < pm {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Zero test for Ψ_G through the contracted weighted Laplacian.
pub struct KirchhoffZeros<'a> {
    g: &'a Graph,
    p: Prime,
    inverses: Vec<u32>,
}

pub struct KirchhoffScratch {
    parent: Vec<usize>,
    comp: Vec<usize>,
    bits: Vec<u128>,
    dense: Vec<u32>,
}

impl<'a> KirchhoffZeros<'a> {
    pub fn new(g: &'a Graph, p: Prime) -> Self {
        let small = p.get() <= 1 << 16;
        let inverses = if small {
            (0..p.get()).map(|x| if x == 0 { 0 } else { p.inv(x) }).collect()
        } else {
            Vec::new()
        };
        KirchhoffZeros { g, p, inverses }
    }

    fn inv(&self, x: u32) -> u32 {
        if self.inverses.is_empty() {
            self.p.inv(x)
        } else {
            self.inverses[x as usize]
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl PointFunction for KirchhoffZeros<'_> {
    type Scratch = KirchhoffScratch;

    fn num_vars(&self) -> usize {
        self.g.edge_count()
    }

    fn scratch(&self) -> KirchhoffScratch {
        let n = self.g.vertex_count();
        KirchhoffScratch {
            parent: vec![0; n],
            comp: vec![0; n],
            bits: vec![0; n],
            dense: vec![0; n * n],
        }
    }

    fn is_zero(&self, a: &[u32], s: &mut KirchhoffScratch) -> bool {
        let n = self.g.vertex_count();
        for (i, x) in s.parent.iter_mut().enumerate() {
            *x = i;
        }
        let edges = self.g.edges();
        for (e, &(t, h)) in edges.iter().enumerate() {
            if a[e] == 0 {
                let (rt, rh) = (find(&mut s.parent, t), find(&mut s.parent, h));
                if rt == rh {
                    return true;
                }
                s.parent[rt] = rh;
            }
        }
        let mut k = 0;
        for v in 0..n {
            let r = find(&mut s.parent, v);
            if r == v {
                s.comp[v] = k;
                k += 1;
            }
        }
        for v in 0..n {
            let r = find(&mut s.parent, v);
            s.comp[v] = s.comp[r];
        }
        if k == 1 {
            return false;
        }
        let m = k - 1; // drop the last component's row and column
        if self.p.get() == 2 {
            let rows = &mut s.bits[..m];
            rows.fill(0);
            for (e, &(t, h)) in edges.iter().enumerate() {
                if a[e] == 0 {
                    continue;
                }
                let (u, v) = (s.comp[t], s.comp[h]);
                if u == v {
                    continue;
                }
                if u < m {
                    rows[u] ^= 1 << u;
                    if v < m {
                        rows[u] ^= 1 << v;
                    }
                }
                if v < m {
                    rows[v] ^= 1 << v;
                    if u < m {
                        rows[v] ^= 1 << u;
                    }
                }
            }
            det_gf2(rows, m) == 0
        } else {
            let p = self.p;
            let lap = &mut s.dense[..m * m];
            lap.fill(0);
            for (e, &(t, h)) in edges.iter().enumerate() {
                if a[e] == 0 {
                    continue;
                }
                let (u, v) = (s.comp[t], s.comp[h]);
                if u == v {
                    continue;
                }
                let w = self.inv(a[e]);
                if u < m {
                    lap[u * m + u] = p.add(lap[u * m + u], w);
                }
                if v < m {
                    lap[v * m + v] = p.add(lap[v * m + v], w);
                }
                if u < m && v < m {
                    lap[u * m + v] = p.sub(lap[u * m + v], w);
                    lap[v * m + u] = p.sub(lap[v * m + u], w);
                }
            }
            det_mod_in_place(lap, m, p) == 0
        }
    }
}

/// Zero test evaluating det M at the point; slower reference evaluator.
pub struct MatrixZeros<'a> {
    g: &'a Graph,
    p: Prime,
}

impl<'a> MatrixZeros<'a> {
    pub fn new(g: &'a Graph, p: Prime) -> Self {
        MatrixZeros { g, p }
    }
}

impl PointFunction for MatrixZeros<'_> {
    type Scratch = Vec<u32>;

    fn num_vars(&self) -> usize {
        self.g.edge_count()
    }

    fn scratch(&self) -> Vec<u32> {
        let s = self.g.edge_count() + self.g.vertex_count() - 1;
        vec![0; s * s]
    }

    fn is_zero(&self, a: &[u32], buf: &mut Vec<u32>) -> bool {
        let e_count = self.g.edge_count();
        let root = self.g.vertex_count() - 1;
        let s = e_count + root;
        buf.fill(0);
        let p = self.p;
        for (e, &(t, h)) in self.g.edges().iter().enumerate() {
            buf[e * s + e] = a[e];
            for (v, x) in [(t, 1u32), (h, p.get() - 1)] {
                if v < root {
                    buf[e * s + e_count + v] = x % p.get();
                    buf[(e_count + v) * s + e] = p.neg(x % p.get());
                }
            }
        }
        det_mod_in_place(buf, s, p) == 0
    }
}

// ---------------------------------------------------------------------------
// Dense value tables
// ---------------------------------------------------------------------------

/// Values of a polynomial at every point of 𝔽_p^vars.len(); entry index is
/// Σ x_i p^i with x_i the value of vars[i].
fn dense_values(
    terms: impl Iterator<Item = (Vec<(usize, u32)>, i128)>,
    vars: &[usize],
    p: Prime,
) -> Result<Vec<u32>, C2Error> {
    let n = vars.len();
    let pm = p.get() as usize;
    let size = (pm as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > DENSE_TABLE_LIMIT {
        return Err(C2Error::BudgetExceeded {
            p: p.get(),
            vars: n,
            budget: DENSE_TABLE_LIMIT,
        });
    }
    let size = size as usize;
    let mut pos = std::collections::HashMap::new();
    for (i, &v) in vars.iter().enumerate() {
        pos.insert(v, i);
    }
    let strides: Vec<usize> = (0..n).map(|i| pm.pow(i as u32)).collect();
    let mut table = vec![0u32; size];
    for (mono, c) in terms {
        let mut idx = 0usize;
        for (v, e) in mono {
            let &i = pos.get(&v).ok_or(AlgebraError::MissingAssignment(v))?;
            // x^e agrees with x^{((e-1) mod (p-1)) + 1} on 𝔽_p.
            let r = (e as usize - 1) % (pm - 1) + 1;
            idx += r * strides[i];
        }
        table[idx] = p.add(table[idx], p.reduce(c));
    }
    transform_axes(&mut table, n, p);
    Ok(table)
}

fn transform_axes(table: &mut [u32], n: usize, p: Prime) {
    let pm = p.get() as usize;
    if pm == 2 {
        for i in 0..n {
            let bit = 1usize << i;
            for idx in 0..table.len() {
                if idx & bit != 0 {
                    table[idx] ^= table[idx ^ bit];
                }
            }
        }
        return;
    }
    let powers: Vec<Vec<u32>> = (0..pm as u32)
        .map(|x| (0..pm as u64).map(|k| p.pow(x, k)).collect())
        .collect();
    let mut fiber = vec![0u32; pm];
    for i in 0..n {
        let stride = pm.pow(i as u32);
        for base in 0..table.len() {
            if !(base / stride).is_multiple_of(pm) {
                continue;
            }
            for (k, f) in fiber.iter_mut().enumerate() {
                *f = table[base + k * stride];
            }
            for x in 0..pm {
                let mut acc = 0u64;
                for k in 0..pm {
                    acc += fiber[k] as u64 * powers[x][k] as u64;
                }
                table[base + x * stride] = (acc % pm as u64) as u32;
            }
        }
    }
}

pub fn multilinear_values(f: &MultilinearPoly, vars: &[usize], p: Prime) -> Result<Vec<u32>, C2Error> {
    dense_values(
        f.terms()
            .iter()
            .map(|&(m, c)| (mask_iter(m).map(|v| (v, 1)).collect(), c)),
        vars,
        p,
    )
}

pub fn poly_values(f: &Poly, vars: &[usize], p: Prime) -> Result<Vec<u32>, C2Error> {
    dense_values(
        f.terms().iter().map(|(m, c)| (m.vars().collect(), *c)),
        vars,
        p,
    )
}

fn zeros(table: &[u32]) -> u128 {
    table.iter().filter(|&&x| x == 0).count() as u128
}

/// [f]_p over the listed variables.
pub fn count_poly_zeros(f: &Poly, vars: &[usize], p: Prime) -> Result<u128, C2Error> {
    Ok(zeros(&poly_values(f, vars, p)?))
}

/// [f·g]_p over the listed variables, evaluating point-wise.
pub fn count_product_zeros(
    f: &MultilinearPoly,
    g: &MultilinearPoly,
    vars: &[usize],
    p: Prime,
) -> Result<u128, C2Error> {
    let (a, b) = (multilinear_values(f, vars, p)?, multilinear_values(g, vars, p)?);
    Ok(a.iter().zip(&b).filter(|&(&x, &y)| x == 0 || y == 0).count() as u128)
}

// ---------------------------------------------------------------------------
// Routes
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Dodgson1,
    Dodgson2,
    Five,
    Coeff,
    Denom,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Direct,
        Method::Dodgson1,
        Method::Dodgson2,
        Method::Five,
        Method::Coeff,
        Method::Denom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Dodgson1 => "dodgson1",
            Method::Dodgson2 => "dodgson2",
            Method::Five => "five",
            Method::Coeff => "coeff",
            Method::Denom => "denom",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown route {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2Result {
    pub value: u32,
    pub p: u32,
    pub method: Method,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<usize>>,
    pub elapsed_ms: f64,
}

fn result(value: u32, p: Prime, method: Method, g: &Graph, edges: Option<Vec<usize>>, t: Instant) -> C2Result {
    C2Result {
        value,
        p: p.get(),
        method,
        graph: g.to_string(),
        edges,
        elapsed_ms: t.elapsed().as_secs_f64() * 1e3,
    }
}

fn check_hypothesis(g: &Graph) -> Result<(), C2Error> {
    if 2 + g.edge_count() > 2 * g.vertex_count() {
        return Err(C2Error::Hypothesis {
            edges: g.edge_count(),
            vertices: g.vertex_count(),
        });
    }
    Ok(())
}

fn check_edges(g: &Graph, variant: u8, needed: usize, edges: &[usize]) -> Result<(), C2Error> {
    let mut s = edges.to_vec();
    s.sort_unstable();
    s.dedup();
    if edges.len() != needed || s.len() != needed || s.iter().any(|&e| e >= g.edge_count()) {
        return Err(C2Error::BadEdges {
            variant,
            needed,
            got: edges.to_vec(),
        });
    }
    Ok(())
}

fn other_edges(g: &Graph, used: &[usize]) -> Vec<usize> {
    (0..g.edge_count()).filter(|e| !used.contains(e)).collect()
}

/// [Ψ_G]_p by exhaustive evaluation.
pub fn kirchhoff_count(g: &Graph, p: Prime, cfg: &CountConfig) -> Result<u128, C2Error> {
    count_points(&KirchhoffZeros::new(g, p), p, cfg)
}

/// c₂ from the definition: [Ψ_G]_p / p² mod p.
pub fn c2_direct(g: &Graph, p: Prime, cfg: &CountConfig) -> Result<C2Result, C2Error> {
    let t = Instant::now();
    if g.vertex_count() < 3 || !g.is_connected() {
        return Err(C2Error::TooSmall);
    }
    let count = kirchhoff_count(g, p, cfg)?;
    let p2 = (p.get() as u128).pow(2);
    if count % p2 != 0 {
        return Err(C2Error::NotDivisible { p: p.get(), count });
    }
    let value = ((count / p2) % p.get() as u128) as u32;
    Ok(result(value, p, Method::Direct, g, None, t))
}

/// c₂ from a product of Dodgson polynomials (variants 1 and 2) or from the
/// 5-invariant (variant 3).
pub fn c2_dodgson(g: &Graph, p: Prime, variant: u8, edges: &[usize]) -> Result<C2Result, C2Error> {
    let t = Instant::now();
    check_hypothesis(g)?;
    let (needed, method) = match variant {
        1 => (3, Method::Dodgson1),
        2 => (4, Method::Dodgson2),
        3 => (5, Method::Five),
        _ => {
            return Err(C2Error::BadEdges {
                variant,
                needed: 0,
                got: edges.to_vec(),
            })
        }
    };
    check_edges(g, variant, needed, edges)?;
    let vars = other_edges(g, edges);
    let value = match variant {
        1 => {
            let [i, j, k] = [edges[0], edges[1], edges[2]];
            let f = dodgson_raw(g, &DodgsonSpec::new(&[i], &[j], &[k]))?;
            let h = dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, k], &[]))?;
            p.neg(p.reduce(count_product_zeros(&f, &h, &vars, p)? as i128))
        }
        2 => {
            let [i, j, k, l] = [edges[0], edges[1], edges[2], edges[3]];
            let f = dodgson_raw(g, &DodgsonSpec::new(&[i, j], &[k, l], &[]))?;
            let h = dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, l], &[]))?;
            p.reduce(count_product_zeros(&f, &h, &vars, p)? as i128)
        }
        _ => {
            let count = five_invariant_count(g, p, edges, &vars)?;
            p.neg(p.reduce(count as i128))
        }
    };
    Ok(result(value, p, method, g, Some(edges.to_vec()), t))
}

/// [⁵Ψ]_p computed from value tables of the four Dodgson factors, so the
/// product is never expanded.
fn five_invariant_count(g: &Graph, p: Prime, edges: &[usize], vars: &[usize]) -> Result<u128, C2Error> {
    let [i, j, k, l, m] = [edges[0], edges[1], edges[2], edges[3], edges[4]];
    let f = dodgson_raw(g, &DodgsonSpec::new(&[i, j], &[k, l], &[]))?;
    let h = dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, l], &[]))?;
    let (a, b) = f.split_var(m);
    let (c, d) = h.split_var(m);
    let tables = [&a, &b, &c, &d]
        .into_iter()
        .map(|x| multilinear_values(x, vars, p))
        .collect::<Result<Vec<_>, _>>()?;
    let pm = p.as_u64();
    let mut count = 0u128;
    for idx in 0..tables[0].len() {
        let ad = tables[0][idx] as u64 * tables[3][idx] as u64 % pm;
        let bc = tables[1][idx] as u64 * tables[2][idx] as u64 % pm;
        if ad == bc {
            count += 1;
        }
    }
    Ok(count)
}

/// [f·g]_2 as the parity of complementary monomial pairs.
pub fn c2_coeff_p2(f: &MultilinearPoly, g: &MultilinearPoly) -> Result<u32, C2Error> {
    coeff_in(f, g, f.universe() | g.universe())
}

/// As [`c2_coeff_p2`] with the variable set given explicitly.
fn coeff_in(f: &MultilinearPoly, g: &MultilinearPoly, universe: EdgeMask) -> Result<u32, C2Error> {
    let vars = universe.count_ones() as usize;
    let degree = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
    if f.is_zero() || g.is_zero() {
        return Ok(0);
    }
    if degree as usize != vars {
        return Err(C2Error::DegreeCondition { vars, degree });
    }
    let lookup: std::collections::HashMap<EdgeMask, i128> = g.terms().iter().copied().collect();
    let mut parity = 0i128;
    for &(m, c) in f.terms() {
        if let Some(&d) = lookup.get(&(universe & !m)) {
            parity ^= (c & 1) & (d & 1);
        }
    }
    Ok(parity as u32)
}

/// c₂ at p = 2 through the complementary-pair count. Three edges use the
/// variant-1 product, four edges the variant-2 product.
pub fn c2_coeff_route(g: &Graph, edges: &[usize]) -> Result<C2Result, C2Error> {
    let t = Instant::now();
    check_hypothesis(g)?;
    let universe = g.all_edges() & !crate::graph::mask_of(edges);
    let (f, h) = match edges.len() {
        3 => {
            check_edges(g, 1, 3, edges)?;
            let [i, j, k] = [edges[0], edges[1], edges[2]];
            (
                dodgson_raw(g, &DodgsonSpec::new(&[i], &[j], &[k]))?,
                dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, k], &[]))?,
            )
        }
        _ => {
            check_edges(g, 2, 4, edges)?;
            let [i, j, k, l] = [edges[0], edges[1], edges[2], edges[3]];
            (
                dodgson_raw(g, &DodgsonSpec::new(&[i, j], &[k, l], &[]))?,
                dodgson_raw(g, &DodgsonSpec::new(&[i, k], &[j, l], &[]))?,
            )
        }
    };
    let value = coeff_in(&f, &h, universe)?;
    Ok(result(value, Prime::TWO, Method::Coeff, g, Some(edges.to_vec()), t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Every edge of the order was reduced (one variable kept).
    FactoredToEnd,
    /// Some D^j had no factorization in the next variable.
    CannotBeFactored,
    /// Some D^j was zero.
    Zero,
    /// The next step would exceed the configured term limits.
    SizeLimit,
}

impl StopReason {
    pub fn describe(self) -> &'static str {
        match self {
            StopReason::FactoredToEnd => "factored to end",
            StopReason::CannotBeFactored => "cannot be factored",
            StopReason::Zero => "zero",
            StopReason::SizeLimit => "size limit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceLimits {
    /// Largest D^j kept symbolically.
    pub max_terms: usize,
    /// Largest |A1|² product attempted in a quadratic step.
    pub max_square_work: usize,
}

impl Default for ReduceLimits {
    fn default() -> Self {
        ReduceLimits {
            max_terms: 200_000,
            max_square_work: 20_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DenomOutcome {
    pub last: ReductionState,
    pub stop: StopReason,
    /// (j, number of terms of D^j, step kind that produced it).
    pub trace: Vec<(usize, usize, Option<StepKind>)>,
    /// (-1)^j [D^j]_p when the hypothesis holds.
    pub c2: Option<u32>,
}

/// Denominator reduction along `order` (first five edges seed D^5). The
/// final variable is never reduced: the count needs at least one.
pub fn denom_reduce(
    g: &Graph,
    order: &[usize],
    p: Prime,
    limits: &ReduceLimits,
) -> Result<DenomOutcome, C2Error> {
    let mut state = ReductionState::start(g, order)?;
    let mut trace = vec![(5, state.poly.len(), None)];
    let mut stop = StopReason::FactoredToEnd;
    let mut queue: Vec<usize> = order[5..].to_vec();
    queue.retain(|e| state.remaining.contains(e));
    for &edge in &queue {
        if state.poly.is_zero() {
            stop = StopReason::Zero;
            break;
        }
        if state.remaining.len() <= 1 {
            break;
        }
        let quad = state.poly.degree_in(edge) >= 2;
        if quad {
            let coeffs = state.poly.coefficients_in(edge);
            let len = |i: usize| coeffs.get(i).map_or(0, Poly::len);
            // Largest products formed by the step and its check.
            let work = [
                len(1).saturating_mul(len(1)),
                len(2).saturating_mul(len(0)),
                state.poly.len().saturating_mul(len(2)),
            ];
            if work.iter().any(|&w| w > limits.max_square_work) || state.poly.len() > limits.max_terms {
                stop = StopReason::SizeLimit;
                break;
            }
        }
        match reduce_step(&state, edge)? {
            None => {
                stop = StopReason::CannotBeFactored;
                break;
            }
            Some((next, report)) => {
                trace.push((next.step, next.poly.len(), Some(report.kind)));
                state = next;
                if state.poly.len() > limits.max_terms {
                    stop = StopReason::SizeLimit;
                    break;
                }
            }
        }
    }
    if state.poly.is_zero() {
        stop = StopReason::Zero;
    }
    let c2 = if 2 + g.edge_count() <= 2 * g.vertex_count() {
        let count = if state.poly.is_zero() {
            0 // p^{vars} with at least one variable left
        } else {
            count_poly_zeros(&state.poly, &state.remaining, p)?
        };
        let mut v = p.reduce(count as i128);
        if state.step % 2 == 1 {
            v = p.neg(v);
        }
        Some(v)
    } else {
        None
    };
    Ok(DenomOutcome {
        last: state,
        stop,
        trace,
        c2,
    })
}

/// c₂ by denominator reduction, as a result record.
pub fn c2_denom(g: &Graph, p: Prime, order: &[usize]) -> Result<C2Result, C2Error> {
    let t = Instant::now();
    check_hypothesis(g)?;
    let out = denom_reduce(g, order, p, &ReduceLimits::default())?;
    let value = out.c2.expect("hypothesis checked");
    Ok(result(value, p, Method::Denom, g, Some(order[..5].to_vec()), t))
}
