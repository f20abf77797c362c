//! Sparse multilinear polynomials with exact integer coefficients.
//!
//! Monomials are bitsets over edge ids. Terms are kept sorted under the
//! fixed order: lower variable ids are more significant, and a monomial
//! containing a variable beats one that lacks it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, Prime};
use crate::graph::{mask_iter, EdgeMask};

/// Total order on multilinear monomials used for sorting and sign choice.
pub fn monomial_cmp(a: EdgeMask, b: EdgeMask) -> Ordering {
    a.reverse_bits().cmp(&b.reverse_bits())
}

#[derive(Clone, Debug, Default)]
pub struct MultilinearPoly {
    universe: EdgeMask,
    /// Nonzero terms, descending in the term order.
    terms: Vec<(EdgeMask, i128)>,
}

impl PartialEq for MultilinearPoly {
    /// Equality of polynomial values; the declared universe is metadata.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultilinearPoly {}

impl MultilinearPoly {
    pub fn zero() -> Self {
        MultilinearPoly::default()
    }

    pub fn constant(c: i128) -> Self {
        MultilinearPoly::from_terms(0, [(0, c)]).expect("constant")
    }

    pub fn one() -> Self {
        MultilinearPoly::constant(1)
    }

    pub fn var(e: usize) -> Self {
        MultilinearPoly::from_terms(1u128 << e, [(1u128 << e, 1)]).expect("variable")
    }

    /// Collect like terms; the universe is widened to cover every support.
    pub fn from_terms(
        universe: EdgeMask,
        terms: impl IntoIterator<Item = (EdgeMask, i128)>,
    ) -> Result<Self, AlgebraError> {
        let mut acc: HashMap<EdgeMask, i128> = HashMap::new();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(0);
            *slot = slot.checked_add(c).ok_or(AlgebraError::CoefficientOverflow)?;
        }
        Ok(Self::from_map(universe, acc))
    }

    pub(crate) fn from_map(universe: EdgeMask, acc: HashMap<EdgeMask, i128>) -> Self {
        let mut terms: Vec<(EdgeMask, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| monomial_cmp(b.0, a.0));
        let support = terms.iter().fold(0, |u, &(m, _)| u | m);
        MultilinearPoly {
            universe: universe | support,
            terms,
        }
    }

    /// Terms already merged and nonzero, in any order.
    pub(crate) fn from_distinct_terms(universe: EdgeMask, mut terms: Vec<(EdgeMask, i128)>) -> Self {
        terms.retain(|&(_, c)| c != 0);
        terms.sort_unstable_by(|a, b| monomial_cmp(b.0, a.0));
        let support = terms.iter().fold(0, |u, &(m, _)| u | m);
        MultilinearPoly {
            universe: universe | support,
            terms,
        }
    }

    pub fn universe(&self) -> EdgeMask {
        self.universe
    }

    pub fn with_universe(mut self, universe: EdgeMask) -> Self {
        self.universe |= universe;
        self
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> EdgeMask {
        self.terms.iter().fold(0, |u, &(m, _)| u | m)
    }

    pub fn terms(&self) -> &[(EdgeMask, i128)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: EdgeMask) -> i128 {
        self.terms
            .binary_search_by(|probe| monomial_cmp(m, probe.0))
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn leading_coefficient(&self) -> i128 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Largest monomial degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.count_ones()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.0.count_ones());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn neg(&self) -> Self {
        MultilinearPoly {
            universe: self.universe,
            terms: self.terms.iter().map(|&(m, c)| (m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Result<Self, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| c.checked_mul(k).map(|c| (m, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(AlgebraError::CoefficientOverflow)?;
        Ok(MultilinearPoly::from_distinct_terms(self.universe, terms))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        MultilinearPoly::from_terms(
            self.universe | other.universe,
            self.terms.iter().chain(other.terms.iter()).copied(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    /// Symbolic product; only defined when the two supports are disjoint.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let overlap = self.support() & other.support();
        if overlap != 0 {
            return Err(AlgebraError::OverlappingSupport(mask_iter(overlap).collect()));
        }
        let mut acc: HashMap<EdgeMask, i128> = HashMap::with_capacity(self.len() * other.len());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                let c = c1.checked_mul(c2).ok_or(AlgebraError::CoefficientOverflow)?;
                let slot = acc.entry(m1 | m2).or_insert(0);
                *slot = slot.checked_add(c).ok_or(AlgebraError::CoefficientOverflow)?;
            }
        }
        Ok(MultilinearPoly::from_map(self.universe | other.universe, acc))
    }

    /// Write f = coef·x_e + rest; both parts are free of x_e.
    pub fn split_var(&self, e: usize) -> (Self, Self) {
        let bit = 1u128 << e;
        let (mut with, mut without) = (Vec::new(), Vec::new());
        for &(m, c) in &self.terms {
            if m & bit != 0 {
                with.push((m & !bit, c));
            } else {
                without.push((m, c));
            }
        }
        let u = self.universe & !bit;
        (
            MultilinearPoly::from_distinct_terms(u, with),
            MultilinearPoly::from_distinct_terms(u, without),
        )
    }

    /// Substitute x_e = 0.
    pub fn set_zero(&self, e: usize) -> Self {
        self.split_var(e).1
    }

    /// Evaluate mod p at a point given as residues indexed by variable id.
    pub fn eval_dense(&self, point: &[u32], p: Prime) -> Result<u32, AlgebraError> {
        if let Some(v) = mask_iter(self.universe).find(|&v| v >= point.len()) {
            return Err(AlgebraError::MissingAssignment(v));
        }
        let pm = p.as_u64();
        let mut acc = 0u64;
        for &(m, c) in &self.terms {
            let mut t = p.reduce(c) as u64;
            for v in mask_iter(m) {
                t = t * (point[v] as u64 % pm) % pm;
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % pm;
        }
        Ok(acc as u32)
    }

    /// Evaluate mod p at a sparse assignment; every universe variable must be set.
    pub fn eval(&self, point: &HashMap<usize, u32>, p: Prime) -> Result<u32, AlgebraError> {
        let top = mask_iter(self.universe).last().map_or(0, |v| v + 1);
        let mut dense = vec![0u32; top];
        for v in mask_iter(self.universe) {
            dense[v] = *point.get(&v).ok_or(AlgebraError::MissingAssignment(v))?;
        }
        self.eval_dense(&dense, p)
    }

    /// Copy with a positive leading coefficient, and the sign that was removed.
    pub fn normalized(&self) -> (Self, i8) {
        if self.leading_coefficient() < 0 {
            (self.neg(), -1)
        } else {
            (self.clone(), 1)
        }
    }

    /// Rename variables; `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self, AlgebraError> {
        let remap = |m: EdgeMask| mask_iter(m).fold(0u128, |acc, v| acc | 1u128 << map[v]);
        MultilinearPoly::from_terms(
            remap(self.universe),
            self.terms.iter().map(|&(m, c)| (remap(m), c)),
        )
    }
}

pub(crate) fn write_terms<'a, M: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, i128)>,
    mut write_mono: impl FnMut(&mut fmt::Formatter<'_>, &M) -> fmt::Result,
) -> fmt::Result {
    let mut any = false;
    for (i, (m, c)) in terms.enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        let sign = if c < 0 { '-' } else { '+' };
        write!(f, "{sign} {}·", c.unsigned_abs())?;
        write_mono(f, m)?;
        any = true;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for MultilinearPoly {
    /// `+ 1·x_{0}x_{2} - 3·x_{1} + 2·1`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(m, c)| (m, *c)), |f, &m| {
            if m == 0 {
                return write!(f, "1");
            }
            for v in mask_iter(m) {
                write!(f, "x_{{{v}}}")?;
            }
            Ok(())
        })
    }
}

/// Parse terms of the display form into (coefficient, [(var, exponent)]).
pub(crate) fn parse_terms(s: &str) -> Result<Vec<(i128, Vec<(usize, u32)>)>, AlgebraError> {
    let bad = |r: &str| AlgebraError::Parse(format!("{s:?}: {r}"));
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = s.split_whitespace().collect();
    if !tokens.len().is_multiple_of(2) {
        return Err(bad("expected sign/term pairs"));
    }
    let mut out = Vec::new();
    for pair in tokens.chunks(2) {
        let sign: i128 = match pair[0] {
            "+" => 1,
            "-" => -1,
            _ => return Err(bad("expected + or -")),
        };
        let (coef, mono) = pair[1].split_once('·').ok_or_else(|| bad("missing ·"))?;
        let c: i128 = coef.parse().map_err(|_| bad("bad coefficient"))?;
        let mut vars = Vec::new();
        if mono != "1" {
            let mut rest = mono;
            while !rest.is_empty() {
                let body = rest.strip_prefix("x_{").ok_or_else(|| bad("expected x_{"))?;
                let end = body.find('}').ok_or_else(|| bad("unclosed variable"))?;
                let v: usize = body[..end].parse().map_err(|_| bad("bad variable"))?;
                rest = &body[end + 1..];
                let mut exp = 1u32;
                if let Some(r) = rest.strip_prefix('^') {
                    let digits = r.chars().take_while(char::is_ascii_digit).count();
                    exp = r[..digits].parse().map_err(|_| bad("bad exponent"))?;
                    rest = &r[digits..];
                }
                vars.push((v, exp));
            }
        }
        out.push((sign * c, vars));
    }
    Ok(out)
}

impl FromStr for MultilinearPoly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        for (c, vars) in parse_terms(s)? {
            let mut m: EdgeMask = 0;
            for (v, e) in vars {
                if e != 1 || v >= 128 || m >> v & 1 == 1 {
                    return Err(AlgebraError::Parse(format!("{s:?}: term is not multilinear")));
                }
                m |= 1u128 << v;
            }
            terms.push((m, c));
        }
        MultilinearPoly::from_terms(0, terms)
    }
}
