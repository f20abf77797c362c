//! General sparse integer polynomials, needed once products of Dodgson
//! polynomials share variables (5-invariants and denominator reduction).
//!
//! A monomial packs one 4-bit exponent per variable for up to 64 variables;
//! exponents are capped at 7 so the top bit of each nibble can flag overflow
//! after a plain integer add. Variable 0 sits in the most significant
//! nibble, so comparing the packed words is the lexicographic term order
//! that the multilinear type also uses.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::multilinear::{parse_terms, write_terms};
use super::{AlgebraError, MultilinearPoly, Prime};
use crate::graph::mask_iter;

pub const MAX_VARS: usize = 64;
pub const MAX_EXPONENT: u32 = 7;

const GUARD: u128 = 0x8888_8888_8888_8888_8888_8888_8888_8888;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u128; 2]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0]);

    fn slot(v: usize) -> (usize, u32) {
        (v / 32, (31 - (v % 32) as u32) * 4)
    }

    pub fn var(v: usize, exp: u32) -> Result<Self, AlgebraError> {
        if v >= MAX_VARS {
            return Err(AlgebraError::TooManyVariables(v));
        }
        if exp > MAX_EXPONENT {
            return Err(AlgebraError::ExponentOverflow);
        }
        let (w, s) = Self::slot(v);
        let mut m = Monomial::ONE;
        m.0[w] = (exp as u128) << s;
        Ok(m)
    }

    pub fn from_mask(mask: u128) -> Result<Self, AlgebraError> {
        let mut m = Monomial::ONE;
        for v in mask_iter(mask) {
            m = m.mul(&Monomial::var(v, 1)?)?;
        }
        Ok(m)
    }

    pub fn exponent(&self, v: usize) -> u32 {
        let (w, s) = Self::slot(v);
        ((self.0[w] >> s) & 0xf) as u32
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let m = [self.0[0] + other.0[0], self.0[1] + other.0[1]];
        if (m[0] | m[1]) & GUARD != 0 {
            return Err(AlgebraError::ExponentOverflow);
        }
        Ok(Monomial(m))
    }

    /// self / other when every exponent stays non-negative.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = [0u128; 2];
        for w in 0..2 {
            // Nibble-wise subtract: borrow would set a guard bit.
            let d = (self.0[w] | GUARD).wrapping_sub(other.0[w]);
            if (d & GUARD) != GUARD {
                return None;
            }
            out[w] = d & !GUARD;
        }
        Some(Monomial(out))
    }

    /// Exponents halved; `None` if some exponent is odd.
    pub fn halve(&self) -> Option<Self> {
        const LOW: u128 = 0x1111_1111_1111_1111_1111_1111_1111_1111;
        if (self.0[0] | self.0[1]) & LOW != 0 {
            return None;
        }
        Some(Monomial([self.0[0] >> 1, self.0[1] >> 1]))
    }

    pub fn degree(&self) -> u32 {
        self.vars().map(|(_, e)| e).sum()
    }

    /// (variable, exponent) pairs with positive exponent, ascending variable.
    pub fn vars(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..MAX_VARS)
            .filter(move |&v| self.0[v / 32] != 0)
            .map(move |v| (v, self.exponent(v)))
            .filter(|&(_, e)| e > 0)
    }

    /// Bitset of variables present.
    pub fn support(&self) -> u128 {
        self.vars().fold(0, |m, (v, _)| m | 1u128 << v)
    }

    /// Remove variable v, returning its exponent and the rest.
    pub fn strip(&self, v: usize) -> (u32, Self) {
        let (w, s) = Self::slot(v);
        let e = self.exponent(v);
        let mut m = *self;
        m.0[w] &= !(0xf << s);
        (e, m)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    /// Nonzero terms, strictly descending by monomial.
    terms: Vec<(Monomial, i128)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i128) -> Self {
        Poly::from_map(HashMap::from([(Monomial::ONE, c)]))
    }

    pub fn var(v: usize) -> Result<Self, AlgebraError> {
        Ok(Poly {
            terms: vec![(Monomial::var(v, 1)?, 1)],
        })
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, i128)>,
    ) -> Result<Self, AlgebraError> {
        let mut acc: HashMap<Monomial, i128> = HashMap::new();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(0);
            *slot = slot.checked_add(c).ok_or(AlgebraError::CoefficientOverflow)?;
        }
        Ok(Poly::from_map(acc))
    }

    fn from_map(acc: HashMap<Monomial, i128>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn from_multilinear(f: &MultilinearPoly) -> Result<Self, AlgebraError> {
        let terms = f
            .terms()
            .iter()
            .map(|&(m, c)| Ok((Monomial::from_mask(m)?, c)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        // Both types sort by the same order, so no re-sort is needed.
        Ok(Poly { terms })
    }

    /// Back to the multilinear type when every exponent is 0 or 1.
    pub fn to_multilinear(&self) -> Option<MultilinearPoly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mask = 0u128;
            for (v, e) in m.vars() {
                if e != 1 {
                    return None;
                }
                mask |= 1u128 << v;
            }
            out.push((mask, *c));
        }
        Some(MultilinearPoly::from_distinct_terms(0, out))
    }

    pub fn terms(&self) -> &[(Monomial, i128)] {
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

    pub fn leading_coefficient(&self) -> i128 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Variables that occur, as a bitset.
    pub fn support(&self) -> u128 {
        self.terms.iter().fold(0, |m, (mono, _)| m | mono.support())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|&(m, c)| (m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Ok(Poly::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| c.checked_mul(k).map(|c| (m, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(AlgebraError::CoefficientOverflow)?;
        Ok(Poly { terms })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        // Merge of two sorted lists.
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let c = a[i].1.checked_add(b[j].1).ok_or(AlgebraError::CoefficientOverflow)?;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Poly { terms: out })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let guess = self.len().saturating_mul(other.len()).min(1 << 16);
        let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(guess);
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                let c = c1.checked_mul(c2).ok_or(AlgebraError::CoefficientOverflow)?;
                let slot = acc.entry(m1.mul(&m2)?).or_insert(0);
                *slot = slot.checked_add(c).ok_or(AlgebraError::CoefficientOverflow)?;
            }
        }
        Ok(Poly::from_map(acc))
    }

    pub fn mul_term(&self, m: Monomial, c: i128) -> Result<Self, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|&(m1, c1)| Ok((m1.mul(&m)?, c1.checked_mul(c).ok_or(AlgebraError::CoefficientOverflow)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Poly { terms })
    }

    /// Coefficients of powers of x_v: result[i] multiplies x_v^i.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let mut out: Vec<Vec<(Monomial, i128)>> = Vec::new();
        for &(m, c) in &self.terms {
            let (e, rest) = m.strip(v);
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Vec::new());
            }
            out[e].push((rest, c));
        }
        // Stripping one variable preserves the relative order of the rest.
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    /// Evaluate mod p with residues indexed by variable id.
    pub fn eval_dense(&self, point: &[u32], p: Prime) -> Result<u32, AlgebraError> {
        let pm = p.as_u64();
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = p.reduce(*c) as u64;
            for (v, e) in m.vars() {
                let x = *point.get(v).ok_or(AlgebraError::MissingAssignment(v))?;
                t = t * p.pow(x, e as u64) as u64 % pm;
            }
            acc = (acc + t) % pm;
        }
        Ok(acc as u32)
    }

    pub fn normalized(&self) -> (Self, i8) {
        if self.leading_coefficient() < 0 {
            (self.neg(), -1)
        } else {
            (self.clone(), 1)
        }
    }

    /// Content: gcd of the absolute coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i128 {
        self.terms.iter().fold(0i128, |g, &(_, c)| gcd(g, c.abs()))
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// g with g² = f and positive leading coefficient, if one exists.
///
/// Peels leading terms: the leading term of g is the root of the leading
/// term of f, and each later term of g is forced by the leading term of the
/// current remainder. The result is checked by squaring.
pub fn discriminant_sqrt(f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(Poly::zero());
    }
    let (m0, c0) = f.terms[0];
    let lead = (m0.halve()?, isqrt(c0)?);
    if lead.1 == 0 {
        return None;
    }
    // Per-variable exponent caps and the smallest monomial bound the search.
    let caps: Vec<(usize, u32)> = (0..MAX_VARS)
        .map(|v| (v, f.degree_in(v)))
        .filter(|&(_, e)| e > 0)
        .collect();
    let max_deg = f.degree().unwrap_or(0);
    let last = f.terms.last().unwrap().0;
    let mut g = vec![lead];
    let gpoly = |g: &Vec<(Monomial, i128)>| Poly { terms: g.clone() };
    let mut r = f.sub(&Poly { terms: vec![lead] }.mul(&Poly { terms: vec![lead] }).ok()?).ok()?;
    while !r.is_zero() {
        let (mr, cr) = r.terms[0];
        let mono = mr.div(&lead.0)?;
        let denom = 2 * lead.1;
        if cr % denom != 0 {
            return None;
        }
        let coef = cr / denom;
        let sq = mono.mul(&mono).ok()?;
        if sq < last || 2 * mono.degree() > max_deg {
            return None;
        }
        if caps.iter().any(|&(v, cap)| 2 * mono.exponent(v) > cap)
            || mono.vars().any(|(v, _)| !caps.iter().any(|&(w, _)| w == v))
        {
            return None;
        }
        // r -= (2g + t)·t
        let t = Poly {
            terms: vec![(mono, coef)],
        };
        let two_g_plus_t = gpoly(&g).scale(2).ok()?.add(&t).ok()?;
        r = r.sub(&two_g_plus_t.mul(&t).ok()?).ok()?;
        g.push((mono, coef));
    }
    let root = Poly::from_terms(g).ok()?;
    (root.mul(&root).ok()? == *f).then_some(root)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(m, c)| (m, *c)), |f, m| {
            if *m == Monomial::ONE {
                return write!(f, "1");
            }
            for (v, e) in m.vars() {
                write!(f, "x_{{{v}}}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            Ok(())
        })
    }
}

impl FromStr for Poly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        for (c, vars) in parse_terms(s)? {
            let mut m = Monomial::ONE;
            for (v, e) in vars {
                m = m.mul(&Monomial::var(v, e)?)?;
            }
            terms.push((m, c));
        }
        Poly::from_terms(terms)
    }
}
