//! Linear recurrences over 𝔽_p: Berlekamp–Massey fitting, extension, and
//! characteristic-polynomial divisibility.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Prime};

/// s_n = Σ_{i=1..order} c_i · s_{n - step·i} over 𝔽_p.
///
/// Berlekamp–Massey may return a trailing c_order = 0 when the sequence has
/// a transient prefix; such a recurrence holds from index step·order on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRecurrence {
    pub modulus: Prime,
    pub coeffs: Vec<u32>,
    pub step: usize,
}

impl LinearRecurrence {
    pub fn new(modulus: Prime, coeffs: Vec<u32>, step: usize) -> Result<Self, AlgebraError> {
        if step == 0 {
            return Err(AlgebraError::Shape("recurrence step must be positive".into()));
        }
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % modulus.get()).collect();
        if coeffs.last() == Some(&0) {
            return Err(AlgebraError::Shape("last coefficient must be nonzero".into()));
        }
        Ok(LinearRecurrence {
            modulus,
            coeffs,
            step,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// x^{step·r} - Σ c_i x^{step·(r-i)}, low degree first.
    pub fn characteristic(&self) -> Vec<u32> {
        let p = self.modulus;
        let r = self.order();
        let mut poly = vec![0u32; self.step * r + 1];
        poly[self.step * r] = 1;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let deg = self.step * (r - i - 1);
            poly[deg] = p.sub(poly[deg], c);
        }
        poly
    }

    /// Reinterpret a step-1 recurrence fitted on a stride-`step` subsequence.
    pub fn with_step(mut self, step: usize) -> Self {
        self.step = step;
        self
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_n =")?;
        let mut any = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if any {
                write!(f, " +")?;
            }
            if c != 1 {
                write!(f, " {c}·")?;
            } else {
                write!(f, " ")?;
            }
            write!(f, "s_{{n-{}}}", self.step * (i + 1))?;
            any = true;
        }
        if !any {
            write!(f, " 0")?;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// Shortest linear recurrence (step 1) generating `seq` over 𝔽_p.
pub fn berlekamp_massey(seq: &[u32], p: Prime) -> LinearRecurrence {
    let seq: Vec<u32> = seq.iter().map(|&s| s % p.get()).collect();
    let mut c = vec![1u32];
    let mut b = vec![1u32];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u32;
    for n in 0..seq.len() {
        let mut d = seq[n];
        for i in 1..=l {
            d = p.add(d, p.mul(*c.get(i).unwrap_or(&0), seq[n - i]));
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = p.mul(d, p.inv(bd));
        let old = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + m] = p.sub(c[i + m], p.mul(coef, bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = old;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, 0);
    // Connection polynomial 1 + Σ c_i x^i means s_n = -Σ c_i s_{n-i}.
    let coeffs = c[1..].iter().map(|&x| p.neg(x)).collect();
    LinearRecurrence {
        modulus: p,
        coeffs,
        step: 1,
    }
}

/// Extend `seeds` by `count` further terms.
pub fn run_recurrence(
    rec: &LinearRecurrence,
    seeds: &[u32],
    count: usize,
) -> Result<Vec<u32>, AlgebraError> {
    let need = rec.step * rec.order();
    if seeds.len() < need {
        return Err(AlgebraError::InsufficientSeeds {
            needed: need,
            got: seeds.len(),
        });
    }
    let p = rec.modulus;
    let mut out: Vec<u32> = seeds.iter().map(|&s| s % p.get()).collect();
    for _ in 0..count {
        let n = out.len();
        let mut v = 0;
        for (i, &c) in rec.coeffs.iter().enumerate() {
            v = p.add(v, p.mul(c, out[n - rec.step * (i + 1)]));
        }
        out.push(v);
    }
    Ok(out)
}

/// Remainder of a by b over 𝔽_p (coefficients low degree first).
pub fn poly_rem(a: &[u32], b: &[u32], p: Prime) -> Vec<u32> {
    let b = trim(b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a);
    let lead_inv = p.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = p.mul(*r.last().unwrap(), lead_inv);
        for (i, &bi) in b.iter().enumerate() {
            r[i + shift] = p.sub(r[i + shift], p.mul(f, bi));
        }
        r = trim(&r);
    }
    r
}

fn trim(a: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// True iff small's characteristic polynomial divides big's.
pub fn divides(small: &LinearRecurrence, big: &LinearRecurrence) -> Result<bool, AlgebraError> {
    if small.modulus != big.modulus {
        return Err(AlgebraError::Shape("recurrences over different fields".into()));
    }
    Ok(poly_rem(&big.characteristic(), &small.characteristic(), small.modulus).is_empty())
}
