//! Prime fields and dense determinants over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A checked prime modulus, at most 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !(2..=1 << 31).contains(&p) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p.is_multiple_of(d) {
                return Err(AlgebraError::NotPrime(p as u64));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    /// Reduce a signed integer into [0, p).
    pub fn reduce(self, x: i128) -> u32 {
        x.rem_euclid(self.0 as i128) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.0 - b % self.0)
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }
}

impl TryFrom<u32> for Prime {
    type Error = AlgebraError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense row-major matrix with entries in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from signed integers, reducing mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| p.reduce(x as i128))
            .collect();
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p.get();
    }
}

/// Determinant of a square matrix over its field. p = 2 takes the
/// word-packed path when the matrix fits in 128 columns.
pub fn det_fp(m: &FpMatrix) -> Result<u32, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if m.p.get() == 2 && n <= 128 {
        let mut rows: Vec<u128> = (0..n)
            .map(|r| {
                (0..n).fold(0u128, |acc, c| acc | ((m.get(r, c) & 1) as u128) << c)
            })
            .collect();
        return Ok(det_gf2(&mut rows, n));
    }
    let mut data = m.data.clone();
    Ok(det_mod_in_place(&mut data, n, m.p))
}

/// Elimination over 𝔽_p on a row-major n x n buffer; the buffer is clobbered.
pub fn det_mod_in_place(a: &mut [u32], n: usize, p: Prime) -> u32 {
    let pm = p.as_u64();
    let mut det: u64 = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for c in col..n {
                a.swap(piv * n + c, col * n + c);
            }
            det = (pm - det) % pm;
        }
        let pv = a[col * n + col] as u64;
        det = det * pv % pm;
        let inv = p.inv(pv as u32) as u64;
        for r in col + 1..n {
            let f = a[r * n + col] as u64;
            if f == 0 {
                continue;
            }
            let f = f * inv % pm;
            for c in col..n {
                let x = a[col * n + c] as u64;
                if x != 0 {
                    let cur = a[r * n + c] as u64;
                    a[r * n + c] = ((cur + pm - f * x % pm) % pm) as u32;
                }
            }
        }
    }
    det as u32
}

/// Determinant over 𝔽₂ of bit rows (bit c of row r is entry (r, c)).
pub fn det_gf2(rows: &mut [u128], n: usize) -> u32 {
    for col in 0..n {
        let bit = 1u128 << col;
        let Some(piv) = (col..n).find(|&r| rows[r] & bit != 0) else {
            return 0;
        };
        rows.swap(piv, col);
        let pr = rows[col];
        for r in rows.iter_mut().take(n).skip(col + 1) {
            if *r & bit != 0 {
                *r ^= pr;
            }
        }
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(2_147_483_647).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(1 << 31).is_err());
    }

    #[test]
    fn det_examples() {
        for p in [2, 3, 5, 7, 101] {
            let p = Prime::new(p).unwrap();
            assert_eq!(det_fp(&FpMatrix::identity(p, 5)).unwrap(), 1);
            let m = FpMatrix::from_rows(p, &[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]).unwrap();
            assert_eq!(det_fp(&m).unwrap(), 0);
        }
        let p5 = Prime::new(5).unwrap();
        let m = FpMatrix::from_rows(p5, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(det_fp(&m).unwrap(), 3);
        assert!(det_fp(&FpMatrix::zeros(p5, 2, 3)).is_err());
    }

    #[test]
    fn packed_path_matches_generic() {
        let p = Prime::TWO;
        let rows: Vec<Vec<i64>> = (0..9)
            .map(|r| (0..9).map(|c| ((r * 7 + c * 3 + r * c) % 5 % 2) as i64).collect())
            .collect();
        let m = FpMatrix::from_rows(p, &rows).unwrap();
        let mut data = m.data.clone();
        assert_eq!(det_fp(&m).unwrap(), det_mod_in_place(&mut data, 9, p));
    }
}
