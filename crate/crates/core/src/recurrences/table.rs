//! The 22-sequence system for C_n(2,3) at p = 2, driven by shipped data.
//!
//! The strip H_n here is the decompleted C_n(2,3) minus its three wrap
//! edges, a strip of length n-1. Each table row is a combination of forest
//! polynomials on its boundary; each column says which of the four edges at
//! the two end vertices a factor keeps.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::transfer::{extensions, StepTable};
use super::{strip_pair_value, RecurrenceError, Strip};
use crate::graph::SetPartition;

pub const EQUATION_TABLE_JSON: &str = include_str!("../../data/c23_table.json");

/// First index of C_n(2,3); seeds cover this and the next three indices.
const FIRST_N: usize = 7;
const SEED_COUNT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedTerms {
    pub name: String,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub name: String,
    pub factors: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaggedTerm {
    pub name: String,
    pub lag: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub name: String,
    pub terms: Vec<LaggedTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    pub schema: String,
    pub labels: BTreeMap<String, usize>,
    pub columns: Vec<String>,
    pub polynomials: Vec<NamedTerms>,
    pub rows: Vec<TableRow>,
    pub products: Vec<Product>,
    pub zero_products: Vec<[String; 2]>,
    pub equations: Vec<Equation>,
}

/// A table entry with signs dropped (everything here is mod 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableCell {
    Zero,
    Unneeded,
    Sum(Vec<String>),
}

impl TableCell {
    fn parse(s: &str) -> TableCell {
        match s.trim() {
            "0" => TableCell::Zero,
            "*" => TableCell::Unneeded,
            t => TableCell::Sum(
                t.split('+')
                    .map(|x| x.trim().trim_start_matches('-').to_string())
                    .collect(),
            ),
        }
    }
}

/// Layer-edge subset kept by each column, bits in the strip's layer order
/// (left short, left long, right short, right long).
fn column_subset(col: usize) -> usize {
    [0b0101, 0b1010, 0b1111, 0b0000][col]
}

impl TableData {
    pub fn load() -> Result<Self, RecurrenceError> {
        serde_json::from_str(EQUATION_TABLE_JSON).map_err(|e| RecurrenceError::Table(e.to_string()))
    }

    fn strip() -> Strip {
        Strip::new(2, 3).expect("valid gaps")
    }

    /// Terms of a named polynomial as partitions of boundary positions.
    pub fn polynomial(&self, name: &str) -> Result<Vec<SetPartition>, RecurrenceError> {
        let entry = self
            .polynomials
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| RecurrenceError::Table(format!("no polynomial {name}")))?;
        entry
            .terms
            .iter()
            .map(|t| {
                let mut text = String::new();
                for ch in t.trim_start_matches('-').chars() {
                    match self.labels.get(&ch.to_string()) {
                        Some(pos) => text.push_str(&pos.to_string()),
                        None => text.push(ch),
                    }
                }
                text.parse::<SetPartition>()
                    .map_err(|e| RecurrenceError::Table(format!("{name}: {e}")))
            })
            .collect()
    }

    pub fn cell(&self, row: &str, col: usize) -> Result<TableCell, RecurrenceError> {
        let r = self
            .rows
            .iter()
            .find(|r| r.name == row)
            .ok_or_else(|| RecurrenceError::Table(format!("no row {row}")))?;
        Ok(TableCell::parse(&r.cells[col]))
    }

    fn product_name(&self, x: &str, y: &str) -> Option<&str> {
        self.products
            .iter()
            .find(|p| (p.factors[0] == x && p.factors[1] == y) || (p.factors[0] == y && p.factors[1] == x))
            .map(|p| p.name.as_str())
    }

    fn is_zero_product(&self, x: &str, y: &str) -> bool {
        self.zero_products
            .iter()
            .any(|z| (z[0] == x && z[1] == y) || (z[0] == y && z[1] == x))
    }

    /// Named product pairs one layer down, mod 2, over the symmetric edge
    /// assignments (x keeps α while y keeps β, and so on).
    fn expand_once(&self, x: &str, y: &str) -> Result<Vec<(String, String)>, RecurrenceError> {
        let mut out: BTreeMap<(String, String), u8> = BTreeMap::new();
        for (cx, cy) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            let (ex, ey) = (self.cell(x, cx)?, self.cell(y, cy)?);
            let (sx, sy) = match (ex, ey) {
                (TableCell::Zero, _) | (_, TableCell::Zero) => continue,
                (TableCell::Unneeded, _) | (_, TableCell::Unneeded) => {
                    return Err(RecurrenceError::Table(format!(
                        "reducing [{x} {y}] needs an entry marked '*'"
                    )))
                }
                (TableCell::Sum(a), TableCell::Sum(b)) => (a, b),
            };
            for u in &sx {
                for v in &sy {
                    let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
                    *out.entry(key).or_insert(0) ^= 1;
                }
            }
        }
        Ok(out.into_iter().filter(|(_, c)| *c == 1).map(|(k, _)| k).collect())
    }
}

/// Check every non-'*' table entry against the single-factor layer step.
/// Returns the (row, column) pairs that disagree.
pub fn verify_table(data: &TableData) -> Result<Vec<(String, String)>, RecurrenceError> {
    let strip = TableData::strip();
    let table = StepTable::new(&strip, strip.layer_edges());
    let size = table.partitions.len();
    let expand = |names: &[String]| -> Result<Vec<u8>, RecurrenceError> {
        let mut v = vec![0u8; size];
        for name in names {
            for term in data.polynomial(name)? {
                for i in extensions(&table, &term) {
                    v[i] ^= 1;
                }
            }
        }
        Ok(v)
    };
    let mut bad = Vec::new();
    for row in &data.rows {
        let lhs = expand(std::slice::from_ref(&row.name))?;
        for (col, name) in data.columns.iter().enumerate() {
            let want = match data.cell(&row.name, col)? {
                TableCell::Unneeded => continue,
                TableCell::Zero => vec![0u8; size],
                TableCell::Sum(names) => expand(&names)?,
            };
            let subset = column_subset(col);
            let mut got = vec![0u8; size];
            for (pi, &c) in lhs.iter().enumerate() {
                if c == 1 {
                    for &below in &table.by_result[subset][pi] {
                        got[below] ^= 1;
                    }
                }
            }
            if got != want {
                bad.push((row.name.clone(), name.clone()));
            }
        }
    }
    Ok(bad)
}

/// Equations for every named product, derived from the table rows. Products
/// that are not named are reduced a second time; known zero products drop.
pub fn derive_equations(data: &TableData) -> Result<Vec<Equation>, RecurrenceError> {
    let mut out = Vec::new();
    for product in &data.products {
        let [x, y] = &product.factors;
        let mut terms: BTreeMap<LaggedTerm, u8> = BTreeMap::new();
        let mut add = |name: &str, lag: usize| {
            *terms
                .entry(LaggedTerm {
                    name: name.to_string(),
                    lag,
                })
                .or_insert(0) ^= 1;
        };
        for (u, v) in data.expand_once(x, y)? {
            if let Some(name) = data.product_name(&u, &v) {
                add(name, 2);
            } else if !data.is_zero_product(&u, &v) {
                for (s, t) in data.expand_once(&u, &v)? {
                    if let Some(name) = data.product_name(&s, &t) {
                        add(name, 4);
                    } else if !data.is_zero_product(&s, &t) {
                        return Err(RecurrenceError::Table(format!(
                            "[{s} {t}] from [{x} {y}] is neither named nor zero"
                        )));
                    }
                }
            }
        }
        out.push(Equation {
            name: product.name.clone(),
            terms: terms
                .into_iter()
                .filter(|(_, c)| *c == 1)
                .map(|(t, _)| t)
                .collect(),
        });
    }
    Ok(out)
}

/// True iff two equation lists agree as sets of terms, mod 2.
pub fn same_equations(a: &[Equation], b: &[Equation]) -> bool {
    let key = |e: &[Equation]| -> BTreeMap<String, BTreeSet<LaggedTerm>> {
        e.iter()
            .map(|q| (q.name.clone(), q.terms.iter().cloned().collect()))
            .collect()
    };
    key(a) == key(b)
}

/// The 22-sequence evaluator with its seed values.
#[derive(Clone, Debug)]
pub struct Table23 {
    pub equations: Vec<Equation>,
    /// seeds[n][name] for the first indices.
    pub seeds: BTreeMap<usize, BTreeMap<String, u8>>,
}

impl Table23 {
    /// All sequences from the seeds up to `n_max`.
    pub fn run_all(&self, n_max: usize) -> Result<BTreeMap<usize, BTreeMap<String, u8>>, RecurrenceError> {
        let mut values = self.seeds.clone();
        let first = *values.keys().next().ok_or(RecurrenceError::SeedGap(FIRST_N))?;
        for n in first..=n_max {
            if values.contains_key(&n) {
                continue;
            }
            let mut row = BTreeMap::new();
            for eq in &self.equations {
                let mut v = 0u8;
                for t in &eq.terms {
                    let prev = n
                        .checked_sub(t.lag)
                        .and_then(|m| values.get(&m))
                        .and_then(|r| r.get(&t.name))
                        .ok_or(RecurrenceError::SeedGap(n.saturating_sub(t.lag)))?;
                    v ^= prev;
                }
                row.insert(eq.name.clone(), v);
            }
            values.insert(n, row);
        }
        Ok(values)
    }

    /// c₂^{(2)}(C̃_n(2,3)) for every n from the first seed to `n_max`.
    pub fn run(&self, n_max: usize) -> Result<BTreeMap<usize, u8>, RecurrenceError> {
        Ok(self
            .run_all(n_max)?
            .into_iter()
            .map(|(n, row)| (n, row["A"]))
            .collect())
    }
}

/// Product values [x_n y_n]_2 on the strip for one n, by forest splitting.
pub fn product_values(data: &TableData, n: usize) -> Result<BTreeMap<String, u8>, RecurrenceError> {
    let strip = TableData::strip();
    let mut out = BTreeMap::new();
    for product in &data.products {
        let mut v = 0u8;
        for s in data.polynomial(&product.factors[0])? {
            for t in data.polynomial(&product.factors[1])? {
                v ^= strip_pair_value(&strip, n - 1, &s, &t)?;
            }
        }
        out.insert(product.name.clone(), v);
    }
    Ok(out)
}

/// The shipped equations seeded by forest splitting at n = 7..10.
pub fn table23_system() -> Result<Table23, RecurrenceError> {
    let data = TableData::load()?;
    let mut seeds = BTreeMap::new();
    for n in FIRST_N..FIRST_N + SEED_COUNT {
        seeds.insert(n, product_values(&data, n)?);
    }
    Ok(Table23 {
        equations: data.equations.clone(),
        seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_parse() {
        assert_eq!(TableCell::parse("*"), TableCell::Unneeded);
        assert_eq!(TableCell::parse("0"), TableCell::Zero);
        assert_eq!(
            TableCell::parse("a3+a4"),
            TableCell::Sum(vec!["a3".into(), "a4".into()])
        );
        assert_eq!(TableCell::parse("-e2"), TableCell::Sum(vec!["e2".into()]));
    }

    #[test]
    fn all_ones_step() {
        let data = TableData::load().unwrap();
        let ones: BTreeMap<String, u8> = data.products.iter().map(|p| (p.name.clone(), 1)).collect();
        let seeds = (7..11).map(|n| (n, ones.clone())).collect();
        let t = Table23 {
            equations: data.equations.clone(),
            seeds,
        };
        let all = t.run_all(11).unwrap();
        assert_eq!(all[&11]["A"], 1);
        assert_eq!(all[&11]["K"], 1);
    }

    #[test]
    fn b_from_three_terms() {
        let data = TableData::load().unwrap();
        let mut seeds: BTreeMap<usize, BTreeMap<String, u8>> = (7..11)
            .map(|n| (n, data.products.iter().map(|p| (p.name.clone(), 0)).collect()))
            .collect();
        seeds.get_mut(&9).unwrap().insert("E".into(), 1);
        let t = Table23 {
            equations: data.equations.clone(),
            seeds,
        };
        assert_eq!(t.run_all(11).unwrap()[&11]["B"], 1);
    }

    #[test]
    fn missing_seed_is_reported() {
        let data = TableData::load().unwrap();
        let seeds = [(7, data.products.iter().map(|p| (p.name.clone(), 0)).collect())].into();
        let t = Table23 {
            equations: data.equations,
            seeds,
        };
        assert!(matches!(t.run(9), Err(RecurrenceError::SeedGap(_))));
    }
}
