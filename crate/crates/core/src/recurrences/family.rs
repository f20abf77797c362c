//! Circulant families and their c₂ sequences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::transfer::base_values;
use super::{
    build_transfer, run_transfer, table23_system, RecurrenceError, RecurrenceSystem, Strip,
};
use crate::algebra::{berlekamp_massey, LinearRecurrence, Prime};
use crate::c2::{c2_coeff_route, c2_denom, c2_direct, c2_dodgson, CountConfig};
use crate::graph::{decompleted_circulant, CirculantSpec, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "zigzag")]
    Zigzag,
    #[serde(rename = "1,3")]
    C13,
    #[serde(rename = "1,4")]
    C14,
    #[serde(rename = "1,5")]
    C15,
    #[serde(rename = "1,6")]
    C16,
    #[serde(rename = "2,3")]
    C23,
    #[serde(rename = "2,4")]
    C24,
    #[serde(rename = "2,5")]
    C25,
    #[serde(rename = "3,4")]
    C34,
    /// C_{2k+2}(1,k), indexed by k.
    #[serde(rename = "2k2")]
    TwoKPlus2,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::Zigzag,
        FamilyKind::C13,
        FamilyKind::C14,
        FamilyKind::C15,
        FamilyKind::C16,
        FamilyKind::C23,
        FamilyKind::C24,
        FamilyKind::C25,
        FamilyKind::C34,
        FamilyKind::TwoKPlus2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Zigzag => "zigzag",
            FamilyKind::C13 => "1,3",
            FamilyKind::C14 => "1,4",
            FamilyKind::C15 => "1,5",
            FamilyKind::C16 => "1,6",
            FamilyKind::C23 => "2,3",
            FamilyKind::C24 => "2,4",
            FamilyKind::C25 => "2,5",
            FamilyKind::C34 => "3,4",
            FamilyKind::TwoKPlus2 => "2k2",
        }
    }

    /// Name of the index variable: n, or k for C_{2k+2}(1,k).
    pub fn index_name(self) -> &'static str {
        if self == FamilyKind::TwoKPlus2 {
            "k"
        } else {
            "n"
        }
    }

    fn gaps(self) -> Option<(usize, usize)> {
        Some(match self {
            FamilyKind::Zigzag => (1, 2),
            FamilyKind::C13 => (1, 3),
            FamilyKind::C14 => (1, 4),
            FamilyKind::C15 => (1, 5),
            FamilyKind::C16 => (1, 6),
            FamilyKind::C23 => (2, 3),
            FamilyKind::C24 => (2, 4),
            FamilyKind::C25 => (2, 5),
            FamilyKind::C34 => (3, 4),
            FamilyKind::TwoKPlus2 => return None,
        })
    }

    pub fn circulant(self, index: usize) -> Result<CirculantSpec, RecurrenceError> {
        let min = self.min_index();
        if index < min {
            return Err(RecurrenceError::OutOfRange {
                family: self.name().into(),
                index,
                min,
            });
        }
        let spec = match self.gaps() {
            Some((j, k)) => CirculantSpec::new(index, j, k),
            None => CirculantSpec::new(2 * index + 2, 1, index),
        };
        Ok(spec?)
    }

    pub fn graph(self, index: usize) -> Result<Graph, RecurrenceError> {
        Ok(decompleted_circulant(self.circulant(index)?)?)
    }

    /// First index giving a simple connected 4-regular circulant.
    pub fn min_index(self) -> usize {
        match self.gaps() {
            None => 3,
            Some((j, k)) => (2 * k + 1..)
                .find(|&n| CirculantSpec::new(n, j, k).is_ok())
                .expect("some n works"),
        }
    }

    /// Edge tuple for the Dodgson routes: three edges select the variant-1
    /// product, four the variant-2 product. Vertices are numbered as in the
    /// decompleted graph, 0..N, with 0 and N-1 the neighbours of the removed
    /// vertex along the cycle.
    pub fn dodgson_edges(self, g: &Graph, index: usize) -> Result<Vec<usize>, RecurrenceError> {
        let n = g.vertex_count();
        let pairs: Vec<(usize, usize)> = match self {
            FamilyKind::Zigzag => vec![(0, 1), (n - 2, n - 1), (n - 1, 0)],
            FamilyKind::C13 => vec![(0, n - 2), (n - 2, n - 1), (n - 1, 1), (0, 1)],
            FamilyKind::C23 => vec![(n - 2, 0), (n - 1, 0), (n - 1, 1)],
            FamilyKind::TwoKPlus2 => {
                let k = index;
                vec![(k - 1, k), (k, k + 1), (0, k), (k, 2 * k)]
            }
            _ => return Ok(vec![0, 1, 2]),
        };
        pairs
            .into_iter()
            .map(|(u, v)| {
                g.find_edge(u, v).ok_or_else(|| {
                    RecurrenceError::Layout(format!("{} has no edge ({u},{v})", self.name()))
                })
            })
            .collect()
    }

    pub fn strip(self) -> Option<Strip> {
        match self {
            FamilyKind::C13 => Strip::new(1, 3).ok(),
            FamilyKind::C23 => Strip::new(2, 3).ok(),
            _ => None,
        }
    }

    /// Known closed form, where one exists.
    pub fn closed_form(self, p: Prime, index: usize) -> Option<u32> {
        match (self, p.get()) {
            (FamilyKind::Zigzag, q) => Some(q - 1),
            (FamilyKind::C13, 2) => Some((index % 2) as u32),
            (FamilyKind::TwoKPlus2, 2) => Some(0),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "1,2" | "zigzag" => Ok(FamilyKind::Zigzag),
            "2k2" | "two_k_plus_2" => Ok(FamilyKind::TwoKPlus2),
            _ => FamilyKind::ALL
                .into_iter()
                .find(|k| k.name() == s)
                .ok_or_else(|| format!("unknown family {s:?}")),
        }
    }
}

/// A family with an inclusive index range and a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub start: usize,
    pub end: usize,
    pub p: Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Dodgson,
    Coeff,
    Denom,
    Transfer,
    Table,
}

impl Route {
    pub const ALL: [Route; 6] = [
        Route::Direct,
        Route::Dodgson,
        Route::Coeff,
        Route::Denom,
        Route::Transfer,
        Route::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Dodgson => "dodgson",
            Route::Coeff => "coeff",
            Route::Denom => "denom",
            Route::Transfer => "transfer",
            Route::Table => "table",
        }
    }

    /// Whether the route can produce values for this family and prime.
    pub fn supports(self, kind: FamilyKind, p: Prime) -> bool {
        match self {
            Route::Direct | Route::Dodgson | Route::Denom => true,
            Route::Coeff => p == Prime::TWO,
            Route::Transfer => p == Prime::TWO && kind.strip().is_some(),
            Route::Table => p == Prime::TWO && kind == FamilyKind::C23,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown route {s:?}"))
    }
}

/// (index, c₂ mod p) over the spec's range by one route.
pub fn c2_sequence(
    spec: &FamilySpec,
    route: Route,
    cfg: &CountConfig,
) -> Result<Vec<(usize, u32)>, RecurrenceError> {
    let kind = spec.kind;
    let p = spec.p;
    if !route.supports(kind, p) {
        return Err(RecurrenceError::Unsupported {
            family: kind.name().into(),
            route: route.name().into(),
            p: p.get(),
        });
    }
    let range = spec.start..=spec.end;
    match route {
        Route::Transfer => transfer_sequence(&build_transfer(kind)?, spec.start, spec.end),
        Route::Table => {
            let table = table23_system()?;
            let values = table.run(spec.end)?;
            range
                .map(|n| {
                    values
                        .get(&n)
                        .map(|&v| (n, v as u32))
                        .ok_or(RecurrenceError::SeedGap(n))
                })
                .collect()
        }
        _ => range
            .map(|n| {
                let g = kind.graph(n)?;
                let value = match route {
                    Route::Direct => c2_direct(&g, p, cfg)?.value,
                    Route::Dodgson => {
                        let edges = kind.dodgson_edges(&g, n)?;
                        let variant = if edges.len() == 3 { 1 } else { 2 };
                        c2_dodgson(&g, p, variant, &edges)?.value
                    }
                    Route::Coeff => c2_coeff_route(&g, &kind.dodgson_edges(&g, n)?)?.value,
                    _ => {
                        let mut order = kind.dodgson_edges(&g, n)?;
                        let rest: Vec<usize> =
                            (0..g.edge_count()).filter(|e| !order.contains(e)).collect();
                        order.extend(rest);
                        c2_denom(&g, p, &order)?.value
                    }
                };
                Ok((n, value))
            })
            .collect(),
    }
}

/// (index, c₂ mod 2) for start..=end from a built system.
pub fn transfer_sequence(
    sys: &RecurrenceSystem,
    start: usize,
    end: usize,
) -> Result<Vec<(usize, u32)>, RecurrenceError> {
    let kind = sys.family;
    let base = base_values(sys)?;
    (start..=end)
        .map(|n| {
            let v = if n < sys.strip_offset + sys.strip.base_len() {
                // Too short to peel a layer: evaluate the seed pairs directly.
                let g = kind.graph(n)?;
                c2_coeff_route(&g, &kind.dodgson_edges(&g, n)?)?.value
            } else {
                run_transfer(sys, &base, n)? as u32
            };
            Ok((n, v))
        })
        .collect()
}

/// A step-2 recurrence fitted on one parity class of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittedRecurrence {
    pub parity: usize,
    pub terms: usize,
    pub recurrence: LinearRecurrence,
}

/// Berlekamp–Massey on each parity subsequence of `values`, reported with
/// step 2. Each subsequence needs at least twice the fitted order in terms.
pub fn fit_recurrence(values: &[(usize, u32)], p: Prime) -> Result<Vec<FittedRecurrence>, RecurrenceError> {
    let mut out = Vec::new();
    for parity in 0..2 {
        let sub: Vec<u32> = values
            .iter()
            .filter(|(n, _)| n % 2 == parity)
            .map(|&(_, v)| v)
            .collect();
        if sub.is_empty() {
            continue;
        }
        let rec = berlekamp_massey(&sub, p);
        if sub.len() < 2 * rec.order().max(1) {
            return Err(RecurrenceError::InsufficientTerms {
                needed: 2 * rec.order().max(1),
                got: sub.len(),
            });
        }
        out.push(FittedRecurrence {
            parity,
            terms: sub.len(),
            recurrence: rec.with_step(2),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_members() {
        assert_eq!(FamilyKind::Zigzag.min_index(), 5);
        assert_eq!(FamilyKind::C13.min_index(), 7);
        assert_eq!(FamilyKind::C24.min_index(), 9);
        assert_eq!(FamilyKind::TwoKPlus2.graph(3).unwrap().vertex_count(), 7);
        assert!(matches!(
            FamilyKind::C13.graph(6),
            Err(RecurrenceError::OutOfRange { min: 7, .. })
        ));
    }

    #[test]
    fn names_round_trip() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(serde_json::from_str::<FamilyKind>(&json).unwrap(), k);
        }
        assert_eq!("1,2".parse::<FamilyKind>().unwrap(), FamilyKind::Zigzag);
    }

    #[test]
    fn dodgson_edges_exist() {
        for k in FamilyKind::ALL {
            let i = k.min_index() + 2;
            let g = k.graph(i).unwrap();
            let e = k.dodgson_edges(&g, i).unwrap();
            assert!(e.len() == 3 || e.len() == 4, "{k}");
        }
    }
}
