//! c₂ sequences along circulant families, the explicit 22-sequence system
//! for C_n(2,3), and generic p = 2 transfer systems on strips.

mod cases;
mod family;
mod table;
mod transfer;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::c2::C2Error;
use crate::graph::GraphError;
use crate::graph_polys::PolyError;

pub use cases::{two_k_plus_2_cases, CaseAnalysis, CaseClass};
pub use family::{
    c2_sequence, fit_recurrence, transfer_sequence, FamilyKind, FamilySpec, FittedRecurrence,
    Route,
};
pub use table::{
    derive_equations, product_values, same_equations, table23_system, verify_table, Equation, Table23, TableCell, TableData,
    EQUATION_TABLE_JSON,
};
pub use transfer::{
    base_values, build_transfer, run_transfer, seed_states, strip_pair_value, BaseValues, RecurrenceSystem,
    Strip, TransferState, STATE_CAP,
};

#[derive(Debug, Error)]
pub enum RecurrenceError {
    #[error(transparent)]
    C2(#[from] C2Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("route {route} is not available for family {family} at p = {p}")]
    Unsupported {
        family: String,
        route: String,
        p: u32,
    },
    #[error("index {index} is below the first member {min} of family {family}")]
    OutOfRange {
        family: String,
        index: usize,
        min: usize,
    },
    #[error("no seed values for strip length {0}")]
    SeedGap(usize),
    #[error("transfer state space exceeded {0} states")]
    StateCap(usize),
    #[error("family layout: {0}")]
    Layout(String),
    #[error("table: {0}")]
    Table(String),
    #[error("need at least {needed} terms to fit, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
}
