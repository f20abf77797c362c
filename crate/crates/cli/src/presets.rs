//! Named reproduction runs for the family subcommand.

use clap::ValueEnum;

use c2kit::recurrences::{FamilyKind, Route};

use crate::{FamilyPlan, Leg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Zigzag at p = 2, n = 5..12, three routes, closed form p - 1.
    #[value(name = "zigzag-p2")]
    ZigzagP2,
    /// C_n(1,3) at p = 2: direct on 7..14, transfer to 51, parity closed form, fit.
    #[value(name = "c13-p2")]
    C13P2,
    /// C_n(2,3) at p = 2 on 7..13: direct, transfer and the 22-equation table.
    #[value(name = "c23-table")]
    C23Table,
    /// C_{2k+2}(1,k) at p = 2, k = 3..6, direct, all zero.
    #[value(name = "2k2-p2")]
    TwoKPlus2P2,
}

fn leg(route: Route, start: usize, end: usize) -> Leg {
    Leg { route, start, end }
}

impl Preset {
    pub(crate) fn plan(self) -> FamilyPlan {
        let (kind, legs, verify_paper, fit) = match self {
            Preset::ZigzagP2 => (
                FamilyKind::Zigzag,
                vec![
                    leg(Route::Direct, 5, 12),
                    leg(Route::Dodgson, 5, 12),
                    leg(Route::Denom, 5, 12),
                ],
                true,
                false,
            ),
            Preset::C13P2 => (
                FamilyKind::C13,
                vec![leg(Route::Direct, 7, 14), leg(Route::Transfer, 7, 51)],
                true,
                true,
            ),
            Preset::C23Table => (
                FamilyKind::C23,
                vec![
                    leg(Route::Direct, 7, 13),
                    leg(Route::Transfer, 7, 13),
                    leg(Route::Table, 7, 13),
                ],
                false,
                false,
            ),
            Preset::TwoKPlus2P2 => (FamilyKind::TwoKPlus2, vec![leg(Route::Direct, 3, 6)], true, false),
        };
        FamilyPlan {
            kind,
            p: 2,
            legs,
            verify_paper,
            fit,
        }
    }
}
