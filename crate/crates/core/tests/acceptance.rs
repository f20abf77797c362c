//! Runs every acceptance criterion and prints one PASS/FAIL line each.

mod common;

use std::time::Instant;

use c2kit::algebra::{divides, LinearRecurrence, Prime};
use c2kit::c2::{c2_denom, c2_direct, c2_dodgson, CountConfig};
use c2kit::graph::{decompleted_circulant, CirculantSpec};
use c2kit::recurrences::*;
use common::Check;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seq(kind: FamilyKind, route: Route, p: Prime, start: usize, end: usize) -> Result<Vec<(usize, u32)>, String> {
    let spec = FamilySpec { kind, start, end, p };
    c2_sequence(&spec, route, &CountConfig::default()).map_err(|e| format!("{kind} {route}: {e}"))
}

fn expect(what: &str, got: &[(usize, u32)], want: impl Fn(usize) -> u32) -> Check {
    match got.iter().find(|&&(n, v)| v != want(n)) {
        Some((n, v)) => Err(format!("{what}: index {n} gave {v}, expected {}", want(*n))),
        None => Ok(()),
    }
}

fn zigzag() -> Check {
    for (p, end) in [(Prime::TWO, 12), (Prime::THREE, 8)] {
        for route in [Route::Direct, Route::Dodgson, Route::Denom] {
            let got = seq(FamilyKind::Zigzag, route, p, 5, end)?;
            expect(&format!("zigzag {route} p={p}"), &got, |_| p.get() - 1)?;
        }
    }
    Ok(())
}

fn c13() -> Check {
    let direct = seq(FamilyKind::C13, Route::Direct, Prime::TWO, 7, 14)?;
    expect("(1,3) direct", &direct, |n| (n % 2) as u32)?;
    let transfer = seq(FamilyKind::C13, Route::Transfer, Prime::TWO, 7, 51)?;
    expect("(1,3) transfer", &transfer, |n| (n % 2) as u32)?;
    let target = LinearRecurrence::new(Prime::TWO, vec![0, 1, 0, 1, 0, 1], 1).map_err(|e| e.to_string())?;
    for fit in fit_recurrence(&transfer, Prime::TWO).map_err(|e| e.to_string())? {
        if !divides(&fit.recurrence, &target).map_err(|e| e.to_string())? {
            return Err(format!("fitted {} does not divide the target", fit.recurrence));
        }
    }
    Ok(())
}

fn c23() -> Check {
    let direct = seq(FamilyKind::C23, Route::Direct, Prime::TWO, 7, 13)?;
    for route in [Route::Table, Route::Transfer] {
        let got = seq(FamilyKind::C23, route, Prime::TWO, 7, 13)?;
        if got != direct {
            return Err(format!("{route} {got:?} vs direct {direct:?}"));
        }
    }
    Ok(())
}

fn two_k_plus_2() -> Check {
    let got = seq(FamilyKind::TwoKPlus2, Route::Direct, Prime::TWO, 3, 6)?;
    expect("2k+2 direct", &got, |_| 0)
}

fn cross_agreement() -> Check {
    let mut eligible = Vec::new();
    for n in 5..=13 {
        for k in 2..=n / 2 {
            for j in 1..k {
                let Ok(spec) = CirculantSpec::new(n, j, k) else {
                    continue;
                };
                let Ok(g) = decompleted_circulant(spec) else {
                    continue;
                };
                if g.is_connected() && g.edge_count() <= 22 {
                    eligible.push((spec, g));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = CountConfig::default();
    let p = Prime::TWO;
    let picked: Vec<_> = eligible.choose_multiple(&mut rng, 10).collect();
    if picked.len() < 10 {
        return Err(format!("only {} eligible graphs", picked.len()));
    }
    for (spec, g) in picked {
        let err = |e: c2kit::c2::C2Error| format!("{spec}: {e}");
        let want = c2_direct(g, p, &cfg).map_err(err)?.value;
        let order: Vec<usize> = (0..g.edge_count()).collect();
        let got = [
            c2_dodgson(g, p, 1, &order[..3]).map_err(err)?.value,
            c2_dodgson(g, p, 2, &order[..4]).map_err(err)?.value,
            c2_dodgson(g, p, 3, &order[..5]).map_err(err)?.value,
            c2_denom(g, p, &order).map_err(err)?.value,
        ];
        if got.iter().any(|&v| v != want) {
            return Err(format!("{spec}: direct {want}, others {got:?}"));
        }
    }
    Ok(())
}

fn properties() -> Check {
    common::divisible_by_p_squared().map_err(|e| format!("divisibility: {e}"))?;
    common::contraction_deletion().map_err(|e| format!("contraction-deletion: {e}"))?;
    common::forests_reconstruct_dodgsons().map_err(|e| format!("forest expansion: {e}"))?;
    common::five_invariant_order_free().map_err(|e| format!("5-invariant: {e}"))?;
    common::coefficient_lemma_random(100).map_err(|e| format!("coefficient lemma: {e}"))?;
    common::worker_invariance().map_err(|e| format!("workers: {e}"))
}

fn zigzag_p3() -> Check {
    let got = seq(FamilyKind::Zigzag, Route::Direct, Prime::THREE, 5, 7)?;
    expect("zigzag p=3", &got, |_| 2)
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 zigzag p-1 at p=2,3 by direct, dodgson, denom", zigzag),
        ("2 C_n(1,3) parity, transfer to 51, recurrence divides", c13),
        ("3 C_n(2,3) table and transfer match direct on 7..13", c23),
        ("4 C_{2k+2}(1,k) vanishes at p=2 for k=3..6", two_k_plus_2),
        ("5 ten random circulants agree across routes", cross_agreement),
        ("6 property suites", properties),
        ("7 zigzag at p=3 equals 2 for n=5..7", zigzag_p3),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.1}s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
