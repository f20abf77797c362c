mod common;

use std::collections::BTreeSet;

use c2kit::algebra::{divides, LinearRecurrence, Prime};
use c2kit::c2::CountConfig;
use c2kit::recurrences::*;

fn cfg() -> CountConfig {
    CountConfig::default()
}

fn values(kind: FamilyKind, route: Route, start: usize, end: usize) -> Vec<(usize, u32)> {
    let spec = FamilySpec {
        kind,
        start,
        end,
        p: Prime::TWO,
    };
    c2_sequence(&spec, route, &cfg()).unwrap()
}

#[test]
fn c13_transfer_matches_direct() {
    let direct = values(FamilyKind::C13, Route::Direct, 7, 14);
    assert_eq!(values(FamilyKind::C13, Route::Transfer, 7, 14), direct);
    assert!(direct.iter().all(|&(n, v)| v == (n % 2) as u32));
}

#[test]
fn c13_transfer_extends_by_parity() {
    let long = values(FamilyKind::C13, Route::Transfer, 7, 51);
    assert!(long.iter().all(|&(n, v)| v == (n % 2) as u32));
    assert_eq!(long.last(), Some(&(51, 1)));
    let target = LinearRecurrence::new(Prime::TWO, vec![0, 1, 0, 1, 0, 1], 1).unwrap();
    for fit in fit_recurrence(&long, Prime::TWO).unwrap() {
        assert!(divides(&fit.recurrence, &target).unwrap(), "{:?}", fit);
    }
}

#[test]
fn c13_state_space() {
    let sys = build_transfer(FamilyKind::C13).unwrap();
    assert_eq!(sys.states.len(), 317);
    assert_eq!(sys.strip_offset, 3);
    assert!(sys.commutes_with_flip());
}

#[test]
fn c23_routes_agree() {
    let direct = values(FamilyKind::C23, Route::Direct, 7, 13);
    assert_eq!(values(FamilyKind::C23, Route::Transfer, 7, 13), direct);
    assert_eq!(values(FamilyKind::C23, Route::Table, 7, 13), direct);
    let frozen: Vec<u32> = direct.iter().map(|&(_, v)| v).collect();
    assert_eq!(frozen, vec![1, 1, 1, 0, 1, 0, 0]);
}

#[test]
fn c23_transfer_commutes_with_flip() {
    let sys = build_transfer(FamilyKind::C23).unwrap();
    assert!(sys.states.len() < STATE_CAP);
    assert!(sys.commutes_with_flip());
}

#[test]
fn c23_fitted_recurrence_predicts_transfer() {
    let all = values(FamilyKind::C23, Route::Transfer, 7, 70);
    let window: Vec<(usize, u32)> = all.iter().copied().filter(|&(n, _)| n <= 40).collect();
    let fits = fit_recurrence(&window, Prime::TWO).unwrap();
    for fit in &fits {
        let sub: Vec<u32> = all
            .iter()
            .filter(|(n, _)| n % 2 == fit.parity)
            .map(|&(_, v)| v)
            .collect();
        let order = fit.recurrence.order();
        let step1 = LinearRecurrence {
            step: 1,
            ..fit.recurrence.clone()
        };
        let ext = c2kit::algebra::run_recurrence(&step1, &sub[..order], sub.len() - order).unwrap();
        assert_eq!(ext, sub);
    }
}

#[test]
fn table_printed_system_diverges_at_17() {
    let table = table23_system().unwrap().run(20).unwrap();
    let transfer = values(FamilyKind::C23, Route::Transfer, 7, 20);
    let first_bad = transfer.iter().find(|&&(n, v)| table[&n] as u32 != v).map(|&(n, _)| n);
    assert_eq!(first_bad, Some(17));
}

#[test]
fn table_data_round_trips() {
    let data = TableData::load().unwrap();
    assert_eq!(data.rows.len(), 22);
    assert_eq!(data.equations.len(), 22);
    let text = serde_json::to_string_pretty(&data).unwrap();
    assert_eq!(text.trim(), EQUATION_TABLE_JSON.trim());
}

#[test]
fn table_cells_that_fail_as_identities() {
    let data = TableData::load().unwrap();
    let bad: BTreeSet<(String, String)> = verify_table(&data).unwrap().into_iter().collect();
    let want: BTreeSet<(String, String)> = [
        ("b1", "gamma"),
        ("b3", "gamma"),
        ("e2", "gamma"),
        ("g", "gamma"),
        ("h2", "delta"),
        ("h3", "delta"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(bad, want);
}

#[test]
fn equations_from_table_rows() {
    let data = TableData::load().unwrap();
    let derived = derive_equations(&data).unwrap();
    let key = |e: &Equation| e.terms.iter().cloned().collect::<BTreeSet<_>>();
    let mut differ = Vec::new();
    for (d, s) in derived.iter().zip(&data.equations) {
        assert_eq!(d.name, s.name);
        if key(d) != key(s) {
            let extra: Vec<_> = key(d).difference(&key(s)).cloned().collect();
            assert!(key(s).is_subset(&key(d)));
            assert_eq!(extra.len(), 1);
            assert_eq!((extra[0].name.as_str(), extra[0].lag), ("D", 4));
            differ.push(d.name.clone());
        }
    }
    assert_eq!(differ, vec!["J", "M"]);
    assert!(!same_equations(&derived, &data.equations));
}

#[test]
fn derived_j_and_m_match_forest_counts() {
    let data = TableData::load().unwrap();
    let v: Vec<_> = (7..=11).map(|n| product_values(&data, n).unwrap()).collect();
    let at = |n: usize, name: &str| v[n - 7][name];
    assert_eq!(at(11, "J"), at(9, "G") ^ at(7, "Q") ^ at(7, "D"));
    assert_eq!(at(11, "M"), at(9, "A") ^ at(7, "Q") ^ at(7, "D"));
    assert_ne!(at(7, "D"), 0);
}

#[test]
fn system_json_round_trips() {
    let sys = build_transfer(FamilyKind::C13).unwrap();
    let text = serde_json::to_string(&sys).unwrap();
    let back: RecurrenceSystem = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
    assert_eq!(back.states, sys.states);
}

#[test]
fn seed_states_match_pair_values() {
    let sys = build_transfer(FamilyKind::C13).unwrap();
    let len = sys.strip.base_len();
    let seeds = seed_states(&sys, len).unwrap();
    for (i, s) in sys.states.iter().enumerate().take(40) {
        let v = strip_pair_value(&sys.strip, len, &s.first, &s.second).unwrap();
        assert_eq!(seeds[i], v, "{s}");
    }
}

#[test]
fn two_k_plus_2_vanishes() {
    for k in 3..=6 {
        let direct = values(FamilyKind::TwoKPlus2, Route::Direct, k, k);
        assert_eq!(direct, vec![(k, 0)]);
        let cases = two_k_plus_2_cases(k).unwrap();
        assert!(cases.mirrors_balanced);
        assert_eq!(cases.c2(), 0);
        assert_eq!(cases.symmetric_total % 2, 0);
    }
}

#[test]
fn zigzag_has_no_strip_system() {
    let spec = FamilySpec {
        kind: FamilyKind::Zigzag,
        start: 5,
        end: 6,
        p: Prime::TWO,
    };
    assert!(matches!(
        c2_sequence(&spec, Route::Transfer, &cfg()),
        Err(RecurrenceError::Unsupported { .. })
    ));
    for (n, v) in values(FamilyKind::Zigzag, Route::Direct, 5, 8) {
        assert_eq!(Some(v), FamilyKind::Zigzag.closed_form(Prime::TWO, n));
    }
}
