#![allow(dead_code)]

use c2kit::graph::{decompleted_circulant, CirculantSpec};
use c2kit::Graph;

pub fn circ(n: usize, j: usize, k: usize) -> Graph {
    decompleted_circulant(CirculantSpec::new(n, j, k).unwrap()).unwrap()
}

/// Small connected graphs plus decompleted circulants, smallest first.
pub fn test_graphs() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("triangle".to_string(), Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()),
        (
            "square".to_string(),
            Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
        ),
        (
            "wheel4".to_string(),
            Graph::new(
                5,
                vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)],
            )
            .unwrap(),
        ),
        (
            "prism".to_string(),
            Graph::new(
                6,
                vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
            )
            .unwrap(),
        ),
        (
            "k33".to_string(),
            Graph::new(
                6,
                (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
            )
            .unwrap(),
        ),
    ];
    for (n, j, k) in [
        (5, 1, 2),
        (6, 1, 2),
        (7, 1, 2),
        (7, 1, 3),
        (7, 2, 3),
        (8, 1, 2),
        (8, 1, 3),
        (9, 1, 2),
        (9, 1, 4),
        (9, 2, 3),
        (10, 1, 3),
        (11, 1, 3),
        (12, 2, 5),
        (13, 1, 5),
        (14, 1, 3),
    ] {
        out.push((format!("C{n}({j},{k})"), circ(n, j, k)));
    }
    out
}

use c2kit::algebra::{MultilinearPoly, Poly, Prime};
use c2kit::c2::{count_poly_zeros, kirchhoff_count, CountConfig};
use c2kit::graph_polys::{
    dodgson_raw, dodgson_vs_forests, five_invariant, forest_combination, kirchhoff, DodgsonSpec,
};
use c2kit::recurrences::FamilyKind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn divisible_by_p_squared() -> Check {
    for (name, g) in test_graphs() {
        for (p, max_edges) in [(Prime::TWO, 24), (Prime::THREE, 16)] {
            if g.edge_count() > max_edges {
                continue;
            }
            let count = kirchhoff_count(&g, p, &CountConfig::default()).map_err(|e| e.to_string())?;
            if count % (p.get() * p.get()) as u128 != 0 {
                return Err(format!("{name} at p={p}: {count} points"));
            }
        }
    }
    Ok(())
}

pub fn contraction_deletion() -> Check {
    for (name, g) in test_graphs() {
        if g.edge_count() > 12 {
            continue;
        }
        let psi = kirchhoff(&g).map_err(|e| e.to_string())?;
        for e in 0..g.edge_count() {
            let deleted = dodgson_raw(&g, &DodgsonSpec::new(&[e], &[e], &[])).unwrap();
            let contracted = dodgson_raw(&g, &DodgsonSpec::new(&[], &[], &[e])).unwrap();
            let rebuilt = MultilinearPoly::var(e).mul(&deleted).unwrap().add(&contracted).unwrap();
            if rebuilt.terms() != psi.terms() {
                return Err(format!("{name}, edge {e}"));
            }
        }
    }
    Ok(())
}

/// Dodgson specs used by the family drivers.
pub fn driver_specs(edges: &[usize]) -> Vec<DodgsonSpec> {
    match *edges {
        [i, j, k] => vec![
            DodgsonSpec::new(&[i], &[j], &[k]),
            DodgsonSpec::new(&[i, k], &[j, k], &[]),
        ],
        [i, j, k, l] => vec![
            DodgsonSpec::new(&[i, j], &[k, l], &[]),
            DodgsonSpec::new(&[i, k], &[j, l], &[]),
        ],
        _ => vec![],
    }
}

pub fn forests_reconstruct_dodgsons() -> Check {
    let mut checked = 0;
    for kind in FamilyKind::ALL {
        for index in kind.min_index()..kind.min_index() + 3 {
            let Ok(g) = kind.graph(index) else {
                continue;
            };
            if g.edge_count() > 14 {
                continue;
            }
            for spec in driver_specs(&kind.dodgson_edges(&g, index).unwrap()) {
                let raw = dodgson_raw(&g, &spec).map_err(|e| e.to_string())?;
                let forests = dodgson_vs_forests(&g, &spec).map_err(|e| format!("{kind}: {e}"))?;
                let allowed = g.all_edges() & !(spec.rows | spec.cols | spec.zeroed);
                let back = forest_combination(&g, allowed, &forests).unwrap();
                if back.terms() != raw.terms() {
                    return Err(format!("{kind} at {index}"));
                }
                checked += 1;
            }
        }
    }
    if checked < 10 {
        return Err(format!("only {checked} specs checked"));
    }
    Ok(())
}

pub fn permutations5(items: [usize; 5]) -> Vec<[usize; 5]> {
    fn heap(k: usize, a: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 1 {
            out.push(*a);
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a = items;
    let mut out = Vec::new();
    heap(5, &mut a, &mut out);
    out
}

pub fn five_invariant_order_free() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in [circ(7, 1, 3), circ(7, 2, 3), circ(8, 1, 3)] {
        let mut ids: Vec<usize> = (0..g.edge_count()).collect();
        ids.shuffle(&mut rng);
        let edges = [ids[0], ids[1], ids[2], ids[3], ids[4]];
        let base = five_invariant(&g, edges).map_err(|e| e.to_string())?.poly;
        for p in permutations5(edges) {
            if five_invariant(&g, p).unwrap().poly != base {
                return Err(format!("order {p:?}"));
            }
        }
    }
    Ok(())
}

/// Coefficient of x_0^{p-1}..x_{n-1}^{p-1} in f^{p-1}.
pub fn top_coefficient(f: &Poly, n: usize, p: Prime) -> i128 {
    let mut power = Poly::constant(1);
    for _ in 0..p.get() - 1 {
        power = power.mul(f).unwrap();
    }
    power
        .terms()
        .iter()
        .filter(|(m, _)| (0..n).all(|v| m.exponent(v) == p.get() - 1))
        .map(|&(_, c)| c)
        .sum()
}

/// [f]_p ≡ (-1)^{n+1} · top coefficient, for f of degree n in n variables.
pub fn lemma_holds(terms: Vec<(u128, i128)>, n: usize, p: Prime) -> Result<bool, String> {
    let f = MultilinearPoly::from_terms(0, terms).map_err(|e| e.to_string())?;
    if f.degree() != Some(n as u32) {
        return Ok(true);
    }
    let f = Poly::from_multilinear(&f).map_err(|e| e.to_string())?;
    let vars: Vec<usize> = (0..n).collect();
    let zeros = count_poly_zeros(&f, &vars, p).map_err(|e| e.to_string())? as i128;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    Ok((zeros - sign * top_coefficient(&f, n, p)).rem_euclid(p.get() as i128) == 0)
}

pub fn coefficient_lemma_random(cases: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..cases {
        let n = rng.gen_range(1..=4usize);
        let top = (1u128 << n) - 1;
        let mut terms = vec![(top, [1, -1, 2, 3][rng.gen_range(0..4)])];
        for _ in 0..rng.gen_range(0..6) {
            terms.push((rng.gen_range(0..top), rng.gen_range(-3..=3)));
        }
        let p = [Prime::TWO, Prime::THREE, Prime::new(5).unwrap()][case % 3];
        if !lemma_holds(terms.clone(), n, p)? {
            return Err(format!("case {case}: {terms:?} at p={p}"));
        }
    }
    Ok(())
}

pub fn worker_invariance() -> Check {
    for g in [circ(7, 2, 3), circ(8, 1, 3), circ(9, 1, 4)] {
        for p in [Prime::TWO, Prime::THREE] {
            if p == Prime::THREE && g.edge_count() > 12 {
                continue;
            }
            let count = |w: usize| kirchhoff_count(&g, p, &CountConfig::default().with_workers(w));
            let base = count(1).map_err(|e| e.to_string())?;
            for w in [4, 16] {
                if count(w).map_err(|e| e.to_string())? != base {
                    return Err(format!("{w} workers at p={p}"));
                }
            }
        }
    }
    Ok(())
}
