mod common;

use std::collections::BTreeSet;

use common::*;
use rainbow_matching::generators::{gen_latin_bridge, read_bridge_matching, LatinSquare};
use rainbow_matching::solvers::{exact_max, extract_matching_triangles, find_aux_matching, greedy_extend, SolverBudget};
use rainbow_matching::verifiers::{
    check_horn_counting, check_observation_horn, horn_census, validate_aux, Verdict, AUDIT_MIN_T,
};
use rainbow_matching::{Colour, ColourClass, EdgePair, Instance, Matching, RainbowMatching, Vertex};

fn matchings(g: &Instance) -> Vec<Matching> {
    let exact = exact_max(g, SolverBudget::default()).unwrap().best;
    let greedy = greedy_extend(g, &RainbowMatching::default()).unwrap();
    let mut out = vec![exact.to_matching().unwrap(), greedy.to_matching().unwrap()];
    // a sub-matching leaves more vertices free
    let half: Vec<EdgePair> = exact.pairs.iter().step_by(2).copied().collect();
    out.push(Matching::new(half).unwrap());
    out
}

#[test]
fn horn_census_matches_brute_force() {
    for (i, g) in corpus().iter().enumerate() {
        assert!(g.vertex_count() <= 24);
        let all: BTreeSet<Colour> = g.colours().collect();
        for m in matchings(g) {
            for colours in [all.clone(), BTreeSet::new()] {
                let census = horn_census(g, &m, &colours);
                let ours: Vec<_> = census
                    .certificates
                    .iter()
                    .map(|h| (h.e, h.e1, h.c1, h.e2, h.c2))
                    .collect();
                let mut sorted = ours.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, oracle_horns(g, m.pairs(), &colours), "corpus {i}");
            }
        }
    }
}

#[test]
fn horn_lemmas_never_violated() {
    let (mut passes, mut checks) = (0, 0);
    for (i, g) in corpus().iter().enumerate() {
        let all: Vec<Colour> = g.colours().collect();
        let all_set: BTreeSet<Colour> = all.iter().copied().collect();
        for m in matchings(g) {
            for k in 1..=4 {
                let v = check_horn_counting(g, &m, &all_set, k);
                assert!(!v.is_violation(), "corpus {i}: {v}");
                passes += matches!(v, Verdict::Pass { .. }) as usize;
                checks += 1;
            }
            for &e in m.pairs() {
                for a in 0..all.len() {
                    for b in a + 1..all.len() {
                        for c in b + 1..all.len() {
                            let cs = BTreeSet::from([all[a], all[b], all[c]]);
                            let v = check_observation_horn(g, &m, e, &cs).unwrap();
                            assert!(!v.is_violation(), "corpus {i}: {v}");
                            passes += matches!(v, Verdict::Pass { .. }) as usize;
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(passes > 0 && checks > passes, "{passes} of {checks}");
}

#[test]
fn triangle_extraction_matches_brute_force() {
    let mut cases = 0;
    for seed in 0..20_000u64 {
        let Some((m, a, h, s)) = extraction_case(seed) else {
            continue;
        };
        cases += 1;
        let class = ColourClass::new(0, h.clone());
        let out = extract_matching_triangles(&m, &a, &class, s).unwrap();
        let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
        let matched: BTreeSet<Vertex> = m.vertices().collect();
        let m_of_a: BTreeSet<Vertex> = a.iter().map(|&x| m.partner(x).unwrap()).collect();
        let inner: BTreeSet<Vertex> = matched.iter().copied().filter(|v| !a_set.contains(v) && !m_of_a.contains(v)).collect();
        let vc = 2 * m.len() as Vertex + 8;
        let outer: BTreeSet<Vertex> = (0..vc).filter(|v| a_set.contains(v) || !matched.contains(v)).collect();
        for p in out.pairs() {
            assert!(h.iter().any(|k| k.contains(&p.a()) && k.contains(&p.b())));
            let (x, y) = (p.a(), p.b());
            assert!((inner.contains(&x) && outer.contains(&y)) || (inner.contains(&y) && outer.contains(&x)));
        }
        assert!(out.len() >= s, "seed {seed}");
        assert_eq!(out.len(), oracle_constrained_matching(&h, &inner, &outer), "seed {seed}");
        if cases == 300 {
            break;
        }
    }
    assert_eq!(cases, 300);
}

#[test]
fn aux_audits_hold_on_maximum_matchings() {
    let mut audited = 0;
    for seed in 0..500u64 {
        let g = repetitive_instance(seed, 10, 14);
        let r = exact_max(&g, SolverBudget::default()).unwrap();
        assert!(r.optimal);
        for t in 1..=7 {
            let aux = find_aux_matching(&g, &r.best, t).unwrap();
            let report = validate_aux(&g, &r.best, &aux, true);
            assert!(report.passed(), "seed {seed} t {t}: {:?}", report.violations);
            if t >= AUDIT_MIN_T {
                assert!(report.audited);
                audited += !aux.is_empty() as usize;
            }
        }
    }
    assert!(audited > 0);
}

#[test]
fn latin_transversals_match_brute_force() {
    for (rows, c) in [
        (vec![vec![0, 1], vec![1, 0]], 0),
        (vec![vec![0, 1], vec![1, 0]], 2),
        (LatinSquare::cyclic(3).rows().map(<[u32]>::to_vec).collect(), 0),
        (LatinSquare::cyclic(4).rows().map(<[u32]>::to_vec).collect(), 0),
        (LatinSquare::cyclic(5).rows().map(<[u32]>::to_vec).collect(), 0),
        (vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]], 0),
    ] {
        let sq = LatinSquare::from_rows(&rows).unwrap();
        let g = gen_latin_bridge(&sq, c).unwrap();
        let r = exact_max(&g, SolverBudget::default()).unwrap();
        assert!(r.optimal);
        let t = read_bridge_matching(&sq, c, &r.best).unwrap();
        if c == 0 {
            assert_eq!(t.len(), oracle_max_transversal(&rows), "{rows:?}");
        }
        assert_eq!(r.size(), oracle_max_rainbow(&g));
        let (rs, cs, ss): (BTreeSet<_>, BTreeSet<_>, BTreeSet<_>) = (
            t.cells.iter().map(|x| x.0).collect(),
            t.cells.iter().map(|x| x.1).collect(),
            t.cells.iter().map(|x| x.2).collect(),
        );
        assert_eq!((rs.len(), cs.len(), ss.len()), (t.cells.len(), t.cells.len(), t.cells.len()));
    }
}
