mod common;

use decisive::bounds::{
    count_quadruples_enumeration, count_quadruples_inclusion_exclusion, quadruple_threshold,
    triple_coverage,
};
use decisive::coloring::{check_no_rainbow, is_rainbow, verify_no_rainbow, Violation};
use decisive::emit::cnf::{decode_cnf, emit_cnf_aux, encode_coloring};
use decisive::emit::ilp::{emit_ilp, evaluate_ilp, ilp_assignment_from_coloring, IlpCheck};
use decisive::io::{parse_pattern_str, write_pattern, PatternFormat};
use decisive::nrc::{nrc, nrc2};
use decisive::oracle::{brute_force_nrc, count_nrc};
use decisive::pipeline::Strategy;
use decisive::reduce::{dedup, incidence_matrix, row_count_screen, zero_and_screen};
use decisive::{decide, decisive_subset, Coloring, CoveragePattern, DecideOptions, Hypergraph, NrcConfig};
use proptest::prelude::*;

use common::pattern_of;

fn edges_from_masks(n: usize, masks: &[u32]) -> Vec<Vec<usize>> {
    masks
        .iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|e: &Vec<usize>| !e.is_empty())
        .collect()
}

prop_compose! {
    fn hypergraph(max_n: usize, max_edges: usize)(n in 1..=max_n)
        (masks in prop::collection::vec(1u32..(1 << n), 0..=max_edges), n in Just(n)) -> Hypergraph {
        Hypergraph::new(n, edges_from_masks(n, &masks)).unwrap()
    }
}

prop_compose! {
    fn hypergraph_with_coloring(max_n: usize, max_edges: usize, r: u8)(h in hypergraph(max_n, max_edges))
        (colors in prop::collection::vec(1..=r, h.node_count()), h in Just(h)) -> (Hypergraph, Coloring) {
        (h, Coloring::from_assignment(r, colors).unwrap())
    }
}

prop_compose! {
    fn pattern(min_n: usize, max_n: usize, max_k: usize)(n in min_n..=max_n)
        (masks in prop::collection::vec(1u32..(1 << n), 0..=max_k), n in Just(n)) -> CoveragePattern {
        CoveragePattern::from_sets(n, &edges_from_masks(n, &masks)).unwrap()
    }
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn verify_matches_definition((h, c) in hypergraph_with_coloring(8, 6, 4)) {
        let expected = c.is_surjective() && h.edges().iter().all(|e| !is_rainbow(e, &c, 4));
        prop_assert_eq!(verify_no_rainbow(&h, &c), expected);
        match check_no_rainbow(&h, &c) {
            Ok(()) => prop_assert!(expected),
            Err(Violation::NotSurjective { .. }) => prop_assert!(!c.is_surjective()),
            Err(Violation::RainbowEdge { .. }) => prop_assert!(c.is_surjective()),
            Err(v) => prop_assert!(false, "unexpected violation {v}"),
        }
    }

    #[test]
    fn one_color_verifies_iff_no_edges(h in hypergraph(8, 4)) {
        let ones = Coloring::try_new(1, vec![1; h.node_count()]).unwrap();
        prop_assert_eq!(verify_no_rainbow(&h, &ones), h.edge_count() == 0);
    }

    #[test]
    fn components_ignore_edge_order_and_copies(h in hypergraph(10, 6), seed in any::<u64>()) {
        let mut edges = h.edges().to_vec();
        edges.extend(h.edges().iter().cloned());
        let len = edges.len();
        if len > 0 {
            edges.rotate_left((seed as usize) % len);
        }
        edges.reverse();
        let other = Hypergraph::new(h.node_count(), edges).unwrap();
        let a = h.connected_components();
        let b = other.connected_components();
        prop_assert_eq!(a.count, b.count);
        for u in 0..h.node_count() {
            for v in 0..h.node_count() {
                prop_assert_eq!(a.component[u] == a.component[v], b.component[u] == b.component[v]);
            }
        }
    }

    #[test]
    fn pattern_round_trips(p in pattern(1, 9, 6)) {
        for f in [PatternFormat::MatrixCsv, PatternFormat::LocusList] {
            let q = parse_pattern_str(&write_pattern(&p, f), f).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.hypergraph(), p.hypergraph());
        }
    }

    #[test]
    fn oracle_count_and_search_agree(h in hypergraph(6, 5), r in 1u8..=4) {
        let found = brute_force_nrc(&h, r, 14).unwrap();
        prop_assert_eq!(found.is_some(), count_nrc(&h, r, 14).unwrap() > 0);
        if let Some(c) = found {
            prop_assert!(verify_no_rainbow(&h, &c));
        }
        prop_assert_eq!(brute_force_nrc(&h, r, 14).unwrap(), brute_force_nrc(&h, r, 14).unwrap());
    }

    #[test]
    fn searches_match_oracle(h in hypergraph(9, 7), r in 2u8..=4) {
        prop_assume!(h.node_count() >= r as usize);
        let out = nrc(&h, r, &NrcConfig::default()).unwrap();
        let truth = brute_force_nrc(&h, r, 14).unwrap().is_some();
        prop_assert_eq!(out.has_witness(), truth);
        if let Some(c) = &out.witness {
            prop_assert!(verify_no_rainbow(&h, c));
            prop_assert_eq!(c.r(), r);
        }
        // sequential runs repeat exactly; parallel runs keep the verdict
        prop_assert_eq!(&nrc(&h, r, &NrcConfig::default()).unwrap(), &out);
        let par = nrc(&h, r, &NrcConfig { parallel: true, ..NrcConfig::default() }).unwrap();
        prop_assert_eq!(par.has_witness(), truth);
    }

    #[test]
    fn enough_components_give_witnesses(h in hypergraph(10, 4)) {
        prop_assume!(h.node_count() >= 2);
        let count = h.connected_components().count;
        prop_assert_eq!(nrc2(&h).unwrap().has_witness(), count >= 2);
        for r in 3u8..=4 {
            if count >= r as usize {
                prop_assert!(nrc(&h, r, &NrcConfig::default()).unwrap().has_witness());
            }
        }
    }

    #[test]
    fn small_edges_do_not_matter(h in hypergraph(8, 7), r in 2u8..=4) {
        prop_assume!(h.node_count() >= r as usize);
        let trimmed = h.without_small_edges(r as usize);
        let a = nrc(&h, r, &NrcConfig::default()).unwrap().has_witness();
        let b = nrc(&trimmed, r, &NrcConfig::default()).unwrap().has_witness();
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, brute_force_nrc(&trimmed, r, 14).unwrap().is_some());
    }

    #[test]
    fn dedup_reconstructs_membership(p in pattern(1, 12, 6)) {
        let m = incidence_matrix(&p);
        let ri = dedup(&m);
        for (j, locus) in p.loci().iter().enumerate() {
            for i in 0..p.n() {
                let rep_row = ri.matrix.get(ri.class_of[i], j);
                prop_assert_eq!(locus.taxa.contains(&i), rep_row);
            }
        }
        prop_assert_eq!(ri.source_n(), p.n());
        prop_assert!(ri.reduced_n() <= p.n());
    }

    #[test]
    fn row_count_screen_implies_zero_and(p in pattern(4, 12, 3)) {
        let ri = dedup(&incidence_matrix(&p));
        if row_count_screen(&ri) {
            let c = zero_and_screen(&ri);
            prop_assert!(c.is_some());
            prop_assert!(verify_no_rainbow(&p.hypergraph(), &c.unwrap()));
        }
    }

    #[test]
    fn quadruple_counts_agree(p in pattern(1, 12, 6)) {
        prop_assert_eq!(
            count_quadruples_inclusion_exclusion(&p),
            count_quadruples_enumeration(&p, u128::MAX).unwrap()
        );
    }

    #[test]
    fn ilp_dimensions(p in pattern(4, 20, 8)) {
        let model = emit_ilp(&p).unwrap();
        let (n, k) = (p.n(), p.k());
        prop_assert_eq!(model.row_count(), n + 4 + 9 * k);
        prop_assert_eq!(model.column_count(), 4 * n + 4 * k);
        let coverage: usize = p.loci().iter().map(|l| l.taxa.len()).sum();
        prop_assert_eq!(model.nonzero_count(), 8 * n + 8 * coverage + 12 * k);
        prop_assert_eq!(model.to_lp(), emit_ilp(&p).unwrap().to_lp());
    }

    #[test]
    fn ilp_feasible_iff_some_coloring(p in pattern(4, 6, 5)) {
        let model = emit_ilp(&p).unwrap();
        let h = p.hypergraph();
        let feasible = common::all_colorings(p.n()).any(|colors| {
            let c = Coloring::from_assignment(4, colors).unwrap();
            evaluate_ilp(&model, &ilp_assignment_from_coloring(&p, &c).unwrap()).unwrap()
                == IlpCheck::Feasible
        });
        prop_assert_eq!(feasible, brute_force_nrc(&h, 4, 14).unwrap().is_some());
    }

    #[test]
    fn cnf_round_trip((h, c) in hypergraph_with_coloring(8, 6, 4)) {
        prop_assert_eq!(decode_cnf(&encode_coloring(&c), c.len()).unwrap(), c.clone());
        if h.node_count() >= 4 {
            let f = emit_cnf_aux(&h).unwrap();
            let sat = f.evaluate(&f.complete_assignment(&h, &encode_coloring(&c)));
            prop_assert_eq!(sat, verify_no_rainbow(&h, &c));
            prop_assert_eq!(f.to_dimacs(), emit_cnf_aux(&h).unwrap().to_dimacs());
        }
    }

    #[test]
    fn strategies_agree(p in pattern(1, 9, 6)) {
        let truth = decide(&p, &DecideOptions::with_strategy(Strategy::Oracle)).unwrap().decisive;
        for s in [Strategy::Auto, Strategy::Direct, Strategy::Fpt] {
            let v = decide(&p, &DecideOptions::with_strategy(s)).unwrap();
            prop_assert_eq!(v.decisive, truth, "{:?}", s);
            if let Some(c) = v.witness_coloring() {
                prop_assert!(verify_no_rainbow(&p.hypergraph(), &c));
                let blocks = v.witness.as_ref().unwrap();
                prop_assert_eq!(blocks.len(), 4);
                prop_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
                let meets_all = |l: &decisive::pattern::Locus| {
                    blocks.iter().all(|b| b.iter().any(|t| l.taxa.contains(t)))
                };
                prop_assert!(!p.loci().iter().any(meets_all));
            } else {
                prop_assert!(v.decisive);
            }
        }
        if truth && p.n() >= 4 {
            prop_assert!(triple_coverage(&p).is_ok());
            prop_assert!(count_quadruples_inclusion_exclusion(&p) >= quadruple_threshold(p.n()));
        }
    }

    #[test]
    fn decide_ignores_order(p in pattern(4, 9, 6), seed in any::<u64>()) {
        let n = p.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed as usize % n);
        perm.swap(0, (seed as usize >> 8) % n);
        let mut order: Vec<usize> = (0..p.k()).collect();
        order.reverse();
        let q = p.permuted(&perm, &order).unwrap();
        let opts = DecideOptions::default();
        prop_assert_eq!(decide(&p, &opts).unwrap().decisive, decide(&q, &opts).unwrap().decisive);
    }

    #[test]
    fn subset_terminates_decisive(p in pattern(1, 10, 6)) {
        let opts = DecideOptions::default();
        let t = decisive_subset(&p, &opts).unwrap();
        prop_assert!(t.removed.len() <= p.n());
        prop_assert!(decide(&t.pattern, &opts).unwrap().decisive);
        prop_assert_eq!(t.kept.len() + t.removed.len(), p.n());
    }
}

#[test]
fn pattern_of_keeps_edges() {
    let h = Hypergraph::new(5, vec![vec![0, 1, 2, 3], vec![3, 4]]).unwrap();
    assert_eq!(pattern_of(&h).hypergraph(), h);
}
