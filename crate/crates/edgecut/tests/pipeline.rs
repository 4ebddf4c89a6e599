use edgecut::audit::audit_run;
use edgecut::generate::{barbell, clique, contracted_instance, cycle, grid, planted, random_connected};
use edgecut::io::{parse_dimacs, parse_edgelist, write_dimacs, write_edgelist};
use edgecut::kt_framework::{kt_sparsify, run_framework, ExitReason, KtError, KtParams, Profile};
use edgecut::mincut_pipeline::{min_cut, stoer_wagner, Mode, PathTaken};
use edgecut::oracles::{brute_edge_connectivity, exact_edge_connectivity};
use proptest::prelude::*;

#[test]
fn small_families_match_oracle() {
    let graphs = [cycle(9).unwrap(), clique(7).unwrap(), barbell(5, 2).unwrap(), grid(4, 5).unwrap()];
    for g in &graphs {
        let (want, _) = exact_edge_connectivity(g).unwrap();
        assert_eq!(brute_edge_connectivity(g).unwrap(), want);
        for mode in [Mode::Auto, Mode::Direct, Mode::Kt] {
            let ans = min_cut(g, Profile::Desk, mode).unwrap();
            assert_eq!(ans.value, want);
            assert_eq!(g.cut_stats(&ans.witness).unwrap().boundary, want);
        }
    }
}

#[test]
fn planted_cut_found_after_sparsifying() {
    let g = planted(600, 64, 7, 11).unwrap();
    let ans = min_cut(&g, Profile::Desk, Mode::Kt).unwrap();
    assert_eq!(ans.path_taken, PathTaken::Sparsified);
    assert_eq!(ans.value, 7);
    assert_eq!(ans.witness.len(), 300);
    assert!(ans.stats.gbar_edges < g.edge_count() / 10);
}

#[test]
fn sparsifier_preserves_connectivity() {
    let g = planted(400, 62, 3, 5).unwrap();
    let params = KtParams::desk(g.min_degree(), g.edge_count());
    let (gbar, log) = kt_sparsify(&g, params).unwrap();
    assert!(matches!(log.exit, ExitReason::PassiveFraction | ExitReason::Collapsed | ExitReason::NoProgress));
    let (sw, _) = stoer_wagner(&gbar).unwrap();
    assert_eq!(sw.min(g.min_degree()), 3);
    assert_eq!(gbar.original_vertex_count(), 400);
}

#[test]
fn sparsify_rejects_low_degree() {
    let g = cycle(10).unwrap();
    let err = kt_sparsify(&g, KtParams::desk(2, g.edge_count())).unwrap_err();
    assert!(matches!(err, KtError::BelowFloor { .. }));
}

#[test]
fn traced_runs_pass_audit() {
    for seed in 1..=6 {
        let g = contracted_instance(12, 2, 60, 180, 3, seed).unwrap();
        let mut p = KtParams::desk(60, g.edge_count());
        p.trace = true;
        let (_, log) = run_framework(g.clone(), p).unwrap();
        let rep = audit_run(&g, &log, &p).unwrap();
        assert_eq!(rep.violations(), 0, "{rep:?}");
    }
}

#[test]
fn formats_round_trip() {
    let g = random_connected(30, 0.2, 4).unwrap();
    assert_eq!(parse_edgelist(&write_edgelist(&g)).unwrap().edge_list(), g.edge_list());
    assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap().edge_list(), g.edge_list());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cut_matches_oracle(n in 2usize..14, p in 0.05f64..0.9, seed in any::<u64>()) {
        let g = random_connected(n, p, seed).unwrap();
        let (want, _) = exact_edge_connectivity(&g).unwrap();
        let ans = min_cut(&g, Profile::Desk, Mode::Auto).unwrap();
        prop_assert_eq!(ans.value, want);
        prop_assert_eq!(g.cut_stats(&ans.witness).unwrap().boundary, want);
    }
}
