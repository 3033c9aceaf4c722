use gpbalance::balance::{explicit_report, full_report};
use gpbalance::{build_gp, distance_profile, Error, GpParams, GpVertex, Graph, Verdict};

#[test]
fn pair_distance_matches_all_pairs_bfs() {
    for n in 5..=40 {
        for k in (1..).take_while(|&k| 2 * k < n) {
            let p = GpParams::new(n, k).unwrap();
            let prof = distance_profile(p);
            let ap = build_gp(p).all_pairs();
            assert_eq!(prof.diameter(), ap.diameter(), "GP({n},{k})");
            for a in 0..2 * n {
                for b in 0..2 * n {
                    assert_eq!(prof.pair_distance(p.decode(a), p.decode(b)).unwrap(), ap.get(a, b), "GP({n},{k})");
                }
            }
        }
    }
}

#[test]
fn class_verdicts_match_explicit_pairs() {
    for n in 5..=40 {
        for k in (1..).take_while(|&k| 2 * k < n) {
            let p = GpParams::new(n, k).unwrap();
            let fast = full_report(p);
            let slow = explicit_report(p);
            assert!(fast.same_verdicts(&slow), "GP({n},{k})\n{fast:?}\n{slow:?}");
        }
    }
}

#[test]
fn petersen_graph_is_highly_balanced() {
    let r = full_report(GpParams::new(5, 2).unwrap());
    assert_eq!(r.diameter, 2);
    assert!(r.is_highly_balanced());
}

#[test]
fn generic_graph_verdicts() {
    let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(path.diameter(), 3);
    assert!(
        path.is_l_distance_balanced(1).unwrap() == Verdict::Witness { x: 0, y: 1, count: path.w_count(0, 1).unwrap() }
    );
    assert!(path.is_l_distance_balanced(3).unwrap().is_balanced());
    assert!(matches!(path.is_l_distance_balanced(4), Err(Error::OutOfRange { .. })));
    assert_eq!(path.mostar_index(), 4);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(matches!(Graph::from_edges(3, [(0, 1)]), Err(Error::Disconnected(2))));
    assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::MalformedGraph(_))));
    assert!(matches!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(Error::MalformedGraph(_))));
    assert!(matches!(GpParams::new(6, 3), Err(Error::InvalidParams(_))));
    assert!(matches!(GpParams::new(2, 0), Err(Error::InvalidParams(_))));
    let prof = distance_profile(GpParams::new(7, 2).unwrap());
    assert!(prof.pair_distance(GpVertex::outer(0), GpVertex::inner(7)).is_err());
}

#[test]
fn edge_list_round_trip() {
    let g = Graph::parse_edge_list("# square\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
    assert_eq!(g.mostar_index(), 0);
    assert!(matches!(Graph::parse_edge_list("0 1\n0 x\n"), Err(Error::EdgeList { .. })));
}
