//! End-to-end colorer behavior on handcrafted structured hosts: the
//! good-partition route, and the clique-flap family where the structure
//! dichotomy runs out and the flagged exact fallback must take over while
//! the coloring bound still holds.

use chromabound_core::colorers::{self, Step};
use chromabound_core::goodgraph;
use chromabound_core::graph::Graph;
use chromabound_core::oracle::{self, OracleBudget, PERFECT_TIER};
use chromabound_core::patterns::{self, ClassId};

fn budget() -> OracleBudget {
    OracleBudget::default()
}

/// C5 on 0..5 plus a clique flap of size `flap` on each listed anchor set.
fn c5_with_flaps(anchors: &[&[usize]], flap: usize) -> Graph {
    c5_with_sized_flaps(&anchors.iter().map(|&a| (a, flap)).collect::<Vec<_>>())
}

fn c5_with_sized_flaps(anchors: &[(&[usize], usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut next = 5;
    for &(anchor, flap) in anchors {
        let flap_vertices: Vec<usize> = (next..next + flap).collect();
        for &x in &flap_vertices {
            for &a in anchor {
                edges.push((a, x));
            }
        }
        for (i, &x) in flap_vertices.iter().enumerate() {
            for &y in &flap_vertices[i + 1..] {
                edges.push((x, y));
            }
        }
        next += flap;
    }
    Graph::from_edge_list(next, &edges).unwrap()
}

#[test]
fn class2_good_partition_route() {
    // one apex clique on v0 plus flaps on {v1,v2} and {v3,v4}: the shape
    // {v0} u A_0 | {v1,v2} u X_1 | {v3,v4} u X_3 validates
    let g = c5_with_flaps(&[&[0], &[1, 2], &[3, 4]], 5);
    // apex flap of size 5 leaves degree 6 at its vertices; grow it by one
    let g = {
        let mut edges = g.to_edge_list();
        let a = g.n();
        for v in [0usize, 5, 6, 7, 8, 9] {
            edges.push((v.min(a), v.max(a)));
        }
        Graph::from_edge_list(a + 1, &edges).unwrap()
    };
    assert!(patterns::is_free(&g, &ClassId::TwoP1P3K4e.forbidden()));
    assert!(g.min_degree_vertex().unwrap().1 > 5, "peeling must not preempt the shape route");
    let omega = oracle::max_clique(&g, &budget()).unwrap().len();
    assert_eq!(omega, 7);

    let (coloring, cert) = colorers::color_2p1_p3(&g, &budget()).unwrap();
    assert_eq!(coloring.palette_size(), 7);
    assert!(
        cert.steps.iter().any(|s| matches!(s, Step::GoodPartitionUsed { .. })),
        "expected the good-partition base, got {:?}",
        cert.steps
    );
    let replayed = colorers::replay(&g, &cert, &budget()).unwrap();
    assert_eq!(replayed.colors(), coloring.colors());
}

#[test]
fn class2_structure_gap_is_flagged_not_hidden() {
    // three 5-clique flaps on {v0,v1}, {v1,v2}, {v3,v4}: a machine-checked
    // class member with min degree 6, omega = chi = 7, neither perfect nor
    // good; the dichotomy has no branch for it, so the colorer must finish
    // through the flagged exact fallback with the bound intact
    let g = c5_with_flaps(&[&[0, 1], &[1, 2], &[3, 4]], 5);
    assert_eq!(g.n(), 20);
    assert!(patterns::is_free(&g, &ClassId::TwoP1P3K4e.forbidden()));
    assert_eq!(g.min_degree_vertex().unwrap().1, 6);
    assert!(!oracle::is_perfect(&g, PERFECT_TIER).unwrap());
    let omega = oracle::max_clique(&g, &budget()).unwrap().len();
    assert_eq!(omega, 7);
    let (chi, _) = oracle::chromatic_number(&g, &budget()).unwrap();
    assert_eq!(chi, 7);

    let (coloring, cert) = colorers::color_2p1_p3(&g, &budget()).unwrap();
    assert_eq!(coloring.palette_size(), 7);
    assert!(coloring.palette_size() <= 6usize.max(omega));
    assert!(cert.fallback_fired(), "the findings channel must record the fallback");
    let replayed = colorers::replay(&g, &cert, &budget()).unwrap();
    assert_eq!(replayed.colors(), coloring.colors());
}

#[test]
fn class3_structure_gap_is_flagged_not_hidden() {
    // 6-clique flaps on {v0,v1}, {v2,v3}, {v4,v0}: class-3 member with min
    // degree 7, omega = chi = 8, not good; same flagged fallback story
    let g = c5_with_flaps(&[&[0, 1], &[2, 3], &[4, 0]], 6);
    assert_eq!(g.n(), 23);
    assert!(patterns::is_free(&g, &ClassId::ThreeP1P2K4e.forbidden()));
    assert_eq!(g.min_degree_vertex().unwrap().1, 7);
    assert!(!oracle::is_perfect(&g, PERFECT_TIER).unwrap());
    let omega = oracle::max_clique(&g, &budget()).unwrap().len();
    assert_eq!(omega, 8);

    let (coloring, cert) = colorers::color_3p1_p2(&g, &budget()).unwrap();
    assert!(coloring.palette_size() <= 7usize.max(omega));
    assert_eq!(coloring.palette_size(), 8);
    assert!(cert.fallback_fired());
}

#[test]
fn class3_f4_shape_route() {
    // apex clique on v4 plus flaps on {v0,v1} and {v2,v3}: the F4 shape
    // {v4} u A_4 | {v0,v1} u X_0 | {v2,v3} u X_2 validates
    let g = c5_with_sized_flaps(&[(&[4], 7), (&[0, 1], 6), (&[2, 3], 6)]);
    assert!(patterns::is_free(&g, &ClassId::ThreeP1P2K4e.forbidden()));
    assert!(g.min_degree_vertex().unwrap().1 > 6);
    let omega = oracle::max_clique(&g, &budget()).unwrap().len();
    assert_eq!(omega, 8);

    let (coloring, cert) = colorers::color_3p1_p2(&g, &budget()).unwrap();
    assert_eq!(coloring.palette_size(), 8);
    assert!(
        cert.steps.iter().any(|s| matches!(s, Step::GoodPartitionUsed { .. })),
        "expected the good-partition base, got {:?}",
        cert.steps
    );
    let replayed = colorers::replay(&g, &cert, &budget()).unwrap();
    assert_eq!(replayed.colors(), coloring.colors());
}

#[test]
fn flap_hosts_are_not_good_graphs() {
    // disjoint 3-clique partitions cannot cover the 20 vertices: every
    // clique has at most 7 vertices and the anchors collide
    let g = c5_with_flaps(&[&[0, 1], &[1, 2], &[3, 4]], 5);
    let parts = goodgraph::GoodPartition::from_slices(
        &[0, 1, 5, 6, 7, 8, 9],
        &[2, 10, 11, 12, 13, 14],
        &[3, 4, 15, 16, 17, 18, 19],
    );
    // this is the only disjoint 3-clique cover shape, and it is not graded
    assert!(goodgraph::validate_good(&g, &parts).is_err());
}
