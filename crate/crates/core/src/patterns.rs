//! Induced-pattern detection and hereditary class membership.
//!
//! Detection is backtracking over host tuples with bitset candidate
//! filtering; the returned embedding is the lexicographically least host
//! tuple with respect to the pattern's canonical vertex order, so every
//! search result is deterministic. Patterns are tiny and fixed, so no
//! general isomorphism machinery is involved.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, VertexSet};

/// The forbidden configurations used by the class recognizers and the
/// structure analysis, plus `Custom` for ad-hoc queries.
///
/// Canonical pattern graphs put constrained vertices first (edges before
/// isolated vertices) so the backtracking search prunes early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternId {
    /// Induced path on k vertices, 1 <= k <= 7.
    Path(usize),
    /// Induced cycle on k vertices, k >= 3.
    Cycle(usize),
    /// Complete graph on k vertices.
    Complete(usize),
    /// K4 minus one edge (the diamond).
    K4MinusE,
    /// One isolated vertex plus two disjoint edges.
    P1Plus2P2,
    /// Two isolated vertices plus a three-vertex path.
    TwoP1PlusP3,
    /// Three isolated vertices plus one edge.
    ThreeP1PlusP2,
    /// A five-cycle plus one isolated vertex.
    C5PlusK1,
    Custom(Graph),
}

impl PatternId {
    /// The canonical pattern graph.
    pub fn graph(&self) -> Graph {
        match self {
            PatternId::Path(k) => {
                debug_assert!((1..=7).contains(k));
                Graph::path(*k)
            }
            PatternId::Cycle(k) => {
                debug_assert!(*k >= 3);
                Graph::cycle(*k)
            }
            PatternId::Complete(k) => Graph::complete(*k),
            PatternId::K4MinusE => {
                Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
            }
            PatternId::P1Plus2P2 => Graph::from_edge_list(5, &[(0, 1), (2, 3)]).unwrap(),
            PatternId::TwoP1PlusP3 => Graph::from_edge_list(5, &[(0, 1), (1, 2)]).unwrap(),
            PatternId::ThreeP1PlusP2 => Graph::from_edge_list(5, &[(0, 1)]).unwrap(),
            PatternId::C5PlusK1 => {
                Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
            }
            PatternId::Custom(g) => g.clone(),
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternId::Path(k) => write!(f, "P{k}"),
            PatternId::Cycle(k) => write!(f, "C{k}"),
            PatternId::Complete(k) => write!(f, "K{k}"),
            PatternId::K4MinusE => write!(f, "K4-e"),
            PatternId::P1Plus2P2 => write!(f, "P1+2P2"),
            PatternId::TwoP1PlusP3 => write!(f, "2P1+P3"),
            PatternId::ThreeP1PlusP2 => write!(f, "3P1+P2"),
            PatternId::C5PlusK1 => write!(f, "C5+K1"),
            PatternId::Custom(g) => write!(f, "custom(n={})", g.n()),
        }
    }
}

/// An injective map from pattern vertices to host vertices preserving both
/// adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks the induced-embedding property against a host graph.
    pub fn verifies(&self, host: &Graph, pattern: &PatternId) -> bool {
        let p = pattern.graph();
        if self.map.len() != p.n() {
            return false;
        }
        for (i, &hu) in self.map.iter().enumerate() {
            if hu >= host.n() {
                return false;
            }
            for (j, &hv) in self.map.iter().enumerate().skip(i + 1) {
                if hu == hv || p.has_edge(i, j) != host.has_edge(hu, hv) {
                    return false;
                }
            }
        }
        true
    }
}

/// A forbidden pattern found in a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pattern: PatternId,
    pub embedding: Embedding,
}

/// Finds an induced embedding of the pattern, or `None`.
///
/// Returns the lexicographically least host tuple in the pattern's
/// canonical vertex order.
pub fn find_induced(g: &Graph, pattern: &PatternId) -> Option<Embedding> {
    let p = pattern.graph();
    find_induced_graph(g, &p).map(|map| Embedding { map })
}

fn find_induced_graph(g: &Graph, p: &Graph) -> Option<Vec<usize>> {
    let k = p.n();
    if k > g.n() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    // hosts with enough degree for each pattern position
    let base: Vec<VertexSet> = (0..k)
        .map(|i| (0..g.n()).filter(|&h| g.degree(h) >= p.degree(i)).collect())
        .collect();
    let mut map: Vec<usize> = Vec::with_capacity(k);
    let mut used = VertexSet::new();
    if extend(g, p, &base, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    p: &Graph,
    base: &[VertexSet],
    map: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    let i = map.len();
    if i == p.n() {
        return true;
    }
    let mut cand = base[i].clone();
    cand.subtract(used);
    for (j, &hj) in map.iter().enumerate() {
        if p.has_edge(i, j) {
            cand.intersect_with(g.neighbors(hj));
        } else {
            cand.subtract(g.neighbors(hj));
        }
    }
    for h in cand.iter() {
        map.push(h);
        used.insert(h);
        if extend(g, p, base, map, used) {
            return true;
        }
        used.remove(h);
        map.pop();
    }
    false
}

/// First forbidden pattern that embeds, scanning `patterns` in order.
pub fn find_forbidden(g: &Graph, patterns: &[PatternId]) -> Option<Witness> {
    patterns.iter().find_map(|pat| {
        find_induced(g, pat).map(|embedding| Witness {
            pattern: pat.clone(),
            embedding,
        })
    })
}

/// True iff none of the patterns embeds as an induced subgraph.
pub fn is_free(g: &Graph, patterns: &[PatternId]) -> bool {
    find_forbidden(g, patterns).is_none()
}

/// The three hereditary classes under study, each defined by a forbidden
/// five-vertex forest together with K4-e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassId {
    /// (P1+2P2, K4-e)-free; near-optimal constant 4.
    P12P2K4e,
    /// (2P1+P3, K4-e)-free; near-optimal constant 6.
    TwoP1P3K4e,
    /// (3P1+P2, K4-e)-free; near-optimal constant 7.
    ThreeP1P2K4e,
}

impl ClassId {
    pub const ALL: [ClassId; 3] = [ClassId::P12P2K4e, ClassId::TwoP1P3K4e, ClassId::ThreeP1P2K4e];

    /// The constant c with chi <= max{c, omega} over the class.
    pub fn constant(self) -> usize {
        match self {
            ClassId::P12P2K4e => 4,
            ClassId::TwoP1P3K4e => 6,
            ClassId::ThreeP1P2K4e => 7,
        }
    }

    pub fn forest(self) -> PatternId {
        match self {
            ClassId::P12P2K4e => PatternId::P1Plus2P2,
            ClassId::TwoP1P3K4e => PatternId::TwoP1PlusP3,
            ClassId::ThreeP1P2K4e => PatternId::ThreeP1PlusP2,
        }
    }

    pub fn forbidden(self) -> [PatternId; 2] {
        [self.forest(), PatternId::K4MinusE]
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            ClassId::P12P2K4e => "p12p2",
            ClassId::TwoP1P3K4e => "2p1p3",
            ClassId::ThreeP1P2K4e => "3p1p2",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::P12P2K4e => write!(f, "(P1+2P2,K4-e)-free"),
            ClassId::TwoP1P3K4e => write!(f, "(2P1+P3,K4-e)-free"),
            ClassId::ThreeP1P2K4e => write!(f, "(3P1+P2,K4-e)-free"),
        }
    }
}

/// All classes whose forbidden patterns are absent from `g`.
pub fn class_membership(g: &Graph) -> Vec<ClassId> {
    ClassId::ALL
        .iter()
        .copied()
        .filter(|c| is_free(g, &c.forbidden()))
        .collect()
}

/// First induced five-cycle, as an embedding in cycle order.
pub fn find_c5(g: &Graph) -> Option<Embedding> {
    find_induced(g, &PatternId::Cycle(5))
}

/// First induced seven-cycle, as an embedding in cycle order.
pub fn find_c7(g: &Graph) -> Option<Embedding> {
    find_induced(g, &PatternId::Cycle(7))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleKind {
    Hole,
    Antihole,
}

/// Shortest odd hole of the graph or of its complement, scanning lengths
/// 5, 7, 9, ... and checking the hole side before the antihole side.
///
/// Absence means the graph is perfect. Length-5 antiholes are length-5
/// holes (C5 is self-complementary), so the complement scan starts at 7.
pub fn find_odd_hole_or_antihole(g: &Graph) -> Option<(Embedding, HoleKind)> {
    let n = g.n();
    if n < 5 {
        return None;
    }
    let gc = g.complement();
    let mut len = 5;
    while len <= n {
        if let Some(cycle) = find_hole_of_length(g, len) {
            return Some((Embedding { map: cycle }, HoleKind::Hole));
        }
        if len >= 7 {
            if let Some(cycle) = find_hole_of_length(&gc, len) {
                return Some((Embedding { map: cycle }, HoleKind::Antihole));
            }
        }
        len += 2;
    }
    None
}

/// First induced cycle of exactly length `k`, in canonical form: least
/// vertex first, second vertex smaller than the last.
pub fn find_hole_of_length(g: &Graph, k: usize) -> Option<Vec<usize>> {
    debug_assert!(k >= 4);
    let n = g.n();
    if k > n {
        return None;
    }
    let mut path: Vec<usize> = Vec::with_capacity(k);
    for start in 0..n {
        // candidates strictly above the start keep the start minimal on the cycle
        let mut allowed = VertexSet::new();
        for v in (start + 1)..n {
            allowed.insert(v);
        }
        let dist = bfs_dist(g, start, &allowed);
        path.clear();
        path.push(start);
        if extend_hole(g, k, &allowed, &dist, &mut path) {
            return Some(path);
        }
    }
    None
}

fn bfs_dist(g: &Graph, start: usize, allowed: &VertexSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[start] = 0;
    let mut frontier = alloc::collections::VecDeque::new();
    frontier.push_back(start);
    while let Some(u) = frontier.pop_front() {
        for v in g.neighbors(u).intersection(allowed).iter() {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    dist
}

fn extend_hole(g: &Graph, k: usize, allowed: &VertexSet, dist: &[usize], path: &mut Vec<usize>) -> bool {
    let i = path.len();
    let start = path[0];
    let last = *path.last().unwrap();
    let closing = i == k - 1;
    let mut cand = g.neighbors(last).intersection(allowed);
    // induced: skip neighbors of every earlier path vertex
    for &p in &path[..i - 1] {
        if p != start {
            cand.subtract(g.neighbors(p));
        }
    }
    if closing {
        // last vertex closes the cycle and breaks the reflection symmetry
        cand.intersect_with(g.neighbors(start));
        for c in cand.iter() {
            if c > path[1] {
                path.push(c);
                return true;
            }
        }
        return false;
    }
    if i >= 2 {
        // interior vertices must avoid the start
        cand.subtract(g.neighbors(start));
    }
    // a vertex placed at position i still needs k-i edges to close the cycle
    let budget = k - i;
    for c in cand.iter() {
        if dist[c] > budget {
            continue;
        }
        path.push(c);
        if extend_hole(g, k, allowed, dist, path) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Naive all-tuples induced-embedding oracle: enumerates every injective
    /// assignment in lexicographic order, independent of the search path.
    fn naive_find_induced(g: &Graph, pattern: &PatternId) -> Option<Vec<usize>> {
        let p = pattern.graph();
        let k = p.n();
        if k > g.n() {
            return None;
        }
        let mut map: Vec<usize> = Vec::new();
        fn rec(g: &Graph, p: &Graph, map: &mut Vec<usize>) -> bool {
            if map.len() == p.n() {
                return true;
            }
            'host: for h in 0..g.n() {
                if map.contains(&h) {
                    continue;
                }
                for (j, &hj) in map.iter().enumerate() {
                    if p.has_edge(map.len(), j) != g.has_edge(h, hj) {
                        continue 'host;
                    }
                }
                map.push(h);
                if rec(g, p, map) {
                    return true;
                }
                map.pop();
            }
            false
        }
        if rec(g, &p, &mut map) {
            Some(map)
        } else {
            None
        }
    }

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn k4_has_no_induced_diamond() {
        assert_eq!(find_induced(&Graph::complete(4), &PatternId::K4MinusE), None);
    }

    #[test]
    fn c7_is_three_p1_p2_free() {
        assert_eq!(find_induced(&Graph::cycle(7), &PatternId::ThreeP1PlusP2), None);
        assert_eq!(
            naive_find_induced(&Graph::cycle(7), &PatternId::ThreeP1PlusP2),
            None
        );
    }

    #[test]
    fn c5_plus_k1_membership_facts() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.sort_unstable();
        let g = Graph::from_edge_list(6, &edges).unwrap();
        assert!(find_induced(&g, &PatternId::C5PlusK1).is_some());
        // brute force over the 6 vertices: dropping the isolated vertex
        // leaves C5 (five edges), dropping a cycle vertex leaves P4+K1
        // (three edges), so no five vertices induce the two-edge forest
        assert_eq!(naive_find_induced(&g, &PatternId::TwoP1PlusP3), None);
        assert!(is_free(&g, &[PatternId::TwoP1PlusP3]));
        assert!(is_free(&g, &[PatternId::P1Plus2P2]));
        assert!(is_free(&g, &[PatternId::ThreeP1PlusP2]));
    }

    #[test]
    fn c5_is_class_member_of_all_three() {
        let c5 = Graph::cycle(5);
        assert!(is_free(&c5, &[PatternId::K4MinusE, PatternId::P1Plus2P2]));
        assert_eq!(class_membership(&c5), ClassId::ALL.to_vec());
    }

    #[test]
    fn complete_graphs_belong_to_all_classes() {
        for t in [1, 4, 9] {
            assert_eq!(class_membership(&Graph::complete(t)), ClassId::ALL.to_vec());
        }
        assert!(is_free(&Graph::complete(4), &[PatternId::K4MinusE]));
    }

    #[test]
    fn p7_is_excluded_from_class_one() {
        let p7 = Graph::path(7);
        let classes = class_membership(&p7);
        assert!(!classes.contains(&ClassId::P12P2K4e));
        // P7 contains P1+2P2: edges (0,1),(3,4) and isolated 6
        assert!(find_induced(&p7, &PatternId::P1Plus2P2).is_some());
    }

    #[test]
    fn find_c5_on_c5_is_identity() {
        let e = find_c5(&Graph::cycle(5)).unwrap();
        assert_eq!(e.map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn embeddings_are_lex_least() {
        // two disjoint edges inside a 6-vertex host; the least 2P2 uses vertices 0,1,2,3
        let g = Graph::from_edge_list(7, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let e = find_induced(&g, &PatternId::P1Plus2P2).unwrap();
        assert_eq!(e.map, vec![0, 1, 2, 3, 4]);
        assert_eq!(naive_find_induced(&g, &PatternId::P1Plus2P2).unwrap(), e.map);
    }

    #[test]
    fn odd_hole_detection_basics() {
        assert!(find_odd_hole_or_antihole(&Graph::cycle(4)).is_none());
        assert!(find_odd_hole_or_antihole(&Graph::complete(6)).is_none());
        // bipartite graphs are perfect
        let bip = Graph::from_edge_list(6, &[(0, 3), (0, 4), (1, 4), (1, 5), (2, 5)]).unwrap();
        assert!(find_odd_hole_or_antihole(&bip).is_none());

        let (e, kind) = find_odd_hole_or_antihole(&Graph::cycle(7)).unwrap();
        assert_eq!(kind, HoleKind::Hole);
        assert_eq!(e.map.len(), 7);

        let (e, kind) = find_odd_hole_or_antihole(&Graph::cycle(7).complement()).unwrap();
        assert_eq!(kind, HoleKind::Antihole);
        assert_eq!(e.map.len(), 7);

        let (e, kind) = find_odd_hole_or_antihole(&Graph::cycle(5)).unwrap();
        assert_eq!(kind, HoleKind::Hole);
        assert_eq!(e.map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn hole_search_via_cycle_pattern_agrees() {
        for n in 5..10 {
            let g = Graph::cycle(n);
            for k in 4..=n {
                let hole = find_hole_of_length(&g, k);
                let generic = find_induced(&g, &PatternId::Cycle(k));
                assert_eq!(hole.is_some(), generic.is_some(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn c9_contains_induced_c9_only() {
        let g = Graph::cycle(9);
        assert!(find_hole_of_length(&g, 5).is_none());
        assert!(find_hole_of_length(&g, 7).is_none());
        assert_eq!(find_hole_of_length(&g, 9).unwrap().len(), 9);
    }

    #[test]
    fn exhaustive_cross_check_small_hosts() {
        // every labeled graph on up to 5 vertices, every pattern of size <= 5
        let patterns = [
            PatternId::Path(3),
            PatternId::Path(4),
            PatternId::Cycle(4),
            PatternId::Cycle(5),
            PatternId::Complete(3),
            PatternId::K4MinusE,
            PatternId::P1Plus2P2,
            PatternId::TwoP1PlusP3,
            PatternId::ThreeP1PlusP2,
        ];
        for n in 0..=5usize {
            let pair_count = n * (n - n.min(1)) / 2;
            for mask in 0..(1u64 << pair_count) {
                let g = graph_from_mask(n, mask);
                for pat in &patterns {
                    let fast = find_induced(&g, pat);
                    let slow = naive_find_induced(&g, pat);
                    assert_eq!(
                        fast.as_ref().map(|e| e.map.clone()),
                        slow,
                        "n={n} mask={mask} pattern={pat}"
                    );
                    if let Some(e) = fast {
                        assert!(e.verifies(&g, pat));
                    }
                }
            }
        }
    }

    #[test]
    fn randomized_cross_check_up_to_nine() {
        // seeded LCG hosts on 6..=9 vertices against the naive oracle
        let patterns = [
            PatternId::K4MinusE,
            PatternId::P1Plus2P2,
            PatternId::TwoP1PlusP3,
            PatternId::ThreeP1PlusP2,
            PatternId::C5PlusK1,
            PatternId::Cycle(5),
            PatternId::Cycle(7),
            PatternId::Path(7),
        ];
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in 6..=9usize {
            for _ in 0..40 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        if state >> 62 & 1 == 1 {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edge_list(n, &edges).unwrap();
                for pat in &patterns {
                    let fast = find_induced(&g, pat).map(|e| e.map);
                    let slow = naive_find_induced(&g, pat);
                    assert_eq!(fast, slow, "n={n} pattern={pat}");
                }
            }
        }
    }

    #[test]
    fn hereditary_closure_spot_check() {
        let g = Graph::from_edge_list(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (2, 6)]).unwrap();
        for class in ClassId::ALL {
            if is_free(&g, &class.forbidden()) {
                let mut state = 7u64;
                for _ in 0..20 {
                    let mut s = VertexSet::new();
                    for v in 0..8 {
                        state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                        if state >> 61 & 1 == 1 {
                            s.insert(v);
                        }
                    }
                    let (h, _) = g.induced_subgraph(&s).unwrap();
                    assert!(is_free(&h, &class.forbidden()));
                }
            }
        }
    }
}
