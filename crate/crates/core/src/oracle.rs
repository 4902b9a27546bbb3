//! Exact desk-scale ground truth: clique number, stability number,
//! chromatic number, optimum colorings, bipartition, perfection.
//!
//! Every search is deterministic and budgeted by explored nodes; running
//! out of budget is an error, never a silent approximation. Maximum clique
//! is branch and bound over bitset candidate sets with a greedy-coloring
//! bound; exact coloring is iterative deepening on k with
//! saturation-ordered backtracking seeded by a maximum clique.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Coloring, Graph, VertexSet};
use crate::patterns;

/// Search limits for the exact oracles.
///
/// `node_limit` is enforced inside every search. `time_hint_ms` is a soft
/// wall-clock hint for std-side harnesses (this crate has no clock); they
/// check it between pipeline stages.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    pub node_limit: u64,
    pub time_hint_ms: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            node_limit: 50_000_000,
            time_hint_ms: None,
        }
    }
}

impl OracleBudget {
    pub fn with_nodes(node_limit: u64) -> Self {
        OracleBudget {
            node_limit,
            time_hint_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { nodes: u64 },
    ScaleLimit { n: usize, tier: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { nodes } => {
                write!(f, "oracle search budget exceeded after {nodes} nodes")
            }
            OracleError::ScaleLimit { n, tier } => {
                write!(f, "graph has {n} vertices, exact tier certifies only n <= {tier}")
            }
        }
    }
}

struct Meter {
    nodes: u64,
    limit: u64,
}

impl Meter {
    fn new(budget: &OracleBudget) -> Self {
        Meter {
            nodes: 0,
            limit: budget.node_limit,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(OracleError::BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }
}

/// Greedy color classes of the candidate set; returns (order, bound) where
/// `order[i]` carries the 1-based class index of its vertex. Used as the
/// branch-and-bound upper bound.
fn color_sort(g: &Graph, cand: &VertexSet) -> (Vec<(usize, usize)>, usize) {
    let mut order = Vec::with_capacity(cand.len());
    let mut rest = cand.clone();
    let mut class = 0;
    while !rest.is_empty() {
        class += 1;
        let mut pool = rest.clone();
        while let Some(v) = pool.first() {
            order.push((v, class));
            rest.remove(v);
            pool.remove(v);
            pool.subtract(g.neighbors(v));
        }
    }
    (order, class)
}

/// Branch and bound for a clique of size > `best` inside `cand`, extending
/// `cur`. Stops early once `stop_at` is reached.
fn clique_expand(
    g: &Graph,
    cur: &mut Vec<usize>,
    cand: VertexSet,
    best: &mut Vec<usize>,
    stop_at: usize,
    meter: &mut Meter,
) -> Result<(), OracleError> {
    meter.tick()?;
    if best.len() >= stop_at {
        return Ok(());
    }
    if cand.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return Ok(());
    }
    let (order, _) = color_sort(g, &cand);
    let mut pool = cand;
    for &(v, class) in order.iter().rev() {
        if cur.len() + class <= best.len() {
            return Ok(());
        }
        cur.push(v);
        let mut next = pool.clone();
        next.remove(v);
        next.intersect_with(g.neighbors(v));
        clique_expand(g, cur, next, best, stop_at, meter)?;
        cur.pop();
        pool.remove(v);
        if best.len() >= stop_at {
            return Ok(());
        }
    }
    Ok(())
}

fn clique_size_within(
    g: &Graph,
    cand: &VertexSet,
    stop_at: usize,
    meter: &mut Meter,
) -> Result<usize, OracleError> {
    let mut best = Vec::new();
    let mut cur = Vec::new();
    clique_expand(g, &mut cur, cand.clone(), &mut best, stop_at, meter)?;
    Ok(best.len())
}

/// The clique number.
pub fn clique_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut meter = Meter::new(budget);
    clique_size_within(g, &g.vertices(), usize::MAX, &mut meter)
}

/// A maximum clique; among all maximum cliques, the lexicographically least
/// as an ascending vertex list.
pub fn max_clique(g: &Graph, budget: &OracleBudget) -> Result<VertexSet, OracleError> {
    let mut meter = Meter::new(budget);
    let w = clique_size_within(g, &g.vertices(), usize::MAX, &mut meter)?;
    let mut chosen = VertexSet::new();
    let mut cand = g.vertices();
    for picked in 0..w {
        let need = w - picked - 1;
        let mut found = false;
        for v in cand.clone().iter() {
            let sub = cand.intersection(g.neighbors(v));
            if clique_size_within(g, &sub, need, &mut meter)? >= need {
                chosen.insert(v);
                cand = sub;
                found = true;
                break;
            }
        }
        debug_assert!(found, "maximum clique extension must exist");
        if !found {
            break;
        }
    }
    debug_assert_eq!(chosen.len(), w);
    Ok(chosen)
}

/// A maximum stable set, via the complement clique (same tie-break).
pub fn max_stable_set(g: &Graph, budget: &OracleBudget) -> Result<VertexSet, OracleError> {
    max_clique(&g.complement(), budget)
}

/// Deterministic greedy DSATUR coloring (upper bound; optimal when it
/// matches the clique number).
fn greedy_dsatur(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut saturation: Vec<VertexSet> = vec![VertexSet::new(); n];
    for _ in 0..n {
        // max saturation, then max degree, then least index
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let k = (saturation[v].len(), g.degree(v));
            if pick == usize::MAX || k > key {
                pick = v;
                key = k;
            }
        }
        let mut c = 0;
        while saturation[pick].contains(c) {
            c += 1;
        }
        colors[pick] = c;
        for u in g.neighbors(pick).iter() {
            saturation[u].insert(c);
        }
    }
    colors
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// per-vertex set of colors used on the neighborhood
    saturation: Vec<VertexSet>,
    uncolored: usize,
    max_used: usize,
}

impl<'a> ColorSearch<'a> {
    fn pick_vertex(&self) -> usize {
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..self.g.n() {
            if self.colors[v] != usize::MAX {
                continue;
            }
            let k = (self.saturation[v].len(), self.g.degree(v));
            if pick == usize::MAX || k > key {
                pick = v;
                key = k;
            }
        }
        pick
    }

    fn assign(&mut self, v: usize, c: usize) -> Vec<usize> {
        self.colors[v] = c;
        self.uncolored -= 1;
        let mut touched = Vec::new();
        for u in self.g.neighbors(v).iter() {
            if self.colors[u] == usize::MAX && !self.saturation[u].contains(c) {
                self.saturation[u].insert(c);
                touched.push(u);
            }
        }
        touched
    }

    fn unassign(&mut self, v: usize, c: usize, touched: &[usize]) {
        self.colors[v] = usize::MAX;
        self.uncolored += 1;
        for &u in touched {
            self.saturation[u].remove(c);
        }
    }

    fn search(&mut self, meter: &mut Meter) -> Result<bool, OracleError> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        let v = self.pick_vertex();
        // a fresh color only as the single next index: breaks color symmetry
        let limit = self.k.min(self.max_used + 2);
        for c in 0..limit {
            if self.saturation[v].contains(c) {
                continue;
            }
            meter.tick()?;
            let touched = self.assign(v, c);
            let old_max = self.max_used;
            if c > self.max_used {
                self.max_used = c;
            }
            if self.search(meter)? {
                return Ok(true);
            }
            self.max_used = old_max;
            self.unassign(v, c, &touched);
        }
        Ok(false)
    }
}

fn k_colorable_inner(
    g: &Graph,
    k: usize,
    seed_clique: &VertexSet,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    if seed_clique.len() > k {
        return Ok(None);
    }
    if k >= n {
        return Ok(Some((0..n).collect()));
    }
    let mut state = ColorSearch {
        g,
        k,
        colors: vec![usize::MAX; n],
        saturation: vec![VertexSet::new(); n],
        uncolored: n,
        max_used: 0,
    };
    // pin a maximum clique to colors 0..w-1: sound up to color permutation
    for (c, v) in seed_clique.iter().enumerate() {
        state.colors[v] = c;
        state.uncolored -= 1;
        state.max_used = c;
        for u in g.neighbors(v).iter() {
            if state.colors[u] == usize::MAX {
                state.saturation[u].insert(c);
            }
        }
    }
    if state.search(meter)? {
        Ok(Some(state.colors))
    } else {
        Ok(None)
    }
}

fn greedy_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::new();
    for v in 0..g.n() {
        let mut clique = VertexSet::singleton(v);
        let mut cand = g.neighbors(v).clone();
        while let Some(u) = cand.first() {
            clique.insert(u);
            cand.intersect_with(g.neighbors(u));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// A proper k-coloring if one exists.
pub fn k_colorable(
    g: &Graph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<Coloring>, OracleError> {
    let mut meter = Meter::new(budget);
    let seed = greedy_clique(g);
    match k_colorable_inner(g, k, &seed, &mut meter)? {
        Some(colors) => Ok(Some(
            Coloring::new(g, colors).expect("search output is proper"),
        )),
        None => Ok(None),
    }
}

/// The chromatic number with an optimal coloring.
pub fn chromatic_number(g: &Graph, budget: &OracleBudget) -> Result<(usize, Coloring), OracleError> {
    let mut meter = Meter::new(budget);
    let n = g.n();
    if n == 0 {
        let empty = Coloring::new(g, Vec::new()).expect("empty coloring");
        return Ok((0, empty));
    }
    let clique = {
        // exact clique lower bound doubles as the search seed
        let w = clique_size_within(g, &g.vertices(), usize::MAX, &mut meter)?;
        let mut chosen = VertexSet::new();
        let mut cand = g.vertices();
        for picked in 0..w {
            let need = w - picked - 1;
            for v in cand.clone().iter() {
                let sub = cand.intersection(g.neighbors(v));
                if clique_size_within(g, &sub, need, &mut meter)? >= need {
                    chosen.insert(v);
                    cand = sub;
                    break;
                }
            }
        }
        chosen
    };
    let omega = clique.len();
    let greedy = greedy_dsatur(g);
    let greedy = Coloring::new(g, greedy).expect("greedy coloring is proper");
    if greedy.palette_size() == omega {
        return Ok((omega, greedy));
    }
    for k in omega..greedy.palette_size() {
        if let Some(colors) = k_colorable_inner(g, k, &clique, &mut meter)? {
            let coloring = Coloring::new(g, colors).expect("search output is proper");
            debug_assert_eq!(coloring.palette_size(), k);
            return Ok((k, coloring));
        }
    }
    Ok((greedy.palette_size(), greedy))
}

/// BFS bipartition coloring: `Some` iff the graph is bipartite.
pub fn two_color(g: &Graph) -> Option<Coloring> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    for root in 0..n {
        if colors[root] != usize::MAX {
            continue;
        }
        colors[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter() {
                if colors[v] == usize::MAX {
                    colors[v] = 1 - colors[u];
                    queue.push_back(v);
                } else if colors[v] == colors[u] {
                    return None;
                }
            }
        }
    }
    Some(Coloring::new(g, colors).expect("bipartition is proper"))
}

/// Default size cap for SPGT-based perfection checks.
pub const PERFECT_TIER: usize = 40;

/// Perfection via the strong perfect graph theorem: no odd hole and no odd
/// antihole. Certified only up to `tier` vertices; beyond that the honest
/// answer is an error, not a guess.
pub fn is_perfect(g: &Graph, tier: usize) -> Result<bool, OracleError> {
    if g.n() > tier {
        return Err(OracleError::ScaleLimit { n: g.n(), tier });
    }
    Ok(patterns::find_odd_hole_or_antihole(g).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    fn k4_minus_e() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    /// Exhaustive-assignment chromatic number: tries every coloring in
    /// vertex order with plain conflict pruning. Independent of DSATUR.
    fn naive_chromatic(g: &Graph) -> usize {
        fn assign(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
            if v == g.n() {
                return true;
            }
            'colors: for c in 0..k {
                for u in g.neighbors(v).iter() {
                    if u < v && colors[u] == c {
                        continue 'colors;
                    }
                }
                colors[v] = c;
                if assign(g, k, v + 1, colors) {
                    return true;
                }
            }
            false
        }
        let mut k = 0;
        loop {
            let mut colors = vec![usize::MAX; g.n()];
            if assign(g, k, 0, &mut colors) {
                return k;
            }
            k += 1;
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
    fn max_clique_examples() {
        let d = k4_minus_e();
        let clique = max_clique(&d, &budget()).unwrap();
        assert_eq!(clique.to_vec(), vec![0, 1, 2]);

        assert_eq!(max_clique(&Graph::cycle(5), &budget()).unwrap().len(), 2);
        assert_eq!(
            max_clique(&Graph::cycle(7).complement(), &budget()).unwrap().len(),
            3
        );
    }

    #[test]
    fn max_clique_is_lex_least() {
        // triangles {1,4,5} and {2,3,6}: lex-least maximum is {1,4,5}
        let g = Graph::from_edge_list(7, &[(1, 4), (1, 5), (4, 5), (2, 3), (2, 6), (3, 6)]).unwrap();
        assert_eq!(max_clique(&g, &budget()).unwrap().to_vec(), vec![1, 4, 5]);
    }

    #[test]
    fn max_stable_set_examples() {
        assert_eq!(max_stable_set(&Graph::complete(5), &budget()).unwrap().len(), 1);
        let s = max_stable_set(&Graph::cycle(5), &budget()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(Graph::cycle(5).is_stable_set(&s));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::cycle(5), &budget()).unwrap().0, 3);
        assert_eq!(chromatic_number(&Graph::cycle(7), &budget()).unwrap().0, 3);
        for t in 1..=8 {
            assert_eq!(chromatic_number(&Graph::complete(t), &budget()).unwrap().0, t);
        }
        let (chi, coloring) = chromatic_number(&k4_minus_e(), &budget()).unwrap();
        assert_eq!(chi, 3);
        assert!(coloring.is_proper_for(&k4_minus_e()));
    }

    #[test]
    fn k_colorable_examples() {
        assert!(k_colorable(&Graph::cycle(5), 2, &budget()).unwrap().is_none());
        assert!(k_colorable(&Graph::cycle(5), 5, &budget()).unwrap().is_some());
        assert!(k_colorable(&k4_minus_e(), 3, &budget()).unwrap().is_some());
        assert!(k_colorable(&Graph::empty(0), 0, &budget()).unwrap().is_some());
        assert!(k_colorable(&Graph::complete(2), 0, &budget()).unwrap().is_none());
    }

    #[test]
    fn two_color_examples() {
        assert!(two_color(&Graph::cycle(4)).is_some());
        assert!(two_color(&Graph::complete(3)).is_none());
        let edgeless = Graph::empty(4);
        let c = two_color(&edgeless).unwrap();
        assert_eq!(c.palette_size(), 1);
    }

    #[test]
    fn perfection_examples() {
        assert!(!is_perfect(&Graph::cycle(5), PERFECT_TIER).unwrap());
        assert!(!is_perfect(&Graph::cycle(7), PERFECT_TIER).unwrap());
        // complete tripartite K(2,2,2)
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in (u + 1)..6 {
                if u / 2 != v / 2 {
                    edges.push((u, v));
                }
            }
        }
        let octa = Graph::from_edge_list(6, &edges).unwrap();
        assert!(is_perfect(&octa, PERFECT_TIER).unwrap());
        assert!(matches!(
            is_perfect(&Graph::empty(41), PERFECT_TIER),
            Err(OracleError::ScaleLimit { .. })
        ));
    }

    #[test]
    fn budget_exceeded_is_an_error() {
        let g = Graph::cycle(9).complement();
        let tiny = OracleBudget::with_nodes(3);
        assert!(matches!(
            chromatic_number(&g, &tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            max_clique(&g, &tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn self_consistency_on_seeded_graphs() {
        let mut state = 0xabcdef12345u64;
        for n in 1..=10usize {
            for _ in 0..20 {
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
                let (chi, coloring) = chromatic_number(&g, &budget()).unwrap();
                assert!(coloring.is_proper_for(&g));
                assert_eq!(coloring.palette_size(), chi);
                let omega = max_clique(&g, &budget()).unwrap().len();
                assert!(omega <= chi && chi <= n);
                if chi > 0 {
                    assert!(k_colorable(&g, chi - 1, &budget()).unwrap().is_none());
                }
                assert!(k_colorable(&g, chi, &budget()).unwrap().is_some());
                // alpha/omega duality against independent subset enumeration
                let alpha = max_stable_set(&g, &budget()).unwrap();
                assert!(g.is_stable_set(&alpha));
                let mut best = 0usize;
                for mask in 0u64..(1 << n) {
                    let set: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    if g.is_stable_set(&set) {
                        best = best.max(set.len());
                    }
                }
                assert_eq!(alpha.len(), best);
            }
        }
    }

    #[test]
    fn oracle_of_the_oracle_exhaustive_n5() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0..(1u64 << pairs) {
                let g = graph_from_mask(n, mask);
                let (chi, _) = chromatic_number(&g, &budget()).unwrap();
                assert_eq!(chi, naive_chromatic(&g), "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn oracle_of_the_oracle_sampled_n8() {
        let mut state = 0x5eed5eed5eedu64;
        for _ in 0..300 {
            let mut edges = Vec::new();
            for u in 0..8 {
                for v in (u + 1)..8 {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if state >> 62 & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(8, &edges).unwrap();
            let (chi, _) = chromatic_number(&g, &budget()).unwrap();
            assert_eq!(chi, naive_chromatic(&g));
        }
    }

    #[test]
    fn perfect_graphs_have_chi_equal_omega() {
        let mut state = 0x77777u64;
        for n in 1..=9usize {
            for _ in 0..10 {
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
                if is_perfect(&g, PERFECT_TIER).unwrap() {
                    let (chi, _) = chromatic_number(&g, &budget()).unwrap();
                    let omega = max_clique(&g, &budget()).unwrap().len();
                    assert_eq!(chi, omega);
                }
            }
        }
    }
}
