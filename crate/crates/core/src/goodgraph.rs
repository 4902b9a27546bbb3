//! Coloring of good graphs: vertex sets partitioned into three cliques
//! with every pair graded (cross edges a partial matching).
//!
//! A good graph with clique number at least 4 is omega-colorable. The base
//! case omega = 4 colors the co-bipartite part Q1 u Q2 optimally through a
//! maximum matching in the bipartite complement, then inserts Q3 one
//! vertex at a time, repairing with at most two class swaps. Above 4, the
//! maximum stable set (size at most 3 here) is peeled with a fresh color;
//! the clique number must drop by exactly one per peel and this is
//! verified with the oracle rather than assumed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Coloring, Graph, VertexSet};
use crate::oracle::{self, OracleBudget, OracleError};

/// Three pairwise-graded cliques covering the vertex set. Parts may be
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPartition {
    pub parts: [VertexSet; 3],
}

impl GoodPartition {
    pub fn new(q1: VertexSet, q2: VertexSet, q3: VertexSet) -> Self {
        GoodPartition { parts: [q1, q2, q3] }
    }

    pub fn from_slices(q1: &[usize], q2: &[usize], q3: &[usize]) -> Self {
        GoodPartition::new(
            VertexSet::from_slice(q1),
            VertexSet::from_slice(q2),
            VertexSet::from_slice(q3),
        )
    }
}

/// Why a partition fails the good-graph definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodViolation {
    Overlap { vertex: usize },
    NotCovering { vertex: usize },
    PartNotClique { part: usize, u: usize, v: usize },
    /// `vertex` (in part `part_a`) has two neighbors in part `part_b`.
    NotSpecial { part_a: usize, part_b: usize, vertex: usize, n1: usize, n2: usize },
}

impl fmt::Display for GoodViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodViolation::Overlap { vertex } => write!(f, "vertex {vertex} is in two parts"),
            GoodViolation::NotCovering { vertex } => write!(f, "vertex {vertex} is in no part"),
            GoodViolation::PartNotClique { part, u, v } => {
                write!(f, "part Q{} misses edge {u}-{v}", part + 1)
            }
            GoodViolation::NotSpecial { part_a, part_b, vertex, n1, n2 } => write!(
                f,
                "vertex {vertex} of Q{} has two neighbors {n1},{n2} in Q{}",
                part_a + 1,
                part_b + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodGraphError {
    NotGood(GoodViolation),
    /// The omega >= 4 precondition failed (good graphs with omega = 3 can
    /// need a fourth color).
    PreconditionOmega { omega: usize },
    /// A peel did not reduce the clique number by exactly one.
    PeelDiagnostic { omega_before: usize, omega_after: usize },
    /// The insertion procedure ran out of repairs; impossible for a
    /// validated graded partition, so this diagnoses a broken input.
    RepairFailed { vertex: usize },
    Oracle(OracleError),
}

impl From<OracleError> for GoodGraphError {
    fn from(e: OracleError) -> Self {
        GoodGraphError::Oracle(e)
    }
}

impl fmt::Display for GoodGraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodGraphError::NotGood(v) => write!(f, "not a good partition: {v}"),
            GoodGraphError::PreconditionOmega { omega } => {
                write!(f, "good coloring requires omega >= 4, got {omega}")
            }
            GoodGraphError::PeelDiagnostic { omega_before, omega_after } => write!(
                f,
                "peeling a maximum stable set left omega {omega_after}, expected {}",
                omega_before - 1
            ),
            GoodGraphError::RepairFailed { vertex } => {
                write!(f, "class insertion for vertex {vertex} found no repair")
            }
            GoodGraphError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

/// Checks disjointness, cover, cliques, and pairwise grading.
pub fn validate_good(g: &Graph, p: &GoodPartition) -> Result<(), GoodViolation> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if let Some(v) = p.parts[i].intersection(&p.parts[j]).first() {
                return Err(GoodViolation::Overlap { vertex: v });
            }
        }
    }
    let mut cover = p.parts[0].union(&p.parts[1]);
    cover.union_with(&p.parts[2]);
    if cover != g.vertices() {
        if let Some(v) = g.vertices().difference(&cover).first() {
            return Err(GoodViolation::NotCovering { vertex: v });
        }
        let v = cover.difference(&g.vertices()).first().unwrap();
        return Err(GoodViolation::Overlap { vertex: v });
    }
    for (idx, part) in p.parts.iter().enumerate() {
        let members = part.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(GoodViolation::PartNotClique { part: idx, u, v });
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for u in p.parts[i].iter() {
                let hits = g.neighbors(u).intersection(&p.parts[j]);
                if hits.len() > 1 {
                    let mut it = hits.iter();
                    return Err(GoodViolation::NotSpecial {
                        part_a: i,
                        part_b: j,
                        vertex: u,
                        n1: it.next().unwrap(),
                        n2: it.next().unwrap(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Minimum color classes of a graph formed by two cliques: a maximum
/// matching of non-adjacent cross pairs in the bipartite complement, each
/// matched pair one class, leftovers singletons. Deterministic (Kuhn's
/// augmenting paths in ascending vertex order); the class count equals the
/// clique number of the co-bipartite graph.
pub fn co_bipartite_classes(g: &Graph, a: &VertexSet, b: &VertexSet) -> Vec<VertexSet> {
    debug_assert!(g.is_clique(a) && g.is_clique(b));
    let left = a.to_vec();
    let right = b.to_vec();
    // complement cross adjacency: the stable pairs
    let comp: Vec<Vec<usize>> = left
        .iter()
        .map(|&u| {
            right
                .iter()
                .enumerate()
                .filter(|&(_, &v)| !g.has_edge(u, v))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; right.len()];
    let mut match_left: Vec<Option<usize>> = vec![None; left.len()];

    fn augment(
        i: usize,
        comp: &[Vec<usize>],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &j in &comp[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            let free = match match_right[j] {
                None => true,
                Some(i2) => augment(i2, comp, match_right, match_left, seen),
            };
            if free {
                match_right[j] = Some(i);
                match_left[i] = Some(j);
                return true;
            }
        }
        false
    }

    for i in 0..left.len() {
        let mut seen = vec![false; right.len()];
        augment(i, &comp, &mut match_right, &mut match_left, &mut seen);
    }

    let mut classes = Vec::new();
    for (i, &u) in left.iter().enumerate() {
        let mut class = VertexSet::singleton(u);
        if let Some(j) = match_left[i] {
            class.insert(right[j]);
        }
        classes.push(class);
    }
    for (j, &v) in right.iter().enumerate() {
        if match_right[j].is_none() {
            classes.push(VertexSet::singleton(v));
        }
    }
    classes
}

/// All minimum-size stable transversals of the nonempty parts, scanned for
/// the maximum; stable sets of a good graph take at most one vertex per
/// part. Returns the lexicographically least maximum.
fn max_stable_restricted(g: &Graph, parts: [&VertexSet; 3]) -> VertexSet {
    let mut best = VertexSet::new();
    let lists: Vec<Vec<usize>> = parts.iter().map(|p| p.to_vec()).collect();
    let consider = |cand: VertexSet, best: &mut VertexSet| {
        if cand.len() > best.len() || (cand.len() == best.len() && cand < *best) {
            *best = cand;
        }
    };
    for (i, li) in lists.iter().enumerate() {
        for &u in li {
            consider(VertexSet::singleton(u), &mut best);
            for lj in lists.iter().skip(i + 1) {
                for &v in lj {
                    if !g.has_edge(u, v) {
                        consider(VertexSet::from_slice(&[u, v]), &mut best);
                    }
                }
            }
        }
    }
    for &u in &lists[0] {
        for &v in &lists[1] {
            if g.has_edge(u, v) {
                continue;
            }
            for &w in &lists[2] {
                if !g.has_edge(u, w) && !g.has_edge(v, w) {
                    consider(VertexSet::from_slice(&[u, v, w]), &mut best);
                }
            }
        }
    }
    best
}

/// Maximum stable set of a good graph by part-wise enumeration.
pub fn max_stable_set_good(g: &Graph, p: &GoodPartition) -> Result<VertexSet, GoodGraphError> {
    validate_good(g, p).map_err(GoodGraphError::NotGood)?;
    Ok(max_stable_restricted(
        g,
        [&p.parts[0], &p.parts[1], &p.parts[2]],
    ))
}

/// Inserts one clique vertex `w` into four stable classes, repairing with
/// the swap from the three- and four-vertex cases when every class is
/// blocked. `inserted` are the previously placed vertices of w's clique,
/// in placement order, with their class indices.
fn insert_clique_vertex(
    g: &Graph,
    classes: &mut [VertexSet; 4],
    w: usize,
    inserted: &[(usize, usize)],
) -> Result<(), GoodGraphError> {
    // a class with no neighbor of w takes it directly
    for class in classes.iter_mut() {
        if g.neighbors(w).is_disjoint_from(class) {
            class.insert(w);
            return Ok(());
        }
    }
    match inserted.len() {
        2 => {
            // third vertex: classes r3, r4 hold no clique vertex; w has one
            // neighbor in each; some earlier w_k avoids r3 entirely
            let taken: Vec<usize> = inserted.iter().map(|&(_, c)| c).collect();
            let free: Vec<usize> = (0..4).filter(|c| !taken.contains(c)).collect();
            let (r3, _r4) = (free[0], free[1]);
            for &(wk, ck) in inserted {
                if g.neighbors(wk).is_disjoint_from(&classes[r3]) {
                    classes[ck].remove(wk);
                    classes[ck].insert(w);
                    classes[r3].insert(wk);
                    return Ok(());
                }
            }
            Err(GoodGraphError::RepairFailed { vertex: w })
        }
        3 => {
            // fourth vertex: t4 is the class without clique vertices
            let taken: Vec<usize> = inserted.iter().map(|&(_, c)| c).collect();
            let t4 = (0..4).find(|c| !taken.contains(c)).unwrap();
            let t4_members = classes[t4].to_vec();
            let nbrs: Vec<usize> = t4_members
                .iter()
                .copied()
                .filter(|&t| g.has_edge(w, t))
                .collect();
            if nbrs.len() == t4_members.len() {
                // complete to t4: any earlier vertex can trade places
                let &(w1, c1) = &inserted[0];
                classes[c1].remove(w1);
                classes[c1].insert(w);
                classes[t4].insert(w1);
                return Ok(());
            }
            // exactly one neighbor t in t4; t' is free of w
            let t_prime: Vec<usize> = t4_members
                .iter()
                .copied()
                .filter(|&t| !g.has_edge(w, t))
                .collect();
            let pick_p = inserted
                .iter()
                .find(|&&(wp, _)| t_prime.iter().all(|&tp| !g.has_edge(wp, tp)));
            let &(wp, cp) = pick_p.ok_or(GoodGraphError::RepairFailed { vertex: w })?;
            let mut rest = classes[cp].clone();
            rest.remove(wp);
            if g.neighbors(w).is_disjoint_from(&rest) {
                classes[cp].remove(wp);
                classes[cp].insert(w);
                classes[t4].insert(wp);
                return Ok(());
            }
            // w grabs q's class, q covers p's old class, p joins t4
            let pick_q = inserted.iter().find(|&&(wq, _)| {
                wq != wp && g.neighbors(wq).is_disjoint_from(&rest)
            });
            let &(wq, cq) = pick_q.ok_or(GoodGraphError::RepairFailed { vertex: w })?;
            classes[cp].remove(wp);
            classes[cq].remove(wq);
            classes[cp].insert(wq);
            classes[cq].insert(w);
            classes[t4].insert(wp);
            Ok(())
        }
        _ => Err(GoodGraphError::RepairFailed { vertex: w }),
    }
}

/// Four-coloring of a good graph with omega = 4, by the constructive
/// procedure: co-bipartite base on the two largest parts, then insertion
/// of the remaining clique with bounded swaps. Vertices outside the
/// insertion part never change classes.
pub fn color_good_base4(
    g: &Graph,
    p: &GoodPartition,
    budget: &OracleBudget,
) -> Result<Coloring, GoodGraphError> {
    validate_good(g, p).map_err(GoodGraphError::NotGood)?;
    let omega = oracle::clique_number(g, budget)?;
    if omega != 4 {
        return Err(GoodGraphError::PreconditionOmega { omega });
    }
    // relabel: Q1 is the first part of size 4, Q3 the smaller of the rest
    let q1_idx = (0..3)
        .find(|&i| p.parts[i].len() == 4)
        .expect("omega = 4 forces a part of size 4 (cross cliques have size <= 3)");
    let mut rest: Vec<usize> = (0..3).filter(|&i| i != q1_idx).collect();
    if p.parts[rest[0]].len() < p.parts[rest[1]].len() {
        rest.swap(0, 1);
    }
    let (q1, q2, q3) = (&p.parts[q1_idx], &p.parts[rest[0]], &p.parts[rest[1]]);

    let base = co_bipartite_classes(g, q1, q2);
    if base.len() != 4 {
        // |Q1| = 4 and omega = 4 force exactly four matching classes
        return Err(GoodGraphError::RepairFailed {
            vertex: q1.first().unwrap_or(0),
        });
    }
    let mut classes: [VertexSet; 4] = core::array::from_fn(|i| base[i].clone());
    let mut inserted: Vec<(usize, usize)> = Vec::new();
    for w in q3.iter() {
        insert_clique_vertex(g, &mut classes, w, &inserted)?;
        let class_of_w = (0..4).find(|&c| classes[c].contains(w)).unwrap();
        inserted.push((w, class_of_w));
        // earlier vertices may have been swapped; refresh their classes
        for entry in inserted.iter_mut() {
            entry.1 = (0..4).find(|&c| classes[c].contains(entry.0)).unwrap();
        }
    }
    let mut colors = vec![usize::MAX; g.n()];
    for (c, class) in classes.iter().enumerate() {
        for v in class.iter() {
            colors[v] = c;
        }
    }
    let coloring = match Coloring::new(g, colors) {
        Ok(c) => c,
        Err(crate::graph::ColoringError::ImproperEdge { u, .. }) => {
            return Err(GoodGraphError::RepairFailed { vertex: u })
        }
        Err(_) => return Err(GoodGraphError::RepairFailed { vertex: 0 }),
    };
    debug_assert_eq!(coloring.palette_size(), 4);
    Ok(coloring)
}

/// Exactly-omega coloring of a good graph with omega >= 4.
///
/// Peels the maximum stable set with the highest remaining color until the
/// clique number reaches 4 (verifying the drop each time), finishing with
/// the base case; if a part empties first the remainder is co-bipartite
/// and colored by matching.
pub fn color_good(
    g: &Graph,
    p: &GoodPartition,
    budget: &OracleBudget,
) -> Result<Coloring, GoodGraphError> {
    validate_good(g, p).map_err(GoodGraphError::NotGood)?;
    let omega_root = oracle::clique_number(g, budget)?;
    if omega_root <= 3 {
        return Err(GoodGraphError::PreconditionOmega { omega: omega_root });
    }
    let mut colors = vec![usize::MAX; g.n()];
    let mut remaining = g.vertices();
    let mut omega_cur = omega_root;
    loop {
        let live: Vec<VertexSet> = p.parts.iter().map(|q| q.intersection(&remaining)).collect();
        let nonempty = live.iter().filter(|q| !q.is_empty()).count();
        if omega_cur == 4 && nonempty == 3 {
            let (h, map) = g.induced_subgraph(&remaining).expect("remaining in range");
            let hp = GoodPartition::new(
                live[0].iter().map(|v| map.old_to_new(v).unwrap()).collect(),
                live[1].iter().map(|v| map.old_to_new(v).unwrap()).collect(),
                live[2].iter().map(|v| map.old_to_new(v).unwrap()).collect(),
            );
            let base = color_good_base4(&h, &hp, budget)?;
            for (new, &old) in map.new_to_old.iter().enumerate() {
                colors[old] = base.color_of(new);
            }
            break;
        }
        if nonempty <= 2 {
            // co-bipartite remainder: matching classes use colors 0..omega_cur
            let filled: Vec<&VertexSet> = live.iter().filter(|q| !q.is_empty()).collect();
            let empty_set = VertexSet::new();
            let a = filled.first().copied().unwrap_or(&empty_set);
            let b = filled.get(1).copied().unwrap_or(&empty_set);
            let classes = co_bipartite_classes(g, a, b);
            if classes.len() != omega_cur {
                return Err(GoodGraphError::PeelDiagnostic {
                    omega_before: omega_cur,
                    omega_after: classes.len(),
                });
            }
            for (c, class) in classes.iter().enumerate() {
                for v in class.iter() {
                    colors[v] = c;
                }
            }
            break;
        }
        // peel the maximum stable set with the highest unused color
        let stable = max_stable_restricted(g, [&live[0], &live[1], &live[2]]);
        omega_cur -= 1;
        for v in stable.iter() {
            colors[v] = omega_cur;
        }
        remaining.subtract(&stable);
        let (h, _) = g.induced_subgraph(&remaining).expect("remaining in range");
        let omega_after = oracle::clique_number(&h, budget)?;
        if omega_after != omega_cur {
            return Err(GoodGraphError::PeelDiagnostic {
                omega_before: omega_cur + 1,
                omega_after,
            });
        }
    }
    let coloring = match Coloring::new(g, colors) {
        Ok(c) => c,
        Err(crate::graph::ColoringError::ImproperEdge { u, .. }) => {
            return Err(GoodGraphError::RepairFailed { vertex: u })
        }
        Err(_) => return Err(GoodGraphError::RepairFailed { vertex: 0 }),
    };
    debug_assert_eq!(coloring.palette_size(), omega_root);
    Ok(coloring)
}
