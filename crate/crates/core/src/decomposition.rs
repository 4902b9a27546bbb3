//! Neighborhood-trace decompositions around an induced C5 or C7, and the
//! per-class structural properties evaluated on them.
//!
//! For a (K4-e)-free host, every vertex outside an induced five-cycle
//! `v1..v5` has one of 21 traces on the cycle: empty (T), one vertex
//! (A_i), a consecutive pair (B_i), the two neighbors of v_i (D_i), or a
//! vertex plus the far edge (Z_i). Three consecutive cycle neighbors force
//! a K4-e, so such a trace is rejected at construction with the witness.
//! Membership is always computed from the trace, never from prose labels;
//! index arithmetic is mod 5 (resp. mod 7) with 1-based display.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionError {
    NotAC5 { cycle: [usize; 5] },
    NotAC7 { cycle: [usize; 7] },
    /// A vertex with three consecutive cycle neighbors; the witness induces
    /// a K4-e.
    ForbiddenTrace { vertex: usize, witness: [usize; 4] },
    UnclassifiableVertex { vertex: usize },
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::NotAC5 { cycle } => {
                write!(f, "{cycle:?} does not induce a C5 in the given order")
            }
            DecompositionError::NotAC7 { cycle } => {
                write!(f, "{cycle:?} does not induce a C7 in the given order")
            }
            DecompositionError::ForbiddenTrace { vertex, witness } => write!(
                f,
                "vertex {vertex} has three consecutive cycle neighbors; {witness:?} induces a K4-e"
            ),
            DecompositionError::UnclassifiableVertex { vertex } => {
                write!(f, "vertex {vertex} fits no admissible trace")
            }
        }
    }
}

/// The partition of V(G) minus C around an induced five-cycle.
///
/// All indices are 0-based internally; `X_i = B_i union Z_{i-2}`.
#[derive(Clone, Debug)]
pub struct C5Decomposition {
    pub cycle: [usize; 5],
    pub a: [VertexSet; 5],
    pub b: [VertexSet; 5],
    pub d: [VertexSet; 5],
    pub z: [VertexSet; 5],
    pub t: VertexSet,
}

#[inline]
pub fn m5(i: isize) -> usize {
    i.rem_euclid(5) as usize
}

#[inline]
fn m7(i: isize) -> usize {
    i.rem_euclid(7) as usize
}

impl C5Decomposition {
    pub fn x(&self, i: usize) -> VertexSet {
        self.b[i].union(&self.z[m5(i as isize - 2)])
    }

    pub fn all_a(&self) -> VertexSet {
        self.a.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    pub fn all_b(&self) -> VertexSet {
        self.b.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    pub fn all_d(&self) -> VertexSet {
        self.d.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    pub fn all_z(&self) -> VertexSet {
        self.z.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    /// Union of every part including the cycle; equals V(G) by construction.
    pub fn cover(&self) -> VertexSet {
        let mut s = VertexSet::from_slice(&self.cycle);
        s.union_with(&self.all_a());
        s.union_with(&self.all_b());
        s.union_with(&self.all_d());
        s.union_with(&self.all_z());
        s.union_with(&self.t);
        s
    }
}

fn induces_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    for (i, &u) in cycle.iter().enumerate() {
        if u >= g.n() {
            return false;
        }
        for (j, &v) in cycle.iter().enumerate().skip(i + 1) {
            if u == v {
                return false;
            }
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(u, v) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Classifies every vertex outside `cycle` by its neighborhood trace.
pub fn decompose_c5(g: &Graph, cycle: [usize; 5]) -> Result<C5Decomposition, DecompositionError> {
    if !induces_cycle(g, &cycle) {
        return Err(DecompositionError::NotAC5 { cycle });
    }
    let mut dec = C5Decomposition {
        cycle,
        a: core::array::from_fn(|_| VertexSet::new()),
        b: core::array::from_fn(|_| VertexSet::new()),
        d: core::array::from_fn(|_| VertexSet::new()),
        z: core::array::from_fn(|_| VertexSet::new()),
        t: VertexSet::new(),
    };
    let on_cycle = VertexSet::from_slice(&cycle);
    for v in 0..g.n() {
        if on_cycle.contains(v) {
            continue;
        }
        let trace: u8 = (0..5)
            .filter(|&i| g.has_edge(v, cycle[i]))
            .fold(0, |acc, i| acc | 1 << i);
        // three consecutive cycle neighbors force a K4-e
        for i in 0..5isize {
            let (p, q, r) = (m5(i), m5(i + 1), m5(i + 2));
            if trace >> p & 1 == 1 && trace >> q & 1 == 1 && trace >> r & 1 == 1 {
                return Err(DecompositionError::ForbiddenTrace {
                    vertex: v,
                    witness: [v, cycle[p], cycle[q], cycle[r]],
                });
            }
        }
        match trace.count_ones() {
            0 => dec.t.insert(v),
            1 => {
                let i = trace.trailing_zeros() as usize;
                dec.a[i].insert(v);
            }
            2 => {
                let lo = trace.trailing_zeros() as usize;
                // consecutive pair {v_i, v_i+1} -> B_i; gap pair {v_i-1, v_i+1} -> D_i
                let mut placed = false;
                for i in 0..5isize {
                    if trace >> m5(i) & 1 == 1 && trace >> m5(i + 1) & 1 == 1 {
                        dec.b[m5(i)].insert(v);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    for i in 0..5isize {
                        if trace >> m5(i - 1) & 1 == 1 && trace >> m5(i + 1) & 1 == 1 {
                            dec.d[m5(i)].insert(v);
                            placed = true;
                            break;
                        }
                    }
                }
                debug_assert!(placed, "pair trace must be consecutive or a gap: {lo}");
            }
            3 => {
                // survivor triples have the form {v_i-2, v_i, v_i+2}
                let mut placed = false;
                for i in 0..5isize {
                    if trace >> m5(i - 2) & 1 == 1
                        && trace >> m5(i) & 1 == 1
                        && trace >> m5(i + 2) & 1 == 1
                        && trace >> m5(i + 1) & 1 == 0
                        && trace >> m5(i - 1) & 1 == 0
                    {
                        dec.z[m5(i)].insert(v);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    return Err(DecompositionError::UnclassifiableVertex { vertex: v });
                }
            }
            // traces of size >= 4 always contain three consecutive vertices
            _ => return Err(DecompositionError::UnclassifiableVertex { vertex: v }),
        }
    }
    debug_assert_eq!(dec.cover(), g.vertices());
    Ok(dec)
}

/// Property families checked on a C5 decomposition. Level O applies to any
/// (K4-e)-free host; M additionally assumes (2P1+P3)-freeness; L assumes
/// (3P1+P2)-freeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyLevel {
    O,
    M,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum PropertyId {
    O1,
    O2,
    O3,
    M1,
    M2,
    M3,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One evaluated property instance; `index` is 0-based, displayed 1-based.
#[derive(Clone, Debug)]
pub struct PropertyCheck {
    pub id: PropertyId,
    pub index: usize,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn push(&mut self, id: PropertyId, index: usize, witness: Option<Vec<usize>>) {
        self.checks.push(PropertyCheck {
            id,
            index,
            holds: witness.is_none(),
            witness,
        });
    }
}

fn stable_witness(g: &Graph, s: &VertexSet) -> Option<Vec<usize>> {
    let members = s.to_vec();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if g.has_edge(u, v) {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

fn clique_witness(g: &Graph, s: &VertexSet) -> Option<Vec<usize>> {
    let members = s.to_vec();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.has_edge(u, v) {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

fn graded_witness(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    if let Some(w) = clique_witness(g, a) {
        return Some(w);
    }
    if let Some(w) = clique_witness(g, b) {
        return Some(w);
    }
    for u in a.iter() {
        let hits = g.neighbors(u).intersection(b);
        if hits.len() > 1 {
            let mut w = vec![u];
            w.extend(hits.iter().take(2));
            return Some(w);
        }
    }
    for u in b.iter() {
        let hits = g.neighbors(u).intersection(a);
        if hits.len() > 1 {
            let mut w = vec![u];
            w.extend(hits.iter().take(2));
            return Some(w);
        }
    }
    None
}

fn empty_edges_witness(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    for u in a.iter() {
        if let Some(v) = g.neighbors(u).intersection(b).first() {
            return Some(vec![u, v]);
        }
    }
    None
}

fn complete_witness(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    for u in a.iter() {
        if let Some(v) = b.difference(g.neighbors(u)).first() {
            if v != u {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

fn card_witness(s: &VertexSet, max: usize) -> Option<Vec<usize>> {
    if s.len() > max {
        Some(s.iter().take(max + 1).collect())
    } else {
        None
    }
}

/// "One of the listed sets is empty": witness takes one vertex per set when
/// all are nonempty.
fn one_empty_witness(sets: &[&VertexSet]) -> Option<Vec<usize>> {
    if sets.iter().all(|s| !s.is_empty()) {
        Some(sets.iter().map(|s| s.first().unwrap()).collect())
    } else {
        None
    }
}

/// Evaluates the level's property family for every rotation index.
pub fn check_properties(g: &Graph, dec: &C5Decomposition, level: PropertyLevel) -> PropertyReport {
    let mut report = PropertyReport::default();
    let all_d = dec.all_d();
    let all_z = dec.all_z();
    let all_a = dec.all_a();
    for i in 0..5usize {
        let ii = i as isize;
        let xi = dec.x(i);
        // O1: D_i is a stable set and |Z_i| <= 1
        let w = stable_witness(g, &dec.d[i]).or_else(|| card_witness(&dec.z[i], 1));
        report.push(PropertyId::O1, i, w);
        // O2: {X_i, X_i+2} graded
        report.push(PropertyId::O2, i, graded_witness(g, &xi, &dec.x(m5(ii + 2))));
        // O3: [X_i, A_i u A_i+1 u B_i-1 u B_i+1 u (D \ D_i-2) u (Z \ Z_i-2)] empty
        let mut far = dec.a[i].union(&dec.a[m5(ii + 1)]);
        far.union_with(&dec.b[m5(ii - 1)]);
        far.union_with(&dec.b[m5(ii + 1)]);
        far.union_with(&all_d.difference(&dec.d[m5(ii - 2)]));
        far.union_with(&all_z.difference(&dec.z[m5(ii - 2)]));
        report.push(PropertyId::O3, i, empty_edges_witness(g, &xi, &far));
    }
    if level == PropertyLevel::M {
        for i in 0..5usize {
            let ii = i as isize;
            // M1: A_i u T is a clique
            report.push(PropertyId::M1, i, clique_witness(g, &dec.a[i].union(&dec.t)));
            // M2: [A_i, (A \ A_i) u B_i+2 u (D \ D_i) u Z_i] complete
            let mut tgt = all_a.difference(&dec.a[i]);
            tgt.union_with(&dec.b[m5(ii + 2)]);
            tgt.union_with(&all_d.difference(&dec.d[i]));
            tgt.union_with(&dec.z[i]);
            report.push(PropertyId::M2, i, complete_witness(g, &dec.a[i], &tgt));
            // M3: one of X_i and D_i-1 u D_i+2 is empty
            let dd = dec.d[m5(ii - 1)].union(&dec.d[m5(ii + 2)]);
            report.push(PropertyId::M3, i, one_empty_witness(&[&dec.x(i), &dd]));
        }
    }
    if level == PropertyLevel::L {
        for i in 0..5usize {
            let ii = i as isize;
            // L1: |D_i| <= 1
            report.push(PropertyId::L1, i, card_witness(&dec.d[i], 1));
            // L2: A_i u T is a clique
            report.push(PropertyId::L2, i, clique_witness(g, &dec.a[i].union(&dec.t)));
            // L3: [A_i, A_i+2 u D_i+1] and [A_i, A_i-2 u D_i-1] complete
            let fwd = dec.a[m5(ii + 2)].union(&dec.d[m5(ii + 1)]);
            let bwd = dec.a[m5(ii - 2)].union(&dec.d[m5(ii - 1)]);
            let w = complete_witness(g, &dec.a[i], &fwd)
                .or_else(|| complete_witness(g, &dec.a[i], &bwd));
            report.push(PropertyId::L3, i, w);
            // L4: A_i u D_i+1 nonempty => |X_i-1| <= 1; A_i u D_i-1 nonempty => |X_i| <= 1
            let mut w = None;
            if !dec.a[i].union(&dec.d[m5(ii + 1)]).is_empty() {
                w = card_witness(&dec.x(m5(ii - 1)), 1);
            }
            if w.is_none() && !dec.a[i].union(&dec.d[m5(ii - 1)]).is_empty() {
                w = card_witness(&dec.x(i), 1);
            }
            report.push(PropertyId::L4, i, w);
            // L5: one of A_i u D_i, B_i-1, B_i is empty
            let ad = dec.a[i].union(&dec.d[i]);
            report.push(
                PropertyId::L5,
                i,
                one_empty_witness(&[&ad, &dec.b[m5(ii - 1)], &dec.b[i]]),
            );
            // L6: one of A_i, D_i+1 u D_i-1, Z_i is empty
            let dd = dec.d[m5(ii + 1)].union(&dec.d[m5(ii - 1)]);
            report.push(
                PropertyId::L6,
                i,
                one_empty_witness(&[&dec.a[i], &dd, &dec.z[i]]),
            );
            // L7: one of B_i, D_i+2 u D_i-1, Z_i-2 is empty
            let dd = dec.d[m5(ii + 2)].union(&dec.d[m5(ii - 1)]);
            report.push(
                PropertyId::L7,
                i,
                one_empty_witness(&[&dec.b[i], &dd, &dec.z[m5(ii - 2)]]),
            );
            // L8: one of Z_i, B_i u B_i+1 u Z_i-2, D_i+1 is empty,
            // and |D_i+1 u Z_i u Z_i-2| <= 2
            let mut mid = dec.b[i].union(&dec.b[m5(ii + 1)]);
            mid.union_with(&dec.z[m5(ii - 2)]);
            let mut w = one_empty_witness(&[&dec.z[i], &mid, &dec.d[m5(ii + 1)]]);
            if w.is_none() {
                let mut u = dec.d[m5(ii + 1)].union(&dec.z[i]);
                u.union_with(&dec.z[m5(ii - 2)]);
                w = card_witness(&u, 2);
            }
            report.push(PropertyId::L8, i, w);
        }
    }
    report
}

/// The A-partition around an induced C7 in a (3P1+P2, K4-e, C5)-free host:
/// every outside vertex lands in some A_i with |A_i| <= 1.
#[derive(Clone, Debug)]
pub struct C7Partition {
    pub cycle: [usize; 7],
    pub a: [Option<usize>; 7],
}

impl C7Partition {
    pub fn outside_count(&self) -> usize {
        self.a.iter().filter(|s| s.is_some()).count()
    }
}

/// Classifies each outside vertex u into A_i: adjacent to v_i and v_i+1,
/// non-adjacent to v_i+2, v_i-1 and v_i-3 (adjacency to the remaining two
/// cycle vertices is unconstrained).
pub fn decompose_c7(g: &Graph, cycle: [usize; 7]) -> Result<C7Partition, DecompositionError> {
    if !induces_cycle(g, &cycle) {
        return Err(DecompositionError::NotAC7 { cycle });
    }
    let mut part = C7Partition {
        cycle,
        a: [None; 7],
    };
    let on_cycle = VertexSet::from_slice(&cycle);
    for u in 0..g.n() {
        if on_cycle.contains(u) {
            continue;
        }
        let mut slot = None;
        for i in 0..7isize {
            if g.has_edge(u, cycle[m7(i)])
                && g.has_edge(u, cycle[m7(i + 1)])
                && !g.has_edge(u, cycle[m7(i + 2)])
                && !g.has_edge(u, cycle[m7(i - 1)])
                && !g.has_edge(u, cycle[m7(i - 3)])
            {
                slot = Some(m7(i));
                break;
            }
        }
        match slot {
            None => return Err(DecompositionError::UnclassifiableVertex { vertex: u }),
            Some(i) => {
                if part.a[i].is_some() {
                    // |A_i| <= 1 in any class member; a second hit means the
                    // precondition is violated and u is the witness
                    return Err(DecompositionError::UnclassifiableVertex { vertex: u });
                }
                part.a[i] = Some(u);
            }
        }
    }
    Ok(part)
}

/// Decomposition-level reconstructions of the special configurations used
/// by the degree lemmas: which anchor combinations occur.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructuralFlags {
    /// Some i has A_i and X_i both nonempty.
    pub has_f1: bool,
    /// Some i has A_i and A_i+1 both nonempty.
    pub has_f2: bool,
    /// Some i has B_i, B_i+2 and B_i+4 all nonempty.
    pub has_f3: bool,
    /// Some i has B_i, B_i+2 and A_i+4 all nonempty.
    pub has_f4: bool,
    /// T is nonempty (a C5 plus an isolated-from-the-cycle vertex).
    pub has_c5k1: bool,
}

impl StructuralFlags {
    pub fn any(&self) -> bool {
        self.has_f1 || self.has_f2 || self.has_f3 || self.has_f4 || self.has_c5k1
    }
}

impl fmt::Display for StructuralFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        if self.has_f1 {
            names.push("F1");
        }
        if self.has_f2 {
            names.push("F2");
        }
        if self.has_f3 {
            names.push("F3");
        }
        if self.has_f4 {
            names.push("F4");
        }
        if self.has_c5k1 {
            names.push("C5+K1");
        }
        if names.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", names.join(","))
        }
    }
}

pub fn structural_flags(dec: &C5Decomposition) -> StructuralFlags {
    let mut flags = StructuralFlags {
        has_c5k1: !dec.t.is_empty(),
        ..StructuralFlags::default()
    };
    for i in 0..5isize {
        let ai = &dec.a[m5(i)];
        let bi = &dec.b[m5(i)];
        if !ai.is_empty() && !dec.x(m5(i)).is_empty() {
            flags.has_f1 = true;
        }
        if !ai.is_empty() && !dec.a[m5(i + 1)].is_empty() {
            flags.has_f2 = true;
        }
        if !bi.is_empty() && !dec.b[m5(i + 2)].is_empty() {
            if !dec.b[m5(i + 4)].is_empty() {
                flags.has_f3 = true;
            }
            if !dec.a[m5(i + 4)].is_empty() {
                flags.has_f4 = true;
            }
        }
    }
    flags
}
