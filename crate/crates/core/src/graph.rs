//! Immutable simple graphs over dense vertex indices, with bitset vertex
//! sets and proper colorings.
//!
//! Vertices are `0..n`. Sets are fixed-width bit vectors: one inline `u64`
//! word covers the guaranteed n <= 64 tier, and the same code path spills
//! to heap words for larger graphs (with the degraded oracle guarantees
//! documented on the oracle module). Graphs never mutate after
//! construction; vertex deletion produces a new graph plus an index map.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

const WORD_BITS: usize = 64;

/// A set of vertex indices backed by a bit vector.
///
/// Equality and ordering ignore trailing zero words, so sets built against
/// different graph sizes compare by membership alone. The ordering is
/// lexicographic on the ascending vertex sequence (so `{0,5} < {1,2}` and a
/// prefix sorts before its extensions), which is the tie-break order used
/// throughout the crate.
#[derive(Clone, Default)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet {
            words: SmallVec::new(),
        }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new();
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        let mut s = VertexSet::new();
        for &v in vs {
            s.insert(v);
        }
        s
    }

    fn grow_to(&mut self, words: usize) {
        while self.words.len() < words {
            self.words.push(0);
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / WORD_BITS;
        self.grow_to(w + 1);
        self.words[w] |= 1u64 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        let w = v / WORD_BITS;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (v % WORD_BITS));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        let w = v / WORD_BITS;
        w < self.words.len() && self.words[w] & (1u64 << (v % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.grow_to(other.words.len());
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i] |= w;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= !other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> SetIter<'_> {
        SetIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        let len = self.words.len().max(other.words.len());
        (0..len).all(|i| {
            self.words.get(i).copied().unwrap_or(0) == other.words.get(i).copied().unwrap_or(0)
        })
    }
}

impl Eq for VertexSet {}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Lexicographic on ascending member sequences; a prefix sorts before
    /// its extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => {
                    if x != y {
                        return x.cmp(&y);
                    }
                }
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct SetIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> Iterator for SetIter<'a> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// Errors from graph construction and set-algebra preconditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    IndexOutOfRange { index: usize, n: usize },
    SelfLoop { vertex: usize },
    OverlappingSets { vertex: usize },
    EmptyGraph,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::IndexOutOfRange { index, n } => {
                write!(f, "vertex index {index} out of range for n={n}")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::OverlappingSets { vertex } => {
                write!(f, "sets overlap at vertex {vertex}")
            }
            GraphError::EmptyGraph => write!(f, "operation undefined on the empty graph"),
        }
    }
}

/// An immutable simple graph: `n` vertices and symmetric, irreflexive
/// adjacency bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// Vertex correspondence produced by induced-subgraph construction:
/// `new_to_old[w]` is the parent-graph vertex that became `w`.
#[derive(Clone, Debug)]
pub struct IndexMap {
    pub new_to_old: Vec<usize>,
}

impl IndexMap {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.new_to_old.binary_search(&old).ok()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![VertexSet::new(); n],
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Graph {
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = VertexSet::full(n);
            row.remove(v);
            adj.push(row);
        }
        Graph { n, adj }
    }

    /// The cycle `0-1-..-(n-1)-0`; requires n >= 3.
    pub fn cycle(n: usize) -> Graph {
        debug_assert!(n >= 3);
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).expect("path edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Vertex of least degree, lowest index winning ties.
    pub fn min_degree_vertex(&self) -> Result<(usize, usize), GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut best = (0, self.degree(0));
        for v in 1..self.n {
            let d = self.degree(v);
            if d < best.1 {
                best = (v, d);
            }
        }
        Ok(best)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `u < v`, sorted.
    pub fn to_edge_list(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = VertexSet::full(self.n);
            row.remove(v);
            row.subtract(&self.adj[v]);
            adj.push(row);
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `s`, with the vertex correspondence.
    ///
    /// New indices follow the ascending order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, IndexMap), GraphError> {
        if let Some(bad) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        let new_to_old: Vec<usize> = s.iter().collect();
        let m = new_to_old.len();
        let mut adj = vec![VertexSet::new(); m];
        for (wu, &u) in new_to_old.iter().enumerate() {
            for (wv, &v) in new_to_old.iter().enumerate().skip(wu + 1) {
                if self.has_edge(u, v) {
                    adj[wu].insert(wv);
                    adj[wv].insert(wu);
                }
            }
        }
        Ok((Graph { n: m, adj }, IndexMap { new_to_old }))
    }

    /// New graph with `v` deleted, plus the index map.
    pub fn remove_vertex(&self, v: usize) -> (Graph, IndexMap) {
        let mut keep = self.vertices();
        keep.remove(v);
        self.induced_subgraph(&keep)
            .expect("remaining vertices are in range")
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let members: Vec<usize> = s.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_stable_set(&self, s: &VertexSet) -> bool {
        for u in s.iter() {
            if !self.adj[u].is_disjoint_from(s) {
                return false;
            }
        }
        true
    }

    /// Every vertex of `a` has at most one neighbor in `b`, and vice versa.
    pub fn is_special(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = a.intersection(b).first() {
            return Err(GraphError::OverlappingSets { vertex: v });
        }
        for u in a.iter() {
            if self.adj[u].intersection(b).len() > 1 {
                return Ok(false);
            }
        }
        for u in b.iter() {
            if self.adj[u].intersection(a).len() > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Both sets are cliques and the edges between them are special.
    pub fn are_graded(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        let special = self.is_special(a, b)?;
        Ok(special && self.is_clique(a) && self.is_clique(b))
    }

    pub fn anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|u| self.adj[u].is_disjoint_from(b))
    }

    pub fn complete_between(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|u| b.difference(&self.adj[u]).is_empty())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.to_edge_list())
    }
}

/// Errors from proper-coloring validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    LengthMismatch { expected: usize, got: usize },
    ImproperEdge { u: usize, v: usize },
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::LengthMismatch { expected, got } => {
                write!(f, "coloring covers {got} vertices, graph has {expected}")
            }
            ColoringError::ImproperEdge { u, v } => {
                write!(f, "edge {u}-{v} has both endpoints the same color")
            }
        }
    }
}

/// A validated proper coloring: total on the vertex set, endpoints of every
/// edge distinct, `palette_size` the number of distinct colors used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl Coloring {
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Coloring, ColoringError> {
        if colors.len() != g.n() {
            return Err(ColoringError::LengthMismatch {
                expected: g.n(),
                got: colors.len(),
            });
        }
        for u in 0..g.n() {
            for v in g.neighbors(u).iter() {
                if v > u && colors[u] == colors[v] {
                    return Err(ColoringError::ImproperEdge { u, v });
                }
            }
        }
        let mut distinct: Vec<usize> = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(Coloring {
            colors,
            palette_size: distinct.len(),
        })
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && (0..g.n())
                .all(|u| g.neighbors(u).iter().all(|v| self.colors[u] != self.colors[v]))
    }

    /// The coloring restricted through an index map onto a subgraph.
    pub fn restrict(&self, map: &IndexMap) -> Vec<usize> {
        map.new_to_old.iter().map(|&old| self.colors[old]).collect()
    }
}
