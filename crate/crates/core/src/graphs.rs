//! Labeled graphs on the vertex set `[n]` stored as edge bitsets over `K_n`.
//!
//! Vertices are 0-based internally (`0..n`); edges are indexed
//! lexicographically, `(0,1), (0,2), …, (0,n-1), (1,2), …`, so ties in an
//! [`EdgeOrder`] broken by edge index are broken lexicographically in `(i, j)`.
//!
//! The two maps of the partition scheme live here:
//!
//! - [`kruskal_min_tree`] sends a connected graph `g` to the tree obtained by
//!   scanning `g`'s edges in ascending order and keeping every edge that does
//!   not close a cycle;
//! - [`scheme_map`] sends a tree `τ` to the graph of all edges `{i,j}` that
//!   dominate every `τ`-edge on the `τ`-path from `i` to `j`.
//!
//! For any total order, the Boolean intervals `[τ, M(τ)]` partition the
//! connected graphs and `T⁻¹(τ)` is exactly `[τ, M(τ)]`. [`verify_partition`]
//! checks both statements exhaustively.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{check_capacity, Error, Result};

/// Largest `n` for the exhaustive scan over all edge subsets of `K_n`.
pub const MAX_CONNECTED_N: usize = 6;
/// Largest `n` for tree enumeration; `8^6 = 262144` trees.
pub const MAX_TREE_N: usize = 8;

/// `n(n-1)/2`.
pub const fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An edge `{i, j}` of `K_n` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    i: u8,
    j: u8,
}

impl EdgeId {
    /// Panics if `i == j`.
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i != j, "self-loop {{{i},{i}}}");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Self {
            i: i as u8,
            j: j as u8,
        }
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    /// Lexicographic linear index in `[0, n(n-1)/2)`.
    pub fn index(self, n: usize) -> usize {
        let (i, j) = (self.i(), self.j());
        debug_assert!(j < n);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        debug_assert!(index < edge_count(n));
        let mut rest = index;
        let mut i = 0;
        while rest >= n - 1 - i {
            rest -= n - 1 - i;
            i += 1;
        }
        Self::new(i, i + 1 + rest)
    }
}

impl fmt::Display for EdgeId {
    /// 1-based, as in `{1,2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i + 1, self.j + 1)
    }
}

/// All edges of `K_n` in index order.
pub fn edges_of_complete(n: usize) -> Vec<EdgeId> {
    (0..edge_count(n)).map(|k| EdgeId::from_index(n, k)).collect()
}

/// A spanning subgraph of `K_n` (all `n` vertices, any subset of edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: u8,
    bits: u32,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_TREE_N, "n = {n} exceeds the bitset width");
        Self { n: n as u8, bits: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        g.bits = full_mask(n);
        g
    }

    pub fn from_bits(n: usize, bits: u32) -> Self {
        let mut g = Self::empty(n);
        assert_eq!(bits & !full_mask(n), 0, "bits outside K_{n}");
        g.bits = bits;
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut g = Self::empty(n);
        for e in edges {
            g.insert(e);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(e.j() < self.n());
        self.bits |= 1 << e.index(self.n());
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.contains_index(e.index(self.n()))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.bits >> index & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Edge indices in ascending order.
    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.bits)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        let n = self.n();
        self.edge_indices().map(move |k| EdgeId::from_index(n, k))
    }

    /// `self ⊆ other`.
    pub fn is_subgraph_of(&self, other: &LabeledGraph) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        let mut components = n;
        for e in self.edges() {
            if uf.union(e.i(), e.j()) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        false
    }

    fn is_acyclic(&self) -> bool {
        let mut uf = UnionFind::new(self.n());
        self.edges().all(|e| uf.union(e.i(), e.j()))
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

fn full_mask(n: usize) -> u32 {
    let m = edge_count(n);
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

struct BitIter(u32);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let k = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(k)
        }
    }
}

struct UnionFind {
    parent: [u8; MAX_TREE_N],
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_TREE_N];
        for (k, p) in parent.iter_mut().enumerate().take(n) {
            *p = k as u8;
        }
        Self { parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb) as u8;
        true
    }
}

/// A spanning tree of `K_n`: `n - 1` edges, connected and acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledTree(LabeledGraph);

impl LabeledTree {
    pub fn new(g: LabeledGraph) -> Result<Self> {
        let n = g.n();
        if g.edge_count() != n.saturating_sub(1) {
            return Err(Error::Structure(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n.saturating_sub(1),
                g.edge_count()
            )));
        }
        if !g.is_acyclic() {
            return Err(Error::Structure(format!("{g} contains a cycle")));
        }
        if !g.is_connected() {
            return Err(Error::Structure(format!("{g} is not spanning")));
        }
        Ok(Self(g))
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// Decode a Prüfer sequence of length `n - 2` over `0..n`.
    pub fn from_prufer(n: usize, seq: &[usize]) -> Result<Self> {
        check_capacity("tree enumeration", n, MAX_TREE_N)?;
        if n < 2 {
            return if seq.is_empty() && n == 1 {
                Ok(Self(LabeledGraph::empty(1)))
            } else {
                Err(Error::InvalidInput(format!("no Prüfer sequence for n = {n}")))
            };
        }
        if seq.len() != n - 2 || seq.iter().any(|&v| v >= n) {
            return Err(Error::InvalidInput(format!(
                "Prüfer sequence for n = {n} needs {} labels in 0..{n}",
                n - 2
            )));
        }
        let mut degree = [1usize; MAX_TREE_N];
        for &v in seq {
            degree[v] += 1;
        }
        let mut g = LabeledGraph::empty(n);
        for &v in seq {
            let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
            g.insert(EdgeId::new(leaf, v));
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let mut rest = (0..n).filter(|&u| degree[u] == 1);
        let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
        g.insert(EdgeId::new(a, b));
        Ok(Self(g))
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Connected spanning subgraphs of `K_n`, in increasing bitmask order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = LabeledGraph>> {
    check_capacity("connected-graph enumeration", n, MAX_CONNECTED_N)?;
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    Ok((0..=full_mask(n))
        .map(move |bits| LabeledGraph::from_bits(n, bits))
        .filter(LabeledGraph::is_connected))
}

/// All labeled trees on `[n]`, in lexicographic Prüfer order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    check_capacity("tree enumeration", n, MAX_TREE_N)?;
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let len = n.saturating_sub(2);
    let total = n.pow(len as u32);
    Ok((0..total).map(move |mut code| {
        let mut seq = [0usize; MAX_TREE_N];
        for slot in seq[..len].iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        LabeledTree::from_prufer(n, &seq[..len]).expect("valid Prüfer sequence")
    }))
}

/// Cached [`enumerate_connected`].
pub fn connected_graphs(n: usize) -> Result<&'static [LabeledGraph]> {
    static CACHE: [OnceLock<Vec<LabeledGraph>>; MAX_CONNECTED_N + 1] =
        [const { OnceLock::new() }; MAX_CONNECTED_N + 1];
    let iter = enumerate_connected(n)?;
    Ok(CACHE[n].get_or_init(|| iter.collect()))
}

/// Cached [`enumerate_trees`].
pub fn trees(n: usize) -> Result<&'static [LabeledTree]> {
    static CACHE: [OnceLock<Vec<LabeledTree>>; MAX_TREE_N + 1] =
        [const { OnceLock::new() }; MAX_TREE_N + 1];
    let iter = enumerate_trees(n)?;
    Ok(CACHE[n].get_or_init(|| iter.collect()))
}

/// A total order on the edges of `K_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    n: usize,
    /// Edge indices, lowest first.
    sequence: Vec<u8>,
    /// Position of each edge index in `sequence`.
    rank: Vec<u8>,
}

impl EdgeOrder {
    /// Sort edges ascending by weight; equal weights are ordered by edge
    /// index, i.e. lexicographically in `(i, j)`.
    ///
    /// `+∞` is allowed (hard cores), NaN is rejected.
    pub fn from_weights(n: usize, weights: &[f64]) -> Result<Self> {
        check_capacity("edge order", n, MAX_TREE_N)?;
        if weights.len() != edge_count(n) {
            return Err(Error::InvalidInput(format!(
                "K_{n} has {} edges, got {} weights",
                edge_count(n),
                weights.len()
            )));
        }
        if let Some(k) = weights.iter().position(|w| w.is_nan()) {
            return Err(Error::InvalidInput(format!(
                "weight of edge {} is NaN",
                EdgeId::from_index(n, k)
            )));
        }
        let mut sequence: Vec<u8> = (0..weights.len() as u8).collect();
        // stable sort keeps index order among ties
        sequence.sort_by(|&a, &b| {
            weights[a as usize]
                .partial_cmp(&weights[b as usize])
                .expect("no NaN")
        });
        Ok(Self::from_sorted(n, sequence))
    }

    /// Order given explicitly as a permutation of edge indices, lowest first.
    pub fn from_sequence(n: usize, sequence: &[usize]) -> Result<Self> {
        check_capacity("edge order", n, MAX_TREE_N)?;
        let m = edge_count(n);
        let mut seen = vec![false; m];
        if sequence.len() != m {
            return Err(Error::InvalidInput(format!(
                "order on K_{n} needs {m} entries, got {}",
                sequence.len()
            )));
        }
        for &k in sequence {
            if k >= m || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidInput(format!(
                    "{sequence:?} is not a permutation of 0..{m}"
                )));
            }
        }
        Ok(Self::from_sorted(
            n,
            sequence.iter().map(|&k| k as u8).collect(),
        ))
    }

    /// Edge index order.
    pub fn lexicographic(n: usize) -> Self {
        Self::from_sorted(n, (0..edge_count(n) as u8).collect())
    }

    fn from_sorted(n: usize, sequence: Vec<u8>) -> Self {
        let mut rank = vec![0u8; sequence.len()];
        for (pos, &k) in sequence.iter().enumerate() {
            rank[k as usize] = pos as u8;
        }
        Self { n, sequence, rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge indices from lowest to highest.
    pub fn sequence(&self) -> impl Iterator<Item = usize> + '_ {
        self.sequence.iter().map(|&k| k as usize)
    }

    /// Position of edge `index` in the order.
    pub fn rank(&self, index: usize) -> usize {
        self.rank[index] as usize
    }

    /// `a ≻ b`.
    pub fn above(&self, a: EdgeId, b: EdgeId) -> bool {
        self.rank(a.index(self.n)) > self.rank(b.index(self.n))
    }

    /// `a ≻ b ⟹ w(a) >= w(b)` for all pairs of edges.
    pub fn is_compatible_with(&self, weights: &[f64]) -> bool {
        self.sequence
            .windows(2)
            .all(|w| weights[w[1] as usize] >= weights[w[0] as usize])
    }
}

/// Kruskal's minimal tree `T(g)`: scan `g`'s edges in ascending order and keep
/// each one that does not close a cycle.
pub fn kruskal_min_tree(g: &LabeledGraph, ord: &EdgeOrder) -> Result<LabeledTree> {
    let n = g.n();
    if ord.n() != n {
        return Err(Error::InvalidInput(format!(
            "order on K_{} applied to a graph on {n} vertices",
            ord.n()
        )));
    }
    let mut uf = UnionFind::new(n);
    let mut tree = LabeledGraph::empty(n);
    let mut needed = n.saturating_sub(1);
    for k in ord.sequence() {
        if needed == 0 {
            break;
        }
        if g.contains_index(k) {
            let e = EdgeId::from_index(n, k);
            if uf.union(e.i(), e.j()) {
                tree.bits |= 1 << k;
                needed -= 1;
            }
        }
    }
    if needed > 0 {
        return Err(Error::Structure(format!("{g} is not connected")));
    }
    Ok(LabeledTree(tree))
}

/// Rooted view of a tree for path-maximum queries.
struct RootedTree {
    parent: [u8; MAX_TREE_N],
    /// Edge index joining a vertex to its parent.
    up_edge: [u8; MAX_TREE_N],
    depth: [u8; MAX_TREE_N],
}

impl RootedTree {
    fn new(tau: &LabeledTree) -> Self {
        let n = tau.n();
        let mut adj = [0u8; MAX_TREE_N];
        for e in tau.graph().edges() {
            adj[e.i()] |= 1 << e.j();
            adj[e.j()] |= 1 << e.i();
        }
        let mut rt = Self {
            parent: [0; MAX_TREE_N],
            up_edge: [0; MAX_TREE_N],
            depth: [0; MAX_TREE_N],
        };
        let mut visited = 1u8;
        let mut queue = [0u8; MAX_TREE_N];
        let (mut head, mut tail) = (0, 1);
        while head < tail {
            let v = queue[head] as usize;
            head += 1;
            let mut next = adj[v] & !visited;
            while next != 0 {
                let u = next.trailing_zeros() as usize;
                next &= next - 1;
                visited |= 1 << u;
                rt.parent[u] = v as u8;
                rt.up_edge[u] = EdgeId::new(u, v).index(n) as u8;
                rt.depth[u] = rt.depth[v] + 1;
                queue[tail] = u as u8;
                tail += 1;
            }
        }
        rt
    }

    /// Highest rank among the tree edges on the path from `a` to `b`.
    fn max_rank_on_path(&self, mut a: usize, mut b: usize, ord: &EdgeOrder) -> usize {
        let mut best = 0;
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            best = best.max(ord.rank(self.up_edge[a] as usize));
            a = self.parent[a] as usize;
        }
        best
    }
}

/// The partition-scheme graph `M(τ)`: every edge `{i,j}` of `K_n` ranked at
/// or above each `τ`-edge on the `τ`-path from `i` to `j`.
pub fn scheme_map(tau: &LabeledTree, ord: &EdgeOrder) -> LabeledGraph {
    let n = tau.n();
    assert_eq!(ord.n(), n, "order and tree disagree on n");
    let rooted = RootedTree::new(tau);
    let mut m = *tau.graph();
    for k in 0..edge_count(n) {
        if m.contains_index(k) {
            continue;
        }
        let e = EdgeId::from_index(n, k);
        if ord.rank(k) >= rooted.max_rank_on_path(e.i(), e.j(), ord) {
            m.bits |= 1 << k;
        }
    }
    m
}

/// First failure found by [`verify_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionFailure {
    /// `g` is not inside `[T(g), M(T(g))]`.
    OutsideInterval {
        graph: LabeledGraph,
        tree: LabeledTree,
        scheme: LabeledGraph,
    },
    /// `g ∈ [τ, M(τ)]` but Kruskal returns a different tree.
    WrongPreimage {
        graph: LabeledGraph,
        expected: LabeledTree,
        found: LabeledTree,
    },
    /// `Σ_τ 2^{|M(τ)| - (n-1)} ≠ |G_n|`.
    CountMismatch { interval_total: u64, connected: u64 },
    /// A graph in some interval was disconnected (cannot happen for a tree
    /// subgraph, reported for completeness).
    Disconnected { graph: LabeledGraph },
}

impl fmt::Display for PartitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutsideInterval {
                graph,
                tree,
                scheme,
            } => write!(f, "g = {graph} is not in [T(g), M(T(g))] = [{tree}, {scheme}]"),
            Self::WrongPreimage {
                graph,
                expected,
                found,
            } => write!(f, "g = {graph} lies in the interval of {expected} but T(g) = {found}"),
            Self::CountMismatch {
                interval_total,
                connected,
            } => write!(f, "interval sizes sum to {interval_total}, but |G_n| = {connected}"),
            Self::Disconnected { graph } => write!(f, "{graph} is disconnected"),
        }
    }
}

/// Outcome of an exhaustive partition-scheme check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub n: usize,
    /// `|G_n|` by exhaustive scan.
    pub connected: u64,
    /// `|T_n|`.
    pub trees: u64,
    /// `Σ_τ 2^{|M(τ)| - (n-1)}`.
    pub interval_total: u64,
    pub failure: Option<PartitionFailure>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively check that `[τ, M(τ)]`, `τ ∈ T_n`, partitions `G_n` and that
/// `T⁻¹(τ) = [τ, M(τ)]` under `ord`.
pub fn verify_partition(n: usize, ord: &EdgeOrder) -> Result<PartitionReport> {
    check_capacity("partition verification", n, MAX_CONNECTED_N)?;
    if n < 2 {
        return Err(Error::Domain(format!("partition verification needs n >= 2, got {n}")));
    }
    if ord.n() != n {
        return Err(Error::InvalidInput(format!("order is on K_{}, expected K_{n}", ord.n())));
    }
    let graphs = connected_graphs(n)?;
    let tree_list = trees(n)?;
    let mut report = PartitionReport {
        n,
        connected: graphs.len() as u64,
        trees: tree_list.len() as u64,
        interval_total: 0,
        failure: None,
    };

    for g in graphs {
        let tau = kruskal_min_tree(g, ord)?;
        let m = scheme_map(&tau, ord);
        if !(tau.graph().is_subgraph_of(g) && g.is_subgraph_of(&m)) {
            report.failure = Some(PartitionFailure::OutsideInterval {
                graph: *g,
                tree: tau,
                scheme: m,
            });
            return Ok(report);
        }
    }

    for tau in tree_list {
        let m = scheme_map(tau, ord);
        let base = tau.graph().bits();
        let extra = m.bits() & !base;
        report.interval_total += 1u64 << extra.count_ones();
        // every submask of `extra`, including 0
        let mut sub = extra;
        loop {
            let g = LabeledGraph::from_bits(n, base | sub);
            match kruskal_min_tree(&g, ord) {
                Ok(found) if found == *tau => {}
                Ok(found) => {
                    report.failure = Some(PartitionFailure::WrongPreimage {
                        graph: g,
                        expected: *tau,
                        found,
                    });
                    return Ok(report);
                }
                Err(_) => {
                    report.failure = Some(PartitionFailure::Disconnected { graph: g });
                    return Ok(report);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & extra;
        }
    }

    if report.interval_total != report.connected {
        report.failure = Some(PartitionFailure::CountMismatch {
            interval_total: report.interval_total,
            connected: report.connected,
        });
    }
    Ok(report)
}

/// Random edge weights drawn from a small set of levels so that ties are
/// frequent; with probability `1/8` per edge the weight is `+∞`.
pub fn random_tied_weights<R: Rng + ?Sized>(n: usize, levels: u32, rng: &mut R) -> Vec<f64> {
    (0..edge_count(n))
        .map(|_| {
            if rng.random_ratio(1, 8) {
                f64::INFINITY
            } else {
                rng.random_range(0..levels.max(1)) as f64 - (levels / 2) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> EdgeId {
        // 1-based helper matching the notation e_ij
        EdgeId::new(i - 1, j - 1)
    }

    /// Connected-graph counts by brute force over edge subsets with a BFS
    /// connectivity test, independent of the union-find path.
    fn brute_connected(n: usize) -> usize {
        let m = edge_count(n);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        (0u32..1 << m)
            .filter(|mask| {
                let mut seen = vec![false; n];
                let mut stack = vec![0];
                seen[0] = true;
                while let Some(v) = stack.pop() {
                    for (k, &(a, b)) in edges.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            let w = if a == v { b } else if b == v { a } else { continue };
                            if !seen[w] {
                                seen[w] = true;
                                stack.push(w);
                            }
                        }
                    }
                }
                seen.iter().all(|&s| s)
            })
            .count()
    }

    #[test]
    fn edge_index_bijection() {
        for n in 2..=MAX_TREE_N {
            for k in 0..edge_count(n) {
                let e = EdgeId::from_index(n, k);
                assert!(e.i() < e.j());
                assert_eq!(e.index(n), k);
            }
        }
        assert_eq!(e(1, 2).index(4), 0);
        assert_eq!(e(1, 4).index(4), 2);
        assert_eq!(e(2, 3).index(4), 3);
        assert_eq!(e(3, 4).index(4), 5);
        assert_eq!(e(1, 3).to_string(), "{1,3}");
    }

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        for n in 1..=5 {
            assert_eq!(counts[n - 1], brute_connected(n));
        }
        assert_eq!(connected_graphs(6).unwrap().len(), brute_connected(6));
        assert_eq!(connected_graphs(6).unwrap().len(), 26704);
    }

    #[test]
    fn connected_capacity() {
        assert!(matches!(enumerate_connected(7), Err(Error::Capacity { max: 6, .. })));
        assert!(enumerate_connected(0).is_err());
    }

    #[test]
    fn tree_counts_follow_cayley() {
        assert_eq!(enumerate_trees(1).unwrap().count(), 1);
        assert_eq!(enumerate_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_trees(4).unwrap().count(), 16);
        assert_eq!(enumerate_trees(6).unwrap().count(), 1296);
        for n in 2..=MAX_TREE_N {
            let list = trees(n).unwrap();
            assert_eq!(list.len(), n.pow(n as u32 - 2));
            let distinct: std::collections::HashSet<_> = list.iter().collect();
            assert_eq!(distinct.len(), list.len());
        }
        assert!(matches!(enumerate_trees(9), Err(Error::Capacity { .. })));
    }

    #[test]
    fn trees_are_the_connected_graphs_with_n_minus_1_edges() {
        for n in 2..=6 {
            let from_scan = connected_graphs(n)
                .unwrap()
                .iter()
                .filter(|g| g.edge_count() == n - 1)
                .count();
            assert_eq!(from_scan, trees(n).unwrap().len());
        }
    }

    #[test]
    fn tree_validation() {
        let path = LabeledGraph::from_edges(3, [e(1, 2), e(2, 3)]);
        assert!(LabeledTree::new(path).is_ok());
        let triangle = LabeledGraph::complete(3);
        assert!(matches!(LabeledTree::new(triangle), Err(Error::Structure(_))));
        // right edge count, but a cycle plus an isolated vertex
        let cyc = LabeledGraph::from_edges(4, [e(1, 2), e(2, 3), e(1, 3)]);
        assert!(LabeledTree::new(cyc).is_err());
    }

    #[test]
    fn edge_order_examples() {
        let distinct = EdgeOrder::from_weights(3, &[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(distinct.sequence().collect::<Vec<_>>(), vec![1, 2, 0]);

        let equal = EdgeOrder::from_weights(4, &[0.5; 6]).unwrap();
        assert_eq!(equal, EdgeOrder::lexicographic(4));

        // e12: -1, e13: 0.5, e23: -0.2 → e12 < e23 < e13
        let ord = EdgeOrder::from_weights(3, &[-1.0, 0.5, -0.2]).unwrap();
        let seq: Vec<EdgeId> = ord.sequence().map(|k| EdgeId::from_index(3, k)).collect();
        assert_eq!(seq, vec![e(1, 2), e(2, 3), e(1, 3)]);
        assert!(ord.above(e(1, 3), e(2, 3)));

        let with_inf = EdgeOrder::from_weights(3, &[f64::INFINITY, 0.0, f64::INFINITY]).unwrap();
        assert_eq!(with_inf.sequence().collect::<Vec<_>>(), vec![1, 0, 2]);
    }

    #[test]
    fn edge_order_rejects_bad_input() {
        assert!(matches!(
            EdgeOrder::from_weights(3, &[0.0, f64::NAN, 1.0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(EdgeOrder::from_weights(3, &[0.0, 1.0]).is_err());
        assert!(EdgeOrder::from_sequence(3, &[0, 0, 1]).is_err());
        assert!(EdgeOrder::from_sequence(3, &[0, 1, 3]).is_err());
    }

    #[test]
    fn signed_zero_weights_tie() {
        let ord = EdgeOrder::from_weights(3, &[0.0, -0.0, 0.0]).unwrap();
        assert_eq!(ord, EdgeOrder::lexicographic(3));
    }

    #[test]
    fn kruskal_examples() {
        let ord = EdgeOrder::from_weights(3, &[-1.0, 0.5, -0.2]).unwrap();
        let t = kruskal_min_tree(&LabeledGraph::complete(3), &ord).unwrap();
        assert_eq!(*t.graph(), LabeledGraph::from_edges(3, [e(1, 2), e(2, 3)]));

        let ord4 = EdgeOrder::from_weights(4, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let t4 = kruskal_min_tree(&LabeledGraph::complete(4), &ord4).unwrap();
        assert_eq!(*t4.graph(), LabeledGraph::from_edges(4, [e(1, 2), e(1, 3), e(1, 4)]));

        for tau in trees(5).unwrap() {
            let ord = EdgeOrder::lexicographic(5);
            assert_eq!(kruskal_min_tree(tau.graph(), &ord).unwrap(), *tau);
        }

        let disconnected = LabeledGraph::from_edges(4, [e(1, 2), e(3, 4)]);
        assert!(matches!(
            kruskal_min_tree(&disconnected, &EdgeOrder::lexicographic(4)),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn scheme_map_examples() {
        let k2 = LabeledTree::new(LabeledGraph::complete(2)).unwrap();
        assert_eq!(scheme_map(&k2, &EdgeOrder::lexicographic(2)), LabeledGraph::complete(2));

        let ord = EdgeOrder::from_weights(3, &[-1.0, 0.5, -0.2]).unwrap();
        let path = LabeledTree::new(LabeledGraph::from_edges(3, [e(1, 2), e(2, 3)])).unwrap();
        assert_eq!(scheme_map(&path, &ord), LabeledGraph::complete(3));

        let star = LabeledTree::new(LabeledGraph::from_edges(3, [e(1, 2), e(1, 3)])).unwrap();
        assert_eq!(scheme_map(&star, &ord), *star.graph());
    }

    #[test]
    fn partition_small_cases() {
        let r = verify_partition(2, &EdgeOrder::lexicographic(2)).unwrap();
        assert!(r.passed());
        assert_eq!((r.connected, r.interval_total), (1, 1));

        // all 6 orders of the 3 edges of K_3
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let r = verify_partition(3, &EdgeOrder::from_sequence(3, &p).unwrap()).unwrap();
            assert!(r.passed(), "{:?}", r.failure);
            assert_eq!(r.interval_total, 4);
            assert_eq!(r.connected, 4);
        }
        assert!(verify_partition(1, &EdgeOrder::lexicographic(1)).is_err());
        assert!(matches!(
            verify_partition(7, &EdgeOrder::lexicographic(7)),
            Err(Error::Capacity { .. })
        ));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tied_weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(
            prop_oneof![
                4 => (-2i32..3).prop_map(f64::from),
                1 => Just(f64::INFINITY),
                2 => -3.0f64..3.0,
            ],
            edge_count(n),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn partition_holds_for_tied_weights(n in 2usize..=5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_tied_weights(n, 3, &mut rng);
            let ord = EdgeOrder::from_weights(n, &w).unwrap();
            prop_assert!(ord.is_compatible_with(&w));
            let r = verify_partition(n, &ord).unwrap();
            prop_assert!(r.passed(), "{}", r.failure.unwrap());
        }

        #[test]
        fn any_compatible_refinement_works(
            w in tied_weights(4),
            tiebreak in Just((0..edge_count(4)).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            // ascending weight, ties broken by a random permutation instead of lexicographically
            let mut seq: Vec<usize> = (0..edge_count(4)).collect();
            seq.sort_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap().then(tiebreak[a].cmp(&tiebreak[b])));
            let ord = EdgeOrder::from_sequence(4, &seq).unwrap();
            prop_assert!(ord.is_compatible_with(&w));
            let r = verify_partition(4, &ord).unwrap();
            prop_assert!(r.passed());
            prop_assert_eq!(r.interval_total, 38);
        }

        #[test]
        fn scheme_contains_tree_and_kruskal_inverts_it(n in 2usize..=7, w in prop::collection::vec(-3i32..3, 21)) {
            let weights: Vec<f64> = w[..edge_count(n)].iter().map(|&x| f64::from(x)).collect();
            let ord = EdgeOrder::from_weights(n, &weights).unwrap();
            for tau in trees(n).unwrap().iter().step_by(7) {
                let m = scheme_map(tau, &ord);
                prop_assert!(tau.graph().is_subgraph_of(&m));
                prop_assert_eq!(kruskal_min_tree(&m, &ord).unwrap(), *tau);
            }
        }
    }
}
