//! Register transfer graphs and their structure.
//!
//! An RTG records a data-movement obligation over a register file: an edge
//! `(u, v)` means that register `v` must end up holding the value initially
//! stored in register `u`. A register can only receive one value, so every
//! vertex has at most one incoming edge. Self-loops are allowed and mean
//! "this register's value must survive".
//!
//! Terminology used throughout the crate:
//!
//! * **outdegree-1 RTG** — every vertex also has at most one outgoing edge.
//!   Such a graph decomposes into disjoint paths, cycles and self-loops and
//!   can be implemented with permutation instructions alone.
//! * **PRTG** — permutation RTG: in- and out-degree exactly one everywhere.
//! * **trivial RTG** — only self-loops; nothing has to move.
//!
//! The *signature* of an outdegree-1 RTG condenses everything the cost
//! analysis needs to know: how often cycles can be shortened by a full
//! five-register rotation, and how many components of size 2 and 3 (mod 4)
//! remain afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Index of a machine register. Ids do not have to be contiguous.
pub type RegId = u32;

/// An edge `(src, dst)`: `dst` must receive the initial value of `src`.
pub type Edge = (RegId, RegId);

/// Errors raised when building or transforming an [`Rtg`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RtgError {
    /// The edge list was empty; an RTG must mention at least one register.
    Empty,
    /// The same edge was listed twice.
    DuplicateEdge(Edge),
    /// A register was the target of two or more transfers.
    InDegree(RegId),
    /// An operation that requires out-degree at most one saw this vertex
    /// violating it.
    NotOutdegreeOne(RegId),
}

impl fmt::Display for RtgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RtgError::Empty => write!(f, "no edges: an RTG must mention at least one register"),
            RtgError::DuplicateEdge((u, v)) => write!(f, "duplicate edge {u} -> {v}"),
            RtgError::InDegree(v) => write!(f, "register {v} receives more than one value"),
            RtgError::NotOutdegreeOne(v) => {
                write!(f, "register {v} is read more than once (out-degree > 1)")
            }
        }
    }
}

impl std::error::Error for RtgError {}

/// A validated register transfer graph.
///
/// The vertex set is exactly the set of edge endpoints; isolated registers
/// cannot be expressed and are rejected wherever they could arise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rtg {
    verts: Vec<RegId>,
    edges: Vec<Edge>,
    /// Dense out-adjacency: `out[i]` lists dense indices, ascending.
    out: Vec<Vec<u32>>,
    /// Dense in-adjacency: the unique source feeding each vertex, if any.
    pred: Vec<Option<u32>>,
}

impl Rtg {
    /// Builds an RTG from an edge list, validating the in-degree invariant.
    pub fn from_edges<I>(edges: I) -> Result<Self, RtgError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        if edges.is_empty() {
            return Err(RtgError::Empty);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(RtgError::DuplicateEdge(w[0]));
            }
        }
        let mut targets = BTreeSet::new();
        for &(_, dst) in &edges {
            if !targets.insert(dst) {
                return Err(RtgError::InDegree(dst));
            }
        }

        let mut verts: Vec<RegId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();

        let idx = |r: RegId| verts.binary_search(&r).expect("endpoint is a vertex") as u32;
        let mut out = vec![Vec::new(); verts.len()];
        let mut pred = vec![None; verts.len()];
        for &(u, v) in &edges {
            let (ui, vi) = (idx(u), idx(v));
            out[ui as usize].push(vi);
            pred[vi as usize] = Some(ui);
        }
        // `edges` is sorted, so each adjacency list is already ascending.
        Ok(Rtg { verts, edges, out, pred })
    }

    /// The registers mentioned by the graph, ascending.
    pub fn vertices(&self) -> &[RegId] {
        &self.verts
    }

    /// All edges, sorted by `(src, dst)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: RegId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    fn idx(&self, v: RegId) -> usize {
        self.verts.binary_search(&v).unwrap_or_else(|_| panic!("register {v} is not in the graph"))
    }

    /// Number of transfers reading `v`.
    ///
    /// Panics if `v` is not a vertex.
    pub fn out_degree(&self, v: RegId) -> usize {
        self.out[self.idx(v)].len()
    }

    /// The registers receiving `v`'s value, ascending.
    ///
    /// Panics if `v` is not a vertex.
    pub fn out_targets(&self, v: RegId) -> Vec<RegId> {
        self.out[self.idx(v)].iter().map(|&i| self.verts[i as usize]).collect()
    }

    /// The register whose value `v` must receive, if any.
    ///
    /// Panics if `v` is not a vertex.
    pub fn in_source(&self, v: RegId) -> Option<RegId> {
        self.pred[self.idx(v)].map(|i| self.verts[i as usize])
    }

    /// True if every register is read at most once.
    pub fn is_outdegree_one(&self) -> bool {
        self.out.iter().all(|o| o.len() <= 1)
    }

    /// True if in- and out-degree are exactly one everywhere (a permutation).
    pub fn is_prtg(&self) -> bool {
        self.out.iter().all(|o| o.len() == 1) && self.pred.iter().all(|p| p.is_some())
    }

    /// True if the graph consists of self-loops only.
    pub fn is_trivial(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u == v)
    }

    /// Number of `copy` instructions any shuffle code for this graph needs:
    /// one for every extra read of a register beyond the first.
    pub fn copy_count(&self) -> usize {
        self.out.iter().map(|o| o.len().saturating_sub(1)).sum()
    }

    /// The graph with the given edges removed. Registers left without any
    /// incident edge drop out of the vertex set.
    pub fn without_edges(&self, cut: &[Edge]) -> Result<Rtg, RtgError> {
        let cut: BTreeSet<Edge> = cut.iter().copied().collect();
        Rtg::from_edges(self.edges.iter().copied().filter(|e| !cut.contains(e)))
    }

    /// The graph after a permutation has moved register contents around: an
    /// edge `(u, v)` becomes `(pi(u), v)`, since the value `v` is waiting for
    /// now lives in `pi(u)`.
    ///
    /// Targets are untouched, so the in-degree invariant is preserved.
    pub fn permute(&self, pi: &Permutation) -> Rtg {
        Rtg::from_edges(self.edges.iter().map(|&(u, v)| (pi.apply(u), v)))
            .expect("permuting register contents preserves RTG invariants")
    }

    /// Splits the graph into weakly-connected components, ordered by their
    /// smallest register id.
    ///
    /// Because in-degrees are at most one, a component with `k` vertices has
    /// either `k - 1` edges (a tree, rooted at its unique in-degree-0 vertex)
    /// or `k` edges (exactly one directed cycle). For outdegree-1 graphs the
    /// finer path/cycle/self-loop classification is reported instead.
    pub fn decompose(&self) -> Vec<ComponentKind> {
        let refine = self.is_outdegree_one();
        self.component_indices().into_iter().map(|comp| self.classify(&comp, refine)).collect()
    }

    /// Dense vertex indices of each weak component, in ascending-min order.
    fn component_indices(&self) -> Vec<Vec<u32>> {
        let n = self.verts.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                let mut visit = |j: u32| {
                    if !seen[j as usize] {
                        seen[j as usize] = true;
                        stack.push(j);
                    }
                };
                for &j in &self.out[i as usize] {
                    visit(j);
                }
                if let Some(j) = self.pred[i as usize] {
                    visit(j);
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The weakly-connected components as register-id lists, ascending.
    pub fn components(&self) -> Vec<Vec<RegId>> {
        self.component_indices()
            .into_iter()
            .map(|comp| comp.into_iter().map(|i| self.verts[i as usize]).collect())
            .collect()
    }

    /// The subgraph induced by one weak component's registers.
    ///
    /// Panics if `verts` splits an edge (i.e. is not a union of components).
    pub fn component_subgraph(&self, verts: &[RegId]) -> Rtg {
        let set: BTreeSet<RegId> = verts.iter().copied().collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let inside = set.contains(&u);
                assert_eq!(
                    inside,
                    set.contains(&v),
                    "edge {u} -> {v} crosses the requested vertex set"
                );
                inside
            })
            .collect();
        Rtg::from_edges(edges).expect("a component is a valid RTG")
    }

    fn classify(&self, comp: &[u32], refine: bool) -> ComponentKind {
        let edge_count: usize = comp.iter().map(|&i| self.out[i as usize].len()).sum();
        let reg = |i: u32| self.verts[i as usize];
        if edge_count == comp.len() - 1 {
            let root = comp
                .iter()
                .copied()
                .find(|&i| self.pred[i as usize].is_none())
                .expect("a tree component has an in-degree-0 root");
            if refine {
                // With out-degrees at most one a tree is a path; walk it.
                let mut path = vec![reg(root)];
                let mut cur = root;
                while let [next] = self.out[cur as usize][..] {
                    path.push(reg(next));
                    cur = next;
                }
                ComponentKind::Path { vertices: path }
            } else {
                ComponentKind::Tree { root: reg(root) }
            }
        } else {
            let cycle: Vec<RegId> = self.cycle_of(comp).iter().map(|&i| reg(i)).collect();
            if refine {
                match cycle[..] {
                    [vertex] => ComponentKind::TrivialLoop { vertex },
                    _ => ComponentKind::Cycle { vertices: cycle },
                }
            } else {
                ComponentKind::Unicyclic { cycle }
            }
        }
    }

    /// The unique directed cycle of a unicyclic component, in edge order,
    /// starting from its smallest register.
    fn cycle_of(&self, comp: &[u32]) -> Vec<u32> {
        // Every vertex here has in-degree one, so walking predecessors from
        // anywhere must eventually repeat; the repeat point is on the cycle.
        let mut seen = BTreeSet::new();
        let mut cur = comp[0];
        while seen.insert(cur) {
            cur = self.pred[cur as usize].expect("unicyclic component has in-degree 1");
        }
        let mut cycle = vec![cur];
        let mut back = self.pred[cur as usize].unwrap();
        while back != cur {
            cycle.push(back);
            back = self.pred[back as usize].unwrap();
        }
        // Predecessor order is against the edges; flip and start at the min.
        cycle.reverse();
        let min_pos = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(p, _)| p).unwrap();
        cycle.rotate_left(min_pos);
        cycle
    }

    /// The signature of an outdegree-1 graph.
    pub fn signature(&self) -> Result<Signature, RtgError> {
        if let Some(&v) = self.verts.iter().find(|&&v| self.out_degree(v) > 1) {
            return Err(RtgError::NotOutdegreeOne(v));
        }
        let mut sig = Signature::default();
        for kind in self.decompose() {
            let size = match kind {
                ComponentKind::TrivialLoop { .. } => 1,
                ComponentKind::Path { vertices } | ComponentKind::Cycle { vertices } => {
                    vertices.len()
                }
                ComponentKind::Tree { .. } | ComponentKind::Unicyclic { .. } => {
                    unreachable!("outdegree-1 graphs refine to paths/cycles/loops")
                }
            };
            sig.add_component(size);
        }
        Ok(sig)
    }
}

/// One weakly-connected component of an RTG.
///
/// The coarse tree/unicyclic split applies to general graphs; outdegree-1
/// graphs report the finer path/cycle/self-loop shape. Cycle vertex lists
/// follow edge direction and start at the smallest register id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// `k` vertices, `k - 1` edges; `root` is the unique in-degree-0 vertex.
    Tree { root: RegId },
    /// `k` vertices, `k` edges: exactly one directed cycle (possibly a
    /// self-loop) with trees hanging off it.
    Unicyclic { cycle: Vec<RegId> },
    /// A single register that keeps its own value.
    TrivialLoop { vertex: RegId },
    /// A maximal directed path (outdegree-1 graphs only).
    Path { vertices: Vec<RegId> },
    /// A directed cycle of length at least two (outdegree-1 graphs only).
    Cycle { vertices: Vec<RegId> },
}

/// What the cost analysis keeps of an outdegree-1 RTG.
///
/// Over the path and cycle components (a path of size `s` counts like the
/// size-`s` cycle it will be completed into):
///
/// * `x` — total of `size / 4` per component: the number of full
///   five-register rotations the greedy scheduler will spend,
/// * `a2`, `a3` — number of components of size 2 resp. 3 (mod 4).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub x: u32,
    pub a2: u32,
    pub a3: u32,
}

impl Signature {
    pub fn new(x: u32, a2: u32, a3: u32) -> Self {
        Signature { x, a2, a3 }
    }

    /// Accounts one path or cycle component of the given vertex count.
    pub fn add_component(&mut self, size: usize) {
        self.x += (size / 4) as u32;
        match size % 4 {
            2 => self.a2 += 1,
            3 => self.a3 += 1,
            _ => {}
        }
    }

    /// Surplus of 2-components over 3-components; the dynamic program's
    /// table index.
    pub fn diff(&self) -> i64 {
        i64::from(self.a2) - i64::from(self.a3)
    }
}

/// Componentwise signature change `after - before` of a transformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignatureDelta {
    pub x: i64,
    pub a2: i64,
    pub a3: i64,
}

/// The signature movement caused by going from `before` to `after`.
pub fn signature_delta(before: &Signature, after: &Signature) -> SignatureDelta {
    SignatureDelta {
        x: i64::from(after.x) - i64::from(before.x),
        a2: i64::from(after.a2) - i64::from(before.a2),
        a3: i64::from(after.a3) - i64::from(before.a3),
    }
}

/// Errors raised when building a [`Permutation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermutationError {
    /// A register appeared twice in a cycle, or a mapping was not bijective.
    NotBijective(RegId),
}

impl fmt::Display for PermutationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PermutationError::NotBijective(r) => {
                write!(f, "register {r} breaks the bijection")
            }
        }
    }
}

impl std::error::Error for PermutationError {}

/// A finitely-supported bijection on register ids: where each register's
/// value travels. Registers outside the support are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Permutation {
    moved: BTreeMap<RegId, RegId>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// The rotation sending `cycle[i]`'s value to `cycle[i + 1]` (wrapping).
    /// Cycles shorter than two registers denote the identity.
    pub fn from_cycle(cycle: &[RegId]) -> Result<Self, PermutationError> {
        let mut moved = BTreeMap::new();
        if cycle.len() >= 2 {
            for (i, &r) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                if moved.insert(r, to).is_some() {
                    return Err(PermutationError::NotBijective(r));
                }
            }
        }
        Ok(Permutation { moved })
    }

    /// An explicit mapping; must be a bijection of its domain onto itself.
    pub fn from_mapping<I>(pairs: I) -> Result<Self, PermutationError>
    where
        I: IntoIterator<Item = (RegId, RegId)>,
    {
        let mut moved = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (from, to) in pairs {
            if moved.insert(from, to).is_some() {
                return Err(PermutationError::NotBijective(from));
            }
            if !images.insert(to) {
                return Err(PermutationError::NotBijective(to));
            }
        }
        if let Some(&r) = moved.keys().find(|r| !images.contains(r)) {
            return Err(PermutationError::NotBijective(r));
        }
        moved.retain(|from, to| from != to);
        Ok(Permutation { moved })
    }

    /// Where `r`'s value ends up.
    pub fn apply(&self, r: RegId) -> RegId {
        self.moved.get(&r).copied().unwrap_or(r)
    }

    /// The permutation performing `self` first and `next` afterwards.
    pub fn then(&self, next: &Permutation) -> Permutation {
        let mut moved = BTreeMap::new();
        for &r in self.moved.keys().chain(next.moved.keys()) {
            let to = next.apply(self.apply(r));
            if to != r {
                moved.insert(r, to);
            }
        }
        Permutation { moved }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// The non-fixed points as `(from, to)` pairs, ascending by `from`.
    pub fn support(&self) -> impl Iterator<Item = (RegId, RegId)> + '_ {
        self.moved.iter().map(|(&f, &t)| (f, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rtg(edges: &[Edge]) -> Rtg {
        Rtg::from_edges(edges.iter().copied()).expect("test graph is valid")
    }

    fn sample_fork_and_cycle() -> Rtg {
        // Register 1 feeds both 2 and 3; 4, 5, 6 rotate.
        rtg(&[(1, 2), (1, 3), (4, 5), (5, 6), (6, 4)])
    }

    #[test]
    fn build_accepts_forks_and_sparse_ids() {
        let g = rtg(&[(1, 2), (1, 3)]);
        assert_eq!(g.vertices(), &[1, 2, 3]);
        assert_eq!(g.out_degree(1), 2);

        let sparse = rtg(&[(2, 7), (7, 941)]);
        assert_eq!(sparse.vertices(), &[2, 7, 941]);
        assert_eq!(sparse.in_source(941), Some(7));
        assert_eq!(sparse.in_source(2), None);
    }

    #[test]
    fn build_rejects_invalid_inputs() {
        assert_eq!(Rtg::from_edges([]), Err(RtgError::Empty));
        assert_eq!(Rtg::from_edges([(1, 2), (3, 2)]), Err(RtgError::InDegree(2)));
        assert_eq!(Rtg::from_edges([(1, 2), (1, 2)]), Err(RtgError::DuplicateEdge((1, 2))));
    }

    #[test]
    fn loops_are_valid() {
        let g = rtg(&[(1, 1)]);
        assert!(g.is_trivial());
        assert!(g.is_prtg());
        assert_eq!(g.decompose(), vec![ComponentKind::TrivialLoop { vertex: 1 }]);
    }

    #[test]
    fn decompose_general_graph() {
        let g = sample_fork_and_cycle();
        assert!(!g.is_outdegree_one());
        assert_eq!(
            g.decompose(),
            vec![
                ComponentKind::Tree { root: 1 },
                ComponentKind::Unicyclic { cycle: vec![4, 5, 6] },
            ]
        );
        assert_eq!(g.copy_count(), 1);
    }

    #[test]
    fn decompose_outdegree_one_graph() {
        let g = rtg(&[(1, 2), (2, 1), (5, 5), (7, 8)]);
        assert_eq!(
            g.decompose(),
            vec![
                ComponentKind::Cycle { vertices: vec![1, 2] },
                ComponentKind::TrivialLoop { vertex: 5 },
                ComponentKind::Path { vertices: vec![7, 8] },
            ]
        );
    }

    #[test]
    fn cycle_lists_follow_edges_from_min_id() {
        let g = rtg(&[(9, 4), (4, 7), (7, 9)]);
        assert_eq!(g.decompose(), vec![ComponentKind::Cycle { vertices: vec![4, 7, 9] }]);
    }

    #[test]
    fn unicyclic_detects_loop_with_hanging_tree() {
        let g = rtg(&[(1, 1), (1, 2), (1, 3)]);
        assert_eq!(g.decompose(), vec![ComponentKind::Unicyclic { cycle: vec![1] }]);
        assert_eq!(g.copy_count(), 2);
    }

    #[test]
    fn signature_counts_components_mod_four() {
        let five_cycle = rtg(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert_eq!(five_cycle.signature().unwrap(), Signature::new(1, 0, 0));

        let two_and_three = rtg(&[(1, 2), (2, 1), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(two_and_three.signature().unwrap(), Signature::new(0, 1, 1));
        assert_eq!(two_and_three.signature().unwrap().diff(), 0);

        let trivial = rtg(&[(1, 1), (2, 2)]);
        assert_eq!(trivial.signature().unwrap(), Signature::new(0, 0, 0));

        // Paths count by vertices: six of them land in the 2 (mod 4) bucket.
        let path6 = rtg(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
        assert_eq!(path6.signature().unwrap(), Signature::new(1, 1, 0));
    }

    #[test]
    fn signature_requires_outdegree_one() {
        assert_eq!(sample_fork_and_cycle().signature(), Err(RtgError::NotOutdegreeOne(1)));
    }

    #[test]
    fn copy_count_totals_extra_reads() {
        assert_eq!(sample_fork_and_cycle().copy_count(), 1);
        assert_eq!(rtg(&[(1, 2), (1, 3), (1, 4), (2, 5)]).copy_count(), 2);
        assert_eq!(rtg(&[(1, 2), (2, 3)]).copy_count(), 0);
    }

    #[test]
    fn permute_moves_edge_sources() {
        let g = rtg(&[(1, 2), (1, 3)]);
        let swap = Permutation::from_cycle(&[1, 2]).unwrap();
        let h = g.permute(&swap);
        // Register 1's value now sits in 2, so both transfers read 2;
        // register 1 carries nothing anyone cares about and drops out.
        assert_eq!(h.edges(), &[(2, 2), (2, 3)]);
    }

    #[test]
    fn permute_merges_cycles_via_transposition() {
        let g = rtg(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 7), (7, 8), (8, 6)]);
        let tau = Permutation::from_cycle(&[5, 8]).unwrap();
        let merged = g.permute(&tau);
        assert_eq!(
            merged.decompose(),
            vec![ComponentKind::Cycle { vertices: vec![1, 2, 3, 4, 5, 6, 7, 8] }]
        );
        assert_eq!(merged.signature().unwrap(), Signature::new(2, 0, 0));
    }

    #[test]
    fn permute_is_a_group_action() {
        let g = rtg(&[(1, 2), (2, 3), (3, 1), (4, 4), (5, 6)]);
        let p1 = Permutation::from_cycle(&[1, 4, 6]).unwrap();
        let p2 = Permutation::from_cycle(&[2, 5]).unwrap();
        let composed = p1.then(&p2);
        assert_eq!(g.permute(&p1).permute(&p2), g.permute(&composed));
    }

    #[test]
    fn permute_preserves_out_degree_multiset_and_copy_count() {
        let g = sample_fork_and_cycle();
        let pi = Permutation::from_cycle(&[1, 4, 2]).unwrap();
        let h = g.permute(&pi);
        let degrees = |g: &Rtg| {
            let mut d: Vec<usize> = g.vertices().iter().map(|&v| g.out_degree(v)).collect();
            d.retain(|&x| x > 0);
            d.sort_unstable();
            d
        };
        assert_eq!(degrees(&g), degrees(&h));
        assert_eq!(g.copy_count(), h.copy_count());
    }

    #[test]
    fn signature_delta_is_after_minus_before() {
        let before = Signature::new(0, 1, 0);
        let after = Signature::new(0, 0, 1);
        let d = signature_delta(&before, &after);
        assert_eq!((d.x, d.a2, d.a3), (0, -1, 1));
    }

    #[test]
    fn signature_is_relabeling_invariant() {
        let g = rtg(&[(1, 2), (2, 3), (3, 1), (4, 5)]);
        let relabeled = rtg(&[(11, 12), (12, 13), (13, 11), (24, 25)]);
        assert_eq!(g.signature().unwrap(), relabeled.signature().unwrap());
    }

    #[test]
    fn permutation_rejects_repeats_and_broken_mappings() {
        assert!(Permutation::from_cycle(&[1, 2, 1]).is_err());
        assert!(Permutation::from_mapping([(1, 2), (2, 2)]).is_err());
        assert!(Permutation::from_mapping([(1, 2)]).is_err());
        let ok = Permutation::from_mapping([(1, 2), (2, 1), (3, 3)]).unwrap();
        assert_eq!(ok.apply(3), 3);
        assert_eq!(ok.apply(1), 2);
    }

    #[test]
    fn component_subgraph_extracts_components() {
        let g = sample_fork_and_cycle();
        let comps = g.components();
        assert_eq!(comps, vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let cyc = g.component_subgraph(&comps[1]);
        assert_eq!(cyc.edges(), &[(4, 5), (5, 6), (6, 4)]);
    }
}
