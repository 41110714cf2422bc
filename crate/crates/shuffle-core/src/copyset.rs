//! Choosing which transfers become copies: cost tables and the dynamic
//! program behind them.
//!
//! A *copy set* `C` of an RTG picks, for every register read `k > 1` times,
//! all but one of its outgoing transfers; those become `copy` instructions
//! and the remainder `G - C` is an outdegree-1 graph the greedy scheduler
//! finishes. Every copy set has the same size, so the interesting question
//! is which residual graph is cheapest.
//!
//! The greedy cost of a residual signature `(x, a2, a3)` is the ceiling of
//! one of two linear forms, depending on whether 2- or 3-components
//! dominate:
//!
//! * `cost1 = x + a2/2 + a3/2`   (used when `a2 >= a3`),
//! * `cost2 = x + a2/3 + 2*a3/3` (used when `a2 < a3`).
//!
//! Both are kept in exact sixths so the tables are integer-valued and
//! platform-independent. For each linear form, the table of a graph maps
//! `d = a2 - a3` of the residual to the cheapest achievable value; the final
//! answer combines the `d >= 0` half of the `cost1` table with the `d < 0`
//! half of the `cost2` table.
//!
//! Tables are built per weakly-connected component:
//!
//! * a tree is processed bottom-up; each vertex keeps a table indexed by
//!   `(d, s)` where `s` is the size (mod 4) of the root's path in the
//!   residual, because attaching one more vertex changes cost and `d` by a
//!   periodic correction term that depends only on that size class;
//! * a component with a cycle either keeps the whole cycle (cutting all
//!   other transfers leaving cycle registers) or breaks it at one of the
//!   cycle edges whose source is read twice, turning it into a tree;
//! * disjoint pieces combine by min-plus convolution.
//!
//! Every table entry carries a backtracking tag, so the optimal copy set
//! itself — not just its cost — can be reconstructed.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::rtg::{ComponentKind, Edge, RegId, Rtg, Signature};

/// Exact table values: integer numerators over a fixed denominator of six.
pub type Sixths = i64;

/// The transfers a synthesis run realizes with `copy` instructions, sorted.
pub type CopySet = Vec<Edge>;

/// A linear function of signatures, with coefficients in sixths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearCost {
    pub x: Sixths,
    pub a2: Sixths,
    pub a3: Sixths,
}

impl LinearCost {
    /// `x + a2/2 + a3/2`: greedy cost when 2-components dominate.
    pub const COST1: LinearCost = LinearCost { x: 6, a2: 3, a3: 3 };
    /// `x + a2/3 + 2*a3/3`: greedy cost when 3-components dominate.
    pub const COST2: LinearCost = LinearCost { x: 6, a2: 2, a3: 4 };
    /// `a2 - a3`: the table index itself.
    pub const DIFF: LinearCost = LinearCost { x: 0, a2: 6, a3: -6 };

    pub fn eval(&self, sig: &Signature) -> Sixths {
        self.x * Sixths::from(sig.x)
            + self.a2 * Sixths::from(sig.a2)
            + self.a3 * Sixths::from(sig.a3)
    }
}

/// Signature of a path (or cycle) on `m` vertices.
fn path_signature(m: usize) -> Signature {
    let mut sig = Signature::default();
    sig.add_component(m);
    sig
}

/// How `f` changes when a component grows from size `s` to `s + 1`;
/// periodic in `s` with period four.
pub fn correction_term(f: &LinearCost, s: usize) -> Sixths {
    let s = s % 4;
    f.eval(&path_signature(s + 1)) - f.eval(&path_signature(s))
}

/// A table entry's provenance: transfers cut at this step plus the entries
/// it was combined from. Sharing keeps reconstruction cheap.
#[derive(Debug)]
struct Choice {
    cut: Vec<Edge>,
    parents: Vec<Rc<Choice>>,
}

impl Choice {
    fn empty() -> Rc<Choice> {
        Rc::new(Choice { cut: Vec::new(), parents: Vec::new() })
    }

    fn collect(self: &Rc<Choice>, out: &mut Vec<Edge>) {
        out.extend(self.cut.iter().copied());
        for p in &self.parents {
            p.collect(out);
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    cost: Sixths,
    choice: Rc<Choice>,
}

/// Cheapest cost value per residual difference `d = a2 - a3`, for one graph
/// and one linear form. Missing entries mean no copy set reaches that `d`.
#[derive(Clone, Debug)]
pub struct CostTable {
    radius: i64,
    slots: Vec<Option<Entry>>,
}

impl CostTable {
    fn empty(radius: i64) -> Self {
        assert!(radius >= 0);
        CostTable { radius, slots: vec![None; 2 * radius as usize + 1] }
    }

    /// The table of the empty graph: the only copy set is `{}`, at `d = 0`
    /// and cost zero. Neutral element of [`combine_disjoint`].
    pub fn unit() -> Self {
        let mut t = CostTable::empty(0);
        t.slots[0] = Some(Entry { cost: 0, choice: Choice::empty() });
        t
    }

    /// Table spanning `[-radius, radius]` with a single finite entry.
    fn singleton(radius: i64, d: i64, cost: Sixths, choice: Rc<Choice>) -> Self {
        let mut t = CostTable::empty(radius);
        let i = t.index(d).expect("singleton entry within radius");
        t.slots[i] = Some(Entry { cost, choice });
        t
    }

    fn index(&self, d: i64) -> Option<usize> {
        (-self.radius..=self.radius).contains(&d).then(|| (d + self.radius) as usize)
    }

    /// Largest `|d|` the table can represent (the subgraph's vertex count).
    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// The value at `d`, if any copy set realizes that difference.
    pub fn value(&self, d: i64) -> Option<Sixths> {
        self.slots[self.index(d)?].as_ref().map(|e| e.cost)
    }

    /// The copy set behind the entry at `d`, sorted.
    pub fn copy_set(&self, d: i64) -> Option<CopySet> {
        let entry = self.slots[self.index(d)?].as_ref()?;
        let mut edges = Vec::new();
        entry.choice.collect(&mut edges);
        edges.sort_unstable();
        Some(edges)
    }

    /// All finite entries as `(d, value)`, ascending in `d`.
    pub fn finite(&self) -> Vec<(i64, Sixths)> {
        self.entries().map(|(d, e)| (d, e.cost)).collect()
    }

    fn entries(&self) -> impl Iterator<Item = (i64, &Entry)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(move |(i, slot)| slot.as_ref().map(|e| (i as i64 - self.radius, e)))
    }

    /// Keeps the first strict minimum per slot; later candidates only win by
    /// being cheaper, so scan order decides ties.
    fn relax(&mut self, d: i64, cost: Sixths, choice: impl FnOnce() -> Rc<Choice>) {
        let i = self
            .index(d)
            .unwrap_or_else(|| panic!("difference {d} outside table radius {}", self.radius));
        let better = match &self.slots[i] {
            Some(e) => cost < e.cost,
            None => true,
        };
        if better {
            self.slots[i] = Some(Entry { cost, choice: choice() });
        }
    }

    /// True if both tables hold the same finite values (provenance ignored).
    pub fn values_eq(&self, other: &CostTable) -> bool {
        let r = self.radius.max(other.radius);
        (-r..=r).all(|d| {
            let a = self.index(d).and_then(|i| self.slots[i].as_ref().map(|e| e.cost));
            let b = other.index(d).and_then(|i| other.slots[i].as_ref().map(|e| e.cost));
            a == b
        })
    }
}

/// Min-plus convolution: the table of a disjoint union, every entry the
/// cheapest split of `d` across the two halves.
pub fn combine_disjoint(a: &CostTable, b: &CostTable) -> CostTable {
    let mut out = CostTable::empty(a.radius + b.radius);
    for (da, ea) in a.entries() {
        for (db, eb) in b.entries() {
            out.relax(da + db, ea.cost + eb.cost, || {
                Rc::new(Choice {
                    cut: Vec::new(),
                    parents: vec![ea.choice.clone(), eb.choice.clone()],
                })
            });
        }
    }
    out
}

/// Per-vertex tree table: entries are indexed by the residual difference
/// `d` and the size class `s` (mod 4) of the path through the subtree's
/// root. The class is what the parent needs to apply its correction terms.
#[derive(Clone, Debug)]
pub struct RootedCostTable {
    radius: i64,
    slots: Vec<[Option<Entry>; 4]>,
}

impl RootedCostTable {
    fn empty(radius: i64) -> Self {
        assert!(radius >= 0);
        RootedCostTable { radius, slots: vec![[None, None, None, None]; 2 * radius as usize + 1] }
    }

    fn index(&self, d: i64) -> Option<usize> {
        (-self.radius..=self.radius).contains(&d).then(|| (d + self.radius) as usize)
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn value(&self, d: i64, s: usize) -> Option<Sixths> {
        self.slots[self.index(d)?][s % 4].as_ref().map(|e| e.cost)
    }

    pub fn copy_set(&self, d: i64, s: usize) -> Option<CopySet> {
        let entry = self.slots[self.index(d)?][s % 4].as_ref()?;
        let mut edges = Vec::new();
        entry.choice.collect(&mut edges);
        edges.sort_unstable();
        Some(edges)
    }

    fn relax(&mut self, d: i64, s: usize, cost: Sixths, choice: impl FnOnce() -> Rc<Choice>) {
        let i = self
            .index(d)
            .unwrap_or_else(|| panic!("difference {d} outside table radius {}", self.radius));
        let better = match &self.slots[i][s] {
            Some(e) => cost < e.cost,
            None => true,
        };
        if better {
            self.slots[i][s] = Some(Entry { cost, choice: choice() });
        }
    }

    /// Forgets the root path class: the component table of the subtree.
    /// Ties go to the smallest class.
    pub fn project(&self) -> CostTable {
        let mut out = CostTable::empty(self.radius);
        for (i, slot) in self.slots.iter().enumerate() {
            let d = i as i64 - self.radius;
            for entry in slot.iter().flatten() {
                out.relax(d, entry.cost, || entry.choice.clone());
            }
        }
        out
    }
}

/// Table of a single register with no transfers: the root path is just the
/// vertex itself (class 1), nothing is cut, nothing costs anything.
pub fn table_leaf(_v: RegId) -> RootedCostTable {
    let mut t = RootedCostTable::empty(1);
    t.slots[1][1] = Some(Entry { cost: 0, choice: Choice::empty() });
    t
}

/// Builds the rooted table of a tree RTG bottom-up.
///
/// At an inner vertex exactly one child edge stays (extending the root
/// path); all sibling edges are cut and their subtrees contribute as
/// disjoint pieces. Growing the kept child's root path by one vertex shifts
/// `d` and the cost by the correction terms of the child's size class.
///
/// Panics if `g` is not a tree rooted at `root`.
pub fn table_tree(g: &Rtg, root: RegId, cost: &LinearCost) -> RootedCostTable {
    assert_eq!(g.edge_count() + 1, g.vertex_count(), "tree tables need a tree-shaped component");
    assert_eq!(g.in_source(root), None, "the root cannot receive a value");

    // Children precede parents in postorder; tables index by vertex.
    let mut order: Vec<RegId> = Vec::with_capacity(g.vertex_count());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(g.out_targets(v));
    }
    order.reverse();

    let vertex_slot =
        |v: RegId| g.vertices().binary_search(&v).expect("tree vertices are graph vertices");
    let mut tables: Vec<Option<RootedCostTable>> = vec![None; g.vertex_count()];

    for &v in &order {
        let children = g.out_targets(v);
        if children.is_empty() {
            tables[vertex_slot(v)] = Some(table_leaf(v));
            continue;
        }
        let child_radius: Vec<i64> =
            children.iter().map(|&c| tables[vertex_slot(c)].as_ref().unwrap().radius()).collect();
        let size = 1 + child_radius.iter().sum::<i64>();
        let mut rooted = RootedCostTable::empty(size);

        for (j, &kept) in children.iter().enumerate() {
            // Everything except the kept edge is cut; the siblings' own
            // tables convolve into one piece.
            let mut fold = CostTable::unit();
            let mut cut = Vec::new();
            for (i, &c) in children.iter().enumerate() {
                if i == j {
                    continue;
                }
                fold = combine_disjoint(&fold, &tables[vertex_slot(c)].as_ref().unwrap().project());
                cut.push((v, c));
            }
            let cut = Rc::new(Choice { cut, parents: Vec::new() });
            let child = tables[vertex_slot(kept)].as_ref().unwrap();

            for s_new in 0..4 {
                // The kept child's root path had class s_new - 1 and gains v.
                let s_child = (s_new + 3) % 4;
                let d_shift = correction_term(&LinearCost::DIFF, s_child) / 6;
                let cost_shift = correction_term(cost, s_child);
                for (df, ef) in fold.entries() {
                    for i in 0..child.slots.len() {
                        let Some(ec) = &child.slots[i][s_child] else { continue };
                        let dc = i as i64 - child.radius;
                        rooted.relax(
                            df + dc + d_shift,
                            s_new,
                            ef.cost + ec.cost + cost_shift,
                            || {
                                Rc::new(Choice {
                                    cut: Vec::new(),
                                    parents: vec![
                                        cut.clone(),
                                        ef.choice.clone(),
                                        ec.choice.clone(),
                                    ],
                                })
                            },
                        );
                    }
                }
            }
        }
        tables[vertex_slot(v)] = Some(rooted);
    }
    tables[vertex_slot(root)].take().unwrap()
}

/// Builds the component table of a unicyclic RTG (one directed cycle, trees
/// hanging off it; a self-loop counts as a one-vertex cycle).
///
/// A copy set either contains no cycle edge — then every non-cycle transfer
/// leaving a cycle register is cut and the cycle survives whole — or it cuts
/// some cycle edge whose source is read at least twice, turning the
/// component into a tree rooted at that edge's target.
pub fn table_unicyclic(g: &Rtg, cost: &LinearCost) -> CostTable {
    let kinds = g.decompose();
    assert_eq!(kinds.len(), 1, "unicyclic tables need a single component");
    let cycle: Vec<RegId> = match kinds.into_iter().next().unwrap() {
        ComponentKind::Unicyclic { cycle } => cycle,
        ComponentKind::Cycle { vertices } => vertices,
        ComponentKind::TrivialLoop { vertex } => vec![vertex],
        ComponentKind::Tree { .. } | ComponentKind::Path { .. } => {
            panic!("component has no cycle")
        }
    };
    let n = g.vertex_count() as i64;
    let on_cycle: BTreeSet<RegId> = cycle.iter().copied().collect();
    let cycle_edges: Vec<Edge> =
        (0..cycle.len()).map(|i| (cycle[i], cycle[(i + 1) % cycle.len()])).collect();

    let mut out = CostTable::empty(n);

    // Keep-the-cycle branch: cut all transfers leaving the cycle sideways;
    // each one releases a pendant subtree as a disjoint piece.
    let mut side: Vec<Edge> = Vec::new();
    for &v in &cycle {
        for t in g.out_targets(v) {
            let e = (v, t);
            if !cycle_edges.contains(&e) {
                side.push(e);
            }
        }
    }
    side.sort_unstable();
    let cycle_sig = path_signature(cycle.len());
    let mut fold = CostTable::singleton(
        cycle.len() as i64,
        cycle_sig.diff(),
        cost.eval(&cycle_sig),
        Choice::empty(),
    );
    for &(_, w) in &side {
        fold = combine_disjoint(&fold, &pendant_table(g, w, &on_cycle, cost));
    }
    let side_cut = Rc::new(Choice { cut: side, parents: Vec::new() });
    for (d, e) in fold.entries() {
        out.relax(d, e.cost, || {
            Rc::new(Choice { cut: Vec::new(), parents: vec![side_cut.clone(), e.choice.clone()] })
        });
    }

    // Break-the-cycle branches, in cycle order: removing (u, w) is only a
    // copy-set move if u is read at least twice.
    for &(u, w) in &cycle_edges {
        if g.out_degree(u) < 2 {
            continue;
        }
        let tree = g.without_edges(&[(u, w)]).expect("cycle break keeps all vertices");
        let table = table_tree(&tree, w, cost).project();
        let break_cut = Rc::new(Choice { cut: vec![(u, w)], parents: Vec::new() });
        for (d, e) in table.entries() {
            out.relax(d, e.cost, || {
                Rc::new(Choice {
                    cut: Vec::new(),
                    parents: vec![break_cut.clone(), e.choice.clone()],
                })
            });
        }
    }
    out
}

/// Table of the subtree hanging below `w` once its inbound transfer from
/// the cycle is cut. A bare register contributes the unit-like table of a
/// single vertex.
fn pendant_table(g: &Rtg, w: RegId, on_cycle: &BTreeSet<RegId>, cost: &LinearCost) -> CostTable {
    debug_assert!(!on_cycle.contains(&w), "pendants hang off the cycle");
    let mut edges = Vec::new();
    let mut stack = vec![w];
    while let Some(v) = stack.pop() {
        for t in g.out_targets(v) {
            edges.push((v, t));
            stack.push(t);
        }
    }
    if edges.is_empty() {
        return CostTable::singleton(1, 0, 0, Choice::empty());
    }
    let sub = Rtg::from_edges(edges).expect("a pendant subtree is a valid RTG");
    table_tree(&sub, w, cost).project()
}

/// The full table of an arbitrary RTG: per-component tables (trees via the
/// rooted program, anything with a cycle via the two-branch split) folded
/// together by convolution, components in ascending-minimum order.
pub fn table_for_graph(g: &Rtg, cost: &LinearCost) -> CostTable {
    let mut result = CostTable::unit();
    for verts in g.components() {
        let comp = g.component_subgraph(&verts);
        let table = if comp.edge_count() + 1 == comp.vertex_count() {
            let root = verts
                .iter()
                .copied()
                .find(|&v| comp.in_source(v).is_none())
                .expect("a tree component has a root");
            table_tree(&comp, root, cost).project()
        } else {
            table_unicyclic(&comp, cost)
        };
        result = combine_disjoint(&result, &table);
    }
    result
}

/// The cheapest copy set of `g` and the total shuffle-code length it leads
/// to: the forced number of copies plus the best rounded-up table value —
/// `cost1` over `d >= 0`, `cost2` over `d < 0`.
///
/// Ties prefer the `cost1` side and the smallest `d`; the returned set is
/// sorted and always has exactly [`Rtg::copy_count`] transfers.
pub fn optimal_copy_set(g: &Rtg) -> (CopySet, usize) {
    let t1 = table_for_graph(g, &LinearCost::COST1);
    let t2 = table_for_graph(g, &LinearCost::COST2);

    let mut best: Option<(i64, bool, i64)> = None; // (rounded, use t2, d)
    let mut consider = |rounded: i64, use_t2: bool, d: i64| {
        if best.map_or(true, |(b, _, _)| rounded < b) {
            best = Some((rounded, use_t2, d));
        }
    };
    for (d, v) in t1.finite() {
        if d >= 0 {
            consider(ceil_sixths(v), false, d);
        }
    }
    for (d, v) in t2.finite() {
        if d < 0 {
            consider(ceil_sixths(v), true, d);
        }
    }

    let (rounded, use_t2, d) = best.expect("every RTG admits a copy set");
    let table = if use_t2 { &t2 } else { &t1 };
    let copies = table.copy_set(d).expect("winning entry is finite");
    assert_eq!(copies.len(), g.copy_count(), "copy sets have a forced size");
    (copies, g.copy_count() + rounded as usize)
}

/// Ceiling of a nonnegative sixths value to whole instructions.
fn ceil_sixths(v: Sixths) -> i64 {
    debug_assert!(v >= 0);
    (v + 5).div_euclid(6)
}
