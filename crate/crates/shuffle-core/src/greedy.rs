//! Shuffle operations and the greedy scheduler for outdegree-1 graphs.
//!
//! The target machine moves register contents with three instructions:
//!
//! * `copy src dst` — duplicate `src` into `dst`,
//! * `permi5` — cyclically shift the contents of two to five registers,
//! * `permi23` — swap two registers and, optionally, cyclically shift two or
//!   three further registers disjoint from the pair.
//!
//! An outdegree-1 RTG needs no copies; the scheduler below resolves it with
//! permutation instructions alone and is optimal. It works on the signature
//! `(x, a2, a3)` of the graph:
//!
//! 1. complete every path into a cycle of the same size (free: the extra
//!    transfer overwrites a register nobody reads),
//! 2. while some cycle has four or more vertices, shorten it as much as one
//!    `permi5` allows — by four vertices, or entirely for sizes 4 and 5
//!    (`x` instructions in total),
//! 3. while both a 2-cycle and a 3-cycle remain, resolve one of each with a
//!    single `permi23`,
//! 4. resolve leftover 2-cycles in pairs per `permi23` (a final odd one with
//!    a two-register `permi5`),
//! 5. resolve leftover 3-cycles in triples per two `permi23`s (a final pair
//!    with `permi23` + `permi5`, a final single with one `permi5`).
//!
//! The instruction count comes out to `x + max(ceil((a2 + a3) / 2),
//! ceil((a2 + 2 * a3) / 3))`, which [`greedy_cost`] computes directly.

use std::collections::BTreeSet;
use std::fmt;

use crate::rtg::{ComponentKind, Permutation, RegId, Rtg, RtgError, Signature, SignatureDelta};

/// One machine instruction of a shuffle code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShuffleOp {
    /// Duplicate `src` into `dst` (`src != dst`).
    Copy { src: RegId, dst: RegId },
    /// Move each `cycle[i]`'s value to `cycle[i + 1]` (wrapping); two to
    /// five distinct registers.
    Permi5 { cycle: Vec<RegId> },
    /// Swap the `pair` and rotate the `cycle` (zero, two or three registers,
    /// disjoint from the pair) in one step.
    Permi23 { pair: [RegId; 2], cycle: Vec<RegId> },
}

/// Why an operation is not executable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MalformedOp {
    /// `copy` with identical source and destination.
    CopyOntoItself(RegId),
    /// `permi5` rotation outside two to five registers.
    RotationLength(usize),
    /// `permi23` rotation of a length other than zero, two or three.
    PairRotationLength(usize),
    /// A register named twice within one operation.
    RepeatedRegister(RegId),
}

impl fmt::Display for MalformedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MalformedOp::CopyOntoItself(r) => write!(f, "copy of register {r} onto itself"),
            MalformedOp::RotationLength(n) => {
                write!(f, "permi5 rotates {n} registers (needs 2 to 5)")
            }
            MalformedOp::PairRotationLength(n) => {
                write!(f, "permi23 rotates {n} registers (needs 0, 2 or 3)")
            }
            MalformedOp::RepeatedRegister(r) => {
                write!(f, "register {r} appears twice in one operation")
            }
        }
    }
}

impl std::error::Error for MalformedOp {}

impl ShuffleOp {
    /// Checks the structural invariants of the instruction set.
    pub fn validate(&self) -> Result<(), MalformedOp> {
        let mut seen = BTreeSet::new();
        let mut distinct = |regs: &[RegId]| -> Result<(), MalformedOp> {
            for &r in regs {
                if !seen.insert(r) {
                    return Err(MalformedOp::RepeatedRegister(r));
                }
            }
            Ok(())
        };
        match self {
            ShuffleOp::Copy { src, dst } => {
                if src == dst {
                    return Err(MalformedOp::CopyOntoItself(*src));
                }
            }
            ShuffleOp::Permi5 { cycle } => {
                if !(2..=5).contains(&cycle.len()) {
                    return Err(MalformedOp::RotationLength(cycle.len()));
                }
                distinct(cycle)?;
            }
            ShuffleOp::Permi23 { pair, cycle } => {
                if !matches!(cycle.len(), 0 | 2 | 3) {
                    return Err(MalformedOp::PairRotationLength(cycle.len()));
                }
                distinct(pair)?;
                distinct(cycle)?;
            }
        }
        Ok(())
    }

    /// The permutation a valid instruction applies to register contents;
    /// `None` for copies, which are not invertible.
    pub fn permutation(&self) -> Option<Permutation> {
        match self {
            ShuffleOp::Copy { .. } => None,
            ShuffleOp::Permi5 { cycle } => Permutation::from_cycle(cycle).ok(),
            ShuffleOp::Permi23 { pair, cycle } => {
                let swap = Permutation::from_cycle(pair).ok()?;
                let rot = Permutation::from_cycle(cycle).ok()?;
                Some(swap.then(&rot))
            }
        }
    }

    /// Every register the instruction touches.
    pub fn registers(&self) -> Vec<RegId> {
        match self {
            ShuffleOp::Copy { src, dst } => vec![*src, *dst],
            ShuffleOp::Permi5 { cycle } => cycle.clone(),
            ShuffleOp::Permi23 { pair, cycle } => {
                pair.iter().chain(cycle.iter()).copied().collect()
            }
        }
    }
}

impl fmt::Display for ShuffleOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list =
            |regs: &[RegId]| regs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            ShuffleOp::Copy { src, dst } => write!(f, "copy {src} {dst}"),
            ShuffleOp::Permi5 { cycle } => write!(f, "permi5 ({})", list(cycle)),
            ShuffleOp::Permi23 { pair, cycle } => {
                write!(f, "permi23 ({})", list(pair))?;
                if !cycle.is_empty() {
                    write!(f, " ({})", list(cycle))?;
                }
                Ok(())
            }
        }
    }
}

/// An instruction sequence, executed front to back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShuffleCode {
    pub ops: Vec<ShuffleOp>,
}

impl ShuffleCode {
    pub fn new(ops: Vec<ShuffleOp>) -> Self {
        ShuffleCode { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// The combined movement of all permutation instructions, in order.
    /// Copies are skipped: they duplicate values rather than move them.
    pub fn total_permutation(&self) -> Permutation {
        self.ops
            .iter()
            .filter_map(ShuffleOp::permutation)
            .fold(Permutation::identity(), |acc, p| acc.then(&p))
    }
}

impl fmt::Display for ShuffleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Number of instructions the greedy scheduler emits for a signature:
/// `x + max(ceil((a2 + a3) / 2), ceil((a2 + 2 * a3) / 3))`.
pub fn greedy_cost(sig: &Signature) -> u64 {
    let (x, a2, a3) = (u64::from(sig.x), u64::from(sig.a2), u64::from(sig.a3));
    let pairs = (a2 + a3).div_ceil(2);
    let triples = (a2 + 2 * a3).div_ceil(3);
    x + pairs.max(triples)
}

/// The two linear forms bounding how much one instruction can improve a
/// signature: for a change `d = after - before`,
/// `psi1 = 2 dx + d2 + d3` and `psi2 = 3 dx + d2 + 2 d3`.
///
/// An instruction that lowers the greedy cost by `c` forces
/// `psi1 <= -2c + 1` (when 2-components dominate) or `psi2 <= -3c + 2`
/// (when 3-components dominate); merging two components never makes either
/// form negative, which is what caps the per-instruction progress at one.
pub fn psi(delta: &SignatureDelta) -> (i64, i64) {
    (2 * delta.x + delta.a2 + delta.a3, 3 * delta.x + delta.a2 + 2 * delta.a3)
}

/// Completes every path component into a cycle of the same size by adding
/// the back edge from tail to head. The result is a PRTG with the same
/// signature; the added transfers clobber only registers nobody reads.
pub fn complete_paths(g: &Rtg) -> Result<Rtg, RtgError> {
    let mut edges: Vec<(RegId, RegId)> = g.edges().to_vec();
    for kind in check_outdegree_one(g)? {
        if let ComponentKind::Path { vertices } = kind {
            edges.push((*vertices.last().unwrap(), vertices[0]));
        }
    }
    Rtg::from_edges(edges)
}

fn check_outdegree_one(g: &Rtg) -> Result<Vec<ComponentKind>, RtgError> {
    if let Some(&v) = g.vertices().iter().find(|&&v| g.out_degree(v) > 1) {
        return Err(RtgError::NotOutdegreeOne(v));
    }
    Ok(g.decompose())
}

/// Emits an optimal shuffle code for an outdegree-1 RTG.
///
/// Exactly `greedy_cost(g.signature())` instructions are produced; executing
/// them satisfies every edge and leaves self-loop registers untouched.
/// Components are processed in ascending order of their smallest register,
/// so the output is deterministic.
pub fn greedy_schedule(g: &Rtg) -> Result<ShuffleCode, RtgError> {
    // Work on cycles only: a path [p0..pk] behaves exactly like the cycle it
    // completes into, and the wrap-around movement into p0 is harmless.
    let mut cycles: Vec<Vec<RegId>> = Vec::new();
    for kind in check_outdegree_one(g)? {
        match kind {
            ComponentKind::TrivialLoop { .. } => {}
            ComponentKind::Cycle { vertices } => cycles.push(vertices),
            ComponentKind::Path { mut vertices } => {
                // Completed cycles keep edge order; start them at the
                // smallest register like every other cycle.
                let min_pos =
                    vertices.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(p, _)| p).unwrap();
                vertices.rotate_left(min_pos);
                cycles.push(vertices);
            }
            ComponentKind::Tree { .. } | ComponentKind::Unicyclic { .. } => {
                unreachable!("outdegree-1 graphs refine to paths/cycles/loops")
            }
        }
    }
    cycles.sort_by_key(|c| c[0]);

    let mut ops = Vec::new();

    // Step 2: shorten every cycle below four vertices. One permi5 removes
    // four vertices from a long cycle (the first five collapse onto the
    // leading one) and finishes 4- and 5-cycles outright.
    let mut twos: Vec<Vec<RegId>> = Vec::new();
    let mut threes: Vec<Vec<RegId>> = Vec::new();
    for mut cycle in cycles {
        while cycle.len() >= 4 {
            if cycle.len() <= 5 {
                ops.push(ShuffleOp::Permi5 { cycle: cycle.clone() });
                cycle.clear();
            } else {
                ops.push(ShuffleOp::Permi5 { cycle: cycle[..5].to_vec() });
                cycle.drain(1..5);
            }
        }
        match cycle.len() {
            2 => twos.push(cycle),
            3 => threes.push(cycle),
            _ => {}
        }
    }

    // Step 3: one permi23 finishes a 2-cycle and a 3-cycle together.
    let paired = twos.len().min(threes.len());
    let leftover_twos = twos.split_off(paired);
    let leftover_threes = threes.split_off(paired);
    for (two, three) in twos.into_iter().zip(threes) {
        ops.push(ShuffleOp::Permi23 { pair: [two[0], two[1]], cycle: three });
    }

    // Step 4: leftover 2-cycles go in pairs; a final odd one is a plain swap.
    let mut chunks = leftover_twos.chunks_exact(2);
    for pair in &mut chunks {
        ops.push(ShuffleOp::Permi23 { pair: [pair[0][0], pair[0][1]], cycle: pair[1].clone() });
    }
    if let [last] = chunks.remainder() {
        ops.push(ShuffleOp::Permi5 { cycle: last.clone() });
    }

    // Step 5: leftover 3-cycles go in triples (a, b, c). Swapping two
    // adjacent registers of `a` shrinks it to a 2-cycle while the rotation
    // finishes `b`; the second permi23 clears the remnant of `a` and `c`.
    let mut chunks = leftover_threes.chunks_exact(3);
    for triple in &mut chunks {
        let (a, b, c) = (&triple[0], &triple[1], &triple[2]);
        ops.push(ShuffleOp::Permi23 { pair: [a[0], a[1]], cycle: b.clone() });
        ops.push(ShuffleOp::Permi23 { pair: [a[0], a[2]], cycle: c.clone() });
    }
    match chunks.remainder() {
        [a] => ops.push(ShuffleOp::Permi5 { cycle: a.clone() }),
        [a, b] => {
            ops.push(ShuffleOp::Permi23 { pair: [b[0], b[1]], cycle: a.clone() });
            ops.push(ShuffleOp::Permi5 { cycle: vec![b[0], b[2]] });
        }
        _ => {}
    }

    Ok(ShuffleCode::new(ops))
}
