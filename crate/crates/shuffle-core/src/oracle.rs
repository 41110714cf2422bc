//! Exhaustive minimum-length search for small instances.
//!
//! The oracle tries every instruction sequence over the graph's own
//! registers, shortest first, and reports the first length that satisfies
//! the RTG. It exists to certify the synthesizer on small inputs, not to be
//! fast: the state space explodes around seven registers, which is why the
//! instance size is capped.
//!
//! Three things keep the search tractable:
//!
//! * iterative deepening with a visited-state table, keyed by how much depth
//!   budget was left when a state was abandoned;
//! * state canonicalization — only the placement of tokens some edge
//!   actually demands matters, everything else is a wildcard, so codes that
//!   differ in junk shuffling collapse into one search node;
//! * an admissible lower bound: a copy raises the count of one token by at
//!   most one and permutations never change counts, so at least
//!   `deficit = sum(needed - held)` copies remain; the registers still
//!   waiting for a value beyond those fixed by copies are written at most
//!   five per instruction. States whose bound exceeds the remaining budget
//!   are cut off, which is what makes copy-heavy instances (where the
//!   minimum length approaches the register count) finish at all.

use std::collections::HashMap;
use std::fmt;

use crate::rtg::{RegId, Rtg};

/// Largest vertex count the oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 7;

/// Why the oracle gave no length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The graph has more vertices than the search can exhaust.
    InstanceTooLarge { vertices: usize, limit: usize },
    /// No code of at most `max_depth` instructions satisfies the graph.
    NotFound { max_depth: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OracleError::InstanceTooLarge { vertices, limit } => {
                write!(f, "{vertices} registers exceed the oracle limit of {limit}")
            }
            OracleError::NotFound { max_depth } => {
                write!(f, "no shuffle code of length <= {max_depth} exists")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// One candidate instruction, lowered to simultaneous `dst <- old[src]`
/// moves over dense register indices. A copy is a single move; permutation
/// instructions are their full move set.
type Moves = Vec<(u8, u8)>;

/// The minimum number of instructions needed to satisfy `g`, searching all
/// codes up to `max_depth` instructions long.
pub fn oracle_min_length(g: &Rtg, max_depth: usize) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::InstanceTooLarge { vertices: n, limit: MAX_ORACLE_VERTICES });
    }

    let index = |r: RegId| g.vertices().binary_search(&r).unwrap() as u8;
    let demands: Vec<(u8, u8)> = g.edges().iter().map(|&(u, v)| (index(u), index(v))).collect();

    // Tokens that appear on the left of some edge are the only ones whose
    // location matters; rank them for the canonical key.
    let mut demand_rank = [WILD; MAX_ORACLE_VERTICES];
    let mut next_rank = 0;
    for &(u, _) in &demands {
        if demand_rank[u as usize] == WILD {
            demand_rank[u as usize] = next_rank;
            next_rank += 1;
        }
    }

    let mut needed = [0u8; MAX_ORACLE_VERTICES];
    for &(u, _) in &demands {
        needed[u as usize] += 1;
    }

    let ops = all_ops(n);
    let start: Vec<u8> = (0..n as u8).collect();

    let mut search = Search {
        ops: &ops,
        demands: &demands,
        demand_rank: &demand_rank,
        needed,
        seen: HashMap::new(),
    };
    for depth in 0..=max_depth {
        search.seen.clear();
        if search.run(&start, depth) {
            return Ok(depth);
        }
    }
    Err(OracleError::NotFound { max_depth })
}

const WILD: u8 = 0xf;

struct Search<'a> {
    ops: &'a [Moves],
    demands: &'a [(u8, u8)],
    demand_rank: &'a [u8; MAX_ORACLE_VERTICES],
    /// How many registers demand each token.
    needed: [u8; MAX_ORACLE_VERTICES],
    /// Canonical state -> largest remaining budget already exhausted there.
    seen: HashMap<u32, usize>,
}

impl Search<'_> {
    fn run(&mut self, state: &[u8], budget: usize) -> bool {
        if self.satisfied(state) {
            return true;
        }
        if self.lower_bound(state) > budget {
            return false;
        }
        let key = self.canonical(state);
        match self.seen.get(&key) {
            Some(&b) if b >= budget => return false,
            _ => {
                self.seen.insert(key, budget);
            }
        }
        let mut buf = [0u8; MAX_ORACLE_VERTICES];
        let next = &mut buf[..state.len()];
        for moves in self.ops {
            next.copy_from_slice(state);
            for &(dst, src) in moves {
                next[dst as usize] = state[src as usize];
            }
            if self.run(next, budget - 1) {
                return true;
            }
        }
        false
    }

    fn satisfied(&self, state: &[u8]) -> bool {
        self.demands.iter().all(|&(u, v)| state[v as usize] == u)
    }

    /// Instructions certainly still needed: missing token instances must be
    /// minted one per copy, and the remaining unsatisfied registers are
    /// written at most five per instruction.
    fn lower_bound(&self, state: &[u8]) -> usize {
        let mut have = [0u8; MAX_ORACLE_VERTICES];
        for &t in state {
            have[t as usize] += 1;
        }
        let deficit: usize =
            (0..state.len()).map(|t| usize::from(self.needed[t].saturating_sub(have[t]))).sum();
        let unsat = self.demands.iter().filter(|&&(u, v)| state[v as usize] != u).count();
        if unsat > deficit {
            deficit + (unsat - deficit).div_ceil(5)
        } else {
            deficit
        }
    }

    /// Packs the state into four bits per register: the demand rank of the
    /// token it holds, or a wildcard for tokens nothing waits for.
    fn canonical(&self, state: &[u8]) -> u32 {
        let mut key = 0u32;
        for (i, &t) in state.iter().enumerate() {
            key |= u32::from(self.demand_rank[t as usize]) << (4 * i);
        }
        key
    }
}

/// Every distinct one-instruction effect on `n` registers: all copies, all
/// rotations of two to five registers, and all swap-plus-rotation shapes.
/// Rotations are enumerated with their smallest register first, which prunes
/// the rotation-equivalent duplicates; a `permi23` with an empty rotation
/// duplicates a two-register `permi5` and is skipped likewise.
fn all_ops(n: usize) -> Vec<Moves> {
    let regs: Vec<u8> = (0..n as u8).collect();
    let mut ops = Vec::new();

    for &src in &regs {
        for &dst in &regs {
            if src != dst {
                ops.push(vec![(dst, src)]);
            }
        }
    }

    for len in 2..=5.min(n) {
        for combo in combinations(&regs, len) {
            // combo is ascending; fix combo[0] and permute the rest.
            for rest in permutations(&combo[1..]) {
                let mut cycle = vec![combo[0]];
                cycle.extend(rest);
                ops.push(cycle_moves(&cycle));
            }
        }
    }

    // Swap + disjoint rotation. For the 2+2 shape, require the pair to hold
    // the overall smallest register so the symmetric double counts once.
    for pair in combinations(&regs, 2) {
        let others: Vec<u8> = regs.iter().copied().filter(|r| !pair.contains(r)).collect();
        for len in [2usize, 3] {
            for combo in combinations(&others, len) {
                if len == 2 && combo[0] < pair[0] {
                    continue;
                }
                for rest in permutations(&combo[1..]) {
                    let mut cycle = vec![combo[0]];
                    cycle.extend(rest);
                    let mut moves = cycle_moves(&pair);
                    moves.extend(cycle_moves(&cycle));
                    ops.push(moves);
                }
            }
        }
    }

    ops
}

fn cycle_moves(cycle: &[u8]) -> Moves {
    (0..cycle.len()).map(|i| (cycle[(i + 1) % cycle.len()], cycle[i])).collect()
}

fn combinations(items: &[u8], len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(items: &[u8], len: usize, start: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, len, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, len, 0, &mut current, &mut out);
    out
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
