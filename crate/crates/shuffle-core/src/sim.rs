//! A register-file simulator for shuffle codes.
//!
//! Values are opaque tokens compared by identity; the canonical start state
//! gives every register its own id as token. Running a code and checking
//! each RTG edge `(u, v)` — "`v` ends up with `u`'s token" — is the
//! semantics everything else in the crate is validated against.

use std::collections::BTreeMap;
use std::fmt;

use crate::greedy::{MalformedOp, ShuffleCode, ShuffleOp};
use crate::rtg::{RegId, Rtg};

/// A register file: which token each register currently holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegState {
    vals: BTreeMap<RegId, RegId>,
}

impl RegState {
    /// Every register holds its own id.
    pub fn identity<I: IntoIterator<Item = RegId>>(regs: I) -> Self {
        RegState { vals: regs.into_iter().map(|r| (r, r)).collect() }
    }

    /// The token in `r`, if the register exists.
    pub fn get(&self, r: RegId) -> Option<RegId> {
        self.vals.get(&r).copied()
    }

    pub fn registers(&self) -> impl Iterator<Item = RegId> + '_ {
        self.vals.keys().copied()
    }
}

/// Why execution stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExecError {
    /// The `index`-th instruction is structurally invalid.
    Malformed { index: usize, reason: MalformedOp },
    /// The `index`-th instruction names a register the state does not have.
    UnknownRegister { index: usize, register: RegId },
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecError::Malformed { index, reason } => {
                write!(f, "instruction {index}: {reason}")
            }
            ExecError::UnknownRegister { index, register } => {
                write!(f, "instruction {index}: register {register} does not exist")
            }
        }
    }
}

impl std::error::Error for ExecError {}

/// Runs a code on a start state and returns the final state.
pub fn execute(code: &ShuffleCode, start: &RegState) -> Result<RegState, ExecError> {
    let mut state = start.clone();
    for (index, op) in code.ops.iter().enumerate() {
        op.validate().map_err(|reason| ExecError::Malformed { index, reason })?;
        for r in op.registers() {
            if !state.vals.contains_key(&r) {
                return Err(ExecError::UnknownRegister { index, register: r });
            }
        }
        match op {
            ShuffleOp::Copy { src, dst } => {
                let v = state.vals[src];
                state.vals.insert(*dst, v);
            }
            // Both permutation forms move values simultaneously: gather all
            // reads before the first write.
            ShuffleOp::Permi5 { cycle } => rotate(&mut state, cycle),
            ShuffleOp::Permi23 { pair, cycle } => {
                rotate(&mut state, pair);
                rotate(&mut state, cycle);
            }
        }
    }
    Ok(state)
}

/// Moves `cycle[i]`'s value into `cycle[i + 1]`, wrapping around.
fn rotate(state: &mut RegState, cycle: &[RegId]) {
    if cycle.len() < 2 {
        return;
    }
    let vals: Vec<RegId> = cycle.iter().map(|r| state.vals[r]).collect();
    for (i, &v) in vals.iter().enumerate() {
        let dst = cycle[(i + 1) % cycle.len()];
        state.vals.insert(dst, v);
    }
}

/// True if executing `code` from the identity state realizes every transfer
/// demanded by `g`. Registers the code touches beyond `g`'s are scratch and
/// start with their own tokens; malformed codes satisfy nothing.
pub fn satisfies(g: &Rtg, code: &ShuffleCode) -> bool {
    let regs: Vec<RegId> = {
        let mut all: Vec<RegId> = g.vertices().to_vec();
        all.extend(code.ops.iter().flat_map(|op| op.registers()));
        all.sort_unstable();
        all.dedup();
        all
    };
    let start = RegState::identity(regs);
    match execute(code, &start) {
        Ok(end) => g.edges().iter().all(|&(u, v)| end.get(v) == Some(u)),
        Err(_) => false,
    }
}
