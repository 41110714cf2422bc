//! End-to-end synthesis: from an RTG to a provably shortest shuffle code.
//!
//! The pipeline has two stages. First the copy-set program
//! ([`crate::copyset::optimal_copy_set`]) decides which transfers become
//! `copy` instructions; the remaining transfers form an outdegree-1
//! residual graph. Second the greedy scheduler
//! ([`crate::greedy::greedy_schedule`]) compiles that residual into
//! permutation instructions.
//!
//! Copies are placed *after* the permutation part. By then every value has
//! been rotated into its final register, so the copy realizing a cut
//! transfer `(u, v)` reads from `pi(u)` — wherever the permutation left
//! `u`'s original content — and writes `v`. The resulting code is in a
//! normal form that [`check_normalized`] can audit structurally: copies
//! come last, read only registers that already hold their final value, and
//! correspond one-to-one to the transfers the permutation left unresolved.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::copyset::{optimal_copy_set, CopySet};
use crate::greedy::{greedy_schedule, ShuffleCode, ShuffleOp};
use crate::rtg::{Edge, RegId, Rtg, Signature};

/// Why a caller-supplied copy set cannot be realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthesisError {
    /// The set names a transfer the graph does not contain.
    UnknownTransfer(Edge),
    /// The same transfer appears twice.
    DuplicateTransfer(Edge),
    /// The set has the wrong size; every copy set of a graph has exactly
    /// [`Rtg::copy_count`] transfers.
    WrongCopyCount { found: usize, required: usize },
    /// Some register still has two or more outgoing transfers after the
    /// cut, so the residual cannot be scheduled by permutations alone.
    UnresolvedReads(RegId),
}

impl fmt::Display for SynthesisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthesisError::UnknownTransfer((u, v)) => {
                write!(f, "transfer ({u}, {v}) is not part of the graph")
            }
            SynthesisError::DuplicateTransfer((u, v)) => {
                write!(f, "transfer ({u}, {v}) appears twice in the copy set")
            }
            SynthesisError::WrongCopyCount { found, required } => {
                write!(f, "copy set has {found} transfers, this graph requires {required}")
            }
            SynthesisError::UnresolvedReads(r) => {
                write!(f, "register {r} is still read more than once after the cut")
            }
        }
    }
}

impl std::error::Error for SynthesisError {}

/// A synthesized shuffle code together with the decisions that shaped it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    /// The instruction sequence: permutations first, copies last.
    pub code: ShuffleCode,
    /// The transfers realized by copies, sorted.
    pub copy_set: CopySet,
    /// Signature of the residual graph the permutation part resolves.
    pub residual_signature: Signature,
    /// Total instruction count; equals `code.len()`.
    pub total_length: usize,
}

/// Synthesizes a minimum-length shuffle code for `g`.
pub fn synthesize(g: &Rtg) -> SynthesisResult {
    let (copies, total) = optimal_copy_set(g);
    let result =
        synthesize_with_copy_set(g, &copies).expect("the optimal copy set is always realizable");
    assert_eq!(result.total_length, total, "table value must match emitted code");
    result
}

/// Synthesizes a shuffle code that realizes exactly the given transfers as
/// copies. The result is shortest *among codes using this copy set*; pass
/// the set from [`optimal_copy_set`] (or call [`synthesize`]) for the
/// global optimum.
pub fn synthesize_with_copy_set(
    g: &Rtg,
    copies: &[Edge],
) -> Result<SynthesisResult, SynthesisError> {
    let all: BTreeSet<Edge> = g.edges().iter().copied().collect();
    let mut chosen: BTreeSet<Edge> = BTreeSet::new();
    for &e in copies {
        if !all.contains(&e) {
            return Err(SynthesisError::UnknownTransfer(e));
        }
        if !chosen.insert(e) {
            return Err(SynthesisError::DuplicateTransfer(e));
        }
    }
    if chosen.len() != g.copy_count() {
        return Err(SynthesisError::WrongCopyCount {
            found: chosen.len(),
            required: g.copy_count(),
        });
    }
    let residual =
        g.without_edges(copies).expect("a full-size cut still leaves one transfer per source");
    if let Some(&v) = residual.vertices().iter().find(|&&v| residual.out_degree(v) > 1) {
        return Err(SynthesisError::UnresolvedReads(v));
    }

    let code = greedy_schedule(&residual).expect("residual graph is outdegree-1");
    let residual_signature = residual.signature().expect("residual graph is outdegree-1");
    let pi = code.total_permutation();

    let mut ops = code.ops;
    let copy_set: CopySet = chosen.into_iter().collect();
    for &(u, v) in &copy_set {
        // The permutation moved u's original value into pi(u); u keeps one
        // outgoing transfer besides (u, v), so pi(u) != v and the copy
        // never targets its own source.
        ops.push(ShuffleOp::Copy { src: pi.apply(u), dst: v });
    }
    let code = ShuffleCode::new(ops);
    let total_length = code.len();
    Ok(SynthesisResult { code, copy_set, residual_signature, total_length })
}

/// A way in which a result strays from the copies-last normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NormalizationViolation {
    /// A permutation instruction appears after the first copy.
    PermutationAfterCopy { index: usize },
    /// A register is both read and written by copies.
    CopySourceAlsoTarget { register: RegId },
    /// Two copies write the same register.
    MultipleCopiesInto { register: RegId },
    /// A copy does not correspond to any transfer the permutation part
    /// left unresolved.
    CopyWithoutMatchingTransfer { src: RegId, dst: RegId },
    /// A transfer left unresolved by the permutation part has no copy.
    TransferWithoutCopy { src: RegId, dst: RegId },
    /// A copy reads a register that does not already hold its final value.
    CopySourceNotSettled { register: RegId },
    /// The number of copies differs from the graph's forced copy count.
    CopyCountMismatch { found: usize, required: usize },
}

impl fmt::Display for NormalizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizationViolation::PermutationAfterCopy { index } => {
                write!(f, "instruction {index} permutes after a copy was issued")
            }
            NormalizationViolation::CopySourceAlsoTarget { register } => {
                write!(f, "register {register} is both a copy source and a copy target")
            }
            NormalizationViolation::MultipleCopiesInto { register } => {
                write!(f, "register {register} is written by more than one copy")
            }
            NormalizationViolation::CopyWithoutMatchingTransfer { src, dst } => {
                write!(f, "copy {src} -> {dst} matches no unresolved transfer")
            }
            NormalizationViolation::TransferWithoutCopy { src, dst } => {
                write!(f, "unresolved transfer {src} -> {dst} has no copy")
            }
            NormalizationViolation::CopySourceNotSettled { register } => {
                write!(f, "copy reads register {register} before it holds its final value")
            }
            NormalizationViolation::CopyCountMismatch { found, required } => {
                write!(f, "code issues {found} copies, the graph requires {required}")
            }
        }
    }
}

/// Audits a result against the copies-last normal form; an empty vector
/// means the code is normalized.
///
/// With `pi` the combined movement of the permutation instructions, the
/// shifted graph `pi(G)` rewrites each transfer `(u, v)` to `(pi(u), v)`;
/// its self-loops are the transfers the permutation already satisfied.
/// Normalized code must cover the remaining transfers by exactly the
/// forced number of copies, each reading a settled register, no register
/// written twice, and no permutation instruction after a copy.
pub fn check_normalized(g: &Rtg, result: &SynthesisResult) -> Vec<NormalizationViolation> {
    let mut violations = Vec::new();
    let ops = &result.code.ops;

    if let Some(first_copy) = ops.iter().position(|op| matches!(op, ShuffleOp::Copy { .. })) {
        for (index, op) in ops.iter().enumerate().skip(first_copy + 1) {
            if !matches!(op, ShuffleOp::Copy { .. }) {
                violations.push(NormalizationViolation::PermutationAfterCopy { index });
            }
        }
    }

    let copies: Vec<Edge> = ops
        .iter()
        .filter_map(|op| match op {
            ShuffleOp::Copy { src, dst } => Some((*src, *dst)),
            _ => None,
        })
        .collect();

    let sources: BTreeSet<RegId> = copies.iter().map(|&(s, _)| s).collect();
    let mut targets: BTreeSet<RegId> = BTreeSet::new();
    for &(_, d) in &copies {
        if !targets.insert(d) {
            violations.push(NormalizationViolation::MultipleCopiesInto { register: d });
        }
    }
    for &s in sources.intersection(&targets) {
        violations.push(NormalizationViolation::CopySourceAlsoTarget { register: s });
    }

    let shifted = g.permute(&result.code.total_permutation());
    let mut pending: BTreeSet<Edge> = BTreeSet::new();
    let mut settled: BTreeSet<RegId> = BTreeSet::new();
    for &(u, v) in shifted.edges() {
        if u == v {
            settled.insert(u);
        } else {
            pending.insert((u, v));
        }
    }

    let copy_edges: BTreeSet<Edge> = copies.iter().copied().collect();
    for &(src, dst) in copy_edges.difference(&pending) {
        violations.push(NormalizationViolation::CopyWithoutMatchingTransfer { src, dst });
    }
    for &(src, dst) in pending.difference(&copy_edges) {
        violations.push(NormalizationViolation::TransferWithoutCopy { src, dst });
    }
    for &s in &sources {
        if !settled.contains(&s) {
            violations.push(NormalizationViolation::CopySourceNotSettled { register: s });
        }
    }
    if copies.len() != g.copy_count() {
        violations.push(NormalizationViolation::CopyCountMismatch {
            found: copies.len(),
            required: g.copy_count(),
        });
    }
    violations
}

/// Why an operand-encoding size cannot be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EncodingError {
    /// No instruction selects zero registers.
    EmptySelection,
    /// More registers requested than the file provides.
    TooManyRegisters { wanted: u64, available: u64 },
}

impl fmt::Display for EncodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodingError::EmptySelection => {
                write!(f, "cannot encode a selection of zero registers")
            }
            EncodingError::TooManyRegisters { wanted, available } => {
                write!(f, "cannot pick {wanted} distinct registers out of {available}")
            }
        }
    }
}

impl std::error::Error for EncodingError {}

/// Bits needed to name an ordered selection of `k` distinct registers out
/// of `n`: the ceiling of `log2(n * (n-1) * ... * (n-k+1))`.
///
/// This is the operand-field budget for an instruction that rotates `k`
/// named registers in a file of `n`.
pub fn encoding_bits(n: u64, k: u64) -> Result<u64, EncodingError> {
    if k == 0 {
        return Err(EncodingError::EmptySelection);
    }
    if k > n {
        return Err(EncodingError::TooManyRegisters { wanted: k, available: n });
    }
    let mut arrangements = BigUint::from(1u32);
    for i in 0..k {
        arrangements *= n - i;
    }
    // ceil(log2(x)) == bits(x - 1) for x >= 1.
    Ok((arrangements - 1u32).bits())
}
