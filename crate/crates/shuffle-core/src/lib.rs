//! Shuffle code synthesis for register transfer graphs.
//!
//! A register transfer graph (RTG) describes which registers of a machine
//! must end up holding which initial values. This crate turns an RTG into a
//! provably minimum-length *shuffle code* built from three instructions:
//!
//! * `copy src dst` — duplicate one register into another,
//! * `permi5` — cyclically shift the contents of up to five registers,
//! * `permi23` — swap two registers and cyclically shift up to three others.
//!
//! The pipeline has two stages. For graphs where no register is read twice
//! (out-degree at most one) a greedy scheduler emits an optimal permutation
//! sequence directly. General graphs first pick an optimal *copy set* — the
//! transfers realized by `copy` instructions — via a dynamic program over the
//! tree and cycle structure of the graph, then run the greedy scheduler on
//! the remainder.
//!
//! Module map:
//!
//! * [`rtg`] — the graph model: validation, decomposition, signatures.
//! * [`greedy`] — shuffle operations and the greedy scheduler.
//! * [`copyset`] — cost tables and the copy-set dynamic program.
//! * [`pipeline`] — end-to-end synthesis, normalization checks, encoding stats.
//! * [`sim`] — a register-file simulator for validating codes.
//! * [`oracle`] — exhaustive minimum-length search for small instances.

pub mod copyset;
pub mod greedy;
pub mod oracle;
pub mod pipeline;
pub mod rtg;
pub mod sim;

pub use greedy::{greedy_cost, greedy_schedule, ShuffleCode, ShuffleOp};
pub use pipeline::{synthesize, SynthesisResult};
pub use rtg::{RegId, Rtg, Signature};
