//! Interleaving interpreter and execution-tree construction.
//!
//! Semantics in brief:
//!
//! * one statement is one atomic step; guard evaluation plus branch entry is
//!   one step too;
//! * channels are rendezvous: a send and a matching receive in two different
//!   processes fire together as a single action;
//! * an `if` with no true guard falls through, a `do` with no true guard
//!   exits the loop;
//! * sending a qubit moves the reference: the sender's variable becomes
//!   unbound;
//! * a measurement with a random outcome branches into outcome 0, then 1.

mod code;
mod state;
mod step;
mod tree;

pub use code::{Code, Instr, SelectKind};
pub use state::{eval, Configuration, ProcState, Status, Value};
pub use step::{Action, ActionKind, LeafKind, Machine};
pub use tree::{BuildError, ExecTree, Limits, Node, TreeStats, DEFAULT_MAX_DEPTH, DEFAULT_MAX_NODES};
