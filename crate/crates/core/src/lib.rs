//! Model checking of quantum protocols restricted to the stabilizer fragment.
//!
//! The pipeline is split in four layers:
//!
//! * [`frontend`] lexes, parses and type-checks protocol models (`.qmc` files)
//!   and the properties attached to them.
//! * [`stabilizer`] is an exact tableau simulator for stabilizer states.
//! * [`executor`] interprets a typed program under interleaving semantics and
//!   builds the finite tree of all executions.
//! * [`logic`] evaluates QCTL formulae over that tree.

pub mod executor;
pub mod frontend;
pub mod logic;
pub mod stabilizer;
