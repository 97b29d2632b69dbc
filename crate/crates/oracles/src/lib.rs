//! Reference implementations that the test suites check the checker against.
//!
//! Nothing here shares code paths with the engine it checks: the statevector
//! simulator uses dense exact arithmetic, the path enumerator interprets the
//! parsed AST directly, and the CTL oracle enumerates maximal paths.

pub mod circuits;
pub mod ctl;
pub mod enumerator;
pub mod statevector;
