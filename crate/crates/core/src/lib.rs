//! Two parallel formalisms for single-qubit "coin" dynamics and the quantum
//! penny flip game built on top of them.
//!
//! - [`ga`]: the geometric algebra of 3-space, Cl(3,0). States are unit
//!   vectors on the Bloch sphere, moves are rotors acting by `R v R†`.
//! - [`qm`]: conventional quantum mechanics with 2x2 complex matrices:
//!   Pauli matrices, axis-angle unitaries, and density-matrix evolution.
//! - [`bridge`]: the algebra isomorphism between the two, used as a
//!   cross-checking oracle in both directions.
//! - [`game`]: the penny flip game engine. It constructs the complete
//!   two-parameter family of strategies with which the quantum player wins
//!   against any classical mixed strategy, plays games in either formalism,
//!   and falsifies would-be strategies outside the family.
//! - [`verify`]: named invariant suites over all of the above, with one
//!   measured deviation per suite.

pub mod bridge;
pub mod game;
pub mod ga;
pub mod qm;
pub mod verify;

pub use bridge::{matrix_to_multivector, multivector_to_matrix, BridgeReport};
pub use ga::{AxisAngle, GaError, Multivector, Rotor};
pub use game::{
    falsify_random, is_winning_strategy, meyer_strategy, play, solve_family, tilt_angle, Backend,
    GameError, GameOutcome, GameTranscript, QStrategy, Sign, StrategyParams,
};
pub use qm::{Complex64, DensityMatrix, Matrix2, MatrixAxisAngle, QmError};
