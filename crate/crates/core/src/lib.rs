//! Learn the Hamiltonian and dissipator coefficients of a Markovian open
//! quantum system from randomized Pauli state-preparation/measurement data.
//!
//! The toolkit covers the full loop:
//!
//! * [`configurations`] - the per-pair preparation/observable configurations,
//!   the 51-parameter encoding of a two-qubit-restricted Liouvillian, and the
//!   frozen 360 x 51 coefficient matrix linking them;
//! * [`model`] - Liouvillian models (Pauli-basis Hamiltonian + Hermitian
//!   dissipator matrix), jump decompositions, benchmark builders, JSON I/O;
//! * [`sim`] - an exact Lindblad integrator (fixed-step RK4 applied term by
//!   term through Pauli words) plus a dense superoperator-exponential oracle,
//!   measurement rotation and bitstring sampling;
//! * [`measurement`] - randomized setting tables, bitstring datasets and the
//!   sign-weighted estimators that turn shots into per-configuration series;
//! * [`learner`] - pairwise least-squares inversion, polynomial derivative
//!   fits with cross-validated degree, aggregation across pairs, bootstrap
//!   errors and power-law refits;
//! * [`rank`] - Monte Carlo probability that randomized settings make the
//!   per-pair linear system full rank, Gumbel fits of that probability and
//!   the resulting measurement-budget recommendation.

pub mod configurations;
pub mod error;
pub mod model;
pub mod pauli;
pub mod rng;

pub use configurations::{
    build_m_max, enumerate_configurations, enumerate_parameters, CoefficientMatrixMax,
    Configuration, PairParameter, N_CONFIGURATIONS, N_PARAMETERS,
};
pub use error::{CoreError, Result};
pub use pauli::{PairSite, PauliAxis, PauliState, PREP_STATES};
