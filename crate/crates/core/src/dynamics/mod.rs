//! Propagation of X-form states under the population/coherence equations.

pub mod closed_form;
pub mod eigen;
pub mod ode;
pub mod rates;
pub mod trajectory;

pub use closed_form::{closed_form_state, xi, LAMBDA_LIMIT};
pub use eigen::{propagate_eigen, propagate_expm, EigenPropagator};
pub use ode::integrate_ode;
pub use rates::{build_rate_matrix, RateMatrix};
pub use trajectory::{Evolver, Method, Sample, Trajectory};
