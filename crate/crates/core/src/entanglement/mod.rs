//! Concurrence and negativity of X-states, closed-form coefficients, sudden
//! death and event detection.

pub mod closed_form;
pub mod events;
pub mod lifetime;
pub mod measures;

pub use closed_form::{closed_form_k, closed_form_n};
pub use events::{detect_events, EntanglementEvents};
pub use lifetime::{lifetime, sudden_death_condition, Lifetime};
pub use measures::{
    concurrence, concurrence_terms, negativity, negativity_terms, EntanglementValue, Measure,
    CONCURRENCE_CUTOFF, NEGATIVITY_CUTOFF,
};
