use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::field_bath::GklsCoefficients;
use crate::xstate::XState;

/// Linear generator of the X-state dynamics. Populations (ordered `G, A, S, E`)
/// evolve under `generator`; the two coherences decay independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateMatrix {
    pub generator: Matrix4<f64>,
    pub decay_as: f64,
    pub decay_ge: f64,
}

impl RateMatrix {
    pub fn is_zero(&self) -> bool {
        self.generator.iter().all(|&x| x == 0.0) && self.decay_as == 0.0 && self.decay_ge == 0.0
    }

    /// Time derivative of a state.
    pub fn derivative(&self, state: &XState) -> XState {
        let p = self.generator * Vector4::from(state.populations());
        XState {
            pop_g: p[0],
            pop_a: p[1],
            pop_s: p[2],
            pop_e: p[3],
            coh_ge: -self.decay_ge * state.coh_ge,
            coh_as: -self.decay_as * state.coh_as,
        }
    }

    /// Largest absolute rate, a natural time scale for step selection.
    pub fn max_rate(&self) -> f64 {
        self.generator
            .iter()
            .map(|x| x.abs())
            .fold(self.decay_as.max(self.decay_ge), f64::max)
    }
}

/// Encodes the population equations
///
/// ```text
/// G' = -4(A1-B1) G + 2(A1+B1-A2-B2) A + 2(A1+B1+A2+B2) S
/// A' = -4(A1-A2) A + 2(A1-B1-A2+B2) G + 2(A1+B1-A2-B2) E
/// S' = -4(A1+A2) S + 2(A1-B1+A2-B2) G + 2(A1+B1+A2+B2) E
/// E' = -4(A1+B1) E + 2(A1-B1-A2+B2) A + 2(A1-B1+A2-B2) S
/// ```
///
/// with both coherences decaying at `4 A1`.
pub fn build_rate_matrix(c: &GklsCoefficients) -> RateMatrix {
    let GklsCoefficients { a1, b1, a2, b2 } = *c;
    let down_a = 2.0 * (a1 + b1 - a2 - b2);
    let down_s = 2.0 * (a1 + b1 + a2 + b2);
    let up_a = 2.0 * (a1 - b1 - a2 + b2);
    let up_s = 2.0 * (a1 - b1 + a2 - b2);
    #[rustfmt::skip]
    let generator = Matrix4::new(
        -4.0 * (a1 - b1), down_a,            down_s,            0.0,
        up_a,             -4.0 * (a1 - a2),  0.0,               down_a,
        up_s,             0.0,               -4.0 * (a1 + a2),  down_s,
        0.0,              up_a,              up_s,              -4.0 * (a1 + b1),
    );
    RateMatrix {
        generator,
        decay_as: 4.0 * a1,
        decay_ge: 4.0 * a1,
    }
}
