//! Shared inputs for the criterion benches.

use taut_core::presentation::{Flags, Presentation};

/// Cases small enough to time repeatedly.
pub const CASES: [(u32, u8); 4] = [(3, 1), (1, 2), (2, 2), (1, 3)];

pub fn presentation(n: u32, d: u8) -> Presentation {
    Presentation::build(n, d, Flags::default()).expect("valid case")
}
