//! Fixtures shared by the benchmarks.

use pitchopt_core::{Instance, PitchCatalog, PitchSequence};

/// Sequences of 10, 15 and 60 pitches over the reference catalog.
pub const SEQUENCES: [&str; 3] = [
    "1311323331",
    "311113311133312",
    "212311233112323131112111231123111113133213323323333331212131",
];

pub fn sequence(text: &str) -> PitchSequence {
    PitchSequence::parse(text, &PitchCatalog::reference()).expect("fixture sequence")
}

pub fn triple(n: usize, lo: usize, hi: usize) -> Instance {
    Instance::triple(n, lo, hi).expect("fixture instance")
}
