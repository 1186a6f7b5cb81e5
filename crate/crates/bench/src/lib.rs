//! Shared inputs for the criterion benchmarks.

use lensstring::{CyclicPoly, LensPair};

/// `L(9;1)` and `L(9;4)`.
pub fn nine_pair() -> [LensPair; 2] {
    [LensPair::new(9, 1).unwrap(), LensPair::new(9, 4).unwrap()]
}

/// `L(21;2)` and `L(21;8)`.
pub fn twenty_one_pair() -> [LensPair; 2] {
    [LensPair::new(21, 2).unwrap(), LensPair::new(21, 8).unwrap()]
}

/// `1 + t + ... + t^6` in `(Z/3Z)[t]/(t^9 - 1)`.
pub fn nine_torsion_unit() -> CyclicPoly {
    CyclicPoly::from_terms(9, 3, (0..7).map(|e| (e, 1)))
}
