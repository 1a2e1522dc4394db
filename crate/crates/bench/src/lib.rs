//! Shared inputs for the benchmarks.

use newton_bif_core::{parse_polynomial, IntVec, Mode, SparsePoly};

pub const EXP: &str = "x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3";

pub fn exp_polynomial() -> SparsePoly {
    parse_polynomial(EXP, 3, Mode::Affine).expect("valid polynomial")
}

/// Support of the EXP polynomial together with the origin.
pub fn exp_points() -> Vec<IntVec> {
    let mut pts = exp_polynomial().support();
    pts.push(vec![0, 0, 0]);
    pts
}
