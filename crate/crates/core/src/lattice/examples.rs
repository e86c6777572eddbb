//! The two `(Z_2)^3` actions on `T^5` used throughout the crate's tests.

use alloc::string::String;
use alloc::vec::Vec;

use super::affine::AffineIsometry;
use crate::rational::Rat;

fn gen(name: &str, signs: [i64; 5], halves: [bool; 5]) -> (String, AffineIsometry) {
    let t: Vec<Rat> = halves
        .iter()
        .map(|&h| if h { Rat::half() } else { Rat::zero() })
        .collect();
    (String::from(name), AffineIsometry::diagonal(&signs, t).expect("diagonal +-1"))
}

/// alpha, beta, gamma with 12 singular circles in the quotient.
pub fn kummer_generators() -> Vec<(String, AffineIsometry)> {
    alloc::vec![
        gen("alpha", [1, -1, -1, -1, -1], [false, false, false, true, false]),
        gen("beta", [-1, -1, -1, 1, -1], [false, true, false, false, false]),
        gen("gamma", [-1, -1, -1, -1, 1], [false, false, true, false, false]),
    ]
}

/// alpha, beta, gamma whose gamma-circles are translated by alpha*beta.
pub fn half_length_generators() -> Vec<(String, AffineIsometry)> {
    alloc::vec![
        gen("alpha", [1, -1, -1, -1, -1], [false, false, false, false, true]),
        gen("beta", [1, -1, -1, -1, -1], [false; 5]),
        gen("gamma", [-1, -1, -1, -1, 1], [false, false, true, false, false]),
    ]
}
