//! Brute-force cross-checks used by the test suite.
//!
//! Everything here is deliberately independent of the fast paths: square
//! classes come from exhaustive residue enumeration, and Hilbert symbols from
//! collecting the square classes that a binary quadratic form actually takes
//! over an integer box.

use std::collections::BTreeSet;

use crate::padic::SquareClass;

/// Square class of a nonzero integer inside Q_p, with the quadratic residue
/// test done by trying every residue.
pub fn square_class_by_enumeration(p: u64, n: i64) -> SquareClass {
    assert!(n != 0, "square class of zero is undefined");
    let mut mag = n.unsigned_abs();
    let mut val = 0u32;
    while mag.is_multiple_of(p) {
        mag /= p;
        val += 1;
    }
    let mut residue = mag % p;
    if n < 0 {
        residue = (p - residue) % p;
    }
    let residue_square = (1..p).any(|z| (z * z) % p == residue);
    SquareClass::from_parity_and_residue(val % 2 == 1, residue_square)
}

/// Hilbert symbol by its definition: (a,b) = 1 iff a is a norm from
/// Q_p(sqrt(b)).  Norm values x^2 - b y^2 are collected over an integer box
/// and bucketed by square class; for non-square b the bucket set must have
/// exactly two members, the norm subgroup of index two.
pub fn hilbert_by_norm_classes(p: u64, a: i64, b: i64) -> i32 {
    assert!(a != 0 && b != 0);
    if square_class_by_enumeration(p, b) == SquareClass::One {
        // split case: every class is a norm
        return 1;
    }
    let target = square_class_by_enumeration(p, a);
    let bound = (p * p * p) as i64;
    let mut seen = BTreeSet::new();
    for x in 0..bound {
        for y in 0..bound {
            let n = x * x - b * y * y;
            if n == 0 {
                continue;
            }
            seen.insert(square_class_by_enumeration(p, n));
        }
    }
    assert_eq!(
        seen.len(),
        2,
        "norms of a quadratic extension fill half the square classes"
    );
    if seen.contains(&target) {
        1
    } else {
        -1
    }
}
