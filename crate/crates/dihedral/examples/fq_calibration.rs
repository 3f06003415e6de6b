//! Exact epsilon values against the numerical Gauss-sum oracle.
//!
//! For a character trivial on the lower field of a quadratic step, the
//! epsilon factor is the character's value at any traceless element; the
//! oracle computes the same factor as a complex Gauss sum with no shared
//! code.  The two must agree to within 1e-9 on every character in scope.

use dihedral::chars::enumerate_chars;
use dihedral::epsilon::{fq_epsilon, gauss_epsilon, AdditiveChar};
use dihedral::tower::{classify_tower, make_quadratic, FieldElement, LatticeContext, TowerField};

fn main() {
    let f = TowerField::qp(3);
    let k = make_quadratic(&f, &FieldElement::from_integer(&f, 2)).unwrap();
    let l = make_quadratic(&k, &FieldElement::from_integer(&k, 3)).unwrap();
    let LatticeContext::Biquadratic(lat) = classify_tower(&l).unwrap() else {
        panic!("sqrt(u), sqrt(p) generate the biquadratic field");
    };

    let mut worst = 0f64;
    let mut checked = 0u32;
    for (pair, name) in [
        (&lat.over_k, "L/K"),
        (&lat.over_k1, "L/K'"),
        (&lat.over_k2, "L/K''"),
        (&lat.k_over_f, "K/F"),
        (&lat.k1_over_f, "K'/F"),
        (&lat.k2_over_f, "K''/F"),
    ] {
        let psi = AdditiveChar::standard(&pair.ext);
        for chi in enumerate_chars(&pair.ext, 8) {
            if !chi.restrict(&pair.embedding).is_trivial() {
                continue;
            }
            let exact = fq_epsilon(&chi, pair, &psi).unwrap().exact.unwrap();
            let (re, im) = gauss_epsilon(&chi, &psi).unwrap().complex();
            let (er, ei) = exact.unit_complex();
            let drift = ((re - er).powi(2) + (im - ei).powi(2)).sqrt();
            worst = worst.max(drift);
            checked += 1;
            println!(
                "{name:<6} chi = (t={}, m={})   exact e^(2 pi i {})   oracle {re:+.9}{im:+.9}i   drift {drift:.1e}",
                chi.at_uniformizer(),
                chi.residue_exponent(),
                exact,
            );
        }
    }
    println!("\n{checked} characters calibrated, worst drift {worst:.2e}");
    assert!(worst < 1e-9);
}
