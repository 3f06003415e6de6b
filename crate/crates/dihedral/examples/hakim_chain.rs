//! The headline cross-verification on one lattice: the exact twist chain
//! certifies exactly the distinguished data, and the eta-distinguished
//! ones become certifiable after twisting by an extension of the ground
//! quadratic character.

use dihedral::chars::{eta_character, extend_character};
use dihedral::cyclo::CycloValue;
use dihedral::distinction::{decide_dihedral, DihedralDatum};
use dihedral::epsilon::hakim_check;
use dihedral::error::Error;
use dihedral::chars::MultChar;
use dihedral::tower::{classify_tower, make_quadratic, FieldElement, LatticeContext, TowerField};

fn main() {
    let f = TowerField::qp(3);
    let k = make_quadratic(&f, &FieldElement::from_integer(&f, 3)).unwrap();
    let l = make_quadratic(&k, &FieldElement::from_integer(&k, 2)).unwrap();
    let LatticeContext::Biquadratic(lat) = classify_tower(&l).unwrap() else {
        panic!("sqrt(p), sqrt(u) generate the biquadratic field");
    };

    // a regular character trivial on one complementary subfield
    let omega = MultChar::new(&l, CycloValue::new(1, 2), 2);
    let d = DihedralDatum::new(&l, omega).unwrap();
    let verdict = decide_dihedral(&d).unwrap();
    println!("omega = (t=1/2, m=2): {}  ({})", verdict.kind.as_str(), verdict.witness);
    let (all_one, twists) = hakim_check(&d, 4).unwrap();
    println!("twist chain: all_one = {all_one}");
    for t in &twists {
        println!(
            "  chi = (t={}, m={})  ->  epsilon = {}  (is_one: {})",
            t.chi.at_uniformizer(),
            t.chi.residue_exponent(),
            t.epsilon,
            t.is_one,
        );
    }

    // the eta-distinguished witness: the chain refuses, then certifies the twist
    let omega = MultChar::new(&l, CycloValue::zero(), 2);
    let d = DihedralDatum::new(&l, omega.clone()).unwrap();
    let verdict = decide_dihedral(&d).unwrap();
    println!("\nomega = (t=0, m=2): {}  ({})", verdict.kind.as_str(), verdict.witness);
    match hakim_check(&d, 4) {
        Err(Error::RegimeRefusal(msg)) => println!("twist chain refuses: {msg}"),
        _ => panic!("the eta side sits outside the exact regime"),
    }
    let ext = extend_character(&eta_character(&lat.k_over_f), &lat.k_over_f);
    let twisted = omega.mul(&ext.compose_with_norm(&lat.over_k));
    let td = DihedralDatum::new(&l, twisted).unwrap();
    let (all_one, _) = hakim_check(&td, 4).unwrap();
    println!(
        "after the ground twist: verdict = {}, chain all_one = {all_one}",
        decide_dihedral(&td).unwrap().kind.as_str(),
    );
}
