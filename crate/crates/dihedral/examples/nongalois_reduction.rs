//! The fourth-root tower at p = 3 mod 4 is not Galois; decisions route
//! through its closure M = L(i).  This prints the closure's group
//! signature and shows the base-change reduction agreeing with the
//! decision made directly on the reduced lattice.

use std::sync::Arc;

use dihedral::chars::enumerate_chars;
use dihedral::distinction::{
    base_change_reduce, flicker_condition, plus_distinguished, BaseChangeOutcome, DihedralDatum,
};
use dihedral::tower::{
    classify_tower, enumerate_tower_automorphisms, group_signature, make_quadratic, FieldElement,
    LatticeContext, TowerField,
};

fn main() {
    let p = 3u64;
    let f = TowerField::qp(p);
    let k = make_quadratic(&f, &FieldElement::from_integer(&f, p as i64)).unwrap();
    let l = make_quadratic(&k, k.uniformizer()).unwrap();
    let context = Arc::new(classify_tower(&l).unwrap());
    let LatticeContext::NonGalois(ng) = &*context else {
        panic!("the fourth root of p is non-Galois at p = 3 mod 4");
    };

    let autos = enumerate_tower_automorphisms(&ng.m);
    let (order, invol, max_ord) = group_signature(&autos);
    println!("closure M = L(i): group order {order}, {invol} involutions, max element order {max_ord}");
    println!("(the dihedral group of order 8)\n");

    let mut agreed = 0u32;
    for omega in enumerate_chars(&l, 2) {
        let d = DihedralDatum::with_context(context.clone(), omega.clone()).unwrap();
        if !d.regular {
            continue;
        }
        let (plus, witness) = plus_distinguished(&d).unwrap();
        let BaseChangeOutcome::Reduced { tower, chi } = base_change_reduce(ng, &omega) else {
            panic!("tame characters always reduce over B");
        };
        let on_b = flicker_condition(&DihedralDatum::new(&tower, chi).unwrap()).unwrap();
        assert_eq!(plus, on_b);
        agreed += 1;
        println!(
            "omega (t={}, m={}): plus = {plus:<5}  {witness}",
            omega.at_uniformizer(),
            omega.residue_exponent(),
        );
    }
    println!("\nreduction agreed with the direct decision on all {agreed} regular characters");
}
