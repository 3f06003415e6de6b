//! Build every constructible quadratic tower over Q3 and Q5 and classify
//! its Galois type, cross-checked against raw automorphism counting.

use std::sync::Arc;

use dihedral::padic::smallest_nonresidue;
use dihedral::tower::{
    enumerate_automorphisms, galois_type, make_quadratic, mu_generator, FieldElement, TowerField,
};

fn main() {
    for p in [3u64, 5] {
        let u = smallest_nonresidue(p) as i64;
        let f = TowerField::qp(p);
        println!("p = {p}  (u = {u})");
        for (d, d_name) in [(u, "u"), (p as i64, "p"), (u * p as i64, "up")] {
            let k = make_quadratic(&f, &FieldElement::from_integer(&f, d)).unwrap();
            let gens: Vec<(FieldElement, String)> = vec![
                (FieldElement::from_integer(&k, u), "u".into()),
                (FieldElement::from_integer(&k, p as i64), "p".into()),
                (FieldElement::from_integer(&k, u * p as i64), "up".into()),
                (mu_generator(&k).clone(), "T".into()),
                (k.uniformizer().clone(), "pi".into()),
            ];
            for (g, g_name) in gens {
                let Ok(l) = make_quadratic(&k, &g) else {
                    continue; // g is a square in K, no tower
                };
                describe(&l, &format!("K=sqrt({d_name});L=sqrt({g_name})"));
            }
        }
        println!();
    }
}

fn describe(l: &Arc<TowerField>, label: &str) {
    let g = galois_type(l);
    let autos = enumerate_automorphisms(l);
    // automorphism count must agree with the classification
    let expected = match autos.len() {
        2 => "non-galois",
        4 => {
            if autos.iter().any(|s| s.order() == 4) {
                "cyclic"
            } else {
                "biquadratic"
            }
        }
        n => panic!("a quartic tower cannot have {n} automorphisms"),
    };
    println!(
        "  {label:<24} {:?}  e = {}, f = {}  ({} automorphisms, {expected})",
        g.kind,
        l.ramification(),
        l.residue_degree(),
        autos.len(),
    );
}
