//! The quadratic character of L/K restricted to the ground field: trivial
//! exactly on the biquadratic lattices, where F* lies inside the norms.
//! On the biquadratic side the three subfield characters obey the Klein
//! four-group law.

use dihedral::chars::eta_character;
use dihedral::padic::smallest_nonresidue;
use dihedral::tower::{classify_tower, make_quadratic, mu_generator, FieldElement, LatticeContext, TowerField};

fn main() {
    let p = 3u64;
    let u = smallest_nonresidue(p) as i64;
    let f = TowerField::qp(p);

    let quad = |base: &std::sync::Arc<TowerField>, n: i64| {
        make_quadratic(base, &FieldElement::from_integer(base, n)).unwrap()
    };

    println!("p = {p}");
    for (d, e0, label) in [
        (u, p as i64, "K=sqrt(u);L=sqrt(p)"),
        (u, u * p as i64, "K=sqrt(u);L=sqrt(up)"),
        (p as i64, u * p as i64, "K=sqrt(p);L=sqrt(up)"),
    ] {
        let l = quad(&quad(&f, d), e0);
        let LatticeContext::Biquadratic(lat) = classify_tower(&l).unwrap() else {
            panic!("distinct square classes give the biquadratic field");
        };
        let eta = eta_character(&lat.over_k);
        let on_f = eta.restrict(&lat.k_over_f.embedding);
        println!(
            "  {label:<22} eta(L/K)|F* trivial: {}",
            on_f.is_trivial()
        );

        let a = eta_character(&lat.k_over_f);
        let b = eta_character(&lat.k1_over_f);
        let c = eta_character(&lat.k2_over_f);
        println!("    Klein law eta_K * eta_K' = eta_K'': {}", a.mul(&b) == c);
    }

    // the cyclic quartic: the norms no longer swallow F*
    let k = quad(&f, u);
    let l = make_quadratic(&k, mu_generator(&k)).unwrap();
    let LatticeContext::Cyclic(cy) = classify_tower(&l).unwrap() else {
        panic!("the Teichmueller generator gives the unramified quartic");
    };
    let eta = eta_character(&cy.over_k);
    println!(
        "  {:<22} eta(L/K)|F* trivial: {}",
        "K=sqrt(u);L=sqrt(T)",
        eta.restrict(&cy.k_over_f.embedding).is_trivial()
    );
}
