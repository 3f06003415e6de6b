//! Sweep the tame characters of a biquadratic lattice (one per conjugate
//! pair) and print the distinction verdict for each.

use dihedral::distinction::{enumerate_verdicts, DihedralDatum, VerdictKind};
use dihedral::tower::{make_quadratic, FieldElement, TowerField};

fn main() {
    let f = TowerField::qp(3);
    let k = make_quadratic(&f, &FieldElement::from_integer(&f, 3)).unwrap();
    let l = make_quadratic(&k, &FieldElement::from_integer(&k, 2)).unwrap();

    let max_den = 4;
    let rows = enumerate_verdicts(&l, max_den).unwrap();
    println!("K=sqrt(p);L=sqrt(u) at p = 3, denominators <= {max_den}");
    println!("{:<8}{:<4}{:<9}{:<19}witness", "t", "m", "regular", "verdict");
    let mut counts = [0u32; 3];
    for (omega, v) in &rows {
        let d = DihedralDatum::new(&l, omega.clone()).unwrap();
        counts[match v.kind {
            VerdictKind::Distinguished => 0,
            VerdictKind::EtaDistinguished => 1,
            VerdictKind::NotDistinguished => 2,
        }] += 1;
        println!(
            "{:<8}{:<4}{:<9}{:<19}{}",
            omega.at_uniformizer().to_string(),
            omega.residue_exponent(),
            if d.regular { "yes" } else { "no" },
            v.kind.as_str(),
            v.witness,
        );
    }
    println!(
        "\n{} characters: {} distinguished, {} eta-distinguished, {} neither",
        rows.len(),
        counts[0],
        counts[1],
        counts[2],
    );
}
