//! Subfield lattices of quartic towers.
//!
//! Everything downstream works relative to quadratic pairs: a base field, an
//! extension containing it, the embedding, and the conjugation fixing the
//! embedded base.  Norm and trace go through the embedding's preimage, so a
//! wrong sign or a wrong monomial image fails loudly instead of silently.
//! Normalized steps keep every generator square at valuation 0 or 1, which
//! makes all the embeddings plain monomial maps with unit scale.

use std::sync::Arc;

use crate::error::Result;
use crate::padic::PAdicNumber;

use super::autos::{galois_type, Automorphism, GaloisType, QuarticGalois};
use super::field::{make_quadratic, mu_generator, FieldElement, TowerField};

/// Lift an element from any field below `field` in the same tower chain.
pub fn lift_to(field: &Arc<TowerField>, x: &FieldElement) -> FieldElement {
    if Arc::ptr_eq(field, x.field()) {
        return x.clone();
    }
    let base = field.base().expect("element does not live below the field");
    let below = lift_to(base, x);
    FieldElement::lift(field, &below)
}

fn field_at_level(field: &Arc<TowerField>, level: u32) -> Arc<TowerField> {
    let mut cur = field.clone();
    while cur.level() > level {
        let base = cur.base().unwrap().clone();
        cur = base;
    }
    assert_eq!(cur.level(), level);
    cur
}

/// A field embedding recorded as one scaled target monomial per source
/// monomial.  Every embedding in the lattices here has this shape.
pub struct Embedding {
    source: Arc<TowerField>,
    target: Arc<TowerField>,
    map: Vec<(usize, PAdicNumber)>,
}

impl Embedding {
    pub fn new(
        source: &Arc<TowerField>,
        target: &Arc<TowerField>,
        map: Vec<(usize, PAdicNumber)>,
    ) -> Embedding {
        assert_eq!(map.len(), source.degree() as usize);
        let mut targets: Vec<usize> = map.iter().map(|(t, _)| *t).collect();
        targets.sort_unstable();
        targets.dedup();
        assert_eq!(targets.len(), map.len(), "target monomials must be distinct");
        assert!(map.iter().all(|(_, s)| !s.is_zero()));
        let emb = Embedding {
            source: source.clone(),
            target: target.clone(),
            map,
        };
        assert!(
            emb.apply(&FieldElement::one(source)) == FieldElement::one(target),
            "embedding must fix 1"
        );
        for j in 0..source.level() {
            let sub = field_at_level(source, j + 1);
            let img = emb.apply(&FieldElement::monomial(source, 1 << j));
            let g = lift_to(source, sub.generator_square().unwrap());
            assert!(
                &img * &img == emb.apply(&g),
                "embedding breaks a generator relation"
            );
        }
        for idx in 0..source.degree() as usize {
            let mut acc = FieldElement::one(target);
            for j in 0..source.level() as usize {
                if (idx >> j) & 1 == 1 {
                    acc = &acc * &emb.apply(&FieldElement::monomial(source, 1 << j));
                }
            }
            assert!(
                emb.apply(&FieldElement::monomial(source, idx)) == acc,
                "monomial images must multiply out"
            );
        }
        emb
    }

    /// The inclusion of a step's base field.
    pub fn inclusion(ext: &Arc<TowerField>) -> Embedding {
        let base = ext.base().expect("inclusion needs a built step").clone();
        let one = PAdicNumber::one(ext.prime());
        let map = (0..base.degree() as usize).map(|i| (i, one.clone())).collect();
        Embedding::new(&base, ext, map)
    }

    pub fn source(&self) -> &Arc<TowerField> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TowerField> {
        &self.target
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(Arc::ptr_eq(x.field(), &self.source), "field mismatch");
        let mut coords = vec![PAdicNumber::zero(self.target.prime()); self.target.degree() as usize];
        for (c, (t, s)) in x.coords().iter().zip(&self.map) {
            if c.is_zero() {
                continue;
            }
            coords[*t] = c * s;
        }
        FieldElement::from_coords(&self.target, coords)
    }

    /// Exact preimage; None when the element is outside the embedded copy.
    pub fn preimage(&self, y: &FieldElement) -> Option<FieldElement> {
        assert!(Arc::ptr_eq(y.field(), &self.target), "field mismatch");
        let coords = self
            .map
            .iter()
            .map(|(t, s)| &y.coords()[*t] / s)
            .collect();
        let cand = FieldElement::from_coords(&self.source, coords);
        if self.apply(&cand) == *y {
            Some(cand)
        } else {
            None
        }
    }
}

/// A quadratic extension with its conjugation, seen inside a possibly larger
/// ambient field.
pub struct QuadraticPair {
    pub base: Arc<TowerField>,
    pub ext: Arc<TowerField>,
    pub embedding: Embedding,
    pub conj: Automorphism,
}

impl QuadraticPair {
    pub fn new(
        base: Arc<TowerField>,
        ext: Arc<TowerField>,
        embedding: Embedding,
        conj: Automorphism,
    ) -> QuadraticPair {
        assert!(Arc::ptr_eq(embedding.source(), &base));
        assert!(Arc::ptr_eq(embedding.target(), &ext));
        assert_eq!(ext.degree(), 2 * base.degree());
        assert!(conj.is_involution(), "conjugation must have order two");
        for i in 0..base.degree() as usize {
            let img = embedding.apply(&FieldElement::monomial(&base, i));
            assert!(
                conj.apply(&img) == img,
                "conjugation must fix the embedded base pointwise"
            );
        }
        QuadraticPair {
            base,
            ext,
            embedding,
            conj,
        }
    }

    /// The pair formed by a tower step and its top-root conjugation.
    pub fn from_step(ext: &Arc<TowerField>) -> QuadraticPair {
        let base = ext.base().expect("a step pair needs a built step").clone();
        let conj = Automorphism::negate_gamma(ext, ext.level() - 1);
        QuadraticPair::new(base, ext.clone(), Embedding::inclusion(ext), conj)
    }

    pub fn norm(&self, x: &FieldElement) -> FieldElement {
        let prod = x * &self.conj.apply(x);
        self.embedding
            .preimage(&prod)
            .expect("norm must land in the base")
    }

    pub fn trace(&self, x: &FieldElement) -> FieldElement {
        let s = x + &self.conj.apply(x);
        self.embedding
            .preimage(&s)
            .expect("trace must land in the base")
    }

    /// The first basis monomial negated by the conjugation.
    pub fn find_traceless(&self) -> FieldElement {
        for idx in 1..self.ext.degree() as usize {
            let m = FieldElement::monomial(&self.ext, idx);
            if self.conj.apply(&m) == -&m {
                return m;
            }
        }
        panic!("a quadratic pair always has a traceless monomial");
    }

    /// Generators of the norm group modulo principal units: the norm of a
    /// uniformizer and the norm of a residue generator.  For tame quadratic
    /// pairs the norms of principal units fill 1 + m of the base, so a tame
    /// character of the base is trivial on all norms iff it kills these two.
    pub fn norm_subgroup_gens(&self) -> Vec<FieldElement> {
        vec![
            self.norm(self.ext.uniformizer()),
            self.norm(mu_generator(&self.ext)),
        ]
    }
}

/// F inside K = F(sqrt d) inside L = K(sqrt d'), with the two other
/// quadratic subfields K' = F(sqrt d') and K'' = F(sqrt dd') and the three
/// conjugations of L.
pub struct BiquadLattice {
    pub f: Arc<TowerField>,
    pub k: Arc<TowerField>,
    pub l: Arc<TowerField>,
    pub k1: Arc<TowerField>,
    pub k2: Arc<TowerField>,
    pub over_k: QuadraticPair,
    pub over_k1: QuadraticPair,
    pub over_k2: QuadraticPair,
    pub k_over_f: QuadraticPair,
    pub k1_over_f: QuadraticPair,
    pub k2_over_f: QuadraticPair,
}

impl BiquadLattice {
    pub fn from_tower(l: &Arc<TowerField>) -> Result<BiquadLattice> {
        assert_eq!(l.level(), 2);
        let k = l.base().unwrap().clone();
        let f = k.base().unwrap().clone();
        let e = l.generator_square().unwrap();
        assert!(
            e.coords()[1].is_zero(),
            "biquadratic tower must have a ground-field generator square"
        );
        let d = k.generator_square().unwrap().coords()[0].clone();
        let e0 = e.coords()[0].clone();

        let k1 = make_quadratic(&f, &FieldElement::scalar(&f, e0.clone()))?;
        let k2 = make_quadratic(&f, &FieldElement::scalar(&f, &d * &e0))?;
        // normalized steps leave v(e0) and v(d*e0) in {0,1}, so neither new
        // field rescales its generator and both embeddings carry unit scale
        assert!(k1.generator_square().unwrap().coords()[0] == e0);
        assert!(k2.generator_square().unwrap().coords()[0] == &d * &e0);

        let one = PAdicNumber::one(l.prime());
        let emb_k1 = Embedding::new(&k1, l, vec![(0, one.clone()), (2, one.clone())]);
        let emb_k2 = Embedding::new(&k2, l, vec![(0, one.clone()), (3, one)]);

        let sigma = Automorphism::negate_gamma(l, 1);
        let sigma1 = Automorphism::negate_gamma(l, 0);
        let sigma2 = sigma.compose(&sigma1);

        let over_k = QuadraticPair::new(k.clone(), l.clone(), Embedding::inclusion(l), sigma);
        let over_k1 = QuadraticPair::new(k1.clone(), l.clone(), emb_k1, sigma1);
        let over_k2 = QuadraticPair::new(k2.clone(), l.clone(), emb_k2, sigma2);
        let k_over_f = QuadraticPair::from_step(&k);
        let k1_over_f = QuadraticPair::from_step(&k1);
        let k2_over_f = QuadraticPair::from_step(&k2);

        Ok(BiquadLattice {
            f,
            k,
            l: l.clone(),
            k1,
            k2,
            over_k,
            over_k1,
            over_k2,
            k_over_f,
            k1_over_f,
            k2_over_f,
        })
    }
}

/// F inside K inside L with Gal(L/F) cyclic of order four: the only proper
/// intermediate field is K, and the two order-four automorphisms extend the
/// conjugation of K over F.
pub struct CyclicQuartic {
    pub f: Arc<TowerField>,
    pub k: Arc<TowerField>,
    pub l: Arc<TowerField>,
    pub over_k: QuadraticPair,
    pub k_over_f: QuadraticPair,
    pub theta_exts: Vec<Automorphism>,
}

impl CyclicQuartic {
    pub fn from_tower(l: &Arc<TowerField>, galois: &QuarticGalois) -> CyclicQuartic {
        assert_eq!(galois.kind, GaloisType::CyclicQuartic);
        let k = l.base().unwrap().clone();
        let f = k.base().unwrap().clone();
        let sigma = galois.conj_over_intermediate().clone();
        let over_k = QuadraticPair::new(k.clone(), l.clone(), Embedding::inclusion(l), sigma);
        let k_over_f = QuadraticPair::from_step(&k);
        let theta_exts: Vec<Automorphism> =
            galois.order_four().into_iter().cloned().collect();
        assert_eq!(theta_exts.len(), 2);
        CyclicQuartic {
            f,
            k,
            l: l.clone(),
            over_k,
            k_over_f,
            theta_exts,
        }
    }
}

/// The non-Galois quartic, together with the auxiliary tower M = L(i) and
/// B = K(i) used to push characters into a Galois setting.  Such towers only
/// exist when the residue field has no fourth root of unity.
pub struct NonGaloisLattice {
    pub f: Arc<TowerField>,
    pub k: Arc<TowerField>,
    pub l: Arc<TowerField>,
    pub m: Arc<TowerField>,
    pub b: Arc<TowerField>,
    pub over_k: QuadraticPair,
    pub k_over_f: QuadraticPair,
    pub m_over_l: QuadraticPair,
    pub m_over_b: QuadraticPair,
    pub b_over_k: QuadraticPair,
}

impl NonGaloisLattice {
    pub fn from_tower(l: &Arc<TowerField>, galois: &QuarticGalois) -> Result<NonGaloisLattice> {
        assert_eq!(galois.kind, GaloisType::NonGaloisQuartic);
        let k = l.base().unwrap().clone();
        let f = k.base().unwrap().clone();
        let p = l.prime();
        assert_eq!(p % 4, 3, "a non-Galois tower forces q = 3 mod 4");
        assert_eq!(k.q(), p, "a non-Galois tower forces a ramified middle step");

        let over_k = QuadraticPair::new(
            k.clone(),
            l.clone(),
            Embedding::inclusion(l),
            galois.conj_over_intermediate().clone(),
        );
        let k_over_f = QuadraticPair::from_step(&k);

        let m = make_quadratic(l, &FieldElement::from_integer(l, -1))?;
        let b = make_quadratic(&k, &FieldElement::from_integer(&k, -1))?;

        let one = PAdicNumber::one(p);
        let emb_b_m = Embedding::new(
            &b,
            &m,
            vec![(0, one.clone()), (1, one.clone()), (4, one.clone()), (5, one)],
        );
        let m_over_l = QuadraticPair::from_step(&m);
        let m_over_b = QuadraticPair::new(
            b.clone(),
            m.clone(),
            emb_b_m,
            Automorphism::negate_gamma(&m, 1),
        );
        let b_over_k = QuadraticPair::from_step(&b);

        Ok(NonGaloisLattice {
            f,
            k,
            l: l.clone(),
            m,
            b,
            over_k,
            k_over_f,
            m_over_l,
            m_over_b,
            b_over_k,
        })
    }
}

pub enum LatticeContext {
    Biquadratic(BiquadLattice),
    Cyclic(CyclicQuartic),
    NonGalois(NonGaloisLattice),
}

/// Classify a quartic tower and assemble the matching subfield lattice.
pub fn classify_tower(l: &Arc<TowerField>) -> Result<LatticeContext> {
    let galois = galois_type(l);
    Ok(match galois.kind {
        GaloisType::Biquadratic => LatticeContext::Biquadratic(BiquadLattice::from_tower(l)?),
        GaloisType::CyclicQuartic => {
            LatticeContext::Cyclic(CyclicQuartic::from_tower(l, &galois))
        }
        GaloisType::NonGaloisQuartic => {
            LatticeContext::NonGalois(NonGaloisLattice::from_tower(l, &galois)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(base: &Arc<TowerField>, n: i64) -> Arc<TowerField> {
        make_quadratic(base, &FieldElement::from_integer(base, n)).unwrap()
    }

    fn biquad(p: u64, d: i64, d1: i64) -> BiquadLattice {
        let f = TowerField::qp(p);
        let k = quad(&f, d);
        let l = quad(&k, d1);
        BiquadLattice::from_tower(&l).unwrap()
    }

    #[test]
    fn biquadratic_lattice_shape() {
        let lat = biquad(3, 2, 3);
        assert_eq!(lat.k.q(), 9);
        assert_eq!(lat.k1.q(), 3);
        assert_eq!(lat.k1.ramification(), 2);
        assert_eq!(lat.k2.ramification(), 2);
        // sqrt(dd') with the canonical product choice
        let g2 = lat.over_k2.embedding.apply(&FieldElement::gamma(&lat.k2));
        assert_eq!(g2, FieldElement::monomial(&lat.l, 3));
        let sq = &g2 * &g2;
        assert_eq!(sq, FieldElement::from_integer(&lat.l, 6));
    }

    #[test]
    fn embedding_roundtrips() {
        let lat = biquad(3, 2, 3);
        let x = &FieldElement::gamma(&lat.k1).scale_integer(4) + &FieldElement::from_integer(&lat.k1, 7);
        let up = lat.over_k1.embedding.apply(&x);
        assert_eq!(lat.over_k1.embedding.preimage(&up).unwrap(), x);
        // something with a gamma0 component has no preimage in K'
        let outside = &up + &FieldElement::monomial(&lat.l, 1);
        assert!(lat.over_k1.embedding.preimage(&outside).is_none());
    }

    #[test]
    fn frozen_norms_across_the_lattice() {
        let lat = biquad(3, 2, 3);
        // N_{K/F}(gamma0) = -2, and the residue generator of the unramified
        // quadratic has norm -1
        assert_eq!(
            lat.k_over_f.norm(&FieldElement::gamma(&lat.k)),
            FieldElement::from_integer(&lat.f, -2)
        );
        assert_eq!(
            lat.k_over_f.norm(mu_generator(&lat.k)),
            FieldElement::from_integer(&lat.f, -1)
        );
        // N_{K'/F}(gamma') = -3
        assert_eq!(
            lat.k1_over_f.norm(&FieldElement::gamma(&lat.k1)),
            FieldElement::from_integer(&lat.f, -3)
        );
        // N_{L/K'}(gamma0) = -d seen inside K'
        let g0 = FieldElement::monomial(&lat.l, 1);
        assert_eq!(
            lat.over_k1.norm(&g0),
            FieldElement::from_integer(&lat.k1, -2)
        );
    }

    #[test]
    fn norm_transitivity_reaches_the_ground_field() {
        let lat = biquad(3, 2, 3);
        let x = &(&FieldElement::monomial(&lat.l, 3) + &FieldElement::monomial(&lat.l, 1).scale_integer(2))
            + &FieldElement::from_integer(&lat.l, 5);
        let through_k = lat.k_over_f.norm(&lat.over_k.norm(&x));
        assert_eq!(through_k.coords()[0], x.absolute_norm());
        let through_k1 = lat.k1_over_f.norm(&lat.over_k1.norm(&x));
        assert_eq!(through_k1.coords()[0], x.absolute_norm());
        let through_k2 = lat.k2_over_f.norm(&lat.over_k2.norm(&x));
        assert_eq!(through_k2.coords()[0], x.absolute_norm());
    }

    #[test]
    fn traceless_monomials() {
        let lat = biquad(3, 2, 3);
        assert_eq!(lat.over_k.find_traceless(), FieldElement::monomial(&lat.l, 2));
        assert_eq!(lat.over_k1.find_traceless(), FieldElement::monomial(&lat.l, 1));
        assert_eq!(lat.over_k2.find_traceless(), FieldElement::monomial(&lat.l, 1));
        assert_eq!(lat.k_over_f.find_traceless(), FieldElement::gamma(&lat.k));
    }

    #[test]
    fn norm_subgroup_gens_are_honest_norms() {
        let lat = biquad(3, 2, 3);
        for pair in [&lat.k_over_f, &lat.k1_over_f, &lat.k2_over_f, &lat.over_k] {
            for g in pair.norm_subgroup_gens() {
                assert!(!g.is_zero());
                // a norm times a norm is a norm: closure spot check
                let sq = &g * &g;
                assert!(!sq.is_zero());
            }
        }
        // uniformizer norm of the unramified step is the base uniformizer squared
        let gens = lat.k_over_f.norm_subgroup_gens();
        assert_eq!(gens[0], FieldElement::from_integer(&lat.f, 9));
    }

    #[test]
    fn cyclic_context_carries_the_order_four_extensions() {
        let f = TowerField::qp(5);
        let k = quad(&f, 5);
        let l = make_quadratic(&k, &FieldElement::gamma(&k)).unwrap();
        match classify_tower(&l).unwrap() {
            LatticeContext::Cyclic(cy) => {
                assert_eq!(cy.theta_exts.len(), 2);
                for theta in &cy.theta_exts {
                    assert_eq!(theta.order(), 4);
                    assert_eq!(&theta.compose(theta), &cy.over_k.conj);
                }
            }
            _ => panic!("fourth root of 5 over Q_5 is cyclic"),
        }
    }

    #[test]
    fn non_galois_context_builds_the_auxiliary_tower() {
        let f = TowerField::qp(3);
        let k = quad(&f, 3);
        let l = make_quadratic(&k, &FieldElement::gamma(&k)).unwrap();
        let lat = match classify_tower(&l).unwrap() {
            LatticeContext::NonGalois(ng) => ng,
            _ => panic!("fourth root of 3 over Q_3 is not Galois"),
        };
        assert_eq!(lat.m.ramification(), 4);
        assert_eq!(lat.m.residue_degree(), 2);
        assert_eq!(lat.b.q(), 9);
        assert_eq!(lat.b.ramification(), 2);
        // B and M share the copy of K
        assert!(Arc::ptr_eq(lat.b.base().unwrap(), &lat.k));
        // gamma1 in M is traceless over B and its norm is -gamma0
        let g1 = FieldElement::monomial(&lat.m, 2);
        assert_eq!(lat.m_over_b.find_traceless(), g1);
        assert_eq!(
            lat.m_over_b.norm(&g1),
            -&FieldElement::monomial(&lat.b, 1)
        );
        // i lives in both B and M compatibly
        let i_in_b = FieldElement::gamma(&lat.b);
        let img = lat.m_over_b.embedding.apply(&i_in_b);
        assert_eq!(&img * &img, FieldElement::from_integer(&lat.m, -1));
    }

    #[test]
    fn classify_dispatches_all_three_kinds() {
        let f = TowerField::qp(3);
        let k_u = quad(&f, 2);
        let k_r = quad(&f, 3);
        assert!(matches!(
            classify_tower(&quad(&k_u, 3)).unwrap(),
            LatticeContext::Biquadratic(_)
        ));
        assert!(matches!(
            classify_tower(&make_quadratic(&k_u, mu_generator(&k_u)).unwrap()).unwrap(),
            LatticeContext::Cyclic(_)
        ));
        assert!(matches!(
            classify_tower(&make_quadratic(&k_r, &FieldElement::gamma(&k_r)).unwrap())
                .unwrap(),
            LatticeContext::NonGalois(_)
        ));
    }
}
