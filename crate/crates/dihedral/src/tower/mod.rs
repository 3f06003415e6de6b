//! Quadratic towers over Q_p: exact field arithmetic, Galois structure, and
//! the subfield lattices the distinction criteria run over.

pub mod autos;
pub mod field;
pub mod lattice;

pub use autos::{
    enumerate_automorphisms, enumerate_tower_automorphisms, galois_type, group_signature,
    integral_roots, Automorphism, GaloisType, Poly,
    QuarticGalois,
};
pub use field::{make_quadratic, mu_generator, FieldElement, TowerField};
pub use lattice::{
    classify_tower, lift_to, BiquadLattice, CyclicQuartic, Embedding, LatticeContext,
    NonGaloisLattice, QuadraticPair,
};
