//! Galois structure of quartic towers.
//!
//! The classifier takes the primitive element theta = gamma0 + gamma1, forms
//! its quartic minimal polynomial over the ground field, and counts the roots
//! that land back in the tower.  Roots are located digit by digit through the
//! residue field and polished by Newton once a simple-root bound holds; each
//! root yields an automorphism through the exact generator-image formulas.
//! A slower oracle that enumerates generator images with the tower square
//! root is kept alongside for cross-checks.

use std::sync::Arc;

use crate::padic::PAdicNumber;

use super::field::{res_mul, residue_rep, FieldElement, TowerField};

#[derive(Clone)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Coefficients from constant to leading; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty());
        Poly { coeffs }
    }

    pub fn field(&self) -> &Arc<TowerField> {
        self.coeffs[0].field()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::new(vec![FieldElement::zero(self.field())]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_integer(k as i64))
            .collect();
        Poly::new(coeffs)
    }

    /// Coefficients of f(c + s*y) as a polynomial in y.
    fn compose_linear(&self, c: &FieldElement, s: &FieldElement) -> Poly {
        let field = self.field();
        let mut out: Vec<FieldElement> = Vec::new();
        for a in self.coeffs.iter().rev() {
            let mut next = vec![FieldElement::zero(field); out.len() + 1];
            for (i, o) in out.iter().enumerate() {
                next[i] = &next[i] + &(o * c);
                next[i + 1] = &next[i + 1] + &(o * s);
            }
            next[0] = &next[0] + a;
            out = next;
        }
        Poly::new(out)
    }
}

fn strip_content(poly: &Poly) -> Poly {
    let m = poly
        .coeffs
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .expect("zero polynomial has no content");
    if m == 0 {
        return poly.clone();
    }
    let shift = poly.field().uniformizer().pow(-m);
    Poly::new(poly.coeffs.iter().map(|c| c * &shift).collect())
}

fn all_residue_vectors(field: &Arc<TowerField>) -> Vec<Vec<u64>> {
    let dim = field.residue_degree() as usize;
    let p = field.prime();
    let mut out = Vec::with_capacity(field.q() as usize);
    let mut cur = vec![0u64; dim];
    loop {
        out.push(cur.clone());
        let mut idx = dim;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            cur[idx] += 1;
            if cur[idx] < p {
                break;
            }
            cur[idx] = 0;
        }
    }
}

/// Roots of the reduction of a content-stripped integral polynomial,
/// found by scanning the residue field in pure digit arithmetic.
fn residue_roots(poly: &Poly) -> Vec<Vec<u64>> {
    let field = poly.field();
    let p = field.prime();
    let res_coeffs: Vec<Vec<u64>> = poly.coeffs.iter().map(|c| c.residue_coords()).collect();
    let mut out = Vec::new();
    for y in all_residue_vectors(field) {
        let mut acc = vec![0u64; field.residue_degree() as usize];
        for c in res_coeffs.iter().rev() {
            acc = res_mul(field, &acc, &y);
            for (a, b) in acc.iter_mut().zip(c) {
                *a = (*a + b) % p;
            }
        }
        if acc.iter().all(|&a| a == 0) {
            out.push(y);
        }
    }
    out
}

// Coordinate window for the exact rounding of Newton iterates.  Settling
// every round keeps each update inside a fresh full-precision window, so a
// step converging onto a root with a vanishing coordinate never
// half-cancels; the iteration self-corrects whatever the rounding drops.
const SETTLE_WINDOW: u32 = 24;

fn newton_refine(poly: &Poly, deriv: &Poly, seed: FieldElement) -> FieldElement {
    let field = seed.field().clone();
    let stop = 10 * field.ramification() as i64;
    let mut x = seed.settle(SETTLE_WINDOW);
    let mut fuel = 64;
    loop {
        let fx = poly.eval(&x);
        if fx.is_zero() {
            break;
        }
        let dfx = deriv.eval(&x);
        let delta = (&fx / &dfx).settle(SETTLE_WINDOW);
        x = (&x - &delta).settle(SETTLE_WINDOW);
        if delta.valuation().is_none_or(|v| v >= stop) {
            break;
        }
        fuel -= 1;
        assert!(fuel > 0, "root refinement did not converge");
    }
    // the final correction is past 10e, so 14 coordinate digits are certain
    x.truncate_digits(14);
    x
}

/// All integral roots of the polynomial in its own field, separable case.
pub fn integral_roots(poly: &Poly) -> Vec<FieldElement> {
    let stripped = strip_content(poly);
    roots_rec(&stripped, 0)
}

fn roots_rec(poly: &Poly, depth: u32) -> Vec<FieldElement> {
    assert!(depth < 64, "root search did not separate the roots");
    let field = poly.field().clone();
    let pi = field.uniformizer().clone();
    let deriv = poly.derivative();
    let mut out = Vec::new();
    for rvec in residue_roots(poly) {
        let c = residue_rep(&field, &rvec);
        let fc = poly.eval(&c);
        if fc.is_zero() {
            // a root on the nose at working precision
            out.push(c);
            continue;
        }
        let vf = fc.valuation().unwrap();
        let dfc = deriv.eval(&c);
        let strong = dfc.valuation().is_some_and(|vd| vf > 2 * vd);
        if strong {
            out.push(newton_refine(poly, &deriv, c));
        } else {
            let shifted = strip_content(&poly.compose_linear(&c, &pi));
            for y in roots_rec(&shifted, depth + 1) {
                out.push(&c + &(&pi * &y));
            }
        }
    }
    assert!(out.len() <= poly.degree());
    out
}

/// A field automorphism stored as the images of the basis monomials.
#[derive(Clone)]
pub struct Automorphism {
    field: Arc<TowerField>,
    cols: Vec<FieldElement>,
}

impl Automorphism {
    pub fn identity(field: &Arc<TowerField>) -> Automorphism {
        let cols = (0..field.degree() as usize)
            .map(|i| FieldElement::monomial(field, i))
            .collect();
        Automorphism {
            field: field.clone(),
            cols,
        }
    }

    /// Build from the images of the step generators; monomial images are the
    /// corresponding products, so the map is multiplicative by construction.
    pub fn from_generator_images(field: &Arc<TowerField>, images: &[FieldElement]) -> Automorphism {
        assert_eq!(images.len(), field.level() as usize);
        let cols = (0..field.degree() as usize)
            .map(|idx| {
                let mut acc = FieldElement::one(field);
                for (j, img) in images.iter().enumerate() {
                    if (idx >> j) & 1 == 1 {
                        acc = &acc * img;
                    }
                }
                acc
            })
            .collect();
        Automorphism {
            field: field.clone(),
            cols,
        }
    }

    /// The involution gamma_j -> -gamma_j.  Only valid when no higher step
    /// generator square involves gamma_j.
    pub fn negate_gamma(field: &Arc<TowerField>, j: u32) -> Automorphism {
        assert!(j < field.level());
        let mut cur = field.clone();
        while cur.level() > j + 1 {
            let g = cur.generator_square().unwrap();
            for (idx, c) in g.coords().iter().enumerate() {
                assert!(
                    (idx >> j) & 1 == 0 || c.is_zero(),
                    "a higher step generator depends on the negated root"
                );
            }
            let base = cur.base().unwrap().clone();
            cur = base;
        }
        let images: Vec<FieldElement> = (0..field.level())
            .map(|i| {
                let m = FieldElement::monomial(field, 1 << i);
                if i == j {
                    -&m
                } else {
                    m
                }
            })
            .collect();
        Self::from_generator_images(field, &images)
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn image_of_monomial(&self, idx: usize) -> &FieldElement {
        &self.cols[idx]
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(Arc::ptr_eq(&self.field, x.field()), "field mismatch");
        let mut acc = FieldElement::zero(&self.field);
        for (c, col) in x.coords().iter().zip(&self.cols) {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &col.scale(c);
        }
        acc
    }

    /// self after other: (self.compose(other))(x) = self(other(x)).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert!(Arc::ptr_eq(&self.field, &other.field));
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Automorphism {
            field: self.field.clone(),
            cols,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(i, c)| c == &FieldElement::monomial(&self.field, i))
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn order(&self) -> u32 {
        let mut acc = self.clone();
        for k in 1..=8 {
            if acc.is_identity() {
                return k;
            }
            acc = acc.compose(self);
        }
        panic!("automorphism order exceeds 8");
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
            && self.cols.iter().zip(&other.cols).all(|(a, b)| a == b)
    }
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism[")?;
        for j in 0..self.field.level() as usize {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "g{} -> {}", j, self.cols[1 << j])?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GaloisType {
    Biquadratic,
    CyclicQuartic,
    NonGaloisQuartic,
}

pub struct QuarticGalois {
    pub kind: GaloisType,
    /// All ground-field automorphisms of the tower: 4 in the Galois cases,
    /// 2 otherwise.  Contains the identity.
    pub autos: Vec<Automorphism>,
}

impl QuarticGalois {
    /// The nontrivial automorphism fixing the intermediate quadratic field.
    pub fn conj_over_intermediate(&self) -> &Automorphism {
        self.autos
            .iter()
            .find(|a| {
                !a.is_identity()
                    && a.image_of_monomial(1) == &FieldElement::monomial(a.field(), 1)
            })
            .expect("the quadratic step always has its conjugation")
    }

    pub fn order_four(&self) -> Vec<&Automorphism> {
        self.autos.iter().filter(|a| a.order() == 4).collect()
    }
}

/// Classify a two-step tower over Q_p and return its automorphisms.
pub fn galois_type(l: &Arc<TowerField>) -> QuarticGalois {
    assert_eq!(l.level(), 2, "classification expects a quartic tower");
    let k = l.base().unwrap();
    assert_eq!(k.level(), 1);
    let p = l.prime();

    let d = k.generator_square().unwrap().coords()[0].clone();
    let e = l.generator_square().unwrap();
    let e0 = e.coords()[0].clone();
    let e1 = e.coords()[1].clone();

    // theta = gamma0 + gamma1 is primitive; with A = d - e0 its minimal
    // polynomial over Q_p is x^4 + (2A - 4d) x^2 - 4 d e1 x + (A^2 - d e1^2)
    let theta = &FieldElement::monomial(l, 1) + &FieldElement::monomial(l, 2);
    let a = &d - &e0;
    let two = PAdicNumber::from_integer(p, 2);
    let four = PAdicNumber::from_integer(p, 4);
    let c2 = &(&two * &a) - &(&four * &d);
    let c1 = -&(&(&four * &d) * &e1);
    let c0 = &(&a * &a) - &(&(&d * &e1) * &e1);
    let scal = |c: &PAdicNumber| FieldElement::scalar(l, c.clone());
    let poly = Poly::new(vec![
        scal(&c0),
        scal(&c1),
        scal(&c2),
        FieldElement::zero(l),
        FieldElement::one(l),
    ]);
    let at_theta = poly.eval(&theta);
    assert!(
        at_theta.is_zero(),
        "primitive element must satisfy its minimal polynomial"
    );

    let roots = integral_roots(&poly);
    assert!(
        roots.len() == 2 || roots.len() == 4,
        "a quadratic step always contributes two roots, got {}",
        roots.len()
    );
    assert!(
        roots.iter().any(|r| r == &theta),
        "theta itself must be recovered as a root"
    );

    let d_l = scal(&d);
    let e1_l = scal(&e1);
    let autos: Vec<Automorphism> = roots
        .iter()
        .map(|r| {
            // theta^2 + A = gamma0 (2 theta + e1) pins the generator images
            let denom = &r.scale_integer(2) + &e1_l;
            let img0 = &(&(r * r) + &scal(&a)) / &denom;
            let img1 = r - &img0;
            assert_eq!(&img0 * &img0, d_l, "image of gamma0 squares to d");
            let e_img = &scal(&e0) + &img0.scale(&e1);
            assert_eq!(&img1 * &img1, e_img, "image of gamma1 squares to e");
            Automorphism::from_generator_images(l, &[img0, img1])
        })
        .collect();

    let mut orders: Vec<u32> = autos.iter().map(|a| a.order()).collect();
    orders.sort_unstable();
    let kind = if roots.len() == 2 {
        assert_eq!(orders, vec![1, 2]);
        GaloisType::NonGaloisQuartic
    } else if orders == vec![1, 2, 4, 4] {
        GaloisType::CyclicQuartic
    } else {
        assert_eq!(orders, vec![1, 2, 2, 2]);
        GaloisType::Biquadratic
    };
    QuarticGalois { kind, autos }
}

/// Oracle: find every ground-field automorphism by enumerating generator
/// images with the tower square root.  Independent of the minimal-polynomial
/// path above.
pub fn enumerate_automorphisms(l: &Arc<TowerField>) -> Vec<Automorphism> {
    assert_eq!(l.level(), 2);
    let k = l.base().unwrap();
    let e = l.generator_square().unwrap();
    let e0 = FieldElement::scalar(l, e.coords()[0].clone());
    let e1 = e.coords()[1].clone();
    let d_in_l = FieldElement::scalar(
        l,
        k.generator_square().unwrap().coords()[0].clone(),
    );
    let mut out = Vec::new();
    for a in d_in_l.sqrt_all() {
        let e_img = &e0 + &a.scale(&e1);
        for b in e_img.sqrt_all() {
            out.push(Automorphism::from_generator_images(l, &[a.clone(), b]));
        }
    }
    out
}

// Apply a partial generator-image assignment to an element supported on
// monomials built from the already-assigned generators.
fn apply_images(
    field: &Arc<TowerField>,
    images: &[FieldElement],
    x: &FieldElement,
) -> FieldElement {
    let mut out = FieldElement::zero(field);
    for (m, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        assert_eq!(m >> images.len(), 0, "monomial uses an unassigned generator");
        let mut term = FieldElement::scalar(field, c.clone());
        for (j, img) in images.iter().enumerate() {
            if (m >> j) & 1 == 1 {
                term = &term * img;
            }
        }
        out = &out + &term;
    }
    out
}

/// All automorphisms of the tower over the ground field, at any level:
/// each step generator is sent to a square root of the image of its square,
/// assigned from the bottom of the chain upward.
pub fn enumerate_tower_automorphisms(field: &Arc<TowerField>) -> Vec<Automorphism> {
    let mut squares = Vec::new();
    let mut cur = field.clone();
    while let Some(g) = cur.generator_square() {
        // lift the step's square all the way up to the ambient field
        let mut lifted = g.clone();
        let mut at = g.field().clone();
        while !Arc::ptr_eq(&at, field) {
            let up = chain_step_above(field, &at);
            lifted = FieldElement::lift(&up, &lifted);
            at = up;
        }
        squares.push(lifted);
        let base = cur.base().unwrap().clone();
        cur = base;
    }
    squares.reverse();
    let mut partials: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for gj in &squares {
        let mut next = Vec::new();
        for imgs in &partials {
            let target = apply_images(field, imgs, gj);
            for root in target.sqrt_all() {
                let mut extended = imgs.clone();
                extended.push(root);
                next.push(extended);
            }
        }
        partials = next;
    }
    partials
        .into_iter()
        .map(|imgs| Automorphism::from_generator_images(field, &imgs))
        .collect()
}

// The field one step above `below` on the chain from `top` downward.
fn chain_step_above(top: &Arc<TowerField>, below: &Arc<TowerField>) -> Arc<TowerField> {
    let mut cur = top.clone();
    loop {
        let base = cur.base().expect("not on the chain").clone();
        if Arc::ptr_eq(&base, below) {
            return cur;
        }
        cur = base;
    }
}

/// (size, involution count, maximal element order) of an automorphism list.
/// The dihedral group of order 8 reads (8, 5, 4); the quaternion group, by
/// contrast, would read (8, 1, 4).
pub fn group_signature(autos: &[Automorphism]) -> (usize, usize, u32) {
    let size = autos.len();
    let involutions = autos.iter().filter(|a| a.is_involution()).count();
    let max_order = autos.iter().map(|a| a.order()).max().unwrap_or(1);
    (size, involutions, max_order)
}
