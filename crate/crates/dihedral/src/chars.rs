//! Tame multiplicative characters of tower fields.
//!
//! A tame character is trivial on principal units, so it is pinned down by
//! its values on one uniformizer and one residue generator.  We store the
//! value at the field's canonical uniformizer as an exact element of Q/Z and
//! the value at the canonical residue generator as an exponent m, meaning
//! mu |-> m/(q-1).  Every operation below (restriction, norm pullback,
//! conjugation, descent) reduces to evaluating on those two generators, and
//! evaluation itself only needs the valuation and residue digits of its
//! argument, so verdicts never touch floating point or lossy precision.

use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;

use crate::cyclo::CycloValue;
use crate::tower::{
    mu_generator, Automorphism, Embedding, FieldElement, QuadraticPair, TowerField,
};

#[derive(Clone)]
pub struct MultChar {
    field: Arc<TowerField>,
    t: CycloValue,
    m: u64,
}

impl MultChar {
    pub fn new(field: &Arc<TowerField>, t: CycloValue, m: u64) -> MultChar {
        let q1 = field.q() - 1;
        MultChar {
            field: field.clone(),
            t,
            m: m % q1,
        }
    }

    pub fn trivial(field: &Arc<TowerField>) -> MultChar {
        MultChar::new(field, CycloValue::zero(), 0)
    }

    /// Reconstruct a tame character from its values at the uniformizer and
    /// at the residue generator.  The latter must be a (q-1)-th root.
    pub fn from_values(field: &Arc<TowerField>, at_pi: CycloValue, at_mu: CycloValue) -> MultChar {
        let q1 = (field.q() - 1) as i64;
        let den = at_mu.denom();
        assert!(
            q1 % den == 0,
            "residue value of order {den} does not divide q-1 = {q1}"
        );
        let m = (at_mu.numer() * (q1 / den)).rem_euclid(q1) as u64;
        MultChar::new(field, at_pi, m)
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    /// Value at the canonical uniformizer.
    pub fn at_uniformizer(&self) -> CycloValue {
        self.t
    }

    /// Exponent at the canonical residue generator: mu |-> m/(q-1).
    pub fn residue_exponent(&self) -> u64 {
        self.m
    }

    pub fn at_mu(&self) -> CycloValue {
        CycloValue::new(self.m as i64, (self.field.q() - 1) as i64)
    }

    pub fn eval(&self, x: &FieldElement) -> CycloValue {
        assert!(Arc::ptr_eq(x.field(), &self.field), "field mismatch");
        let (v, k) = x.decompose();
        let q1 = (self.field.q() - 1) as i64;
        self.t.scale(v) + CycloValue::new(self.m as i64 * k as i64, q1)
    }

    pub fn is_trivial(&self) -> bool {
        self.t.is_zero() && self.m == 0
    }

    pub fn is_trivial_on(&self, xs: &[FieldElement]) -> bool {
        xs.iter().all(|x| self.eval(x).is_zero())
    }

    pub fn order(&self) -> u64 {
        let q1 = self.field.q() - 1;
        let mo = if self.m == 0 { 1 } else { q1 / self.m.gcd(&q1) };
        self.t.order().lcm(&mo)
    }

    pub fn mul(&self, other: &MultChar) -> MultChar {
        assert!(Arc::ptr_eq(&self.field, &other.field));
        MultChar::new(&self.field, self.t + other.t, self.m + other.m)
    }

    pub fn inverse(&self) -> MultChar {
        let q1 = self.field.q() - 1;
        MultChar::new(&self.field, -self.t, (q1 - self.m) % q1)
    }

    /// The character x |-> self(sigma(x)).
    pub fn conjugate(&self, sigma: &Automorphism) -> MultChar {
        assert!(Arc::ptr_eq(sigma.field(), &self.field));
        let at_pi = self.eval(&sigma.apply(self.field.uniformizer()));
        let at_mu = self.eval(&sigma.apply(mu_generator(&self.field)));
        MultChar::from_values(&self.field, at_pi, at_mu)
    }

    pub fn is_invariant_under(&self, sigma: &Automorphism) -> bool {
        self == &self.conjugate(sigma)
    }

    /// Pull back along an embedding: the character of the source field.
    pub fn restrict(&self, emb: &Embedding) -> MultChar {
        assert!(Arc::ptr_eq(emb.target(), &self.field));
        let source = emb.source();
        let at_pi = self.eval(&emb.apply(source.uniformizer()));
        let at_mu = self.eval(&emb.apply(mu_generator(source)));
        MultChar::from_values(source, at_pi, at_mu)
    }

    /// Push a character of the pair's base up to the extension through the
    /// norm: x |-> self(N(x)).
    pub fn compose_with_norm(&self, pair: &QuadraticPair) -> MultChar {
        assert!(Arc::ptr_eq(&pair.base, &self.field));
        let at_pi = self.eval(&pair.norm(pair.ext.uniformizer()));
        let at_mu = self.eval(&pair.norm(mu_generator(&pair.ext)));
        MultChar::from_values(&pair.ext, at_pi, at_mu)
    }
}

impl PartialEq for MultChar {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.t == other.t && self.m == other.m
    }
}

impl std::fmt::Display for MultChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(pi -> {}, mu -> {}/{})", self.t, self.m, self.field.q() - 1)
    }
}

impl std::fmt::Debug for MultChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// The order-two character of the base whose kernel is exactly the norm
/// group of the pair.
pub fn eta_character(pair: &QuadraticPair) -> MultChar {
    let q1 = pair.base.q() - 1;
    let gens = pair.norm_subgroup_gens();
    let mut found = Vec::new();
    for t_num in [0i64, 1] {
        for m in [0u64, q1 / 2] {
            let chi = MultChar::new(&pair.base, CycloValue::new(t_num, 2), m);
            if !chi.is_trivial() && chi.is_trivial_on(&gens) {
                found.push(chi);
            }
        }
    }
    assert_eq!(
        found.len(),
        1,
        "exactly one nontrivial quadratic character kills the norms"
    );
    found.pop().unwrap()
}

/// A character of the extension is regular when it differs from its
/// conjugate under the pair's conjugation.
pub fn is_regular(omega: &MultChar, pair: &QuadraticPair) -> bool {
    assert!(Arc::ptr_eq(omega.field(), &pair.ext));
    !omega.is_invariant_under(&pair.conj)
}

/// Solve omega = mu o N for a conjugation-invariant omega.  Returns the two
/// solutions sorted, which always differ by the pair's eta.
pub fn descend(omega: &MultChar, pair: &QuadraticPair) -> (MultChar, MultChar) {
    assert!(Arc::ptr_eq(omega.field(), &pair.ext));
    assert!(
        omega.is_invariant_under(&pair.conj),
        "descent needs a conjugation-invariant character"
    );
    let n_pi = pair.norm(pair.ext.uniformizer());
    let n_mu = pair.norm(mu_generator(&pair.ext));
    let target_pi = omega.eval(pair.ext.uniformizer());
    let target_mu = omega.eval(mu_generator(&pair.ext));
    let q1 = pair.base.q() - 1;
    let (v1, k1) = n_pi.decompose();
    assert!(v1 >= 1);
    let mut found = Vec::new();
    for m in 0..q1 {
        // v1 * t + k1 * m / q1 = target_pi pins t up to a v1-th root
        let rhs = target_pi - CycloValue::new(k1 as i64 * m as i64, q1 as i64);
        for j in 0..v1 {
            let t = CycloValue::from_ratio(Ratio::new(
                rhs.numer() + j * rhs.denom(),
                rhs.denom() * v1,
            ));
            let mu = MultChar::new(&pair.base, t, m);
            if mu.eval(&n_pi) == target_pi && mu.eval(&n_mu) == target_mu {
                found.push(mu);
            }
        }
    }
    found.sort_by_key(|c| (c.t.ratio(), c.m));
    assert_eq!(found.len(), 2, "a norm pullback has exactly two preimages");
    let second = found.pop().unwrap();
    let first = found.pop().unwrap();
    assert!(
        second == first.mul(&eta_character(pair)),
        "the two descents differ by eta"
    );
    (first, second)
}

/// A character of the extension restricting to `mu` on the embedded base,
/// chosen canonically: smallest order, then smallest values.
pub fn extend_character(mu: &MultChar, pair: &QuadraticPair) -> MultChar {
    assert!(Arc::ptr_eq(mu.field(), &pair.base));
    let e_pi = pair.embedding.apply(pair.base.uniformizer());
    let e_mu = pair.embedding.apply(mu_generator(&pair.base));
    let want_pi = mu.eval(pair.base.uniformizer());
    let want_mu = mu.eval(mu_generator(&pair.base));
    let q1 = pair.ext.q() - 1;
    let mut candidates = Vec::new();
    for t in CycloValue::all_with_denominator_up_to(2 * mu.order()) {
        for m in 0..q1 {
            let chi = MultChar::new(&pair.ext, t, m);
            if chi.eval(&e_pi) == want_pi && chi.eval(&e_mu) == want_mu {
                candidates.push(chi);
            }
        }
    }
    assert!(!candidates.is_empty(), "an index-two extension always exists");
    candidates.sort_by_key(|c| (c.order(), c.t.ratio(), c.m));
    candidates.into_iter().next().unwrap()
}

/// All tame characters with uniformizer value of denominator at most
/// `max_den`, in a deterministic order.
pub fn enumerate_chars(field: &Arc<TowerField>, max_den: u64) -> Vec<MultChar> {
    let q1 = field.q() - 1;
    let mut out = Vec::new();
    for t in CycloValue::all_with_denominator_up_to(max_den) {
        for m in 0..q1 {
            out.push(MultChar::new(field, t, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{hilbert_symbol, PAdicNumber, SquareClass};
    use crate::tower::{make_quadratic, BiquadLattice};

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
    fn evaluation_is_multiplicative() {
        let lat = biquad(3, 2, 3);
        let chi = MultChar::new(&lat.l, CycloValue::new(1, 4), 3);
        let x = &FieldElement::monomial(&lat.l, 3) + &FieldElement::from_integer(&lat.l, 2);
        let y = &FieldElement::monomial(&lat.l, 1) + &FieldElement::monomial(&lat.l, 2);
        assert_eq!(chi.eval(&(&x * &y)), chi.eval(&x) + chi.eval(&y));
        assert_eq!(chi.eval(&x.inv()), -chi.eval(&x));
        assert!(chi.eval(&FieldElement::one(&lat.l)).is_zero());
        // principal units are invisible to tame characters
        let u = &FieldElement::one(&lat.l) + &lat.l.uniformizer().scale_integer(5);
        assert!(chi.eval(&u).is_zero());
    }

    #[test]
    fn frozen_eta_values_at_three() {
        let lat = biquad(3, 2, 3);
        let eta_k = eta_character(&lat.k_over_f);
        assert_eq!(eta_k.at_uniformizer(), CycloValue::half());
        assert_eq!(eta_k.residue_exponent(), 0);
        let eta_k1 = eta_character(&lat.k1_over_f);
        assert_eq!(eta_k1.at_uniformizer(), CycloValue::half());
        assert_eq!(eta_k1.residue_exponent(), 1);
        let eta_k2 = eta_character(&lat.k2_over_f);
        assert_eq!(eta_k2.at_uniformizer(), CycloValue::zero());
        assert_eq!(eta_k2.residue_exponent(), 1);
    }

    #[test]
    fn eta_matches_the_hilbert_symbol() {
        for p in [3u64, 5, 7] {
            let f = TowerField::qp(p);
            for dc in [SquareClass::U, SquareClass::Pi, SquareClass::UPi] {
                let d = dc.representative(p);
                let pair = QuadraticPair::from_step(&quad(&f, d));
                let eta = eta_character(&pair);
                let d_p = PAdicNumber::from_integer(p, d);
                for ac in SquareClass::all() {
                    let a = ac.representative(p);
                    let sym = hilbert_symbol(&PAdicNumber::from_integer(p, a), &d_p).unwrap();
                    let val = eta.eval(&FieldElement::from_integer(&f, a));
                    assert_eq!(
                        val.is_zero(),
                        sym == 1,
                        "eta vs norm symbol at p={p}, d={d}, a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn eta_characters_multiply_like_the_subfields() {
        for (p, d, d1) in [(3u64, 2i64, 3i64), (3, 3, 2), (5, 2, 5), (7, 3, 7)] {
            let lat = biquad(p, d, d1);
            let a = eta_character(&lat.k_over_f);
            let b = eta_character(&lat.k1_over_f);
            let c = eta_character(&lat.k2_over_f);
            assert_eq!(a.mul(&b), c, "Klein four law at p={p}, d={d}, d'={d1}");
        }
    }

    #[test]
    fn norm_pullback_agrees_pointwise() {
        let lat = biquad(3, 2, 3);
        let mu = MultChar::new(&lat.k, CycloValue::new(1, 3), 5);
        let omega = mu.compose_with_norm(&lat.over_k);
        for x in [
            FieldElement::monomial(&lat.l, 3),
            &FieldElement::monomial(&lat.l, 1) + &FieldElement::from_integer(&lat.l, 1),
            lat.l.uniformizer().clone(),
        ] {
            assert_eq!(omega.eval(&x), mu.eval(&lat.over_k.norm(&x)));
        }
        assert!(omega.is_invariant_under(&lat.over_k.conj));
    }

    #[test]
    fn descent_recovers_the_source() {
        for (p, d, d1) in [(3u64, 2i64, 3i64), (3, 3, 2), (5, 5, 2)] {
            let lat = biquad(p, d, d1);
            for pair in [&lat.over_k, &lat.over_k1] {
                let q1 = pair.base.q() - 1;
                let mu = MultChar::new(&pair.base, CycloValue::new(1, 4), q1 / 2 + 1);
                let omega = mu.compose_with_norm(pair);
                let (lo, hi) = descend(&omega, pair);
                assert!(mu == lo || mu == hi, "descent must recover the source");
                assert_eq!(hi, lo.mul(&eta_character(pair)));
                // both descents pull back to the same character
                assert_eq!(lo.compose_with_norm(pair), omega);
                assert_eq!(hi.compose_with_norm(pair), omega);
            }
        }
    }

    #[test]
    fn restriction_to_the_ground_field_is_path_independent() {
        let lat = biquad(3, 2, 3);
        let chi = MultChar::new(&lat.l, CycloValue::new(3, 8), 5);
        let through_k = chi
            .restrict(&lat.over_k.embedding)
            .restrict(&lat.k_over_f.embedding);
        let through_k1 = chi
            .restrict(&lat.over_k1.embedding)
            .restrict(&lat.k1_over_f.embedding);
        let through_k2 = chi
            .restrict(&lat.over_k2.embedding)
            .restrict(&lat.k2_over_f.embedding);
        assert_eq!(through_k, through_k1);
        assert_eq!(through_k, through_k2);
    }

    #[test]
    fn conjugation_squares_to_the_identity_on_characters() {
        let lat = biquad(3, 2, 3);
        let chi = MultChar::new(&lat.l, CycloValue::new(1, 8), 3);
        let twice = chi.conjugate(&lat.over_k.conj).conjugate(&lat.over_k.conj);
        assert_eq!(chi, twice);
        assert!(is_regular(&chi, &lat.over_k) || chi.is_invariant_under(&lat.over_k.conj));
    }

    #[test]
    fn extension_restricts_back() {
        let lat = biquad(3, 2, 3);
        let eta = eta_character(&lat.k_over_f);
        let chi = extend_character(&eta, &lat.k_over_f);
        assert_eq!(chi.restrict(&lat.k_over_f.embedding), eta);
        assert_eq!(chi.order(), 2, "a quadratic character extends quadratically here");
        let tr = extend_character(&MultChar::trivial(&lat.f), &lat.k_over_f);
        assert!(tr.is_trivial(), "the canonical extension of 1 is 1");
    }

    #[test]
    fn enumeration_counts_and_determinism() {
        let f = TowerField::qp(3);
        let k = quad(&f, 2);
        let all = enumerate_chars(&k, 8);
        assert_eq!(all.len(), 22 * 8);
        let again = enumerate_chars(&k, 8);
        assert!(all.iter().zip(&again).all(|(a, b)| a == b));
        let regular: Vec<_> = {
            let pair = QuadraticPair::from_step(&k);
            all.iter().filter(|c| is_regular(c, &pair)).collect()
        };
        assert!(!regular.is_empty());
    }
}
