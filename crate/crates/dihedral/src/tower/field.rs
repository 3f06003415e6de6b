//! Towers of quadratic extensions over Q_p and their exact arithmetic.
//!
//! A level-n field is E = E'(gamma) with gamma^2 = g taken from the level
//! n-1 field E'.  Elements are flat coordinate vectors over the 2^n products
//! of step generators.  Generators are normalized so v(g) is 0 or 1; for odd
//! p every step is then tame, the valuation of an element is the exact
//! minimum over its monomial terms, and residue-field coordinates read off
//! the unit-monomial coefficients directly.  That keeps every decision made
//! downstream (valuations, residue discrete logs, square classes) exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::padic::PAdicNumber;

pub struct TowerField {
    p: u64,
    level: u32,
    /// Absolute ramification index over Q_p.
    e: u32,
    /// Absolute residue degree over Q_p.
    f: u32,
    step: Option<Step>,
    /// v_E of each basis monomial.
    monomial_vals: Vec<i64>,
    /// Monomials of valuation zero; their residues are a basis of the
    /// residue field over F_p, so there are exactly f of them.
    unit_monomials: Vec<usize>,
    uniformizer: OnceLock<FieldElement>,
    residue_products: OnceLock<Vec<Vec<Vec<u64>>>>,
    mu: OnceLock<MuData>,
}

struct Step {
    base: Arc<TowerField>,
    /// gamma^2, an element of the base with valuation 0 (unramified step)
    /// or 1 (ramified step).
    g: FieldElement,
    ramified: bool,
}

struct MuData {
    generator: FieldElement,
    /// residue coordinates -> discrete log base the generator's residue
    dlog: HashMap<Vec<u64>, u64>,
}

impl TowerField {
    /// The ground field Q_p.
    pub fn qp(p: u64) -> Arc<TowerField> {
        let fld = Arc::new(TowerField {
            p,
            level: 0,
            e: 1,
            f: 1,
            step: None,
            monomial_vals: vec![0],
            unit_monomials: vec![0],
            uniformizer: OnceLock::new(),
            residue_products: OnceLock::new(),
            mu: OnceLock::new(),
        });
        let pi = FieldElement::from_integer(&fld, p as i64);
        fld.uniformizer.set(pi).ok();
        fld
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    /// Residue field size p^f.
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn degree(&self) -> u32 {
        1 << self.level
    }

    pub fn base(&self) -> Option<&Arc<TowerField>> {
        self.step.as_ref().map(|s| &s.base)
    }

    /// gamma^2 for the top step.
    pub fn generator_square(&self) -> Option<&FieldElement> {
        self.step.as_ref().map(|s| &s.g)
    }

    pub fn top_step_ramified(&self) -> Option<bool> {
        self.step.as_ref().map(|s| s.ramified)
    }

    pub fn uniformizer(&self) -> &FieldElement {
        self.uniformizer.get().expect("set at construction")
    }

    pub fn monomial_valuation(&self, idx: usize) -> i64 {
        self.monomial_vals[idx]
    }

    pub fn unit_monomials(&self) -> &[usize] {
        &self.unit_monomials
    }

    fn res_dim(&self) -> usize {
        self.f as usize
    }

    pub fn res_one(&self) -> Vec<u64> {
        let mut v = vec![0; self.res_dim()];
        v[0] = 1;
        v
    }
}

/// Adjoin a square root of g to the base field.  g is normalized by even
/// uniformizer powers so the new generator has valuation 0 or 1; square g is
/// rejected.
pub fn make_quadratic(base: &Arc<TowerField>, g: &FieldElement) -> Result<Arc<TowerField>> {
    assert!(
        Arc::ptr_eq(base, g.field()),
        "generator must live in the base field"
    );
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !g.sqrt_all().is_empty() {
        return Err(Error::SquareGenerator);
    }
    let v = g.valuation().expect("nonzero");
    let k = v.div_euclid(2);
    let g = g * &base.uniformizer().pow(-2 * k);
    let ramified = g.valuation() == Some(1);
    debug_assert!(ramified || g.valuation() == Some(0));

    let (e_step, gamma_val) = if ramified { (2u32, 1i64) } else { (1u32, 0i64) };
    let half = base.degree() as usize;
    let mut monomial_vals = Vec::with_capacity(2 * half);
    for mv in &base.monomial_vals {
        monomial_vals.push(mv * e_step as i64);
    }
    for mv in &base.monomial_vals {
        monomial_vals.push(mv * e_step as i64 + gamma_val);
    }
    let unit_monomials: Vec<usize> = (0..2 * half).filter(|&i| monomial_vals[i] == 0).collect();

    let fld = Arc::new(TowerField {
        p: base.p,
        level: base.level + 1,
        e: base.e * e_step,
        f: base.f * if ramified { 1 } else { 2 },
        step: Some(Step {
            base: base.clone(),
            g,
            ramified,
        }),
        monomial_vals,
        unit_monomials,
        uniformizer: OnceLock::new(),
        residue_products: OnceLock::new(),
        mu: OnceLock::new(),
    });
    assert_eq!(fld.unit_monomials.len(), fld.res_dim());
    let pi = if ramified {
        FieldElement::gamma(&fld)
    } else {
        FieldElement::lift(&fld, base.uniformizer())
    };
    fld.uniformizer.set(pi).ok();
    Ok(fld)
}

/// Residue coordinates of the products of unit-basis monomials.
fn residue_products(field: &Arc<TowerField>) -> &Vec<Vec<Vec<u64>>> {
    field.residue_products.get_or_init(|| {
        let units = &field.unit_monomials;
        units
            .iter()
            .map(|&i| {
                units
                    .iter()
                    .map(|&j| {
                        let prod = &FieldElement::monomial(field, i)
                            * &FieldElement::monomial(field, j);
                        prod.residue_coords()
                    })
                    .collect()
            })
            .collect()
    })
}

/// Multiply residue-field elements given by coordinates over the
/// unit-monomial basis.
pub fn res_mul(field: &Arc<TowerField>, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = field.p;
    let table = residue_products(field);
    let mut out = vec![0u64; field.res_dim()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let coeff = (ai * bj) % p;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                *o = (*o + coeff * t) % p;
            }
        }
    }
    out
}

pub fn res_pow(field: &Arc<TowerField>, a: &[u64], mut n: u64) -> Vec<u64> {
    let mut acc = field.res_one();
    let mut base = a.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            acc = res_mul(field, &acc, &base);
        }
        base = res_mul(field, &base, &base);
        n >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_residue_generator(field: &Arc<TowerField>, r: &[u64]) -> bool {
    if r.iter().all(|&c| c == 0) {
        return false;
    }
    let q1 = field.q() - 1;
    prime_factors(q1)
        .iter()
        .all(|&l| res_pow(field, r, q1 / l) != field.res_one())
}

fn mu_data(field: &Arc<TowerField>) -> &MuData {
    field.mu.get_or_init(|| {
        let dim = field.res_dim();
        let q = field.q();
        // lex-first digit vector (leftmost digit most significant) whose
        // residue generates the multiplicative group
        let mut counter = vec![0u64; dim];
        let gen_digits = loop {
            let mut idx = dim;
            loop {
                assert!(idx > 0, "residue field must have a generator");
                idx -= 1;
                counter[idx] += 1;
                if counter[idx] < field.p {
                    break;
                }
                counter[idx] = 0;
            }
            if is_residue_generator(field, &counter) {
                break counter;
            }
        };
        let mut dlog = HashMap::new();
        let mut cur = field.res_one();
        for j in 0..q - 1 {
            dlog.insert(cur.clone(), j);
            cur = res_mul(field, &cur, &gen_digits);
        }
        assert_eq!(cur, field.res_one(), "generator order divides q-1");
        let generator = residue_rep(field, &gen_digits).teichmuller();
        MuData { generator, dlog }
    })
}

/// The canonical generator of the roots of unity of order q-1: the
/// Teichmueller lift of the lex-first residue generator.
pub fn mu_generator(field: &Arc<TowerField>) -> &FieldElement {
    &mu_data(field).generator
}

/// Field element with the given residue coordinates (digits in [0,p)).
pub fn residue_rep(field: &Arc<TowerField>, digits: &[u64]) -> FieldElement {
    assert_eq!(digits.len(), field.res_dim());
    let mut acc = FieldElement::zero(field);
    for (&d, &idx) in digits.iter().zip(&field.unit_monomials) {
        if d == 0 {
            continue;
        }
        let term = FieldElement::monomial(field, idx).scale_integer(d as i64);
        acc = &acc + &term;
    }
    acc
}

fn mul_slices(field: &TowerField, x: &[PAdicNumber], y: &[PAdicNumber]) -> Vec<PAdicNumber> {
    let zero_slice = |s: &[PAdicNumber]| s.iter().all(|c| c.is_zero());
    if zero_slice(x) || zero_slice(y) {
        return vec![PAdicNumber::zero(field.p); x.len()];
    }
    match &field.step {
        None => vec![&x[0] * &y[0]],
        Some(step) => {
            let h = x.len() / 2;
            let base = &step.base;
            let a = mul_slices(base, &x[..h], &y[..h]);
            let b = mul_slices(base, &x[h..], &y[h..]);
            let c = mul_slices(base, &x[..h], &y[h..]);
            let d = mul_slices(base, &x[h..], &y[..h]);
            let bg = mul_slices(base, &b, step.g.coords());
            let mut out = Vec::with_capacity(x.len());
            for i in 0..h {
                out.push(&a[i] + &bg[i]);
            }
            for i in 0..h {
                out.push(&c[i] + &d[i]);
            }
            out
        }
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<TowerField>,
    coords: Vec<PAdicNumber>,
}

impl FieldElement {
    pub fn zero(field: &Arc<TowerField>) -> Self {
        FieldElement {
            field: field.clone(),
            coords: vec![PAdicNumber::zero(field.p); field.degree() as usize],
        }
    }

    pub fn one(field: &Arc<TowerField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<TowerField>, n: i64) -> Self {
        Self::scalar(field, PAdicNumber::from_integer(field.p, n))
    }

    /// Embed a Q_p scalar.
    pub fn scalar(field: &Arc<TowerField>, c: PAdicNumber) -> Self {
        let mut out = Self::zero(field);
        out.coords[0] = c;
        out
    }

    /// The basis monomial with the given index (bit i set = step-i generator).
    pub fn monomial(field: &Arc<TowerField>, idx: usize) -> Self {
        assert!(idx < field.degree() as usize);
        let mut out = Self::zero(field);
        out.coords[idx] = PAdicNumber::one(field.p);
        out
    }

    /// Generator of the top step.
    pub fn gamma(field: &Arc<TowerField>) -> Self {
        assert!(field.level > 0);
        Self::monomial(field, 1 << (field.level - 1))
    }

    pub fn from_coords(field: &Arc<TowerField>, coords: Vec<PAdicNumber>) -> Self {
        assert_eq!(coords.len(), field.degree() as usize);
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    /// Embed an element of the base field of `field`.
    pub fn lift(field: &Arc<TowerField>, x: &FieldElement) -> Self {
        let base = field.base().expect("lift needs an extension field");
        assert!(Arc::ptr_eq(base, x.field()), "element not in the base field");
        let mut coords = x.coords.clone();
        coords.resize(field.degree() as usize, PAdicNumber::zero(field.p));
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn coords(&self) -> &[PAdicNumber] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Valuation in the normalized valuation of this field (v(uniformizer)=1);
    /// None for zero.  Exact: monomials of equal valuation have residues
    /// independent over the coefficient residues, so the minimum is attained.
    pub fn valuation(&self) -> Option<i64> {
        let e = self.field.e as i64;
        self.coords
            .iter()
            .zip(&self.field.monomial_vals)
            .filter_map(|(c, mv)| c.valuation().map(|v| e * v + mv))
            .min()
    }

    /// Coordinates of the residue over the unit-monomial basis; the zero
    /// vector when v > 0.  Requires an integral element.
    pub fn residue_coords(&self) -> Vec<u64> {
        let dim = self.field.res_dim();
        match self.valuation() {
            None => vec![0; dim],
            Some(v) => {
                assert!(v >= 0, "residue of a non-integral element");
                if v > 0 {
                    return vec![0; dim];
                }
                self.field
                    .unit_monomials
                    .iter()
                    .map(|&i| {
                        let c = &self.coords[i];
                        match c.valuation() {
                            Some(0) => c.unit_residue(),
                            _ => 0,
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn scale(&self, c: &PAdicNumber) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_integer(&self, n: i64) -> Self {
        self.scale(&PAdicNumber::from_integer(self.field.p, n))
    }

    /// Negate the top-step generator: the nontrivial automorphism over the
    /// base field.
    pub fn conj_top(&self) -> Self {
        assert!(self.field.level > 0);
        let h = self.coords.len() / 2;
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords[..h] {
            coords.push(c.clone());
        }
        for c in &self.coords[h..] {
            coords.push(-c);
        }
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    /// Reinterpret an element whose top half vanishes as a base-field element.
    pub fn project_to_base(&self) -> Self {
        let step = self.field.step.as_ref().expect("ground field has no base");
        let h = self.coords.len() / 2;
        assert!(
            self.coords[h..].iter().all(|c| c.is_zero()),
            "element does not lie in the base field"
        );
        FieldElement {
            field: step.base.clone(),
            coords: self.coords[..h].to_vec(),
        }
    }

    pub fn norm_to_base(&self) -> Self {
        (self * &self.conj_top()).project_to_base()
    }

    pub fn trace_to_base(&self) -> Self {
        (self + &self.conj_top()).project_to_base()
    }

    /// Norm all the way down to Q_p.
    pub fn absolute_norm(&self) -> PAdicNumber {
        let mut x = self.clone();
        while x.field.level > 0 {
            x = x.norm_to_base();
        }
        x.coords.into_iter().next().unwrap()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.field.step {
            None => FieldElement {
                field: self.field.clone(),
                coords: vec![self.coords[0].inv()],
            },
            Some(_) => {
                let conj = self.conj_top();
                let norm = self.norm_to_base();
                &conj * &FieldElement::lift(&self.field, &norm.inv())
            }
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(&self.field);
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        base.pow_u(n.unsigned_abs())
    }

    pub fn pow_u(&self, mut n: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut sq = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn pow_big(&self, n: &BigUint) -> Self {
        let mut acc = Self::one(&self.field);
        for i in (0..n.bits()).rev() {
            acc = &acc * &acc;
            if n.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn truncate_digits(&mut self, d: u32) {
        for c in &mut self.coords {
            c.truncate_digits(d);
        }
    }

    /// Coordinate-wise exact rounding modulo p^window at restored working
    /// precision; see PAdicNumber::settle for when this is sound.
    pub fn settle(&self, window: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c.settle(window)).collect(),
        }
    }

    /// Stable dictionary key built from the coordinates at the given digit
    /// window.
    pub fn canonical_key(&self, window: u32) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.canonical_key(window))
            .collect();
        parts.join("|")
    }

    /// All square roots in this field: none, or a +/- pair (just [0] for 0).
    pub fn sqrt_all(&self) -> Vec<FieldElement> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let mut candidates: Vec<FieldElement> = Vec::new();
        match &self.field.step {
            None => {
                if let Ok(r) = self.coords[0].sqrt() {
                    let r = FieldElement::scalar(&self.field, r);
                    candidates.push(-&r);
                    candidates.push(r);
                }
            }
            Some(step) => {
                let h = self.coords.len() / 2;
                let y0 = FieldElement {
                    field: step.base.clone(),
                    coords: self.coords[..h].to_vec(),
                };
                let y1 = FieldElement {
                    field: step.base.clone(),
                    coords: self.coords[h..].to_vec(),
                };
                let g = &step.g;
                let join = |a: &FieldElement, b: &FieldElement| FieldElement {
                    field: self.field.clone(),
                    coords: a.coords.iter().chain(&b.coords).cloned().collect(),
                };
                if y1.is_zero() {
                    // (a + b*gamma)^2 = y0 forces a = 0 or b = 0
                    for a in y0.sqrt_all() {
                        candidates.push(join(&a, &FieldElement::zero(&step.base)));
                    }
                    for b in (&y0 / g).sqrt_all() {
                        candidates.push(join(&FieldElement::zero(&step.base), &b));
                    }
                } else {
                    // a = y1/(2b), and b^2 solves the quadratic
                    // 2g t^2 - 2 y0 t + ... : t = (y0 +/- sqrt(y0^2 - g y1^2))/(2g)
                    let disc = &(&y0 * &y0) - &(g * &(&y1 * &y1));
                    let two_g = g.scale_integer(2);
                    for s in disc.sqrt_all() {
                        let t = &(&y0 + &s) / &two_g;
                        for b in t.sqrt_all() {
                            if b.is_zero() {
                                continue;
                            }
                            let a = &y1 / &b.scale_integer(2);
                            candidates.push(join(&a, &b));
                        }
                    }
                }
            }
        }
        let mut out: Vec<FieldElement> = Vec::new();
        for cand in candidates {
            if &(&cand * &cand) == self && !out.iter().any(|r| r == &cand) {
                out.push(cand);
            }
        }
        assert!(out.len() <= 2, "a field has at most two square roots");
        out
    }

    pub fn is_square(&self) -> bool {
        !self.sqrt_all().is_empty()
    }

    /// The root of x^(q-1) = 1 with the same residue: a single powering by
    /// q^40.  The partial exponents along the square-and-multiply chain are
    /// never divisible by p, so the intermediates keep a moderate distance
    /// from the roots of unity: no coordinate half-cancels on the way, and
    /// the last step lands the error past the working window in one move.
    pub fn teichmuller(&self) -> FieldElement {
        assert_eq!(self.valuation(), Some(0), "teichmuller lift needs a unit");
        let field = &self.field;
        let q = field.q();
        let t = self.pow_big(&BigUint::from(q).pow(40));
        assert!(t.pow_u(q) == t, "teichmuller powering did not converge");
        t
    }

    /// Write x = pi^v * u and return (v, dlog of the residue of u).  Every
    /// tame character evaluation factors through this pair.
    pub fn decompose(&self) -> (i64, u64) {
        let v = self.valuation().expect("decompose of zero");
        let unit = self * &self.field.uniformizer().pow(-v);
        let rc = unit.residue_coords();
        let data = mu_data(&self.field);
        let k = *data
            .dlog
            .get(&rc)
            .expect("unit residues lie in the dlog table");
        (v, k)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a == b)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(Arc::ptr_eq(&self.field, &rhs.field), "field mismatch");
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &-rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(Arc::ptr_eq(&self.field, &rhs.field), "field mismatch");
        FieldElement {
            field: self.field.clone(),
            coords: mul_slices(&self.field, &self.coords, &rhs.coords),
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{}", monomial_label(i))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn monomial_label(idx: usize) -> String {
    let mut parts = Vec::new();
    let mut i = idx;
    let mut j = 0;
    while i > 0 {
        if i & 1 == 1 {
            parts.push(format!("g{j}"));
        }
        i >>= 1;
        j += 1;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unramified_k3() -> Arc<TowerField> {
        let f = TowerField::qp(3);
        let two = FieldElement::from_integer(&f, 2);
        make_quadratic(&f, &two).unwrap()
    }

    fn ramified_k3() -> Arc<TowerField> {
        let f = TowerField::qp(3);
        let three = FieldElement::from_integer(&f, 3);
        make_quadratic(&f, &three).unwrap()
    }

    #[test]
    fn unramified_step_bookkeeping() {
        let k = unramified_k3();
        assert_eq!((k.ramification(), k.residue_degree(), k.q()), (1, 2, 9));
        assert_eq!(k.uniformizer().valuation(), Some(1));
        assert_eq!(
            k.uniformizer(),
            &FieldElement::from_integer(&k, 3),
            "unramified extension keeps p as uniformizer"
        );
        let gamma = FieldElement::gamma(&k);
        assert_eq!(gamma.valuation(), Some(0));
        assert_eq!(&gamma * &gamma, FieldElement::from_integer(&k, 2));
    }

    #[test]
    fn ramified_step_bookkeeping() {
        let k = ramified_k3();
        assert_eq!((k.ramification(), k.residue_degree()), (2, 1));
        let gamma = FieldElement::gamma(&k);
        assert_eq!(gamma.valuation(), Some(1));
        assert_eq!(k.uniformizer(), &gamma);
        // p itself has valuation e = 2
        assert_eq!(FieldElement::from_integer(&k, 3).valuation(), Some(2));
    }

    #[test]
    fn square_generators_are_rejected() {
        let f = TowerField::qp(3);
        let four = FieldElement::from_integer(&f, 4);
        assert!(matches!(
            make_quadratic(&f, &four),
            Err(Error::SquareGenerator)
        ));
        let zero = FieldElement::zero(&f);
        assert!(matches!(make_quadratic(&f, &zero), Err(Error::ZeroInput)));
    }

    #[test]
    fn generator_valuation_is_normalized() {
        let f = TowerField::qp(3);
        // 18 = 2 * 3^2 normalizes to the unit 2: an unramified step
        let g = FieldElement::from_integer(&f, 18);
        let k = make_quadratic(&f, &g).unwrap();
        assert_eq!(k.ramification(), 1);
        assert_eq!(
            k.generator_square().unwrap(),
            &FieldElement::from_integer(&f, 2)
        );
        // 12 = 4 * 3 keeps odd valuation: ramified
        let g = FieldElement::from_integer(&f, 12);
        let k = make_quadratic(&f, &g).unwrap();
        assert_eq!(k.ramification(), 2);
    }

    #[test]
    fn biquadratic_layer_invariants() {
        let k = unramified_k3();
        let g = FieldElement::from_integer(&k, 3);
        let l = make_quadratic(&k, &g).unwrap();
        assert_eq!((l.ramification(), l.residue_degree(), l.level()), (2, 2, 2));
        assert_eq!(l.monomial_valuation(0), 0);
        assert_eq!(l.monomial_valuation(1), 0);
        assert_eq!(l.monomial_valuation(2), 1);
        assert_eq!(l.monomial_valuation(3), 1);
        assert_eq!(l.unit_monomials(), &[0, 1]);
        assert_eq!(l.uniformizer().valuation(), Some(1));
    }

    #[test]
    fn norm_and_trace_of_the_generator() {
        let k = unramified_k3();
        let gamma = FieldElement::gamma(&k);
        assert_eq!(
            gamma.norm_to_base(),
            FieldElement::from_integer(k.base().unwrap(), -2)
        );
        assert!(gamma.trace_to_base().is_zero());
        let x = &FieldElement::from_integer(&k, 5) + &gamma;
        assert_eq!(
            x.norm_to_base(),
            FieldElement::from_integer(k.base().unwrap(), 23)
        );
        assert_eq!(
            x.trace_to_base(),
            FieldElement::from_integer(k.base().unwrap(), 10)
        );
    }

    #[test]
    fn inverse_and_division() {
        let k = unramified_k3();
        let gamma = FieldElement::gamma(&k);
        let x = &FieldElement::from_integer(&k, 7) + &gamma.scale_integer(4);
        let y = &x * &x.inv();
        assert_eq!(y, FieldElement::one(&k));
    }

    #[test]
    fn square_roots_in_towers() {
        let k = unramified_k3();
        let gamma = FieldElement::gamma(&k);
        // gamma^2 = 2: sqrt(2) in the unramified quadratic is +/- gamma
        let two = FieldElement::from_integer(&k, 2);
        let roots = two.sqrt_all();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&gamma));
        assert!(roots.contains(&-&gamma));
        // a generic square round-trips
        let x = &FieldElement::from_integer(&k, 4) + &gamma.scale_integer(3);
        let sq = &x * &x;
        let roots = sq.sqrt_all();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&x));
    }

    #[test]
    fn minus_one_square_classes_across_steps() {
        // q = 9 = 1 mod 4: -1 is a square in the unramified quadratic
        let k = unramified_k3();
        assert_eq!(FieldElement::from_integer(&k, -1).sqrt_all().len(), 2);
        // q = 3 mod 4 in the ramified quadratic: -1 stays a non-square
        let k = ramified_k3();
        assert!(FieldElement::from_integer(&k, -1).sqrt_all().is_empty());
    }

    #[test]
    fn teichmuller_in_towers() {
        let k = unramified_k3();
        let gamma = FieldElement::gamma(&k);
        let x = &FieldElement::one(&k) + &gamma;
        let t = x.teichmuller();
        assert_eq!(t.pow_u(8), FieldElement::one(&k));
        assert_eq!(t.residue_coords(), x.residue_coords());
        // ground-field teichmuller agrees with the scalar implementation
        let f = TowerField::qp(7);
        let t = FieldElement::from_integer(&f, 2).teichmuller();
        let s = crate::padic::teichmuller_lift(7, 2, 24).unwrap();
        assert_eq!(t.coords()[0], s);
    }

    #[test]
    fn mu_generator_frozen_values() {
        // unramified quadratic of Q_3: lex search lands on 1 + gamma
        let k = unramified_k3();
        let g = mu_generator(&k);
        let expected = (&FieldElement::one(&k) + &FieldElement::gamma(&k)).teichmuller();
        assert_eq!(g, &expected);
        assert_eq!(g.pow_u(8), FieldElement::one(&k));
        assert_ne!(g.pow_u(4), FieldElement::one(&k));
        // ramified quadratic of Q_3: residue field F_3, generator -1
        let k = ramified_k3();
        assert_eq!(mu_generator(&k), &FieldElement::from_integer(&k, -1));
        // ground field Q_5: generator is the lift of 2
        let f = TowerField::qp(5);
        assert_eq!(
            mu_generator(&f),
            &FieldElement::from_integer(&f, 2).teichmuller()
        );
    }

    #[test]
    fn decompose_reads_valuation_and_dlog() {
        let k = unramified_k3();
        let g = mu_generator(&k).clone();
        let pi = k.uniformizer().clone();
        let x = &pi.pow(3) * &g.pow_u(5);
        assert_eq!(x.decompose(), (3, 5));
        assert_eq!(g.decompose(), (0, 1));
        assert_eq!(FieldElement::one(&k).decompose(), (0, 0));
        assert_eq!(pi.decompose(), (1, 0), "p is a norm-compatible uniformizer");
        // ground field: 2 generates the residue field of Q_5
        let f = TowerField::qp(5);
        assert_eq!(FieldElement::from_integer(&f, 2).decompose(), (0, 1));
        assert_eq!(FieldElement::from_integer(&f, 50).decompose().0, 2);
    }

    #[test]
    fn residue_arithmetic_matches_field_arithmetic() {
        let k = unramified_k3();
        let gamma = FieldElement::gamma(&k);
        let x = &FieldElement::from_integer(&k, 2) + &gamma;
        let y = &FieldElement::one(&k) + &gamma.scale_integer(2);
        let lhs = (&x * &y).residue_coords();
        let rhs = res_mul(&k, &x.residue_coords(), &y.residue_coords());
        assert_eq!(lhs, rhs);
    }

    fn test_field(which: usize) -> Arc<TowerField> {
        match which {
            0 => unramified_k3(),
            1 => ramified_k3(),
            _ => {
                let k = unramified_k3();
                let g = FieldElement::from_integer(&k, 3);
                make_quadratic(&k, &g).unwrap()
            }
        }
    }

    fn arb_element(field: Arc<TowerField>) -> BoxedStrategy<FieldElement> {
        let n = field.degree() as usize;
        proptest::collection::vec((-40i64..=40, 0u32..3), n)
            .prop_map(move |spec| {
                let coords = spec
                    .into_iter()
                    .map(|(m, k)| {
                        PAdicNumber::from_integer(field.prime(), m).scale_pow_p(k as i64)
                    })
                    .collect();
                FieldElement::from_coords(&field, coords)
            })
            .boxed()
    }

    proptest! {
        #[test]
        fn tower_arithmetic_laws((x, y, z) in (0usize..3).prop_flat_map(|which| {
            let s = arb_element(test_field(which));
            (s.clone(), s.clone(), s)
        })) {
            prop_assert!(&(&x * &y) * &z == &x * &(&y * &z));
            prop_assert!(&x * &(&y + &z) == &(&x * &y) + &(&x * &z));
            if !x.is_zero() && !y.is_zero() {
                let v = (&x * &y).valuation();
                prop_assert_eq!(v, Some(x.valuation().unwrap() + y.valuation().unwrap()));
                prop_assert!(&(&x * &y) / &y == x);
            }
        }
    }
}
