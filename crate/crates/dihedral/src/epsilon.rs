//! Local constants of tame characters, exact where a traceless witness
//! exists and numeric through a Gauss-sum oracle everywhere else.
//!
//! The exact path rests on one fact: for a quadratic pair E2/E1 and a
//! character chi of E2* trivial on E1*, the epsilon factor against the
//! standard additive character is chi evaluated at any trace-zero element
//! (Froehlich-Queyrut).  The value lives in Q/Z, so equality checks are
//! exact.  The oracle path sums over residue units in double precision; a
//! calibration test keeps its conventions pinned to the exact path, and the
//! two must agree to nine decimal places wherever both apply.
//!
//! The chain that decides distinction twists a character omega of L* by
//! every tame chi of K* trivial on F*, and multiplies four terms: the
//! normalizing factor of the quadratic step L/K, the epsilon of the twisted
//! character, and the two values picking up the shift that makes the
//! additive character of K trivial on F.  All four are exact on the
//! biquadratic lattice; the chain refuses to run anywhere else rather than
//! fall back to floats.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::chars::{enumerate_chars, eta_character, MultChar};
use crate::cyclo::CycloValue;
use crate::distinction::DihedralDatum;
use crate::error::{Error, Result};
use crate::padic::{pow_p, PAdicNumber};
use crate::tower::{mu_generator, FieldElement, LatticeContext, QuadraticPair, TowerField};

/// Largest residue count the Gauss-sum oracle will sum over.  The quartic
/// unramified field at p = 7 has q = 2401 and stays in range; the oracle
/// refuses beyond that rather than grind through tens of thousands of
/// exact trace evaluations.
const MAX_ORACLE_Q: u64 = 2401;

/// How an epsilon value was computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Traceless evaluation, exact in Q/Z.
    Fq,
    /// Unit sum in double precision.
    GaussSum,
    /// Product of exact factors along the distinction chain.
    Chain,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Fq => "FQ",
            Provenance::GaussSum => "gauss",
            Provenance::Chain => "chain",
        }
    }
}

/// An epsilon factor, carried in whichever forms the computation produced.
///
/// Invariant: when both forms are present, `approx` is within 1e-9 of
/// e^(2 pi i exact).
#[derive(Clone, Debug)]
pub struct EpsilonValue {
    pub exact: Option<CycloValue>,
    pub approx: Option<(f64, f64)>,
    pub provenance: Provenance,
}

impl EpsilonValue {
    pub fn is_one(&self) -> bool {
        matches!(self.exact, Some(v) if v.is_zero())
    }

    /// The value as a complex number, preferring the numeric form.
    pub fn complex(&self) -> (f64, f64) {
        if let Some(z) = self.approx {
            return z;
        }
        self.exact
            .expect("an epsilon value carries at least one form")
            .unit_complex()
    }

    /// Distance between the two forms, when both are present.
    pub fn deviation(&self) -> Option<f64> {
        let (re, im) = self.approx?;
        let (er, ei) = self.exact?.unit_complex();
        Some(((re - er).powi(2) + (im - ei).powi(2)).sqrt())
    }
}

/// The image of x in Q_p/Z_p, as an exact fraction with p-power denominator.
fn lambda_p(x: &PAdicNumber) -> CycloValue {
    let v = match x.valuation() {
        Some(v) if v < 0 => v,
        _ => return CycloValue::zero(),
    };
    let k = (-v) as u32;
    assert!(k <= 12, "fractional part outside the tame range");
    assert!(
        x.digits() >= k,
        "fractional part needs {k} certain digits, have {}",
        x.digits()
    );
    let modulus = pow_p(x.prime(), k);
    let r = x.unit_part() % &modulus;
    CycloValue::new(r.to_i64().unwrap(), modulus.to_i64().unwrap())
}

/// Trace all the way down to the rational ground field.
fn absolute_trace(x: &FieldElement) -> PAdicNumber {
    let mut cur = x.clone();
    while cur.field().level() > 0 {
        cur = cur.trace_to_base();
    }
    cur.coords()[0].clone()
}

/// An additive character psi_s(x) = lambda_p(Tr(s x)): the standard
/// character of the field composed with a multiplicative shift s.
#[derive(Clone)]
pub struct AdditiveChar {
    field: Arc<TowerField>,
    shift: FieldElement,
}

impl AdditiveChar {
    /// The standard character: shift 1.
    pub fn standard(field: &Arc<TowerField>) -> AdditiveChar {
        AdditiveChar {
            field: field.clone(),
            shift: FieldElement::one(field),
        }
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn shift(&self) -> &FieldElement {
        &self.shift
    }

    pub fn is_standard(&self) -> bool {
        self.shift == FieldElement::one(&self.field)
    }

    pub fn eval(&self, x: &FieldElement) -> CycloValue {
        assert!(Arc::ptr_eq(x.field(), &self.field), "field mismatch");
        lambda_p(&absolute_trace(&(&self.shift * x)))
    }

    /// The largest n with psi trivial on pi^(-n) O.  The standard character
    /// dies exactly on the inverse different, whose exponent is e - 1 for
    /// the tame steps handled here, and a shift moves the level by its
    /// valuation.
    pub fn level(&self) -> i64 {
        (self.field.ramification() as i64 - 1) + self.shift.valuation().unwrap()
    }
}

/// The character x |-> psi(a x).  Fails on a = 0, which would collapse the
/// character to the constant 1.
pub fn twist_additive(psi: &AdditiveChar, a: &FieldElement) -> Result<AdditiveChar> {
    assert!(Arc::ptr_eq(a.field(), &psi.field), "field mismatch");
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(AdditiveChar {
        field: psi.field.clone(),
        shift: &psi.shift * a,
    })
}

/// Exact epsilon factor of a character that dies on the lower field of a
/// quadratic pair: the value at a trace-zero witness.  Any witness gives
/// the same answer, since two of them differ by a lower-field factor the
/// character cannot see.
pub fn fq_epsilon(chi: &MultChar, pair: &QuadraticPair, psi: &AdditiveChar) -> Result<EpsilonValue> {
    assert!(Arc::ptr_eq(chi.field(), &pair.ext), "field mismatch");
    assert!(Arc::ptr_eq(psi.field(), &pair.ext), "field mismatch");
    if !psi.is_standard() {
        return Err(Error::Precondition(
            "the traceless evaluation is stated for the standard additive character".into(),
        ));
    }
    if !chi.restrict(&pair.embedding).is_trivial() {
        return Err(Error::Precondition(
            "the traceless evaluation needs a character trivial on the lower field".into(),
        ));
    }
    let delta = pair.find_traceless();
    Ok(EpsilonValue {
        exact: Some(chi.eval(&delta)),
        approx: None,
        provenance: Provenance::Fq,
    })
}

/// Numeric epsilon factor by direct summation.
///
/// For an unramified character the factor is the uniformizer value raised
/// to the level of psi, which is exact.  For a ramified tame character it
/// is the normalized unit sum
///
///   chi(pi)^s / sqrt(q) * sum_j e^(2 pi i (psi(mu^j pi^(-s)) - m j / (q-1)))
///
/// with s the conductor exponent plus the level of psi.  Every summand
/// angle is exact in Q/Z; only the final accumulation runs in doubles.
pub fn gauss_epsilon(chi: &MultChar, psi: &AdditiveChar) -> Result<EpsilonValue> {
    let field = chi.field();
    assert!(Arc::ptr_eq(psi.field(), field), "field mismatch");
    let n = psi.level();
    if chi.residue_exponent() == 0 {
        let exact = chi.at_uniformizer().scale(n);
        return Ok(EpsilonValue {
            exact: Some(exact),
            approx: Some(exact.unit_complex()),
            provenance: Provenance::GaussSum,
        });
    }
    let q = field.q();
    if q > MAX_ORACLE_Q {
        return Err(Error::RegimeRefusal(format!(
            "the unit sum needs q - 1 = {} terms, above the oracle bound {}",
            q - 1,
            MAX_ORACLE_Q - 1
        )));
    }
    let s = 1 + n;
    let q1 = (q - 1) as i64;
    let m = chi.residue_exponent() as i64;
    let c = field.uniformizer().pow(-s);
    let mu = mu_generator(field);
    let mut u = FieldElement::one(field);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..q1 {
        let angle = psi.eval(&(&u * &c)) - CycloValue::new(m * j, q1);
        let (re, im) = angle.unit_complex();
        sum += Complex64::new(re, im);
        u = &u * mu;
    }
    assert!(u == FieldElement::one(field), "unit orbit failed to close");
    let (fre, fim) = chi.at_uniformizer().scale(s).unit_complex();
    let value = Complex64::new(fre, fim) * sum / (q as f64).sqrt();
    Ok(EpsilonValue {
        exact: None,
        approx: Some((value.re, value.im)),
        provenance: Provenance::GaussSum,
    })
}

/// The normalizing factor of the quadratic step L/K against an additive
/// character of K: the epsilon of the step's norm character, divided by its
/// modulus.  The norm character takes values in {1, -1}, so the factor
/// equals that epsilon on the nose and squares to 1.
///
/// Exact only on the biquadratic lattice, where the norm character dies on
/// the ground field and the traceless evaluation applies.  On the other
/// lattices the restriction to F* is nontrivial and this path refuses; the
/// Gauss oracle remains available there.
pub fn lambda_factor(context: &LatticeContext, psi_k: &AdditiveChar) -> Result<EpsilonValue> {
    let lat = match context {
        LatticeContext::Biquadratic(lat) => lat,
        _ => {
            return Err(Error::RegimeRefusal(
                "the norm character of this quadratic step is nontrivial on the ground field, \
                 so the traceless evaluation does not apply"
                    .into(),
            ))
        }
    };
    assert!(Arc::ptr_eq(psi_k.field(), &lat.k), "field mismatch");
    fq_epsilon(&eta_character(&lat.over_k), &lat.k_over_f, psi_k)
}

/// One twist of the distinction chain: the twisting character, the twisted
/// datum, and the exact epsilon it produced.
#[derive(Clone)]
pub struct TwistReport {
    pub chi: MultChar,
    pub mu: MultChar,
    pub epsilon: CycloValue,
    pub is_one: bool,
}

/// Distinction test through epsilon factors: the representation attached to
/// omega is distinguished exactly when every tame twist by a character of
/// K* trivial on F* has epsilon factor 1 against an additive character of K
/// trivial on F.
///
/// For omega trivial on one of the two complementary quadratic subfields,
/// each twisted epsilon splits into four exact factors:
///
///   lambda(L/K) * eps(mu, psi_L) * mu(a) * eta_{L/K}(a),
///
/// with mu the twisted character and a a trace-zero element of K over F.
/// The first and last come from moving between psi_K and its shift by a;
/// the middle two are traceless evaluations.  Outside that regime the
/// factors are not all exact and the chain refuses.
pub fn hakim_check(d: &DihedralDatum, max_den: u64) -> Result<(bool, Vec<TwistReport>)> {
    let lat = match &*d.context {
        LatticeContext::Biquadratic(lat) => lat,
        _ => {
            return Err(Error::Precondition(
                "the epsilon chain is defined on the biquadratic lattice".into(),
            ))
        }
    };
    let on_k1 = d.omega.restrict(&lat.over_k1.embedding).is_trivial();
    let on_k2 = d.omega.restrict(&lat.over_k2.embedding).is_trivial();
    let pair = if on_k1 {
        &lat.over_k1
    } else if on_k2 {
        &lat.over_k2
    } else {
        return Err(Error::RegimeRefusal(
            "omega is nontrivial on both complementary quadratic subfields; twist by an \
             extension of the ground quadratic character to reach the exact regime"
                .into(),
        ));
    };

    let psi_k = AdditiveChar::standard(&lat.k);
    let psi_l = AdditiveChar::standard(&lat.l);
    let lambda = lambda_factor(&d.context, &psi_k)?.exact.unwrap();
    let eta = eta_character(&lat.over_k);
    let a = lat.k_over_f.find_traceless();
    let a_l = lat.over_k.embedding.apply(&a);
    // trace-zero over F forces trace-zero over both complementary subfields,
    // which is what lets one witness serve every factor below
    assert!(lat.over_k1.trace(&a_l).is_zero());
    assert!(lat.over_k2.trace(&a_l).is_zero());

    let mut reports = Vec::new();
    for chi in enumerate_chars(&lat.k, max_den) {
        if !chi.restrict(&lat.k_over_f.embedding).is_trivial() {
            continue;
        }
        let mu = d.omega.mul(&chi.compose_with_norm(&lat.over_k));
        // the twist cannot leave the regime: on the chosen subfield the norm
        // of L/K restricts to the norm onto F, where chi dies
        let eps_mu = fq_epsilon(&mu, pair, &psi_l)?.exact.unwrap();
        let epsilon = lambda + eps_mu + mu.eval(&a_l) + eta.eval(&a);
        let is_one = epsilon.is_zero();
        reports.push(TwistReport {
            chi,
            mu,
            epsilon,
            is_one,
        });
    }
    let all = reports.iter().all(|r| r.is_one);
    Ok((all, reports))
}
