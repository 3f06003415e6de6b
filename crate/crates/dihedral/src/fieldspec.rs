//! Text form of towers and characters, as accepted on the command line.
//!
//! The language is tiny and regular: an optional ground marker, a quadratic
//! step over the ground field named by its square class, and an optional
//! top step.  Square-class symbols are relative to the configured prime, so
//! the same spec builds the analogous tower at every p.  Errors carry the
//! byte position where parsing stopped.
//!
//!   spec   = [ "F=Qp" ";" ] "K=sqrt(" kclass ")" [ ";" lstep ]
//!   kclass = "u" | "p" | "up"
//!   lstep  = "L=" ( "sqrt(" lgen ")" | "4rt(p)" )
//!   lgen   = "u" | "p" | "up" | "T" | "pi"
//!
//! `u` is the smallest quadratic nonresidue, `T` the residue generator of
//! K, `pi` its uniformizer.  `4rt(p)` adjoins a square root of the
//! uniformizer of K = F(sqrt p), making the tower an honest fourth root
//! of p; it refuses any other middle step.

use std::fmt;
use std::sync::Arc;

use crate::chars::MultChar;
use crate::cyclo::CycloValue;
use crate::error::{Error, Result};
use crate::padic::smallest_nonresidue;
use crate::tower::{make_quadratic, mu_generator, FieldElement, TowerField};

/// Square class of the ground field, named as in the input grammar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassToken {
    U,
    P,
    Up,
}

impl ClassToken {
    /// A concrete integer generator of the class at the given prime.
    pub fn value(self, p: u64) -> i64 {
        let u = smallest_nonresidue(p) as i64;
        match self {
            ClassToken::U => u,
            ClassToken::P => p as i64,
            ClassToken::Up => u * p as i64,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassToken::U => "u",
            ClassToken::P => "p",
            ClassToken::Up => "up",
        }
    }
}

/// Generator named in the top step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopToken {
    Class(ClassToken),
    /// The residue generator of K.
    Teich,
    /// The uniformizer of K.
    Pi,
}

impl TopToken {
    pub fn as_str(self) -> &'static str {
        match self {
            TopToken::Class(c) => c.as_str(),
            TopToken::Teich => "T",
            TopToken::Pi => "pi",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopStep {
    Sqrt(TopToken),
    FourthRoot,
}

/// A parsed tower description: one or two quadratic steps over Q_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FieldSpec {
    pub k_class: ClassToken,
    pub top: Option<TopStep>,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K=sqrt({})", self.k_class.as_str())?;
        match self.top {
            None => Ok(()),
            Some(TopStep::Sqrt(tok)) => write!(f, ";L=sqrt({})", tok.as_str()),
            Some(TopStep::FourthRoot) => write!(f, ";L=4rt(p)"),
        }
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn done(&self) -> bool {
        self.pos == self.s.len()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{lit}`")))
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn finish(&self) -> Result<()> {
        if self.done() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".into()))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat("-");
        let start = self.pos;
        let mut val: i64 = 0;
        while let Some(d) = self.rest().bytes().next().filter(u8::is_ascii_digit) {
            val = val
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as i64))
                .ok_or_else(|| self.error("number out of range".into()))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number".into()));
        }
        Ok(if neg { -val } else { val })
    }
}

// longest match first: `up` shadows `u`, `pi` shadows `p`
fn class_token(c: &mut Cursor) -> Result<ClassToken> {
    if c.eat("up") {
        Ok(ClassToken::Up)
    } else if c.eat("u") {
        Ok(ClassToken::U)
    } else if c.eat("p") {
        Ok(ClassToken::P)
    } else {
        Err(c.error("expected a square class: `u`, `p`, or `up`".into()))
    }
}

fn top_token(c: &mut Cursor) -> Result<TopToken> {
    if c.eat("up") {
        Ok(TopToken::Class(ClassToken::Up))
    } else if c.eat("u") {
        Ok(TopToken::Class(ClassToken::U))
    } else if c.eat("pi") {
        Ok(TopToken::Pi)
    } else if c.eat("p") {
        Ok(TopToken::Class(ClassToken::P))
    } else if c.eat("T") {
        Ok(TopToken::Teich)
    } else {
        Err(c.error("expected a generator: `u`, `p`, `up`, `T`, or `pi`".into()))
    }
}

pub fn parse_field_spec(input: &str) -> Result<FieldSpec> {
    let mut c = Cursor::new(input);
    if c.eat("F=Qp") {
        c.expect(";")?;
    }
    c.expect("K=sqrt(")?;
    let k_class = class_token(&mut c)?;
    c.expect(")")?;
    let top = if c.done() {
        None
    } else {
        c.expect(";")?;
        c.expect("L=")?;
        if c.eat("4rt(p)") {
            Some(TopStep::FourthRoot)
        } else {
            c.expect("sqrt(")?;
            let tok = top_token(&mut c)?;
            c.expect(")")?;
            Some(TopStep::Sqrt(tok))
        }
    };
    c.finish()?;
    Ok(FieldSpec { k_class, top })
}

impl FieldSpec {
    /// Realize the spec as a concrete tower at the given prime.
    pub fn build(&self, p: u64) -> Result<Arc<TowerField>> {
        let f = TowerField::qp(p);
        let k = make_quadratic(&f, &FieldElement::from_integer(&f, self.k_class.value(p)))?;
        let Some(top) = self.top else {
            return Ok(k);
        };
        let g = match top {
            TopStep::Sqrt(TopToken::Class(cls)) => FieldElement::from_integer(&k, cls.value(p)),
            TopStep::Sqrt(TopToken::Teich) => mu_generator(&k).clone(),
            TopStep::Sqrt(TopToken::Pi) => k.uniformizer().clone(),
            TopStep::FourthRoot => {
                if self.k_class != ClassToken::P {
                    return Err(Error::Precondition(
                        "a fourth root of p needs the middle step K = F(sqrt p)".into(),
                    ));
                }
                k.uniformizer().clone()
            }
        };
        make_quadratic(&k, &g)
    }
}

/// Parse `t=<rational>;m=<integer>` into a tame character of the field.
/// The uniformizer value is reduced into [0, 1) and the residue exponent
/// modulo q - 1, so equivalent specs give equal characters.
pub fn parse_char_spec(input: &str, field: &Arc<TowerField>) -> Result<MultChar> {
    let mut c = Cursor::new(input);
    c.expect("t=")?;
    let num = c.integer()?;
    let t = if c.eat("/") {
        let den_pos = c.pos;
        let den = c.integer()?;
        if den == 0 {
            return Err(Error::Parse {
                pos: den_pos,
                msg: "zero denominator".into(),
            });
        }
        CycloValue::new(num, den)
    } else {
        CycloValue::new(num, 1)
    };
    c.expect(";")?;
    c.expect("m=")?;
    let m_pos = c.pos;
    let m = c.integer()?;
    if m < 0 {
        return Err(Error::Parse {
            pos: m_pos,
            msg: "the residue exponent is a nonnegative integer".into(),
        });
    }
    c.finish()?;
    Ok(MultChar::new(field, t, m as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{galois_type, GaloisType};

    fn parse(s: &str) -> FieldSpec {
        parse_field_spec(s).unwrap()
    }

    fn parse_pos(s: &str) -> usize {
        match parse_field_spec(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn specs_round_trip_through_display() {
        for s in [
            "K=sqrt(u)",
            "K=sqrt(p)",
            "K=sqrt(up)",
            "K=sqrt(p);L=sqrt(u)",
            "K=sqrt(u);L=sqrt(T)",
            "K=sqrt(p);L=sqrt(pi)",
            "K=sqrt(p);L=4rt(p)",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
        // the ground marker is accepted and dropped from the canonical form
        assert_eq!(parse("F=Qp;K=sqrt(u)").to_string(), "K=sqrt(u)");
    }

    #[test]
    fn parse_errors_point_at_the_offending_byte() {
        assert_eq!(parse_pos("K=sqrt(x)"), 7);
        assert_eq!(parse_pos(""), 0);
        assert_eq!(parse_pos("F=Qp"), 4);
        assert_eq!(parse_pos("K=sqrt(u)L=sqrt(p)"), 9);
        assert_eq!(parse_pos("K=sqrt(u);L=cbrt(p)"), 12);
        assert_eq!(parse_pos("K=sqrt(u);L=sqrt(p);more"), 19);
        assert!(matches!(
            parse_field_spec("K=sqrt(q)"),
            Err(e @ Error::Parse { .. }) if e.exit_code() == 2
        ));
    }

    #[test]
    fn built_towers_land_in_the_expected_galois_classes() {
        let bi = parse("K=sqrt(p);L=sqrt(u)").build(3).unwrap();
        assert_eq!(galois_type(&bi).kind, GaloisType::Biquadratic);

        let cy = parse("K=sqrt(u);L=sqrt(T)").build(3).unwrap();
        assert_eq!(galois_type(&cy).kind, GaloisType::CyclicQuartic);

        let ng = parse("K=sqrt(p);L=4rt(p)").build(3).unwrap();
        assert_eq!(galois_type(&ng).kind, GaloisType::NonGaloisQuartic);
        assert_eq!(ng.ramification(), 4);

        // the fourth root of p at p = 5 is cyclic: -1 is a square there
        let cy5 = parse("K=sqrt(p);L=sqrt(pi)").build(5).unwrap();
        assert_eq!(galois_type(&cy5).kind, GaloisType::CyclicQuartic);
    }

    #[test]
    fn degenerate_generators_are_mathematical_errors_not_parse_errors() {
        // u is a square inside F(sqrt u)
        match parse("K=sqrt(u);L=sqrt(u)").build(3) {
            Err(e @ Error::SquareGenerator) => assert_eq!(e.exit_code(), 3),
            _ => panic!("expected a square-generator refusal"),
        }
        match parse("K=sqrt(u);L=4rt(p)").build(3) {
            Err(Error::Precondition(_)) => {}
            _ => panic!("a fourth root of p must insist on K = F(sqrt p)"),
        }
    }

    #[test]
    fn char_specs_normalize_their_values() {
        let k = parse("K=sqrt(p)").build(3).unwrap();
        let chi = parse_char_spec("t=1/8;m=3", &k).unwrap();
        assert_eq!(chi.at_uniformizer(), CycloValue::new(1, 8));
        assert_eq!(chi.residue_exponent(), 1); // reduced mod q - 1 = 2

        let chi = parse_char_spec("t=-1/4;m=0", &k).unwrap();
        assert_eq!(chi.at_uniformizer(), CycloValue::new(3, 4));

        let chi = parse_char_spec("t=2;m=1", &k).unwrap();
        assert!(chi.at_uniformizer().is_zero());

        for (bad, pos) in [("t=1/0;m=2", 4), ("t=1/8", 5), ("t=1/8;m=-3", 8), ("x", 0)] {
            match parse_char_spec(bad, &k) {
                Err(Error::Parse { pos: got, .. }) => assert_eq!(got, pos, "spec {bad}"),
                other => panic!("expected a parse error for {bad}, got {other:?}"),
            }
        }
    }
}
