//! Command-line front end.
//!
//! Exit codes are a stable contract: 0 success, 2 parse error, 3 violated
//! mathematical precondition, 4 regime refusal (an exact path deliberately
//! unavailable).  JSON is the machine format, aligned tables the human one;
//! both are deterministic for a fixed invocation.

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::chars::MultChar;
use crate::distinction::{decide_dihedral, enumerate_verdicts, DihedralDatum, Verdict, VerdictKind};
use crate::epsilon::{fq_epsilon, gauss_epsilon, hakim_check, AdditiveChar};
use crate::error::{Error, Result};
use crate::fieldspec::{parse_char_spec, parse_field_spec, FieldSpec};
use crate::padic::smallest_nonresidue;
use crate::tower::{classify_tower, LatticeContext, QuadraticPair, TowerField};
use crate::verify::{run_all, VerifyConfig};

/// One resolved invocation: global knobs shared by every subcommand.
pub struct RunConfig {
    pub prime: u64,
    pub precision: u32,
    pub max_denominator: u64,
    pub format: Format,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Gauss,
}

#[derive(Parser)]
#[command(
    name = "dihedral",
    about = "Distinction of dihedral representations over quadratic towers of Qp",
    version
)]
struct Cli {
    /// Residue characteristic (3, 5, 7, 11, or 13)
    #[arg(long = "p", global = true, default_value_t = 3)]
    p: u64,

    /// Requested working precision in p-adic digits (8..=32; the engine
    /// always computes on its full 32-digit window, so any request in range
    /// is satisfied)
    #[arg(long, global = true, default_value_t = 24)]
    precision: u32,

    /// Denominator bound for enumerated character values at the uniformizer
    #[arg(long = "max-denominator", global = true, default_value_t = 8)]
    max_denominator: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed echoed into sampling hooks; all shipped computations are
    /// exhaustive, so output does not depend on it
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a tower spec and list the lattice members
    Classify { spec: String },
    /// Decide distinction for a character on the top field of a tower
    Decide { spec: String, omega: String },
    /// Decide every tame character up to the denominator bound
    Enumerate { spec: String },
    /// Epsilon factor of a character on the top step of a tower
    Epsilon {
        spec: String,
        chi: String,
        /// Consult the numerical Gauss-sum oracle (required outside the
        /// exact regime)
        #[arg(long, value_enum)]
        oracle: Option<OracleKind>,
        /// Run the full twist chain over the datum instead of a single value
        #[arg(long)]
        hakim: bool,
    },
    /// Run every claim in the verification registry
    VerifyPaper,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = RunConfig {
        prime: cli.p,
        precision: cli.precision,
        max_denominator: cli.max_denominator,
        format: cli.format,
        seed: cli.seed,
    };
    match dispatch(&cfg, &cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cfg: &RunConfig, cmd: &Cmd) -> Result<i32> {
    if ![3, 5, 7, 11, 13].contains(&cfg.prime) {
        return Err(Error::Precondition(format!(
            "prime {} is outside the supported range 3, 5, 7, 11, 13",
            cfg.prime
        )));
    }
    if !(8..=32).contains(&cfg.precision) {
        return Err(Error::Precondition(format!(
            "precision {} is outside 8..=32 (the engine's working window is 32 digits)",
            cfg.precision
        )));
    }
    if cfg.max_denominator == 0 {
        return Err(Error::Precondition(
            "the denominator bound must be positive".into(),
        ));
    }
    match cmd {
        Cmd::Classify { spec } => cmd_classify(cfg, spec),
        Cmd::Decide { spec, omega } => cmd_decide(cfg, spec, omega),
        Cmd::Enumerate { spec } => cmd_enumerate(cfg, spec),
        Cmd::Epsilon {
            spec,
            chi,
            oracle,
            hakim,
        } => cmd_epsilon(cfg, spec, chi, oracle.is_some(), *hakim),
        Cmd::VerifyPaper => cmd_verify_paper(cfg),
    }
}

/// Parse and build, requiring the full two-step tower.
fn quartic_tower(cfg: &RunConfig, spec: &str) -> Result<(FieldSpec, Arc<TowerField>)> {
    let fs = parse_field_spec(spec)?;
    if fs.top.is_none() {
        return Err(Error::Precondition(
            "this command needs a quartic tower; add an L step to the field spec".into(),
        ));
    }
    let l = fs.build(cfg.prime)?;
    Ok((fs, l))
}

fn class_label(class: crate::padic::SquareClass) -> &'static str {
    use crate::padic::SquareClass::*;
    match class {
        One => "1",
        U => "u",
        Pi => "p",
        UPi => "up",
    }
}

/// Square class over F of a quadratic subfield's generator.
fn subfield_label(k: &Arc<TowerField>) -> String {
    let gen = k.generator_square().expect("level-one field");
    let class = crate::padic::SquareClass::of(&gen.coords()[0]).expect("non-square generator");
    format!("F(sqrt({}))", class_label(class))
}

fn cmd_classify(cfg: &RunConfig, spec: &str) -> Result<i32> {
    let (fs, l) = quartic_tower(cfg, spec)?;
    let context = classify_tower(&l)?;
    let u = smallest_nonresidue(cfg.prime);

    let (kind, members): (&str, Vec<(String, String, String)>) = match &context {
        LatticeContext::Biquadratic(lat) => (
            "biquadratic",
            vec![
                (
                    "K'".into(),
                    subfield_label(&lat.k1),
                    "complementary quadratic subfield".into(),
                ),
                (
                    "K''".into(),
                    subfield_label(&lat.k2),
                    "complementary quadratic subfield".into(),
                ),
            ],
        ),
        LatticeContext::Cyclic(_) => (
            "cyclic-quartic",
            vec![(
                "K".into(),
                format!("F(sqrt({}))", fs.k_class.as_str()),
                "the unique quadratic subfield".into(),
            )],
        ),
        LatticeContext::NonGalois(_) => (
            "non-galois-quartic",
            vec![
                (
                    "L'".into(),
                    "K(sqrt(u*pi))".into(),
                    "the conjugate quartic".into(),
                ),
                ("M".into(), "L(sqrt(u))".into(), "the Galois closure L(i)".into()),
                ("B".into(), "K(sqrt(u))".into(), "K(i)".into()),
                ("K'".into(), "F(sqrt(u))".into(), "F(i)".into()),
            ],
        ),
    };

    match cfg.format {
        Format::Json => {
            let out = json!({
                "tower": fs.to_string(),
                "p": cfg.prime,
                "type": kind,
                "e": l.ramification(),
                "f": l.residue_degree(),
                "members": members
                    .iter()
                    .map(|(n, f, note)| json!({"name": n, "field": f, "note": note}))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!("tower: {fs}   (p = {}, u = {u})", cfg.prime);
            println!("type:  {kind}");
            println!("L/Qp:  e = {}, f = {}", l.ramification(), l.residue_degree());
            for (n, f, note) in &members {
                println!("{n:<5}  {f:<18} {note}");
            }
        }
    }
    Ok(0)
}

fn char_json(chi: &MultChar) -> serde_json::Value {
    json!({
        "t": chi.at_uniformizer().to_string(),
        "m": chi.residue_exponent(),
    })
}

fn verdict_json(lattice: &FieldSpec, omega: &MultChar, regular: bool, v: &Verdict) -> serde_json::Value {
    json!({
        "lattice": lattice.to_string(),
        "omega": char_json(omega),
        "regular": regular,
        "plus_distinguished": v.plus,
        "verdict": v.kind.as_str(),
        "witness": v.witness,
    })
}

fn cmd_decide(cfg: &RunConfig, spec: &str, omega: &str) -> Result<i32> {
    let (fs, l) = quartic_tower(cfg, spec)?;
    let omega = parse_char_spec(omega, &l)?;
    let d = DihedralDatum::new(&l, omega)?;
    let verdict = decide_dihedral(&d)?;
    match cfg.format {
        Format::Json => {
            let out = verdict_json(&fs, &d.omega, d.regular, &verdict);
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!("lattice:            {fs}");
            println!("omega:              t = {}, m = {}", d.omega.at_uniformizer(), d.omega.residue_exponent());
            println!("regular:            {}", d.regular);
            println!("plus_distinguished: {}", verdict.plus);
            println!("verdict:            {}", verdict.kind.as_str());
            println!("witness:            {}", verdict.witness);
        }
    }
    Ok(0)
}

fn cmd_enumerate(cfg: &RunConfig, spec: &str) -> Result<i32> {
    let (fs, l) = quartic_tower(cfg, spec)?;
    let context = Arc::new(classify_tower(&l)?);
    let rows = enumerate_verdicts(&l, cfg.max_denominator)?;
    let count_of = |kind: VerdictKind| rows.iter().filter(|(_, v)| v.kind == kind).count();
    let counts = [
        VerdictKind::Distinguished,
        VerdictKind::EtaDistinguished,
        VerdictKind::NotDistinguished,
    ]
    .map(|k| (k.as_str(), count_of(k)));
    let regular_of = |omega: &MultChar| {
        DihedralDatum::with_context(context.clone(), omega.clone())
            .unwrap()
            .regular
    };

    match cfg.format {
        Format::Json => {
            let mut count_map = serde_json::Map::new();
            for (k, n) in &counts {
                count_map.insert((*k).into(), json!(n));
            }
            let out = json!({
                "lattice": fs.to_string(),
                "max_denominator": cfg.max_denominator,
                "total": rows.len(),
                "counts": count_map,
                "verdicts": rows
                    .iter()
                    .map(|(omega, v)| verdict_json(&fs, omega, regular_of(omega), v))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!("lattice: {fs}   denominators <= {}", cfg.max_denominator);
            println!("{:<8}{:<5}{:<9}{:<6}{:<19}witness", "t", "m", "regular", "plus", "verdict");
            for (omega, v) in &rows {
                println!(
                    "{:<8}{:<5}{:<9}{:<6}{:<19}{}",
                    omega.at_uniformizer().to_string(),
                    omega.residue_exponent(),
                    if regular_of(omega) { "yes" } else { "no" },
                    if v.plus { "yes" } else { "no" },
                    v.kind.as_str(),
                    v.witness,
                );
            }
            let line: Vec<String> = counts.iter().map(|(k, n)| format!("{k}: {n}")).collect();
            println!("total: {}   {}", rows.len(), line.join("   "));
        }
    }
    Ok(0)
}

fn cmd_epsilon(cfg: &RunConfig, spec: &str, chi: &str, oracle: bool, hakim: bool) -> Result<i32> {
    let fs = parse_field_spec(spec)?;
    let top = fs.build(cfg.prime)?;
    let chi = parse_char_spec(chi, &top)?;

    if hakim {
        if fs.top.is_none() {
            return Err(Error::Precondition(
                "the twist chain needs a quartic tower; add an L step".into(),
            ));
        }
        let d = DihedralDatum::new(&top, chi)?;
        let (all_one, twists) = hakim_check(&d, cfg.max_denominator)?;
        match cfg.format {
            Format::Json => {
                let out = json!({
                    "lattice": fs.to_string(),
                    "all_one": all_one,
                    "twists": twists
                        .iter()
                        .map(|t| json!({
                            "chi": char_json(&t.chi),
                            "mu": char_json(&t.mu),
                            "epsilon_exact": t.epsilon.to_string(),
                            "epsilon_is_one": t.is_one,
                        }))
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
            Format::Table => {
                println!("lattice: {fs}   twists with denominators <= {}", cfg.max_denominator);
                println!("{:<20}{:<20}{:<10}is_one", "chi (t, m)", "mu (t, m)", "epsilon");
                for t in &twists {
                    println!(
                        "{:<20}{:<20}{:<10}{}",
                        format!("({}, {})", t.chi.at_uniformizer(), t.chi.residue_exponent()),
                        format!("({}, {})", t.mu.at_uniformizer(), t.mu.residue_exponent()),
                        t.epsilon.to_string(),
                        t.is_one,
                    );
                }
                println!("all_one: {all_one}");
            }
        }
        return Ok(0);
    }

    let pair = QuadraticPair::from_step(&top);
    let psi = AdditiveChar::standard(&top);
    let in_regime = chi.restrict(&pair.embedding).is_trivial();
    if !in_regime && !oracle {
        return Err(Error::RegimeRefusal(
            "the character is not trivial on the lower field, so the traceless evaluation \
             does not apply; pass --oracle gauss for the numerical value"
                .into(),
        ));
    }

    let exact = if in_regime {
        Some(fq_epsilon(&chi, &pair, &psi)?)
    } else {
        None
    };
    let approx = if oracle {
        Some(gauss_epsilon(&chi, &psi)?)
    } else {
        None
    };

    match cfg.format {
        Format::Json => {
            let mut out = serde_json::Map::new();
            out.insert("chi".into(), char_json(&chi));
            if let Some(e) = &exact {
                let v = e.exact.as_ref().unwrap();
                out.insert("provenance".into(), json!(e.provenance.as_str()));
                out.insert("epsilon_exact".into(), json!(v.to_string()));
                out.insert("epsilon_is_one".into(), json!(e.is_one()));
            }
            if let Some(g) = &approx {
                let (re, im) = g.complex();
                out.insert("oracle".into(), json!({"re": re, "im": im}));
                if exact.is_none() {
                    out.insert("provenance".into(), json!(g.provenance.as_str()));
                }
            }
            println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(out)).unwrap());
        }
        Format::Table => {
            println!("chi: t = {}, m = {}", chi.at_uniformizer(), chi.residue_exponent());
            if let Some(e) = &exact {
                let v = e.exact.as_ref().unwrap();
                println!("epsilon_exact:  {v}   (is_one: {})", e.is_one());
            }
            if let Some(g) = &approx {
                let (re, im) = g.complex();
                println!("oracle:         {re:.12} + {im:.12}i");
            }
        }
    }
    Ok(0)
}

fn cmd_verify_paper(cfg: &RunConfig) -> Result<i32> {
    let vc = VerifyConfig::new(cfg.prime, cfg.max_denominator)?;
    let reports = run_all(&vc);
    let all = reports.iter().all(|r| r.passed);
    match cfg.format {
        Format::Json => {
            let out = json!(reports
                .iter()
                .map(|r| json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "millis": r.millis,
                    "detail": r.detail,
                }))
                .collect::<Vec<_>>());
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            for r in &reports {
                println!(
                    "{} {:>2} {:<36} {:>6} ms  {}",
                    if r.passed { "  ok" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.millis,
                    r.detail,
                );
            }
            println!(
                "{}/{} criteria passed (p = {}, denominators <= {})",
                reports.iter().filter(|r| r.passed).count(),
                reports.len(),
                vc.prime,
                vc.max_den,
            );
        }
    }
    Ok(if all { 0 } else { 1 })
}
