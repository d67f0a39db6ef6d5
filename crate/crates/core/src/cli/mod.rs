//! The `frobkit` command line. Every subcommand prints one JSON document on
//! stdout. Exit codes: 0 success, 2 inconclusive certificate, 1 error (with
//! `{"error": {"code", "message"}}` on stderr).

pub mod experiment;
pub mod ringfile;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filter_regular::{build_filter_regular_sop, is_filter_regular, DEFAULT_MAX_ATTEMPTS};
use crate::frobenius::{frobenius_closure, frobenius_preimage, DEFAULT_E_MAX, DEFAULT_WINDOW};
use crate::frobmod::{hsl, make_frob_module, zero_closure};
use crate::groebner::{Ideal, Ring};
use crate::h0_relative::{bound_formula, h0, rel_zero_closure_h0_with};
use crate::ideal_ops::{bracket_power, colon, krull_dim, saturate};
use crate::oracle::{oracle_zero_closure, verify_certificate, OracleConfig, Verdict, DEFAULT_ELEMENT_CAP, DEFAULT_MODEL_CAP};

use experiment::{run_experiment, ExperimentConfig, Mode};
use ringfile::RingFile;

pub const GB_CAP_ENV: &str = "FROBKIT_GB_CAP";

#[derive(Parser, Debug)]
#[command(name = "frobkit", version, about = "Frobenius closures and test exponents over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct IdealArgs {
    /// `.ring` JSON file
    #[arg(long)]
    ring: PathBuf,
    /// comma-separated generators
    #[arg(long)]
    ideal: String,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: u32,
    #[arg(long, default_value_t = DEFAULT_E_MAX)]
    e_max: u32,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: u128,
    #[arg(long, default_value_t = DEFAULT_MODEL_CAP)]
    model_cap: usize,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            element_cap: self.element_cap,
            model_cap: self.model_cap,
            e_max: None,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of the preimage of the ideal
    Gb(IdealArgs),
    /// Normal form of a polynomial modulo the ideal
    Nf {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    /// Krull dimension of R/I (of R without --ideal)
    Dim {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Colon ideal (I : J)
    Colon {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        by: String,
    },
    /// Saturation (I : J^∞), with J = m by default
    Saturate {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        by: Option<String>,
    },
    /// Bracket power I^[p^e]
    Bracket {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        e: u32,
    },
    /// {x : x^(p^e) ∈ I}
    FrobPreimage {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        e: u32,
    },
    /// Frobenius closure certificate
    Closure {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        chain: ChainArgs,
        /// cross-check with the brute-force oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Frobenius test exponent
    Fte {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        oracle: bool,
    },
    /// Whether an element is filter regular on R/J
    FilterRegular {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        element: String,
    },
    /// Filter regular system of parameters generating a parameter ideal
    BuildSop {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u32,
    },
    /// H^0_m(R/J) = sat(J)/J
    H0(IdealArgs),
    /// Relative Frobenius closure of zero in H^0_m(R/J) and its HSL number
    RelClosure {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Zero closure and HSL number of R/J for m-primary J
    Hsl(IdealArgs),
    /// e0 + Σ_k C(d,k) · hsl_k
    Bound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e0: u64,
        /// comma-separated list of d + 1 values
        #[arg(long)]
        hsl: String,
    },
    /// Recompute closure, Fte, zero closure and HSL by enumeration and compare
    OracleVerify {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Sample parameter-ideal families and write CSV/JSON reports
    Experiment {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// base ideal for the family modes
        #[arg(long)]
        ideal: Option<String>,
        /// e values (bracket-family) or n values (power-family)
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// maximal generator degree for random-sops
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 1)]
        shift_e0: u32,
        #[arg(long)]
        oracle: bool,
        /// record wall times (reports are then no longer reproducible)
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

struct Outcome {
    doc: Value,
    inconclusive: bool,
}

impl From<Value> for Outcome {
    fn from(doc: Value) -> Self {
        Outcome { doc, inconclusive: false }
    }
}

fn step_cap_from_env() -> Result<Option<usize>> {
    match std::env::var(GB_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{GB_CAP_ENV} must be a non-negative integer, got `{s}`"))),
        Err(_) => Ok(None),
    }
}

fn load_ring(path: &std::path::Path) -> Result<(RingFile, Ring)> {
    let rf = RingFile::load(path)?;
    let ring = rf.to_ring(step_cap_from_env()?)?;
    Ok((rf, ring))
}

fn load_ideal(a: &IdealArgs) -> Result<(RingFile, Ring, Ideal)> {
    let (rf, ring) = load_ring(&a.ring)?;
    let ideal = Ideal::parse(&ring, &a.ideal)?;
    Ok((rf, ring, ideal))
}

fn gens(ideal: &Ideal) -> Value {
    json!(ideal.generator_strings())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} value `{}`", t.trim())))
        })
        .collect()
}

fn closure_doc(ideal: &Ideal, chain: &ChainArgs, oracle: bool) -> Result<Outcome> {
    let mut cert = frobenius_closure(ideal, chain.window, chain.e_max)?;
    let mut verdict = Value::Null;
    if oracle {
        let (v, _) = verify_certificate(&mut cert, &OracleConfig::default())?;
        match v {
            Verdict::Disagree(msg) => return Err(Error::InvariantViolation(format!("oracle disagreement: {msg}"))),
            Verdict::OutOfReach(msg) => verdict = json!({"out_of_reach": msg}),
            Verdict::Agree => verdict = json!("agree"),
        }
    }
    let mut doc = cert.to_json();
    if oracle {
        doc["oracle"] = verdict;
    }
    Ok(Outcome {
        doc,
        inconclusive: cert.inconclusive,
    })
}

fn execute(cmd: Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Gb(a) => {
            let (_, _, i) = load_ideal(&a)?;
            json!({ "gb": gens(&i.groebner_basis()?) }).into()
        }
        Command::Nf { ideal, poly } => {
            let (_, ring, i) = load_ideal(&ideal)?;
            let nf = i.normal_form(&ring.parse_poly(&poly)?)?;
            json!({ "normal_form": nf.to_string(), "member": nf.is_zero() }).into()
        }
        Command::Dim { ring, ideal } => {
            let (_, ring) = load_ring(&ring)?;
            let i = match ideal {
                Some(s) => Ideal::parse(&ring, &s)?,
                None => Ideal::zero(&ring),
            };
            json!({ "dim": krull_dim(&i)? }).into()
        }
        Command::Colon { ideal, by } => {
            let (_, ring, i) = load_ideal(&ideal)?;
            let j = Ideal::parse(&ring, &by)?;
            json!({ "colon": gens(&colon(&i, &j)?) }).into()
        }
        Command::Saturate { ideal, by } => {
            let (_, ring, i) = load_ideal(&ideal)?;
            let j = match by {
                Some(s) => Ideal::parse(&ring, &s)?,
                None => ring.maximal_ideal(),
            };
            let (sat, steps) = saturate(&i, &j)?;
            json!({ "saturation": gens(&sat), "steps": steps }).into()
        }
        Command::Bracket { ideal, e } => {
            let (_, _, i) = load_ideal(&ideal)?;
            json!({ "bracket": gens(&bracket_power(&i, e)?) }).into()
        }
        Command::FrobPreimage { ideal, e } => {
            let (_, _, i) = load_ideal(&ideal)?;
            json!({ "preimage": gens(&frobenius_preimage(&i, e)?) }).into()
        }
        Command::Closure { ideal, chain, oracle } => {
            let (_, _, i) = load_ideal(&ideal)?;
            closure_doc(&i, &chain, oracle)?
        }
        Command::Fte { ideal, chain, oracle } => {
            let (_, _, i) = load_ideal(&ideal)?;
            let out = closure_doc(&i, &chain, oracle)?;
            let doc = json!({
                "fte": out.doc["fte"],
                "stabilized_at": out.doc["stabilized_at"],
                "inconclusive": out.doc["inconclusive"],
                "oracle_verified": out.doc["oracle_verified"],
                "certificate": out.doc,
            });
            Outcome {
                doc,
                inconclusive: out.inconclusive,
            }
        }
        Command::FilterRegular { ideal, element } => {
            let (_, ring, j) = load_ideal(&ideal)?;
            let x = ring.parse_poly(&element)?;
            json!({ "filter_regular": is_filter_regular(&x, &j)? }).into()
        }
        Command::BuildSop { ideal, seed, max_attempts } => {
            let (_, _, q) = load_ideal(&ideal)?;
            build_filter_regular_sop(&q, seed, max_attempts)?.to_json().into()
        }
        Command::H0(a) => {
            let (_, _, j) = load_ideal(&a)?;
            let h = h0(&j)?;
            json!({
                "j": gens(&h.j),
                "sat_j": gens(&h.sat_j),
                "saturation_steps": h.saturation_steps,
                "is_zero": h.is_zero()?,
            })
            .into()
        }
        Command::RelClosure { ideal, chain } => {
            let (_, _, j) = load_ideal(&ideal)?;
            rel_zero_closure_h0_with(&j, chain.window, chain.e_max)?.to_json().into()
        }
        Command::Hsl(a) => {
            let (_, _, j) = load_ideal(&a)?;
            let m = make_frob_module(&j)?;
            json!({
                "zero_closure": gens(&zero_closure(&m)?),
                "hsl": hsl(&m)?,
                "length": m.length(),
            })
            .into()
        }
        Command::Bound { d, e0, hsl } => {
            let values: Vec<u64> = parse_list(&hsl, "hsl")?;
            json!({ "bound": bound_formula(d, e0, &values)? }).into()
        }
        Command::OracleVerify { ideal, chain, oracle } => {
            let (_, _, q) = load_ideal(&ideal)?;
            let cfg = oracle.config();
            let mut cert = frobenius_closure(&q, chain.window, chain.e_max)?;
            let (verdict, o) = verify_certificate(&mut cert, &cfg)?;
            let module = make_frob_module(&q)?;
            let k = zero_closure(&module)?;
            let h = hsl(&module)?;
            let oz = oracle_zero_closure(&module, &cfg)?;
            let zero_agree = oz.closure.equals(&k)? && oz.hsl == h;
            let closure_agree = verdict == Verdict::Agree;
            let doc = json!({
                "agree": closure_agree && zero_agree,
                "closure": {
                    "verdict": match &verdict {
                        Verdict::Agree => "agree".to_string(),
                        Verdict::Disagree(m) => format!("disagree: {m}"),
                        Verdict::OutOfReach(m) => format!("out of reach: {m}"),
                    },
                    "fte": cert.fte,
                    "oracle_fte": o.as_ref().map(|o| o.fte),
                    "oracle_e_searched": o.as_ref().map(|o| o.e_searched),
                    "closure": gens(&cert.closure),
                },
                "zero_closure": {
                    "agree": zero_agree,
                    "hsl": h,
                    "oracle_hsl": oz.hsl,
                    "zero_closure": gens(&k),
                },
                "length": oz.length,
            });
            if matches!(verdict, Verdict::Disagree(_)) || !zero_agree {
                return Err(Error::InvariantViolation(format!("oracle disagreement: {doc}")));
            }
            Outcome {
                doc,
                inconclusive: matches!(verdict, Verdict::OutOfReach(_)),
            }
        }
        Command::Experiment {
            ring,
            mode,
            ideal,
            params,
            count,
            seed,
            degree,
            chain,
            shift_e0,
            oracle,
            timings,
            csv,
            json: json_path,
        } => {
            let (rf, ring) = load_ring(&ring)?;
            let base_ideal = ideal.map(|s| Ideal::parse(&ring, &s)).transpose()?;
            let params = match params {
                Some(s) => parse_list(&s, "param")?,
                None if mode == Mode::PowerFamily => vec![1, 2, 3],
                None => vec![0, 1, 2],
            };
            let cfg = ExperimentConfig {
                mode,
                base_ideal,
                params,
                count,
                seed,
                max_degree: degree,
                window: chain.window,
                e_max: chain.e_max,
                shift_e0,
                oracle,
                timings,
            };
            let report = run_experiment(&ring, &cfg)?;
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv()?)?;
            }
            let full = report.to_json(serde_json::to_value(&rf)?)?;
            if let Some(path) = json_path {
                std::fs::write(&path, serde_json::to_string_pretty(&full)? + "\n")?;
            }
            json!({ "schema_version": experiment::SCHEMA_VERSION, "summary": full["summary"] }).into()
        }
    })
}

fn error_doc(code: &str, message: &str) -> String {
    json!({ "error": { "code": code, "message": message } }).to_string()
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "{}", error_doc("usage", e.to_string().trim()));
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.doc).expect("json output");
            let _ = writeln!(stdout, "{text}");
            if out.inconclusive {
                2
            } else {
                0
            }
        }
        Err(Error::Inconclusive { e_max }) => {
            let e = Error::Inconclusive { e_max };
            let _ = writeln!(stderr, "{}", error_doc(e.code(), &e.to_string()));
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_doc(e.code(), &e.to_string()));
            1
        }
    }
}
