//! Sampling parameter-ideal families and tabulating `Fte`, the relative HSL
//! number at `H^0`, the identity between them and the shift inequality.
//!
//! CSV columns (fixed):
//! `row, mode, ideal, param, sop, fte, rel_hsl, stabilized_at,
//! identity_holds, shift_e0, fte_shifted, shift_holds, shift_equal,
//! oracle_fte, oracle_verified, wall_time_ms, error`.
//! The JSON report carries the same rows plus each closure certificate.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter_regular::{build_filter_regular_sop, random_parameter_ideal, DEFAULT_MAX_ATTEMPTS};
use crate::frobenius::{frobenius_closure, shift_check};
use crate::groebner::{Ideal, Ring};
use crate::h0_relative::rel_zero_closure_h0_with;
use crate::ideal_ops::bracket_power;
use crate::oracle::{verify_certificate, OracleConfig, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `q^[p^e]` for `e` in the parameter list
    BracketFamily,
    /// `(x_1^n, ..., x_d^n)` for a filter regular sop `x` of `q`
    PowerFamily,
    /// random parameter ideals
    RandomSops,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::BracketFamily => "bracket-family",
            Mode::PowerFamily => "power-family",
            Mode::RandomSops => "random-sops",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub base_ideal: Option<Ideal>,
    pub params: Vec<u64>,
    pub count: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub window: u32,
    pub e_max: u32,
    pub shift_e0: u32,
    pub oracle: bool,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExperimentRow {
    pub row: usize,
    pub mode: String,
    pub ideal: String,
    pub param: u64,
    pub sop: String,
    pub fte: Option<u32>,
    pub rel_hsl: Option<u32>,
    pub stabilized_at: Option<u32>,
    pub identity_holds: Option<bool>,
    pub shift_e0: u32,
    pub fte_shifted: Option<u32>,
    pub shift_holds: Option<bool>,
    pub shift_equal: Option<bool>,
    pub oracle_fte: Option<u32>,
    pub oracle_verified: bool,
    pub wall_time_ms: u64,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
struct JsonRow {
    #[serde(flatten)]
    row: ExperimentRow,
    certificate: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub errors: usize,
    /// Empirical lower bound for `Fte(R)`.
    pub max_fte: Option<u32>,
    pub identity_failures: usize,
    pub shift_violations: usize,
    pub shift_equal_rate: Option<f64>,
    pub oracle_verified: usize,
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub mode: Mode,
    pub seed: u64,
    pub rows: Vec<ExperimentRow>,
    certificates: Vec<Option<serde_json::Value>>,
    pub summary: Summary,
}

fn describe(ideal: &Ideal) -> String {
    ideal.to_string()
}

fn row_for(row: usize, q: &Ideal, param: u64, cfg: &ExperimentConfig) -> (ExperimentRow, Option<serde_json::Value>) {
    let start = Instant::now();
    let mut out = ExperimentRow {
        row,
        mode: cfg.mode.name().into(),
        ideal: describe(q),
        param,
        sop: String::new(),
        fte: None,
        rel_hsl: None,
        stabilized_at: None,
        identity_holds: None,
        shift_e0: cfg.shift_e0,
        fte_shifted: None,
        shift_holds: None,
        shift_equal: None,
        oracle_fte: None,
        oracle_verified: false,
        wall_time_ms: 0,
        error: String::new(),
    };
    let mut errors: Vec<String> = Vec::new();
    let mut certificate = None;
    match build_filter_regular_sop(q, cfg.seed.wrapping_add(row as u64), DEFAULT_MAX_ATTEMPTS) {
        Ok(sop) => {
            let s: Vec<String> = sop.elements.iter().map(ToString::to_string).collect();
            out.sop = format!("({})", s.join(", "));
        }
        Err(e) => errors.push(format!("sop: {e}")),
    }
    match frobenius_closure(q, cfg.window, cfg.e_max) {
        Ok(mut cert) => {
            out.stabilized_at = Some(cert.stabilized_at);
            out.fte = cert.fte;
            if cert.inconclusive {
                errors.push(Error::Inconclusive { e_max: cfg.e_max }.to_string());
            }
            if let Some(fte) = cert.fte {
                match rel_zero_closure_h0_with(q, cfg.window, cfg.e_max) {
                    Ok(rel) => {
                        out.rel_hsl = Some(rel.rel_hsl);
                        let same = rel.rel_closure.equals(&cert.closure).unwrap_or(false);
                        out.identity_holds = Some(same && rel.rel_hsl == fte);
                    }
                    Err(e) => errors.push(format!("rel-closure: {e}")),
                }
                match shift_check(q, fte, cfg.shift_e0, cfg.window, cfg.e_max) {
                    Ok(s) => {
                        out.fte_shifted = Some(s.fte_shifted);
                        out.shift_holds = Some(s.holds);
                        out.shift_equal = Some(s.equal);
                    }
                    Err(e) => errors.push(format!("shift: {e}")),
                }
                if cfg.oracle {
                    match verify_certificate(&mut cert, &OracleConfig::default()) {
                        Ok((verdict, o)) => {
                            out.oracle_fte = o.map(|o| o.fte);
                            match verdict {
                                Verdict::Agree => out.oracle_verified = true,
                                Verdict::Disagree(msg) => errors.push(format!("oracle disagreement: {msg}")),
                                Verdict::OutOfReach(_) => {}
                            }
                        }
                        Err(e) => errors.push(format!("oracle: {e}")),
                    }
                }
            }
            certificate = Some(cert.to_json());
        }
        Err(e) => errors.push(format!("closure: {e}")),
    }
    if cfg.timings {
        out.wall_time_ms = start.elapsed().as_millis() as u64;
    }
    out.error = errors.join("; ");
    (out, certificate)
}

pub fn run_experiment(ring: &Ring, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut rows = Vec::new();
    let mut certificates = Vec::new();
    let base = || {
        cfg.base_ideal
            .clone()
            .ok_or_else(|| Error::InvalidArgument(format!("--ideal is required for {}", cfg.mode.name())))
    };
    match cfg.mode {
        Mode::BracketFamily => {
            let q = base()?;
            for (row, &e) in cfg.params.iter().enumerate() {
                let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                let (r, c) = row_for(row, &bracket_power(&q, e)?, e as u64, cfg);
                rows.push(r);
                certificates.push(c);
            }
        }
        Mode::PowerFamily => {
            let q = base()?;
            let sop = build_filter_regular_sop(&q, cfg.seed, DEFAULT_MAX_ATTEMPTS)?;
            for (row, &n) in cfg.params.iter().enumerate() {
                let qn = Ideal::new(ring, sop.powers(n)?);
                let (r, c) = row_for(row, &qn, n, cfg);
                rows.push(r);
                certificates.push(c);
            }
        }
        Mode::RandomSops => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for row in 0..cfg.count {
                let q = random_parameter_ideal(ring, &mut rng, cfg.max_degree, 1000)?;
                let (r, c) = row_for(row, &q, row as u64, cfg);
                rows.push(r);
                certificates.push(c);
            }
        }
    }
    let summary = summarize(&rows);
    Ok(ExperimentReport {
        mode: cfg.mode,
        seed: cfg.seed,
        rows,
        certificates,
        summary,
    })
}

fn summarize(rows: &[ExperimentRow]) -> Summary {
    let shift: Vec<bool> = rows.iter().filter_map(|r| r.shift_equal).collect();
    Summary {
        rows: rows.len(),
        errors: rows.iter().filter(|r| !r.error.is_empty()).count(),
        max_fte: rows.iter().filter_map(|r| r.fte).max(),
        identity_failures: rows.iter().filter(|r| r.identity_holds == Some(false)).count(),
        shift_violations: rows.iter().filter(|r| r.shift_holds == Some(false)).count(),
        shift_equal_rate: (!shift.is_empty())
            .then(|| shift.iter().filter(|&&b| b).count() as f64 / shift.len() as f64),
        oracle_verified: rows.iter().filter(|r| r.oracle_verified).count(),
    }
}

impl ExperimentReport {
    /// Rows claiming oracle verification must carry the oracle's value.
    fn check_rows(&self) -> Result<()> {
        for r in &self.rows {
            if r.oracle_verified && (r.oracle_fte.is_none() || r.oracle_fte != r.fte) {
                return Err(Error::InvariantViolation(format!(
                    "row {} is marked oracle-verified but fte {:?} ≠ oracle {:?}",
                    r.row, r.fte, r.oracle_fte
                )));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        self.check_rows()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn to_json(&self, ring: serde_json::Value) -> Result<serde_json::Value> {
        self.check_rows()?;
        let rows: Vec<JsonRow> = self
            .rows
            .iter()
            .zip(&self.certificates)
            .map(|(r, c)| JsonRow {
                row: r.clone(),
                certificate: c.clone(),
            })
            .collect();
        Ok(serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "mode": self.mode,
            "seed": self.seed,
            "ring": ring,
            "rows": rows,
            "summary": self.summary,
        }))
    }
}
