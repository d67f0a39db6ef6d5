//! The `H^0_m` slice of relative Frobenius closures.
//!
//! `H^0_m(R/J) = sat(J)/J` with `sat(J) = (J : m^∞)`. The relative Frobenius
//! sends `x + J` to `x^p + J^[p]`, so `x + J` lies in the relative closure of
//! zero iff `x^(p^e) ∈ J^[p^e]` for some `e`, i.e. `x ∈ J^F`. The closure is
//! therefore `J^F ∩ sat(J)`, and for m-primary `q` its HSL number is `Fte(q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter_regular::SopCandidate;
use crate::frobenius::{fte_ideal, frobenius_closure, ClosureCertificate, DEFAULT_E_MAX, DEFAULT_WINDOW};
use crate::groebner::Ideal;
use crate::ideal_ops::{bracket_power, colon, intersect, is_m_primary, saturate};

#[derive(Clone, Debug)]
pub struct H0Module {
    pub j: Ideal,
    pub sat_j: Ideal,
    /// Number of strict colon steps until the saturation stabilized.
    pub saturation_steps: usize,
}

impl H0Module {
    pub fn is_zero(&self) -> Result<bool> {
        self.sat_j.equals(&self.j)
    }
}

pub fn h0(j: &Ideal) -> Result<H0Module> {
    let (sat_j, steps) = saturate(j, &j.ring().maximal_ideal())?;
    if !sat_j.contains_ideal(j)? {
        return Err(Error::InvariantViolation(format!("{j} ⊄ sat = {sat_j}")));
    }
    if !sat_j.equals(j)? && !is_m_primary(&colon(j, &sat_j)?)? {
        return Err(Error::InvariantViolation(format!(
            "sat({j})/J = {sat_j}/J is not supported at m"
        )));
    }
    Ok(H0Module {
        j: j.clone(),
        sat_j,
        saturation_steps: steps,
    })
}

#[derive(Clone, Debug)]
pub struct RelClosureResult {
    pub j: Ideal,
    pub sat_j: Ideal,
    /// `K` with `0^{F_R}_{H^0} = K/J`.
    pub rel_closure: Ideal,
    pub rel_hsl: u32,
    pub certificate: ClosureCertificate,
}

#[derive(Serialize)]
struct RelJson {
    j: Vec<String>,
    sat_j: Vec<String>,
    rel_closure: Vec<String>,
    rel_hsl: u32,
}

impl RelClosureResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RelJson {
            j: self.j.generator_strings(),
            sat_j: self.sat_j.generator_strings(),
            rel_closure: self.rel_closure.generator_strings(),
            rel_hsl: self.rel_hsl,
        })
        .expect("result serializes")
    }
}

pub fn rel_zero_closure_h0(j: &Ideal) -> Result<RelClosureResult> {
    rel_zero_closure_h0_with(j, DEFAULT_WINDOW, DEFAULT_E_MAX)
}

pub fn rel_zero_closure_h0_with(j: &Ideal, window: u32, e_max: u32) -> Result<RelClosureResult> {
    let h = h0(j)?;
    let cert = frobenius_closure(j, window, e_max)?;
    if cert.inconclusive {
        return Err(Error::Inconclusive { e_max });
    }
    let k = intersect(&cert.closure, &h.sat_j)?;
    if !k.contains_ideal(j)? || !h.sat_j.contains_ideal(&k)? {
        return Err(Error::InvariantViolation(format!(
            "relative closure {k} not between {j} and {}",
            h.sat_j
        )));
    }
    let extra: Vec<_> = k.gens().iter().filter(|g| !j.contains(g).unwrap_or(false)).cloned().collect();
    let mut rel_hsl = None;
    'e: for e in 0..=e_max {
        let bj = bracket_power(j, e)?;
        for g in &extra {
            if !bj.contains(&g.frob_pow(e)?)? {
                continue 'e;
            }
        }
        rel_hsl = Some(e);
        break;
    }
    let rel_hsl = rel_hsl.ok_or(Error::ExponentSearchExhausted {
        e_max,
        lower_bound: e_max + 1,
    })?;
    Ok(RelClosureResult {
        j: j.clone(),
        sat_j: h.sat_j,
        rel_closure: k,
        rel_hsl,
        certificate: cert,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FteIdentity {
    pub fte: u32,
    pub rel_hsl: u32,
    pub closures_agree: bool,
    pub holds: bool,
}

/// Both sides of `HSL_R(H^0_m(R/q)) = Fte(q)` for m-primary `q`, the left
/// through `rel_zero_closure_h0` and the right through `fte_ideal`.
pub fn fte_identity(q: &Ideal, window: u32, e_max: u32) -> Result<FteIdentity> {
    if !is_m_primary(q)? {
        return Err(Error::NotMPrimary(q.to_string()));
    }
    let rel = rel_zero_closure_h0_with(q, window, e_max)?;
    let cert = frobenius_closure(q, window, e_max)?;
    let fte = fte_ideal(q, &cert)?;
    let closures_agree = rel.rel_closure.equals(&cert.closure)?;
    Ok(FteIdentity {
        fte,
        rel_hsl: rel.rel_hsl,
        closures_agree,
        holds: closures_agree && fte == rel.rel_hsl,
    })
}

pub fn check_fte_identity(q: &Ideal) -> Result<bool> {
    Ok(fte_identity(q, DEFAULT_WINDOW, DEFAULT_E_MAX)?.holds)
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `e0 + Σ_k C(d, k) · hsl[k]` with `hsl` of length `d + 1`.
pub fn bound_formula(d: u32, e0: u64, hsl: &[u64]) -> Result<u64> {
    if hsl.len() != d as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} HSL values for d = {d}, got {}",
            d + 1,
            hsl.len()
        )));
    }
    let overflow = || Error::InvalidArgument("bound overflows u64".into());
    let mut total = e0;
    for (k, &h) in hsl.iter().enumerate() {
        let c = binomial(d as u64, k as u64).ok_or_else(overflow)?;
        total = c.checked_mul(h).and_then(|t| total.checked_add(t)).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Whether `q^[p^e] · sat(J) ⊆ K` for `J = q_i^[p^e]` and `K/J` the relative
/// closure of zero in `H^0_m(R/J)`; checked on products of generators.
pub fn check_multiplier_containment(q: &Ideal, sop: &SopCandidate, i: usize, e: u32) -> Result<bool> {
    let d = sop.elements.len();
    if i >= d {
        return Err(Error::Precondition(format!("need i < d = {d}, got {i}")));
    }
    if !Ideal::new(q.ring(), sop.elements.clone()).equals(q)? {
        return Err(Error::Precondition("sop does not generate q".into()));
    }
    let j = bracket_power(&sop.prefix(i), e)?;
    let rel = rel_zero_closure_h0(&j)?;
    let bq = bracket_power(q, e)?;
    for a in bq.gens() {
        for b in rel.sat_j.gens() {
            if !rel.rel_closure.contains(&a.mul(b))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
