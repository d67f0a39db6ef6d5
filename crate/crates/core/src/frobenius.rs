//! Frobenius preimages, the Frobenius closure `q^F` of an ideal and the
//! Frobenius test exponent `Fte(q)`.
//!
//! The closure is computed as the ascending chain
//! `C_e = {x : x^(p^e) ∈ q^[p^e]}`, declared stable once it has been
//! constant for `window` consecutive steps. Stability of a single step is
//! not known to propagate, so results are certificates rather than theorems;
//! the `oracle` module cross-checks them on finite quotients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{MonomialOrder, Poly, PolyRing};
use crate::groebner::Ideal;
use std::collections::HashMap;

use crate::ffpoly::Monomial;
use crate::ideal_ops::{
    bracket_power, eliminate_leading_block, fresh_names, ideal_from_grevlex_basis, is_zero_dimensional,
    standard_monomials,
};

pub const DEFAULT_WINDOW: u32 = 2;
pub const DEFAULT_E_MAX: u32 = 10;

/// `{x ∈ R : x^(p^e) ∈ J}`.
///
/// Computed as the preimage of `J_S` under the ring map `y_i ↦ x_i^(p^e)`
/// (over F_p, `f^(p^e) = f(x^(p^e))`): adjoin `y`, eliminate `x` from
/// `J_S + (y_i - x_i^(p^e))` and rename `y` back to `x`.
pub fn frobenius_preimage(j: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 || j.is_unit()? {
        return Ok(j.clone());
    }
    let ring = j.ring();
    let base = ring.ambient();
    let n = base.nvars();
    let q = (base.p() as u64)
        .checked_pow(e)
        .filter(|q| *q <= u32::MAX as u64)
        .ok_or(Error::ExponentOverflow)? as u32;

    let mut vars = base.vars().to_vec();
    vars.extend(fresh_names(base.vars(), "y", n));
    let big = PolyRing::new(base.field(), vars, MonomialOrder::Elimination(n))?;
    let x_block: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Poly> = j
        .preimage_gb()?
        .iter()
        .map(|g| g.remap(&big, &x_block))
        .collect();
    for i in 0..n {
        let xq = Poly::monomial(&big, Monomial::var(2 * n, i, q), 1);
        gens.push(Poly::var(&big, n + i).sub(&xq));
    }
    let target = PolyRing::new(base.field(), base.vars().to_vec(), MonomialOrder::Grevlex)?;
    let basis = eliminate_leading_block(&gens, n, &target, ring.gb_config())?;
    ideal_from_grevlex_basis(ring, basis)
}

/// Largest `dim R/q` for which chain steps use linear algebra.
const LINEAR_CHAIN_CAP: usize = 1 << 15;

/// Chain steps for zero-dimensional `q`. Over F_p, `f ↦ f^(p^e)` is an
/// F_p-linear map `R/q → R/q^[p^e]` and `C_e = q + ker`. Images are carried
/// from one exponent to the next: if `w ≡ b^(p^(e-1))` mod `q^[p^(e-1)]` then
/// `w^p ≡ b^(p^e)` mod `q^[p^e]`, so each step is one normal form per basis
/// monomial instead of an elimination in degree `p^e`.
struct LinearChain {
    basis: Vec<Poly>,
    images: Vec<Poly>,
}

impl LinearChain {
    fn new(q: &Ideal) -> Result<Option<Self>> {
        if !is_zero_dimensional(q)? {
            return Ok(None);
        }
        let basis: Vec<Poly> = match standard_monomials(q, LINEAR_CHAIN_CAP) {
            Ok(b) => b.into_iter().map(|m| Poly::monomial(q.ring().ambient(), m, 1)).collect(),
            Err(Error::QuotientTooLarge { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(Some(LinearChain {
            images: basis.clone(),
            basis,
        }))
    }

    /// `C_e` from the bracket power `q^[p^e]`; steps must come in order.
    fn step(&mut self, q: &Ideal, bracket: &Ideal) -> Result<Ideal> {
        for w in &mut self.images {
            *w = bracket.normal_form(&w.frob_pow(1)?)?;
        }
        let mut gens = q.gens().to_vec();
        gens.extend(kernel(&self.basis, &self.images));
        Ok(Ideal::new(q.ring(), gens))
    }
}

/// Combinations `sum c_i domain_i` with `sum c_i images_i = 0`, by echelon
/// reduction on leading monomials.
fn kernel(domain: &[Poly], images: &[Poly]) -> Vec<Poly> {
    let mut out = Vec::new();
    let Some(first) = domain.first() else {
        return out;
    };
    let field = first.ring().field();
    let one = Monomial::one(first.ring().nvars());
    let mut pivots: HashMap<Monomial, (Poly, Poly)> = HashMap::new();
    for (b, w) in domain.iter().zip(images) {
        let (mut row, mut comb) = (w.clone(), b.clone());
        loop {
            let Some((m, c)) = row.leading_term().cloned() else {
                out.push(comb.make_monic());
                break;
            };
            match pivots.get(&m) {
                Some((pr, pc)) => {
                    let c = field.neg(c);
                    row = row.add_scaled_shifted(c, &one, pr);
                    comb = comb.add_scaled_shifted(c, &one, pc);
                }
                None => {
                    let inv = field.inv(c);
                    pivots.insert(m, (row.scale(inv), comb.scale(inv)));
                    break;
                }
            }
        }
    }
    out
}

/// Result record of a Frobenius closure computation.
#[derive(Clone, Debug)]
pub struct ClosureCertificate {
    pub input: Ideal,
    pub closure: Ideal,
    /// `chain[e] = C_e`; ascending, with `chain[0] = q`.
    pub chain: Vec<Ideal>,
    pub stabilized_at: u32,
    /// Number of consecutive equalities observed after `stabilized_at`.
    pub window_checked: u32,
    pub window: u32,
    pub e_max: u32,
    /// `None` when the certificate is inconclusive.
    pub fte: Option<u32>,
    pub oracle_verified: bool,
    pub inconclusive: bool,
}

#[derive(Serialize)]
struct CertificateJson {
    input: Vec<String>,
    closure: Vec<String>,
    chain: Vec<Vec<String>>,
    stabilized_at: u32,
    window_checked: u32,
    window: u32,
    e_max: u32,
    fte: Option<u32>,
    oracle_verified: bool,
    inconclusive: bool,
}

impl ClosureCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            input: self.input.generator_strings(),
            closure: self.closure.generator_strings(),
            chain: self.chain.iter().map(Ideal::generator_strings).collect(),
            stabilized_at: self.stabilized_at,
            window_checked: self.window_checked,
            window: self.window,
            e_max: self.e_max,
            fte: self.fte,
            oracle_verified: self.oracle_verified,
            inconclusive: self.inconclusive,
        })
        .expect("certificate serializes")
    }

    /// `max(stabilized_at, fte)`, the exponent at which soundness is checked.
    pub fn check_exponent(&self) -> u32 {
        self.stabilized_at.max(self.fte.unwrap_or(0))
    }
}

/// True if `g^(p^e) ∈ q^[p^e]` for every generator `g` of `closure`.
fn generators_pass(closure: &Ideal, bq: &Ideal, e: u32) -> Result<bool> {
    for g in closure.gens() {
        if !bq.contains(&g.frob_pow(e)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes `q^F` with windowed stabilization of the chain `C_e`.
pub fn frobenius_closure(q: &Ideal, window: u32, e_max: u32) -> Result<ClosureCertificate> {
    if window == 0 || e_max < window {
        return Err(Error::InvalidArgument(format!(
            "need window >= 1 and e_max >= window (got window {window}, e_max {e_max})"
        )));
    }
    if q.is_unit()? {
        return Ok(ClosureCertificate {
            input: q.clone(),
            closure: q.clone(),
            chain: vec![q.clone()],
            stabilized_at: 0,
            window_checked: window,
            window,
            e_max,
            fte: Some(0),
            oracle_verified: false,
            inconclusive: false,
        });
    }
    let mut chain = vec![q.clone()];
    let mut run = 0u32;
    let mut stable = false;
    let mut linear = LinearChain::new(q)?;
    for e in 1..=e_max {
        let bracket = bracket_power(q, e)?;
        let next = match &mut linear {
            Some(l) => l.step(q, &bracket)?,
            None => frobenius_preimage(&bracket, e)?,
        };
        let prev = chain.last().unwrap();
        if !next.contains_ideal(prev)? {
            return Err(Error::InvariantViolation(format!(
                "Frobenius chain not ascending at e = {e}: C_{} = {prev} ⊄ C_{e} = {next}",
                e - 1
            )));
        }
        if next.equals(prev)? {
            run += 1;
        } else {
            run = 0;
        }
        chain.push(next);
        if run >= window {
            stable = true;
            break;
        }
    }
    let last = chain.len() as u32 - 1;
    let stabilized_at = last - run;
    let mut cert = ClosureCertificate {
        input: q.clone(),
        closure: chain[stabilized_at as usize].clone(),
        chain,
        stabilized_at,
        window_checked: run,
        window,
        e_max,
        fte: None,
        oracle_verified: false,
        inconclusive: !stable,
    };
    if stable {
        let fte = fte_ideal(q, &cert)?;
        cert.fte = Some(fte);
        let e_star = cert.check_exponent();
        if !generators_pass(&cert.closure, &bracket_power(q, e_star)?, e_star)? {
            return Err(Error::InvariantViolation(format!(
                "closure generator fails g^(p^{e_star}) ∈ q^[p^{e_star}]"
            )));
        }
    }
    Ok(cert)
}

/// Smallest `e` with `g^(p^e) ∈ q^[p^e]` for every generator `g` of the
/// certified closure. Checking generators suffices since `p^e`-th powers are
/// additive and `(r g)^(p^e) = r^(p^e) g^(p^e)`.
pub fn fte_ideal(q: &Ideal, cert: &ClosureCertificate) -> Result<u32> {
    if cert.inconclusive {
        return Err(Error::Inconclusive { e_max: cert.e_max });
    }
    // generators of q itself pass at every exponent
    let extra: Vec<Poly> = cert
        .closure
        .gens()
        .iter()
        .filter(|g| !q.contains(g).unwrap_or(false))
        .cloned()
        .collect();
    let extra = Ideal::new(q.ring(), extra);
    for e in 0..=cert.e_max {
        if generators_pass(&extra, &bracket_power(q, e)?, e)? {
            return Ok(e);
        }
    }
    Err(Error::ExponentSearchExhausted {
        e_max: cert.e_max,
        lower_bound: cert.e_max + 1,
    })
}

/// `q^F = q`, with the default window and exponent cap.
pub fn is_frobenius_closed(q: &Ideal) -> Result<bool> {
    let cert = frobenius_closure(q, DEFAULT_WINDOW, DEFAULT_E_MAX)?;
    if cert.inconclusive {
        return Err(Error::Inconclusive { e_max: cert.e_max });
    }
    cert.closure.equals(q)
}

/// Outcome of comparing `Fte(q)` with `Fte(q^[p^e0]) + e0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShiftCheck {
    pub e0: u32,
    pub fte: u32,
    pub fte_shifted: u32,
    /// `fte <= fte_shifted + e0`
    pub holds: bool,
    /// `fte == fte_shifted + e0`
    pub equal: bool,
}

pub fn shift_check(q: &Ideal, fte: u32, e0: u32, window: u32, e_max: u32) -> Result<ShiftCheck> {
    let shifted = bracket_power(q, e0)?;
    let cert = frobenius_closure(&shifted, window, e_max)?;
    let fte_shifted = cert.fte.ok_or(Error::Inconclusive { e_max })?;
    Ok(ShiftCheck {
        e0,
        fte,
        fte_shifted,
        holds: fte <= fte_shifted + e0,
        equal: fte == fte_shifted + e0,
    })
}
