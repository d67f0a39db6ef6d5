//! Finite-length cyclic modules `M = R/J` with the standard Frobenius action
//! `F(x + J) = x^p + J`, the Frobenius closure of zero and HSL numbers.
//!
//! Every ideal is stable under the standard action (`g^p ∈ (g)`), which is
//! why the construction-time stability check cannot fail for ideals of `R`;
//! it is kept as a guard on the generator criterion used throughout.

use crate::error::{Error, Result};
use crate::ffpoly::Poly;
use crate::frobenius::frobenius_preimage;
use crate::groebner::{Ideal, Ring};
use crate::ideal_ops::{is_m_primary, quotient_length};

#[derive(Clone, Debug)]
pub struct FrobModule {
    ring: Ring,
    j: Ideal,
    length: usize,
}

impl FrobModule {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    /// `dim_{F_p} R/J`.
    pub fn length(&self) -> usize {
        self.length
    }
}

/// `g^p ∈ I` for every generator `g` of `I`: the ideal is stable under the
/// standard Frobenius. Returns the first offending generator.
pub fn f_stability_witness(ideal: &Ideal) -> Result<Option<Poly>> {
    for g in ideal.gens() {
        if !ideal.contains(&g.frob_pow(1)?)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

pub fn is_f_stable(ideal: &Ideal) -> Result<bool> {
    Ok(f_stability_witness(ideal)?.is_none())
}

pub fn make_frob_module(j: &Ideal) -> Result<FrobModule> {
    if j.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    if !is_m_primary(j)? {
        return Err(Error::NotMPrimary(j.to_string()));
    }
    if let Some(g) = f_stability_witness(j)? {
        return Err(Error::NotFStable { generator: g.to_string() });
    }
    Ok(FrobModule {
        ring: j.ring().clone(),
        j: j.clone(),
        length: quotient_length(j)?,
    })
}

/// `F^e(x + J) = x^(p^e) + J`, as a normal form.
pub fn apply_frob(m: &FrobModule, x: &Poly, e: u32) -> Result<Poly> {
    m.j.normal_form(&x.frob_pow(e)?)
}

/// The ideal `K ⊇ L` with `(L/J)^F = K/J` inside `M = R/J`, for `J ⊆ L`:
/// `K = {x : x^(p^e) ∈ L for some e}`.
///
/// The chain `{x : x^(p^e) ∈ L}` is the chain of kernels of the iterates of
/// the F_p-linear map `F : R/L → R/L`, so it is stable from its first
/// repetition on, which happens within `length(R/L)` steps.
pub fn submodule_closure(m: &FrobModule, l: &Ideal) -> Result<Ideal> {
    m.j.check_ring(l)?;
    if !l.contains_ideal(&m.j)? {
        return Err(Error::Precondition(format!("{} ⊄ {l}", m.j)));
    }
    if l.is_unit()? {
        return Ok(l.clone());
    }
    let bound = quotient_length(l)? as u32;
    let mut prev = l.clone();
    for e in 1..=bound + 1 {
        let next = frobenius_preimage(l, e)?;
        if !next.contains_ideal(&prev)? {
            return Err(Error::InvariantViolation(format!(
                "submodule closure chain not ascending at e = {e}"
            )));
        }
        if next.equals(&prev)? {
            return Ok(prev);
        }
        prev = next;
    }
    Err(Error::InvariantViolation(format!(
        "closure chain still growing after length(R/L) = {bound} steps"
    )))
}

/// `K` with `0^F_M = K/J`.
pub fn zero_closure(m: &FrobModule) -> Result<Ideal> {
    submodule_closure(m, &m.j)
}

/// Smallest `e` with `F^e(0^F_M) = 0`, i.e. `g^(p^e) ∈ J` for every
/// generator `g` of the zero closure.
pub fn hsl(m: &FrobModule) -> Result<u32> {
    let k = zero_closure(m)?;
    hsl_of_closure(m, &k)
}

pub(crate) fn hsl_of_closure(m: &FrobModule, k: &Ideal) -> Result<u32> {
    let extra: Vec<&Poly> = k.gens().iter().filter(|g| !m.j.contains(g).unwrap_or(false)).collect();
    let bound = m.length as u32;
    'e: for e in 0..=bound {
        for g in &extra {
            if !apply_frob(m, g, e)?.is_zero() {
                continue 'e;
            }
        }
        return Ok(e);
    }
    Err(Error::InvariantViolation(format!(
        "F^e does not kill 0^F for e <= length = {bound}"
    )))
}

/// The quotient projection `R/J → R/J'` for `J ⊆ J'`, optionally followed by
/// multiplication by a unit scalar `c ∈ F_p^×`; both are equivariant since
/// `c^p = c`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub source: FrobModule,
    pub target: FrobModule,
    pub scalar: u32,
}

impl Projection {
    pub fn new(source: &FrobModule, target: &FrobModule, scalar: u32) -> Result<Self> {
        source.j.check_ring(&target.j)?;
        if !target.j.contains_ideal(&source.j)? {
            return Err(Error::Precondition(format!("{} ⊄ {}", source.j, target.j)));
        }
        let c = source.ring.field().reduce(scalar as u64);
        if c == 0 {
            return Err(Error::InvalidArgument("scalar must be a unit".into()));
        }
        Ok(Projection {
            source: source.clone(),
            target: target.clone(),
            scalar: c,
        })
    }

    /// Representative of `α(x + J)`.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        self.target.j.normal_form(&x.scale(self.scalar))
    }

    /// `F_N(α(x)) = α(F_M(x))`.
    pub fn commutes_with_frobenius(&self, x: &Poly) -> Result<bool> {
        let lhs = apply_frob(&self.target, &self.apply(x)?, 1)?;
        let rhs = self.apply(&apply_frob(&self.source, x, 1)?)?;
        self.target.j.contains(&lhs.sub(&rhs))
    }

    /// `ker α = J'/J`, as an ideal containing `J`.
    pub fn kernel(&self) -> Ideal {
        self.target.j.clone()
    }

    /// `α(K/J) ⊆ K'/J'`, with `K` and `K'` the two zero closures.
    pub fn maps_zero_closure_into_zero_closure(&self) -> Result<bool> {
        let k = zero_closure(&self.source)?;
        let k2 = zero_closure(&self.target)?;
        for g in k.gens() {
            if !k2.contains(&g.scale(self.scalar))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
