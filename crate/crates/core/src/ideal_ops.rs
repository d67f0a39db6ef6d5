//! Ideal calculus over `R = S/I0`: sums, products, bracket powers, colon
//! ideals, saturation, intersection, Krull dimension and m-primary tests.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffpoly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::groebner::{groebner_basis, normal_form, GbConfig, Ideal, Ring};

/// Default cap on the number of standard monomials enumerated when a
/// quotient length is needed.
pub const LENGTH_CAP: usize = 1 << 20;

pub fn sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check_ring(b)?;
    let mut gens = a.gens().to_vec();
    gens.extend(b.gens().iter().cloned());
    Ok(Ideal::new(a.ring(), gens))
}

pub fn product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check_ring(b)?;
    let mut gens = Vec::with_capacity(a.gens().len() * b.gens().len());
    for f in a.gens() {
        for g in b.gens() {
            gens.push(f.mul(g));
        }
    }
    Ok(Ideal::new(a.ring(), gens))
}

/// `I^[p^e]`: the ideal generated by the `p^e`-th powers of the generators
/// (over `R`, the relations `I0` are added back by the preimage convention).
pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frob_pow(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ideal.ring(), gens))
}

/// Variable names not clashing with `taken`.
pub(crate) fn fresh_names(taken: &[String], stem: &str, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0usize;
    while out.len() < count {
        let name = format!("_{stem}{k}");
        k += 1;
        if !taken.contains(&name) {
            out.push(name);
        }
    }
    out
}

/// Ring `F_p[extra..., base vars...]` with an elimination order for the
/// leading block of `extra` variables.
pub(crate) fn elimination_ring(base: &PolyRing, extra: Vec<String>) -> Result<Arc<PolyRing>> {
    let k = extra.len();
    let mut vars = extra;
    vars.extend(base.vars().iter().cloned());
    PolyRing::new(base.field(), vars, MonomialOrder::Elimination(k))
}

/// Reduced Gröbner basis, in the trailing block's grevlex order, of
/// `gens ∩ F_p[last n variables]`, returned in `target` (with `n` variables).
pub(crate) fn eliminate_leading_block(
    gens: &[Poly],
    k: usize,
    target: &Arc<PolyRing>,
    cfg: &GbConfig,
) -> Result<Vec<Poly>> {
    let gb = groebner_basis(gens, cfg)?;
    let Some(first) = gb.first() else {
        return Ok(Vec::new());
    };
    let total = first.ring().nvars();
    let allowed: Vec<bool> = (0..total).map(|i| i >= k).collect();
    // the leading-block variables do not occur in kept elements, so sending them
    // anywhere is harmless
    let var_map: Vec<usize> = (0..total).map(|i| i.saturating_sub(k)).collect();
    let mut out: Vec<Poly> = gb
        .iter()
        .filter(|g| g.supported_in(&allowed))
        .map(|g| g.remap(target, &var_map))
        .collect();
    out.sort_by(|a, b| target.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(out)
}

/// Intersection of the ideals generated by `a` and `b` in the ambient ring,
/// by eliminating `t` from `t*a + (1-t)*b`. Returns a reduced Gröbner basis
/// in grevlex.
pub(crate) fn intersect_in_ambient(a: &[Poly], b: &[Poly], cfg: &GbConfig) -> Result<Vec<Poly>> {
    let (Some(fa), Some(_)) = (a.first(), b.first()) else {
        return Ok(Vec::new());
    };
    let base = fa.ring().clone();
    let t_ring = elimination_ring(&base, fresh_names(base.vars(), "t", 1))?;
    let shift: Vec<usize> = (1..=base.nvars()).collect();
    let t = Poly::var(&t_ring, 0);
    let one_minus_t = Poly::one(&t_ring).sub(&t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(t.mul(&f.remap(&t_ring, &shift)));
    }
    for g in b {
        gens.push(one_minus_t.mul(&g.remap(&t_ring, &shift)));
    }
    let grevlex_base = PolyRing::new(base.field(), base.vars().to_vec(), MonomialOrder::Grevlex)?;
    let elim = eliminate_leading_block(&gens, 1, &grevlex_base, cfg)?;
    Ok(elim.into_iter().map(|g| reorder(&g, &base)).collect())
}

/// Re-sorts a polynomial into `target` (same variables, possibly another order).
fn reorder(f: &Poly, target: &Arc<PolyRing>) -> Poly {
    let id: Vec<usize> = (0..target.nvars()).collect();
    f.remap(target, &id)
}

/// Builds an ideal of `ring` from a preimage basis that was computed in
/// grevlex by one of the elimination routines.
pub(crate) fn ideal_from_grevlex_basis(ring: &Ring, basis: Vec<Poly>) -> Result<Ideal> {
    let in_order = ring.order() == MonomialOrder::Grevlex;
    let basis = basis.iter().map(|g| reorder(g, ring.ambient())).collect();
    Ideal::from_preimage_basis(ring, basis, in_order)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check_ring(b)?;
    let basis = intersect_in_ambient(a.preimage_gb()?, b.preimage_gb()?, a.ring().gb_config())?;
    if basis.is_empty() {
        return Ok(Ideal::zero(a.ring()));
    }
    ideal_from_grevlex_basis(a.ring(), basis)
}

/// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
pub fn exact_division(f: &Poly, g: &Poly) -> Option<Poly> {
    let ring = f.ring().clone();
    let field = ring.field();
    let (glm, gc) = g.leading_term()?;
    let ginv = field.inv(*gc);
    let mut rest = f.clone();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        if !glm.divides(m) {
            return None;
        }
        let qm = glm.quotient_of(m);
        let qc = field.mul(*c, ginv);
        rest = rest.add_scaled_shifted(field.neg(qc), &qm, g);
        quotient.push((qm, qc));
    }
    Some(Poly::from_terms(&ring, quotient))
}

/// Preimage basis of `(I_S :_S g)` in grevlex.
fn colon_by_poly_ambient(i_basis: &[Poly], g: &Poly, cfg: &GbConfig) -> Result<Vec<Poly>> {
    let inter = intersect_in_ambient(i_basis, std::slice::from_ref(g), cfg)?;
    let quotients: Vec<Poly> = inter
        .iter()
        .map(|h| exact_division(h, g).expect("element of (g) not divisible by g"))
        .collect();
    groebner_basis(&quotients, cfg)
}

/// `(I : J) = {f : f*J ⊆ I}`, computed generator by generator as
/// `(I : g) = (I ∩ (g)) / g` and intersected.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(j)?;
    let ring = i.ring();
    let cfg = ring.gb_config();
    let i_basis = to_grevlex(i.preimage_gb()?, ring)?;
    let mut acc: Option<Vec<Poly>> = None;
    for g in j.gens() {
        if i.contains(g)? {
            continue;
        }
        if g.is_constant() {
            // (I : 1) = I is contained in every (I : g)
            acc = Some(i_basis.clone());
            break;
        }
        let part = colon_by_poly_ambient(&i_basis, &reorder_to_grevlex(g)?, cfg)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect_in_ambient(&prev, &part, cfg)?,
        });
    }
    match acc {
        None => Ok(Ideal::unit(ring)),
        Some(basis) => ideal_from_grevlex_basis(ring, basis),
    }
}

fn reorder_to_grevlex(g: &Poly) -> Result<Poly> {
    if g.ring().order() == MonomialOrder::Grevlex {
        return Ok(g.clone());
    }
    let r = PolyRing::new(g.ring().field(), g.ring().vars().to_vec(), MonomialOrder::Grevlex)?;
    Ok(reorder(g, &r))
}

fn to_grevlex(basis: &[Poly], ring: &Ring) -> Result<Vec<Poly>> {
    if ring.order() == MonomialOrder::Grevlex {
        return Ok(basis.to_vec());
    }
    let r = PolyRing::new(ring.field(), ring.vars().to_vec(), MonomialOrder::Grevlex)?;
    let moved: Vec<Poly> = basis.iter().map(|g| reorder(g, &r)).collect();
    groebner_basis(&moved, ring.gb_config())
}

/// `(I : J^∞)` together with the first `k` such that `(I : J^k) = (I : J^(k+1))`.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<(Ideal, usize)> {
    let mut current = i.clone();
    let mut k = 0usize;
    loop {
        let next = colon(&current, j)?;
        if next.equals(&current)? {
            return Ok((current, k));
        }
        current = next;
        k += 1;
    }
}

/// Leading monomials of the preimage basis.
fn leading_monomials(ideal: &Ideal) -> Result<Vec<Monomial>> {
    Ok(ideal
        .preimage_gb()?
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect())
}

/// Krull dimension of `R/I`: the largest set of variables on which no
/// leading monomial of the Gröbner basis is supported.
pub fn krull_dim(ideal: &Ideal) -> Result<usize> {
    if ideal.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let lms = leading_monomials(ideal)?;
    let n = ideal.ring().nvars();
    assert!(n < 24, "too many variables for subset enumeration");
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let vars: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        if lms.iter().all(|m| !m.supported_in(&vars)) {
            best = size;
        }
    }
    Ok(best)
}

/// Proper and `dim R/I = 0`, i.e. `R/I` is a finite-dimensional F_p-space.
pub fn is_zero_dimensional(ideal: &Ideal) -> Result<bool> {
    if ideal.is_unit()? {
        return Ok(false);
    }
    let lms = leading_monomials(ideal)?;
    let n = ideal.ring().nvars();
    Ok((0..n).all(|v| {
        lms.iter().any(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| (i == v) == (e > 0))
        })
    }))
}

/// Standard monomials of `R/I` (monomials outside the leading-term ideal),
/// ascending in the ring's order. Fails once more than `cap` are found.
pub fn standard_monomials(ideal: &Ideal, cap: usize) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(ideal)? && !ideal.is_unit()? {
        return Err(Error::Precondition(format!(
            "{ideal} is not zero-dimensional, so R/I is infinite"
        )));
    }
    let lms = leading_monomials(ideal)?;
    let n = ideal.ring().nvars();
    let mut out = Vec::new();
    if ideal.is_unit()? {
        return Ok(out);
    }
    // depth-first over the order ideal, generating each monomial once by only
    // raising variables at or after the last raised one
    let mut stack: Vec<(Monomial, usize)> = vec![(Monomial::one(n), 0)];
    while let Some((m, from)) = stack.pop() {
        out.push(m.clone());
        if out.len() > cap {
            return Err(Error::QuotientTooLarge { cap: cap as u128 });
        }
        for v in from..n {
            let next = m.mul(&Monomial::var(n, v, 1));
            if !lms.iter().any(|l| l.divides(&next)) {
                stack.push((next, v));
            }
        }
    }
    let ambient = ideal.ring().ambient().clone();
    out.sort_by(|a, b| ambient.cmp(a, b));
    Ok(out)
}

/// `dim_{F_p} R/I` for a zero-dimensional ideal.
pub fn quotient_length(ideal: &Ideal) -> Result<usize> {
    Ok(standard_monomials(ideal, LENGTH_CAP)?.len())
}

/// Whether every variable is nilpotent modulo `I` and `I` is proper, i.e.
/// `√I = m`: `R/I` has finite length and is supported at the origin only.
pub fn is_m_primary(ideal: &Ideal) -> Result<bool> {
    if !is_zero_dimensional(ideal)? {
        return Ok(false);
    }
    let len = quotient_length(ideal)? as u64;
    let gb = ideal.preimage_gb()?;
    let ring = ideal.ring();
    for v in 0..ring.nvars() {
        // nilpotency index of an element of an algebra of dimension len is <= len
        let mut r = normal_form(&ring.var(v), gb);
        let mut k = 1u64;
        while k < len && !r.is_zero() {
            r = normal_form(&r.mul(&r), gb);
            k *= 2;
        }
        if !r.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim_{F_p} q/mq`, the minimal number of generators of an m-primary `q`
/// after localizing at `m`.
pub fn minimal_generator_count(q: &Ideal) -> Result<usize> {
    if !is_m_primary(q)? {
        return Err(Error::NotMPrimary(q.to_string()));
    }
    let mq = product(&q.ring().maximal_ideal(), q)?;
    Ok(quotient_length(&mq)? - quotient_length(q)?)
}
