//! Buchberger's algorithm with the Gebauer-Möller installation of the two
//! Buchberger criteria (coprime leading monomials, chain criterion).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ffpoly::{Monomial, Poly, Term};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// How critical pairs are selected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStrategy {
    /// Smallest lcm first (degree, then term order), ties by pair indices.
    Normal,
    /// First in, first out, without any pair criteria. Slow; kept as an
    /// independent cross-check of `Normal`.
    Fifo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub step_cap: usize,
    pub strategy: PairStrategy,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            step_cap: DEFAULT_STEP_CAP,
            strategy: PairStrategy::Normal,
        }
    }
}

/// Finds the first basis element whose leading monomial divides `m`.
#[inline]
fn find_reducer<'a>(m: &Monomial, basis: &[&'a Poly]) -> Option<&'a Poly> {
    basis
        .iter()
        .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
        .copied()
}

/// Full normal form of `f` with respect to `basis` (head and tail reduction).
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let refs: Vec<&Poly> = basis.iter().filter(|g| !g.is_zero()).collect();
    normal_form_refs(f, &refs)
}

pub(crate) fn normal_form_refs(f: &Poly, basis: &[&Poly]) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rest = f.clone();
    let mut remainder: Vec<Term> = Vec::new();
    loop {
        // peel off irreducible leading terms into the remainder
        let mut irreducible = 0;
        let found = loop {
            match rest.terms().get(irreducible) {
                None => break None,
                Some((m, c)) => {
                    if let Some(g) = find_reducer(m, basis) {
                        break Some((m.clone(), *c, g));
                    }
                    irreducible += 1;
                }
            }
        };
        match found {
            None => {
                remainder.extend(rest.into_terms());
                break;
            }
            Some((m, c, g)) => {
                let mut terms = rest.into_terms();
                remainder.extend(terms.drain(..irreducible));
                let head = Poly::from_sorted_terms(&ring, terms);
                let lm = g.leading_monomial().unwrap();
                let factor = field.neg(field.mul(c, field.inv(g.leading_coeff())));
                rest = head.add_scaled_shifted(factor, &lm.quotient_of(&m), g);
            }
        }
    }
    Poly::from_sorted_terms(&ring, remainder)
}

/// Reduces only the leading term until it is irreducible (or zero).
fn top_reduce(f: &Poly, basis: &[&Poly]) -> Poly {
    let field = f.ring().field();
    let mut rest = f.clone();
    while let Some((m, c)) = rest.leading_term() {
        match find_reducer(m, basis) {
            None => break,
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let factor = field.neg(field.mul(*c, field.inv(g.leading_coeff())));
                let shift = lm.quotient_of(m);
                rest = rest.add_scaled_shifted(factor, &shift, g);
            }
        }
    }
    rest
}

pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let field = f.ring().field();
    let (fm, fc) = f.leading_term().expect("s-polynomial of zero");
    let (gm, gc) = g.leading_term().expect("s-polynomial of zero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), field.inv(*fc));
    a.add_scaled_shifted(field.neg(field.inv(*gc)), &gm.quotient_of(&l), g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Heap entry ordered so that the smallest selection key pops first.
struct Queued<'r> {
    pair: Pair,
    degree: u64,
    ring: &'r crate::ffpoly::PolyRing,
}

impl Queued<'_> {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.ring.cmp(&self.pair.lcm, &other.pair.lcm))
            .then_with(|| (self.pair.j, self.pair.i).cmp(&(other.pair.j, other.pair.i)))
    }
}

impl PartialEq for Queued<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}
impl Eq for Queued<'_> {}
impl PartialOrd for Queued<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        other.key_cmp(self)
    }
}

/// Sorts, dedups and normalizes the input generators.
fn prepare_inputs(gens: &[Poly]) -> Vec<Poly> {
    let mut inputs: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.make_monic())
        .collect();
    if let Some(first) = inputs.first() {
        let ring = first.ring().clone();
        inputs.sort_by(|a, b| {
            ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
                .then_with(|| a.len().cmp(&b.len()))
        });
    }
    inputs.dedup();
    inputs
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` in
/// their (common) ambient ring's monomial order.
///
/// The result is monic, sorted ascending by leading monomial, and empty for
/// the zero ideal.
pub fn groebner_basis(gens: &[Poly], cfg: &GbConfig) -> Result<Vec<Poly>> {
    if let Some(first) = gens.first() {
        if gens.iter().any(|g| !g.same_ring(first)) {
            return Err(Error::RingMismatch);
        }
    }
    let inputs = prepare_inputs(gens);
    if inputs.is_empty() {
        return Ok(Vec::new());
    }
    if inputs.iter().any(|g| g.is_constant()) {
        return Ok(vec![Poly::one(inputs[0].ring())]);
    }
    let basis = match cfg.strategy {
        PairStrategy::Normal => buchberger_normal(inputs, cfg.step_cap)?,
        PairStrategy::Fifo => buchberger_fifo(inputs, cfg.step_cap)?,
    };
    Ok(reduce_basis(basis))
}

fn buchberger_normal(inputs: Vec<Poly>, step_cap: usize) -> Result<Vec<Poly>> {
    let ring = inputs[0].ring().clone();
    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut queue: BinaryHeap<Queued<'_>> = BinaryHeap::new();
    let mut steps = 0usize;

    let mut pending: std::collections::VecDeque<Poly> = inputs.into();
    loop {
        let next = if let Some(f) = pending.pop_front() {
            Some(f)
        } else if let Some(q) = queue.pop() {
            steps += 1;
            if steps > step_cap {
                return Err(Error::CapExceeded { steps: step_cap });
            }
            let Pair { i, j, .. } = q.pair;
            Some(s_polynomial(&polys[i], &polys[j]))
        } else {
            None
        };
        let Some(f) = next else { break };
        let reducers: Vec<&Poly> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let h = top_reduce(&f, &reducers);
        if h.is_zero() {
            continue;
        }
        let h = normal_form_refs(&h, &reducers).make_monic();
        if h.is_constant() {
            return Ok(vec![Poly::one(&ring)]);
        }
        // Gebauer-Möller update
        let t = polys.len();
        let lm_h = h.leading_monomial().unwrap().clone();
        let mut candidates: Vec<Pair> = (0..t)
            .filter(|&i| active[i])
            .map(|i| Pair {
                i,
                j: t,
                lcm: polys[i].leading_monomial().unwrap().lcm(&lm_h),
            })
            .collect();
        let coprime = |p: &Pair, polys: &[Poly]| {
            polys[p.i].leading_monomial().unwrap().is_coprime(&lm_h)
        };
        // chain criterion among the new pairs, keeping coprime ones for now
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(c) = candidates.pop() {
            let dominated = !coprime(&c, &polys)
                && candidates
                    .iter()
                    .chain(kept.iter())
                    .any(|d| d.lcm.divides(&c.lcm));
            if !dominated {
                kept.push(c);
            }
        }
        // remove new pairs whose lcm repeats, preferring one representative
        kept.sort_by_key(|c| c.i);
        let mut new_pairs: Vec<Pair> = Vec::new();
        for c in kept {
            if new_pairs.iter().any(|d| d.lcm == c.lcm) {
                continue;
            }
            new_pairs.push(c);
        }
        let new_pairs: Vec<Pair> = new_pairs.into_iter().filter(|p| !coprime(p, &polys)).collect();
        // old pairs made redundant by h
        let old: Vec<Queued<'_>> = queue.drain().collect();
        for q in old {
            let p = &q.pair;
            let redundant = lm_h.divides(&p.lcm)
                && polys[p.i].leading_monomial().unwrap().lcm(&lm_h) != p.lcm
                && polys[p.j].leading_monomial().unwrap().lcm(&lm_h) != p.lcm;
            if !redundant {
                queue.push(q);
            }
        }
        for i in 0..t {
            if active[i] && lm_h.divides(polys[i].leading_monomial().unwrap()) {
                active[i] = false;
            }
        }
        polys.push(h);
        active.push(true);
        for p in new_pairs {
            let degree = p.lcm.degree();
            queue.push(Queued {
                pair: p,
                degree,
                ring: ring.as_ref(),
            });
        }
    }
    Ok(polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect())
}

fn buchberger_fifo(inputs: Vec<Poly>, step_cap: usize) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: std::collections::VecDeque<(usize, usize)> = Default::default();
    let mut steps = 0usize;
    for f in inputs {
        let h = normal_form(&f, &basis);
        if !h.is_zero() {
            let t = basis.len();
            basis.push(h.make_monic());
            pairs.extend((0..t).map(|i| (i, t)));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        steps += 1;
        if steps > step_cap {
            return Err(Error::CapExceeded { steps: step_cap });
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !h.is_zero() {
            let t = basis.len();
            basis.push(h.make_monic());
            pairs.extend((0..t).map(|i| (i, t)));
        }
    }
    Ok(basis)
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn reduce_basis(mut basis: Vec<Poly>) -> Vec<Poly> {
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        reduced.push(normal_form_refs(&minimal[i], &others).make_monic());
    }
    reduced
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if !normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduced: monic, no leading monomial divides another term of a different
/// element.
pub fn is_reduced(basis: &[Poly]) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        g.leading_coeff() == 1
            && basis.iter().enumerate().all(|(j, h)| {
                i == j
                    || g.terms()
                        .iter()
                        .all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
            })
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ffpoly::{parse_poly, FieldPrime, MonomialOrder, PolyRing};

    fn ring(p: u64, vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(
            FieldPrime::new(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )
        .unwrap()
    }

    fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|t| parse_poly(t, r).unwrap()).collect()
    }

    fn strings(b: &[Poly]) -> Vec<String> {
        b.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(2, &["x", "y"], MonomialOrder::Grevlex);
        let gb = groebner_basis(&polys(&r, &["x", "y"]), &GbConfig::default()).unwrap();
        assert_eq!(strings(&gb), vec!["y", "x"]);
        assert!(groebner_basis(&[], &GbConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn strategies_agree_on_small_system() {
        let r = ring(3, &["x", "y"], MonomialOrder::Grevlex);
        let gens = polys(&r, &["x^2 - y", "y^2 - 1"]);
        let normal = groebner_basis(&gens, &GbConfig::default()).unwrap();
        let fifo = groebner_basis(
            &gens,
            &GbConfig {
                strategy: PairStrategy::Fifo,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(normal, fifo);
        assert!(is_groebner_basis(&normal) && is_reduced(&normal));
        // leading terms x^2, y^2 are coprime, so the inputs already form a GB
        assert_eq!(strings(&normal), vec!["y^2 + 2", "x^2 + 2*y"]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"], MonomialOrder::Grevlex);
        let x2 = parse_poly("x^2", &r).unwrap();
        assert_eq!(normal_form(&x2, &[]), x2);
        let g = polys(&r, &["x^2 - y"]);
        assert_eq!(normal_form(&x2, &g).to_string(), "y");
        assert!(normal_form(&g[0], &g).is_zero());
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = ring(2, &["x"], MonomialOrder::Grevlex);
        let gb = groebner_basis(&polys(&r, &["x - 1", "x"]), &GbConfig::default()).unwrap();
        assert_eq!(strings(&gb), vec!["1"]);
    }

    #[test]
    fn step_cap_is_enforced() {
        let r = ring(7, &["x", "y", "z"], MonomialOrder::Lex);
        let gens = polys(&r, &["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y + 2"]);
        let err = groebner_basis(
            &gens,
            &GbConfig {
                step_cap: 2,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::CapExceeded { steps: 2 });
    }

    #[test]
    fn lex_elimination_of_twisted_cubic() {
        let r = ring(11, &["t", "x", "y", "z"], MonomialOrder::Lex);
        let gens = polys(&r, &["x - t", "y - t^2", "z - t^3"]);
        let gb = groebner_basis(&gens, &GbConfig::default()).unwrap();
        assert!(is_groebner_basis(&gb));
        let elim: Vec<String> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| g.to_string())
            .collect();
        assert!(!elim.is_empty());
        for g in polys(&r, &["x^2 - y", "x^3 - z", "y^3 - z^2"]) {
            assert!(normal_form(&g, &gb).is_zero());
        }
    }
}
