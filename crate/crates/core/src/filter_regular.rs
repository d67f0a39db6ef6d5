//! Filter regular elements and randomized filter regular systems of
//! parameters generating a given parameter ideal.
//!
//! `x` is filter regular on `R/J` when `(J : x)/J` has finite length, i.e. is
//! supported at `m` only. With `A = (J : x)` this is decided by `A = J` or
//! `(J : A)` being m-primary, since `(J : A)` is the annihilator of `A/J`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{Monomial, Poly};
use crate::groebner::{Ideal, Ring};
use crate::ideal_ops::{colon, is_m_primary, is_zero_dimensional, minimal_generator_count, product, sum};

pub const DEFAULT_MAX_ATTEMPTS: u32 = 200;
/// Attempts spent at one coefficient degree before escalating.
const ATTEMPTS_PER_DEGREE: u32 = 20;

pub fn is_filter_regular(x: &Poly, j: &Ideal) -> Result<bool> {
    if x.ring() != j.ring().ambient() {
        return Err(Error::RingMismatch);
    }
    if x.constant_coeff() != 0 {
        return Err(Error::Precondition(format!("{x} is not in the maximal ideal")));
    }
    let a = colon(j, &Ideal::new(j.ring(), vec![x.clone()]))?;
    if a.equals(j)? {
        return Ok(true);
    }
    is_m_primary(&colon(j, &a)?)
}

/// Each `x_i` is filter regular against `(x_1..x_{i-1})`.
pub fn is_filter_regular_sequence(ring: &Ring, xs: &[Poly]) -> Result<bool> {
    for i in 0..xs.len() {
        let prefix = Ideal::new(ring, xs[..i].to_vec());
        if !is_filter_regular(&xs[i], &prefix)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|xs| = dim R` and `dim R/(xs) = 0`.
pub fn is_sop(ring: &Ring, xs: &[Poly]) -> Result<bool> {
    if xs.len() != ring.dim()? {
        return Ok(false);
    }
    let ideal = Ideal::new(ring, xs.to_vec());
    Ok(!ideal.is_unit()? && is_zero_dimensional(&ideal)?)
}

#[derive(Clone, Debug)]
pub struct SopCandidate {
    pub elements: Vec<Poly>,
    pub source: Ideal,
    /// Candidates tried over all positions.
    pub attempts: u32,
    pub seed: u64,
}

#[derive(Serialize)]
struct SopJson {
    elements: Vec<String>,
    source: Vec<String>,
    attempts: u32,
    seed: u64,
}

impl SopCandidate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SopJson {
            elements: self.elements.iter().map(ToString::to_string).collect(),
            source: self.source.generator_strings(),
            attempts: self.attempts,
            seed: self.seed,
        })
        .expect("sop serializes")
    }

    /// `(x_1..x_i)`.
    pub fn prefix(&self, i: usize) -> Ideal {
        Ideal::new(self.source.ring(), self.elements[..i].to_vec())
    }

    /// `(x_1^n, ..., x_d^n)` as a sequence.
    pub fn powers(&self, n: u64) -> Result<Vec<Poly>> {
        self.elements.iter().map(|x| x.pow(n)).collect()
    }
}

/// All monomials of total degree `deg` in `n` variables.
fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    let mut frontier = vec![Monomial::one(n)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in last..n {
                next.push(m.mul(&Monomial::var(n, v, 1)));
            }
        }
        frontier = next;
    }
    frontier
}

fn random_poly_up_to_degree(ring: &Ring, deg: u32, rng: &mut ChaCha8Rng) -> Poly {
    let ambient = ring.ambient();
    let n = ambient.nvars();
    let p = ambient.p();
    let monomials = (0..=deg).flat_map(|k| monomials_of_degree(n, k));
    Poly::from_terms(ambient, monomials.map(|m| (m, rng.gen_range(0..p))))
}

/// A random parameter ideal: `dim R` homogeneous polynomials of degrees in
/// `1..=max_degree`, each monomial present with probability 1/2, redrawn
/// until the ideal is m-primary and minimally generated by `dim R` elements.
pub fn random_parameter_ideal(
    ring: &Ring,
    rng: &mut ChaCha8Rng,
    max_degree: u32,
    max_tries: u32,
) -> Result<Ideal> {
    let d = ring.dim()?;
    let ambient = ring.ambient();
    let n = ambient.nvars();
    let p = ambient.p();
    let zero = Ideal::zero(ring);
    for _ in 0..max_tries {
        let mut gens = Vec::with_capacity(d);
        for _ in 0..d {
            let deg = rng.gen_range(1..=max_degree.max(1));
            let terms: Vec<(Monomial, u32)> = monomials_of_degree(n, deg)
                .into_iter()
                .filter_map(|m| rng.gen_bool(0.5).then(|| (m, rng.gen_range(1..p))))
                .collect();
            gens.push(Poly::from_terms(ambient, terms));
        }
        if gens.iter().any(|g| zero.contains(g).unwrap_or(true)) {
            continue;
        }
        let q = Ideal::new(ring, gens);
        if is_m_primary(&q)? && minimal_generator_count(&q)? == d {
            return Ok(q);
        }
    }
    Err(Error::Precondition(format!(
        "no parameter ideal found in {max_tries} draws"
    )))
}

/// A filter regular sop `x_1..x_d` with `(x_1..x_d) = q`.
///
/// Position `i` first tries the `i`-th generator of `q`, then random
/// combinations `Σ c_j g_j` with scalar coefficients, escalating to
/// polynomial coefficients of degree ≤ 1, 2, ... every
/// `ATTEMPTS_PER_DEGREE` failures. Candidates in `mq + (x_1..x_{i-1})` are
/// rejected so the images in `q/mq` stay independent, and the last element
/// is accepted only if the sequence regenerates `q`.
pub fn build_filter_regular_sop(q: &Ideal, seed: u64, max_attempts: u32) -> Result<SopCandidate> {
    let ring = q.ring();
    let d = ring.dim()?;
    if d == 0 {
        return Ok(SopCandidate {
            elements: Vec::new(),
            source: q.clone(),
            attempts: 0,
            seed,
        });
    }
    if !is_m_primary(q)? {
        return Err(Error::NotParameterIdeal(format!("{q} is not m-primary")));
    }
    let mu = minimal_generator_count(q)?;
    if mu != d {
        return Err(Error::NotParameterIdeal(format!(
            "{q} needs {mu} generators but dim R = {d}"
        )));
    }
    let zero = Ideal::zero(ring);
    let mut gens = Vec::new();
    for g in q.gens() {
        if !zero.contains(g)? {
            gens.push(g.clone());
        }
    }
    let mq = product(&ring.maximal_ideal(), q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.p();
    let mut elements: Vec<Poly> = Vec::new();
    let mut total = 0u32;
    for i in 0..d {
        let prefix = Ideal::new(ring, elements.clone());
        let forbidden = sum(&mq, &prefix)?;
        let mut accepted = None;
        for attempt in 0..max_attempts {
            total += 1;
            let x = if attempt == 0 && i < gens.len() {
                gens[i].clone()
            } else {
                let level = attempt / ATTEMPTS_PER_DEGREE;
                let mut x = Poly::zero(ring.ambient());
                for g in &gens {
                    let c = if level == 0 {
                        Poly::constant(ring.ambient(), rng.gen_range(0..p) as i64)
                    } else {
                        random_poly_up_to_degree(ring, level, &mut rng)
                    };
                    x = x.add(&c.mul(g));
                }
                x
            };
            if x.is_zero() || forbidden.contains(&x)? || !is_filter_regular(&x, &prefix)? {
                continue;
            }
            if i + 1 == d {
                let mut all = elements.clone();
                all.push(x.clone());
                if !Ideal::new(ring, all).equals(q)? {
                    continue;
                }
            }
            accepted = Some(x);
            break;
        }
        match accepted {
            Some(x) => elements.push(x),
            None => {
                return Err(Error::SopAttemptsExhausted {
                    position: i,
                    attempts: max_attempts as usize,
                    partial: elements.iter().map(ToString::to_string).collect(),
                })
            }
        }
    }
    Ok(SopCandidate {
        elements,
        source: q.clone(),
        attempts: total,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::MonomialOrder;
    use crate::groebner::RingSpec;

    fn fermat() -> Ring {
        RingSpec::parse(2, &["x", "y", "z"], MonomialOrder::Grevlex, &["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn regular_elements() {
        let r = RingSpec::polynomial(3, &["x", "y"]).unwrap();
        let zero = Ideal::zero(&r);
        for s in ["x", "x*y + y^3", "x^2"] {
            assert!(is_filter_regular(&r.parse_poly(s).unwrap(), &zero).unwrap());
        }
        assert!(!is_filter_regular(&r.parse_poly("0").unwrap(), &zero).unwrap());
        assert!(is_filter_regular(&r.parse_poly("1 + x").unwrap(), &zero).is_err());
    }

    #[test]
    fn zero_is_filter_regular_only_in_dimension_zero() {
        let r = RingSpec::parse(2, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap();
        assert!(is_filter_regular(&r.parse_poly("0").unwrap(), &Ideal::zero(&r)).unwrap());
    }

    #[test]
    fn coordinate_cross_has_a_zero_divisor() {
        // R = F_2[x,y]/(xy) has minimal primes (x) and (y); x lies in (x), an
        // associated prime other than m, so x is not filter regular on R.
        let r = RingSpec::parse(2, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap();
        let x = r.parse_poly("x").unwrap();
        let minimal_primes = [Ideal::parse(&r, "x").unwrap(), Ideal::parse(&r, "y").unwrap()];
        let avoids_all = minimal_primes.iter().all(|pr| !pr.contains(&x).unwrap());
        assert!(!avoids_all);
        assert_eq!(is_filter_regular(&x, &Ideal::zero(&r)).unwrap(), avoids_all);
        // x + y avoids both primes and is filter regular
        let xy = r.parse_poly("x + y").unwrap();
        assert!(minimal_primes.iter().all(|pr| !pr.contains(&xy).unwrap()));
        assert!(is_filter_regular(&xy, &Ideal::zero(&r)).unwrap());
    }

    #[test]
    fn sop_checks() {
        let r = fermat();
        let p = |s: &str| r.parse_poly(s).unwrap();
        assert!(is_sop(&r, &[p("x"), p("y")]).unwrap());
        assert!(!is_sop(&r, &[p("x")]).unwrap());
        assert!(!is_sop(&r, &[p("x"), p("x")]).unwrap());
    }

    #[test]
    fn regular_sequence_accepted_first() {
        let r = RingSpec::polynomial(3, &["x", "y"]).unwrap();
        let q = Ideal::parse(&r, "x, y").unwrap();
        let sop = build_filter_regular_sop(&q, 7, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert_eq!(sop.attempts, 2);
        assert_eq!(sop.elements, vec![r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()]);
    }

    #[test]
    fn fermat_sop_and_powers() {
        let r = fermat();
        let q = Ideal::parse(&r, "x, y").unwrap();
        let sop = build_filter_regular_sop(&q, 1, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert_eq!(sop.elements.len(), 2);
        assert!(Ideal::new(&r, sop.elements.clone()).equals(&q).unwrap());
        assert!(is_filter_regular_sequence(&r, &sop.elements).unwrap());
        for n in 1..=3 {
            assert!(is_filter_regular_sequence(&r, &sop.powers(n).unwrap()).unwrap());
        }
        let json = sop.to_json();
        assert_eq!(json["seed"], 1);
    }

    #[test]
    fn non_obvious_generators_and_determinism() {
        let r = RingSpec::parse(2, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap();
        // q = (x + y) since x^2 = x (x + y); the first generator lies in mq
        let q = Ideal::parse(&r, "x^2, x + y").unwrap();
        let a = build_filter_regular_sop(&q, 42, DEFAULT_MAX_ATTEMPTS).unwrap();
        let b = build_filter_regular_sop(&q, 42, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.attempts, b.attempts);
        assert!(a.attempts > 1);
        assert!(Ideal::new(&r, a.elements.clone()).equals(&q).unwrap());
        assert!(is_filter_regular_sequence(&r, &a.elements).unwrap());
    }

    #[test]
    fn sampled_parameter_ideals() {
        let r = fermat();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let q = random_parameter_ideal(&r, &mut rng, 2, 100).unwrap();
            assert!(is_sop(&r, q.gens()).unwrap());
            assert!(is_m_primary(&q).unwrap());
        }
    }

    #[test]
    fn dimension_zero_and_bad_input() {
        let r0 = RingSpec::parse(3, &["x"], MonomialOrder::Grevlex, &["x^2"]).unwrap();
        let sop = build_filter_regular_sop(&r0.maximal_ideal(), 0, 10).unwrap();
        assert!(sop.elements.is_empty());
        let r = RingSpec::polynomial(3, &["x", "y"]).unwrap();
        assert!(matches!(
            build_filter_regular_sop(&Ideal::parse(&r, "x").unwrap(), 0, 10),
            Err(Error::NotParameterIdeal(_))
        ));
        assert!(matches!(
            build_filter_regular_sop(&Ideal::parse(&r, "x^2, x*y, y^2").unwrap(), 0, 10),
            Err(Error::NotParameterIdeal(_))
        ));
    }
}
