//! Quotient rings, ideals with cached reduced Gröbner bases, normal forms and
//! ideal membership.
//!
//! An ideal `J` of `R = S/I0` is always handled through its preimage
//! `J_S = J + I0` in the ambient polynomial ring `S`: the quotient relations
//! are appended to the generators before any Gröbner basis is computed.

mod buchberger;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use buchberger::{
    groebner_basis, is_groebner_basis, is_reduced, normal_form, s_polynomial, GbConfig,
    PairStrategy, DEFAULT_STEP_CAP,
};

use crate::error::{Error, Result};
use crate::ffpoly::{parse_poly, parse_poly_list, FieldPrime, MonomialOrder, Poly, PolyRing};

/// `R = S/I0` with `S = F_p[vars]` and the maximal ideal `m = (vars)`.
pub struct RingSpec {
    ambient: Arc<PolyRing>,
    quotient: Vec<Poly>,
    gb_config: GbConfig,
    quotient_gb: OnceLock<Result<Vec<Poly>>>,
    dim: OnceLock<Result<usize>>,
}

pub type Ring = Arc<RingSpec>;

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}]",
            self.ambient.p(),
            self.ambient.vars().join(",")
        )?;
        if !self.quotient.is_empty() {
            let q: Vec<String> = self.quotient.iter().map(|g| g.to_string()).collect();
            write!(f, "/({})", q.join(", "))?;
        }
        Ok(())
    }
}

impl RingSpec {
    pub fn new(ambient: Arc<PolyRing>, quotient: Vec<Poly>, gb_config: GbConfig) -> Result<Ring> {
        if quotient.iter().any(|g| !Arc::ptr_eq(g.ring(), &ambient) && **g.ring() != *ambient) {
            return Err(Error::RingMismatch);
        }
        if quotient.iter().any(|g| g.is_zero()) {
            return Err(Error::InvalidRing("quotient generators must be nonzero".into()));
        }
        Ok(Arc::new(RingSpec {
            ambient,
            quotient,
            gb_config,
            quotient_gb: OnceLock::new(),
            dim: OnceLock::new(),
        }))
    }

    /// Convenience constructor from strings, with the default step cap.
    pub fn parse(p: u64, vars: &[&str], order: MonomialOrder, quotient: &[&str]) -> Result<Ring> {
        let ambient = PolyRing::new(
            FieldPrime::new(p)?,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )?;
        let relations = quotient
            .iter()
            .map(|s| parse_poly(s, &ambient))
            .collect::<Result<Vec<_>>>()?;
        RingSpec::new(ambient, relations, GbConfig::default())
    }

    /// Polynomial ring in grevlex without relations.
    pub fn polynomial(p: u64, vars: &[&str]) -> Result<Ring> {
        Self::parse(p, vars, MonomialOrder::Grevlex, &[])
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn field(&self) -> FieldPrime {
        self.ambient.field()
    }

    pub fn p(&self) -> u32 {
        self.ambient.p()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn vars(&self) -> &[String] {
        self.ambient.vars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.ambient.order()
    }

    pub fn gb_config(&self) -> &GbConfig {
        &self.gb_config
    }

    /// Generators of `I0` in `S`.
    pub fn relations(&self) -> &[Poly] {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    /// Reduced Gröbner basis of `I0`.
    pub fn relations_gb(&self) -> Result<&[Poly]> {
        self.quotient_gb
            .get_or_init(|| groebner_basis(&self.quotient, &self.gb_config))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.ambient)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(&self.ambient, i)
    }

    /// Krull dimension of `R` (computed once).
    pub fn dim(self: &Arc<Self>) -> Result<usize> {
        self.dim
            .get_or_init(|| crate::ideal_ops::krull_dim(&Ideal::zero(self)))
            .clone()
    }

    /// The ideal `m = (vars)`.
    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, (0..self.nvars()).map(|i| self.var(i)).collect())
    }

    /// The same ring with a different Buchberger step cap.
    pub fn with_step_cap(&self, step_cap: usize) -> Ring {
        Arc::new(RingSpec {
            ambient: self.ambient.clone(),
            quotient: self.quotient.clone(),
            gb_config: GbConfig {
                step_cap,
                ..self.gb_config
            },
            quotient_gb: OnceLock::new(),
            dim: OnceLock::new(),
        })
    }

    /// `R/J` presented as a new quotient of the same ambient ring.
    pub fn quotient_by(&self, ideal: &Ideal) -> Result<Ring> {
        let mut rel = ideal.preimage_gb()?.to_vec();
        if rel.is_empty() {
            rel = self.quotient.clone();
        }
        RingSpec::new(self.ambient.clone(), rel, self.gb_config)
    }
}

/// An ideal of `R = S/I0`, given by generators in `S`, with a lazily computed
/// reduced Gröbner basis of its preimage `J + I0` in the ring's order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<Result<Vec<Poly>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self}) in {:?}", self.ring)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        for g in &gens {
            assert!(
                Arc::ptr_eq(g.ring(), ring.ambient()) || **g.ring() == **ring.ambient(),
                "generator from a different ring"
            );
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    /// Ideal together with a known reduced Gröbner basis of its preimage.
    pub(crate) fn with_preimage_gb(ring: &Ring, gens: Vec<Poly>, gb: Vec<Poly>) -> Self {
        let ideal = Ideal::new(ring, gens);
        let _ = ideal.gb.set(Ok(gb));
        ideal
    }

    /// Ideal given by a reduced Gröbner basis of its preimage; generators lying
    /// in `I0` are dropped from the displayed generator list. The basis is
    /// cached only when it was computed in the ring's own order.
    pub(crate) fn from_preimage_basis(ring: &Ring, basis: Vec<Poly>, in_ring_order: bool) -> Result<Self> {
        let rel = ring.relations_gb()?;
        let gens: Vec<Poly> = basis
            .iter()
            .filter(|g| rel.is_empty() || !normal_form(g, rel).is_zero())
            .cloned()
            .collect();
        if in_ring_order {
            Ok(Ideal::with_preimage_gb(ring, gens, basis))
        } else {
            Ok(Ideal::new(ring, gens))
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        Ok(Ideal::new(ring, parse_poly_list(text, ring.ambient())?))
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, vec![Poly::one(ring.ambient())])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Generators of the preimage `J + I0` in `S`.
    pub fn preimage_gens(&self) -> Vec<Poly> {
        let mut v = self.gens.clone();
        v.extend(self.ring.relations().iter().cloned());
        v
    }

    /// Reduced Gröbner basis of the preimage (cached).
    pub fn preimage_gb(&self) -> Result<&[Poly]> {
        self.gb
            .get_or_init(|| groebner_basis(&self.preimage_gens(), self.ring.gb_config()))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn groebner_basis(&self) -> Result<Ideal> {
        let gb = self.preimage_gb()?.to_vec();
        Ideal::from_preimage_basis(&self.ring, gb, true)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(normal_form(f, self.preimage_gb()?))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals of `R`, by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.preimage_gb()? == other.preimage_gb()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self
            .preimage_gb()?
            .first()
            .is_some_and(|g| g.is_constant()))
    }

    /// True if the ideal is zero in `R`, i.e. contained in `I0`.
    pub fn is_zero(&self) -> Result<bool> {
        let rel = self.ring.relations_gb()?;
        Ok(self.gens.iter().all(|g| normal_form(g, rel).is_zero()))
    }

    pub(crate) fn check_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring)
            || (self.ring.ambient() == other.ring.ambient()
                && self.ring.relations() == other.ring.relations())
        {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Membership of `f` in `ideal` (as an ideal of `R`).
pub fn is_member(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}
