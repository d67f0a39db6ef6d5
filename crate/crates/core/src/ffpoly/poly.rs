use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::FieldPrime;
use super::monomial::{Monomial, MonomialOrder};

/// An ambient polynomial ring F_p[x_1..x_n] with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldPrime,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl PolyRing {
    pub fn new(field: FieldPrime, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "elimination block {k} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    #[inline]
    pub fn field(&self) -> FieldPrime {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

/// A term: monomial with a nonzero coefficient in `0..p`.
pub type Term = (Monomial, u32);

/// Sparse polynomial over F_p. Terms are stored strictly descending in the
/// ring's order with no zero coefficients; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.p());
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    /// `self + c * m * other`, by a single merge pass.
    pub fn add_scaled_shifted(&self, c: u32, m: &Monomial, other: &Poly) -> Poly {
        self.check_ring(other);
        let ring = &self.ring;
        let field = ring.field();
        let c = c % field.p();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let shift = !m.is_one();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(bm, bc)| {
                let mm = if shift { bm.mul(m) } else { bm.clone() };
                (mm, field.mul(*bc, c))
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = field.add(x.1, y.1);
                        if s != 0 {
                            out.push((y.0, s));
                        }
                    }
                },
            }
        }
        Poly::from_sorted_terms(ring, out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled_shifted(1, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let m1 = self.ring.field().neg(1);
        self.add_scaled_shifted(m1, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let field = self.ring.field();
        let c = c % field.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let field = self.ring.field();
        let c = c % field.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let e = acc.entry(am.mul(bm)).or_insert(0);
                *e = field.add(*e, field.mul(*ac, *bc));
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Generic exponentiation by square-and-multiply, with the resulting
    /// degree checked against exponent overflow first.
    pub fn pow(&self, mut n: u64) -> Result<Poly> {
        if let Some(d) = self.terms.iter().flat_map(|(m, _)| m.exponents().iter()).max() {
            if (*d as u128) * (n as u128) > u32::MAX as u128 {
                return Err(Error::ExponentOverflow);
            }
        }
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`, computed term by term as `sum c^(p^e) m^(p^e)`. Raising
    /// every monomial to the same power preserves the term order.
    pub fn frob_pow(&self, e: u32) -> Result<Poly> {
        if e == 0 {
            return Ok(self.clone());
        }
        let field = self.ring.field();
        let q = (field.p() as u64)
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::ExponentOverflow)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, field.frob(*c, e)));
        }
        Ok(Poly::from_sorted_terms(&self.ring, terms))
    }

    pub fn make_monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring.
    pub fn remap(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.ring.nvars());
        assert_eq!(target.p(), self.ring.p());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[var_map[i]] += x;
            }
            (Monomial::from_exponents(&e), *c)
        });
        Poly::from_terms(target, terms)
    }

    /// True if every term only involves the variables flagged in `vars`.
    pub fn supported_in(&self, vars: &[bool]) -> bool {
        self.terms.iter().all(|(m, _)| m.supported_in(vars))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
