use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials. Exponent overflow is an invariant violation at
    /// this level: user-facing entry points (parsing, powers) check first.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        let k32 = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
        let mut out = SmallVec::with_capacity(self.0.len());
        for a in self.0.iter() {
            out.push(a.checked_mul(k32).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True if every variable with positive exponent lies in `vars`.
    pub fn supported_in(&self, vars: &[bool]) -> bool {
        self.0.iter().zip(vars).all(|(e, allowed)| *e == 0 || *allowed)
    }
}

/// Monomial orders. `Elimination(k)` is a block order: grevlex on the first
/// `k` variables, ties broken by grevlex on the rest, so any monomial
/// involving one of the first `k` variables beats every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable is larger
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination(k) => {
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elimination({k})"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => {
                let inner = t
                    .strip_prefix("elimination(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidRing(format!("unknown monomial order `{s}`")))?;
                let k = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad elimination block `{s}`")))?;
                Ok(MonomialOrder::Elimination(k))
            }
        }
    }
}
