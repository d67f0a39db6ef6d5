//! Brute-force ground truth over finite quotients `R/J`.
//!
//! A [`FiniteQuotient`] is the standard-monomial basis of `R/J` together with
//! the matrices of multiplication by each variable. After construction every
//! computation is linear algebra over F_p on coordinate vectors; the closure
//! and HSL routines enumerate every element of the quotient and never touch
//! the preimage/chain code of `frobenius` or `frobmod`.
//!
//! Both `x ↦ x^(p^e)` from `R/q` to `R/q^[p^e]` and the Frobenius of `R/J`
//! are F_p-linear (additive, and `c^p = c` on F_p), so `x = Σ c_j b_j` maps to
//! `Σ c_j F(b_j)`. Elements are visited in counter order and their images are
//! updated incrementally: bumping digit `j` by one (with or without wrap,
//! since `p ≡ 0`) adds the image of `b_j`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ffpoly::{FieldPrime, Monomial, Poly};
use crate::frobenius::ClosureCertificate;
use crate::frobmod::FrobModule;
use crate::groebner::Ideal;
use crate::ideal_ops::{bracket_power, is_m_primary, standard_monomials};

pub const DEFAULT_ELEMENT_CAP: u128 = 1 << 14;
pub const DEFAULT_MODEL_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Maximum number of elements of `R/q` that are enumerated.
    pub element_cap: u128,
    /// Maximum length of the auxiliary models `R/q^[p^e]`.
    pub model_cap: usize,
    /// Exponent search bound; defaults to `length(R/q)`.
    pub e_max: Option<u32>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            element_cap: DEFAULT_ELEMENT_CAP,
            model_cap: DEFAULT_MODEL_CAP,
            e_max: None,
        }
    }
}

type SparseCol = Vec<(usize, u32)>;

/// Finite model of `R/J` for `J` m-primary.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    ideal: Ideal,
    field: FieldPrime,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `mult_table[i][j]` = coordinates of `x_i * b_j`.
    mult_table: Vec<Vec<SparseCol>>,
}

/// `R/J` with at most `cap` elements.
pub fn enumerate_quotient(j: &Ideal, cap: u128) -> Result<FiniteQuotient> {
    let p = j.ring().p() as u128;
    let mut max_len = 0usize;
    let mut size = p;
    while size <= cap {
        max_len += 1;
        size = size.saturating_mul(p);
    }
    FiniteQuotient::build(j, max_len).map_err(|e| match e {
        Error::QuotientTooLarge { .. } => Error::QuotientTooLarge { cap },
        other => other,
    })
}

impl FiniteQuotient {
    /// Model of `R/J` of length at most `length_cap`.
    pub fn build(j: &Ideal, length_cap: usize) -> Result<Self> {
        if !is_m_primary(j)? {
            return Err(Error::NotMPrimary(j.to_string()));
        }
        let basis = standard_monomials(j, length_cap)?;
        let index: HashMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let ring = j.ring();
        let n = ring.nvars();
        let mut mult_table = Vec::with_capacity(n);
        for v in 0..n {
            let xv = Monomial::var(n, v, 1);
            let mut cols = Vec::with_capacity(basis.len());
            for b in &basis {
                let m = b.mul(&xv);
                let col = match index.get(&m) {
                    Some(&k) => vec![(k, 1)],
                    None => {
                        let nf = j.normal_form(&Poly::monomial(ring.ambient(), m, 1))?;
                        let mut col = Vec::with_capacity(nf.len());
                        for (t, c) in nf.terms() {
                            let k = *index.get(t).ok_or_else(|| {
                                Error::InvariantViolation(format!(
                                    "normal form term {t:?} is not a standard monomial"
                                ))
                            })?;
                            col.push((k, *c));
                        }
                        col
                    }
                };
                cols.push(col);
            }
            mult_table.push(cols);
        }
        Ok(FiniteQuotient {
            ideal: j.clone(),
            field: ring.field(),
            basis,
            index,
            mult_table,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn length(&self) -> usize {
        self.basis.len()
    }

    /// `p^length`, saturating.
    pub fn size(&self) -> u128 {
        (self.field.p() as u128).saturating_pow(self.length() as u32)
    }

    pub fn mult_table(&self) -> &[Vec<Vec<(usize, u32)>>] {
        &self.mult_table
    }

    fn zero_vec(&self) -> Vec<u32> {
        vec![0; self.length()]
    }

    fn unit_vec(&self) -> Vec<u32> {
        let mut v = self.zero_vec();
        if !v.is_empty() {
            v[self.index[&Monomial::one(self.mult_table.len())]] = 1;
        }
        v
    }

    /// Multiplication by the variable `x_var`.
    pub fn mul_var(&self, var: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = self.zero_vec();
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, a) in &self.mult_table[var][j] {
                out[k] = f.add(out[k], f.mul(c, a));
            }
        }
        out
    }

    fn mul_monomial(&self, m: &Monomial, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (var, &k) in m.exponents().iter().enumerate() {
            for _ in 0..k {
                if out.iter().all(|&c| c == 0) {
                    return out;
                }
                out = self.mul_var(var, &out);
            }
        }
        out
    }

    pub fn coords_of_monomial(&self, m: &Monomial) -> Vec<u32> {
        if let Some(&k) = self.index.get(m) {
            let mut v = self.zero_vec();
            v[k] = 1;
            return v;
        }
        self.mul_monomial(m, &self.unit_vec())
    }

    /// Coordinates of the class of `f`.
    pub fn coords(&self, f: &Poly) -> Vec<u32> {
        let fld = self.field;
        let mut out = self.zero_vec();
        for (m, c) in f.terms() {
            for (o, x) in out.iter_mut().zip(self.coords_of_monomial(m)) {
                *o = fld.add(*o, fld.mul(*c, x));
            }
        }
        out
    }

    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = self.zero_vec();
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let prod = self.mul_monomial(&self.basis[j], b);
            for (o, x) in out.iter_mut().zip(prod) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        out
    }

    /// The polynomial `Σ v_j b_j`.
    pub fn lift(&self, v: &[u32]) -> Poly {
        let ambient = self.ideal.ring().ambient();
        Poly::from_terms(
            ambient,
            v.iter()
                .zip(&self.basis)
                .filter(|(c, _)| **c != 0)
                .map(|(c, m)| (m.clone(), *c)),
        )
    }
}

/// Column indices on which a family of vectors is already determined: the
/// pivot columns of its row echelon form.
fn pivot_columns(rows: &[Vec<u32>], f: FieldPrime) -> Vec<usize> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let Some(k) = (r..m.len()).find(|&k| m[k][col] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = f.inv(m[r][col]);
        let pivot_row: Vec<u32> = m[r].iter().map(|&x| f.mul(x, inv)).collect();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        m[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Images of the basis vectors restricted to their pivot columns; a
/// combination of the images vanishes iff its restriction does.
fn compress(rows: Vec<Vec<u32>>, f: FieldPrime) -> Vec<Vec<u32>> {
    let piv = pivot_columns(&rows, f);
    rows.into_iter().map(|r| piv.iter().map(|&c| r[c]).collect()).collect()
}

/// Visits every coefficient vector in F_p^len once, keeping for each map `k`
/// the accumulated image `Σ c_j images[k][j]`; `visit(c, acc)` sees them all.
fn enumerate_images(
    len: usize,
    f: FieldPrime,
    images: &[Vec<Vec<u32>>],
    mut visit: impl FnMut(&[u32], &[Vec<u32>]),
) {
    let p = f.p();
    let mut digits = vec![0u32; len];
    let mut acc: Vec<Vec<u32>> = images
        .iter()
        .map(|rows| vec![0; rows.first().map_or(0, Vec::len)])
        .collect();
    loop {
        visit(&digits, &acc);
        let mut j = 0;
        loop {
            if j == len {
                return;
            }
            for (a, rows) in acc.iter_mut().zip(images) {
                for (x, y) in a.iter_mut().zip(&rows[j]) {
                    *x = f.add(*x, *y);
                }
            }
            digits[j] += 1;
            if digits[j] < p {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

/// Incremental row echelon basis of a subspace of F_p^len.
struct SpanBasis {
    f: FieldPrime,
    rows: Vec<(usize, Vec<u32>)>,
}

impl SpanBasis {
    fn new(f: FieldPrime) -> Self {
        SpanBasis { f, rows: Vec::new() }
    }

    fn insert(&mut self, v: &[u32]) {
        let f = self.f;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return;
        };
        let inv = f.inv(v[piv]);
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        self.rows.push((piv, v));
        self.rows.sort_by_key(|(p, _)| *p);
    }

    fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

#[derive(Clone, Debug)]
pub struct OracleClosure {
    pub closure: Ideal,
    pub fte: u32,
    /// Largest exponent at which membership was tested.
    pub e_searched: u32,
    pub length: usize,
    pub elements: u128,
    /// `dim_{F_p} q^F/q`.
    pub closure_dim: usize,
}

/// `q^F` by exhausting `R/q`: `x` is in the closure iff `x^(p^e) ∈ q^[p^e]`
/// for some `e ≤ E`, where `E = min(length(R/q), largest e whose model of
/// R/q^[p^e] fits the model cap)` unless overridden.
pub fn oracle_frobenius_closure(q: &Ideal, cfg: &OracleConfig) -> Result<OracleClosure> {
    let base = enumerate_quotient(q, cfg.element_cap)?;
    let f = base.field;
    let len = base.length();
    let target = cfg.e_max.unwrap_or(len as u32);
    let mut images = Vec::new();
    for e in 0..=target {
        let model = match FiniteQuotient::build(&bracket_power(q, e)?, cfg.model_cap) {
            Ok(m) => m,
            Err(Error::QuotientTooLarge { .. }) if e > 0 => break,
            Err(err) => return Err(err),
        };
        let pe = (f.p() as u64).pow(e);
        let mut rows = Vec::with_capacity(len);
        for b in &base.basis {
            rows.push(model.coords_of_monomial(&b.checked_pow(pe)?));
        }
        images.push(compress(rows, f));
    }
    let e_searched = images.len() as u32 - 1;
    let mut fte = 0;
    let mut span = SpanBasis::new(f);
    enumerate_images(len, f, &images, |c, acc| {
        if let Some(e) = acc.iter().position(|a| a.iter().all(|&x| x == 0)) {
            fte = fte.max(e as u32);
            if e > 0 {
                span.insert(c);
            }
        }
    });
    let rows = span.into_rows();
    let closure_dim = rows.len();
    let mut gens = q.gens().to_vec();
    gens.extend(rows.iter().map(|r| base.lift(r)));
    Ok(OracleClosure {
        closure: Ideal::new(q.ring(), gens),
        fte,
        e_searched,
        length: len,
        elements: base.size(),
        closure_dim,
    })
}

pub fn oracle_fte(q: &Ideal, cfg: &OracleConfig) -> Result<u32> {
    Ok(oracle_frobenius_closure(q, cfg)?.fte)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree(String),
    /// The oracle could not reach the certificate (size caps, or it searched
    /// fewer exponents than the certificate needs).
    OutOfReach(String),
}

/// Compares a certificate with the oracle and sets `oracle_verified` on
/// agreement.
pub fn verify_certificate(
    cert: &mut ClosureCertificate,
    cfg: &OracleConfig,
) -> Result<(Verdict, Option<OracleClosure>)> {
    if cert.inconclusive {
        return Ok((Verdict::OutOfReach("certificate is inconclusive".into()), None));
    }
    let o = match oracle_frobenius_closure(&cert.input, cfg) {
        Ok(o) => o,
        Err(e @ Error::QuotientTooLarge { .. }) => return Ok((Verdict::OutOfReach(e.to_string()), None)),
        Err(e) => return Err(e),
    };
    let need = cert.check_exponent();
    if o.e_searched < need {
        let msg = format!("oracle searched e <= {} but the certificate needs {need}", o.e_searched);
        return Ok((Verdict::OutOfReach(msg), Some(o)));
    }
    let same_closure = o.closure.equals(&cert.closure)?;
    let same_fte = cert.fte == Some(o.fte);
    if same_closure && same_fte {
        cert.oracle_verified = true;
        return Ok((Verdict::Agree, Some(o)));
    }
    let msg = format!(
        "closure {} vs oracle {}, fte {:?} vs oracle {}",
        cert.closure, o.closure, cert.fte, o.fte
    );
    Ok((Verdict::Disagree(msg), Some(o)))
}

#[derive(Clone, Debug)]
pub struct OracleZeroClosure {
    /// `K` with `0^F = K/J`.
    pub closure: Ideal,
    pub hsl: u32,
    pub length: usize,
}

/// `0^F` of `R/J` and its HSL number by iterating the Frobenius of `R/J` on
/// every element. Iterates up to `length(R/J)` suffice: `F` is F_p-linear,
/// so its nilpotent part has index at most the dimension.
pub fn oracle_zero_closure(m: &FrobModule, cfg: &OracleConfig) -> Result<OracleZeroClosure> {
    let model = enumerate_quotient(m.ideal(), cfg.element_cap)?;
    let f = model.field;
    let len = model.length();
    let p = f.p() as u64;
    // frob[j] = F(b_j); powers[e][j] = F^e(b_j)
    let frob: Vec<Vec<u32>> = model
        .basis
        .iter()
        .map(|b| b.checked_pow(p).map(|bp| model.coords_of_monomial(&bp)))
        .collect::<Result<_>>()?;
    let apply = |v: &[u32]| -> Vec<u32> {
        let mut out = vec![0; len];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                for (o, x) in out.iter_mut().zip(&frob[j]) {
                    *o = f.add(*o, f.mul(c, *x));
                }
            }
        }
        out
    };
    let mut powers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(len + 1);
    let identity: Vec<Vec<u32>> = (0..len)
        .map(|j| (0..len).map(|k| u32::from(j == k)).collect())
        .collect();
    powers.push(identity);
    for e in 1..=len {
        let next = powers[e - 1].iter().map(|v| apply(v)).collect();
        powers.push(next);
    }
    let images: Vec<Vec<Vec<u32>>> = powers.into_iter().map(|rows| compress(rows, f)).collect();
    let mut hsl = 0;
    let mut span = SpanBasis::new(f);
    enumerate_images(len, f, &images, |c, acc| {
        if let Some(e) = acc.iter().position(|a| a.iter().all(|&x| x == 0)) {
            hsl = hsl.max(e as u32);
            if e > 0 {
                span.insert(c);
            }
        }
    });
    let mut gens = m.ideal().gens().to_vec();
    gens.extend(span.into_rows().iter().map(|r| model.lift(r)));
    Ok(OracleZeroClosure {
        closure: Ideal::new(m.ideal().ring(), gens),
        hsl,
        length: len,
    })
}

pub fn oracle_hsl(m: &FrobModule, cfg: &OracleConfig) -> Result<u32> {
    Ok(oracle_zero_closure(m, cfg)?.hsl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::MonomialOrder;
    use crate::frobmod::make_frob_module;
    use crate::groebner::{Ring, RingSpec};

    fn fermat() -> Ring {
        RingSpec::parse(2, &["x", "y", "z"], MonomialOrder::Grevlex, &["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let r = RingSpec::polynomial(2, &["x", "y"]).unwrap();
        let fq = enumerate_quotient(&Ideal::parse(&r, "x^2, y").unwrap(), 1 << 14).unwrap();
        assert_eq!(fq.length(), 2);
        assert_eq!(fq.size(), 4);
        let fq = enumerate_quotient(&r.maximal_ideal(), 1 << 14).unwrap();
        assert_eq!(fq.length(), 1);
        assert_eq!(fq.size(), 2);
        let fq = enumerate_quotient(&Ideal::parse(&fermat(), "x, y").unwrap(), 1 << 14).unwrap();
        assert_eq!(fq.size(), 8);
        let exps: Vec<Vec<u32>> = fq.basis().iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 2]]);
        // z * z^2 = z^3 = x^3 + y^3 ≡ 0
        assert!(fq.mult_table()[2][2].is_empty());
    }

    #[test]
    fn cap_and_precondition() {
        let r = RingSpec::polynomial(2, &["x", "y"]).unwrap();
        let j = Ideal::parse(&r, "x^4, y^4").unwrap();
        assert_eq!(enumerate_quotient(&j, 1000).unwrap_err(), Error::QuotientTooLarge { cap: 1000 });
        assert!(enumerate_quotient(&j, 1 << 16).is_ok());
        assert!(matches!(
            enumerate_quotient(&Ideal::parse(&r, "x").unwrap(), 1 << 14),
            Err(Error::NotMPrimary(_))
        ));
    }

    #[test]
    fn multiplication_agrees_with_normal_forms() {
        let r = RingSpec::polynomial(3, &["x", "y"]).unwrap();
        let j = Ideal::parse(&r, "x^3 - y^2, x*y^2, y^4").unwrap();
        let fq = enumerate_quotient(&j, 1 << 20).unwrap();
        let a = r.parse_poly("1 + x + 2*y^2").unwrap();
        let b = r.parse_poly("x*y + 2*x^2").unwrap();
        let prod = fq.multiply(&fq.coords(&a), &fq.coords(&b));
        let nf = j.normal_form(&a.mul(&b)).unwrap();
        assert_eq!(fq.lift(&prod), nf);
    }

    #[test]
    fn regular_closure_is_trivial() {
        let r = RingSpec::polynomial(3, &["x", "y"]).unwrap();
        let q = Ideal::parse(&r, "x^2, y^2").unwrap();
        let o = oracle_frobenius_closure(&q, &OracleConfig::default()).unwrap();
        assert!(o.closure.equals(&q).unwrap());
        assert_eq!(o.fte, 0);
        assert_eq!(o.closure_dim, 0);
        let m = r.maximal_ideal();
        assert!(oracle_frobenius_closure(&m, &OracleConfig::default()).unwrap().closure.equals(&m).unwrap());
    }

    #[test]
    fn fermat_closure() {
        let r = fermat();
        let q = Ideal::parse(&r, "x, y").unwrap();
        let o = oracle_frobenius_closure(&q, &OracleConfig::default()).unwrap();
        assert!(o.closure.equals(&Ideal::parse(&r, "x, y, z^2").unwrap()).unwrap());
        assert_eq!(o.fte, 1);
        assert_eq!(o.closure_dim, 1);
        assert!(o.e_searched >= 1);
        let mut cert = crate::frobenius::frobenius_closure(&q, 2, 10).unwrap();
        let (v, _) = verify_certificate(&mut cert, &OracleConfig::default()).unwrap();
        assert_eq!(v, Verdict::Agree);
        assert!(cert.oracle_verified);
    }

    #[test]
    fn truncated_line_hsl() {
        let r = RingSpec::parse(2, &["x"], MonomialOrder::Grevlex, &["x^4"]).unwrap();
        let m = make_frob_module(&Ideal::parse(&r, "x^2").unwrap()).unwrap();
        let o = oracle_zero_closure(&m, &OracleConfig::default()).unwrap();
        assert_eq!(o.hsl, 1);
        assert!(o.closure.equals(&Ideal::parse(&r, "x").unwrap()).unwrap());
        // zero ring element 0 → HSL 0 when 0^F = 0: residue field
        let m = make_frob_module(&r.maximal_ideal()).unwrap();
        assert_eq!(oracle_hsl(&m, &OracleConfig::default()).unwrap(), 0);
    }
}
