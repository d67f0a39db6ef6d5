//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

mod common;

use std::time::{Duration, Instant};

use frobkit::filter_regular::{
    build_filter_regular_sop, is_filter_regular, is_filter_regular_sequence, random_parameter_ideal,
    DEFAULT_MAX_ATTEMPTS,
};
use frobkit::frobenius::{frobenius_closure, shift_check, ClosureCertificate};
use frobkit::frobmod::{hsl, is_f_stable, make_frob_module, submodule_closure, zero_closure, Projection};
use frobkit::h0_relative::{bound_formula, fte_identity};
use frobkit::ideal_ops::{bracket_power, is_m_primary, standard_monomials, sum};
use frobkit::oracle::{enumerate_quotient, oracle_frobenius_closure, oracle_zero_closure, OracleConfig};
use frobkit::{Ideal, Poly, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const WINDOW: u32 = 2;
const E_MAX: u32 = 10;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(60);
const CRITERION_2_BUDGET: Duration = Duration::from_secs(300);
const MIN_ORACLE_FIXTURES: usize = 25;
const ELEMENT_CAP: u128 = 1 << 14;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn(&mut Shared) -> Outcome);

/// Everything later criteria reuse.
#[derive(Default)]
struct Shared {
    certificates: Vec<(String, ClosureCertificate)>,
    /// `(label, q, sop generators if any)`
    identity_inputs: Vec<(String, Ideal, Option<Vec<Poly>>)>,
}

fn closure(q: &Ideal) -> Result<ClosureCertificate, String> {
    frobenius_closure(q, WINDOW, E_MAX).map_err(|e| format!("{q}: {e}"))
}

fn criterion_1(shared: &mut Shared) -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for p in [2u64, 3, 5] {
        let r = ring(p, &["x", "y", "z"], &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + p);
        for k in 0..30 {
            let q = random_parameter_ideal(&r, &mut rng, 3, 1000).map_err(|e| e.to_string())?;
            let cert = closure(&q)?;
            if cert.inconclusive || cert.fte != Some(0) || !cert.closure.equals(&q).unwrap() {
                return Err(format!("F_{p} sample {k}: {q} gave closure {} fte {:?}", cert.closure, cert.fte));
            }
            let label = format!("regular F_{p} sample {k}");
            let sop = build_filter_regular_sop(&q, k, DEFAULT_MAX_ATTEMPTS).map_err(|e| e.to_string())?;
            shared.identity_inputs.push((label.clone(), q.clone(), Some(sop.elements)));
            shared.certificates.push((label, cert));
            n += 1;
        }
    }
    let t = start.elapsed();
    if t > CRITERION_1_BUDGET {
        return Err(format!("{n} ideals took {t:.1?} > {CRITERION_1_BUDGET:?}"));
    }
    Ok(format!("{n} random parameter ideals over F_2, F_3, F_5 in 3 variables: closure = q, fte = 0 ({t:.1?})"))
}

fn criterion_2(shared: &mut Shared) -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let fixtures = oracle_fixtures();
    let mut fermat_seen = false;
    for f in &fixtures {
        let q = &f.ideal;
        if !is_m_primary(q).unwrap() {
            return Err(format!("{} is not m-primary", f.name));
        }
        let size = enumerate_quotient(q, ELEMENT_CAP).map_err(|e| format!("{}: {e}", f.name))?.size();
        let cert = closure(q)?;
        let o = oracle_frobenius_closure(q, &cfg).map_err(|e| format!("{}: {e}", f.name))?;
        if o.e_searched < cert.check_exponent() {
            return Err(format!(
                "{}: oracle searched e <= {} but the certificate needs {}",
                f.name,
                o.e_searched,
                cert.check_exponent()
            ));
        }
        if !o.closure.equals(&cert.closure).unwrap() || cert.fte != Some(o.fte) {
            return Err(format!(
                "{}: closure {} fte {:?} vs oracle {} fte {}",
                f.name, cert.closure, cert.fte, o.closure, o.fte
            ));
        }
        let m = make_frob_module(q).map_err(|e| e.to_string())?;
        let k = zero_closure(&m).map_err(|e| e.to_string())?;
        let h = hsl(&m).map_err(|e| e.to_string())?;
        let oz = oracle_zero_closure(&m, &cfg).map_err(|e| e.to_string())?;
        if !oz.closure.equals(&k).unwrap() || oz.hsl != h {
            return Err(format!(
                "{}: zero closure {k} hsl {h} vs oracle {} hsl {}",
                f.name, oz.closure, oz.hsl
            ));
        }
        println!(
            "    {:<48} |R/q| = {:>5}  fte = {}  hsl(R/q) = {}  oracle e <= {}",
            f.name,
            size,
            o.fte,
            h,
            o.e_searched
        );
        fermat_seen |= f.name == "fermat F_2: (x, y)";
        shared.identity_inputs.push((f.name.clone(), q.clone(), None));
        shared.certificates.push((f.name.clone(), cert));
    }
    let t = start.elapsed();
    if fixtures.len() < MIN_ORACLE_FIXTURES || !fermat_seen {
        return Err(format!("only {} fixtures (Fermat cone included: {fermat_seen})", fixtures.len()));
    }
    if t > CRITERION_2_BUDGET {
        return Err(format!("took {t:.1?} > {CRITERION_2_BUDGET:?}"));
    }
    Ok(format!(
        "{} fixtures: closure, fte, zero closure and hsl equal the oracle's ({t:.1?})",
        fixtures.len()
    ))
}

fn criterion_3(shared: &Shared) -> Outcome {
    let mut checked = 0;
    for (label, q, sop) in &shared.identity_inputs {
        let mut inputs = vec![q.clone()];
        if let Some(xs) = sop {
            if !xs.is_empty() {
                inputs.push(Ideal::new(q.ring(), xs.clone()));
            }
        }
        for input in inputs {
            let id = fte_identity(&input, WINDOW, E_MAX).map_err(|e| format!("{label}: {e}"))?;
            if !id.holds {
                return Err(format!("{label}: {input}: {id:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("rel_hsl = fte and relative closure = closure on {checked} ideals and sops"))
}

fn criterion_4() -> Outcome {
    let r = fermat(2);
    let q = ideal(&r, "x, y");
    let expect = ideal(&r, "x, y, z^2");
    let cert = closure(&q)?;
    let o = oracle_frobenius_closure(&q, &OracleConfig::default()).map_err(|e| e.to_string())?;
    let ok = cert.closure.equals(&expect).unwrap()
        && cert.fte == Some(1)
        && o.closure.equals(&expect).unwrap()
        && o.fte == 1;
    if !ok {
        return Err(format!("closure {} fte {:?}, oracle {} fte {}", cert.closure, cert.fte, o.closure, o.fte));
    }
    Ok("q = (x, y) in F_2[x,y,z]/(x^3+y^3+z^3): q^F = (x, y, z^2), Fte(q) = 1, oracle agrees".into())
}

/// Re-derives ascent and soundness from the certificate's own data.
fn certificate_sound(cert: &ClosureCertificate) -> Result<(), String> {
    for (i, w) in cert.chain.windows(2).enumerate() {
        if !w[1].contains_ideal(&w[0]).unwrap() {
            return Err(format!("chain not ascending at {i}"));
        }
    }
    if !cert.closure.contains_ideal(&cert.input).unwrap() {
        return Err("closure does not contain q".into());
    }
    let e = cert.check_exponent();
    let bq = bracket_power(&cert.input, e).unwrap();
    for g in cert.closure.gens() {
        if !bq.contains(&g.frob_pow(e).unwrap()).unwrap() {
            return Err(format!("{g}^(p^{e}) ∉ q^[p^{e}]"));
        }
    }
    Ok(())
}

fn criterion_5(shared: &Shared) -> Outcome {
    for (label, cert) in &shared.certificates {
        certificate_sound(cert).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!(
        "{} certificates: chains ascend and closure generators satisfy g^(p^e*) ∈ q^[p^e*]",
        shared.certificates.len()
    ))
}

fn sop_ok(r: &Ring, q: &Ideal, seed: u64) -> Result<(), String> {
    let sop = build_filter_regular_sop(q, seed, DEFAULT_MAX_ATTEMPTS).map_err(|e| format!("{q}: {e}"))?;
    for i in 0..sop.elements.len() {
        if !is_filter_regular(&sop.elements[i], &sop.prefix(i)).unwrap() {
            return Err(format!("{q}: element {i} not filter regular"));
        }
    }
    if !Ideal::new(r, sop.elements.clone()).equals(q).unwrap() {
        return Err(format!("{q}: sop does not regenerate q"));
    }
    for n in 1..=3 {
        if !is_filter_regular_sequence(r, &sop.powers(n).unwrap()).unwrap() {
            return Err(format!("{q}: {n}-th powers not filter regular"));
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let rings = [
        ("fermat F_2", fermat(2)),
        ("plane and line F_2", ring(2, &["x", "y", "z"], &["x*y", "x*z"])),
        ("regular F_3", ring(3, &["x", "y", "z"], &[])),
    ];
    let mut total = 0;
    for (name, r) in &rings {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for k in 0..20 {
            let q = random_parameter_ideal(r, &mut rng, 2, 1000).map_err(|e| format!("{name}: {e}"))?;
            sop_ok(r, &q, k).map_err(|e| format!("{name}: {e}"))?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} sops over 3 rings: each step filter regular, regenerates q, powers n <= 3 stay filter regular"
    ))
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    let mut equal = 0;
    for f in oracle_fixtures() {
        let cert = closure(&f.ideal)?;
        let fte = cert.fte.ok_or(format!("{}: inconclusive", f.name))?;
        for e0 in [1, 2] {
            let s = shift_check(&f.ideal, fte, e0, WINDOW, E_MAX).map_err(|e| format!("{}: {e}", f.name))?;
            if !s.holds {
                return Err(format!("{} e0 = {e0}: {s:?}", f.name));
            }
            cases += 1;
            equal += s.equal as usize;
        }
    }
    Ok(format!(
        "Fte(q) <= Fte(q^[p^e0]) + e0 on {cases} cases (e0 in {{1, 2}}); equality in {equal}/{cases}"
    ))
}

fn criterion_8() -> Outcome {
    let fixtures = projection_fixtures();
    for f in &fixtures {
        let fail = |what: &str| Err(format!("{}: {what}", f.name));
        let m = make_frob_module(&f.j).map_err(|e| e.to_string())?;
        let n = make_frob_module(&f.j2).map_err(|e| e.to_string())?;
        let alpha = Projection::new(&m, &n, f.scalar).map_err(|e| e.to_string())?;
        for b in standard_monomials(&f.j, 1 << 12).unwrap() {
            let x = Poly::monomial(f.ring.ambient(), b, 1);
            if !alpha.commutes_with_frobenius(&x).unwrap() {
                return fail("α does not commute with F");
            }
        }
        let k = zero_closure(&m).unwrap();
        if !is_f_stable(&alpha.kernel()).unwrap() || !is_f_stable(&sum(&k, &f.j2).unwrap()).unwrap() {
            return fail("kernel or image not F-stable");
        }
        if !alpha.maps_zero_closure_into_zero_closure().unwrap() {
            return fail("α(0^F) ⊄ 0^F");
        }
        // left side inside N = R/J', computed over the ring R/J'
        let r2 = f.ring.quotient_by(&f.j2).unwrap();
        let n_in_r2 = make_frob_module(&Ideal::zero(&r2)).unwrap();
        let l_in_r2 = Ideal::new(&r2, f.l2.gens().to_vec());
        let closed = submodule_closure(&n_in_r2, &l_in_r2).unwrap();
        let mut lifted = closed.gens().to_vec();
        lifted.extend(f.j2.gens().iter().cloned());
        let lhs = Ideal::new(&f.ring, lifted);
        let rhs = submodule_closure(&m, &f.l2).unwrap();
        if !lhs.equals(&rhs).unwrap() {
            return fail(&format!("α^-1((N'')^F) = {lhs} ≠ (α^-1 N'')^F = {rhs}"));
        }
    }
    Ok(format!(
        "{} projections: equivariance, F-stable kernel and image, α(0^F) ⊆ 0^F, preimage identity",
        fixtures.len()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut cases: u64 = 0;
    for d in 0..=6u32 {
        // Pascal row, built additively
        let mut row = vec![1u64];
        for _ in 0..d {
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        let len = d as usize + 1;
        let mut hsl = vec![0u64; len];
        loop {
            let weighted: u64 = row.iter().zip(&hsl).map(|(c, h)| c * h).sum();
            for e0 in 0..=10u64 {
                let got = bound_formula(d, e0, &hsl).map_err(|e| e.to_string())?;
                if got != e0 + weighted {
                    return Err(format!("d = {d}, e0 = {e0}, hsl = {hsl:?}: {got} ≠ {}", e0 + weighted));
                }
                cases += 1;
            }
            let mut i = 0;
            while i < len && hsl[i] == 10 {
                hsl[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            hsl[i] += 1;
        }
    }
    Ok(format!(
        "{cases} cases (d <= 6, e0 and every HSL value in 0..=10) match the binomial sum ({:.1?})",
        start.elapsed()
    ))
}

fn report(n: u32, title: &str, outcome: &Outcome, elapsed: Duration) -> bool {
    match outcome {
        Ok(msg) => println!("[PASS] criterion {n} ({title}): {msg} [{elapsed:.1?}]"),
        Err(msg) => println!("[FAIL] criterion {n} ({title}): {msg} [{elapsed:.1?}]"),
    }
    outcome.is_ok()
}

/// `ACCEPTANCE_ONLY=4,9` runs a subset. Criteria 3 and 5 then only see the
/// ideals collected by whichever of 1 and 2 ran.
fn selected() -> Vec<u32> {
    match std::env::var("ACCEPTANCE_ONLY") {
        Ok(s) => s.split(',').filter_map(|t| t.trim().parse().ok()).collect(),
        Err(_) => (1..=9).collect(),
    }
}

fn main() {
    let only = selected();
    let mut shared = Shared::default();
    let criteria: [Criterion; 9] = [
        (1, "regular-ring zero law", |s| criterion_1(s)),
        (2, "oracle equivalence", |s| criterion_2(s)),
        (3, "HSL of H^0 equals Fte", |s| criterion_3(s)),
        (4, "Fermat fixture values", |_| criterion_4()),
        (5, "chain and closure soundness", |s| criterion_5(s)),
        (6, "filter regular machinery", |_| criterion_6()),
        (7, "shift inequality", |_| criterion_7()),
        (8, "Frobenius-action properties", |_| criterion_8()),
        (9, "bound formula arithmetic", |_| criterion_9()),
    ];
    let (mut run, mut passed) = (0, 0);
    for (n, title, f) in criteria {
        if !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = f(&mut shared);
        run += 1;
        passed += report(n, title, &outcome, start.elapsed()) as usize;
    }
    println!("acceptance: {passed}/{run} criteria passed");
    if passed < run {
        std::process::exit(1);
    }
}
