#![allow(dead_code)]

use frobkit::{Ideal, MonomialOrder, Ring, RingSpec};

pub fn ring(p: u64, vars: &[&str], quotient: &[&str]) -> Ring {
    RingSpec::parse(p, vars, MonomialOrder::Grevlex, quotient).unwrap()
}

pub fn fermat(p: u64) -> Ring {
    ring(p, &["x", "y", "z"], &["x^3+y^3+z^3"])
}

pub fn ideal(r: &Ring, s: &str) -> Ideal {
    Ideal::parse(r, s).unwrap()
}

/// A named m-primary ideal with a finite quotient of at most 2^14 elements.
pub struct Fixture {
    pub name: String,
    pub ring: Ring,
    pub ideal: Ideal,
}

fn fx(name: &str, r: &Ring, gens: &str) -> Fixture {
    Fixture {
        name: format!("{name}: ({gens})"),
        ring: r.clone(),
        ideal: ideal(r, gens),
    }
}

pub fn oracle_fixtures() -> Vec<Fixture> {
    let f2 = fermat(2);
    let f3 = fermat(3);
    let f5 = fermat(5);
    let f7 = fermat(7);
    let cusp2 = ring(2, &["x", "y"], &["y^2+x^3"]);
    let cusp3 = ring(3, &["x", "y"], &["y^2-x^3"]);
    let node2 = ring(2, &["x", "y"], &["x*y"]);
    let double_line3 = ring(3, &["x", "y"], &["x^2"]);
    let plane_line2 = ring(2, &["x", "y", "z"], &["x*y", "x*z"]);
    let a1_2 = ring(2, &["x", "y", "z"], &["x^2+y*z"]);
    let reg2 = ring(2, &["x", "y"], &[]);
    let reg3 = ring(3, &["x", "y", "z"], &[]);
    let art2 = ring(2, &["x"], &["x^4"]);
    let art3 = ring(3, &["x", "y"], &["x^2", "y^2"]);
    vec![
        fx("fermat F_2", &f2, "x, y"),
        fx("fermat F_2", &f2, "x, z"),
        fx("fermat F_2", &f2, "y, z"),
        fx("fermat F_2", &f2, "x^2, y"),
        fx("fermat F_2", &f2, "x, y^2"),
        fx("fermat F_2", &f2, "x^2, y^2"),
        fx("fermat F_2", &f2, "x^2 + x*z + z^2, x*y + z^2"),
        fx("fermat F_3", &f3, "x, y"),
        fx("fermat F_3", &f3, "y, z"),
        fx("fermat F_3", &f3, "x^2, y"),
        fx("fermat F_5", &f5, "x, y"),
        fx("fermat F_7", &f7, "x, y"),
        fx("cusp F_2", &cusp2, "x"),
        fx("cusp F_2", &cusp2, "y"),
        fx("cusp F_2", &cusp2, "x^2"),
        fx("cusp F_3", &cusp3, "x"),
        fx("cusp F_3", &cusp3, "y"),
        fx("node F_2", &node2, "x + y"),
        fx("node F_2", &node2, "x^2 + y"),
        fx("double line F_3", &double_line3, "y"),
        fx("double line F_3", &double_line3, "y^2"),
        fx("double line F_3", &double_line3, "x + y"),
        fx("plane and line F_2", &plane_line2, "x + y, z"),
        fx("plane and line F_2", &plane_line2, "x + y, x + z"),
        fx("A1 F_2", &a1_2, "y, z"),
        fx("regular F_2", &reg2, "x^2, y^2"),
        fx("regular F_2", &reg2, "x^2 + y, y^3"),
        fx("regular F_3", &reg3, "x, y, z^2"),
        fx("artinian F_2", &art2, "0"),
        fx("artinian F_3", &art3, "0"),
    ]
}

/// `(ring, J, J', L')` with `J ⊆ J' ⊆ L'` m-primary, and a unit scalar.
pub struct ProjectionFixture {
    pub name: &'static str,
    pub ring: Ring,
    pub j: Ideal,
    pub j2: Ideal,
    pub l2: Ideal,
    pub scalar: u32,
}

pub fn projection_fixtures() -> Vec<ProjectionFixture> {
    let mk = |name, r: Ring, j: &str, j2: &str, l2: &str, scalar| ProjectionFixture {
        name,
        j: ideal(&r, j),
        j2: ideal(&r, j2),
        l2: ideal(&r, l2),
        ring: r,
        scalar,
    };
    vec![
        mk("F_2[x]/(x^8)", ring(2, &["x"], &["x^8"]), "x^5", "x^3", "x^2", 1),
        mk("F_3[x]/(x^9)", ring(3, &["x"], &["x^9"]), "x^7", "x^4", "x^3", 2),
        mk("fermat F_2", fermat(2), "x^2, y^2", "x, y", "x, y, z^2", 1),
        mk("fermat F_2", fermat(2), "x^2, y", "x, y", "x, y, z", 1),
        mk("node F_2", ring(2, &["x", "y"], &["x*y"]), "x^2 + y^2", "x + y", "x, y", 1),
        mk("double line F_3", ring(3, &["x", "y"], &["x^2"]), "y^3", "y^2", "x, y", 2),
        mk("regular F_3", ring(3, &["x", "y", "z"], &[]), "x^2, y^2, z^2", "x, y^2, z^2", "x, y, z^2", 1),
        mk("regular F_5", ring(5, &["x", "y"], &[]), "x^3, y^3", "x^2, y^2", "x^2, y", 3),
        mk("cusp F_3", ring(3, &["x", "y"], &["y^2-x^3"]), "x^2", "x", "x, y", 2),
        mk(
            "plane and line F_2",
            ring(2, &["x", "y", "z"], &["x*y", "x*z"]),
            "x^2 + y^2, z^2",
            "x + y, z",
            "x, y, z",
            1,
        ),
    ]
}
