use num_rational::BigRational;
use rayon::prelude::*;

use crate::op::WeylOperator;
use crate::poly::{rat, RationalPoly, Vars};

fn p(vars: &Vars, name: &str) -> RationalPoly {
    RationalPoly::named(vars, name)
}

fn mult(q: &RationalPoly) -> WeylOperator {
    WeylOperator::from_poly(q)
}

/// `∂^α` from a list of variable names, repeats allowed.
fn ds(vars: &Vars, names: &[&str]) -> WeylOperator {
    names.iter().fold(WeylOperator::identity(vars), |acc, n| {
        acc.mul(&WeylOperator::d(vars, n))
    })
}

fn int(k: i64) -> BigRational {
    rat(k, 1)
}

/// The generators `D₁, D₂, D₃, D₄` of the invariant operators on `ℍ_{1,1}`,
/// in the real coordinates `ω = x + iy`, `z = u + iv`. `D₃` and `D₄` keep
/// their lower-order parts, composed in the Weyl algebra.
pub fn build_d_operators() -> [WeylOperator; 4] {
    let v = Vars::xyuv();
    let (y, vv) = (p(&v, "y"), p(&v, "v"));
    let y2 = mult(&y.pow(2));
    let lap_uv = ds(&v, &["u", "u"]).add(&ds(&v, &["v", "v"]));
    let d1 = y2
        .mul(&ds(&v, &["x", "x"]).add(&ds(&v, &["y", "y"])))
        .add(&mult(&vv.pow(2)).mul(&lap_uv))
        .add(&mult(&y.mul(&vv).scale(&int(2))).mul(&ds(&v, &["x", "u"]).add(&ds(&v, &["y", "v"]))));
    let d2 = mult(&y).mul(&lap_uv);
    let wave_uv = ds(&v, &["u", "u"]).sub(&ds(&v, &["v", "v"]));
    let v_dv_1 = mult(&vv)
        .mul(&WeylOperator::d(&v, "v"))
        .add(&WeylOperator::identity(&v));
    let d3 = y2
        .mul(&WeylOperator::d(&v, "y"))
        .mul(&wave_uv)
        .sub(&y2.mul(&ds(&v, &["x", "u", "v"])).scale(&int(2)))
        .sub(&v_dv_1.mul(&d2));
    let d4 = y2
        .mul(&WeylOperator::d(&v, "x"))
        .mul(&wave_uv.neg())
        .sub(&y2.mul(&ds(&v, &["y", "u", "v"])).scale(&int(2)))
        .sub(&mult(&vv).mul(&WeylOperator::d(&v, "u")).mul(&d2));
    [d1, d2, d3, d4]
}

/// An operator identity `lhs = rhs` checked as `lhs - rhs == 0`.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub label: String,
    pub statement: String,
    pub residual: WeylOperator,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

type RelationFn = fn(&[WeylOperator; 4]) -> WeylOperator;

/// The seven relations among `D₁, ..., D₄`, each as `lhs - rhs`.
const RELATIONS: [(&str, &str, RelationFn); 7] = [
    ("a", "[D1,D2] = 2 D3", |d| {
        comm(&d[0], &d[1]).sub(&d[2].scale(&int(2)))
    }),
    ("b", "[D1,D3] = 2 D1 D2 - 2 D3", |d| {
        comm(&d[0], &d[2])
            .sub(&d[0].mul(&d[1]).scale(&int(2)))
            .add(&d[2].scale(&int(2)))
    }),
    ("c", "[D2,D3] = -D2^2", |d| {
        comm(&d[1], &d[2]).add(&d[1].pow(2))
    }),
    ("d", "[D4,D1] = 0", |d| comm(&d[3], &d[0])),
    ("e", "[D4,D2] = 0", |d| comm(&d[3], &d[1])),
    ("f", "[D4,D3] = 0", |d| comm(&d[3], &d[2])),
    ("g", "D3^2 + D4^2 = D2 D1 D2", |d| {
        d[2].pow(2)
            .add(&d[3].pow(2))
            .sub(&d[1].mul(&d[0]).mul(&d[1]))
    }),
];

fn comm(a: &WeylOperator, b: &WeylOperator) -> WeylOperator {
    a.commutator(b).expect("same ring")
}

/// Checks the seven relations for the given generators, in parallel.
pub fn verify_relations_for(d: &[WeylOperator; 4]) -> Vec<RelationCheck> {
    RELATIONS
        .par_iter()
        .map(|(label, statement, f)| RelationCheck {
            label: label.to_string(),
            statement: statement.to_string(),
            residual: f(d),
        })
        .collect()
}

/// The seven relations for the generators of [`build_d_operators`].
pub fn verify_relations() -> Vec<RelationCheck> {
    verify_relations_for(&build_d_operators())
}

/// The closed form of `[D₁, D₂]` written out in the coordinates.
pub fn bracket_closed_form() -> RelationCheck {
    let v = Vars::xyuv();
    let [d1, d2, ..] = build_d_operators();
    let y2 = mult(&p(&v, "y").pow(2));
    let rhs = y2
        .mul(&WeylOperator::d(&v, "y"))
        .mul(&ds(&v, &["u", "u"]).sub(&ds(&v, &["v", "v"])))
        .scale(&int(2))
        .sub(&y2.mul(&ds(&v, &["x", "u", "v"])).scale(&int(4)))
        .sub(
            &mult(&p(&v, "v"))
                .mul(&WeylOperator::d(&v, "v"))
                .mul(&d2)
                .add(&d2)
                .scale(&int(2)),
        );
    RelationCheck {
        label: "bracket".into(),
        statement: "[D1,D2] = 2y^2 ∂y(∂u^2 - ∂v^2) - 4y^2 ∂x∂u∂v - 2(v ∂v D2 + D2)".into(),
        residual: comm(&d1, &d2).sub(&rhs),
    }
}

/// Commutators of `D₄` with every generator, plus the commutator of the
/// Laplacian-type combination `4D₁ + 4D₂` with `D₃`.
#[derive(Clone, Debug)]
pub struct CenterReport {
    pub d4_commutators: Vec<RelationCheck>,
    /// Nonzero: the combination is not central.
    pub laplacian_witness: WeylOperator,
}

pub fn center_check_d4() -> CenterReport {
    let d = build_d_operators();
    let d4_commutators = (0..4)
        .map(|i| RelationCheck {
            label: format!("[D4,D{}]", i + 1),
            statement: format!("[D4,D{}] = 0", i + 1),
            residual: comm(&d[3], &d[i]),
        })
        .collect();
    let lap = d[0].add(&d[1]).scale(&int(4));
    CenterReport {
        d4_commutators,
        laplacian_witness: comm(&lap, &d[2]),
    }
}

/// A polynomial identity `lhs = rhs` checked as `lhs - rhs == 0`.
#[derive(Clone, Debug)]
pub struct PolyCheck {
    pub label: String,
    pub statement: String,
    pub residual: RationalPoly,
}

impl PolyCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `q, ξ, φ, ψ` on `ℍ_{1,1}`: `q = ¼|ω|²`, `ξ = |z|²`, `φ + iψ = ½ z²ω̄`.
pub fn generators_11() -> [RationalPoly; 4] {
    let v = Vars::xyuv();
    let (x, y, u, vv) = (p(&v, "x"), p(&v, "y"), p(&v, "u"), p(&v, "v"));
    let half = rat(1, 2);
    let q = x.pow(2).add(&y.pow(2)).scale(&rat(1, 4));
    let xi = u.pow(2).add(&vv.pow(2));
    let u2v2 = u.pow(2).sub(&vv.pow(2));
    let uv = u.mul(&vv);
    let phi = u2v2.mul(&x).scale(&half).add(&uv.mul(&y));
    let psi = u2v2.neg().mul(&y).scale(&half).add(&uv.mul(&x));
    [q, xi, phi, psi]
}

/// `φ² + ψ² - qξ²`.
pub fn relation_11() -> PolyCheck {
    let [q, xi, phi, psi] = generators_11();
    PolyCheck {
        label: "phi^2+psi^2".into(),
        statement: "phi^2 + psi^2 = q xi^2".into(),
        residual: phi.pow(2).add(&psi.pow(2)).sub(&q.mul(&xi.pow(2))),
    }
}

/// `q, α_kp, β_lq, f_kp, g_kp` on `ℍ_{1,m}` in `x, y, u_k, v_k`, one-based
/// indices. Entry `(k, p)` of the returned maps has `k <= p` (`k < p` for `β`).
pub struct Generators1m {
    pub vars: Vars,
    pub q: RationalPoly,
    pub alpha: Vec<((usize, usize), RationalPoly)>,
    pub beta: Vec<((usize, usize), RationalPoly)>,
    pub f: Vec<((usize, usize), RationalPoly)>,
    pub g: Vec<((usize, usize), RationalPoly)>,
}

pub fn generators_1m(m: usize) -> Generators1m {
    let vars = Vars::xy_uv(m);
    let (x, y) = (p(&vars, "x"), p(&vars, "y"));
    let u = |k: usize| p(&vars, &format!("u{k}"));
    let v = |k: usize| p(&vars, &format!("v{k}"));
    let mut out = Generators1m {
        q: x.pow(2).add(&y.pow(2)),
        alpha: vec![],
        beta: vec![],
        f: vec![],
        g: vec![],
        vars: vars.clone(),
    };
    for k in 1..=m {
        for l in k..=m {
            let re = u(k).mul(&u(l)).sub(&v(k).mul(&v(l)));
            let im = u(k).mul(&v(l)).add(&v(k).mul(&u(l)));
            out.alpha
                .push(((k, l), u(k).mul(&u(l)).add(&v(k).mul(&v(l)))));
            if k < l {
                out.beta
                    .push(((k, l), u(l).mul(&v(k)).sub(&u(k).mul(&v(l)))));
            }
            out.f.push(((k, l), x.mul(&re).add(&y.mul(&im))));
            out.g.push(((k, l), x.mul(&im).sub(&y.mul(&re))));
        }
    }
    out
}

/// `f_kp² + g_kp² - q α_kk α_pp` for all `k <= p`.
pub fn relations_1m(m: usize) -> Vec<PolyCheck> {
    let gens = generators_1m(m);
    let alpha = |k: usize| {
        gens.alpha
            .iter()
            .find(|(i, _)| *i == (k, k))
            .map(|(_, a)| a.clone())
            .expect("diagonal alpha")
    };
    gens.f
        .iter()
        .zip(&gens.g)
        .map(|(((k, l), f), (_, g))| PolyCheck {
            label: format!("f_{k}{l}^2+g_{k}{l}^2"),
            statement: format!("f_{k}{l}^2 + g_{k}{l}^2 = q alpha_{k}{k} alpha_{l}{l}"),
            residual: f
                .pow(2)
                .add(&g.pow(2))
                .sub(&gens.q.mul(&alpha(*k)).mul(&alpha(*l))),
        })
        .collect()
}

/// [`relation_11`] when `m = 1`, followed by [`relations_1m`].
pub fn verify_polynomial_relations(m: usize) -> Vec<PolyCheck> {
    let mut out = Vec::new();
    if m == 1 {
        out.push(relation_11());
    }
    out.extend(relations_1m(m));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn d2_term_map() {
        let [_, d2, ..] = build_d_operators();
        let v = Vars::xyuv();
        let y = p(&v, "y");
        let terms: Vec<_> = d2.terms().iter().collect();
        assert_eq!(terms.len(), 2);
        assert_eq!(d2.terms()[&Monomial(vec![0, 0, 2, 0])], y);
        assert_eq!(d2.terms()[&Monomial(vec![0, 0, 0, 2])], y);
    }

    #[test]
    fn d1_has_six_terms() {
        let [d1, ..] = build_d_operators();
        assert_eq!(d1.terms().len(), 6);
        let v = Vars::xyuv();
        let yv2 = p(&v, "y").mul(&p(&v, "v")).scale(&int(2));
        assert_eq!(d1.terms()[&Monomial(vec![1, 0, 1, 0])], yv2);
    }

    #[test]
    fn commuting_relations_hold() {
        let checks = verify_relations();
        for c in &checks {
            if ["a", "d", "e", "f"].contains(&c.label.as_str()) {
                assert!(c.holds(), "{}: {}", c.statement, c.residual);
            }
        }
    }

    #[test]
    fn bracket_closed_form_holds() {
        let c = bracket_closed_form();
        assert!(c.holds(), "{}", c.residual);
    }

    #[test]
    fn perturbed_d3_breaks_relation_a() {
        let mut d = build_d_operators();
        d[2] = d[2].add(&WeylOperator::identity(&Vars::xyuv()));
        let a = &verify_relations_for(&d)[0];
        let expected = WeylOperator::identity(&Vars::xyuv()).scale(&int(-2));
        assert_eq!(a.residual, expected);
    }

    #[test]
    fn polynomial_relations_hold() {
        for m in 1..=3 {
            for c in verify_polynomial_relations(m) {
                assert!(c.holds(), "{}: {}", c.statement, c.residual);
            }
        }
        assert_eq!(verify_polynomial_relations(2).len(), 3);
    }

    #[test]
    fn negative_control_polynomial() {
        let r = relation_11();
        let shifted = r.residual.add(&RationalPoly::one(r.residual.vars()));
        assert_eq!(shifted, RationalPoly::one(r.residual.vars()));
    }

    #[test]
    fn d4_is_central_and_laplacian_is_not() {
        let report = center_check_d4();
        for c in &report.d4_commutators {
            assert!(c.holds(), "{}", c.residual);
        }
        assert!(!report.laplacian_witness.is_zero());
    }
}
