use jacobi_weyl::relations::{
    bracket_closed_form, build_d_operators, center_check_d4, verify_polynomial_relations,
    verify_relations, verify_relations_for, PolyCheck, RelationCheck,
};
use jacobi_weyl::{RationalPoly, WeylOperator};

use crate::report::Entry;

/// Residual of an exact identity: the number of surviving terms.
fn terms(op: &WeylOperator) -> f64 {
    op.terms().len() as f64
}

fn poly_terms(p: &RationalPoly) -> f64 {
    p.terms().len() as f64
}

fn relation(c: &RelationCheck) -> Entry {
    Entry::check(
        if c.label.len() == 1 {
            format!("({})", c.label)
        } else {
            c.label.clone()
        },
        c.statement.clone(),
        0.0,
        Ok(vec![terms(&c.residual)]),
    )
    .with_detail(format!("residual: {}", c.residual))
}

fn poly(c: &PolyCheck, m: usize) -> Entry {
    Entry::check(
        format!("m={m} {}", c.label),
        c.statement.clone(),
        0.0,
        Ok(vec![poly_terms(&c.residual)]),
    )
    .with_detail(format!("residual: {}", c.residual))
}

pub(super) fn run() -> Vec<Entry> {
    let mut out: Vec<Entry> = verify_relations().iter().map(relation).collect();
    out.push(relation(&bracket_closed_form()));

    let center = center_check_d4();
    out.extend(center.d4_commutators.iter().map(relation));
    out.push(
        Entry::control(
            "4D1+4D2 not central",
            "[4D1+4D2, D3] != 0",
            0.0,
            Ok(vec![terms(&center.laplacian_witness)]),
        )
        .with_detail(format!("[4D1+4D2, D3] = {}", center.laplacian_witness)),
    );

    // a perturbed D3 must break (a)
    let mut d = build_d_operators();
    d[2] = d[2].add(&WeylOperator::identity(d[2].vars()));
    let broken = &verify_relations_for(&d)[0];
    out.push(
        Entry::control(
            "(a) with D3+1",
            "[D1,D2] = 2 (D3 + 1) fails",
            0.0,
            Ok(vec![terms(&broken.residual)]),
        )
        .with_detail(format!("residual: {}", broken.residual)),
    );

    for m in 1..=3 {
        out.extend(verify_polynomial_relations(m).iter().map(|c| poly(c, m)));
    }
    out
}
