use rand::Rng;
use sp4_core::algebra::coordinate::QuadraticForm;
use sp4_core::algebra::{
    adjoint, commutator, declared_bracket, from_matrix, group_conjugate_with_tol, matrix_adjoint,
    matrix_of, omega, parity_action, parity_action_with, pt_map, AlgebraElement, GeneratorId,
    ParityForm, PtVariant,
};
use sp4_core::hamiltonian::{hamiltonian_from_values, OscillatorValues};
use sp4_core::C64;

use super::{max_of, push_pairs, Context, Outcome};
use crate::config::AlgebraCheckParams;
use crate::error::Result;
use crate::output::{Diagnostic, Table};

const EXACT: f64 = 1e-12;

fn random_element(rng: &mut impl Rng, scale: f64) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for c in e.coeffs.iter_mut() {
        *c = C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    }
    e
}

fn random_hamiltonian(rng: &mut impl Rng) -> AlgebraElement {
    hamiltonian_from_values(&OscillatorValues {
        a: rng.gen_range(0.1..3.0),
        omega_x: rng.gen_range(0.1..3.0),
        omega_y: rng.gen_range(0.1..3.0),
        lambda: rng.gen_range(-2.0..2.0),
    })
}

pub fn run(p: &AlgebraCheckParams, ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let gens = GeneratorId::ALL;

    let mut table = Table::new(
        ["a", "b"].into_iter().map(String::from).chain(
            gens.iter()
                .flat_map(|g| [format!("re_{}", g.name()), format!("im_{}", g.name())]),
        ),
    );
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let proj = from_matrix(&matrix_of(a).commutator(&matrix_of(b)));
            let residual = proj
                .element
                .max_abs_diff(&declared_bracket(a, b))
                .max(proj.residual);
            out.check(
                format!("commutator[{},{}]", a.name(), b.name()),
                residual,
                EXACT,
            );
            let mut row = vec![a.index() as f64, b.index() as f64];
            push_pairs(&mut row, &proj.element.coeffs);
            table.push(row);
        }
    }
    out.emit(ctx, "commutators.csv", &table)?;

    let mut jacobi: f64 = 0.0;
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate().skip(i + 1) {
            for &c in &gens[j + 1..] {
                let (a, b, c) = (a.into(), b.into(), c.into());
                let sum = commutator(&a, &commutator(&b, &c))
                    + commutator(&b, &commutator(&c, &a))
                    + commutator(&c, &commutator(&a, &b));
                jacobi = jacobi.max(sum.max_abs());
            }
        }
    }
    out.check("jacobi", jacobi, EXACT);

    let om = omega();
    let symplectic = max_of(gens.iter().map(|&g| {
        let m = matrix_of(g);
        (om * m + m.transpose() * om).max_abs()
    }));
    out.check("symplectic", symplectic, 0.0);

    let coordinate = max_of(gens.iter().flat_map(|&a| {
        gens.iter().map(move |&b| {
            let q = QuadraticForm::generator(a).commutator(&QuadraticForm::generator(b));
            q.to_element().max_abs_diff(&declared_bracket(a, b))
        })
    }));
    out.check("coordinate_representation", coordinate, EXACT);

    let parity_forms = max_of(gens.iter().map(|&g| {
        let e = AlgebraElement::from(g);
        match (
            parity_action_with(&e, ParityForm::TwoJ3),
            parity_action_with(&e, ParityForm::ExpIPiJ3),
        ) {
            (Ok(x), Ok(y)) => x.max_abs_diff(&y),
            _ => f64::INFINITY,
        }
    }));
    out.check("parity_forms_agree", parity_forms, EXACT);

    let mut rng = ctx.rng();
    let (mut involution, mut pt_sym, mut parity, mut coeff_adj, mut conj): (
        f64,
        f64,
        f64,
        f64,
        f64,
    ) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..p.samples {
        let e = random_element(&mut rng, 2.0);
        for v in [PtVariant::Pt, PtVariant::PtTilde] {
            involution = involution.max(pt_map(&pt_map(&e, v), v).max_abs_diff(&e));
        }
        let h = random_hamiltonian(&mut rng);
        pt_sym = pt_sym.max(pt_map(&h, PtVariant::Pt).max_abs_diff(&h));
        let ph = parity_action(&h)?;
        parity = parity.max(ph.max_abs_diff(&matrix_adjoint(&h)));
        coeff_adj = coeff_adj.max(ph.max_abs_diff(&adjoint(&h)));
        let x = random_element(&mut rng, 0.5);
        let tol = ctx.tolerances.proj_tol;
        let back = group_conjugate_with_tol(&(-x), &group_conjugate_with_tol(&x, &e, tol)?, tol)?;
        conj = conj.max(back.max_abs_diff(&e) / e.max_abs().max(1.0));
    }
    out.check("pt_involution", involution, 0.0);
    out.check("hamiltonian_pt_symmetry", pt_sym, EXACT);
    out.check("parity_equals_matrix_adjoint", parity, EXACT);
    out.check("group_conjugate_inverse", conj, 1e-10);
    out.diag(Diagnostic::above(
        "parity_vs_coefficient_adjoint",
        coeff_adj,
        EXACT,
        "parity against plain coefficient conjugation; Q and K are anti-Hermitian in the 4x4 representation",
    ));
    Ok(out)
}
