use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sp4_core::algebra::coordinate::{QuadraticForm, PX, PY, X, Y};
use sp4_core::algebra::{group_conjugate, AlgebraElement, GeneratorId, GeneratorId::*};
use sp4_core::hamiltonian::ScalarProfile;
use sp4_core::numerics::{CMatrix, C64};
use sp4_core::point_transform::*;
use sp4_core::{Sp4Error, TimeGrid};

fn scenarios() -> Vec<PointTransformParams> {
    let mut out = Vec::new();
    for (al, be, lam) in [(2.0, 1.0, 0.5), (2.0, 1.0, 1.0), (3.0, 1.0, 0.8)] {
        for c in [0.0, 0.2, 0.4] {
            for r in [
                ScalarProfile::constant(1.0),
                ScalarProfile::sinusoid(1.0, 0.2, 1.0, 0.0),
            ] {
                out.push(PointTransformParams::new(al, be, lam, r, c, c));
            }
        }
    }
    out
}

fn grid() -> TimeGrid {
    TimeGrid::uniform(0.0, 4.0, 4001).unwrap()
}

#[test]
fn ermakov_pinney_residuals_vanish() {
    for p in scenarios() {
        for s in ep_states_on(&p, &grid()).unwrap() {
            let e = ep_residuals(&p, &s);
            assert!(e.sigma.abs() < 1e-8 && e.mu.abs() < 1e-8, "{e:?}");
        }
    }
}

#[test]
fn printed_ermakov_form_differs_when_scale_varies() {
    let p = PointTransformParams::new(2.0, 1.0, 0.5, ScalarProfile::constant(1.0), 0.4, 0.4);
    let s = ep_state(&p, 0.7).unwrap();
    let e = ep_residuals(&p, &s);
    assert!(e.sigma_printed.abs() > 1e-3);
}

#[test]
fn pushforward_matches_coordinate_substitution() {
    // Reference variables in terms of target ones: chi = mu y, upsilon = sigma x,
    // p_chi = py/mu + mu_t y/(alpha r), p_upsilon = px/sigma + sigma_t x/(beta r).
    for p in scenarios().into_iter().step_by(5) {
        for t in [0.0, 0.9, 2.3] {
            let s = ep_state(&p, t).unwrap();
            let map = pushforward_map(&p, &s).unwrap();
            let mut l = CMatrix::<4>::zeros();
            let re = |v: f64| C64::new(v, 0.0);
            // Primed phase space ordered (x', y', px', py') = (chi, upsilon, p_chi, p_upsilon).
            l[(0, Y)] = re(s.mu);
            l[(1, X)] = re(s.sigma);
            l[(2, Y)] = re(s.mu_t / (s.r * p.alpha));
            l[(2, PY)] = re(1.0 / s.mu);
            l[(3, X)] = re(s.sigma_t / (s.r * p.beta));
            l[(3, PX)] = re(1.0 / s.sigma);
            for g in GeneratorId::ALL {
                let oracle = QuadraticForm::generator(g).substitute(&l).to_element();
                let img = map.image(g);
                assert!(
                    img.max_abs_diff(&oracle) < 1e-12,
                    "{g} at t={t}: {img:?} vs {oracle:?}"
                );
            }
        }
    }
}

#[test]
fn pushforward_is_a_homomorphism() {
    let p = &scenarios()[7];
    let s = ep_state(p, 1.3).unwrap();
    let map = pushforward_map(p, &s).unwrap();
    for a in GeneratorId::ALL {
        for b in GeneratorId::ALL {
            let lhs = map.apply(&sp4_core::algebra::commutator(&a.into(), &b.into()));
            let rhs = sp4_core::algebra::commutator(&map.image(a), &map.image(b));
            assert!(lhs.max_abs_diff(&rhs) < 1e-11);
        }
    }
}

#[test]
fn gamma_h0_is_an_invariant_of_the_target() {
    for p in scenarios() {
        let res = invariant_lr_residual(&p, &grid(), 1.0, |s| invariant_ih_at(&p, s)).unwrap();
        assert!(res < 1e-8, "{p:?}: {res}");
    }
}

#[test]
fn target_hamiltonian_is_shifted_pushforward_of_h0() {
    for p in scenarios().into_iter().step_by(3) {
        let s = ep_state(&p, 1.1).unwrap();
        let map = pushforward_map(&p, &s).unwrap();
        let h = map.transform_hamiltonian(&reference_h0(&p));
        assert!(h.max_abs_diff(&target_hamiltonian_at(&p, &s)) < 1e-12);
    }
}

#[test]
fn printed_closed_invariant_deviates() {
    let p = PointTransformParams::new(2.0, 1.0, 0.5, ScalarProfile::constant(1.0), 0.2, 0.2);
    let s = ep_state(&p, 0.5).unwrap();
    let dev = printed_invariant_ih_at(&p, &s).max_abs_diff(&invariant_ih_at(&p, &s).unwrap());
    assert!(dev > 1e-3);
}

#[test]
fn hermitian_invariant_has_real_coefficients_and_matches_closed_form() {
    for p in scenarios() {
        let k = dyson_params(&p).unwrap();
        for s in ep_states_on(&p, &TimeGrid::uniform(0.0, 4.0, 41).unwrap()).unwrap() {
            let ih = hermitian_invariant_ih_at(&p, &k, &s).unwrap();
            assert!(ih.max_imag() < 1e-8, "{}", ih.max_imag());
            let closed = printed_hermitian_invariant(&p, &s);
            assert!(
                ih.max_abs_diff(&closed) < 1e-8,
                "{}",
                ih.max_abs_diff(&closed)
            );
        }
    }
}

#[test]
fn tdde_holds_and_converges_at_fourth_order() {
    for p in scenarios() {
        let rep = tdde_residual(&p, &grid(), 1.0).unwrap();
        assert!(
            rep.residual < 1e-6 && rep.max_imag < 1e-6 && rep.projection_leak < 1e-6,
            "{rep:?}"
        );
    }
    let p = PointTransformParams::new(
        2.0,
        1.0,
        0.5,
        ScalarProfile::sinusoid(1.0, 0.2, 1.0, 0.0),
        0.4,
        0.4,
    );
    let res: Vec<f64> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|h| {
            tdde_residual(&p, &TimeGrid::with_step(0.0, 4.0, *h).unwrap(), 1.0)
                .unwrap()
                .residual
        })
        .collect();
    for w in res.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((3.5..4.5).contains(&order), "{res:?}");
    }
}

#[test]
fn pde_constraints_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in scenarios() {
        for _ in 0..20 {
            let t = rng.gen_range(0.0..4.0);
            let xy = [(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))];
            let r = pde_constraint_residuals(&p, t, &xy, 1.0).unwrap();
            assert!(r.b0x < 1e-8 && r.b0y < 1e-8 && r.v0 < 1e-8, "{r:?}");
        }
    }
}

#[test]
fn metric_is_positive_definite() {
    for p in scenarios() {
        let k = dyson_params(&p).unwrap();
        for s in ep_states_on(&p, &TimeGrid::uniform(0.0, 4.0, 81).unwrap()).unwrap() {
            assert!(metric_min_eigenvalue(&metric_at(&p, &k, &s)).unwrap() > 0.0);
        }
    }
}

#[test]
fn static_dyson_constraints_and_h0() {
    for (al, be, lam) in [
        (2.0, 1.0, 0.5),
        (2.0, 1.0, 1.0),
        (3.0, 1.0, 0.8),
        (1.0, 2.0, 0.3),
        (1.0, 1.5, 0.5),
    ] {
        let p = PointTransformParams::new(al, be, lam, ScalarProfile::constant(1.0), 0.0, 0.0);
        let d = dyson_static(&p).unwrap();
        assert!(
            d.constraint_residuals.iter().all(|r| *r < 1e-10),
            "{:?}",
            d.constraint_residuals
        );
        assert!(
            d.h0_mismatch < 1e-10,
            "({al},{be},{lam}): {}",
            d.h0_mismatch
        );
    }
}

#[test]
fn static_dyson_degenerates_without_coupling() {
    let p = PointTransformParams::new(2.0, 1.0, 0.0, ScalarProfile::constant(1.0), 0.0, 0.0);
    let d = dyson_static(&p).unwrap();
    assert_eq!(d.params.kappa1, 0.0);
    assert_eq!(d.params.kappa2, 0.0);
    assert_eq!(d.h0, reference_h0(&p));
    assert_eq!(d.eta, CMatrix::identity());
}

#[test]
fn strong_coupling_leaves_arctanh_domain() {
    let p = PointTransformParams::new(1.0, 1.5, 2.0, ScalarProfile::constant(1.0), 0.0, 0.0);
    assert!(matches!(
        dyson_params(&p),
        Err(Sp4Error::ArctanhDomain { .. })
    ));
}

#[test]
fn equal_frequencies_are_rejected() {
    let p = PointTransformParams::new(1.0, 1.0, 0.5, ScalarProfile::constant(1.0), 0.0, 0.0);
    assert!(matches!(
        dyson_params(&p),
        Err(Sp4Error::EqualFrequencies { .. })
    ));
}

#[test]
fn conjugating_target_invariant_by_eta_removes_imaginary_parts() {
    let p = PointTransformParams::new(2.0, 1.0, 1.0, ScalarProfile::constant(1.0), 0.2, 0.2);
    let k = dyson_params(&p).unwrap();
    let s = ep_state(&p, 2.0).unwrap();
    let ih = invariant_ih_at(&p, &s).unwrap();
    let via = group_conjugate(&dyson_time_exponent(&p, &k, &s), &ih).unwrap();
    assert!(via.max_imag() < 1e-10);
    let _ = AlgebraElement::from(J0);
}

fn trivial(al: f64, be: f64, lam: f64) -> PointTransformParams {
    PointTransformParams::new(al, be, lam, ScalarProfile::constant(1.0), 0.0, 0.0)
}

#[test]
fn trivial_scale_factors_swap_roles() {
    let p = trivial(2.0, 1.0, 1.0);
    let s = ep_state(&p, 0.0).unwrap();
    assert_eq!((s.sigma, s.mu, s.sigma_t, s.mu_t), (1.0, 1.0, 0.0, 0.0));
    let map = pushforward_map(&p, &s).unwrap();
    assert!(map.image(J0).max_abs_diff(&J0.into()) < 1e-15);
    assert!(map.image(Q1).max_abs_diff(&(-AlgebraElement::from(Q1))) < 1e-15);
    assert!(map.image(K2).max_abs_diff(&K2.into()) < 1e-15);
    for g in GeneratorId::ALL {
        let img = map.image(g);
        let nonzero: Vec<_> = img.coeffs.iter().filter(|z| z.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 1, "{g}");
        assert!((nonzero[0].norm() - 1.0).abs() < 1e-15);
    }
    let ih = invariant_ih_at(&p, &s).unwrap();
    let expect = AlgebraElement::from_real_terms(&[(J0, 1.0 + 2.0), (J3, 1.0 - 2.0)])
        + AlgebraElement::from_terms(&[(J1, C64::new(0.0, 1.0)), (K3, C64::new(0.0, 1.0))]);
    assert!(ih.max_abs_diff(&expect) < 1e-15);
}

#[test]
fn printed_invariant_spurious_term_at_trivial_parameters() {
    let p = trivial(2.0, 1.0, 1.0);
    let s = ep_state(&p, 0.0).unwrap();
    let dev = printed_invariant_ih_at(&p, &s) - invariant_ih_at(&p, &s).unwrap();
    let expect = AlgebraElement::from_real_terms(&[(J1, 0.5), (K1, -0.5)]);
    assert!(dev.max_abs_diff(&expect) < 1e-15, "{dev:?}");
}

#[test]
fn reference_hamiltonian_examples() {
    assert_eq!(
        reference_h0(&trivial(2.0, 1.0, 0.0)),
        AlgebraElement::from_real_terms(&[(J0, 3.0), (J3, 1.0)])
    );
    assert_eq!(
        reference_h0(&trivial(1.5, 1.5, 0.0)),
        AlgebraElement::from_real_terms(&[(J0, 3.0)])
    );
    let h = reference_h0(&trivial(2.0, 1.0, 0.4));
    assert!(h.max_imag() > 0.0);
}

#[test]
fn pde_trivial_parameters_and_phase_invariance() {
    let p = trivial(2.0, 1.0, 1.0);
    let xy = [(0.3, -1.2), (1.5, 0.7)];
    let r = pde_constraint_residuals(&p, 0.0, &xy, 1.0).unwrap();
    assert_eq!((r.b0x, r.b0y), (0.0, 0.0));
    assert!(r.v0 < 1e-15);
    let mut q = PointTransformParams::new(2.0, 1.0, 1.0, ScalarProfile::constant(1.0), 0.3, 0.3);
    let before = pde_constraint_residuals(&q, 1.7, &xy, 0.7).unwrap();
    q.c1_phase = 2.5;
    assert_eq!(pde_constraint_residuals(&q, 1.7, &xy, 0.7).unwrap(), before);
    assert!(before.b0x < 1e-12 && before.b0y < 1e-12 && before.v0 < 1e-12);
}

#[test]
fn pushforward_of_h0_is_the_hermitian_invariant() {
    for p in scenarios().into_iter().step_by(2) {
        let d = dyson_static(&p).unwrap();
        let k = d.params;
        for t in [0.0, 1.4, 3.9] {
            let s = ep_state(&p, t).unwrap();
            let map = pushforward_map(&p, &s).unwrap();
            let ih = hermitian_invariant_ih_at(&p, &k, &s).unwrap();
            assert!(map.apply(&d.h0).max_abs_diff(&ih) < 1e-8);
            // Second route to h(t): the shifted pushforward of h0.
            let h = map.transform_hamiltonian(&d.h0);
            assert!(h.max_abs_diff(&hermitian_hamiltonian_h_at(&p, &s)) < 1e-10);
        }
    }
}

#[test]
fn hermitian_hamiltonian_without_coupling() {
    let p = trivial(2.0, 1.0, 0.0);
    let h = hermitian_hamiltonian_h(&p, 0.4).unwrap();
    assert!(h.max_abs_diff(&AlgebraElement::from_real_terms(&[(J0, 3.0), (J3, -1.0)])) < 1e-15);
    assert_eq!(dyson_time(&p, 1.0).unwrap(), CMatrix::identity());
    let rep = tdde_residual(&p, &TimeGrid::uniform(0.0, 1.0, 11).unwrap(), 1.0).unwrap();
    assert!(rep.residual < 1e-10);
}
