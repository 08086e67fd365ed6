use proptest::prelude::*;
use sp4_core::hamiltonian::ScalarProfile;
use sp4_core::numerics::eig::{characteristic_residual, eig4};
use sp4_core::numerics::*;
use sp4_core::{Sp4Error, Tolerances};

fn matrix4(scale: f64) -> impl Strategy<Value = Matrix4> {
    prop::array::uniform16((-1.0f64..1.0, -1.0f64..1.0)).prop_map(move |v| {
        Matrix4::from_fn(|i, j| C64::new(v[4 * i + j].0, v[4 * i + j].1) * scale)
    })
}

#[test]
fn expm_of_diagonal_and_nilpotent() {
    let d = Matrix4::diag(&[
        C64::new(1.0, 0.0),
        C64::new(-2.0, 0.0),
        C64::new(0.0, 3.0),
        C64::new(0.5, 0.5),
    ]);
    let e = expm(&d);
    for k in 0..4 {
        assert!((e[(k, k)] - d[(k, k)].exp()).norm() < 1e-13);
    }
    let mut n = Matrix4::zeros();
    n[(0, 1)] = C64::new(2.0, 0.0);
    let e = expm(&n);
    assert_eq!(e[(0, 1)], C64::new(2.0, 0.0));
    assert_eq!(e[(0, 0)], C64::new(1.0, 0.0));
}

#[test]
fn expm_apply_matches_expm() {
    let m = Matrix4::from_fn(|i, j| C64::new((i as f64 - j as f64) * 0.7, 0.1 * (i + j) as f64));
    let v = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-0.5, 0.0),
        C64::new(0.2, 0.3),
    ];
    let a = expm(&m).mul_vec(&v);
    let b = expm_apply(&m, &v);
    for k in 0..4 {
        assert!((a[k] - b[k]).norm() < 1e-12);
    }
}

#[test]
fn eig4_of_triangular_matrix() {
    let m = Matrix4::from_fn(|i, j| {
        if j >= i {
            C64::new((i + 1) as f64 + j as f64 * 0.1, 0.0)
        } else {
            ZERO
        }
    });
    let mut e = eig4(&m).unwrap();
    sort_eigenvalues(&mut e);
    for (k, z) in e.iter().enumerate() {
        assert!((z - C64::new((k + 1) as f64 + k as f64 * 0.1, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn quadrature_examples() {
    let grid: Vec<f64> = (0..=20)
        .map(|k| k as f64 * std::f64::consts::FRAC_PI_2 / 20.0)
        .collect();
    let acc = cumulative_integral(f64::cos, &grid, 1e-12).unwrap();
    for (t, v) in grid.iter().zip(&acc.values) {
        assert!((v - t.sin()).abs() < 1e-10);
    }
    let ones = cumulative_integral(|_| 1.0, &grid, 1e-12).unwrap();
    assert!(grid
        .iter()
        .zip(&ones.values)
        .all(|(t, v)| (t - v).abs() < 1e-14));
    assert!(matches!(
        cumulative_integral(f64::cos, &[0.0], 1e-10),
        Err(Sp4Error::GridTooCoarse { .. })
    ));
}

#[test]
fn fixed_simpson_is_fourth_order() {
    let err = |n: usize| {
        let g: Vec<f64> = (0..=n).map(|k| 3.0 * k as f64 / n as f64).collect();
        let v = cumulative_simpson_fixed(|t| (2.0 * t).exp() * t.sin(), &g).unwrap();
        let exact = |t: f64| ((2.0 * t).exp() * (2.0 * t.sin() - t.cos()) + 1.0) / 5.0;
        g.iter()
            .zip(&v)
            .map(|(t, x)| (x - exact(*t)).abs())
            .fold(0.0, f64::max)
    };
    let ratio = err(20) / err(40);
    assert!((13.0..19.0).contains(&ratio), "{ratio}");
}

#[test]
fn profiles_integrate_and_differentiate() {
    let s = ScalarProfile::sinusoid(1.0, 0.2, 1.5, 0.3);
    let exact = |t: f64| t - 0.2 / 1.5 * ((1.5 * t + 0.3).cos() - 0.3f64.cos());
    let grid: Vec<f64> = (0..=100).map(|k| k as f64 * 0.05).collect();
    for (t, v) in grid.iter().zip(s.antiderivative_on(&grid).unwrap()) {
        assert!((v - exact(*t)).abs() < 1e-10);
    }
    let h = 1e-5;
    let fd = (s.eval(1.0 + h).unwrap() - s.eval(1.0 - h).unwrap()) / (2.0 * h);
    assert!((fd - s.derivative(1.0).unwrap()).abs() < 1e-8);

    let p = ScalarProfile::polynomial(vec![1.0, -2.0, 0.5]);
    assert_eq!(p.eval(2.0).unwrap(), 1.0 - 4.0 + 2.0);
    assert_eq!(p.derivative(2.0).unwrap(), -2.0 + 2.0);
    assert!((p.integral(0.0, 3.0).unwrap() - (3.0 - 9.0 + 4.5)).abs() < 1e-12);

    let tab = ScalarProfile::tabulated(vec![0.0, 1.0, 3.0], vec![0.0, 2.0, 0.0]).unwrap();
    assert_eq!(tab.eval(2.0).unwrap(), 1.0);
    assert!((tab.integral(0.0, 3.0).unwrap() - 3.0).abs() < 1e-12);
    assert!(ScalarProfile::tabulated(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
}

#[test]
fn profile_json_round_trip() {
    let s = ScalarProfile::sinusoid(1.0, 0.2, 1.5, 0.3);
    let j = serde_json::to_string(&s).unwrap();
    assert!(j.contains("\"kind\":\"sinusoid\""));
    assert_eq!(serde_json::from_str::<ScalarProfile>(&j).unwrap(), s);
}

#[test]
fn grid_and_tolerance_validation() {
    assert!(TimeGrid::uniform(0.0, 1.0, 1).is_err());
    assert!(TimeGrid::uniform(1.0, 0.0, 5).is_err());
    let g = TimeGrid::with_step(0.0, 4.0, 1e-3).unwrap();
    assert_eq!(g.len(), 4001);
    assert_eq!(g.end(), 4.0);
    assert!((g.uniform_step().unwrap() - 1e-3).abs() < 1e-15);
    assert!(TimeGrid::from_points(vec![0.0, 1.0, 0.5, 2.0, 3.0]).is_err());
    assert!(TimeGrid::from_points(vec![0.0, 1.0, 1.5, 2.0, 3.0])
        .unwrap()
        .uniform_step()
        .is_none());
    assert!(Tolerances::default().validate().is_ok());
    assert!(Tolerances {
        quad_tol: -1.0,
        ..Tolerances::default()
    }
    .validate()
    .is_err());
}

proptest! {
    #[test]
    fn expm_inverse(a in matrix4(5.0 / 8.0)) {
        let p = expm(&a) * expm(&(-a));
        prop_assert!((p - Matrix4::identity()).max_abs() < 1e-12);
    }

    #[test]
    fn eig4_trace_and_determinant(a in matrix4(1.5)) {
        let e = eig4(&a).unwrap();
        let sum: C64 = e.iter().sum();
        let prod: C64 = e.iter().product();
        prop_assert!((sum - a.trace()).norm() < 1e-10);
        prop_assert!((prod - a.determinant()).norm() < 1e-9);
        prop_assert!(characteristic_residual(&a, &e) < 1e-8);
    }

    #[test]
    fn simpson_exact_on_cubics(c in prop::array::uniform4(-2.0f64..2.0), steps in prop::collection::vec(0.01f64..0.5, 1..20)) {
        let mut grid = vec![0.0];
        for s in steps {
            grid.push(grid.last().unwrap() + s);
        }
        let f = |t: f64| c[0] + t * (c[1] + t * (c[2] + t * c[3]));
        let exact = |t: f64| t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
        let v = cumulative_simpson_fixed(f, &grid).unwrap();
        for (t, x) in grid.iter().zip(&v) {
            prop_assert!((x - exact(*t)).abs() < 1e-12 * (1.0 + exact(*t).abs()));
        }
    }
}
