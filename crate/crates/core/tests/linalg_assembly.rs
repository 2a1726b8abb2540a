use proptest::prelude::*;
use sinc_ivp::linalg::{
    assemble_system, build_imatrix, integration_matrix, lu_factor, DenseMatrix,
};
use sinc_ivp::sinc_kernel::sigma;
use sinc_ivp::{
    build_grid, ExampleId, Interval, IvpProblem, NodePoint, RegularityParams, SincGrid,
    TransformKind,
};

fn diag_dominant(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |mut data| {
        for i in 0..n {
            data[i * n + i] += n as f64;
        }
        DenseMatrix::from_row_major(n, n, data).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lu_inverts_multiplication(
        a in diag_dominant(50),
        x in prop::collection::vec(-10.0f64..10.0, 50),
    ) {
        let b = a.matvec(&x).unwrap();
        let lu = lu_factor(&a).unwrap();
        let solved = lu.solve(&b).unwrap();
        for (s, e) in solved.iter().zip(&x) {
            prop_assert!((s - e).abs() <= 1e-10 * (1.0 + e.abs()));
        }
    }

    #[test]
    fn lu_handles_permuted_rows(seed in prop::collection::vec(0.5f64..2.0, 6)) {
        // Anti-diagonal matrix: no pivot is usable without exchanges.
        let n = seed.len();
        let mut a = DenseMatrix::zeros(n, n);
        for (i, v) in seed.iter().enumerate() {
            a[(i, n - 1 - i)] = *v;
        }
        let x: Vec<f64> = (0..n).map(|i| i as f64 - 2.5).collect();
        let b = a.matvec(&x).unwrap();
        let solved = lu_factor(&a).unwrap().solve(&b).unwrap();
        for (s, e) in solved.iter().zip(&x) {
            prop_assert!((s - e).abs() <= 1e-14 * (1.0 + e.abs()));
        }
    }
}

#[test]
fn imatrix_is_toeplitz_sigma() {
    for n in [0, 1, 5, 20] {
        let m = build_imatrix(n);
        let size = 2 * n + 1;
        assert_eq!(m.rows(), size);
        for i in 0..size {
            for j in 0..size {
                assert_eq!(m[(i, j)], sigma(i as i64 - j as i64));
            }
        }
    }
}

#[test]
fn zero_coefficient_gives_identity() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let prob = IvpProblem::new(
        iv,
        vec![2.0, -1.0],
        |_: &NodePoint| vec![0.0; 4],
        |_: &NodePoint| vec![0.0; 2],
    )
    .unwrap();
    let params = RegularityParams::new(1.0, 1.0).unwrap();
    let grid = build_grid(TransformKind::De, iv, params, 6).unwrap();
    let (a, rhs) = assemble_system(&grid, &prob).unwrap();
    assert_eq!(a, DenseMatrix::identity(2 * grid.len()));
    let m = grid.len();
    assert!(rhs[..m].iter().all(|&v| v == 2.0));
    assert!(rhs[m..].iter().all(|&v| v == -1.0));
}

#[test]
fn single_node_system_by_hand() {
    // N = 0, n = 2: one node at the midpoint with weight h·σ₀·ψ'(0).
    let iv = Interval::new(0.0, 2.0).unwrap();
    let k = [0.3, -0.7, 1.1, 0.2];
    let prob = IvpProblem::new(
        iv,
        vec![1.0, 2.0],
        move |_: &NodePoint| k.to_vec(),
        |_: &NodePoint| vec![0.5, -0.25],
    )
    .unwrap();
    let kind = TransformKind::Se;
    let grid = SincGrid {
        kind,
        interval: iv,
        params: RegularityParams::new(1.0, 1.0).unwrap(),
        n: 0,
        h: 0.7,
        nodes: vec![kind.forward(0.0, &iv).unwrap()],
        dweights: vec![kind.derivative(0.0, &iv)],
    };
    let w = grid.h * 0.5 * grid.dweights[0];
    let (a, rhs) = assemble_system(&grid, &prob).unwrap();
    let expected = [1.0 - w * k[0], -w * k[1], -w * k[2], 1.0 - w * k[3]];
    for (got, want) in a.as_slice().iter().zip(&expected) {
        assert!((got - want).abs() < 1e-15);
    }
    assert!((rhs[0] - (1.0 + w * 0.5)).abs() < 1e-15);
    assert!((rhs[1] - (2.0 - w * 0.25)).abs() < 1e-15);
}

#[test]
fn integration_matrix_rows() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let params = RegularityParams::new(1.0, 1.0).unwrap();
    let grid = build_grid(TransformKind::Se, iv, params, 5).unwrap();
    let b = integration_matrix(&grid);
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let want = grid.h * sigma(i as i64 - j as i64) * grid.dweights[j];
            assert!((b[(i, j)] - want).abs() <= 1e-15 * want.abs().max(1.0));
        }
    }
}

#[test]
fn examples_factor_up_to_n_100() {
    for id in [ExampleId::Halm, ExampleId::Singular] {
        let ex = id.build();
        for kind in [TransformKind::Se, TransformKind::De] {
            for n in [1, 10, 50, 100] {
                let grid = build_grid(kind, *ex.problem.interval(), ex.params(kind), n).unwrap();
                let (a, _) = assemble_system(&grid, &ex.problem).unwrap();
                let lu = lu_factor(&a).unwrap();
                assert!(lu.growth_factor(&a).is_finite());
            }
        }
    }
}
