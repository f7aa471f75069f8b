use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use stagwalk::evolve::{apply_half_step, StopRule};
use stagwalk::evolve::{projection_closed_form, projection_matrix, return_amplitude_at};
use stagwalk::refcheck::{
    dense_half_step, dense_search_step, dense_trace, dense_walk, grover_step, OperatorLabel,
};
use stagwalk::{
    apply_oracle, run_search, AmplitudeField, LatticeConfig, MarkedSet, Parity, Walk, WalkParams,
};

fn max_diff(field: &AmplitudeField, dense: &[Complex64]) -> f64 {
    field
        .amplitudes()
        .iter()
        .zip(dense)
        .map(|(&a, z)| (Complex64::new(a, 0.0) - z).norm())
        .fold(0.0, f64::max)
}

fn pseudo_random_field(cfg: &LatticeConfig, seed: u64) -> AmplitudeField {
    let mut x = seed;
    let v: Vec<f64> = (0..cfg.volume())
        .map(|_| {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    AmplitudeField::from_vec(cfg, v.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn half_steps_match_dense_blocks() {
    for (d, l) in [(1, 4), (1, 8), (2, 4), (2, 6), (3, 4), (3, 6), (4, 4)] {
        let cfg = LatticeConfig::new(d, l).unwrap();
        let params = WalkParams::new(0.43, 1).unwrap();
        let walk = Walk::new(&cfg, &params).unwrap();
        for parity in [Parity::Odd, Parity::Even] {
            let dense = dense_half_step(&cfg, parity, &params).unwrap();
            let mut field = pseudo_random_field(&cfg, 7 + d as u64);
            let expected = dense.apply_real(field.amplitudes());
            walk.half_step(&mut field, parity);
            assert!(max_diff(&field, &expected) < 1e-14, "d={d} L={l} {parity}");
        }
    }
}

#[test]
fn search_matches_dense_over_thirty_queries() {
    for (d, l) in [(1, 8), (2, 4), (3, 4)] {
        let cfg = LatticeConfig::new(d, l).unwrap();
        let params = WalkParams::new(std::f64::consts::FRAC_1_SQRT_2, 3).unwrap();
        let marked = MarkedSet::single(&cfg, cfg.volume() / 2 + 1).unwrap();
        let step = dense_search_step(&cfg, &params, &marked).unwrap();
        let walk = Walk::new(&cfg, &params).unwrap();
        let mut field = AmplitudeField::uniform(&cfg);
        let mut dense: Vec<Complex64> = field
            .amplitudes()
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .collect();
        for _ in 0..30 {
            walk.query(&mut field, &marked);
            dense = step.apply(&dense);
            assert!(max_diff(&field, &dense) < 1e-11, "d={d} L={l}");
        }
    }
}

#[test]
fn walk_steps_match_matrix_power() {
    let cfg = LatticeConfig::new(1, 8).unwrap();
    let params = WalkParams::new(0.3, 5).unwrap();
    let power = dense_walk(&cfg, &params)
        .unwrap()
        .pow(5, OperatorLabel::Walk);
    let walk = Walk::new(&cfg, &params).unwrap();
    let mut field = AmplitudeField::point(&cfg, 3).unwrap();
    let expected = power.apply_real(field.amplitudes());
    walk.steps(&mut field, 5);
    assert!(max_diff(&field, &expected) < 1e-14);
}

#[test]
fn projection_factorises() {
    for (d, l, s, t1) in [(2, 4, 0.7, 2), (3, 4, 0.6737, 3), (2, 6, 0.9539, 2)] {
        let cfg = LatticeConfig::new(d, l).unwrap();
        let params = WalkParams::new(s, t1).unwrap();
        let marked = MarkedSet::single(&cfg, 0).unwrap();
        let step = dense_search_step(&cfg, &params, &marked).unwrap();
        let dense = step.plane_projection();
        let block = projection_matrix(&cfg, &params).unwrap();
        let a = return_amplitude_at(&cfg, &params, 0).unwrap();
        let closed = projection_closed_form(cfg.volume(), a);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(dense[i][j], closed[i][j], epsilon = 1e-10);
                assert_abs_diff_eq!(block[i][j], closed[i][j], epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn oracle_then_walk_equals_dense_oracle_product() {
    let cfg = LatticeConfig::new(2, 4).unwrap();
    let params = WalkParams::new(0.5, 1).unwrap();
    let marked = MarkedSet::new(&cfg, vec![1, 6]).unwrap();
    let step = dense_search_step(&cfg, &params, &marked).unwrap();
    let mut field = pseudo_random_field(&cfg, 99);
    let expected = step.apply_real(field.amplitudes());
    apply_oracle(&mut field, &marked);
    Walk::new(&cfg, &params).unwrap().step(&mut field);
    assert!(max_diff(&field, &expected) < 1e-14);
}

#[test]
fn one_dimensional_walk_columns() {
    let cfg = LatticeConfig::new(1, 4).unwrap();
    let params = WalkParams::new(0.6, 1).unwrap();
    let dense = dense_walk(&cfg, &params).unwrap();
    for j in 0..4 {
        let mut field = AmplitudeField::point(&cfg, j).unwrap();
        apply_half_step(&mut field, Parity::Odd, &params).unwrap();
        apply_half_step(&mut field, Parity::Even, &params).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(
                dense.matrix[(i, j)].re,
                field.amplitudes()[i],
                epsilon = 1e-15
            );
        }
    }
}

#[test]
fn search_trace_matches_dense_iteration() {
    let cfg = LatticeConfig::new(2, 4).unwrap();
    let params = WalkParams::new(0.8, 2).unwrap();
    let marked = MarkedSet::single(&cfg, 5).unwrap();
    let step = dense_search_step(&cfg, &params, &marked).unwrap();
    let expected = dense_trace(&step, &marked, 20);
    let (trace, _) = run_search(&cfg, &params, &marked, StopRule::Queries(20)).unwrap();
    for (a, b) in trace.probabilities().iter().zip(&expected) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-11);
    }
}

#[test]
fn uniform_state_is_an_eigenvector_of_the_dense_walk() {
    for (d, l) in [(1, 8), (2, 4), (3, 4)] {
        let cfg = LatticeConfig::new(d, l).unwrap();
        let w = dense_walk(&cfg, &WalkParams::new(0.77, 1).unwrap()).unwrap();
        let n = cfg.volume();
        let s = vec![1.0 / (n as f64).sqrt(); n];
        let image = w.apply_real(&s);
        for (z, x) in image.iter().zip(&s) {
            assert!((z - Complex64::new(*x, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn walk_projection_is_shrunk_grover_rotation() {
    for (d, l, s, t1) in [(2, 4, 0.7, 2), (3, 4, 0.6737, 3), (1, 8, 0.4, 4)] {
        let cfg = LatticeConfig::new(d, l).unwrap();
        let params = WalkParams::new(s, t1).unwrap();
        let marked = MarkedSet::single(&cfg, 0).unwrap();
        let n = cfg.volume();
        let walk = dense_search_step(&cfg, &params, &marked)
            .unwrap()
            .plane_projection();
        let grover = grover_step(n, &marked).unwrap().plane_projection();
        let a = return_amplitude_at(&cfg, &params, 0).unwrap();
        let shrink = (1.0 - n as f64 * a) / (n as f64 - 1.0);
        for j in 0..2 {
            assert_abs_diff_eq!(walk[0][j], grover[0][j], epsilon = 1e-10);
            assert_abs_diff_eq!(walk[1][j], shrink * grover[1][j], epsilon = 1e-10);
        }
    }
}
