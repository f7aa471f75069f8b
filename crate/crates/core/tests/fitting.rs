use approx::assert_abs_diff_eq;
use stagwalk::fitting::{fit_dimension_scaling, fit_ratio_vs_inverse_d, scaling_table};
use stagwalk::reference::{DIMENSION_FITS, SCALING};
use stagwalk::ScalingSample;

fn tabulated(
    t1: usize,
    pick: impl Fn(&stagwalk::reference::ScalingRow) -> f64,
) -> Vec<(usize, f64)> {
    SCALING
        .iter()
        .filter(|r| r.t1 == t1 && r.d <= 8)
        .map(|r| (r.d, pick(r)))
        .collect()
}

#[test]
fn dimension_fits_follow_from_tabulated_coefficients() {
    for row in &DIMENSION_FITS {
        let a1 = fit_dimension_scaling(&tabulated(row.t1, |r| r.a1)).unwrap();
        assert_abs_diff_eq!(a1.intercept, row.log2_a1.0, epsilon = 0.01);
        assert_abs_diff_eq!(a1.slope, row.log2_a1.1, epsilon = 0.01);
        let a2 = fit_dimension_scaling(&tabulated(row.t1, |r| r.a2)).unwrap();
        assert_abs_diff_eq!(a2.intercept, row.log2_a2.0, epsilon = 0.01);
        assert_abs_diff_eq!(a2.slope, row.log2_a2.1, epsilon = 0.01);
        let ratio = fit_ratio_vs_inverse_d(&tabulated(row.t1, |r| r.ratio)).unwrap();
        assert_abs_diff_eq!(ratio.intercept, row.ratio.0, epsilon = 0.01);
        assert_abs_diff_eq!(ratio.slope, row.ratio.1, epsilon = 0.02);
    }
}

#[test]
fn inverse_side_fit_recovers_exact_lines() {
    let (a1, b1, a2, b2) = (0.0548, 0.0123, 0.2079, -0.1157);
    let samples: Vec<ScalingSample> = [16usize, 32, 48, 64]
        .iter()
        .map(|&side| {
            let inv = 1.0 / side as f64;
            let sqrt_n = (side as f64).powi(4).sqrt();
            ScalingSample {
                d: 4,
                side,
                s: std::f64::consts::FRAC_1_SQRT_2,
                t1: 3,
                p: a1 + b1 * inv,
                t2: ((a2 + b2 * inv) * sqrt_n).round() as usize,
            }
        })
        .collect();
    let table = scaling_table(&samples);
    assert_eq!(table.len(), 1);
    let row = &table[0];
    assert_abs_diff_eq!(row.a1, a1, epsilon = 1e-12);
    assert_abs_diff_eq!(row.b1.unwrap(), b1, epsilon = 1e-10);
    assert_abs_diff_eq!(row.a2, a2, epsilon = 2e-3);
    assert_abs_diff_eq!(row.ratio, row.a2 / row.a1.sqrt(), epsilon = 1e-12);
}
