//! Published reference values for the standard configurations, used by
//! the reproduction recipes and the acceptance suite.

/// Optimised search and walk parameters for one `(d, L, t1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuningRow {
    pub d: usize,
    pub side: usize,
    pub t1: usize,
    /// Search-optimal mixing amplitude.
    pub s: f64,
    pub t2: usize,
    pub p: f64,
    pub theta: f64,
    /// Mixing amplitude minimising the return amplitude.
    pub walk_s: f64,
    pub min_return_amplitude: f64,
    pub walk_theta: f64,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    d: usize,
    side: usize,
    t1: usize,
    s: f64,
    t2: usize,
    p: f64,
    theta: f64,
    walk_s: f64,
    min_return_amplitude: f64,
    walk_theta: f64,
) -> TuningRow {
    TuningRow {
        d,
        side,
        t1,
        s,
        t2,
        p,
        theta,
        walk_s,
        min_return_amplitude,
        walk_theta,
    }
}

// 3.140 in the θ column is a measured value, not π.
#[allow(clippy::approx_constant)]
pub const TUNING: [TuningRow; 19] = [
    row(3, 32, 2, 0.9507, 59, 0.0942, 3.551, 0.9258, -0.7143, 3.346),
    row(3, 32, 3, 0.7015, 55, 0.1001, 3.299, 0.6737, -0.7618, 3.136),
    row(3, 32, 4, 0.5363, 55, 0.1016, 3.202, 0.5194, -0.7748, 3.089),
    row(3, 32, 8, 0.2755, 54, 0.1027, 3.158, 0.2665, -0.7860, 3.052),
    row(3, 32, 20, 0.1114, 54, 0.1030, 3.157, 0.1074, -0.7890, 3.044),
    row(4, 16, 2, 0.9541, 54, 0.0528, 3.583, 0.9428, -0.7778, 3.482),
    row(4, 16, 3, 0.6986, 54, 0.0548, 3.281, 0.6827, -0.8190, 3.188),
    row(4, 16, 4, 0.5411, 53, 0.0553, 3.234, 0.5257, -0.8300, 3.131),
    row(4, 16, 8, 0.2771, 52, 0.0558, 3.177, 0.2694, -0.8395, 3.086),
    row(4, 16, 20, 0.1115, 52, 0.0559, 3.160, 0.1084, -0.8420, 3.072),
    row(5, 16, 2, 0.9500, 150, 0.0276, 3.545, 0.9535, -0.8182, 3.577),
    row(5, 16, 3, 0.6920, 148, 0.0284, 3.242, 0.6880, -0.8541, 3.219),
    row(5, 16, 4, 0.5376, 147, 0.0286, 3.211, 0.5292, -0.8636, 3.155),
    row(5, 16, 8, 0.2726, 147, 0.0288, 3.124, 0.2710, -0.8718, 3.105),
    row(
        5, 16, 20, 0.1108, 147, 0.0288, 3.140, 0.1092, -0.8739, 3.095,
    ),
    row(6, 8, 3, 0.6891, 51, 0.0145, 3.225, 0.6913, -0.8778, 3.238),
    row(6, 8, 20, 0.1106, 51, 0.0147, 3.135, 0.1094, -0.8951, 3.101),
    row(7, 8, 3, 0.6932, 102, 0.0073, 3.250, 0.6937, -0.8949, 3.252),
    row(7, 8, 20, 0.1097, 102, 0.0074, 3.109, 0.1098, -0.9102, 3.112),
];

/// Finite-size fit coefficients for one `(s, t1, d)`. Slopes are absent
/// where too few sizes were available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub s: f64,
    pub t1: usize,
    pub d: usize,
    pub sides: &'static [usize],
    pub a1: f64,
    pub b1: Option<f64>,
    pub rms1: Option<f64>,
    pub a2: f64,
    pub b2: Option<f64>,
    pub rms2: Option<f64>,
    pub ratio: f64,
}

/// Fixed parameter pairs used for the scaling study.
pub const S_FOR_T1_2: f64 = 0.9539;
pub const S_FOR_T1_3: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const S_FOR_T1_4: f64 = 0.5410;

macro_rules! scaling {
    ($s:expr, $t1:expr, $d:expr, $sides:expr, $a1:expr, $b1:expr, $e1:expr, $a2:expr, $b2:expr, $e2:expr, $r:expr) => {
        ScalingRow {
            s: $s,
            t1: $t1,
            d: $d,
            sides: &$sides,
            a1: $a1,
            b1: $b1,
            rms1: $e1,
            a2: $a2,
            b2: $b2,
            rms2: $e2,
            ratio: $r,
        }
    };
}

pub const SCALING: [ScalingRow; 21] = [
    scaling!(
        S_FOR_T1_2,
        2,
        3,
        [64, 128, 256, 512],
        0.0911,
        Some(0.0964),
        Some(2.43e-5),
        0.3237,
        Some(0.1440),
        Some(4.57e-4),
        1.072
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        4,
        [16, 32, 48, 64],
        0.0522,
        Some(0.0100),
        Some(3.02e-5),
        0.2167,
        Some(-0.0832),
        Some(1.05e-3),
        0.948
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        5,
        [12, 16, 24, 32],
        0.0275,
        Some(0.0009),
        Some(1.70e-6),
        0.1486,
        Some(-0.0243),
        Some(2.39e-4),
        0.896
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        6,
        [12, 14, 16, 18],
        0.0141,
        Some(0.0001),
        Some(2.31e-7),
        0.1043,
        Some(-0.0208),
        Some(1.78e-4),
        0.878
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        7,
        [6, 8, 10],
        0.0072,
        Some(-0.0004),
        Some(1.40e-6),
        0.0757,
        Some(-0.0338),
        Some(2.47e-4),
        0.892
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        8,
        [6, 8],
        0.0036,
        None,
        Some(3.50e-6),
        0.0509,
        None,
        Some(7.23e-5),
        0.848
    ),
    scaling!(
        S_FOR_T1_2,
        2,
        9,
        [6],
        0.0018,
        None,
        None,
        0.0356,
        None,
        None,
        0.839
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        3,
        [64, 128, 256, 512],
        0.0968,
        Some(0.0920),
        Some(2.73e-6),
        0.3141,
        Some(-0.0306),
        Some(1.23e-3),
        1.010
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        4,
        [16, 32, 48, 64],
        0.0542,
        Some(0.0076),
        Some(1.46e-5),
        0.2097,
        Some(0.0151),
        Some(6.71e-4),
        0.901
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        5,
        [12, 16, 24, 32],
        0.0283,
        Some(0.0010),
        Some(4.66e-6),
        0.1470,
        Some(-0.0300),
        Some(2.12e-4),
        0.874
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        6,
        [12, 14, 16, 18],
        0.0145,
        Some(0.0001),
        Some(5.79e-7),
        0.1035,
        Some(-0.0269),
        Some(1.88e-4),
        0.860
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        7,
        [6, 8, 10],
        0.0074,
        Some(-0.0003),
        Some(1.46e-6),
        0.0750,
        Some(-0.0296),
        Some(3.39e-4),
        0.872
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        8,
        [6, 8],
        0.0037,
        None,
        Some(3.00e-6),
        0.0498,
        None,
        Some(4.55e-5),
        0.819
    ),
    scaling!(
        S_FOR_T1_3,
        3,
        9,
        [6],
        0.0019,
        None,
        None,
        0.0353,
        None,
        None,
        0.810
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        3,
        [64, 128, 256, 512],
        0.0984,
        Some(0.0936),
        Some(1.84e-5),
        0.3123,
        Some(-0.1239),
        Some(8.46e-4),
        0.996
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        4,
        [16, 32, 48, 64],
        0.0548,
        Some(0.0087),
        Some(2.24e-5),
        0.2103,
        Some(-0.0500),
        Some(3.57e-4),
        0.898
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        5,
        [12, 16, 24, 32],
        0.0285,
        Some(0.0013),
        Some(8.05e-6),
        0.1455,
        Some(-0.0142),
        Some(2.25e-4),
        0.862
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        6,
        [12, 14, 16, 18],
        0.0146,
        Some(0.0002),
        Some(7.67e-7),
        0.1015,
        Some(0.0043),
        Some(6.28e-5),
        0.840
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        7,
        [6, 8, 10],
        0.0074,
        Some(-0.0003),
        Some(2.86e-6),
        0.0733,
        Some(-0.0194),
        Some(2.01e-4),
        0.852
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        8,
        [6, 8],
        0.0037,
        None,
        Some(4.50e-6),
        0.0505,
        None,
        Some(4.39e-4),
        0.830
    ),
    scaling!(
        S_FOR_T1_4,
        4,
        9,
        [6],
        0.0019,
        None,
        None,
        0.0353,
        None,
        None,
        0.810
    ),
];

pub fn scaling_row(t1: usize, d: usize) -> Option<&'static ScalingRow> {
    SCALING.iter().find(|r| r.t1 == t1 && r.d == d)
}

/// Dimension fits of the asymptotic coefficients: `(c, k, rms)` triples
/// for `log2 a1`, `log2 a2` and `a2/√a1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionFitRow {
    pub s: f64,
    pub t1: usize,
    pub log2_a1: (f64, f64, f64),
    pub log2_a2: (f64, f64, f64),
    pub ratio: (f64, f64, f64),
}

pub const DIMENSION_FITS: [DimensionFitRow; 3] = [
    DimensionFitRow {
        s: S_FOR_T1_2,
        t1: 2,
        log2_a1: (-0.553, -0.938, 4.77e-2),
        log2_a2: (-0.085, -0.526, 2.53e-2),
        ratio: (0.721, 0.995, 1.71e-2),
    },
    DimensionFitRow {
        s: S_FOR_T1_3,
        t1: 3,
        log2_a1: (-0.458, -0.947, 4.48e-2),
        log2_a2: (-0.138, -0.521, 2.57e-2),
        ratio: (0.729, 0.791, 1.63e-2),
    },
    DimensionFitRow {
        s: S_FOR_T1_4,
        t1: 4,
        log2_a1: (-0.421, -0.951, 3.78e-2),
        log2_a2: (-0.151, -0.521, 2.09e-2),
        ratio: (0.725, 0.761, 1.32e-2),
    },
];

/// `t2/√(NP) = a + b/d` at fixed side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedSideRow {
    pub s: f64,
    pub t1: usize,
    pub side: usize,
    pub dims: &'static [usize],
    pub intercept: f64,
    pub slope: f64,
    pub rms: f64,
}

pub const FIXED_SIDE_FITS: [FixedSideRow; 12] = [
    FixedSideRow {
        s: S_FOR_T1_2,
        t1: 2,
        side: 6,
        dims: &[5, 6, 7, 8, 9],
        intercept: 0.766,
        slope: 0.551,
        rms: 1.06e-2,
    },
    FixedSideRow {
        s: S_FOR_T1_2,
        t1: 2,
        side: 8,
        dims: &[4, 5, 6, 7, 8],
        intercept: 0.805,
        slope: 0.293,
        rms: 5.31e-4,
    },
    FixedSideRow {
        s: S_FOR_T1_2,
        t1: 2,
        side: 16,
        dims: &[3, 4, 5, 6],
        intercept: 0.663,
        slope: 1.132,
        rms: 1.73e-2,
    },
    FixedSideRow {
        s: S_FOR_T1_2,
        t1: 2,
        side: 32,
        dims: &[3, 4, 5],
        intercept: 0.625,
        slope: 1.304,
        rms: 5.77e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_3,
        t1: 3,
        side: 6,
        dims: &[4, 5, 6, 7, 8, 9],
        intercept: 0.819,
        slope: 0.006,
        rms: 1.28e-2,
    },
    FixedSideRow {
        s: S_FOR_T1_3,
        t1: 3,
        side: 8,
        dims: &[4, 5, 6, 7, 8],
        intercept: 0.803,
        slope: 0.234,
        rms: 3.28e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_3,
        t1: 3,
        side: 16,
        dims: &[3, 4, 5, 6],
        intercept: 0.773,
        slope: 0.471,
        rms: 6.46e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_3,
        t1: 3,
        side: 32,
        dims: &[3, 4, 5],
        intercept: 0.724,
        slope: 0.705,
        rms: 3.23e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_4,
        t1: 4,
        side: 6,
        dims: &[4, 5, 6, 7, 8, 9],
        intercept: 0.837,
        slope: -0.092,
        rms: 1.35e-2,
    },
    FixedSideRow {
        s: S_FOR_T1_4,
        t1: 4,
        side: 8,
        dims: &[4, 5, 6, 7, 8],
        intercept: 0.791,
        slope: 0.272,
        rms: 3.79e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_4,
        t1: 4,
        side: 16,
        dims: &[3, 4, 5, 6],
        intercept: 0.767,
        slope: 0.450,
        rms: 1.29e-3,
    },
    FixedSideRow {
        s: S_FOR_T1_4,
        t1: 4,
        side: 32,
        dims: &[3, 4, 5],
        intercept: 0.711,
        slope: 0.726,
        rms: 1.13e-3,
    },
];

/// Multiple marked vertices on a `64^3` lattice with `s = 1/√2`, `t1 = 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiTargetRow {
    pub marked: &'static [[usize; 3]],
    pub p: &'static [f64],
    pub t2: &'static [usize],
}

pub const MULTI_TARGET_SIDE: usize = 64;

pub const MULTI_TARGET: [MultiTargetRow; 6] = [
    MultiTargetRow {
        marked: &[[32, 32, 32]],
        p: &[0.09829],
        t2: &[161],
    },
    MultiTargetRow {
        marked: &[[0, 32, 32], [32, 32, 32]],
        p: &[0.04919, 0.04919],
        t2: &[112, 112],
    },
    MultiTargetRow {
        marked: &[[0, 32, 33], [32, 32, 32]],
        p: &[0.09868, 0.09790],
        t2: &[161, 161],
    },
    MultiTargetRow {
        marked: &[[0, 0, 0], [16, 16, 16], [32, 32, 32]],
        p: &[0.03530, 0.03264, 0.03082],
        t2: &[94, 92, 92],
    },
    MultiTargetRow {
        marked: &[[0, 0, 1], [16, 16, 16], [32, 32, 32]],
        p: &[0.09380, 0.05590, 0.04507],
        t2: &[161, 117, 109],
    },
    MultiTargetRow {
        marked: &[[0, 0, 1], [16, 16, 16], [33, 32, 32]],
        p: &[0.09298, 0.09838, 0.10347],
        t2: &[157, 161, 162],
    },
];
