//! Gauss rules and adaptive Gauss–Kronrod integration.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule over `[a, b]` with `panels` equal panels of
/// `order` points each.
pub fn composite_gauss_legendre(
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(mid + 0.5 * width * x);
            weights.push(0.5 * width * w);
        }
    }
    (nodes, weights)
}

/// Gauss–Hermite rule for `∫ g(x) dx` over the real line, returned with the
/// weight `e^{-x²}` already divided out of the weights, so the rule applies
/// directly to integrands that carry their own Gaussian decay.
pub fn gauss_hermite_scaled(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        // Initial guesses in the style of the classical gauher routine.
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        for _ in 0..200 {
            let (psi_n, psi_nm1) = hermite_pair(n, z);
            let d = (2.0 * nf).sqrt() * psi_nm1 - z * psi_n;
            let dz = psi_n / d;
            z -= dz;
            if dz.abs() <= 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        x[i] = z;
    }
    let mut nodes = vec![0.0; n];
    for i in 0..m {
        nodes[i] = -x[i];
        nodes[n - 1 - i] = x[i];
    }
    let weights = nodes
        .iter()
        .map(|&xi| {
            // Christoffel numbers: 1 / Σ_k ψ_k(x)² with normalized Hermite functions.
            let mut p0 = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
            let mut s = p0 * p0;
            if n > 1 {
                let mut p1 = 2f64.sqrt() * xi * p0;
                s += p1 * p1;
                for k in 1..n - 1 {
                    let kf = k as f64;
                    let p2 = (2.0 / (kf + 1.0)).sqrt() * xi * p1 - (kf / (kf + 1.0)).sqrt() * p0;
                    p0 = p1;
                    p1 = p2;
                    s += p1 * p1;
                }
            }
            1.0 / s
        })
        .collect();
    (nodes, weights)
}

/// Normalized Hermite functions `(ψ_n(x), ψ_{n-1}(x))`.
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return (p0, 0.0);
    }
    let mut p1 = 2f64.sqrt() * x * p0;
    for k in 1..n {
        let kf = k as f64;
        let p2 = (2.0 / (kf + 1.0)).sqrt() * x * p1 - (kf / (kf + 1.0)).sqrt() * p0;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Gauss–Laguerre rule for `∫_0^∞ g(ρ) dρ` with the weight `e^{-ρ}` divided
/// out of the weights.
pub fn gauss_laguerre_scaled(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        for _ in 0..200 {
            let (l, lm1) = laguerre_pair(n, z);
            // z L_n' = n (L_n - L_{n-1})
            let d = nf * (l - lm1) / z;
            let dz = l / d;
            z -= dz;
            if dz.abs() <= 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
    }
    let weights = nodes
        .iter()
        .map(|&r| {
            // Christoffel numbers with Laguerre functions ℓ_k = L_k e^{-ρ/2}.
            let e = (-0.5 * r).exp();
            let mut p0 = e;
            let mut s = p0 * p0;
            if n > 1 {
                let mut p1 = (1.0 - r) * e;
                s += p1 * p1;
                for k in 1..n - 1 {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf + 1.0 - r) * p1 - kf * p0) / (kf + 1.0);
                    p0 = p1;
                    p1 = p2;
                    s += p1 * p1;
                }
            }
            1.0 / s
        })
        .collect();
    (nodes, weights)
}

fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p1 = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS_K: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WEIGHTS_G: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WEIGHTS_K[7];
    let mut g = fc * GK_WEIGHTS_G[3];
    for i in 0..7 {
        let dx = h * GK_NODES[i];
        let s = f(c - dx) + f(c + dx);
        k += GK_WEIGHTS_K[i] * s;
        if i % 2 == 1 {
            g += GK_WEIGHTS_G[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Interval bisection stops when the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    const MAX_INTERVALS: usize = 2000;
    let (v, e) = gk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    loop {
        let total: f64 = intervals.iter().map(|s| s.2).sum();
        let err: f64 = intervals.iter().map(|s| s.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure { estimate: err });
        }
        let (worst, _) =
            intervals.iter().enumerate().fold(
                (0, -1.0),
                |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc },
            );
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::QuadratureFailure { estimate: err });
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}
