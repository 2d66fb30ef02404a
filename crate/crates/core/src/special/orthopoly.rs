use std::f64::consts::PI;

/// Normalized Hermite function `ψ_l(x) = a_l H_l(x) e^{-x²/2}` with
/// `a_l = 2^{-l/2} (l!)^{-1/2} π^{-1/4}`, via the stable three-term recurrence.
pub fn hermite_function(l: usize, x: f64) -> f64 {
    let mut p0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if l == 0 {
        return p0;
    }
    let mut p1 = 2f64.sqrt() * x * p0;
    for k in 1..l {
        let kf = k as f64;
        let p2 = (2.0 / (kf + 1.0)).sqrt() * x * p1 - (kf / (kf + 1.0)).sqrt() * p0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Generalized Laguerre polynomial `L_n^{(a)}(t)`.
pub fn laguerre_poly(n: usize, a: f64, t: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = 1.0 + a - t;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 + a - t) * p1 - (kf + a) * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite_scaled;

    #[test]
    fn hermite_low_orders() {
        assert!((hermite_function(0, 0.0) - PI.powf(-0.25)).abs() < 1e-16);
        assert_eq!(hermite_function(1, 0.0), 0.0);
        // ψ_2(x) = (2x² - 1) e^{-x²/2} / (√2 π^{1/4})
        let x: f64 = 0.7;
        let expect = (2.0 * x * x - 1.0) * (-0.5 * x * x).exp() / (2f64.sqrt() * PI.powf(0.25));
        assert!((hermite_function(2, x) - expect).abs() < 1e-15);
    }

    #[test]
    fn hermite_normalized() {
        let (x, w) = gauss_hermite_scaled(60);
        for l in [0, 3, 17, 40] {
            let s: f64 = x
                .iter()
                .zip(&w)
                .map(|(x, w)| w * hermite_function(l, *x).powi(2))
                .sum();
            assert!((s - 1.0).abs() < 1e-10, "l = {l}: {s}");
        }
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        assert_eq!(laguerre_poly(0, 0.3, 2.0), 1.0);
        assert!((laguerre_poly(1, 0.0, 0.4) - 0.6).abs() < 1e-16);
        // L_2^{(1)}(t) = (t² - 6t + 6)/2
        assert!((laguerre_poly(2, 1.0, 0.5) - 1.625).abs() < 1e-15);
        // L_3^{(a)}(t) by its explicit sum at a = 0.5, t = 1.3
        let (a, t): (f64, f64) = (0.5, 1.3);
        let binom = |n: f64, k: f64| {
            crate::special::gamma(n + 1.0).unwrap()
                / (crate::special::gamma(k + 1.0).unwrap()
                    * crate::special::gamma(n - k + 1.0).unwrap())
        };
        let mut s = 0.0;
        let mut fact = 1.0;
        for k in 0..=3 {
            if k > 0 {
                fact *= k as f64;
            }
            s += (-1f64).powi(k) * binom(3.0 + a, (3 - k) as f64) * t.powi(k) / fact;
        }
        assert!((laguerre_poly(3, a, t) - s).abs() < 1e-14);
    }
}
