//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use tracx2::encoding::ActVector;
use tracx2::nets::Tracx2Net;

/// Adaptive Simpson quadrature of `f` over `[a, b]`, started from 64 equal
/// panels so that narrow peaks are not missed by the first estimate.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 64;
    let w = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + w * i as f64;
            let hi = if i + 1 == PANELS { b } else { lo + w };
            simpson_panel(f, lo, hi, tol / PANELS as f64)
        })
        .sum()
}

fn simpson_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rule<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = rule(f, a, fa, m, fm);
        let (rm, frm, right) = rule(f, m, fm, b, fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            return left + right + diff / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = rule(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// Two-sided Student t p-value by quadrature. With `x = sqrt(df) tan θ` the
/// density becomes proportional to `cos^(df-1) θ` on `[0, π/2]`.
pub fn t_p_oracle(t: f64, df: f64) -> f64 {
    assert!(df >= 1.0);
    let g = |th: f64| th.cos().powf(df - 1.0);
    let half = std::f64::consts::FRAC_PI_2;
    let theta = (t.abs() / df.sqrt()).atan();
    let total = simpson(&g, 0.0, half, 1e-14);
    simpson(&g, theta, half, 1e-14) / total
}

/// Upper-tail F p-value by quadrature. The beta variable
/// `u = d1 F / (d1 F + d2)` with `u = sin² φ` gives the integrand
/// `sin^(d1-1) φ cos^(d2-1) φ` on `[0, π/2]`.
pub fn f_p_oracle(f: f64, d1: f64, d2: f64) -> f64 {
    assert!(d1 >= 1.0 && d2 >= 1.0);
    let g = |ph: f64| ph.sin().powf(d1 - 1.0) * ph.cos().powf(d2 - 1.0);
    let half = std::f64::consts::FRAC_PI_2;
    let u = d1 * f / (d1 * f + d2);
    let phi = u.sqrt().asin();
    let total = simpson(&g, 0.0, half, 1e-14);
    simpson(&g, phi, half, 1e-14) / total
}

/// Largest relative deviation between the analytic gradient and central
/// differences over every weight, with `abs_floor` guarding near-zero
/// entries.
pub fn gradient_check(net: &Tracx2Net, lhs: &ActVector, rhs: &ActVector, h: f64, abs_floor: f64) -> f64 {
    let (g_in, g_out) = net.loss_gradients(lhs, rhs, 0.0);
    let mut worst: f64 = 0.0;
    for (layer, analytic) in [(0usize, g_in), (1, g_out)] {
        for (k, &a) in analytic.iter().enumerate() {
            let mut plus = net.clone();
            let mut minus = net.clone();
            {
                let (l0, l1) = plus.layers_mut();
                let w = if layer == 0 { l0 } else { l1 };
                w.weights_mut()[k] += h;
            }
            {
                let (l0, l1) = minus.layers_mut();
                let w = if layer == 0 { l0 } else { l1 };
                w.weights_mut()[k] -= h;
            }
            let numeric = (plus.loss(lhs, rhs) - minus.loss(lhs, rhs)) / (2.0 * h);
            let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(abs_floor);
            worst = worst.max(rel);
        }
    }
    worst
}

/// Distance of every pre-activation from the activation's kinks.
pub fn kink_margin(net: &Tracx2Net, lhs: &ActVector, rhs: &ActVector) -> f64 {
    let f = net.forward(lhs, rhs);
    f.hidden_net
        .iter()
        .chain(f.output_net.iter())
        .map(|x| (x.abs() - tracx2::nets::SATURATION).abs())
        .fold(f64::INFINITY, f64::min)
}
