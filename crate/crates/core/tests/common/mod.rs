//! Finite-difference oracles shared by the integration suites.
//!
//! Stencils are central, O(h^2), and pushed to O(h^6) with two levels of
//! Richardson extrapolation. Base steps are chosen so that fourth-order
//! stencils stay above the f64 roundoff floor; smaller steps would drown
//! the comparison in cancellation noise long before reaching the target
//! tolerance.

#![allow(dead_code)]

/// Central-stencil weights for derivative orders 0 through 4 at unit step.
fn stencil(order: usize) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => panic!("stencil order {order} not supported"),
    }
}

fn stencil_estimate(f: &dyn Fn(f64) -> f64, x: f64, order: usize, h: f64) -> f64 {
    stencil(order)
        .iter()
        .map(|&(offset, weight)| weight * f(x + offset as f64 * h))
        .sum::<f64>()
        / h.powi(order as i32)
}

/// Two-level Richardson extrapolation of an O(h^2) estimator to O(h^6).
///
/// Also returns the disagreement between the two O(h^4) levels. When the
/// ladder has converged that gap sits near roundoff; when the function
/// varies too fast for the base step (e.g. a nearly singular inverse map)
/// it grows and flags the estimate as truncation-limited.
fn richardson(estimate: &dyn Fn(f64) -> f64, h: f64) -> (f64, f64) {
    let refine = |coarse: f64, fine: f64, power: f64| (power * fine - coarse) / (power - 1.0);
    let r0 = refine(estimate(h), estimate(h / 2.0), 4.0);
    let r1 = refine(estimate(h / 2.0), estimate(h / 4.0), 4.0);
    (refine(r0, r1, 16.0), (r0 - r1).abs())
}

/// Derivative of `f` at `x` of the given order (1..=4), O(h^6) accurate.
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, x: f64, order: usize) -> f64 {
    fd_derivative_with_noise(f, x, order).0
}

/// Like [`fd_derivative`], but also returns the oracle's own resolution:
/// the larger of the roundoff floor (cancellation amplifies the f64
/// representation error of the sampled values by sum|w| / h^order at the
/// finest Richardson level) and the ladder's observed truncation gap. No
/// central-difference oracle can resolve differences below that floor.
pub fn fd_derivative_with_noise(f: &dyn Fn(f64) -> f64, x: f64, order: usize) -> (f64, f64) {
    let h = base_step(order);
    let (value, gap) = richardson(&|h| stencil_estimate(f, x, order, h), h);
    let spread = (-2..=2)
        .map(|i| f(x + i as f64 * h).abs())
        .fold(0.0f64, f64::max);
    let weight_sum: f64 = stencil(order).iter().map(|&(_, w)| w.abs()).sum();
    let finest = h / 4.0;
    // The prefactor covers a few ulps of error per sample times the
    // absolute-weight sum (~1.9) of the Richardson combination.
    let roundoff = 10.0 * f64::EPSILON * spread * weight_sum / finest.powi(order as i32);
    (value, roundoff + gap)
}

/// Mixed partial d^(m+n) f / dx^m dy^n at (x, y), O(h^6) accurate.
pub fn fd_partial(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, m: usize, n: usize) -> f64 {
    fd_partial_with_noise(f, x, y, m, n).0
}

/// Like [`fd_partial`], but also returns the oracle's resolution floor,
/// mirroring [`fd_derivative_with_noise`] for the product stencil.
pub fn fd_partial_with_noise(
    f: &dyn Fn(f64, f64) -> f64,
    x: f64,
    y: f64,
    m: usize,
    n: usize,
) -> (f64, f64) {
    let h = base_step(m.max(n));
    let product = |h: f64| -> f64 {
        let mut acc = 0.0;
        for &(i, wx) in stencil(m) {
            for &(j, wy) in stencil(n) {
                acc += wx * wy * f(x + i as f64 * h, y + j as f64 * h);
            }
        }
        acc / h.powi(m as i32) / h.powi(n as i32)
    };
    let (value, gap) = richardson(&product, h);
    let mut spread = 0.0f64;
    for i in -2..=2 {
        for j in -2..=2 {
            spread = spread.max(f(x + i as f64 * h, y + j as f64 * h).abs());
        }
    }
    let weights =
        |order: usize| -> f64 { stencil(order).iter().map(|&(_, w)| w.abs()).sum::<f64>() };
    let finest = h / 4.0;
    let amplify = weights(m) * weights(n) / finest.powi((m + n) as i32);
    let roundoff = 10.0 * f64::EPSILON * spread * amplify;
    (value, roundoff + gap)
}

fn base_step(order: usize) -> f64 {
    // Balance truncation (shrinks with h^6) against cancellation (grows
    // with 1/h^order); the noise floor reported alongside each estimate
    // accounts for the cancellation side.
    match order {
        0 | 1 | 2 => 0.04,
        _ => 0.05,
    }
}

/// Asserts |a - b| <= tol * max(|a|, |b|, floor).
pub fn assert_close(a: f64, b: f64, tol: f64, floor: f64, what: &str) {
    let scale = a.abs().max(b.abs()).max(floor);
    assert!(
        (a - b).abs() <= tol * scale,
        "{what}: {a} vs {b} differ by {} (tol {})",
        (a - b).abs(),
        tol * scale
    );
}

/// Asserts an analytic derivative against the oracle: within `tol`
/// relative, except where the oracle's own roundoff floor is the binding
/// resolution.
pub fn assert_close_fd(analytic: f64, oracle: (f64, f64), tol: f64, what: &str) {
    let (fd, noise) = oracle;
    let bound = (tol * analytic.abs().max(fd.abs()).max(1.0)).max(noise);
    assert!(
        (analytic - fd).abs() <= bound,
        "{what}: analytic {analytic} vs oracle {fd} differ by {} (bound {bound}, noise {noise})",
        (analytic - fd).abs()
    );
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn oracle_reproduces_analytic_derivatives() {
        let f = |x: f64| (2.3 * x).sin() * (-0.3 * x).exp() + 0.5 * x * x;
        let d1 = |x: f64| {
            2.3 * (2.3 * x).cos() * (-0.3 * x).exp() - 0.3 * (2.3 * x).sin() * (-0.3 * x).exp()
                + x
        };
        for x in [-1.2, 0.0, 0.7, 2.9] {
            assert_close(fd_derivative(&f, x, 1), d1(x), 1e-9, 1.0, "first derivative");
        }
        // Fourth derivative of sin is sin again.
        let s = |x: f64| (x + 0.4).sin();
        for x in [-0.5, 0.3, 1.9] {
            assert_close(fd_derivative(&s, x, 4), (x + 0.4).sin(), 1e-7, 1.0, "fourth");
        }
    }

    #[test]
    fn mixed_partial_matches_product_rule() {
        // f = sin(1.3 x) cos(0.7 y): d3f/dx2 dy = 1.3^2 * 0.7 * sin(1.3 x) sin(0.7 y).
        let f = |x: f64, y: f64| (1.3 * x).sin() * (0.7 * y).cos();
        let (x, y) = (0.2f64, -0.4f64);
        let exact = 1.3f64.powi(2) * 0.7 * (1.3 * x).sin() * (0.7 * y).sin();
        assert_close(fd_partial(&f, x, y, 2, 1), exact, 1e-8, 1.0, "mixed partial");
    }
}
