//! From a classical potential surface to harmonic modes and their
//! couplings.
//!
//! The pipeline is: locate the potential minimum (tracked smoothly in flux
//! from the nearest known symmetric point), expand the potential to fourth
//! order around it, quantize the two quadratic directions, then read the
//! couplings and anharmonicities off the higher-order coefficients scaled
//! by zero-point amplitudes.
//!
//! Two independent routes produce a [`SpectrumPoint`]: [`analyze_point`]
//! works numerically on the expansion and handles every variant and flux;
//! [`closed_form_point`] evaluates explicit parameter formulas, valid for
//! the variants without series inductance at qubit flux 0 or half a
//! quantum. The two agree at the symmetric flux points, which is exercised
//! heavily by the test suite.

use crate::circuit::{CircuitParams, CircuitVariant, FluxBias};
use crate::error::{CoreError, Result};
use crate::physconst::{FLUX_QUANTUM, HBAR, IMPEDANCE_SCALE, KAPPA_L};
use std::f64::consts::{PI, TAU};

/// Convenience view of the potential at fixed parameters and flux.
pub struct Potential<'a> {
    params: &'a CircuitParams,
    flux: FluxBias,
}

impl<'a> Potential<'a> {
    pub fn new(params: &'a CircuitParams, flux: FluxBias) -> Self {
        Self { params, flux }
    }

    /// U(phi_q, phi_r), GHz.
    pub fn energy(&self, phi_q: f64, phi_r: f64) -> Result<f64> {
        self.params.potential(self.flux, phi_q, phi_r)
    }

    /// Partial-derivative table through total order four; see
    /// [`CircuitParams::potential_partials`].
    pub fn partials(&self, phi_q: f64, phi_r: f64) -> Result<[[f64; 5]; 5]> {
        self.params.potential_partials(self.flux, phi_q, phi_r)
    }
}

/// Fourth-order expansion of the potential around a minimum.
///
/// `c[m][n]` multiplies (phi_q - min_q)^m (phi_r - min_r)^n, in GHz. Only
/// entries with m + n <= 4 are populated.
#[derive(Debug, Clone)]
pub struct TaylorExpansion {
    pub min_q: f64,
    pub min_r: f64,
    pub c: [[f64; 5]; 5],
}

/// Harmonic quantization of the two quadratic directions.
#[derive(Debug, Clone, Copy)]
pub struct ModeQuantization {
    /// Qubit charging energy, GHz.
    pub e_c: f64,
    /// Resonator charging energy, GHz.
    pub e_cr: f64,
    /// Effective qubit Josephson energy, twice the qubit curvature
    /// coefficient, GHz.
    pub e_jq_eff: f64,
    /// Harmonic qubit frequency, GHz.
    pub omega_q: f64,
    /// Resonator frequency, GHz.
    pub omega_r: f64,
    /// Qubit zero-point phase amplitude, rad.
    pub lambda_q: f64,
    /// Resonator zero-point phase amplitude, rad.
    pub lambda_r: f64,
    /// Resonator characteristic impedance, ohm.
    pub z0: f64,
}

/// The four two-mode coupling strengths, MHz, signed.
#[derive(Debug, Clone, Copy)]
pub struct CouplingSet {
    /// Transverse-transverse, from the mixed quadratic coefficient.
    pub g_xx: f64,
    /// Longitudinal on the qubit, transverse on the resonator.
    pub g_zx: f64,
    /// Transverse on the qubit, longitudinal on the resonator.
    pub g_xz: f64,
    /// Longitudinal-longitudinal cross-Kerr seed.
    pub g_zz: f64,
}

/// Everything the model predicts at one flux operating point.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumPoint {
    pub flux: FluxBias,
    /// Resonator frequency, GHz.
    pub omega_r: f64,
    /// Harmonic qubit frequency, GHz.
    pub omega_q: f64,
    /// Qubit 0-1 transition: omega_q corrected by the anharmonic shift, GHz.
    pub delta: f64,
    /// Qubit anharmonicity, GHz.
    pub alpha_q: f64,
    /// Resonator anharmonicity, GHz.
    pub alpha_r: f64,
    /// alpha_q relative to the 0-1 transition.
    pub alpha_q_rel: f64,
    /// alpha_r relative to the resonator 0-1 transition.
    pub alpha_r_rel: f64,
    pub g_xx: f64,
    pub g_zx: f64,
    pub g_xz: f64,
    pub g_zz: f64,
    /// Dimensionless inductive screening coefficient.
    pub eta: f64,
    /// Potential-minimum location, rad.
    pub min_q: f64,
    pub min_r: f64,
    pub lambda_q: f64,
    pub lambda_r: f64,
    /// Resonator characteristic impedance, ohm.
    pub z0: f64,
}

const GRAD_TOL: f64 = 1e-11;
const GRAD_ACCEPT: f64 = 1e-10;
const NEWTON_MAX_ITERS: usize = 200;
const HOMOTOPY_STEPS: usize = 64;
const HOMOTOPY_MAX_DEPTH: usize = 5;

/// Locate the potential minimum at the given flux.
///
/// Minima sit at the origin when the branch flux is a multiple of its
/// period; from the nearest such point the minimum is tracked continuously
/// in flux (damped Newton, warm-started), so the returned minimum is the
/// one connected to the symmetric configuration. A stationary point with a
/// non-positive-definite Hessian reports a double well.
pub fn find_minimum(params: &CircuitParams, flux: FluxBias) -> Result<(f64, f64)> {
    params.validate()?;
    let period = params.k as f64 * PI;
    let anchor = (flux.phi_x / period).round() * period;
    let start = newton_minimize(params, FluxBias::new(anchor, flux.phi_xb), (0.0, 0.0))?;
    walk_in_flux(params, flux.phi_xb, anchor, flux.phi_x, start, HOMOTOPY_STEPS, 0)
}

/// Continue a known minimum from branch flux `x0` to `x1` in equal steps,
/// splitting any step that fails until a depth limit.
fn walk_in_flux(
    params: &CircuitParams,
    phi_xb: f64,
    x0: f64,
    x1: f64,
    start: (f64, f64),
    steps: usize,
    depth: usize,
) -> Result<(f64, f64)> {
    if x0 == x1 {
        return Ok(start);
    }
    let mut point = start;
    let mut x_prev = x0;
    for i in 1..=steps {
        let x = x0 + (x1 - x0) * i as f64 / steps as f64;
        match newton_minimize(params, FluxBias::new(x, phi_xb), point) {
            Ok(p) => point = p,
            Err(err) => {
                if depth >= HOMOTOPY_MAX_DEPTH {
                    return Err(err);
                }
                point = walk_in_flux(params, phi_xb, x_prev, x, point, 8, depth + 1)?;
            }
        }
        x_prev = x;
    }
    Ok(point)
}

/// Damped Newton descent to a stationary point, with a positive-definiteness
/// check on arrival. Crate-internal so sweeps can warm-start directly.
pub(crate) fn newton_minimize(
    params: &CircuitParams,
    flux: FluxBias,
    start: (f64, f64),
) -> Result<(f64, f64)> {
    let (mut q, mut r) = start;
    for _ in 0..NEWTON_MAX_ITERS {
        let d = params.potential_partials(flux, q, r)?;
        let (gq, gr) = (d[1][0], d[0][1]);
        let gnorm = gq.abs().max(gr.abs());
        let (a, b, c) = (d[2][0], d[1][1], d[0][2]);
        if gnorm < GRAD_TOL {
            return accept_minimum(flux, q, r, a, b, c);
        }

        // Shift the Hessian just enough to make the step a descent direction.
        let eig_min = 0.5 * (a + c) - (0.5 * (a - c)).hypot(b);
        let tau = if eig_min < 1e-9 { 1e-9 - eig_min } else { 0.0 };
        let (aa, cc) = (a + tau, c + tau);
        let det = aa * cc - b * b;
        let sq = (-gq * cc + gr * b) / det;
        let sr = (-gr * aa + gq * b) / det;

        let u0 = params.potential(flux, q, r)?;
        let slope = gq * sq + gr * sr;
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..40 {
            let (q1, r1) = (q + t * sq, r + t * sr);
            let u1 = params.potential(flux, q1, r1)?;
            if u1 <= u0 + 1e-4 * t * slope {
                q = q1;
                r = r1;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            // Progress stalled at the rounding floor. Accept if close
            // enough, otherwise report the stall.
            if gnorm < GRAD_ACCEPT {
                return accept_minimum(flux, q, r, a, b, c);
            }
            return Err(CoreError::Convergence {
                what: "potential minimization",
                iterations: NEWTON_MAX_ITERS,
            });
        }
    }
    Err(CoreError::Convergence {
        what: "potential minimization",
        iterations: NEWTON_MAX_ITERS,
    })
}

fn accept_minimum(flux: FluxBias, q: f64, r: f64, a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let det = a * c - b * b;
    if a > 0.0 && det > 0.0 {
        Ok((q, r))
    } else {
        Err(CoreError::DoubleWell {
            phi_x: flux.phi_x,
            phi_xb: flux.phi_xb,
            detail: format!(
                "stationary point at ({q:.6}, {r:.6}) is not a minimum \
                 (curvatures {a:.4}, {c:.4}, determinant {det:.4})"
            ),
        })
    }
}

/// Expand the potential to fourth order around a located minimum.
///
/// Rejects points that are not stationary (gradient above 1e-9) or whose
/// quadratic part is not positive in both directions.
pub fn taylor_expand(
    params: &CircuitParams,
    flux: FluxBias,
    minimum: (f64, f64),
) -> Result<TaylorExpansion> {
    let d = params.potential_partials(flux, minimum.0, minimum.1)?;
    if d[1][0].abs() >= 1e-9 || d[0][1].abs() >= 1e-9 {
        return Err(CoreError::Domain(format!(
            "expansion point is not stationary: gradient ({:.3e}, {:.3e})",
            d[1][0], d[0][1]
        )));
    }
    const FACTORIAL: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];
    let mut c = [[0.0; 5]; 5];
    for m in 0..=4usize {
        for n in 0..=4usize {
            if m + n <= 4 {
                c[m][n] = d[m][n] / (FACTORIAL[m] * FACTORIAL[n]);
            }
        }
    }
    if !(c[2][0] > 0.0 && c[0][2] > 0.0) {
        return Err(CoreError::DoubleWell {
            phi_x: flux.phi_x,
            phi_xb: flux.phi_xb,
            detail: format!(
                "non-positive curvature at the expansion point: \
                 c20 = {:.4}, c02 = {:.4}",
                c[2][0], c[0][2]
            ),
        });
    }
    Ok(TaylorExpansion {
        min_q: minimum.0,
        min_r: minimum.1,
        c,
    })
}

/// Quantize the two quadratic directions of an expansion.
pub fn quantize_modes(params: &CircuitParams, taylor: &TaylorExpansion) -> Result<ModeQuantization> {
    let e_c = params.charging_energy()?;
    let e_cr = params.resonator_charging_energy()?;
    let e_jq_eff = 2.0 * taylor.c[2][0];
    let c02 = taylor.c[0][2];
    let omega_q = (8.0 * e_c * e_jq_eff).sqrt();
    let lambda_q = (2.0 * e_c / e_jq_eff).powf(0.25);
    let omega_r = 4.0 * (e_cr * c02).sqrt();
    let lambda_r = (e_cr / c02).powf(0.25);
    let z0 = 2.0 * lambda_r * lambda_r * IMPEDANCE_SCALE;
    Ok(ModeQuantization {
        e_c,
        e_cr,
        e_jq_eff,
        omega_q,
        omega_r,
        lambda_q,
        lambda_r,
        z0,
    })
}

/// Couplings from the mixed expansion coefficients, scaled by zero-point
/// amplitudes. MHz, signed.
pub fn extract_couplings(taylor: &TaylorExpansion, modes: &ModeQuantization) -> CouplingSet {
    let lq = modes.lambda_q;
    let lr = modes.lambda_r;
    CouplingSet {
        g_xx: 1e3 * taylor.c[1][1] * lq * lr,
        g_zx: 1e3 * taylor.c[2][1] * lq * lq * lr,
        g_xz: 1e3 * taylor.c[1][2] * lq * lr * lr,
        g_zz: 1e3 * taylor.c[2][2] * lq * lq * lr * lr,
    }
}

/// First-order anharmonic shifts (alpha_q, alpha_r) from the quartic
/// self-coefficients, GHz.
pub fn anharmonicities(taylor: &TaylorExpansion, modes: &ModeQuantization) -> (f64, f64) {
    let lq4 = modes.lambda_q.powi(4);
    let lr4 = modes.lambda_r.powi(4);
    (12.0 * taylor.c[4][0] * lq4, 12.0 * taylor.c[0][4] * lr4)
}

/// Numerical route: minimum, expansion, quantization, couplings.
pub fn analyze_point(params: &CircuitParams, flux: FluxBias) -> Result<SpectrumPoint> {
    let minimum = find_minimum(params, flux)?;
    analyze_at_minimum(params, flux, minimum)
}

/// Assemble a spectrum point when the minimum is already known. Shared by
/// [`analyze_point`] and the sweep's warm-started path.
pub(crate) fn analyze_at_minimum(
    params: &CircuitParams,
    flux: FluxBias,
    minimum: (f64, f64),
) -> Result<SpectrumPoint> {
    let taylor = taylor_expand(params, flux, minimum)?;
    let modes = quantize_modes(params, &taylor)?;
    let couplings = extract_couplings(&taylor, &modes);
    let (alpha_q, alpha_r) = anharmonicities(&taylor, &modes);
    let delta = modes.omega_q + alpha_q;
    let eta = match params.variant {
        // Parametric form, exact for the direct-branch variants.
        CircuitVariant::SingleJunction | CircuitVariant::Array => parametric_eta(params, flux),
        // With series inductances the screening is defined through the
        // resonator curvature it produces.
        CircuitVariant::Adapted => 4.0 * params.l * taylor.c[0][2] / KAPPA_L - 1.0,
    };
    Ok(SpectrumPoint {
        flux,
        omega_r: modes.omega_r,
        omega_q: modes.omega_q,
        delta,
        alpha_q,
        alpha_r,
        alpha_q_rel: alpha_q / delta,
        alpha_r_rel: alpha_r / (modes.omega_r + alpha_r),
        g_xx: couplings.g_xx,
        g_zx: couplings.g_zx,
        g_xz: couplings.g_xz,
        g_zz: couplings.g_zz,
        eta,
        min_q: taylor.min_q,
        min_r: taylor.min_r,
        lambda_q: modes.lambda_q,
        lambda_r: modes.lambda_r,
        z0: modes.z0,
    })
}

fn parametric_eta(params: &CircuitParams, flux: FluxBias) -> f64 {
    let kk = params.k as f64;
    params.e_jsigma * params.l * (flux.phi_x / kk).cos() / (2.0 * kk * KAPPA_L)
}

/// Closed-form route: explicit parameter formulas, no minimization and no
/// derivative tables.
///
/// Valid for the variants without series inductance, with symmetric branch
/// inductances, and with the qubit loop at an integer or half-integer flux
/// quantum (where the minimum provably sits at the origin). The resonator
/// block is evaluated in SI quantities and converted at the end, making
/// this an arithmetic path independent of the numerical route.
pub fn closed_form_point(params: &CircuitParams, flux: FluxBias) -> Result<SpectrumPoint> {
    params.validate()?;
    match params.variant {
        CircuitVariant::SingleJunction | CircuitVariant::Array => {}
        CircuitVariant::Adapted => {
            return Err(CoreError::UnsupportedVariant(
                "closed-form route covers only the variants without series inductance".into(),
            ));
        }
    }
    if params.delta_l != 0.0 {
        return Err(CoreError::UnsupportedVariant(
            "closed-form route assumes symmetric branch inductances".into(),
        ));
    }
    if flux.phi_xb.sin().abs() > 1e-9 {
        return Err(CoreError::Domain(
            "closed-form route requires the qubit loop at an integer or half-integer \
             flux quantum"
                .into(),
        ));
    }
    let sign = if flux.phi_xb.cos() > 0.0 { 1.0 } else { -1.0 };

    let kk = params.k as f64;
    let eta = parametric_eta(params, flux);
    let e_l = KAPPA_L / (2.0 * params.l);
    let e_jq_signed = sign * params.e_jq;
    let e_jq_eff = e_jq_signed + e_l * (1.0 + eta);
    if e_jq_eff <= 0.0 {
        return Err(CoreError::DoubleWell {
            phi_x: flux.phi_x,
            phi_xb: flux.phi_xb,
            detail: format!("effective qubit Josephson energy {e_jq_eff:.4} GHz is not positive"),
        });
    }
    if 1.0 + eta <= 0.0 {
        return Err(CoreError::DoubleWell {
            phi_x: flux.phi_x,
            phi_xb: flux.phi_xb,
            detail: format!("resonator screening 1 + eta = {:.4} is not positive", 1.0 + eta),
        });
    }

    let e_c = params.charging_energy()?;
    let omega_q = (8.0 * e_c * e_jq_eff).sqrt();
    let lambda_q = (2.0 * e_c / e_jq_eff).powf(0.25);
    let alpha_q = -e_c * (e_jq_signed + e_l * eta / (4.0 * kk * kk)) / e_jq_eff;
    let delta = omega_q + alpha_q;

    // Resonator block in SI.
    let l_si = params.l * 1e-9;
    let c_si = params.c * 1e-15;
    let omega_r = ((1.0 + eta) / (l_si * c_si)).sqrt() / (TAU * 1e9);
    let z0 = 2.0 * (l_si / (c_si * (1.0 + eta))).sqrt();
    let lambda_r = TAU / FLUX_QUANTUM * (HBAR * z0 / 2.0).sqrt();
    let c04 = -KAPPA_L * eta / (192.0 * kk * kk * params.l);
    let alpha_r = 12.0 * c04 * lambda_r.powi(4);

    let e_jdelta = params.d * params.e_jsigma;
    let (sin_x, cos_x) = (flux.phi_x / kk).sin_cos();
    let c11 = e_jdelta * cos_x / (4.0 * kk);
    let c21 = -params.e_jsigma * sin_x / (16.0 * kk * kk);
    let c12 = -e_jdelta * sin_x / (16.0 * kk * kk);
    let c22 = -params.e_jsigma * cos_x / (64.0 * kk * kk * kk);

    Ok(SpectrumPoint {
        flux,
        omega_r,
        omega_q,
        delta,
        alpha_q,
        alpha_r,
        alpha_q_rel: alpha_q / delta,
        alpha_r_rel: alpha_r / (omega_r + alpha_r),
        g_xx: 1e3 * c11 * lambda_q * lambda_r,
        g_zx: 1e3 * c21 * lambda_q * lambda_q * lambda_r,
        g_xz: 1e3 * c12 * lambda_q * lambda_r * lambda_r,
        g_zz: 1e3 * c22 * lambda_q * lambda_q * lambda_r * lambda_r,
        eta,
        min_q: 0.0,
        min_r: 0.0,
        lambda_q,
        lambda_r,
        z0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_junction_reference() -> CircuitParams {
        CircuitParams {
            variant: CircuitVariant::SingleJunction,
            e_jq: 10.0,
            e_jsigma: 20.0,
            d: 0.08,
            c: 114.0,
            c_q: 70.0,
            l: 4.5,
            l_a: None,
            k: 1,
            delta_l: 0.0,
        }
    }

    #[test]
    fn minimum_sits_at_origin_on_the_symmetry_points() {
        let p = single_junction_reference();
        for phi_x in [0.0, PI] {
            for phi_xb in [0.0, PI] {
                let (q, r) = find_minimum(&p, FluxBias::new(phi_x, phi_xb)).unwrap();
                assert!(q.abs() < 1e-10 && r.abs() < 1e-10, "({q}, {r})");
            }
        }
    }

    #[test]
    fn minimum_moves_off_origin_at_generic_flux() {
        let p = single_junction_reference();
        let (q, r) = find_minimum(&p, FluxBias::new(1.1, 0.0)).unwrap();
        assert!(q.abs() > 1e-4 || r.abs() > 1e-4);
        // And the gradient there vanishes.
        let d = p.potential_partials(FluxBias::new(1.1, 0.0), q, r).unwrap();
        assert!(d[1][0].abs() < 1e-10 && d[0][1].abs() < 1e-10);
    }

    #[test]
    fn reference_quantization_at_zero_flux() {
        let p = single_junction_reference();
        let flux = FluxBias::new(0.0, 0.0);
        let taylor = taylor_expand(&p, flux, (0.0, 0.0)).unwrap();
        let modes = quantize_modes(&p, &taylor).unwrap();
        assert!((modes.e_jq_eff - 33.1625).abs() < 5e-3);
        assert!((modes.omega_q - 6.3609).abs() < 1e-3);
        assert!((modes.omega_r - 7.9359).abs() < 1e-3);
        assert!((modes.lambda_q - 0.30969).abs() < 1e-4);
        assert!((modes.lambda_r - 0.41387).abs() < 1e-4);
        assert!((modes.z0 - 351.8).abs() < 0.5);
    }

    #[test]
    fn reference_couplings_at_zero_flux() {
        let p = single_junction_reference();
        let flux = FluxBias::new(0.0, 0.0);
        let point = analyze_point(&p, flux).unwrap();
        assert!((point.g_xx - 51.27).abs() < 0.05, "g_xx = {}", point.g_xx);
        assert!((point.g_zz - (-5.134)).abs() < 0.01, "g_zz = {}", point.g_zz);
        // Odd couplings vanish at zero flux.
        assert!(point.g_zx.abs() < 1e-9);
        assert!(point.g_xz.abs() < 1e-9);
        assert!((point.alpha_q - (-0.051742)).abs() < 1e-4);
        assert!((point.eta - 0.275294).abs() < 1e-5);
    }

    #[test]
    fn closed_form_matches_numerical_at_symmetry_points() {
        let p = single_junction_reference();
        for phi_x in [0.0, PI] {
            for phi_xb in [0.0, PI] {
                let flux = FluxBias::new(phi_x, phi_xb);
                let a = analyze_point(&p, flux).unwrap();
                let b = closed_form_point(&p, flux).unwrap();
                for (x, y, label) in [
                    (a.omega_r, b.omega_r, "omega_r"),
                    (a.omega_q, b.omega_q, "omega_q"),
                    (a.delta, b.delta, "delta"),
                    (a.alpha_q, b.alpha_q, "alpha_q"),
                    (a.alpha_r, b.alpha_r, "alpha_r"),
                    (a.g_xx, b.g_xx, "g_xx"),
                    (a.g_zz, b.g_zz, "g_zz"),
                    (a.lambda_q, b.lambda_q, "lambda_q"),
                    (a.lambda_r, b.lambda_r, "lambda_r"),
                    (a.z0, b.z0, "z0"),
                    (a.eta, b.eta, "eta"),
                ] {
                    let scale = x.abs().max(y.abs()).max(1e-9);
                    assert!(
                        (x - y).abs() <= 1e-6 * scale,
                        "{label} at ({phi_x}, {phi_xb}): {x} vs {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_rejects_what_it_cannot_represent() {
        let mut p = single_junction_reference();
        assert!(matches!(
            closed_form_point(&p, FluxBias::new(0.0, 0.3)),
            Err(CoreError::Domain(_))
        ));
        p.delta_l = 0.01;
        assert!(matches!(
            closed_form_point(&p, FluxBias::new(0.0, 0.0)),
            Err(CoreError::UnsupportedVariant(_))
        ));
    }

    #[test]
    fn double_well_detected_past_the_critical_inductance() {
        let mut p = single_junction_reference();
        p.l = 6.0;
        let flux = FluxBias::new(PI, PI);
        assert!(matches!(
            find_minimum(&p, flux),
            Err(CoreError::DoubleWell { .. })
        ));
        assert!(matches!(
            closed_form_point(&p, flux),
            Err(CoreError::DoubleWell { .. })
        ));
    }

    #[test]
    fn taylor_rejects_non_stationary_points() {
        let p = single_junction_reference();
        let err = taylor_expand(&p, FluxBias::new(0.0, 0.0), (0.3, 0.0));
        assert!(matches!(err, Err(CoreError::Domain(_))));
    }

    #[test]
    fn adapted_variant_analyzes_numerically() {
        let p = CircuitParams {
            variant: CircuitVariant::Adapted,
            e_jq: 5.0,
            e_jsigma: 155.0,
            d: 0.02,
            c: 65.0,
            c_q: 50.0,
            l: 4.5,
            l_a: Some(3.0),
            k: 5,
            delta_l: 0.0,
        };
        let point = analyze_point(&p, FluxBias::new(0.0, 0.0)).unwrap();
        assert!(point.omega_q > 1.0);
        // The series inductance screens the resonator stiffness below its
        // bare value, so the equivalent screening parameter is negative.
        assert!((point.omega_r - 7.957).abs() < 0.02);
        assert!(point.eta < 0.0 && point.eta > -0.5);
        assert!(point.min_q.abs() < 1e-10 && point.min_r.abs() < 1e-10);
        // The closed-form route refuses this variant.
        assert!(matches!(
            closed_form_point(&p, FluxBias::new(0.0, 0.0)),
            Err(CoreError::UnsupportedVariant(_))
        ));
    }
}
