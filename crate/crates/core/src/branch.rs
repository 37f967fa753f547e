//! One coupling branch: a shunt inductance in parallel with a k-junction
//! array, optionally behind an additional series inductance.
//!
//! The branch is a one-dimensional potential U(phi) in the total phase drop
//! phi. For the direct kind this is a quadratic plus a single effective
//! cosine. For the series kind the array phase y is an internal variable
//! without dynamics of its own; it is fixed by force balance, which makes
//! U(phi) implicit. We solve the monotone forward map phi(y) for y and
//! propagate derivatives through the inverse-function rule, so all
//! derivatives up to fourth order are analytic (no nested differencing).
//!
//! Sign convention: the external loop flux enters both kinds as
//! (phase + phi_x + 2 pi m)/k inside the cosine, so the series kind reduces
//! exactly to the direct kind as L_a -> 0.

use crate::error::{CoreError, Result};
use crate::physconst::KAPPA_L;

/// Branch topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchKind {
    /// Junction array directly in parallel with the shunt inductance.
    Direct,
    /// Junction array behind a series inductance `l_a` (nH), the pair in
    /// parallel with the shunt inductance.
    SeriesInductance { l_a: f64 },
}

/// Screening and inductance-ratio parameters of a branch.
///
/// `beta` compares the array Josephson energy to the series-inductance
/// energy; `gamma` is 1 + L_a/L. The forward map phi(y) is invertible iff
/// k*gamma/beta > 1.
#[derive(Debug, Clone, Copy)]
pub struct BranchCoefficients {
    pub beta: f64,
    pub gamma: f64,
}

/// A single coupling branch.
#[derive(Debug, Clone, Copy)]
pub struct Branch {
    kind: BranchKind,
    /// Josephson energy of one junction in the array, GHz.
    e_j: f64,
    /// Junctions per array.
    k: u32,
    /// Parallel shunt inductance, nH.
    l: f64,
    /// Flux-quantum index of the array loop; enters as a 2 pi m phase shift.
    m: i32,
}

const MAX_INVERT_ITERS: usize = 100;

impl Branch {
    /// Direct branch: k-junction array in parallel with `l` nH.
    pub fn direct(e_j: f64, k: u32, l: f64, m: i32) -> Result<Self> {
        Self::new(BranchKind::Direct, e_j, k, l, m)
    }

    /// Series branch: array behind `l_a` nH, shunted by `l` nH.
    pub fn with_series_inductance(e_j: f64, k: u32, l: f64, l_a: f64, m: i32) -> Result<Self> {
        Self::new(BranchKind::SeriesInductance { l_a }, e_j, k, l, m)
    }

    pub fn new(kind: BranchKind, e_j: f64, k: u32, l: f64, m: i32) -> Result<Self> {
        if !(e_j > 0.0) {
            return Err(CoreError::Domain(format!(
                "junction energy must be positive, got {e_j} GHz"
            )));
        }
        if k < 1 {
            return Err(CoreError::Domain("junction count must be at least 1".into()));
        }
        if !(l > 0.0) {
            return Err(CoreError::Domain(format!(
                "shunt inductance must be positive, got {l} nH"
            )));
        }
        if let BranchKind::SeriesInductance { l_a } = kind {
            if !(l_a > 0.0) {
                return Err(CoreError::Domain(format!(
                    "series inductance must be positive, got {l_a} nH"
                )));
            }
        }
        Ok(Self { kind, e_j, k, l, m })
    }

    pub fn kind(&self) -> BranchKind {
        self.kind
    }

    pub fn junction_energy(&self) -> f64 {
        self.e_j
    }

    pub fn junction_count(&self) -> u32 {
        self.k
    }

    pub fn shunt_inductance(&self) -> f64 {
        self.l
    }

    pub fn flux_quantum_index(&self) -> i32 {
        self.m
    }

    /// Screening parameter and inductance ratio. The direct kind is the
    /// l_a -> 0 limit: beta = 0, gamma = 1.
    pub fn coefficients(&self) -> BranchCoefficients {
        match self.kind {
            BranchKind::Direct => BranchCoefficients { beta: 0.0, gamma: 1.0 },
            BranchKind::SeriesInductance { l_a } => BranchCoefficients {
                beta: l_a * self.e_j / KAPPA_L,
                gamma: 1.0 + l_a / self.l,
            },
        }
    }

    /// k*gamma/beta - 1. Positive iff the internal phase is single-valued.
    /// The direct kind has no internal phase and reports plus infinity.
    pub fn invertibility_margin(&self) -> f64 {
        match self.kind {
            BranchKind::Direct => f64::INFINITY,
            BranchKind::SeriesInductance { .. } => {
                let BranchCoefficients { beta, gamma } = self.coefficients();
                self.k as f64 * gamma / beta - 1.0
            }
        }
    }

    fn ensure_invertible(&self) -> Result<()> {
        let margin = self.invertibility_margin();
        if margin > 0.0 {
            Ok(())
        } else {
            let BranchCoefficients { beta, gamma } = self.coefficients();
            Err(CoreError::Invertibility {
                k_gamma_over_beta: self.k as f64 * gamma / beta,
            })
        }
    }

    /// Total phase offset seen by the array cosine.
    fn shift(&self, phi_x: f64) -> f64 {
        phi_x + std::f64::consts::TAU * self.m as f64
    }

    /// Internal array phase y such that the branch force balance holds at
    /// total phase `phi`: gamma*y + beta*sin((y + shift)/k) = phi. For the
    /// direct kind the array phase is the branch phase itself.
    pub fn invert_phase(&self, phi: f64, phi_x: f64) -> Result<f64> {
        match self.kind {
            BranchKind::Direct => Ok(phi),
            BranchKind::SeriesInductance { .. } => {
                self.ensure_invertible()?;
                let BranchCoefficients { beta, gamma } = self.coefficients();
                let kk = self.k as f64;
                let s = self.shift(phi_x);
                let forward = |y: f64| gamma * y + beta * ((y + s) / kk).sin() - phi;
                let slope = |y: f64| gamma + beta / kk * ((y + s) / kk).cos();

                // The sine is bounded, so the root is bracketed by
                // (phi -+ beta)/gamma. Newton with a bisection safeguard on
                // the strictly increasing forward map.
                let mut lo = (phi - beta) / gamma;
                let mut hi = (phi + beta) / gamma;
                let mut y = phi / gamma;
                for _ in 0..MAX_INVERT_ITERS {
                    let f = forward(y);
                    if f == 0.0 {
                        return Ok(y);
                    }
                    if f > 0.0 {
                        hi = y;
                    } else {
                        lo = y;
                    }
                    let mut next = y - f / slope(y);
                    if !(next > lo && next < hi) {
                        next = 0.5 * (lo + hi);
                    }
                    if (next - y).abs() <= 1e-14 * (1.0 + y.abs()) {
                        return Ok(next);
                    }
                    y = next;
                    if hi - lo <= 1e-14 * (1.0 + y.abs()) {
                        return Ok(y);
                    }
                }
                Err(CoreError::Convergence {
                    what: "branch phase inversion",
                    iterations: MAX_INVERT_ITERS,
                })
            }
        }
    }

    /// Potential energy of the branch at total phase `phi`, GHz.
    pub fn energy(&self, phi: f64, phi_x: f64) -> Result<f64> {
        let kk = self.k as f64;
        let s = self.shift(phi_x);
        match self.kind {
            BranchKind::Direct => Ok(KAPPA_L * phi * phi / (2.0 * self.l)
                - kk * self.e_j * ((phi + s) / kk).cos()),
            BranchKind::SeriesInductance { l_a } => {
                let y = self.invert_phase(phi, phi_x)?;
                let d = phi - y;
                Ok(KAPPA_L * d * d / (2.0 * l_a) + KAPPA_L * y * y / (2.0 * self.l)
                    - kk * self.e_j * ((y + s) / kk).cos())
            }
        }
    }

    /// Derivatives d^n U / d phi^n for n = 1..=max_order (max_order <= 4),
    /// GHz per rad^n. Entry `i` of the result is order `i + 1`.
    ///
    /// The series kind uses the exact force balance for the first order,
    /// dU/dphi = (Phi0/2pi)^2 (phi - y)/L_a, and differentiates y(phi)
    /// through the inverse-function rule for the rest.
    pub fn derivatives(&self, phi: f64, phi_x: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order == 0 || max_order > 4 {
            return Err(CoreError::Domain(format!(
                "derivative order must be between 1 and 4, got {max_order}"
            )));
        }
        let kk = self.k as f64;
        let s = self.shift(phi_x);
        let all = match self.kind {
            BranchKind::Direct => {
                let u = (phi + s) / kk;
                let (sin_u, cos_u) = u.sin_cos();
                let quad = KAPPA_L / self.l;
                [
                    quad * phi + self.e_j * sin_u,
                    quad + self.e_j / kk * cos_u,
                    -self.e_j / (kk * kk) * sin_u,
                    -self.e_j / (kk * kk * kk) * cos_u,
                ]
            }
            BranchKind::SeriesInductance { l_a } => {
                let BranchCoefficients { beta, gamma } = self.coefficients();
                let y = self.invert_phase(phi, phi_x)?;
                let u = (y + s) / kk;
                let (sin_u, cos_u) = u.sin_cos();
                // Forward map derivatives at the solved internal phase.
                let g1 = gamma + beta / kk * cos_u;
                let g2 = -beta / (kk * kk) * sin_u;
                let g3 = -beta / (kk * kk * kk) * cos_u;
                // Inverse-function rule.
                let y1 = 1.0 / g1;
                let y2 = -g2 * y1 * y1 * y1;
                let y3 = (3.0 * g2 * g2 - g1 * g3) * y1.powi(5);
                let stiff = KAPPA_L / l_a;
                [
                    stiff * (phi - y),
                    stiff * (1.0 - y1),
                    -stiff * y2,
                    -stiff * y3,
                ]
            }
        };
        Ok(all[..max_order].to_vec())
    }
}
