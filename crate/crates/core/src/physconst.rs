//! Physical constants (2019 SI exact values) and the laboratory unit system.
//!
//! Everything downstream works in microwave lab units: energies as E/h in
//! GHz, inductances in nH, capacitances in fF, phases in radians. The two
//! conversion constants that make this work are
//!
//! * `KAPPA_L` = (Phi0/2pi)^2/h in GHz nH, so an inductance L nH carries
//!   energy KAPPA_L * phi^2 / (2 L) GHz at phase drop phi, and
//! * `KAPPA_C` = e^2/h scaled to GHz fF, so a capacitance C fF gives a
//!   single-electron charging scale KAPPA_C / C GHz.

use crate::error::{CoreError, Result};

/// Planck constant, J s (exact by definition since 2019).
pub const PLANCK_H: f64 = 6.62607015e-34;

/// Elementary charge, C (exact by definition since 2019).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = PLANCK_H / std::f64::consts::TAU;

/// Magnetic flux quantum h/(2e), Wb.
pub const FLUX_QUANTUM: f64 = PLANCK_H / (2.0 * ELEMENTARY_CHARGE);

/// Reduced flux quantum Phi0/(2pi), Wb.
pub const REDUCED_FLUX_QUANTUM: f64 = FLUX_QUANTUM / std::f64::consts::TAU;

/// (Phi0/2pi)^2/h in GHz nH (~163.46). Inductive energy scale:
/// a phase drop phi across L nH stores KAPPA_L * phi^2 / (2 L) GHz.
pub const KAPPA_L: f64 =
    REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM / PLANCK_H * 1e-9 / 1e-9;

/// e^2/h in GHz fF (~38.74). Charging energy scale: e^2/C_tot in GHz is
/// KAPPA_C / C_tot[fF].
pub const KAPPA_C: f64 =
    ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / PLANCK_H / 1e9 / 1e-15;

/// (Phi0/2pi)^2/hbar in Ohm (~1027). Converts a squared zero-point phase
/// amplitude into a characteristic impedance: Z0 = 2 lambda^2 * this.
pub const IMPEDANCE_SCALE: f64 =
    REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM / HBAR;

/// Energy of a shunt inductance, (Phi0/2pi)^2/(2L), in GHz for L in nH.
pub fn inductance_energy(l_nh: f64) -> Result<f64> {
    if !(l_nh > 0.0) {
        return Err(CoreError::Domain(format!(
            "inductance must be positive, got {l_nh} nH"
        )));
    }
    Ok(KAPPA_L / (2.0 * l_nh))
}

/// Charging energy of the qubit mode, e^2/(2 C_q + C), in GHz for fF inputs.
pub fn charging_energy(c_q_ff: f64, c_ff: f64) -> Result<f64> {
    let c_tot = 2.0 * c_q_ff + c_ff;
    if !(c_tot > 0.0) {
        return Err(CoreError::Domain(format!(
            "total capacitance 2*C_q + C must be positive, got {c_tot} fF"
        )));
    }
    Ok(KAPPA_C / c_tot)
}

/// Charging scale of the resonator mode, e^2/C, in GHz for C in fF.
pub fn resonator_charging_energy(c_ff: f64) -> Result<f64> {
    if !(c_ff > 0.0) {
        return Err(CoreError::Domain(format!(
            "capacitance must be positive, got {c_ff} fF"
        )));
    }
    Ok(KAPPA_C / c_ff)
}
