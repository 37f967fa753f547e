//! Built-in reference designs and the regression checks frozen against them.
//!
//! Three parameter sets exercise one circuit variant each at its published
//! working point. [`run_reference_checks`] sweeps a set over one flux period
//! at zero qubit bias, extracts the headline features, and grades them
//! against the frozen target bands. Grading never clips or rescales an
//! observation; an out-of-band feature is reported as a failed check.

use crate::circuit::{CircuitParams, CircuitVariant};
use crate::error::Result;
use crate::sweep::{self, SweepFeatures, SweepGrid};

/// Identifies one of the built-in reference designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceSet {
    /// One shunted junction per coupling branch.
    SingleJunction,
    /// Nine-junction coupling arrays.
    JunctionArray,
    /// Five-junction coupling arrays with a series inductance per branch.
    AdaptedArray,
}

/// Reference design with a single junction per coupling branch.
pub fn single_junction() -> CircuitParams {
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

/// Reference design with nine-junction coupling arrays.
pub fn junction_array() -> CircuitParams {
    CircuitParams {
        variant: CircuitVariant::Array,
        e_jq: 10.0,
        e_jsigma: 160.0,
        d: 0.02,
        c: 102.0,
        c_q: 60.0,
        l: 5.0,
        l_a: None,
        k: 9,
        delta_l: 0.0,
    }
}

/// Reference design with five-junction arrays and a series inductance
/// in each coupling branch.
pub fn adapted_array() -> CircuitParams {
    CircuitParams {
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
    }
}

/// One acceptance band for a swept feature of a reference design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckKind {
    /// Peak |g_zx| over the sweep, MHz: `target` within `rel_tol`.
    GzxMax { target: f64, rel_tol: f64 },
    /// Leading |g_xx| lobe value, MHz: `target` within `rel_tol`.
    GxxMax { target: f64, rel_tol: f64 },
    /// Leading |g_zz| lobe value, MHz: `target` within `rel_tol`.
    GzzMax { target: f64, rel_tol: f64 },
    /// Peak |g_xz| over the sweep, MHz: `target` within `rel_tol`.
    GxzMax { target: f64, rel_tol: f64 },
    /// Resonator frequency swing, GHz: each endpoint within `tol` of its target.
    OmegaRRange { lo: f64, hi: f64, tol: f64 },
    /// Qubit transition swing, GHz: each endpoint within `tol` of its target.
    DeltaRange { lo: f64, hi: f64, tol: f64 },
    /// Relative qubit anharmonicity magnitude stays inside [`lo`, `hi`].
    AlphaQRelBand { lo: f64, hi: f64 },
    /// Relative resonator anharmonicity magnitude never exceeds `limit`.
    AlphaRRelMax { limit: f64 },
    /// Junction count below which the coupler turns double-welled:
    /// `target` within `rel_tol`.
    CriticalJunctionCount { target: f64, rel_tol: f64 },
}

/// Named acceptance band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCheck {
    /// Stable identifier, also used as the report line label.
    pub name: &'static str,
    /// What is graded and against which band.
    pub kind: CheckKind,
}

/// Result of grading one [`ReferenceCheck`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    /// Identifier copied from the check.
    pub name: &'static str,
    /// Whether the observation landed inside the band.
    pub pass: bool,
    /// Human-readable observation vs. band.
    pub detail: String,
}

impl ReferenceSet {
    /// Parameter values for this design.
    pub fn params(self) -> CircuitParams {
        match self {
            ReferenceSet::SingleJunction => single_junction(),
            ReferenceSet::JunctionArray => junction_array(),
            ReferenceSet::AdaptedArray => adapted_array(),
        }
    }

    /// Stable kebab-case label for reports and file names.
    pub fn label(self) -> &'static str {
        match self {
            ReferenceSet::SingleJunction => "single-junction",
            ReferenceSet::JunctionArray => "junction-array",
            ReferenceSet::AdaptedArray => "adapted-array",
        }
    }

    /// Frozen acceptance bands for this design.
    pub fn checks(self) -> &'static [ReferenceCheck] {
        match self {
            ReferenceSet::SingleJunction => &[
                ReferenceCheck {
                    name: "g_zx_max",
                    kind: CheckKind::GzxMax { target: 53.0, rel_tol: 0.10 },
                },
                ReferenceCheck {
                    name: "g_xx_max",
                    kind: CheckKind::GxxMax { target: 49.0, rel_tol: 0.10 },
                },
                ReferenceCheck {
                    name: "g_zz_max",
                    kind: CheckKind::GzzMax { target: 5.0, rel_tol: 0.25 },
                },
                ReferenceCheck {
                    name: "g_xz_max",
                    kind: CheckKind::GxzMax { target: 6.0, rel_tol: 0.25 },
                },
                ReferenceCheck {
                    name: "omega_r_range",
                    kind: CheckKind::OmegaRRange { lo: 6.2, hi: 8.0, tol: 0.15 },
                },
                ReferenceCheck {
                    name: "delta_range",
                    kind: CheckKind::DeltaRange { lo: 5.4, hi: 6.4, tol: 0.15 },
                },
                ReferenceCheck {
                    name: "alpha_q_rel_band",
                    kind: CheckKind::AlphaQRelBand { lo: 0.007, hi: 0.012 },
                },
                ReferenceCheck {
                    name: "alpha_r_rel_max",
                    kind: CheckKind::AlphaRRelMax { limit: 0.006 },
                },
            ],
            ReferenceSet::JunctionArray => &[
                ReferenceCheck {
                    name: "g_zx_max",
                    kind: CheckKind::GzxMax { target: 6.0, rel_tol: 0.15 },
                },
                ReferenceCheck {
                    name: "g_xx_max",
                    kind: CheckKind::GxxMax { target: 13.0, rel_tol: 0.15 },
                },
                ReferenceCheck {
                    name: "g_zz_max",
                    kind: CheckKind::GzzMax { target: 0.07, rel_tol: 0.50 },
                },
                ReferenceCheck {
                    name: "g_xz_max",
                    kind: CheckKind::GxzMax { target: 0.2, rel_tol: 0.50 },
                },
                ReferenceCheck {
                    name: "omega_r_range",
                    kind: CheckKind::OmegaRRange { lo: 6.0, hi: 8.0, tol: 0.15 },
                },
                ReferenceCheck {
                    name: "delta_range",
                    kind: CheckKind::DeltaRange { lo: 5.3, hi: 6.3, tol: 0.15 },
                },
                ReferenceCheck {
                    name: "alpha_r_rel_max",
                    kind: CheckKind::AlphaRRelMax { limit: 1e-4 },
                },
            ],
            ReferenceSet::AdaptedArray => &[
                ReferenceCheck {
                    name: "g_zx_max",
                    kind: CheckKind::GzxMax { target: 10.0, rel_tol: 0.15 },
                },
                ReferenceCheck {
                    name: "g_xx_max",
                    kind: CheckKind::GxxMax { target: 9.0, rel_tol: 0.15 },
                },
                ReferenceCheck {
                    name: "g_xz_max",
                    kind: CheckKind::GxzMax { target: 0.5, rel_tol: 0.50 },
                },
                ReferenceCheck {
                    name: "g_zz_max",
                    kind: CheckKind::GzzMax { target: 0.06, rel_tol: 0.50 },
                },
                ReferenceCheck {
                    name: "delta_range",
                    kind: CheckKind::DeltaRange { lo: 4.8, hi: 5.8, tol: 0.2 },
                },
                ReferenceCheck {
                    name: "alpha_q_rel_band",
                    kind: CheckKind::AlphaQRelBand { lo: 0.010, hi: 0.022 },
                },
                ReferenceCheck {
                    name: "k_crit",
                    kind: CheckKind::CriticalJunctionCount { target: 3.3, rel_tol: 0.10 },
                },
            ],
        }
    }
}

/// Sweeps a reference design over one flux period at zero qubit bias and
/// grades every frozen check. `points` is the sweep resolution; the
/// published bands assume 201.
pub fn run_reference_checks(set: ReferenceSet, points: usize) -> Result<Vec<CheckOutcome>> {
    let params = set.params();
    params.validate()?;
    let grid = SweepGrid::over_period(&params, points);
    let table = sweep::sweep(&params, 0.0, grid)?;
    let features = table.features()?;
    let k_crit = params.critical_junction_count();
    Ok(set
        .checks()
        .iter()
        .map(|check| grade(check, &features, k_crit))
        .collect())
}

fn grade(check: &ReferenceCheck, features: &SweepFeatures, k_crit: Option<f64>) -> CheckOutcome {
    let (pass, detail) = match check.kind {
        CheckKind::GzxMax { target, rel_tol } => {
            in_band(features.g_zx_max, target, rel_tol, "MHz")
        }
        CheckKind::GxxMax { target, rel_tol } => {
            in_band(features.g_xx_max, target, rel_tol, "MHz")
        }
        CheckKind::GzzMax { target, rel_tol } => {
            in_band(features.g_zz_max, target, rel_tol, "MHz")
        }
        CheckKind::GxzMax { target, rel_tol } => {
            in_band(features.g_xz_max, target, rel_tol, "MHz")
        }
        CheckKind::OmegaRRange { lo, hi, tol } => range_in_band(features.omega_r_range, lo, hi, tol),
        CheckKind::DeltaRange { lo, hi, tol } => range_in_band(features.delta_range, lo, hi, tol),
        CheckKind::AlphaQRelBand { lo, hi } => {
            let (observed_lo, observed_hi) = features.alpha_q_rel_range;
            let pass = observed_lo >= lo && observed_hi <= hi;
            let detail = format!(
                "|alpha_q|/Delta spans [{:.4}%, {:.4}%], band [{:.4}%, {:.4}%]",
                100.0 * observed_lo,
                100.0 * observed_hi,
                100.0 * lo,
                100.0 * hi
            );
            (pass, detail)
        }
        CheckKind::AlphaRRelMax { limit } => {
            let observed = features.alpha_r_rel_max;
            let pass = observed <= limit;
            let detail = format!(
                "max |alpha_r|/omega_r = {:.6}%, limit {:.6}%",
                100.0 * observed,
                100.0 * limit
            );
            (pass, detail)
        }
        CheckKind::CriticalJunctionCount { target, rel_tol } => match k_crit {
            Some(value) => in_band(value, target, rel_tol, ""),
            None => (false, "no finite junction-count threshold".to_string()),
        },
    };
    CheckOutcome { name: check.name, pass, detail }
}

fn in_band(observed: f64, target: f64, rel_tol: f64, unit: &str) -> (bool, String) {
    let lo = target * (1.0 - rel_tol);
    let hi = target * (1.0 + rel_tol);
    let pass = observed >= lo && observed <= hi;
    let suffix = if unit.is_empty() { String::new() } else { format!(" {unit}") };
    let verdict = if pass { "in" } else { "outside" };
    (
        pass,
        format!("{observed:.4}{suffix} {verdict} [{lo:.4}, {hi:.4}]"),
    )
}

fn range_in_band(observed: (f64, f64), lo: f64, hi: f64, tol: f64) -> (bool, String) {
    let (observed_lo, observed_hi) = observed;
    let lo_ok = (observed_lo - lo).abs() <= tol;
    let hi_ok = (observed_hi - hi).abs() <= tol;
    let lo_verdict = if lo_ok { "in" } else { "outside" };
    let hi_verdict = if hi_ok { "in" } else { "outside" };
    (
        lo_ok && hi_ok,
        format!(
            "min {:.4} GHz {} [{:.4}, {:.4}]; max {:.4} GHz {} [{:.4}, {:.4}]",
            observed_lo,
            lo_verdict,
            lo - tol,
            lo + tol,
            observed_hi,
            hi_verdict,
            hi - tol,
            hi + tol
        ),
    )
}
