//! Full circuit: an anharmonic qubit mode and a resonator mode coupled by a
//! pair of flux-threaded branches.
//!
//! The two branch phases are (phi_r + phi_q)/2 and (phi_r - phi_q)/2, so the
//! branches convert mode asymmetries (junction asymmetry d, inductance
//! asymmetry delta_l) and the shared loop flux into qubit-resonator
//! coupling. A separate junction with its own loop flux phi_xb closes the
//! qubit mode.
//!
//! Units: energies GHz, inductances nH, capacitances fF, phases and fluxes
//! rad.

use crate::branch::{Branch, BranchKind};
use crate::error::{CoreError, Result};
use crate::physconst::{self, KAPPA_L};
use crate::quantizer;
use crate::search;

/// External flux operating point, both loops, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxBias {
    /// Flux through each coupling-branch loop.
    pub phi_x: f64,
    /// Flux through the qubit loop.
    pub phi_xb: f64,
}

impl FluxBias {
    pub fn new(phi_x: f64, phi_xb: f64) -> Self {
        Self { phi_x, phi_xb }
    }
}

/// Which circuit realization the parameters describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitVariant {
    /// One junction per branch (k = 1), no series inductance.
    SingleJunction,
    /// k junctions per branch, no series inductance.
    Array,
    /// k junctions per branch behind a series inductance per branch.
    Adapted,
}

/// Electrical parameters of the full circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitParams {
    pub variant: CircuitVariant,
    /// Qubit junction energy, GHz.
    pub e_jq: f64,
    /// Total branch-junction energy: sum of the two per-junction energies, GHz.
    pub e_jsigma: f64,
    /// Branch junction asymmetry; per-junction energies are e_jsigma (1 +- d)/2.
    pub d: f64,
    /// Resonator capacitance, fF.
    pub c: f64,
    /// Extra qubit-shunt capacitance, fF.
    pub c_q: f64,
    /// Shunt inductance per branch, nH (symmetric part).
    pub l: f64,
    /// Series inductance per branch, nH. Required for Adapted, absent otherwise.
    pub l_a: Option<f64>,
    /// Junctions per branch array.
    pub k: u32,
    /// Relative inductance asymmetry; branch inductances are l (1 +- delta_l).
    pub delta_l: f64,
}

/// Outcome of the design-constraint checks for one parameter set.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    /// Largest shunt inductance keeping the resonator band above its floor
    /// (capacitance refit at each trial value). None if no finite bound was
    /// bracketed.
    pub l_max: Option<f64>,
    /// Shunt inductance above which the qubit well splits at the worst-case
    /// flux point. Defined for the variants without series inductance.
    pub l_crit: Option<f64>,
    /// Junction count below which the qubit well splits at the worst-case
    /// flux point. Defined for the Adapted variant.
    pub k_crit: Option<f64>,
    /// Resonator stays inside [f_lo, f_hi] over a zero-qubit-flux sweep with
    /// the capacitance as given.
    pub band_ok: bool,
    /// Single-well condition at the worst-case flux point.
    pub double_well_ok: bool,
    /// Junction-array fabrication constraints (plasma frequency and
    /// E_J/E_C ratio), when a per-junction charging energy is supplied.
    pub array_ok: bool,
    /// Worst-case branch invertibility margin, k gamma / beta - 1.
    pub invertibility_margin: f64,
    /// Human-readable description of each violated constraint.
    pub messages: Vec<String>,
}

impl FeasibilityReport {
    pub fn all_ok(&self) -> bool {
        self.band_ok && self.double_well_ok && self.array_ok && self.invertibility_margin > 0.0
    }
}

impl CircuitParams {
    /// Check ranges and variant consistency.
    pub fn validate(&self) -> Result<()> {
        if !(self.e_jq > 0.0) {
            return Err(CoreError::Domain("qubit junction energy must be positive".into()));
        }
        if !(self.e_jsigma > 0.0) {
            return Err(CoreError::Domain("branch junction energy must be positive".into()));
        }
        if !(self.d.abs() < 1.0) {
            return Err(CoreError::Domain(format!(
                "junction asymmetry must satisfy |d| < 1, got {}",
                self.d
            )));
        }
        if !(self.c > 0.0) {
            return Err(CoreError::Domain("resonator capacitance must be positive".into()));
        }
        if !(self.c_q >= 0.0) {
            return Err(CoreError::Domain("qubit capacitance must be non-negative".into()));
        }
        if !(self.l > 0.0) {
            return Err(CoreError::Domain("shunt inductance must be positive".into()));
        }
        if !(self.delta_l.abs() < 1.0) {
            return Err(CoreError::Domain(format!(
                "inductance asymmetry must satisfy |delta_l| < 1, got {}",
                self.delta_l
            )));
        }
        if self.k < 1 {
            return Err(CoreError::Domain("junction count must be at least 1".into()));
        }
        match self.variant {
            CircuitVariant::SingleJunction => {
                if self.k != 1 {
                    return Err(CoreError::Domain(
                        "single-junction variant requires k = 1".into(),
                    ));
                }
                if self.l_a.is_some() {
                    return Err(CoreError::Domain(
                        "single-junction variant takes no series inductance".into(),
                    ));
                }
            }
            CircuitVariant::Array => {
                if self.l_a.is_some() {
                    return Err(CoreError::Domain(
                        "array variant takes no series inductance".into(),
                    ));
                }
            }
            CircuitVariant::Adapted => match self.l_a {
                Some(l_a) if l_a > 0.0 => {}
                _ => {
                    return Err(CoreError::Domain(
                        "adapted variant requires a positive series inductance".into(),
                    ));
                }
            },
        }
        Ok(())
    }

    /// Per-junction energies of the two branch arrays, GHz.
    pub fn branch_junction_energies(&self) -> (f64, f64) {
        (
            self.e_jsigma * (1.0 + self.d) / 2.0,
            self.e_jsigma * (1.0 - self.d) / 2.0,
        )
    }

    /// Shunt inductances of the two branches, nH.
    pub fn branch_inductances(&self) -> (f64, f64) {
        (
            self.l * (1.0 + self.delta_l),
            self.l * (1.0 - self.delta_l),
        )
    }

    /// The two coupling branches. Branch 1 sees (phi_r + phi_q)/2, branch 2
    /// sees (phi_r - phi_q)/2.
    pub fn branches(&self) -> Result<(Branch, Branch)> {
        let (e_j1, e_j2) = self.branch_junction_energies();
        let (l_1, l_2) = self.branch_inductances();
        let kind = match self.variant {
            CircuitVariant::SingleJunction | CircuitVariant::Array => BranchKind::Direct,
            CircuitVariant::Adapted => BranchKind::SeriesInductance {
                l_a: self.l_a.unwrap_or(0.0),
            },
        };
        Ok((
            Branch::new(kind, e_j1, self.k, l_1, 0)?,
            Branch::new(kind, e_j2, self.k, l_2, 0)?,
        ))
    }

    /// Qubit-mode charging energy, GHz: the qubit island sees the shunt
    /// capacitance plus half the resonator capacitance network.
    pub fn charging_energy(&self) -> Result<f64> {
        physconst::charging_energy(self.c_q, self.c)
    }

    /// Resonator-mode charging energy, GHz.
    pub fn resonator_charging_energy(&self) -> Result<f64> {
        physconst::resonator_charging_energy(self.c)
    }

    /// Potential energy surface U(phi_q, phi_r) at the given flux, GHz.
    pub fn potential(&self, flux: FluxBias, phi_q: f64, phi_r: f64) -> Result<f64> {
        let (b1, b2) = self.branches()?;
        let u = 0.5 * (phi_r + phi_q);
        let v = 0.5 * (phi_r - phi_q);
        Ok(b1.energy(u, flux.phi_x)?
            + b2.energy(v, flux.phi_x)?
            - self.e_jq * (phi_q + flux.phi_xb).cos())
    }

    /// All partial derivatives of the potential through total order four.
    ///
    /// Entry [m][n] holds d^(m+n) U / d phi_q^m d phi_r^n; entry [0][0] is
    /// the potential itself. Entries with m + n > 4 stay zero.
    pub fn potential_partials(
        &self,
        flux: FluxBias,
        phi_q: f64,
        phi_r: f64,
    ) -> Result<[[f64; 5]; 5]> {
        let (b1, b2) = self.branches()?;
        let u = 0.5 * (phi_r + phi_q);
        let v = 0.5 * (phi_r - phi_q);
        let d1 = b1.derivatives(u, flux.phi_x, 4)?;
        let d2 = b2.derivatives(v, flux.phi_x, 4)?;

        let arg = phi_q + flux.phi_xb;
        let (sin_a, cos_a) = arg.sin_cos();
        // Qubit-junction derivatives by order 0..4 in phi_q.
        let jq = [
            -self.e_jq * cos_a,
            self.e_jq * sin_a,
            self.e_jq * cos_a,
            -self.e_jq * sin_a,
            -self.e_jq * cos_a,
        ];

        let mut out = [[0.0; 5]; 5];
        out[0][0] = b1.energy(u, flux.phi_x)? + b2.energy(v, flux.phi_x)? + jq[0];
        for m in 0..=4usize {
            for n in 0..=4usize {
                let t = m + n;
                if t == 0 || t > 4 {
                    continue;
                }
                // Each branch argument moves by half a radian per radian of
                // either mode phase; the second branch sees phi_q reversed.
                let scale = 0.5f64.powi(t as i32);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let mut val = scale * (d1[t - 1] + sign * d2[t - 1]);
                if n == 0 {
                    val += jq[m];
                }
                out[m][n] = val;
            }
        }
        Ok(out)
    }

    /// Worst-case invertibility margin over the two branches.
    pub fn invertibility_margin(&self) -> Result<f64> {
        let (b1, b2) = self.branches()?;
        Ok(b1.invertibility_margin().min(b2.invertibility_margin()))
    }

    /// Shunt inductance above which the qubit well splits, for the variants
    /// without series inductance. Solved self-consistently at the worst-case
    /// flux point (branch flux at half period, qubit flux at half quantum).
    pub fn critical_inductance(&self) -> Option<f64> {
        match self.variant {
            CircuitVariant::SingleJunction | CircuitVariant::Array => {
                Some(KAPPA_L / (2.0 * self.e_jq + self.e_jsigma / (2.0 * self.k as f64)))
            }
            CircuitVariant::Adapted => None,
        }
    }

    /// Junction count below which the qubit well splits, for the Adapted
    /// variant. Found by bisection on the qubit-direction curvature at the
    /// worst-case flux point, treating the count as continuous.
    pub fn critical_junction_count(&self) -> Option<f64> {
        let l_a = match (self.variant, self.l_a) {
            (CircuitVariant::Adapted, Some(l_a)) => l_a,
            _ => return None,
        };
        let (e_j1, e_j2) = self.branch_junction_energies();
        let (l_1, l_2) = self.branch_inductances();
        let stiff = KAPPA_L / l_a;
        let betas = [l_a * e_j1 / KAPPA_L, l_a * e_j2 / KAPPA_L];
        let gammas = [1.0 + l_a / l_1, 1.0 + l_a / l_2];
        // Curvature of the potential along phi_q at the symmetric stationary
        // point, with both fluxes at their worst-case values. Monotone
        // increasing in the (continuous) junction count.
        let curvature = |kk: f64| -> f64 {
            let mut c = -self.e_jq;
            for i in 0..2 {
                c += 0.25 * stiff * (1.0 - 1.0 / (gammas[i] - betas[i] / kk));
            }
            c
        };
        let k_floor = (betas[0] / gammas[0]).max(betas[1] / gammas[1]);
        let limit = -self.e_jq
            + 0.25 * stiff * (2.0 - 1.0 / gammas[0] - 1.0 / gammas[1]);
        if limit <= 0.0 {
            // Even an infinite array keeps the well split.
            return None;
        }
        let mut lo = k_floor * (1.0 + 1e-9) + 1e-12;
        let mut hi = lo + 1.0;
        let mut guard = 0;
        while curvature(hi) <= 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 60 {
                return None;
            }
        }
        if curvature(lo) >= 0.0 {
            // Single well all the way down to the invertibility floor.
            return Some(k_floor);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if curvature(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Evaluate the design constraints against a resonator band
    /// [f_lo, f_hi] (GHz). `e_ci` is the per-junction charging energy (GHz)
    /// for the array fabrication checks; pass None to skip those.
    pub fn feasibility_check(
        &self,
        f_lo: f64,
        f_hi: f64,
        e_ci: Option<f64>,
    ) -> Result<FeasibilityReport> {
        self.validate()?;
        if !(f_lo > 0.0 && f_hi > f_lo) {
            return Err(CoreError::Domain(format!(
                "resonator band must satisfy 0 < f_lo < f_hi, got [{f_lo}, {f_hi}]"
            )));
        }
        let mut messages = Vec::new();

        let invertibility_margin = self.invertibility_margin()?;
        if invertibility_margin <= 0.0 {
            messages.push(format!(
                "branch phase not single-valued: invertibility margin {invertibility_margin:.4}"
            ));
        }

        let l_crit = self.critical_inductance();
        let k_crit = if invertibility_margin > 0.0 {
            self.critical_junction_count()
        } else {
            None
        };
        let double_well_ok = match self.variant {
            CircuitVariant::SingleJunction | CircuitVariant::Array => {
                let lc = l_crit.expect("defined for variants without series inductance");
                if self.l < lc {
                    true
                } else {
                    messages.push(format!(
                        "qubit well splits at worst-case flux: L = {:.4} nH >= L_crit = {:.4} nH",
                        self.l, lc
                    ));
                    false
                }
            }
            CircuitVariant::Adapted => match k_crit {
                Some(kc) if (self.k as f64) > kc => true,
                Some(kc) => {
                    messages.push(format!(
                        "qubit well splits at worst-case flux: k = {} <= k_crit = {:.3}",
                        self.k, kc
                    ));
                    false
                }
                None => {
                    messages.push(
                        "qubit well splits at worst-case flux for every junction count".into(),
                    );
                    false
                }
            },
        };

        // Resonator band with the capacitance as given, scanned at zero
        // qubit-loop flux. Skip when the well is already split.
        let band_ok = if invertibility_margin > 0.0 && double_well_ok {
            match self.resonator_band_extremes() {
                Ok((w_min, w_max)) => {
                    let mut ok = true;
                    if w_min < f_lo - 1e-9 {
                        messages.push(format!(
                            "resonator leaves the band: min {w_min:.4} GHz < {f_lo:.4} GHz"
                        ));
                        ok = false;
                    }
                    if w_max > f_hi + 1e-9 {
                        messages.push(format!(
                            "resonator leaves the band: max {w_max:.4} GHz > {f_hi:.4} GHz"
                        ));
                        ok = false;
                    }
                    ok
                }
                Err(err) => {
                    messages.push(format!("resonator band sweep failed: {err}"));
                    false
                }
            }
        } else {
            false
        };

        let l_max = if invertibility_margin > 0.0 {
            self.max_band_inductance(f_lo, f_hi)
        } else {
            None
        };
        if l_max.is_none() {
            messages.push("no finite band-limited inductance bracketed".into());
        }

        let array_ok = match (self.k > 1, e_ci) {
            (true, Some(ci)) => {
                if !(ci > 0.0) {
                    return Err(CoreError::Domain(
                        "per-junction charging energy must be positive".into(),
                    ));
                }
                let (e_j1, e_j2) = self.branch_junction_energies();
                let mut ok = true;
                for (label, e_ji) in [("larger", e_j1), ("smaller", e_j2)] {
                    let plasma = (8.0 * ci * e_ji).sqrt();
                    if plasma <= 20.0 {
                        messages.push(format!(
                            "array plasma frequency too low on the {label} branch: \
                             {plasma:.2} GHz <= 20 GHz"
                        ));
                        ok = false;
                    }
                    let ratio = e_ji / ci;
                    if ratio < 100.0 {
                        messages.push(format!(
                            "array junctions too charge-sensitive on the {label} branch: \
                             E_J/E_C = {ratio:.1} < 100"
                        ));
                        ok = false;
                    }
                }
                ok
            }
            _ => true,
        };

        Ok(FeasibilityReport {
            l_max,
            l_crit,
            k_crit,
            band_ok,
            double_well_ok,
            array_ok,
            invertibility_margin,
            messages,
        })
    }

    /// Resonator frequency extremes over the branch-flux period at zero
    /// qubit-loop flux. The frequency is monotone between the period's
    /// endpoints, so the endpoints are the extremes.
    fn resonator_band_extremes(&self) -> Result<(f64, f64)> {
        let top = quantizer::analyze_point(self, FluxBias::new(0.0, 0.0))?;
        let bottom =
            quantizer::analyze_point(self, FluxBias::new(self.k as f64 * std::f64::consts::PI, 0.0))?;
        let (a, b) = (top.omega_r, bottom.omega_r);
        Ok((a.min(b), a.max(b)))
    }

    /// Largest shunt inductance that keeps the resonator above f_lo after
    /// refitting the capacitance so the top of the tuning range sits at
    /// f_hi. Bisection on the trial inductance; the band narrows
    /// monotonically as the inductance grows.
    fn max_band_inductance(&self, f_lo: f64, f_hi: f64) -> Option<f64> {
        let fits = |l_try: f64| -> bool {
            let mut trial = self.clone();
            trial.l = l_try;
            let c = match search::fix_capacitance(&trial, f_hi) {
                Ok(c) => c,
                Err(_) => return false,
            };
            trial.c = c;
            match trial.resonator_band_extremes() {
                Ok((w_min, _)) => w_min >= f_lo,
                Err(_) => false,
            }
        };
        let mut lo = 1e-3;
        if !fits(lo) {
            return None;
        }
        let mut hi = self.l.max(1.0);
        let mut guard = 0;
        while fits(hi) {
            lo = hi;
            hi *= 2.0;
            guard += 1;
            if guard > 20 {
                return None;
            }
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}
