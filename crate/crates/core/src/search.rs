//! Constrained design search over circuit parameters.
//!
//! The search walks a deterministic grid (nested loops in field order),
//! fixes the resonator capacitance for each candidate so the top of the
//! tuning range lands on the band ceiling, filters by the hardware
//! constraints, and ranks the survivors by an objective on the sweep
//! features. The default objective is the longitudinal coupling peak at
//! zero qubit flux. An optional Latin-hypercube refinement with a recorded
//! seed explores the continuous box around the grid.

use crate::circuit::{CircuitParams, CircuitVariant, FeasibilityReport, FluxBias};
use crate::error::{CoreError, Result};
use crate::physconst::KAPPA_C;
use crate::quantizer;
use crate::sweep::{self, SweepFeatures, SweepGrid};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Inclusive linear range of one real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRange {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl ParamRange {
    pub fn fixed(value: f64) -> Self {
        Self { min: value, max: value, n: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(CoreError::Domain("parameter range needs at least one sample".into()));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.max >= self.min) {
            return Err(CoreError::Domain(format!(
                "parameter range [{}, {}] is not ordered",
                self.min, self.max
            )));
        }
        if self.n > 1 && self.max == self.min {
            return Err(CoreError::Domain(
                "degenerate range cannot carry multiple samples".into(),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.min];
        }
        (0..self.n)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

/// Optional randomized refinement around the grid.
#[derive(Debug, Clone, Copy)]
pub struct LhsSettings {
    pub samples: usize,
    pub seed: u64,
}

/// The box a search explores, plus the constraints candidates must meet.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub variant: CircuitVariant,
    /// Qubit junction energy, GHz.
    pub e_jq: ParamRange,
    /// Total branch junction energy, GHz.
    pub e_jsigma: ParamRange,
    /// Junction asymmetry. None means: search symmetric, then tune d so the
    /// transverse and longitudinal coupling peaks match.
    pub d: Option<ParamRange>,
    /// Qubit shunt capacitance, fF.
    pub c_q: ParamRange,
    /// Shunt inductance, nH.
    pub l: ParamRange,
    /// Series inductance, nH; required for the Adapted variant.
    pub l_a: Option<ParamRange>,
    /// Junctions per branch, inclusive.
    pub k: (u32, u32),
    /// Inductance asymmetry, held fixed.
    pub delta_l: f64,
    /// Resonator band, GHz.
    pub f_lo: f64,
    pub f_hi: f64,
    /// Smallest allowed |omega_r - Delta| over the sweep, GHz.
    pub separation: f64,
    /// Per-junction charging energy for the array checks, GHz.
    pub e_ci: Option<f64>,
    /// Sweep resolution used to evaluate each candidate.
    pub points: usize,
    pub lhs: Option<LhsSettings>,
}

impl SearchSpace {
    /// A space with everything pinned to one value, band 6-8 GHz,
    /// half-GHz separation, 101-point evaluation sweeps.
    pub fn pinned(params: &CircuitParams) -> Self {
        Self {
            variant: params.variant,
            e_jq: ParamRange::fixed(params.e_jq),
            e_jsigma: ParamRange::fixed(params.e_jsigma),
            d: Some(ParamRange::fixed(params.d)),
            c_q: ParamRange::fixed(params.c_q),
            l: ParamRange::fixed(params.l),
            l_a: params.l_a.map(ParamRange::fixed),
            k: (params.k, params.k),
            delta_l: params.delta_l,
            f_lo: 6.0,
            f_hi: 8.0,
            separation: 0.5,
            e_ci: None,
            points: 101,
            lhs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        self.e_jq.validate()?;
        self.e_jsigma.validate()?;
        if let Some(d) = &self.d {
            d.validate()?;
        }
        self.c_q.validate()?;
        self.l.validate()?;
        if let Some(l_a) = &self.l_a {
            l_a.validate()?;
        }
        if matches!(self.variant, CircuitVariant::Adapted) != self.l_a.is_some() {
            return Err(CoreError::Domain(
                "series-inductance range goes with the Adapted variant and only it".into(),
            ));
        }
        if self.k.1 < self.k.0 || self.k.0 < 1 {
            return Err(CoreError::Domain(format!(
                "junction-count range {:?} is not ordered",
                self.k
            )));
        }
        if !(self.f_lo > 0.0 && self.f_hi > self.f_lo) {
            return Err(CoreError::Domain(format!(
                "band must satisfy 0 < f_lo < f_hi, got [{}, {}]",
                self.f_lo, self.f_hi
            )));
        }
        if !(self.separation >= 0.0) {
            return Err(CoreError::Domain("separation must be non-negative".into()));
        }
        if self.points < 5 {
            return Err(CoreError::Domain(
                "candidate evaluation needs at least 5 sweep points".into(),
            ));
        }
        Ok(())
    }
}

/// One feasible candidate and its objective value.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub params: CircuitParams,
    pub objective: f64,
}

/// Outcome of a search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best: CircuitParams,
    pub objective: f64,
    /// Features of the best candidate at zero qubit flux.
    pub features: SweepFeatures,
    /// Full constraint report for the best candidate.
    pub report: FeasibilityReport,
    /// Feasible candidates, best first, at most ten.
    pub ranked: Vec<Candidate>,
    /// Candidates examined in total.
    pub evaluated: usize,
    /// Candidates passing every constraint.
    pub feasible: usize,
    /// Rejection counts by constraint name.
    pub rejections: Vec<(String, usize)>,
    /// Seed of the randomized refinement, when one ran.
    pub seed: Option<u64>,
}

/// Objective on the zero-qubit-flux sweep features; larger is better.
pub type Objective = fn(&SweepFeatures) -> f64;

/// Default objective: the longitudinal coupling peak.
pub fn longitudinal_peak(features: &SweepFeatures) -> f64 {
    features.g_zx_max
}

/// Resonator capacitance that puts the top of the tuning range at `f_hi`.
///
/// The resonator curvature at zero flux does not involve the capacitance,
/// so the fit is a single quantization at the zero-flux minimum. The
/// incoming capacitance value is ignored.
pub fn fix_capacitance(params: &CircuitParams, f_hi: f64) -> Result<f64> {
    if !(f_hi > 0.0) {
        return Err(CoreError::Domain(format!(
            "band ceiling must be positive, got {f_hi} GHz"
        )));
    }
    let mut probe = params.clone();
    probe.c = 100.0;
    probe.validate()?;
    let flux = FluxBias::new(0.0, 0.0);
    let minimum = quantizer::find_minimum(&probe, flux)?;
    let taylor = quantizer::taylor_expand(&probe, flux, minimum)?;
    let c02 = taylor.c[0][2];
    Ok(16.0 * KAPPA_C * c02 / (f_hi * f_hi))
}

struct Tally(BTreeMap<&'static str, usize>);

impl Tally {
    fn new() -> Self {
        Self(BTreeMap::new())
    }
    fn bump(&mut self, name: &'static str) {
        *self.0.entry(name).or_insert(0) += 1;
    }
}

/// Evaluate one candidate against every constraint. Ok(Some) carries the
/// objective, Ok(None) means rejected (tallied).
fn evaluate(
    space: &SearchSpace,
    params: &CircuitParams,
    objective: Objective,
    tally: &mut Tally,
) -> Result<Option<f64>> {
    if params.validate().is_err() {
        tally.bump("invalid parameters");
        return Ok(None);
    }
    let mut params = params.clone();
    params.c = match fix_capacitance(&params, space.f_hi) {
        Ok(c) => c,
        Err(_) => {
            tally.bump("capacitance fit");
            return Ok(None);
        }
    };
    match params.invertibility_margin() {
        Ok(m) if m > 0.0 => {}
        _ => {
            tally.bump("branch invertibility");
            return Ok(None);
        }
    }
    match params.variant {
        CircuitVariant::SingleJunction | CircuitVariant::Array => {
            let l_crit = params
                .critical_inductance()
                .expect("defined for direct variants");
            if params.l >= l_crit {
                tally.bump("double well");
                return Ok(None);
            }
        }
        CircuitVariant::Adapted => match params.critical_junction_count() {
            Some(kc) if (params.k as f64) > kc => {}
            _ => {
                tally.bump("double well");
                return Ok(None);
            }
        },
    }
    if params.k > 1 {
        if let Some(ci) = space.e_ci {
            let (e_j1, e_j2) = params.branch_junction_energies();
            let worst = e_j1.min(e_j2);
            if (8.0 * ci * worst).sqrt() <= 20.0 || worst / ci < 100.0 {
                tally.bump("array fabrication");
                return Ok(None);
            }
        }
    }
    let table = match sweep::sweep(&params, 0.0, SweepGrid::over_period(&params, space.points)) {
        Ok(t) => t,
        Err(_) => {
            tally.bump("sweep failure");
            return Ok(None);
        }
    };
    let features = table.features()?;
    if features.omega_r_range.0 < space.f_lo - 1e-6
        || features.omega_r_range.1 > space.f_hi + 1e-6
    {
        tally.bump("resonator band");
        return Ok(None);
    }
    let min_gap = table
        .rows
        .iter()
        .map(|p| (p.omega_r - p.delta).abs())
        .fold(f64::INFINITY, f64::min);
    if min_gap < space.separation {
        tally.bump("mode separation");
        return Ok(None);
    }
    // The qubit must stay measurably anharmonic everywhere: a transition
    // resolvable within a hundred periods.
    let floor = 1.0 / (200.0 * std::f64::consts::PI);
    if features.alpha_q_rel_range.0 < floor {
        tally.bump("qubit anharmonicity");
        return Ok(None);
    }
    Ok(Some(objective(&features)))
}

fn grid_candidates(space: &SearchSpace) -> Vec<CircuitParams> {
    let d_values = match &space.d {
        Some(range) => range.values(),
        None => vec![0.0],
    };
    let l_a_values: Vec<Option<f64>> = match &space.l_a {
        Some(range) => range.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut out = Vec::new();
    for &e_jq in &space.e_jq.values() {
        for &e_jsigma in &space.e_jsigma.values() {
            for &d in &d_values {
                for &c_q in &space.c_q.values() {
                    for &l in &space.l.values() {
                        for &l_a in &l_a_values {
                            for k in space.k.0..=space.k.1 {
                                out.push(CircuitParams {
                                    variant: space.variant,
                                    e_jq,
                                    e_jsigma,
                                    d,
                                    c: 100.0,
                                    c_q,
                                    l,
                                    l_a,
                                    k,
                                    delta_l: space.delta_l,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Latin-hypercube samples over the continuous box; the junction count is
/// taken from the incumbent best candidate.
fn lhs_candidates(space: &SearchSpace, lhs: LhsSettings, k: u32) -> Vec<CircuitParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(lhs.seed);
    let n = lhs.samples;
    let mut axis = |range: &ParamRange| -> Vec<f64> {
        if range.max == range.min {
            return vec![range.min; n];
        }
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(&mut rng);
        strata
            .into_iter()
            .map(|s| {
                let u: f64 = rng.gen();
                range.min + (range.max - range.min) * (s as f64 + u) / n as f64
            })
            .collect()
    };
    let e_jq = axis(&space.e_jq);
    let e_jsigma = axis(&space.e_jsigma);
    let d = space.d.as_ref().map(|r| axis(r));
    let c_q = axis(&space.c_q);
    let l = axis(&space.l);
    let l_a = space.l_a.as_ref().map(|r| axis(r));
    (0..n)
        .map(|i| CircuitParams {
            variant: space.variant,
            e_jq: e_jq[i],
            e_jsigma: e_jsigma[i],
            d: d.as_ref().map(|v| v[i]).unwrap_or(0.0),
            c: 100.0,
            c_q: c_q[i],
            l: l[i],
            l_a: l_a.as_ref().map(|v| v[i]),
            k,
            delta_l: space.delta_l,
        })
        .collect()
}

/// Balance the transverse peak against the longitudinal peak by bisection
/// on the junction asymmetry. The transverse lobe grows monotonically with
/// d while the longitudinal peak barely moves.
fn balance_asymmetry(space: &SearchSpace, params: &CircuitParams) -> Result<f64> {
    let imbalance = |d: f64| -> Result<f64> {
        let mut p = params.clone();
        p.d = d;
        p.c = fix_capacitance(&p, space.f_hi)?;
        let f = sweep::sweep(&p, 0.0, SweepGrid::over_period(&p, space.points))?.features()?;
        Ok(f.g_xx_max - f.g_zx_max)
    };
    let mut lo = 0.0;
    let mut hi = 0.95;
    if imbalance(lo)? > 0.0 {
        return Ok(lo);
    }
    if imbalance(hi)? < 0.0 {
        return Ok(hi);
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if imbalance(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Run the search. `objective` defaults to the longitudinal coupling peak
/// at zero qubit flux; candidates that violate any constraint never reach
/// it. Deterministic: the grid order is fixed and the refinement is seeded.
pub fn search(space: &SearchSpace, objective: Option<Objective>) -> Result<SearchResult> {
    space.validate()?;
    let objective = objective.unwrap_or(longitudinal_peak);
    let mut tally = Tally::new();
    let mut feasible: Vec<Candidate> = Vec::new();
    let mut evaluated = 0usize;

    let run = |params: &CircuitParams,
               tally: &mut Tally,
               feasible: &mut Vec<Candidate>,
               evaluated: &mut usize|
     -> Result<()> {
        *evaluated += 1;
        if let Some(score) = evaluate(space, params, objective, tally)? {
            let mut winner = params.clone();
            winner.c = fix_capacitance(&winner, space.f_hi)?;
            feasible.push(Candidate {
                params: winner,
                objective: score,
            });
        }
        Ok(())
    };

    for params in grid_candidates(space) {
        run(&params, &mut tally, &mut feasible, &mut evaluated)?;
    }

    let mut seed = None;
    if let Some(lhs) = space.lhs {
        if let Some(best_so_far) = feasible
            .iter()
            .max_by(|a, b| a.objective.total_cmp(&b.objective))
        {
            let k = best_so_far.params.k;
            seed = Some(lhs.seed);
            for params in lhs_candidates(space, lhs, k) {
                run(&params, &mut tally, &mut feasible, &mut evaluated)?;
            }
        }
    }

    if feasible.is_empty() {
        let detail: Vec<String> = tally
            .0
            .iter()
            .map(|(name, count)| format!("{name}: {count}"))
            .collect();
        return Err(CoreError::Infeasible(format!(
            "no candidate out of {evaluated} met every constraint ({})",
            detail.join(", ")
        )));
    }

    // Best first; stable under ties because the sort is stable and the
    // iteration order is fixed.
    feasible.sort_by(|a, b| b.objective.total_cmp(&a.objective));
    let feasible_count = feasible.len();
    let mut best = feasible[0].params.clone();
    let mut best_objective = feasible[0].objective;

    // With the asymmetry left free, settle it now on the winner.
    if space.d.is_none() {
        best.d = balance_asymmetry(space, &best)?;
        best.c = fix_capacitance(&best, space.f_hi)?;
        let table = sweep::sweep(&best, 0.0, SweepGrid::over_period(&best, space.points))?;
        best_objective = objective(&table.features()?);
    }

    let table = sweep::sweep(&best, 0.0, SweepGrid::over_period(&best, space.points))?;
    let features = table.features()?;
    let report = best.feasibility_check(space.f_lo, space.f_hi, space.e_ci)?;
    feasible.truncate(10);

    Ok(SearchResult {
        best,
        objective: best_objective,
        features,
        report,
        ranked: feasible,
        evaluated,
        feasible: feasible_count,
        rejections: tally
            .0
            .into_iter()
            .map(|(name, count)| (name.to_string(), count))
            .collect(),
        seed,
    })
}
