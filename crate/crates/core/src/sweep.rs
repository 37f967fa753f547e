//! Flux sweeps of the spectrum, landmark extraction, and the CSV exchange
//! format.
//!
//! A sweep walks the branch flux across a grid at fixed qubit flux,
//! warm-starting the minimum search from row to row so the tracked well
//! stays on one continuous branch. Feature extraction reduces a table to
//! the numbers a designer compares against: lobe magnitudes of each
//! coupling channel, the transverse-coupling zero crossing, and frequency
//! and anharmonicity ranges.
//!
//! Two magnitude conventions are deliberate: the even channels (g_xx,
//! g_zz) are reported at the lobe nearest zero flux, which is where a
//! device is parked for those couplings; the odd channels (g_zx, g_xz)
//! vanish at the sweep edges, so their global interior maximum is the
//! operating value.

use crate::circuit::{CircuitParams, FluxBias};
use crate::error::{CoreError, Result};
use crate::quantizer::{self, SpectrumPoint};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Branch-flux grid for a sweep, radians.
#[derive(Debug, Clone, Copy)]
pub struct SweepGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl SweepGrid {
    /// The full tuning period [0, k pi] of the given circuit.
    pub fn over_period(params: &CircuitParams, points: usize) -> Self {
        Self {
            start: 0.0,
            end: params.k as f64 * std::f64::consts::PI,
            points,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(CoreError::Domain("sweep needs at least one point".into()));
        }
        if self.points > 1 && !(self.end > self.start) {
            return Err(CoreError::Domain(
                "sweep grid must be strictly ascending".into(),
            ));
        }
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(CoreError::Domain("sweep grid must be finite".into()));
        }
        Ok(())
    }

    /// Flux value of row `i`.
    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            self.start
        } else {
            self.start + (self.end - self.start) * i as f64 / (self.points - 1) as f64
        }
    }
}

/// One sweep: rows ascending in branch flux at fixed qubit flux.
#[derive(Debug, Clone)]
pub struct SweepTable {
    /// The circuit swept. None when the table was read back from a file,
    /// which stores only the rows.
    pub params: Option<CircuitParams>,
    pub phi_xb: f64,
    pub rows: Vec<SpectrumPoint>,
    pub version: String,
}

/// Landmark numbers extracted from one sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepFeatures {
    /// |g_xx| at the lobe nearest zero flux, MHz.
    pub g_xx_max: f64,
    /// Largest |g_zx| over the sweep, MHz.
    pub g_zx_max: f64,
    /// Branch flux of the g_zx peak, rad.
    pub g_zx_max_flux: f64,
    /// Largest |g_xz| over the sweep, MHz.
    pub g_xz_max: f64,
    /// |g_zz| at the lobe nearest zero flux, MHz.
    pub g_zz_max: f64,
    /// Refined location of the first g_xx sign change, rad.
    pub gxx_zero_flux: Option<f64>,
    /// How many sign changes g_xx makes over the sweep.
    pub gxx_crossing_count: usize,
    /// (min, max) resonator frequency, GHz.
    pub omega_r_range: (f64, f64),
    /// (min, max) qubit 0-1 transition, GHz.
    pub delta_range: (f64, f64),
    /// (min, max) of |alpha_q_rel|.
    pub alpha_q_rel_range: (f64, f64),
    /// Largest |alpha_r_rel|.
    pub alpha_r_rel_max: f64,
}

/// Exact column header of the exchange format.
pub const CSV_HEADER: &str = "phi_x_rad,phi_Xb_rad,omega_r_GHz,Delta_GHz,omega_q_GHz,\
alpha_q_rel,alpha_r_rel,g_xx_MHz,g_zx_MHz,g_xz_MHz,g_zz_MHz,eta,min_q_rad,min_r_rad";

/// Sweep the branch flux at fixed qubit flux.
pub fn sweep(params: &CircuitParams, phi_xb: f64, grid: SweepGrid) -> Result<SweepTable> {
    params.validate()?;
    grid.validate()?;
    let mut rows = Vec::with_capacity(grid.points);
    let mut warm: Option<(f64, f64)> = None;
    for i in 0..grid.points {
        let flux = FluxBias::new(grid.value(i), phi_xb);
        let minimum = match warm {
            // Track the previous row's well; fall back to the full search
            // if the short step fails.
            Some(prev) => quantizer::newton_minimize(params, flux, prev)
                .or_else(|_| quantizer::find_minimum(params, flux))?,
            None => quantizer::find_minimum(params, flux)?,
        };
        warm = Some(minimum);
        rows.push(quantizer::analyze_at_minimum(params, flux, minimum)?);
    }
    Ok(SweepTable {
        params: Some(params.clone()),
        phi_xb,
        rows,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Closed-form counterpart of [`sweep`]: every row comes from
/// [`quantizer::closed_form_point`], so it carries the same restrictions
/// (no series inductance, no inductance split, qubit flux a multiple of pi).
pub fn closed_form_sweep(
    params: &CircuitParams,
    phi_xb: f64,
    grid: SweepGrid,
) -> Result<SweepTable> {
    params.validate()?;
    grid.validate()?;
    let rows = (0..grid.points)
        .map(|i| quantizer::closed_form_point(params, FluxBias::new(grid.value(i), phi_xb)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        params: Some(params.clone()),
        phi_xb,
        rows,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

impl SweepTable {
    pub fn features(&self) -> Result<SweepFeatures> {
        extract_features(self)
    }
}

/// Reduce a sweep to its landmark numbers. Needs at least three rows.
pub fn extract_features(table: &SweepTable) -> Result<SweepFeatures> {
    let rows = &table.rows;
    if rows.len() < 3 {
        return Err(CoreError::Domain(format!(
            "feature extraction needs at least 3 rows, got {}",
            rows.len()
        )));
    }
    let xs: Vec<f64> = rows.iter().map(|p| p.flux.phi_x).collect();
    let gxx: Vec<f64> = rows.iter().map(|p| p.g_xx).collect();
    let gzx: Vec<f64> = rows.iter().map(|p| p.g_zx).collect();
    let gxz: Vec<f64> = rows.iter().map(|p| p.g_xz).collect();
    let gzz: Vec<f64> = rows.iter().map(|p| p.g_zz).collect();

    let (g_zx_max, g_zx_max_flux) = interior_peak(&xs, &gzx);
    let (g_xz_max, _) = interior_peak(&xs, &gxz);
    let g_xx_max = leading_lobe(&gxx);
    let g_zz_max = leading_lobe(&gzz);

    let crossings = sign_changes(&gxx);
    let gxx_zero_flux = crossings.first().map(|&s| refine_root(&xs, &gxx, s));

    let mut omega_r_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut delta_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut alpha_q_rel_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut alpha_r_rel_max: f64 = 0.0;
    for p in rows {
        omega_r_range.0 = omega_r_range.0.min(p.omega_r);
        omega_r_range.1 = omega_r_range.1.max(p.omega_r);
        delta_range.0 = delta_range.0.min(p.delta);
        delta_range.1 = delta_range.1.max(p.delta);
        let aq = p.alpha_q_rel.abs();
        alpha_q_rel_range.0 = alpha_q_rel_range.0.min(aq);
        alpha_q_rel_range.1 = alpha_q_rel_range.1.max(aq);
        alpha_r_rel_max = alpha_r_rel_max.max(p.alpha_r_rel.abs());
    }

    Ok(SweepFeatures {
        g_xx_max,
        g_zx_max,
        g_zx_max_flux,
        g_xz_max,
        g_zz_max,
        gxx_zero_flux,
        gxx_crossing_count: crossings.len(),
        omega_r_range,
        delta_range,
        alpha_q_rel_range,
        alpha_r_rel_max,
    })
}

/// Magnitude of the first local maximum of |g| scanning from the first row.
/// The first row itself counts when the magnitude starts out decreasing.
fn leading_lobe(g: &[f64]) -> f64 {
    let mag: Vec<f64> = g.iter().map(|v| v.abs()).collect();
    let n = mag.len();
    for i in 0..n {
        let left_ok = i == 0 || mag[i] >= mag[i - 1];
        let right_ok = i + 1 == n || mag[i] >= mag[i + 1];
        if left_ok && right_ok {
            if i > 0 && i + 1 < n {
                return quadratic_vertex_value(mag[i - 1], mag[i], mag[i + 1]);
            }
            return mag[i];
        }
    }
    mag[0]
}

/// Global magnitude maximum with quadratic refinement, and its location.
fn interior_peak(xs: &[f64], g: &[f64]) -> (f64, f64) {
    let mag: Vec<f64> = g.iter().map(|v| v.abs()).collect();
    let mut best = 0usize;
    for i in 1..mag.len() {
        if mag[i] > mag[best] {
            best = i;
        }
    }
    if best > 0 && best + 1 < mag.len() {
        let h = xs[best + 1] - xs[best];
        let value = quadratic_vertex_value(mag[best - 1], mag[best], mag[best + 1]);
        let offset = quadratic_vertex_offset(mag[best - 1], mag[best], mag[best + 1]);
        (value, xs[best] + offset.clamp(-1.0, 1.0) * h)
    } else {
        (mag[best], xs[best])
    }
}

/// Peak value of the parabola through three equally spaced samples.
fn quadratic_vertex_value(y0: f64, y1: f64, y2: f64) -> f64 {
    let denom = y0 - 2.0 * y1 + y2;
    if denom.abs() < 1e-14 * (y0.abs() + y1.abs() + y2.abs() + 1e-300) {
        return y1;
    }
    y1 - (y0 - y2) * (y0 - y2) / (8.0 * denom)
}

/// Vertex offset from the middle sample, in units of the spacing.
fn quadratic_vertex_offset(y0: f64, y1: f64, y2: f64) -> f64 {
    let denom = y0 - 2.0 * y1 + y2;
    if denom.abs() < 1e-14 * (y0.abs() + y1.abs() + y2.abs() + 1e-300) {
        return 0.0;
    }
    (y0 - y2) / (2.0 * denom)
}

/// Indexes s where the signal changes sign between rows s and s + 1. A row
/// that is exactly zero counts with its right neighbour.
fn sign_changes(g: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for s in 0..g.len().saturating_sub(1) {
        let a = g[s];
        let b = g[s + 1];
        if a == 0.0 {
            // Counted at the previous interval unless this is the edge.
            if s == 0 && b != 0.0 {
                out.push(s);
            }
            continue;
        }
        if b == 0.0 {
            out.push(s);
            continue;
        }
        if a.signum() != b.signum() {
            out.push(s);
        }
    }
    out
}

/// Refine the root between rows s and s + 1 through a local parabola,
/// falling back to the secant through the bracket.
fn refine_root(xs: &[f64], g: &[f64], s: usize) -> f64 {
    let n = g.len();
    let (x_lo, x_hi) = (xs[s], xs[s + 1]);
    // Trio centred inside the data; the root lies in (t_lo, t_hi) of the
    // trio's local coordinate.
    let (j, t_lo, t_hi) = if s >= 1 {
        (s, 0.0, 1.0)
    } else if s + 2 < n {
        (s + 1, -1.0, 0.0)
    } else {
        return secant(xs, g, s);
    };
    let (y0, y1, y2) = (g[j - 1], g[j], g[j + 1]);
    let a = 0.5 * (y2 - 2.0 * y1 + y0);
    let b = 0.5 * (y2 - y0);
    let c = y1;
    let h = xs[j + 1] - xs[j];
    if a.abs() < 1e-14 * (b.abs() + 1e-300) {
        return secant(xs, g, s);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return secant(xs, g, s);
    }
    let sq = disc.sqrt();
    for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
        if t >= t_lo - 1e-9 && t <= t_hi + 1e-9 {
            return (xs[j] + t * h).clamp(x_lo, x_hi);
        }
    }
    secant(xs, g, s)
}

fn secant(xs: &[f64], g: &[f64], s: usize) -> f64 {
    let (a, b) = (g[s], g[s + 1]);
    if (b - a).abs() < 1e-300 {
        return 0.5 * (xs[s] + xs[s + 1]);
    }
    (xs[s] - a * (xs[s + 1] - xs[s]) / (b - a)).clamp(xs[s], xs[s + 1])
}

/// Transverse coupling with unequal shunt inductances.
#[derive(Debug, Clone)]
pub struct AsymmetricShift {
    /// Flux-independent g_xx contribution of the inductance asymmetry, MHz.
    pub g_asym: f64,
    /// Per-row g_xx including the shift, MHz.
    pub total: Vec<f64>,
    /// Refined zero crossing of the shifted channel, rad.
    pub crossing: Option<f64>,
    /// Whether a crossing survives the shift.
    pub survives: bool,
}

/// Shift a symmetric-inductance sweep by the g_xx offset a relative
/// inductance asymmetry `delta_l` introduces.
///
/// The offset is measured at the quarter-period flux, where the symmetric
/// channel crosses zero: the difference between the asymmetric and
/// symmetric circuit's g_xx there isolates the flux-independent part.
pub fn asymmetric_gxx(
    params: &CircuitParams,
    delta_l: f64,
    table: &SweepTable,
) -> Result<AsymmetricShift> {
    if !(delta_l.abs() < 1.0) {
        return Err(CoreError::Domain(format!(
            "inductance asymmetry must satisfy |delta_l| < 1, got {delta_l}"
        )));
    }
    if table.rows.len() < 3 {
        return Err(CoreError::Domain(
            "asymmetric shift needs a table with at least 3 rows".into(),
        ));
    }
    let probe = FluxBias::new(params.k as f64 * std::f64::consts::FRAC_PI_2, table.phi_xb);
    let mut tilted = params.clone();
    tilted.delta_l = delta_l;
    let g_with = quantizer::analyze_point(&tilted, probe)?.g_xx;
    let g_without = quantizer::analyze_point(params, probe)?.g_xx;
    let g_asym = g_with - g_without;

    let total: Vec<f64> = table.rows.iter().map(|p| p.g_xx + g_asym).collect();
    let xs: Vec<f64> = table.rows.iter().map(|p| p.flux.phi_x).collect();
    let crossing = sign_changes(&total)
        .first()
        .map(|&s| refine_root(&xs, &total, s));
    Ok(AsymmetricShift {
        g_asym,
        survives: crossing.is_some(),
        crossing,
        total,
    })
}

/// Write a sweep in the exchange format. Floats carry 17 significant
/// digits, enough to reproduce each value bit for bit on read-back.
pub fn write_table(table: &SweepTable, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| CoreError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut w = BufWriter::new(file);
    let io_err = |source| CoreError::Io {
        path: path.display().to_string(),
        source,
    };
    writeln!(w, "{CSV_HEADER}").map_err(io_err)?;
    for p in &table.rows {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.flux.phi_x,
            p.flux.phi_xb,
            p.omega_r,
            p.delta,
            p.omega_q,
            p.alpha_q_rel,
            p.alpha_r_rel,
            p.g_xx,
            p.g_zx,
            p.g_xz,
            p.g_zz,
            p.eta,
            p.min_q,
            p.min_r,
        )
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Read a sweep written by [`write_table`].
///
/// The file stores the observable columns only; fields derivable from them
/// (the absolute anharmonicities) are reconstructed and the rest
/// (zero-point amplitudes, impedance) come back as NaN.
pub fn read_table(path: &Path) -> Result<SweepTable> {
    let file = File::open(path).map_err(|source| CoreError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let reader = BufReader::new(file);
    let parse_err = |detail: String| CoreError::Parse {
        path: path.display().to_string(),
        detail,
    };
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err("empty file".into()))?
        .map_err(|e| parse_err(e.to_string()))?;
    if header.trim_end() != CSV_HEADER {
        return Err(parse_err(format!("unexpected header: {header}")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.map_err(|e| parse_err(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != 14 {
            return Err(parse_err(format!(
                "line {}: expected 14 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let mut v = [0.0f64; 14];
        for (i, f) in fields.iter().enumerate() {
            v[i] = f.trim().parse::<f64>().map_err(|e| {
                parse_err(format!("line {}: field {}: {}", lineno + 2, i + 1, e))
            })?;
        }
        let [phi_x, phi_xb, omega_r, delta, omega_q, alpha_q_rel, alpha_r_rel, g_xx, g_zx, g_xz, g_zz, eta, min_q, min_r] =
            v;
        let alpha_q = alpha_q_rel * delta;
        let alpha_r = omega_r * alpha_r_rel / (1.0 - alpha_r_rel);
        rows.push(SpectrumPoint {
            flux: FluxBias::new(phi_x, phi_xb),
            omega_r,
            omega_q,
            delta,
            alpha_q,
            alpha_r,
            alpha_q_rel,
            alpha_r_rel,
            g_xx,
            g_zx,
            g_xz,
            g_zz,
            eta,
            min_q,
            min_r,
            lambda_q: f64::NAN,
            lambda_r: f64::NAN,
            z0: f64::NAN,
        });
    }
    for pair in rows.windows(2) {
        if !(pair[1].flux.phi_x > pair[0].flux.phi_x) {
            return Err(parse_err("rows must ascend in branch flux".into()));
        }
        if pair[1].flux.phi_xb != pair[0].flux.phi_xb {
            return Err(parse_err("rows must share one qubit flux".into()));
        }
    }
    let phi_xb = rows.first().map(|p| p.flux.phi_xb).unwrap_or(0.0);
    Ok(SweepTable {
        params: None,
        phi_xb,
        rows,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitVariant;
    use std::f64::consts::PI;

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

    /// Closed-form table over the period, cheap enough for unit tests.
    fn closed_table(params: &CircuitParams, points: usize) -> SweepTable {
        closed_form_sweep(params, 0.0, SweepGrid::over_period(params, points)).unwrap()
    }

    #[test]
    fn crossing_refined_to_quarter_period() {
        let p = single_junction_reference();
        let table = closed_table(&p, 201);
        let f = table.features().unwrap();
        assert_eq!(f.gxx_crossing_count, 1);
        let x = f.gxx_zero_flux.unwrap();
        assert!((x - PI / 2.0).abs() < 1e-6, "crossing at {x}");
    }

    #[test]
    fn odd_channels_vanish_at_the_edges() {
        let p = single_junction_reference();
        let table = closed_table(&p, 101);
        let first = table.rows.first().unwrap();
        let last = table.rows.last().unwrap();
        assert!(first.g_zx.abs() < 1e-9 && last.g_zx.abs() < 1e-9);
        assert!(first.g_xz.abs() < 1e-9 && last.g_xz.abs() < 1e-9);
    }

    #[test]
    fn landmark_magnitudes_on_the_closed_table() {
        let p = single_junction_reference();
        let f = closed_table(&p, 201).features().unwrap();
        // Even channels peak at the zero-flux edge.
        assert!((f.g_xx_max - 51.27).abs() < 0.05);
        assert!((f.g_zz_max - 5.134).abs() < 0.01);
        // The longitudinal peak sits in the middle of the half period.
        assert!(f.g_zx_max > 50.0 && f.g_zx_max < 60.0);
        assert!(f.g_zx_max_flux > 0.3 * PI && f.g_zx_max_flux < 0.7 * PI);
        assert!((f.omega_r_range.1 - 7.9359).abs() < 1e-3);
        assert!((f.omega_r_range.0 - 5.9823).abs() < 1e-3);
    }

    #[test]
    fn numerical_sweep_matches_point_analysis() {
        let p = single_junction_reference();
        let table = sweep(&p, 0.0, SweepGrid { start: 0.0, end: PI, points: 21 }).unwrap();
        assert_eq!(table.rows.len(), 21);
        let mid = &table.rows[10];
        let point = quantizer::analyze_point(&p, mid.flux).unwrap();
        assert!((mid.g_zx - point.g_zx).abs() < 1e-9);
        assert!((mid.omega_r - point.omega_r).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let p = single_junction_reference();
        let table = sweep(&p, 0.0, SweepGrid { start: 0.0, end: PI, points: 7 }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        write_table(&table, &path).unwrap();
        let back = read_table(&path).unwrap();
        assert_eq!(back.rows.len(), table.rows.len());
        for (a, b) in table.rows.iter().zip(back.rows.iter()) {
            assert_eq!(a.flux.phi_x.to_bits(), b.flux.phi_x.to_bits());
            assert_eq!(a.omega_r.to_bits(), b.omega_r.to_bits());
            assert_eq!(a.delta.to_bits(), b.delta.to_bits());
            assert_eq!(a.g_xx.to_bits(), b.g_xx.to_bits());
            assert_eq!(a.g_zx.to_bits(), b.g_zx.to_bits());
            assert_eq!(a.g_xz.to_bits(), b.g_xz.to_bits());
            assert_eq!(a.g_zz.to_bits(), b.g_zz.to_bits());
            assert_eq!(a.eta.to_bits(), b.eta.to_bits());
            assert_eq!(a.min_q.to_bits(), b.min_q.to_bits());
            assert_eq!(a.alpha_q_rel.to_bits(), b.alpha_q_rel.to_bits());
            assert_eq!(a.alpha_r_rel.to_bits(), b.alpha_r_rel.to_bits());
        }
        assert_eq!(back.phi_xb, 0.0);
    }

    #[test]
    fn read_rejects_foreign_headers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "phi,omega\n1,2\n").unwrap();
        assert!(matches!(read_table(&path), Err(CoreError::Parse { .. })));
    }

    #[test]
    fn asymmetric_shift_vanishes_without_asymmetry() {
        let p = single_junction_reference();
        let table = sweep(&p, 0.0, SweepGrid { start: 0.0, end: PI, points: 21 }).unwrap();
        let shift = asymmetric_gxx(&p, 0.0, &table).unwrap();
        assert!(shift.g_asym.abs() < 1e-9);
        for (t, row) in shift.total.iter().zip(table.rows.iter()) {
            assert!((t - row.g_xx).abs() < 1e-9);
        }
        assert!(shift.survives);
    }

    #[test]
    fn asymmetric_shift_moves_the_crossing() {
        let p = single_junction_reference();
        let table = sweep(&p, 0.0, SweepGrid { start: 0.0, end: PI, points: 41 }).unwrap();
        let base = table.features().unwrap().gxx_zero_flux.unwrap();
        let shift = asymmetric_gxx(&p, 0.01, &table).unwrap();
        assert!(shift.survives);
        let moved = shift.crossing.unwrap();
        assert!((moved - base).abs() > 1e-3, "crossing barely moved: {base} -> {moved}");
    }
}
