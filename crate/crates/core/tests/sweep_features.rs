//! Sweep-level properties: parity of every reported channel in the branch
//! flux, the hierarchy between the two cross couplings, frozen landmark
//! features, exchange-file round trips, and the inductance-asymmetry shift.

mod common;

use shuntq_core::presets;
use shuntq_core::sweep::{self, SweepGrid};
use std::f64::consts::PI;

#[test]
fn every_channel_has_definite_parity_in_the_branch_flux() {
    // Reflecting the branch flux maps the potential minimum to its mirror
    // image, so each order-(m, n) coefficient picks up (-1)^(m+n): the
    // frequencies and same-order couplings are even, the two cross
    // couplings odd. Junction asymmetry does not spoil this.
    for params in [presets::single_junction(), presets::adapted_array()] {
        let k = params.k as f64;
        let grid = SweepGrid {
            start: -k * PI,
            end: k * PI,
            points: 81,
        };
        let table = sweep::sweep(&params, 0.0, grid).unwrap();
        let n = table.rows.len();
        for i in 0..n {
            let a = &table.rows[i];
            let b = &table.rows[n - 1 - i];
            for (name, x, y) in [
                ("omega_r", a.omega_r, b.omega_r),
                ("delta", a.delta, b.delta),
                ("alpha_q", a.alpha_q, b.alpha_q),
                ("g_xx", a.g_xx, b.g_xx),
                ("g_zz", a.g_zz, b.g_zz),
                ("g_zx", a.g_zx, -b.g_zx),
                ("g_xz", a.g_xz, -b.g_xz),
            ] {
                common::assert_close(x, y, 1e-9, 1.0, &format!("{name} parity at row {i}"));
            }
        }
    }
}

#[test]
fn single_junction_landmarks_stay_frozen() {
    let params = presets::single_junction();
    let table = sweep::sweep(&params, 0.0, SweepGrid::over_period(&params, 201)).unwrap();
    let f = table.features().unwrap();
    common::assert_close(f.g_xx_max, 51.270249, 1e-6, 1.0, "g_xx lobe");
    common::assert_close(f.g_zx_max, 57.948140, 1e-6, 1.0, "g_zx peak");
    common::assert_close(f.g_zx_max_flux, 2.003551, 1e-5, 1.0, "g_zx peak flux");
    common::assert_close(f.g_xz_max, 6.661567, 1e-6, 1.0, "g_xz peak");
    common::assert_close(f.g_zz_max, 5.134059, 1e-6, 1.0, "g_zz lobe");
    assert_eq!(f.gxx_crossing_count, 1, "exactly one transverse-coupling zero");
    common::assert_close(
        f.gxx_zero_flux.unwrap(),
        2.0202357147958856,
        1e-9,
        1.0,
        "g_xx zero location",
    );
    common::assert_close(f.omega_r_range.0, 5.981944, 1e-6, 1.0, "resonator minimum");
    common::assert_close(f.omega_r_range.1, 7.935360, 1e-6, 1.0, "resonator maximum");
    common::assert_close(f.delta_range.0, 5.258593, 1e-6, 1.0, "transition minimum");
    common::assert_close(f.delta_range.1, 6.309376, 1e-6, 1.0, "transition maximum");
    common::assert_close(f.alpha_q_rel_range.0, 0.008201, 1e-4, 0.001, "relative anharmonicity low");
    common::assert_close(f.alpha_q_rel_range.1, 0.010957, 1e-4, 0.001, "relative anharmonicity high");
    common::assert_close(f.alpha_r_rel_max, 0.00536607, 1e-4, 0.0001, "resonator anharmonicity");
}

#[test]
fn longitudinal_readout_channel_dominates_its_mirror_everywhere() {
    // The qubit-phase-squared-times-resonator-phase coupling is the readout
    // channel; its mirror image is suppressed by the resonator's smaller
    // zero-point spread and stays an order of magnitude down for all three
    // reference designs.
    for (params, lo, hi) in [
        (presets::single_junction(), 0.07, 0.15),
        (presets::junction_array(), 0.01, 0.06),
        (presets::adapted_array(), 0.02, 0.08),
    ] {
        let table = sweep::sweep(&params, 0.0, SweepGrid::over_period(&params, 101)).unwrap();
        let f = table.features().unwrap();
        let ratio = f.g_xz_max / f.g_zx_max;
        assert!(
            (lo..hi).contains(&ratio),
            "cross-coupling ratio {ratio:.4} outside [{lo}, {hi}]"
        );
    }
}

#[test]
fn exchange_file_round_trips_bit_for_bit() {
    let params = presets::junction_array();
    let table = sweep::sweep(&params, PI, SweepGrid::over_period(&params, 31)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    sweep::write_table(&table, &path).unwrap();
    let back = sweep::read_table(&path).unwrap();
    assert!(back.params.is_none(), "the file stores rows, not the circuit");
    assert_eq!(back.rows.len(), table.rows.len());
    assert_eq!(back.phi_xb, table.phi_xb);
    for (a, b) in table.rows.iter().zip(&back.rows) {
        assert_eq!(a.flux.phi_x, b.flux.phi_x);
        assert_eq!(a.omega_r, b.omega_r);
        assert_eq!(a.delta, b.delta);
        assert_eq!(a.omega_q, b.omega_q);
        assert_eq!(a.alpha_q_rel, b.alpha_q_rel);
        assert_eq!(a.alpha_r_rel, b.alpha_r_rel);
        assert_eq!(a.g_xx, b.g_xx);
        assert_eq!(a.g_zx, b.g_zx);
        assert_eq!(a.g_xz, b.g_xz);
        assert_eq!(a.g_zz, b.g_zz);
        assert_eq!(a.eta, b.eta);
        assert_eq!(a.min_q, b.min_q);
        assert_eq!(a.min_r, b.min_r);
        // Absolute anharmonicities come back through a reconstruction, so
        // they can differ in the last bit.
        common::assert_close(a.alpha_q, b.alpha_q, 1e-14, 1e-6, "reconstructed alpha_q");
        common::assert_close(a.alpha_r, b.alpha_r, 1e-14, 1e-6, "reconstructed alpha_r");
        assert!(b.lambda_q.is_nan() && b.lambda_r.is_nan() && b.z0.is_nan());
    }
    // Feature extraction sees the same numbers either way.
    let f0 = table.features().unwrap();
    let f1 = back.features().unwrap();
    assert_eq!(f0.g_zx_max, f1.g_zx_max);
    assert_eq!(f0.gxx_zero_flux, f1.gxx_zero_flux);
    assert_eq!(f0.omega_r_range, f1.omega_r_range);
}

#[test]
fn resonator_anharmonicity_flips_sign_at_the_closed_form_crossing() {
    // In the closed form the resonator anharmonicity is driven by the same
    // odd harmonic content as the transverse coupling, so its sign change
    // must sit within one grid step of the coupling zero.
    for params in [presets::single_junction(), presets::junction_array()] {
        let table =
            sweep::closed_form_sweep(&params, 0.0, SweepGrid::over_period(&params, 201)).unwrap();
        let crossing = table.features().unwrap().gxx_zero_flux.unwrap();
        let step = table.rows[1].flux.phi_x - table.rows[0].flux.phi_x;
        let flip = table
            .rows
            .windows(2)
            .find(|w| w[0].alpha_r.signum() != w[1].alpha_r.signum())
            .map(|w| 0.5 * (w[0].flux.phi_x + w[1].flux.phi_x))
            .expect("the resonator anharmonicity should change sign");
        assert!(
            (flip - crossing).abs() <= step,
            "anharmonicity flip at {flip:.6} vs coupling zero at {crossing:.6} (step {step:.6})"
        );
    }
}

#[test]
fn inductance_asymmetry_shifts_the_coupling_but_a_small_split_keeps_its_zero() {
    // The split adds a flux-independent offset to the transverse coupling.
    // A 1% split moves the zero visibly but leaves it inside the tuning
    // range; by an 8% split the offset exceeds the symmetric amplitude and
    // the zero is gone.
    let params = presets::single_junction();
    let table =
        sweep::closed_form_sweep(&params, 0.0, SweepGrid::over_period(&params, 201)).unwrap();
    let small = sweep::asymmetric_gxx(&params, 0.01, &table).unwrap();
    assert!(small.g_asym.abs() > 1.0, "a 1% split should move g_xx by MHz");
    assert!(small.survives, "the zero crossing should survive a 1% split");
    let crossing = small.crossing.unwrap();
    let unshifted = table.features().unwrap().gxx_zero_flux.unwrap();
    assert!(
        (crossing - unshifted).abs() > 0.05 && crossing > 0.0 && crossing < PI,
        "shifted crossing {crossing} should move off the symmetric zero {unshifted}"
    );
    assert_eq!(small.total.len(), table.rows.len());

    let large = sweep::asymmetric_gxx(&params, 0.08, &table).unwrap();
    assert!(
        !large.survives && large.crossing.is_none(),
        "an 8% split should swamp the symmetric amplitude"
    );

    // A negative split tilts the other way and shifts the zero oppositely.
    let negative = sweep::asymmetric_gxx(&params, -0.01, &table).unwrap();
    assert!(negative.survives);
    let mirrored = negative.crossing.unwrap();
    assert!(
        (mirrored - unshifted).signum() != (crossing - unshifted).signum(),
        "opposite splits should shift the zero in opposite directions"
    );

    // Degenerate inputs are refused.
    assert!(sweep::asymmetric_gxx(&params, 1.0, &table).is_err());
    let short = sweep::closed_form_sweep(&params, 0.0, SweepGrid::over_period(&params, 2)).unwrap();
    assert!(sweep::asymmetric_gxx(&params, 0.08, &short).is_err());
}

#[test]
fn degenerate_grids_are_refused() {
    let params = presets::single_junction();
    for grid in [
        SweepGrid { start: 0.0, end: 1.0, points: 0 },
        SweepGrid { start: 1.0, end: 0.0, points: 5 },
        SweepGrid { start: 0.0, end: f64::INFINITY, points: 5 },
    ] {
        assert!(sweep::sweep(&params, 0.0, grid).is_err());
    }
}
