mod common;

use common::rng;
use reduction_core::dynamics::{
    bcn_root_margin, projected_trajectory, sutherland_integrate, IntegratorConfig,
};
use reduction_core::kak::random_compact;
use reduction_core::lax::{
    invariant_drift, lax_matrix, lax_partner, poisson_bracket_fd, spectral_invariants,
    spectral_record, LaxMatrix, Side, LAX_FD_STEP,
};
use reduction_core::reduction::{sumn_setup, sunn_setup, Setup};
use reduction_core::Result;

const Q0: [f64; 2] = [1.0, 0.4];
const P0: [f64; 2] = [0.3, -0.2];

fn cfg(t_max: f64) -> IntegratorConfig {
    IntegratorConfig {
        dt: 1e-3,
        t_max,
        sample_every: 20,
        ..Default::default()
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn spectrum_is_invariant_under_compact_conjugation() {
    let s = sunn_setup(2, 2.0, 0.7, 0.3).unwrap();
    let pt = s.point(&Q0, &P0).unwrap();
    let mut r = rng(11);
    for side in [Side::Left, Side::Right] {
        let l = lax_matrix(&pt, 0.7, side, &s.rsd).unwrap();
        let base = spectral_invariants(&l).unwrap();
        for _ in 0..20 {
            let k = random_compact(s.sig(), &mut r);
            let moved = LaxMatrix {
                mat: k.adjoint_action(&l.mat),
                ..l.clone()
            };
            let inv = spectral_invariants(&moved).unwrap();
            assert!(max_diff(&inv.eigenvalues, &base.eigenvalues) <= 1e-11);
            for (a, b) in inv.traces.iter().zip(&base.traces) {
                assert!((a - b).abs() <= 1e-11 * (1.0 + b.abs()));
            }
        }
    }
}

#[test]
fn free_flow_has_no_drift() {
    let s = sunn_setup(2, 1.0, 0.0, 0.0).unwrap();
    let pt = s.point(&Q0, &P0).unwrap();
    for side in [Side::Left, Side::Right] {
        let rep = invariant_drift(&pt, &cfg(3.0), 0.7, side, &s.rsd, Some(&s.cc)).unwrap();
        assert!(rep.max_drift <= 1e-12, "{:e}", rep.max_drift);
    }
}

#[test]
fn drift_exposes_a_wrong_coupling() {
    let s = sunn_setup(2, 2.0, 0.7, 0.3).unwrap();
    let pt = s.point(&Q0, &P0).unwrap();
    let c = cfg(5.0);
    let exact = projected_trajectory(&pt, &c, &s.rsd, Some(&s.cc)).unwrap();
    let flat = spectral_record(&exact, &pt.xi_l, &pt.xi_r, 0.7, Side::Left, &s.rsd).unwrap();
    let mut off = s.cc;
    off.g1_sq *= 1.05;
    off.g_sq *= 1.05;
    let wrong = sutherland_integrate(&Q0, &P0, &off, &c).unwrap();
    let drifting = spectral_record(&wrong, &pt.xi_l, &pt.xi_r, 0.7, Side::Left, &s.rsd).unwrap();
    assert!(flat.max_drift() <= 1e-9, "{:e}", flat.max_drift());
    assert!(drifting.max_drift() > 1e-3, "{:e}", drifting.max_drift());
}

fn trace_power(s: &Setup, v: f64, power: usize) -> impl Fn(&[f64], &[f64]) -> Result<f64> + '_ {
    move |q, p| {
        let pt = s.point(q, p)?;
        let inv = spectral_invariants(&lax_matrix(&pt, v, Side::Left, &s.rsd)?)?;
        Ok(inv.traces[power / 2 - 1])
    }
}

/// Chamber point with every BC_n root value at least `margin`.
fn bcn_point(margin: f64, r: &mut rand_chacha::ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    loop {
        let mut q: Vec<f64> = common::normals(2, r)
            .iter()
            .map(|x| 1.5 * x.abs())
            .collect();
        q.sort_by(|a, b| b.total_cmp(a));
        if bcn_root_margin(&q).1 >= margin {
            return (q, common::normals(2, r));
        }
    }
}

#[test]
fn traces_are_in_involution() {
    // The central-difference error is c h² with c growing steeply towards the
    // walls, so the bracket is checked after eliminating the h² term.
    let s = sunn_setup(2, 2.0, 0.7, 0.3).unwrap();
    let mut r = rng(12);
    let h = 2e-5;
    for _ in 0..20 {
        let (q, p) = bcn_point(0.3, &mut r);
        let f = || trace_power(&s, 0.7, 2);
        let g = || trace_power(&s, -1.3, 4);
        let coarse = poisson_bracket_fd(f(), g(), &q, &p, h).unwrap();
        let fine = poisson_bracket_fd(f(), g(), &q, &p, 0.5 * h).unwrap();
        let extrapolated = (4.0 * fine - coarse) / 3.0;
        assert!(
            extrapolated.abs() <= 1e-6,
            "q={q:?} p={p:?}: {coarse:e} {fine:e}"
        );
        // control: the bracket with q¹ is generically nonzero
        let q1 = |q: &[f64], _: &[f64]| Ok(q[0]);
        assert!(poisson_bracket_fd(q1, f(), &q, &p, h).unwrap().abs() > 1e-3);
    }
    // far from the walls the raw estimate is already small
    let b = poisson_bracket_fd(
        trace_power(&s, 0.7, 2),
        trace_power(&s, -1.3, 4),
        &[2.5, 1.2],
        &[0.4, -0.7],
        1e-5,
    )
    .unwrap();
    assert!(b.abs() <= 1e-6, "{b:e}");
}

#[test]
fn both_partners_fit_on_the_same_point() {
    for s in [
        sunn_setup(2, 2.0, 0.7, 0.3).unwrap(),
        sumn_setup(4, 2, 2.0, 0.1).unwrap(),
    ] {
        let pt = s.point(&Q0, &P0).unwrap();
        for side in [Side::Left, Side::Right] {
            let y = lax_partner(&pt, side, &s.rsd, LAX_FD_STEP).unwrap();
            assert!(
                y.residual <= 1e-6,
                "{:?} {side:?}: {:e}",
                s.case,
                y.residual
            );
            // second-order stencil
            let half = lax_partner(&pt, side, &s.rsd, 0.5 * LAX_FD_STEP).unwrap();
            assert!(half.residual < y.residual);
        }
    }
}
