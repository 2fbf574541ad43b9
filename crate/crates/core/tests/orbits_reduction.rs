mod common;

use common::{c, normals, random_regular_q, rng, sig};
use proptest::prelude::*;
use reduction_core::kak::{random_centralizer_element, random_compact, GroupElement};
use reduction_core::lie::{central_character, embed_cartan, SpectralFunction};
use reduction_core::matrix::ComplexMatrix;
use reduction_core::reduction::{
    bcn_hamiltonian, constraint_residual, minimal_orbit_point, minimal_orbit_spectrum_defect,
    momentum_map, random_spin_point, reduced_hamiltonian, sample_orbit_point, shift_orbits,
    solve_constraint, sumn_setup, sun1n_setup, sunn_setup, CouplingConstants, MinimalOrbit,
    OrbitBlock, OrbitPoint, OrbitSign, OrbitSpec, Setup,
};
use reduction_core::Error;

fn setups() -> Vec<Setup> {
    vec![
        sunn_setup(2, 2.0, 0.7, 0.3).unwrap(),
        sunn_setup(3, 1.5, 0.4, -0.2).unwrap(),
        sun1n_setup(2, 3.0, 0.2, 0.1).unwrap(),
        sun1n_setup(1, 2.0, 0.5, 0.3).unwrap(),
        sun1n_setup(3, 1.0, -0.1, 0.3).unwrap(),
        sumn_setup(4, 2, 2.0, 0.1).unwrap(),
        sumn_setup(3, 2, 1.5, 0.2).unwrap(),
        sumn_setup(3, 1, 1.0, 0.3).unwrap(),
    ]
}

#[test]
fn constraint_solution_lies_on_the_zero_level() {
    let mut r = rng(1);
    for s in setups() {
        for _ in 0..100 {
            let q = random_regular_q(&s.rsd, 0.05, 1.5, &mut r);
            let pt = s.point(&q, &normals(q.len(), &mut r)).unwrap();
            let l = solve_constraint(&pt, &s.rsd).unwrap();
            let g = GroupElement::exp(&embed_cartan(s.sig(), &q)).unwrap();
            let (pl, pr) = momentum_map(&g, &l, &pt.xi_l, &pt.xi_r);
            assert!(
                pl.norm() + pr.norm() <= 1e-10,
                "{:?}: {:e}",
                s.case,
                pl.norm() + pr.norm()
            );
            // (𝓛)₊ = −ξ^l, (𝓛)₋ ∈ A ⊕ A⊥
            let (plus, minus) = l.split_pm();
            assert!(plus.dist(&pt.xi_l.xi.scale(-1.0)) <= 1e-12);
            let f = s.rsd.split_four(&minus);
            assert!(
                f.m.norm() + f.m_perp.norm() <= 1e-12 && f.a.add(&f.a_perp).dist(&minus) <= 1e-12
            );
        }
    }
}

#[test]
fn coupling_formulas_on_random_points() {
    let mut r = rng(2);
    for s in setups() {
        for _ in 0..100 {
            let q = random_regular_q(&s.rsd, 0.05, 1.5, &mut r);
            let pt = s.point(&q, &normals(q.len(), &mut r)).unwrap();
            let half = 0.5 * reduced_hamiltonian(&pt, &s.rsd).unwrap();
            let bc = bcn_hamiltonian(&q, &pt.p, &s.cc).unwrap();
            let d = half - bc - s.cc.energy_shift;
            assert!(
                d.abs() <= 1e-10 * (1.0 + half.abs()),
                "{:?} q={q:?}: {d:e}",
                s.case
            );
        }
    }
}

#[test]
fn hamiltonian_identity_for_generic_spins() {
    let mut r = rng(3);
    for (m, n) in [(2, 2), (3, 2), (4, 2), (2, 1), (3, 3)] {
        let rsd = reduction_core::lie::build_root_system(sig(m, n));
        for _ in 0..100 {
            let pt = random_spin_point(&rsd, &mut r);
            let h = reduced_hamiltonian(&pt, &rsd).unwrap();
            let l = solve_constraint(&pt, &rsd).unwrap();
            let half = 0.5 * l.pairing(&l);
            assert!((h - half).abs() <= 1e-10 * (1.0 + half.abs()));
        }
    }
}

#[test]
fn one_point_orbits_are_gauge_invariant() {
    let mut r = rng(4);
    for s in setups() {
        for _ in 0..20 {
            let mm = random_centralizer_element(&s.rsd, &mut r);
            let conj = |x: &OrbitPoint| OrbitPoint {
                xi: x.xi.conjugate_unitary(&mm),
            };
            let q = random_regular_q(&s.rsd, 0.05, 1.5, &mut r);
            let p = normals(q.len(), &mut r);
            let mut pt = s.point(&q, &p).unwrap();
            pt.xi_l = conj(&pt.xi_l);
            pt.xi_r = conj(&pt.xi_r);
            let half = 0.5 * reduced_hamiltonian(&pt, &s.rsd).unwrap();
            let d = half - bcn_hamiltonian(&q, &p, &s.cc).unwrap() - s.cc.energy_shift;
            assert!(d.abs() <= 1e-10 * (1.0 + half.abs()));
        }
    }
}

#[test]
fn momentum_map_is_equivariant() {
    let mut r = rng(5);
    for (m, n) in [(2, 2), (3, 2)] {
        let s = sig(m, n);
        for _ in 0..20 {
            let g = GroupElement::exp(&common::random_algebra(s, &mut r).scale(0.4)).unwrap();
            let jl = common::random_algebra(s, &mut r);
            let xl = OrbitPoint {
                xi: common::random_algebra(s, &mut r).plus_part(),
            };
            let xr = OrbitPoint {
                xi: common::random_algebra(s, &mut r).plus_part(),
            };
            let (pl, pr) = momentum_map(&g, &jl, &xl, &xr);
            let (k1, k2) = (random_compact(s, &mut r), random_compact(s, &mut r));
            let g2 = k1.mul(&g).mul(&k2.inverse());
            let j2 = k1.adjoint_action(&jl);
            let (ql, qr) = momentum_map(
                &g2,
                &j2,
                &OrbitPoint {
                    xi: k1.adjoint_action(&xl.xi),
                },
                &OrbitPoint {
                    xi: k2.adjoint_action(&xr.xi),
                },
            );
            assert!(ql.dist(&k1.adjoint_action(&pl)) <= 1e-11 * (1.0 + pl.norm()));
            assert!(qr.dist(&k2.adjoint_action(&pr)) <= 1e-11 * (1.0 + pr.norm()));
        }
    }
    // J = −ξ, g = 1, ξ^r = −ξ^l
    let s = sig(2, 1);
    let xi = OrbitPoint {
        xi: common::random_algebra(s, &mut r).plus_part(),
    };
    let neg = OrbitPoint {
        xi: xi.xi.scale(-1.0),
    };
    let (pl, pr) = momentum_map(&GroupElement::identity(s), &neg.xi, &xi, &neg);
    assert!(pl.norm() + pr.norm() <= 1e-15);
}

#[test]
fn zero_spins() {
    let s = sig(3, 2);
    let rsd = reduction_core::lie::build_root_system(s);
    let z = OrbitPoint::zero(s);
    let pt = reduction_core::reduction::ReducedPoint {
        q: reduction_core::lie::CartanVector::new(s, vec![1.3, 0.2]).unwrap(),
        p: vec![0.5, -2.0],
        xi_l: z.clone(),
        xi_r: z,
    };
    assert!(
        solve_constraint(&pt, &rsd)
            .unwrap()
            .dist(&embed_cartan(s, &pt.p))
            <= 1e-15
    );
    assert!((reduced_hamiltonian(&pt, &rsd).unwrap() - 4.25).abs() <= 1e-14);
}

#[test]
fn product_identity_for_the_cross_term() {
    for z in [0.3, 1.0, 2.5] {
        let lhs = SpectralFunction::Coth.eval(z) * SpectralFunction::Csch.eval(z);
        let rhs = 0.5 * SpectralFunction::CschSqHalf.eval(z) - SpectralFunction::CschSq.eval(z);
        assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
        assert!((SpectralFunction::CothCsch.eval(z) - lhs).abs() <= 1e-13 * lhs.abs());
    }
}

#[test]
fn minimal_orbit_points() {
    let s = sig(2, 2);
    let x = minimal_orbit_point(
        s,
        OrbitBlock::Upper,
        &[c(2f64.sqrt(), 0.0), c(0.0, 0.0)],
        OrbitSign::Plus,
    )
    .unwrap();
    let expect = ComplexMatrix::diag(&[c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)]);
    assert!(x.xi.mat().dist(&expect) <= 1e-15);
    assert!(minimal_orbit_point(s, OrbitBlock::Upper, &[c(0.0, 0.0); 2], OrbitSign::Plus).is_err());

    let mut r = rng(6);
    let s = sig(3, 2);
    for _ in 0..20 {
        let u: Vec<_> = (0..3)
            .map(|_| reduction_core::kernel::standard_complex_normal(&mut r))
            .collect();
        let pt = minimal_orbit_point(s, OrbitBlock::Upper, &u, OrbitSign::Plus).unwrap();
        assert!(pt.xi.mat().trace().norm() <= 1e-14);
        let kappa = u.iter().map(|z| z.norm_sqr()).sum::<f64>() / 3.0;
        let orbit = MinimalOrbit {
            block: OrbitBlock::Upper,
            kappa,
            sign: OrbitSign::Plus,
        };
        assert!(minimal_orbit_spectrum_defect(&pt.xi, &orbit).unwrap() <= 1e-12 * (1.0 + kappa));
    }
}

#[test]
fn orbit_sampling() {
    let s = sig(3, 2);
    let spec = OrbitSpec {
        sig: s,
        minimal: Some(MinimalOrbit {
            block: OrbitBlock::Lower,
            kappa: 1.5,
            sign: OrbitSign::Plus,
        }),
        x: 0.3,
        y: 0.0,
    };
    let mut r = rng(7);
    let cx = central_character(s).scale(0.3);
    for _ in 0..100 {
        let pt = sample_orbit_point(&spec, &mut r).unwrap();
        let orbit = spec.minimal.unwrap();
        assert!(minimal_orbit_spectrum_defect(&pt.xi.sub(&cx), &orbit).unwrap() <= 1e-12);
    }
    let a = sample_orbit_point(&spec, &mut rng(8)).unwrap();
    let b = sample_orbit_point(&spec, &mut rng(8)).unwrap();
    assert_eq!(a.xi, b.xi);
    let chr = OrbitSpec {
        sig: s,
        minimal: None,
        x: 0.0,
        y: -0.7,
    };
    assert_eq!(
        sample_orbit_point(&chr, &mut r).unwrap().xi,
        central_character(s).scale(-0.7)
    );
}

#[test]
fn orbit_shifts() {
    let mut r = rng(9);
    let s = sig(3, 2);
    let rsd = reduction_core::lie::build_root_system(s);
    for _ in 0..20 {
        let pt = random_spin_point(&rsd, &mut r);
        let before = constraint_residual(&pt.xi_l, &pt.xi_r, &rsd);
        let y = common::normals(1, &mut r)[0];
        let (l, rr) = shift_orbits(&pt.xi_l, &pt.xi_r, y, s);
        assert!((constraint_residual(&l, &rr, &rsd) - before).abs() <= 1e-14);
        let (l2, r2) = shift_orbits(&l, &rr, -y, s);
        assert!(l2.xi.dist(&pt.xi_l.xi) <= 1e-14 && r2.xi.dist(&pt.xi_r.xi) <= 1e-14);
        let (l0, r0) = shift_orbits(&pt.xi_l, &pt.xi_r, 0.0, s);
        assert!(l0.xi == pt.xi_l.xi && r0.xi == pt.xi_r.xi);
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + b.abs())
}

#[test]
fn sunn_special_cases() {
    let s = sunn_setup(3, 1.2, 0.8, 0.0).unwrap();
    assert!(
        close(s.cc.g1_sq, 0.0) && close(s.cc.g2_sq, 0.64 * 9.0 / 2.0) && close(s.cc.g_sq, 0.36)
    );
    let s = sunn_setup(2, 1.0, 0.0, 0.0).unwrap();
    assert!(s.cc.g1_sq == 0.0 && s.cc.g2_sq == 0.0);
    assert!(sunn_setup(2, 0.0, 0.1, 0.1).is_err() && sunn_setup(2, -1.0, 0.1, 0.1).is_err());
    let s = sunn_setup(2, 2.0, 0.7, 0.3).unwrap();
    assert!(s.xi_r.xi.dist(&central_character(s.sig()).scale(0.3)) <= 1e-14);
    assert!(minimal_orbit_spectrum_defect(&s.minimal_part(), &s.orbit).unwrap() <= 1e-12);
}

#[test]
fn sun1n_special_cases() {
    // y = 0: the two-parameter family, g₁² = (κ+x)(κ−nx)/2, g₂² = (2(n+1)x)²/8, no shift
    let (n, k, x) = (2usize, 2.5, 0.3);
    let s = sun1n_setup(n, k, x, 0.0).unwrap();
    let nf = n as f64;
    assert!(close(s.cc.g1_sq, (k + x) * (k - nf * x) / 2.0));
    assert!(close(s.cc.g2_sq, (2.0 * (nf + 1.0) * x).powi(2) / 8.0));
    assert!(close(s.cc.g_sq, ((k + x) / 2.0).powi(2)) && s.cc.energy_shift == 0.0);
    // boundary κ = n(x + y): h₁ = 0
    let s = sun1n_setup(2, 0.6, 0.2, 0.1).unwrap();
    let h2 = (2.0 * 3.0 * 0.2 + 0.1) / 8f64.sqrt();
    let h2t = 0.1 * 5.0 / 8f64.sqrt();
    assert!((s.cc.g1_sq - h2 * h2t).abs() <= 1e-12);
    match sun1n_setup(2, 0.5, 0.2, 0.1) {
        Err(Error::Consistency { inequality }) => {
            assert!(inequality.contains("kappa - n(x + y) >= 0"), "{inequality}")
        }
        other => panic!("{other:?}"),
    }
    match sun1n_setup(2, 0.5, -0.5, -0.2) {
        Err(Error::Consistency { inequality }) => {
            assert!(inequality.contains("kappa + x + y >= 0"), "{inequality}")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn sumn_special_cases() {
    let s = sumn_setup(4, 2, 2.0, 0.0).unwrap();
    assert!(
        s.cc.g1_sq == 0.0 && s.cc.g2_sq == 0.0 && s.cc.energy_shift == 0.0 && close(s.cc.g_sq, 1.0)
    );
    let s = sumn_setup(4, 2, 2.0, 0.1).unwrap();
    assert!(close(s.cc.g2_sq, -4.0 * s.cc.g1_sq));
    // x = −y is forced: perturbing the character of ξ^l breaks the constraint
    let mut pt = s.point(&[1.0, 0.4], &[0.3, -0.2]).unwrap();
    pt.xi_l = OrbitPoint {
        xi: pt.xi_l.xi.add(&central_character(s.sig()).scale(0.01)),
    };
    assert!(matches!(
        solve_constraint(&pt, &s.rsd),
        Err(Error::Constraint { .. })
    ));
    assert!(sumn_setup(2, 2, 1.0, 0.1).is_err() && sumn_setup(4, 2, 0.0, 0.1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bcn_hamiltonian_has_weyl_symmetry(
        q in proptest::collection::vec(0.05f64..3.0, 3),
        p in proptest::collection::vec(-2.0f64..2.0, 3),
        flips in proptest::collection::vec(any::<bool>(), 3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        g in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
    ) {
        let cc = CouplingConstants { g_sq: g.0, g1_sq: g.1, g2_sq: g.2, energy_shift: 0.0 };
        let Ok(h) = bcn_hamiltonian(&q, &p, &cc) else { return Ok(()) };
        let sign = |k: usize| if flips[k] { -1.0 } else { 1.0 };
        let q2: Vec<f64> = perm.iter().map(|&k| sign(k) * q[k]).collect();
        let p2: Vec<f64> = perm.iter().map(|&k| sign(k) * p[k]).collect();
        let h2 = bcn_hamiltonian(&q2, &p2, &cc).unwrap();
        prop_assert!((h - h2).abs() <= 1e-13 * (1.0 + h.abs()), "{h} vs {h2}");
        let qn: Vec<f64> = q.iter().map(|x| -x).collect();
        let pn: Vec<f64> = p.iter().map(|x| -x).collect();
        prop_assert_eq!(bcn_hamiltonian(&qn, &pn, &cc).unwrap(), h);
    }
}
