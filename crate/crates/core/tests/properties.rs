mod common;

use std::path::PathBuf;

use common::c;
use epscan::config::{parse_config, serialize_config, Format, GridRange, Output, RunConfig};
use epscan::eig::{bilinear, eigensolve, hermitian, Complex2x2Symmetric, DEFAULT_EP_TOL};
use epscan::hamiltonian::{build_block, preset_names};
use epscan::observables::{phase_rigidity, SweepRecord};
use epscan::output::fmt_f64;
use epscan::scattering::{s_matrix, transmission, transmission_from_s, ResonancePole};
use epscan::{ChannelBlock, EigenSolution, LevelTrajectory, TwoChannelSystem, C64};
use proptest::prelude::*;

fn complex(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(re, im)| c(re, im))
}

fn unit_square() -> impl Strategy<Value = C64> {
    (0.0..1.0, 0.0..1.0).prop_map(|(re, im)| c(re, im))
}

fn matrix() -> impl Strategy<Value = Complex2x2Symmetric> {
    (unit_square(), unit_square(), unit_square()).prop_map(|(a, b, o)| Complex2x2Symmetric::new(a, b, o))
}

fn trajectory() -> impl Strategy<Value = LevelTrajectory> {
    (-2.0..2.0, -2.0..2.0, -1.0..0.0).prop_map(|(e0, s, g)| LevelTrajectory::new(e0, s, g))
}

fn block() -> impl Strategy<Value = ChannelBlock> {
    (trajectory(), trajectory(), complex(1.0)).prop_map(|(s1, s2, w)| ChannelBlock::new(s1, s2, w))
}

fn system() -> impl Strategy<Value = TwoChannelSystem> {
    (block(), block()).prop_map(|(a, b)| TwoChannelSystem::new(a, b))
}

fn poles() -> impl Strategy<Value = Vec<ResonancePole>> {
    prop::collection::vec((-3.0..3.0, 1e-3..2.0), 1..8)
        .prop_map(|v| v.into_iter().map(|(e, g)| ResonancePole::new(e, g).unwrap()).collect())
}

fn residual(m: &Complex2x2Symmetric, s: &EigenSolution) -> f64 {
    let mv = m.apply(s.vector);
    ((mv[0] - s.value * s.vector[0]).norm_sqr() + (mv[1] - s.value * s.vector[1]).norm_sqr()).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn trace_and_determinant(m in matrix()) {
        let [s1, s2] = eigensolve(&m, DEFAULT_EP_TOL);
        prop_assert!((s1.value + s2.value - m.trace()).norm() < 1e-12);
        prop_assert!((s1.value * s2.value - m.determinant()).norm() < 1e-12);
    }

    #[test]
    fn right_and_left_eigenvectors(m in matrix()) {
        for s in eigensolve(&m, DEFAULT_EP_TOL) {
            let scale = hermitian(&s.vector, &s.vector).re.sqrt();
            prop_assert!(residual(&m, &s) <= 1e-10 * scale.max(1.0));
            // Φᵀ m = ℰ Φᵀ, i.e. the left eigenvector is Φ*
            let row = [
                s.vector[0] * m.d11 + s.vector[1] * m.off,
                s.vector[0] * m.off + s.vector[1] * m.d22,
            ];
            let err = (row[0] - s.value * s.vector[0]).norm() + (row[1] - s.value * s.vector[1]).norm();
            prop_assert!(err <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn biorthogonal_normalization(m in matrix()) {
        prop_assume!(m.discriminant().modulus > 1e-6);
        let [s1, s2] = eigensolve(&m, DEFAULT_EP_TOL);
        prop_assert!(s1.c_norm_ok && s2.c_norm_ok);
        for s in [&s1, &s2] {
            prop_assert!((bilinear(&s.vector, &s.vector) - c(1.0, 0.0)).norm() < 1e-12);
            let a = hermitian(&s.vector, &s.vector);
            prop_assert!(a.im.abs() < 1e-12 * a.re && a.re >= 1.0 - 1e-12);
            let r = phase_rigidity(s);
            prop_assert!((0.0..=1.0).contains(&r));
            prop_assert!((r * a.re - 1.0).abs() < 1e-12 * a.re.max(1.0));
        }
        prop_assert!(bilinear(&s1.vector, &s2.vector).norm() < 1e-10);
        let b12 = hermitian(&s1.vector, &s2.vector);
        let b21 = hermitian(&s2.vector, &s1.vector);
        prop_assert!(b12.re.abs() < 1e-10);
        prop_assert!((b12 + b21).norm() < 1e-10);
    }

    #[test]
    fn eigenvalue_order_and_sign_convention(m in matrix()) {
        let [s1, s2] = eigensolve(&m, DEFAULT_EP_TOL);
        prop_assert!(s1.value.re < s2.value.re || (s1.value.re == s2.value.re && s1.value.im <= s2.value.im));
        for s in [s1, s2] {
            let lead = if s.vector[0].norm() >= s.vector[1].norm() { s.vector[0] } else { s.vector[1] };
            let arg = lead.arg();
            prop_assert!(arg > -std::f64::consts::FRAC_PI_2 && arg <= std::f64::consts::FRAC_PI_2);
        }
    }

    #[test]
    fn rigidity_is_one_exactly_for_real_directions(x in -1.0..1.0f64, y in -1.0..1.0f64, phase in -3.0..3.0f64, tilt in 0.05..3.0f64) {
        prop_assume!(x.abs() + y.abs() > 1e-3);
        let z = C64::from_polar(1.0, phase);
        let real = EigenSolution { value: c(0.0, 0.0), vector: [z * x, z * y], c_norm_ok: true, is_ep_member: false };
        prop_assert!((phase_rigidity(&real) - 1.0).abs() < 1e-12);
        // a relative phase between the components breaks reality
        prop_assume!(x.abs() > 0.1 && y.abs() > 0.1);
        let w = C64::from_polar(1.0, tilt.min(std::f64::consts::PI - 0.05));
        let complex = EigenSolution { vector: [z * x, z * w * y], ..real };
        prop_assert!(phase_rigidity(&complex) < 1.0 - 1e-6);
    }

    #[test]
    fn symmetric_crossing_has_real_eigenvectors(e in -2.0..2.0f64, g in -1.0..0.0f64, w in 0.01..1.0f64) {
        let b = ChannelBlock::new(LevelTrajectory::new(e, 0.0, g), LevelTrajectory::new(e, 0.0, g), c(0.0, w));
        let rec = SweepRecord::evaluate(&TwoChannelSystem::new(b, b), 0.0, DEFAULT_EP_TOL);
        for ch in rec.channels {
            for o in ch.observables {
                prop_assert!((o.rigidity - 1.0).abs() < 1e-10);
                let [p, q] = o.mixing_weights.unwrap();
                prop_assert!((p - 0.5).abs() < 1e-12 && (q - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn observables_on_random_systems(sys in system(), a in 0.0..1.3f64) {
        let rec = SweepRecord::evaluate(&sys, a, DEFAULT_EP_TOL);
        for ch in rec.channels {
            prop_assume!(ch.discriminant.modulus > 1e-6);
            for o in ch.observables {
                let b = o.mixing_row.unwrap();
                prop_assert!((b[0] * b[0] + b[1] * b[1] - c(1.0, 0.0)).norm() < 1e-12);
                prop_assert!((o.rigidity * o.a_norm - 1.0).abs() < 1e-12 * o.a_norm);
                prop_assert!(o.source_term >= 0.0);
            }
        }
    }

    #[test]
    fn build_block_is_affine(b in block(), i in -64i32..64, j in -64i32..64) {
        // dyadic parameters keep every operation exact
        let dy = |x: f64| (x * 256.0).round() / 256.0;
        let b = ChannelBlock::new(
            LevelTrajectory::new(dy(b.state1.e_intercept), dy(b.state1.e_slope), b.state1.gamma_half),
            LevelTrajectory::new(dy(b.state2.e_intercept), dy(b.state2.e_slope), b.state2.gamma_half),
            b.omega,
        );
        let (a1, a2) = (i as f64 / 32.0, j as f64 / 32.0);
        let (m1, m2, mid) = (build_block(&b, a1), build_block(&b, a2), build_block(&b, (a1 + a2) / 2.0));
        prop_assert_eq!(mid.d11, (m1.d11 + m2.d11) * 0.5);
        prop_assert_eq!(mid.d22, (m1.d22 + m2.d22) * 0.5);
        prop_assert_eq!(m1.off, m2.off);
    }

    #[test]
    fn widths_never_reach_the_coupling(b in block(), g1 in -1.0..0.0f64, g2 in -1.0..0.0f64, a in -1.0..2.0f64) {
        let mut other = b;
        other.state1.gamma_half = g1;
        other.state2.gamma_half = g2;
        prop_assert_eq!(build_block(&b, a).off, build_block(&other, a).off);
    }

    #[test]
    fn s_matrix_is_unitary(p in poles(), e in -10.0..10.0f64) {
        let s = s_matrix(&p, e);
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
        let t = transmission_from_s(s);
        prop_assert!((0.0..=1.0).contains(&t));
    }

    #[test]
    fn s_matrix_ignores_pole_order(p in poles(), e in -4.0..4.0f64, rot in 0usize..8) {
        let mut q = p.clone();
        q.reverse();
        let k = rot % q.len();
        q.rotate_left(k);
        prop_assert!((s_matrix(&p, e) - s_matrix(&q, e)).norm() <= 1e-15 * p.len() as f64);
    }

    #[test]
    fn transmission_is_bounded(sys in system(), a in 0.0..1.3f64, e in -3.0..3.0f64) {
        if let Ok(t) = transmission(&sys, a, e) {
            prop_assert!((0.0..=1.0 + 1e-9).contains(&t));
        }
    }

    #[test]
    fn seventeen_digits_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        let back: f64 = fmt_f64(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn config_round_trip(cfg in run_config()) {
        let text = serialize_config(&cfg);
        let back = parse_config(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, cfg);
    }
}

fn grid_range() -> impl Strategy<Value = GridRange> {
    (-5.0..5.0f64, 1e-3..5.0f64, 2usize..5000).prop_map(|(lo, w, n)| GridRange::new(lo, lo + w, n))
}

fn run_config() -> impl Strategy<Value = RunConfig> {
    let outputs = prop::collection::btree_set(
        prop::sample::select(vec![
            Output::Sweep,
            Output::Critical,
            Output::Spectrum,
            Output::Contour,
            Output::Correlation,
        ]),
        1..5,
    );
    let format = prop::option::of(prop::sample::select(vec![Format::Csv, Format::Json, Format::Svg]));
    let spectrum = prop::option::of(prop::collection::vec(-2.0..2.0f64, 1..4));
    let preset = prop::option::of(prop::sample::select(preset_names()).prop_map(String::from));
    (
        system(),
        preset,
        grid_range(),
        grid_range(),
        1e-14..1e-6f64,
        outputs,
        format,
        spectrum,
        "[a-z][a-z0-9_/]{0,12}",
    )
        .prop_map(
            |(system, preset, a_range, e_range, ep_tol, outputs, format, spectrum_a, dir)| RunConfig {
                preset,
                system,
                a_range,
                e_range,
                ep_tol,
                outputs,
                format,
                spectrum_a,
                out_dir: PathBuf::from(dir),
            },
        )
}
