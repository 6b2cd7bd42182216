use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use qwalk_core::{build_coin, initial_state, CoinMatrix, FourStateSpec, InitialCoinState};
use qwalk_engine::{evolve, four_state_run};
use qwalk_entanglement::*;

fn four_spec() -> FourStateSpec {
    let h = Complex64::from(FRAC_1_SQRT_2);
    FourStateSpec::grover([h, h, 0.0.into(), 0.0.into()]).unwrap()
}

fn three_states() -> Vec<(CoinMatrix, InitialCoinState)> {
    let i = Complex64::i();
    vec![
        (CoinMatrix::grover(), InitialCoinState::rest()),
        (CoinMatrix::grover(), InitialCoinState::symmetric()),
        (build_coin(PI / 2.0).unwrap(), InitialCoinState::rest()),
        (build_coin(1.0).unwrap(), InitialCoinState::new(0.6.into(), 0.48 * i, 0.64.into()).unwrap()),
    ]
}

#[test]
fn schmidt_matches_partial_transpose_on_pure_states() {
    for t in 0..=5 {
        for (coin, init) in three_states() {
            let s = evolve(&initial_state(&init), &coin, t).unwrap();
            let schmidt = negativity_pure(&s).unwrap();
            let pt = negativity_mixed(&pure_density_operator(&s).unwrap(), Subsystem::Second).unwrap();
            assert!((schmidt - pt).abs() <= 1e-10, "t {t}: {schmidt} vs {pt}");
        }
        let s = four_state_run(&four_spec(), t).unwrap();
        let schmidt = negativity_pure(&s).unwrap();
        let pt = negativity_mixed(&pure_density_operator(&s).unwrap(), Subsystem::First).unwrap();
        assert!((schmidt - pt).abs() <= 1e-10, "four-state t {t}: {schmidt} vs {pt}");
    }
}

#[test]
fn direct_xy_path_matches_reduced_state() {
    for t in [1, 3, 6] {
        for (coin, init) in three_states() {
            let s = evolve(&initial_state(&init), &coin, t).unwrap();
            let rho = rho_xy(&s, DEFAULT_DENSE_CAP).unwrap();
            let a = negativity_mixed(&rho, Subsystem::Second).unwrap();
            let b = negativity_mixed(&rho, Subsystem::First).unwrap();
            let c = negativity_xy(&s, DEFAULT_DENSE_CAP).unwrap();
            assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10, "t {t}: {a} {b} {c}");
        }
    }
}

#[test]
fn reduced_state_is_a_density_operator_at_t10() {
    for (coin, init) in three_states() {
        let s = evolve(&initial_state(&init), &coin, 10).unwrap();
        let rho = rho_xy(&s, DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(rho.dims(), (21, 21));
        assert!((rho.trace() - 1.0).abs() <= 1e-10);
        assert!(rho.min_eigenvalue().unwrap() >= -1e-10);
    }
    let rho = rho_xy(&four_state_run(&four_spec(), 10).unwrap(), DEFAULT_DENSE_CAP).unwrap();
    assert!(rho.min_eigenvalue().unwrap() >= -1e-10);
}

#[test]
fn frozen_values_at_t5() {
    let g = evolve(&initial_state(&InitialCoinState::rest()), &CoinMatrix::grover(), 5).unwrap();
    assert!((negativity_pure(&g).unwrap() - 0.9359).abs() < 1e-4);
    assert!((negativity_xy(&g, 30).unwrap() - 0.3431).abs() < 1e-4);
    let f = four_state_run(&four_spec(), 5).unwrap();
    assert!((negativity_pure(&f).unwrap() - 0.9878).abs() < 1e-4);
    assert!((negativity_xy(&f, 30).unwrap() - 0.1674).abs() < 1e-4);
}

#[test]
fn series_start_at_zero_and_stay_bounded() {
    let three = WalkModel::ThreeState { coin: CoinMatrix::grover(), initial: InitialCoinState::rest() };
    let four = WalkModel::FourState(four_spec());
    for model in [&three, &four] {
        for cut in [Bipartition::CoinPosition, Bipartition::XY] {
            let s = negativity_series(model, cut, 12, DEFAULT_DENSE_CAP).unwrap();
            assert_eq!(s.len(), 13);
            assert_eq!(s[0], (0, 0.0));
            for &(_, n) in &s {
                assert!((-1e-10..=1.0 + 1e-10).contains(&n), "{} {cut:?}: {n}", model.name());
            }
        }
    }
}

#[test]
fn three_state_xy_dominates_four_state() {
    let three = WalkModel::ThreeState { coin: CoinMatrix::grover(), initial: InitialCoinState::rest() };
    let a = negativity_series(&three, Bipartition::XY, 20, DEFAULT_DENSE_CAP).unwrap();
    let b = negativity_series(&WalkModel::FourState(four_spec()), Bipartition::XY, 20, DEFAULT_DENSE_CAP).unwrap();
    for t in 5..=20 {
        assert!(a[t].1 > b[t].1, "t {t}: {} vs {}", a[t].1, b[t].1);
    }
}

#[test]
fn four_state_coin_position_oscillates_more() {
    // Mean absolute step-to-step change over t ∈ [10, 30].
    let wiggle = |s: &[(usize, f64)]| s[10..].windows(2).map(|w| (w[1].1 - w[0].1).abs()).sum::<f64>() / 20.0;
    let three = WalkModel::ThreeState { coin: CoinMatrix::grover(), initial: InitialCoinState::rest() };
    let a = negativity_series(&three, Bipartition::CoinPosition, 30, DEFAULT_DENSE_CAP).unwrap();
    let b = negativity_series(&WalkModel::FourState(four_spec()), Bipartition::CoinPosition, 30, DEFAULT_DENSE_CAP)
        .unwrap();
    assert!(wiggle(&b) > wiggle(&a), "{} vs {}", wiggle(&b), wiggle(&a));
    assert!(a[30].1 >= 0.9);
}
