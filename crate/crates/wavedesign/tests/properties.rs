use proptest::prelude::*;

use wavedesign::isl::isl_step;
use wavedesign::metrics::{correlations, correlations_direct, isl, isl_bound_db, wisl};
use wavedesign::oracle::{isl_frequency_form, wisl_frequency_form};
use wavedesign::spectra::{SpectrumGrid, ToeplitzOperator};
use wavedesign::waveform::{db10, phase_project, random_unimodular};
use wavedesign::wisl::{wisl_step, GammaSpectrum};
use wavedesign::{Complex64, Exec, WaveformSet, WeightProfile};

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=3, 1usize..=32, any::<u64>())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn rotate_codes(y: &WaveformSet, angles: &[f64]) -> WaveformSet {
    let p = y.code_length();
    let data = y
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, z)| z * Complex64::from_polar(1.0, angles[i / p]))
        .collect();
    WaveformSet::from_column_major(p, y.num_codes(), data, 1e-12).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fft_correlations_match_direct((m, p, seed) in shape()) {
        let y = random_unimodular(m, p, seed);
        let (fast, slow) = (correlations(&y), correlations_direct(&y));
        for a in 0..m {
            for b in 0..m {
                for (x, z) in fast.pair(a, b).iter().zip(slow.pair(a, b)) {
                    prop_assert!((x - z).norm() <= 1e-9 * p as f64);
                }
            }
        }
    }

    #[test]
    fn isl_time_and_frequency_agree((m, p, seed) in shape()) {
        let y = random_unimodular(m, p, seed);
        prop_assert!(rel(isl(&y), isl_frequency_form(&y)) <= 1e-8);
    }

    #[test]
    fn wisl_time_and_frequency_agree((m, p, seed) in shape(), band in 0usize..32) {
        let y = random_unimodular(m, p, seed);
        let w = WeightProfile::band(p, band % p).unwrap();
        prop_assert!(rel(wisl(&y, &w).unwrap(), wisl_frequency_form(&y, &w).unwrap()) <= 1e-8);
    }

    #[test]
    fn unit_weights_reduce_to_isl((m, p, seed) in shape()) {
        let y = random_unimodular(m, p, seed);
        prop_assert!(rel(wisl(&y, &WeightProfile::ones(p)).unwrap(), isl(&y)) <= 1e-12);
    }

    #[test]
    fn isl_ignores_per_code_phase((m, p, seed) in shape(), angles in prop::collection::vec(-3.2f64..3.2, 3)) {
        let y = random_unimodular(m, p, seed);
        prop_assert!(rel(isl(&y), isl(&rotate_codes(&y, &angles))) <= 1e-10);
    }

    #[test]
    fn isl_at_least_bound((m, p, seed) in (2usize..=3, 1usize..=32, any::<u64>())) {
        let y = random_unimodular(m, p, seed);
        prop_assert!(db10(isl(&y)) >= isl_bound_db(m, p).unwrap() - 1e-9);
    }

    #[test]
    fn projection_is_unimodular_and_keeps_phase_at_zero(
        (m, p, seed) in shape(),
        zeros in prop::collection::vec(any::<bool>(), 96),
    ) {
        let prev = random_unimodular(m, p, seed);
        let z: Vec<Complex64> = random_unimodular(m, p, seed ^ 1)
            .as_slice()
            .iter()
            .zip(&zeros)
            .map(|(z, &zero)| if zero { Complex64::new(0.0, 0.0) } else { z * 3.5 })
            .collect();
        let y = phase_project(&z, &prev).unwrap();
        for (i, v) in y.as_slice().iter().enumerate() {
            prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
            if zeros[i] {
                prop_assert_eq!(*v, prev.as_slice()[i]);
            }
        }
    }

    #[test]
    fn one_isl_step_never_increases((m, p, seed) in shape()) {
        let y = random_unimodular(m, p, seed);
        let next = isl_step(&SpectrumGrid::new(p), &y, Exec::Sequential);
        let before = isl(&y);
        prop_assert!(isl(&next) <= before * (1.0 + 1e-12));
    }

    #[test]
    fn one_wisl_step_never_increases((m, p, seed) in shape(), band in 0usize..32) {
        let y = random_unimodular(m, p, seed);
        let w = WeightProfile::band(p, band % p).unwrap();
        let spec = GammaSpectrum::new(&w, m);
        let next = wisl_step(&SpectrumGrid::new(p), &y, &spec, Exec::Sequential);
        let before = wisl(&y, &w).unwrap();
        prop_assert!(wisl(&next, &w).unwrap() <= before + 1e-12 * before.max(1.0));
    }

    #[test]
    fn parallel_step_is_bitwise_sequential((m, p, seed) in shape()) {
        let y = random_unimodular(m, p, seed);
        let grid = SpectrumGrid::new(p);
        prop_assert_eq!(isl_step(&grid, &y, Exec::Sequential), isl_step(&grid, &y, Exec::Parallel));
    }

    #[test]
    fn toeplitz_fast_apply_matches_dense(
        p in 1usize..40,
        seed in any::<u64>(),
    ) {
        let col: Vec<Complex64> = random_unimodular(1, p, seed).as_slice().iter().enumerate()
            .map(|(i, z)| z * (1.0 + i as f64)).collect();
        let t = ToeplitzOperator::hermitian(col);
        let x = random_unimodular(1, p, seed ^ 7).into_vec();
        let grid = SpectrumGrid::new(p);
        let fast = t.apply(&grid, &x, Exec::Sequential).unwrap();
        let dense = t.apply_dense(&x).unwrap();
        for (a, b) in fast.iter().zip(&dense) {
            prop_assert!((a - b).norm() <= 1e-9 * (p * p) as f64);
        }
    }

    #[test]
    fn band_profile_support(p in 1usize..64, band in 0usize..64) {
        let band = band % p;
        let w = WeightProfile::band(p, band).unwrap();
        prop_assert_eq!(w.omega(), &(0..=band).collect::<Vec<_>>()[..]);
        prop_assert!(WeightProfile::band(p, p).is_err());
    }
}
