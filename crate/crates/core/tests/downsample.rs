#[macro_use]
mod common;

use common::*;
use plotdown::{downsample, Algorithm, DType, DownsampleConfig, IndexSeries, SeriesBuf};
use proptest::prelude::*;
use rand::Rng;

fn reference(algorithm: Algorithm, x: Option<&[f64]>, y: &SeriesBuf, cfg: &DownsampleConfig) -> Vec<u64> {
    with_buf!(y, v => {
        let ys = widen(v);
        match algorithm {
            Algorithm::EveryNth => ref_every_nth(v.len(), cfg.n_out),
            Algorithm::MinMax => ref_minmax(x, v, cfg.n_out),
            Algorithm::M4 => ref_m4(x, v, cfg.n_out),
            Algorithm::Lttb => ref_lttb(x, &ys, cfg.n_out),
            Algorithm::MinMaxLttb => ref_minmaxlttb(x, v, &ys, cfg.n_out, cfg.minmax_ratio),
        }
    })
}

fn n_out_for(algorithm: Algorithm, rng: &mut impl Rng) -> usize {
    match algorithm {
        Algorithm::M4 => 4 * rng.random_range(1..40),
        Algorithm::MinMax => 2 * rng.random_range(1..80),
        _ => rng.random_range(3..160),
    }
}

#[test]
fn algorithms_match_the_reference() {
    let mut r = rng(11);
    for case in 0..220u64 {
        let dtype = DType::ALL[case as usize % DType::ALL.len()];
        let len = r.random_range(1..3000);
        let dups = case % 3 == 0;
        let y = random_series(dtype, len, case, dups);
        let x_mode = case % 3; // none, dense axis, axis with gaps
        let x = (x_mode > 0).then(|| random_axis(len, case, x_mode == 2));
        for algorithm in Algorithm::ALL {
            let cfg = DownsampleConfig::new(n_out_for(algorithm, &mut r))
                .minmax_ratio(r.random_range(1..7));
            let xs = x.as_ref().map(|x| IndexSeries::from(x));
            let got = downsample(algorithm, xs, y.view(), &cfg).unwrap();
            let xr = if algorithm == Algorithm::EveryNth { None } else { x.as_deref() };
            assert_eq!(
                got.as_slice(),
                reference(algorithm, xr, &y, &cfg),
                "case={case} {algorithm} {dtype} len={len} cfg={cfg:?} x={x_mode}"
            );
        }
    }
}

#[test]
fn x_dtype_does_not_matter() {
    let y = random_series(DType::F32, 4000, 3, false);
    let x = random_axis(4000, 3, true);
    let shift = -x[0];
    let as_i64: Vec<i64> = x.iter().map(|v| *v as i64).collect();
    let as_u32: Vec<u32> = x.iter().map(|v| (v + shift) as u32).collect();
    let as_f32: Vec<f32> = x.iter().map(|v| *v as f32).collect();
    let shifted: Vec<f64> = x.iter().map(|v| v + shift).collect();
    for algorithm in Algorithm::ALL {
        let cfg = DownsampleConfig::new(100);
        let base = downsample(algorithm, Some((&x).into()), y.view(), &cfg).unwrap();
        for xs in [
            IndexSeries::from_ticks(&as_i64),
            (&as_u32).into(),
            (&as_f32).into(),
            (&shifted).into(),
        ] {
            assert_eq!(downsample(algorithm, Some(xs), y.view(), &cfg).unwrap(), base, "{algorithm}");
        }
    }
}

#[test]
fn parallel_output_equals_sequential() {
    for dtype in DType::ALL {
        for (seed, gaps) in [(1u64, false), (2, true)] {
            let y = random_series(dtype, 200_003, seed, seed == 2);
            let x = random_axis(200_003, seed, gaps);
            for algorithm in Algorithm::ALL {
                for xs in [None, Some(IndexSeries::from(&x))] {
                    let cfg = DownsampleConfig::new(1000);
                    let seq = downsample(algorithm, xs, y.view(), &cfg).unwrap();
                    let par = downsample(algorithm, xs, y.view(), &cfg.parallel(true)).unwrap();
                    assert_eq!(seq, par, "{algorithm} {dtype}");
                }
            }
        }
    }
}

#[test]
fn equally_sampled_x_matches_implicit_index() {
    for len in [5usize, 97, 1000, 4099, 50_000] {
        let y = random_series(DType::F64, len, len as u64, false);
        let ticks: Vec<i64> = (0..len as i64).map(|i| 1_600_000_000_000_000_000 + 1_000_000_000 * i).collect();
        let halves: Vec<f64> = (0..len).map(|i| -3.0 + 0.5 * i as f64).collect();
        let ints: Vec<u16> = (0..len).map(|i| i as u16).collect();
        for algorithm in Algorithm::ALL {
            for n_out in [4usize, 12, 100, 1000] {
                let cfg = DownsampleConfig::new(n_out);
                let implicit = downsample(algorithm, None, y.view(), &cfg).unwrap();
                assert_eq!(
                    downsample(algorithm, Some(IndexSeries::from_ticks(&ticks)), y.view(), &cfg).unwrap(),
                    implicit,
                    "{algorithm} len={len} n_out={n_out}"
                );
                assert_eq!(downsample(algorithm, Some((&halves).into()), y.view(), &cfg).unwrap(), implicit);
                if len <= u16::MAX as usize {
                    assert_eq!(downsample(algorithm, Some((&ints).into()), y.view(), &cfg).unwrap(), implicit);
                }
            }
        }
    }
}

#[test]
fn dtype_does_not_change_the_selection() {
    // Small non-negative integers are exact in every dtype.
    let mut r = rng(5);
    let base: Vec<u8> = (0..20_000).map(|_| r.random_range(0..100)).collect();
    let bufs: Vec<SeriesBuf> = vec![
        base.iter().map(|&v| plotdown::f16::from_f32(v as f32)).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as f32).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as f64).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as i8).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as i16).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as i32).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as i64).collect::<Vec<_>>().into(),
        base.clone().into(),
        base.iter().map(|&v| v as u16).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as u32).collect::<Vec<_>>().into(),
        base.iter().map(|&v| v as u64).collect::<Vec<_>>().into(),
    ];
    for algorithm in Algorithm::ALL {
        let cfg = DownsampleConfig::new(200);
        let expected = downsample(algorithm, None, bufs[0].view(), &cfg).unwrap();
        for b in &bufs {
            assert_eq!(downsample(algorithm, None, b.view(), &cfg).unwrap(), expected, "{algorithm} {}", b.dtype());
        }
    }
}

fn check_invariants(algorithm: Algorithm, y: &[f64], cfg: &DownsampleConfig) -> Result<(), TestCaseError> {
    let out = downsample(algorithm, None, (&y[..]).into(), cfg).unwrap();
    let len = y.len() as u64;
    prop_assert!(out.windows(2).all(|w| w[0] < w[1]));
    prop_assert!(out.iter().all(|&i| i < len));
    prop_assert!(out.len() <= cfg.n_out.max(y.len().min(cfg.n_out)));
    if y.len() <= cfg.n_out {
        prop_assert_eq!(out.len(), y.len());
        return Ok(());
    }
    let (lo, hi) = ref_argminmax(y);
    match algorithm {
        Algorithm::M4 => {
            prop_assert_eq!(out[0], 0);
            prop_assert_eq!(*out.last().unwrap(), len - 1);
            prop_assert!(out.contains(&(lo as u64)) && out.contains(&(hi as u64)));
        }
        Algorithm::MinMax => {
            prop_assert!(out.contains(&(lo as u64)) && out.contains(&(hi as u64)));
        }
        Algorithm::Lttb | Algorithm::MinMaxLttb => {
            prop_assert_eq!(out[0], 0);
            prop_assert_eq!(*out.last().unwrap(), len - 1);
            prop_assert_eq!(out.len(), cfg.n_out);
        }
        Algorithm::EveryNth => prop_assert_eq!(out[0], 0),
    }
    Ok(())
}

proptest! {
    #[test]
    fn output_invariants(
        y in prop::collection::vec(-1e6f64..1e6, 1..2000),
        k in 1usize..50,
    ) {
        for algorithm in Algorithm::ALL {
            let n_out = match algorithm {
                Algorithm::M4 => 4 * k,
                Algorithm::MinMax => 2 * k,
                _ => 2 + k,
            };
            check_invariants(algorithm, &y, &DownsampleConfig::new(n_out))?;
        }
    }
}
