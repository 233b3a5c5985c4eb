//! Benchmark harness: seeded random series per dtype, median timings of the
//! downsamplers, and CSV or markdown tables of the results.

use std::fmt::{self, Write as _};
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use plotdown::{downsample, f16, Algorithm, DType, DownsampleConfig, SeriesBuf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random series: the full value range for integers, uniform
/// `[0, 1)` for floats.
pub fn generate_data(dtype: DType, n: usize, seed: u64) -> SeriesBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    macro_rules! fill {
        ($t:ty) => {{
            let v: Vec<$t> = (0..n).map(|_| rng.random::<$t>()).collect();
            SeriesBuf::from(v)
        }};
    }
    match dtype {
        DType::F16 => {
            let v: Vec<f16> = (0..n).map(|_| f16::from_f32(rng.random::<f32>())).collect();
            SeriesBuf::from(v)
        }
        DType::F32 => fill!(f32),
        DType::F64 => fill!(f64),
        DType::I8 => fill!(i8),
        DType::I16 => fill!(i16),
        DType::I32 => fill!(i32),
        DType::I64 => fill!(i64),
        DType::U8 => fill!(u8),
        DType::U16 => fill!(u16),
        DType::U32 => fill!(u32),
        DType::U64 => fill!(u64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(ConfigError(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid benchmark config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub dtypes: Vec<DType>,
    pub sizes: Vec<usize>,
    pub n_out: usize,
    pub algorithms: Vec<Algorithm>,
    pub parallel: Vec<bool>,
    pub repeats: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            dtypes: DType::ALL.to_vec(),
            sizes: vec![1_000_000, 10_000_000],
            n_out: 2000,
            algorithms: Algorithm::ALL.to_vec(),
            parallel: vec![false, true],
            repeats: 11,
            seed: 42,
            format: Format::Csv,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.repeats < 3 {
            return Err(ConfigError("repeats must be at least 3".into()));
        }
        if self.sizes.is_empty() {
            return Err(ConfigError("no sizes given".into()));
        }
        if self.dtypes.is_empty() || self.algorithms.is_empty() || self.parallel.is_empty() {
            return Err(ConfigError("empty dtype, algorithm or parallel set".into()));
        }
        if self.n_out == 0 {
            return Err(ConfigError("n_out must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub dtype: DType,
    pub algorithm: Algorithm,
    pub parallel: bool,
    pub n: usize,
    pub median_ms: f64,
    pub std_ms: f64,
    /// Set when the cell failed; the timings are NaN then.
    pub error: Option<String>,
}

/// Median and sample standard deviation of repeated runs, in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub median_ms: f64,
    pub std_ms: f64,
}

/// Times `repeats` calls of `f` after one untimed warm-up call.
pub fn measure<T>(repeats: usize, mut f: impl FnMut() -> T) -> Timing {
    black_box(f());
    let mut samples: Vec<f64> = (0..repeats.max(1))
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    let m = samples.len();
    let median_ms = if m % 2 == 1 {
        samples[m / 2]
    } else {
        0.5 * (samples[m / 2 - 1] + samples[m / 2])
    };
    let mean = samples.iter().sum::<f64>() / m as f64;
    let var = if m > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (m - 1) as f64
    } else {
        0.0
    };
    Timing {
        median_ms,
        std_ms: var.sqrt(),
    }
}

/// Runs every (dtype, size, algorithm, parallel) cell. Algorithms without a
/// parallel variant only get a sequential cell.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, ConfigError> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &dtype in &cfg.dtypes {
        for &n in &cfg.sizes {
            let data = generate_data(dtype, n, cfg.seed);
            for &algorithm in &cfg.algorithms {
                for &parallel in &cfg.parallel {
                    if parallel && !algorithm.supports_parallel() {
                        continue;
                    }
                    let ds = DownsampleConfig::new(cfg.n_out).parallel(parallel);
                    let y = data.view();
                    let (timing, error) = match downsample(algorithm, None, y, &ds) {
                        Err(e) => (
                            Timing {
                                median_ms: f64::NAN,
                                std_ms: f64::NAN,
                            },
                            Some(e.to_string()),
                        ),
                        Ok(_) => (
                            measure(cfg.repeats, || downsample(algorithm, None, y, &ds)),
                            None,
                        ),
                    };
                    rows.push(BenchRow {
                        dtype,
                        algorithm,
                        parallel,
                        n,
                        median_ms: timing.median_ms,
                        std_ms: timing.std_ms,
                        error,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "dtype,algorithm,parallel,n,median_ms,std_ms";

/// Column order of the markdown table.
const TABLE_ORDER: [Algorithm; 5] = [
    Algorithm::EveryNth,
    Algorithm::M4,
    Algorithm::MinMax,
    Algorithm::MinMaxLttb,
    Algorithm::Lttb,
];

fn table_rank(a: Algorithm) -> usize {
    TABLE_ORDER.iter().position(|t| *t == a).unwrap_or(usize::MAX)
}

fn fmt_ms(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.6}")
    } else {
        "nan".to_string()
    }
}

pub fn emit_table(rows: &[BenchRow], format: Format) -> String {
    let mut sorted: Vec<&BenchRow> = rows.iter().collect();
    sorted.sort_by_key(|r| (r.dtype, r.n, table_rank(r.algorithm), r.parallel));
    match format {
        Format::Csv => emit_csv(&sorted),
        Format::Markdown => emit_markdown(&sorted),
    }
}

fn emit_csv(rows: &[&BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        // Writing to a String cannot fail.
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.dtype,
            r.algorithm,
            r.parallel,
            r.n,
            fmt_ms(r.median_ms),
            fmt_ms(r.std_ms)
        );
    }
    out
}

fn emit_markdown(rows: &[&BenchRow]) -> String {
    let mut columns: Vec<(Algorithm, bool)> = rows.iter().map(|r| (r.algorithm, r.parallel)).collect();
    columns.sort_by_key(|(a, p)| (table_rank(*a), *p));
    columns.dedup();

    let mut keys: Vec<(DType, usize)> = rows.iter().map(|r| (r.dtype, r.n)).collect();
    keys.dedup();

    let mut out = String::from("| dtype | N |");
    for (a, p) in &columns {
        let _ = write!(out, " {} ({}) |", a, if *p { "parallel" } else { "sequential" });
    }
    out.push_str("\n|---|---:|");
    for _ in &columns {
        out.push_str("---:|");
    }
    out.push('\n');
    for (dtype, n) in keys {
        let _ = write!(out, "| {dtype} | {n} |");
        for (a, p) in &columns {
            let cell = rows
                .iter()
                .find(|r| r.dtype == dtype && r.n == n && r.algorithm == *a && r.parallel == *p)
                .map(|r| if r.median_ms.is_finite() { format!("{:.2}", r.median_ms) } else { "error".into() })
                .unwrap_or_else(|| "-".into());
            let _ = write!(out, " {cell} |");
        }
        out.push('\n');
    }
    out
}
