//! Python bindings: one stateless downsampler class per algorithm, each with
//! `downsample([x], y, *, n_out, parallel=False)` returning `uint64` indices.
//!
//! Arrays are borrowed read-only and handed to the core without copying.
//! Datetime and timedelta axes are reinterpreted as `int64` ticks.

use numpy::{
    PyArray1, PyArrayDescrMethods, PyArrayMethods, PyReadonlyArray1, PyUntypedArray,
    PyUntypedArrayMethods,
};
use plotdown::{f16, Algorithm, DownsampleConfig, Error, IndexSeries, ValueSeries};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::UnsupportedDtype(_) => PyTypeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A read-only borrow of a one-dimensional array of a supported dtype.
enum ArrayRef<'py> {
    F16(PyReadonlyArray1<'py, f16>),
    F32(PyReadonlyArray1<'py, f32>),
    F64(PyReadonlyArray1<'py, f64>),
    I8(PyReadonlyArray1<'py, i8>),
    I16(PyReadonlyArray1<'py, i16>),
    I32(PyReadonlyArray1<'py, i32>),
    I64(PyReadonlyArray1<'py, i64>),
    U8(PyReadonlyArray1<'py, u8>),
    U16(PyReadonlyArray1<'py, u16>),
    U32(PyReadonlyArray1<'py, u32>),
    U64(PyReadonlyArray1<'py, u64>),
}

macro_rules! try_dtypes {
    ($obj:expr, $($variant:ident: $t:ty),*) => {
        $(
            if let Ok(a) = $obj.cast::<PyArray1<$t>>() {
                return Ok(ArrayRef::$variant(a.readonly()));
            }
        )*
    };
}

impl<'py> ArrayRef<'py> {
    fn extract(obj: &Bound<'py, PyAny>, name: &str) -> PyResult<Self> {
        let untyped = obj
            .cast::<PyUntypedArray>()
            .map_err(|_| PyTypeError::new_err(format!("{name} must be a numpy array")))?;
        if untyped.ndim() != 1 {
            return Err(PyValueError::new_err(format!("{name} must be one-dimensional")));
        }
        let dtype = untyped.dtype();
        if matches!(dtype.kind(), b'M' | b'm') {
            let ticks = obj.call_method1("view", ("int64",))?;
            let ticks = ticks.cast::<PyArray1<i64>>().map_err(PyErr::from)?;
            return Ok(ArrayRef::I64(ticks.readonly()));
        }
        try_dtypes!(obj, F16: f16, F32: f32, F64: f64, I8: i8, I16: i16, I32: i32, I64: i64,
            U8: u8, U16: u16, U32: u32, U64: u64);
        Err(to_py_err(Error::UnsupportedDtype(dtype.str()?.to_string())))
    }

    fn series(&self) -> PyResult<ValueSeries<'_>> {
        macro_rules! slice {
            ($a:expr) => {
                ValueSeries::from($a.as_slice().map_err(|_| {
                    PyValueError::new_err("array must be C-contiguous")
                })?)
            };
        }
        Ok(match self {
            ArrayRef::F16(a) => slice!(a),
            ArrayRef::F32(a) => slice!(a),
            ArrayRef::F64(a) => slice!(a),
            ArrayRef::I8(a) => slice!(a),
            ArrayRef::I16(a) => slice!(a),
            ArrayRef::I32(a) => slice!(a),
            ArrayRef::I64(a) => slice!(a),
            ArrayRef::U8(a) => slice!(a),
            ArrayRef::U16(a) => slice!(a),
            ArrayRef::U32(a) => slice!(a),
            ArrayRef::U64(a) => slice!(a),
        })
    }
}

fn run<'py>(
    py: Python<'py>,
    algorithm: Algorithm,
    args: &Bound<'py, PyTuple>,
    cfg: DownsampleConfig,
) -> PyResult<Bound<'py, PyArray1<u64>>> {
    let (x, y) = match args.len() {
        1 => (None, ArrayRef::extract(&args.get_item(0)?, "y")?),
        2 => (
            Some(ArrayRef::extract(&args.get_item(0)?, "x")?),
            ArrayRef::extract(&args.get_item(1)?, "y")?,
        ),
        n => {
            return Err(PyTypeError::new_err(format!(
                "downsample takes y or (x, y) positionally, got {n} arguments"
            )))
        }
    };
    let xs = x.as_ref().map(ArrayRef::series).transpose()?.map(IndexSeries::new);
    let ys = y.series()?;
    let out = py
        .detach(|| plotdown::downsample(algorithm, xs, ys, &cfg))
        .map_err(to_py_err)?;
    Ok(PyArray1::from_vec(py, out.into_vec()))
}

macro_rules! downsampler {
    ($name:ident, $algorithm:expr) => {
        #[pyclass(frozen, module = "plotdown")]
        pub struct $name;

        #[pymethods]
        impl $name {
            #[new]
            fn new() -> Self {
                $name
            }

            #[pyo3(signature = (*args, n_out, parallel = false))]
            fn downsample<'py>(
                &self,
                py: Python<'py>,
                args: &Bound<'py, PyTuple>,
                n_out: usize,
                parallel: bool,
            ) -> PyResult<Bound<'py, PyArray1<u64>>> {
                run(py, $algorithm, args, DownsampleConfig::new(n_out).parallel(parallel))
            }

            fn __repr__(&self) -> &'static str {
                concat!(stringify!($name), "()")
            }
        }
    };
}

downsampler!(EveryNthDownsampler, Algorithm::EveryNth);
downsampler!(MinMaxDownsampler, Algorithm::MinMax);
downsampler!(M4Downsampler, Algorithm::M4);
downsampler!(LTTBDownsampler, Algorithm::Lttb);

#[pyclass(frozen, module = "plotdown")]
pub struct MinMaxLTTBDownsampler;

#[pymethods]
impl MinMaxLTTBDownsampler {
    #[new]
    fn new() -> Self {
        MinMaxLTTBDownsampler
    }

    #[pyo3(signature = (*args, n_out, parallel = false, minmax_ratio = plotdown::DEFAULT_MINMAX_RATIO))]
    fn downsample<'py>(
        &self,
        py: Python<'py>,
        args: &Bound<'py, PyTuple>,
        n_out: usize,
        parallel: bool,
        minmax_ratio: usize,
    ) -> PyResult<Bound<'py, PyArray1<u64>>> {
        let cfg = DownsampleConfig::new(n_out)
            .parallel(parallel)
            .minmax_ratio(minmax_ratio);
        run(py, Algorithm::MinMaxLttb, args, cfg)
    }

    fn __repr__(&self) -> &'static str {
        "MinMaxLTTBDownsampler()"
    }
}

/// Adds the downsampler classes to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EveryNthDownsampler>()?;
    m.add_class::<MinMaxDownsampler>()?;
    m.add_class::<M4Downsampler>()?;
    m.add_class::<LTTBDownsampler>()?;
    m.add_class::<MinMaxLTTBDownsampler>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[pymodule]
#[pyo3(name = "plotdown")]
fn plotdown_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
