//! Python bindings. Bit vectors cross the boundary as lists of 0/1 integers;
//! erased channel outputs are `None`.

// pyo3's generated wrappers trip this lint
#![allow(clippy::useless_conversion)]

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rm_rll::channel::{ChannelModel, ChannelObservation, Symbol};
use rm_rll::coset::{self, Crossover};
use rm_rll::gf2::BitWord;
use rm_rll::rll::{self, RllSpec};
use rm_rll::{rm, subcode, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Infeasible(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_word(bits: Vec<u8>) -> PyResult<BitWord> {
    if let Some(b) = bits.iter().find(|&&b| b > 1) {
        return Err(PyValueError::new_err(format!("not a bit: {b}")));
    }
    Ok(BitWord::from_bools(
        &bits.iter().map(|&b| b == 1).collect::<Vec<_>>(),
    ))
}

fn from_word(w: &BitWord) -> Vec<u8> {
    w.iter().map(u8::from).collect()
}

fn channel(name: &str, param: f64) -> PyResult<ChannelModel> {
    match name {
        "bec" => ChannelModel::bec(param).map_err(err),
        "bsc" => ChannelModel::bsc(param).map_err(err),
        other => Err(PyValueError::new_err(format!("unknown channel '{other}'"))),
    }
}

/// Binary Reed-Muller code RM(m, r).
#[pyclass(name = "RmCode", frozen)]
struct PyRmCode {
    inner: rm::RmCode,
}

#[pymethods]
impl PyRmCode {
    #[new]
    fn new(m: usize, r: usize) -> PyResult<Self> {
        Ok(Self {
            inner: rm::RmCode::new(m, r).map_err(err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn generator(&self) -> Vec<Vec<u8>> {
        self.inner
            .generator()
            .rows()
            .iter()
            .map(from_word)
            .collect()
    }

    fn encode(&self, message: Vec<u8>) -> PyResult<Vec<u8>> {
        Ok(from_word(
            &self.inner.encode(&to_word(message)?).map_err(err)?,
        ))
    }

    fn information_set(&self) -> Vec<usize> {
        self.inner.information_set()
    }

    fn minimum_distance(&self) -> PyResult<usize> {
        self.inner.minimum_distance_exhaustive().map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RmCode(m={}, r={})", self.inner.m(), self.inner.r())
    }
}

/// Explicit linear (d, inf)-RLL subcode of RM(m, r).
#[pyclass(name = "RllSubcode", frozen)]
struct PyRllSubcode {
    inner: subcode::RllSubcode,
}

#[pymethods]
impl PyRllSubcode {
    #[new]
    fn new(m: usize, r: usize, d: usize) -> PyResult<Self> {
        Ok(Self {
            inner: subcode::RllSubcode::from_params(m, r, RllSpec::new(d)).map_err(err)?,
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn rate(&self) -> f64 {
        self.inner.rate()
    }

    fn generator(&self) -> Vec<Vec<u8>> {
        self.inner
            .generator()
            .rows()
            .iter()
            .map(from_word)
            .collect()
    }

    fn encode(&self, message: Vec<u8>) -> PyResult<Vec<u8>> {
        Ok(from_word(
            &self.inner.encode(&to_word(message)?).map_err(err)?,
        ))
    }
}

/// Constrained transmission over cosets of a permuted RM(m, r).
#[pyclass(name = "CosetPlan", frozen)]
struct PyCosetPlan {
    inner: coset::CosetPlan,
}

#[pymethods]
impl PyCosetPlan {
    #[new]
    fn new(m: usize, r: usize, d: usize, tau: usize, inner_r: usize) -> PyResult<Self> {
        Ok(Self {
            inner: coset::CosetPlan::new(m, r, RllSpec::new(d), tau, inner_r).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn parts(&self) -> usize {
        self.inner.parts()
    }

    #[getter]
    fn npart(&self) -> usize {
        self.inner.npart()
    }

    #[getter]
    fn pad_bits(&self) -> usize {
        self.inner.pad_bits()
    }

    #[getter]
    fn payload_bits(&self) -> usize {
        self.inner.payload_bits()
    }

    #[getter]
    fn total_length(&self) -> usize {
        self.inner.total_length()
    }

    #[getter]
    fn realized_rate(&self) -> f64 {
        self.inner.realized_rate()
    }

    fn encode(&self, message: BigUint) -> PyResult<Vec<u8>> {
        Ok(from_word(&self.inner.encode(&message).map_err(err)?.word()))
    }

    /// Returns the message, or None when decoding fails or is ambiguous.
    fn decode(
        &self,
        y: Vec<Option<u8>>,
        channel_name: &str,
        param: f64,
    ) -> PyResult<Option<BigUint>> {
        let model = channel(channel_name, param)?;
        let symbols = y
            .into_iter()
            .map(|s| match s {
                None => Ok(Symbol::Erased),
                Some(0) => Ok(Symbol::Zero),
                Some(1) => Ok(Symbol::One),
                Some(b) => Err(PyValueError::new_err(format!("not a channel symbol: {b}"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        let outcome = self
            .inner
            .decode(&ChannelObservation { symbols }, model)
            .map_err(err)?;
        Ok(outcome.message().cloned())
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "CosetPlan(m={}, r={}, d={}, tau={}, inner_r={})",
            p.m(),
            p.r(),
            p.spec().d(),
            p.tau(),
            p.inner_r()
        )
    }
}

#[pyfunction]
fn is_constrained(bits: Vec<u8>, d: usize) -> PyResult<bool> {
    Ok(rll::is_constrained(&to_word(bits)?, RllSpec::new(d)))
}

#[pyfunction]
fn count_constrained(n: usize, d: usize) -> BigUint {
    rll::count_constrained(n, RllSpec::new(d))
}

#[pyfunction]
#[pyo3(signature = (d, tol = 1e-12))]
fn noiseless_capacity(d: usize, tol: f64) -> PyResult<f64> {
    rll::noiseless_capacity(RllSpec::new(d), tol).map_err(err)
}

#[pyfunction]
fn enumerative_encode(index: BigUint, n: usize, d: usize) -> PyResult<Vec<u8>> {
    Ok(from_word(
        &rll::enumerative_encode(&index, n, RllSpec::new(d)).map_err(err)?,
    ))
}

#[pyfunction]
fn enumerative_decode(bits: Vec<u8>, d: usize) -> PyResult<BigUint> {
    rll::enumerative_decode(&to_word(bits)?, RllSpec::new(d)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m, rate, tol = 1e-12))]
fn select_order(m: usize, rate: f64, tol: f64) -> PyResult<usize> {
    rm::select_order(m, rate, tol).map_err(err)
}

/// Dimension of the largest linear constrained subcode, by exhaustive search.
#[pyfunction]
fn largest_linear_subcode_dimension(m: usize, r: usize, d: usize) -> PyResult<usize> {
    let code = rm::RmCode::new(m, r).map_err(err)?;
    let res = subcode::largest_linear_rll_subcode(&code, RllSpec::new(d)).map_err(err)?;
    Ok(res.dimension)
}

#[pyfunction]
#[pyo3(signature = (capacity, d, tau = 50))]
fn coset_rate_lower_bound(capacity: f64, d: usize, tau: usize) -> PyResult<f64> {
    let spec = RllSpec::new(d);
    let c0 = rll::noiseless_capacity(spec, 1e-12).map_err(err)?;
    coset::coset_rate_lower_bound(c0, capacity, spec, tau).map_err(err)
}

/// Crossover capacity, or None when the coset bound never overtakes the subcode.
#[pyfunction]
#[pyo3(signature = (d, tau = 50, tol = 1e-10))]
fn crossover_capacity(d: usize, tau: usize, tol: f64) -> PyResult<Option<f64>> {
    let spec = RllSpec::new(d);
    let c0 = rll::noiseless_capacity(spec, 1e-12).map_err(err)?;
    Ok(
        match coset::crossover_capacity(spec, tau, c0, tol).map_err(err)? {
            Crossover::At(c) => Some(c),
            Crossover::NoCrossover => None,
        },
    )
}

#[pymodule]
fn pyrmrll(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRmCode>()?;
    m.add_class::<PyRllSubcode>()?;
    m.add_class::<PyCosetPlan>()?;
    m.add_function(wrap_pyfunction!(is_constrained, m)?)?;
    m.add_function(wrap_pyfunction!(count_constrained, m)?)?;
    m.add_function(wrap_pyfunction!(noiseless_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(enumerative_encode, m)?)?;
    m.add_function(wrap_pyfunction!(enumerative_decode, m)?)?;
    m.add_function(wrap_pyfunction!(select_order, m)?)?;
    m.add_function(wrap_pyfunction!(largest_linear_subcode_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(coset_rate_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_capacity, m)?)?;
    Ok(())
}
