//! The `(d, inf)`-RLL constraint: recognition, exact counting, noiseless
//! capacity and an enumerative (rank/unrank) encoder.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::gf2::BitWord;

/// Every pair of successive ones must be separated by at least `d` zeros.
/// `d = 0` is the unconstrained case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RllSpec {
    d: usize,
}

impl RllSpec {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `ceil(log2(d + 1))`.
    pub fn z(&self) -> usize {
        (self.d + 1).next_power_of_two().trailing_zeros() as usize
    }

    pub fn is_unconstrained(&self) -> bool {
        self.d == 0
    }

    pub fn admits(&self, w: &BitWord) -> bool {
        is_constrained(w, *self)
    }
}

pub fn is_constrained(w: &BitWord, spec: RllSpec) -> bool {
    if spec.d == 0 {
        return true;
    }
    let mut prev: Option<usize> = None;
    for p in w.support() {
        if let Some(q) = prev {
            if p - q <= spec.d {
                return false;
            }
        }
        prev = Some(p);
    }
    true
}

/// Exact counts `a(n)` of constrained words of length `n`.
#[derive(Debug, Clone)]
pub struct RllCountTable {
    spec: RllSpec,
    counts: Vec<BigUint>,
}

impl RllCountTable {
    pub fn new(spec: RllSpec, max_len: usize) -> Self {
        let mut counts: Vec<BigUint> = Vec::with_capacity(max_len + 1);
        counts.push(BigUint::one());
        for n in 1..=max_len {
            // a(n) = a(n-1) + a(n-d-1), with a(k) = 1 for k <= 0
            let tail = if n > spec.d {
                counts[n - spec.d - 1].clone()
            } else {
                BigUint::one()
            };
            let next = &counts[n - 1] + tail;
            counts.push(next);
        }
        Self { spec, counts }
    }

    pub fn spec(&self) -> RllSpec {
        self.spec
    }

    pub fn max_len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// `floor(log2 a(n))`.
    pub fn payload_bits(&self, n: usize) -> usize {
        (self.counts[n].bits() - 1) as usize
    }
}

pub fn count_constrained(n: usize, spec: RllSpec) -> BigUint {
    RllCountTable::new(spec, n).counts.pop().unwrap()
}

/// Number of uniform message bits carried by length-`n` constrained words.
pub fn payload_bits(n: usize, spec: RllSpec) -> usize {
    RllCountTable::new(spec, n).payload_bits(n)
}

/// `log2` of the largest real root of `x^{d+1} = x^d + 1`, by bisection on `[1, 2]`.
pub fn noiseless_capacity(spec: RllSpec, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    if spec.d == 0 {
        return Ok(1.0);
    }
    let d = spec.d as i32;
    let f = |x: f64| x.powi(d + 1) - x.powi(d) - 1.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    // d log2(x) / dx <= 1/ln 2 on [1, 2]
    let width = tol * std::f64::consts::LN_2;
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).log2())
}

/// Lexicographic rank/unrank coder for constrained words of a fixed length.
#[derive(Debug, Clone)]
pub struct EnumerativeCoder {
    len: usize,
    table: RllCountTable,
}

impl EnumerativeCoder {
    pub fn new(len: usize, spec: RllSpec) -> Self {
        Self {
            len,
            table: RllCountTable::new(spec, len),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn spec(&self) -> RllSpec {
        self.table.spec
    }

    /// Number of codewords, `a(len)`.
    pub fn size(&self) -> &BigUint {
        self.table.count(self.len)
    }

    pub fn payload_bits(&self) -> usize {
        self.table.payload_bits(self.len)
    }

    /// The `index`-th constrained word in lexicographic order (`0 < 1`).
    pub fn encode(&self, index: &BigUint) -> Result<BitWord> {
        if index >= self.size() {
            return Err(invalid(format!(
                "message index {index} out of range for {} constrained words",
                self.size()
            )));
        }
        let d = self.table.spec.d;
        let mut rest = index.clone();
        let mut w = BitWord::zeros(self.len);
        let mut i = 0;
        while i < self.len {
            let remaining = self.len - i;
            let with_zero = self.table.count(remaining - 1);
            if rest < *with_zero {
                i += 1;
            } else {
                rest -= with_zero;
                w.set(i, true);
                i += d + 1;
            }
        }
        debug_assert!(rest.is_zero());
        Ok(w)
    }

    /// Inverse of [`EnumerativeCoder::encode`].
    pub fn decode(&self, w: &BitWord) -> Result<BigUint> {
        if w.len() != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: w.len(),
            });
        }
        let spec = self.table.spec;
        if !is_constrained(w, spec) {
            return Err(Error::NotConstrained { d: spec.d });
        }
        let mut index = BigUint::zero();
        for p in w.support() {
            // every word with a zero here and the same prefix precedes w
            index += self.table.count(self.len - p - 1);
        }
        Ok(index)
    }
}

pub fn enumerative_encode(index: &BigUint, n: usize, spec: RllSpec) -> Result<BitWord> {
    EnumerativeCoder::new(n, spec).encode(index)
}

pub fn enumerative_decode(w: &BitWord, spec: RllSpec) -> Result<BigUint> {
    EnumerativeCoder::new(w.len(), spec).decode(w)
}
