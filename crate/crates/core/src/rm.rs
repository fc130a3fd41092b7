//! Reed-Muller codes under the lexicographic evaluation order.
//!
//! Coordinate `i` of a length-`2^m` word is the evaluation point whose
//! `m`-bit binary representation is `i`, most significant bit first. Variable
//! `x_{j+1}` (0-based `j`) therefore reads bit `m - 1 - j` of the coordinate
//! index, so `x_m` is the least significant bit.

use itertools::Itertools;
use statrs::function::erf::erfc;

use crate::error::{invalid, Error, Result};
use crate::gf2::{BinaryMatrix, BitWord};

/// Largest supported number of variables.
pub const MAX_VARIABLES: usize = 20;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `C(n, <= k)`; zero for negative `k`.
pub fn binomial_sum(n: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    (0..=(k as usize).min(n)).map(|i| binomial(n, i)).sum()
}

/// An evaluation point `z` in `{0,1}^m` and its integer label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvaluationPoint {
    m: usize,
    index: usize,
}

impl EvaluationPoint {
    pub fn new(m: usize, index: usize) -> Result<Self> {
        if index >= 1 << m {
            return Err(Error::IndexOutOfRange { index, len: 1 << m });
        }
        Ok(Self { m, index })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let index = bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize);
        Self {
            m: bits.len(),
            index,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `(z_1, ..., z_m)`, most significant first.
    pub fn bits(&self) -> Vec<bool> {
        (0..self.m).map(|j| self.coordinate(j)).collect()
    }

    /// `z_{j+1}`.
    pub fn coordinate(&self, j: usize) -> bool {
        (self.index >> (self.m - 1 - j)) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.index.count_ones() as usize
    }
}

fn variable_mask(m: usize, vars: &[usize]) -> Result<usize> {
    vars.iter().try_fold(0usize, |mask, &j| {
        if j >= m {
            Err(invalid(format!(
                "variable index {j} out of range for m = {m}"
            )))
        } else {
            Ok(mask | 1 << (m - 1 - j))
        }
    })
}

/// Evaluation vector of `prod_{j in vars} x_{j+1}` (0-based variable indices).
pub fn eval_monomial(m: usize, vars: &[usize]) -> Result<BitWord> {
    if m > MAX_VARIABLES {
        return Err(invalid(format!("m = {m} exceeds {MAX_VARIABLES}")));
    }
    let mask = variable_mask(m, vars)?;
    let n = 1usize << m;
    let mut w = BitWord::zeros(n);
    for i in (0..n).filter(|i| i & mask == mask) {
        w.set(i, true);
    }
    Ok(w)
}

/// Subsets of `vars` with size in `degrees`, ordered by size and then
/// lexicographically.
pub(crate) fn monomials_over(
    vars: &[usize],
    degrees: impl IntoIterator<Item = usize>,
) -> Vec<Vec<usize>> {
    degrees
        .into_iter()
        .filter(|&deg| deg <= vars.len())
        .flat_map(|deg| vars.iter().copied().combinations(deg))
        .collect()
}

/// A Reed-Muller code `RM(m, r)` with its lexicographic generator matrix.
///
/// Generator rows are the evaluations of all monomials of degree at most
/// `r`, ordered by degree and then lexicographically on the variable set.
#[derive(Debug, Clone)]
pub struct RmCode {
    m: usize,
    r: usize,
    generator: BinaryMatrix,
    monomials: Vec<Vec<usize>>,
}

impl RmCode {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if r > m {
            return Err(invalid(format!("order r = {r} exceeds m = {m}")));
        }
        if m > MAX_VARIABLES {
            return Err(invalid(format!("m = {m} exceeds {MAX_VARIABLES}")));
        }
        let vars: Vec<usize> = (0..m).collect();
        let monomials = monomials_over(&vars, 0..=r);
        let rows = monomials
            .iter()
            .map(|s| eval_monomial(m, s))
            .collect::<Result<Vec<_>>>()?;
        let generator = BinaryMatrix::from_rows(rows, 1 << m)?;
        Ok(Self {
            m,
            r,
            generator,
            monomials,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Blocklength `2^m`.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `C(m, <= r)`.
    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.len() as f64
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// Variable sets (0-based) of the generator rows, in row order.
    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn encode(&self, message: &BitWord) -> Result<BitWord> {
        self.generator.mul_left(message)
    }

    /// Coordinates whose label has weight at most `r`, ascending. The
    /// generator restricted to these columns is invertible.
    pub fn information_set(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| i.count_ones() as usize <= self.r)
            .collect()
    }

    /// Smallest nonzero codeword weight, by walking all `2^K` messages in
    /// Gray-code order. Refuses `K > 24`.
    pub fn minimum_distance_exhaustive(&self) -> Result<usize> {
        let k = self.dimension();
        if k > 24 {
            return Err(Error::Infeasible(format!(
                "exhaustive minimum distance needs K <= 24, got {k}"
            )));
        }
        let mut word = BitWord::zeros(self.len());
        let mut best = usize::MAX;
        for step in 1u64..(1u64 << k) {
            let row = step.trailing_zeros() as usize;
            word ^= self.generator.row(row);
            best = best.min(word.weight());
        }
        Ok(best)
    }
}

/// Generator of the span of all monomials of degree at least `r + 1`. Empty
/// (zero rows) when `r == m`.
pub fn complement_basis(m: usize, r: usize) -> Result<BinaryMatrix> {
    if r > m {
        return Err(invalid(format!("order r = {r} exceeds m = {m}")));
    }
    let vars: Vec<usize> = (0..m).collect();
    let rows = monomials_over(&vars, r + 1..=m)
        .iter()
        .map(|s| eval_monomial(m, s))
        .collect::<Result<Vec<_>>>()?;
    BinaryMatrix::from_rows(rows, 1 << m)
}

/// Standard normal tail probability `Q(x) = P(Z > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// `Q^{-1}(p)` by bisection on `[-10, 10]` until the bracket is narrower than `tol`.
pub fn q_inverse(p: f64, tol: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("Q^-1 needs p in (0,1), got {p}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let (mut lo, mut hi) = (-10.0f64, 10.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let q = q_function(mid);
        if q == p {
            return Ok(mid);
        }
        // Q is decreasing
        if q > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Order `max{floor(m/2 + sqrt(m)/2 * Q^{-1}(1 - R)), 0}`, capped at `m`.
pub fn select_order(m: usize, rate: f64, tol: f64) -> Result<usize> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(invalid(format!("rate must lie in (0,1), got {rate}")));
    }
    let q = q_inverse(1.0 - rate, tol)?;
    let v = (m as f64 / 2.0 + (m as f64).sqrt() / 2.0 * q).floor();
    Ok((v.max(0.0) as usize).min(m))
}
