//! Coordinate orderings and the run structure of information sets under them.
//!
//! Position `j` of an ordered code carries coordinate `perm[j]`. A run is a
//! maximal block of consecutive positions whose coordinates all lie in a given
//! set; its length is the number of positions it covers.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::channel::stream_rng;
use crate::error::{invalid, Error, Result};
use crate::gf2::{BinaryMatrix, BitWord};
use crate::rll::RllSpec;
use crate::rm::{binomial, RmCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    Lexicographic,
    Gray,
    Explicit,
    /// Uniform shuffle drawn from stream `stream` of `seed`.
    Sampled {
        seed: u64,
        stream: u64,
    },
}

impl OrderingKind {
    pub fn label(&self) -> &'static str {
        match self {
            OrderingKind::Lexicographic => "lex",
            OrderingKind::Gray => "gray",
            OrderingKind::Explicit => "explicit",
            OrderingKind::Sampled { .. } => "sampled",
        }
    }
}

/// A permutation of the coordinates `[0, 2^m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    m: usize,
    perm: Vec<usize>,
    kind: OrderingKind,
}

impl Ordering {
    pub fn lexicographic(m: usize) -> Self {
        Self {
            m,
            perm: (0..1 << m).collect(),
            kind: OrderingKind::Lexicographic,
        }
    }

    /// Binary reflected Gray code: position `j` holds `j ^ (j >> 1)`.
    pub fn gray(m: usize) -> Self {
        Self {
            m,
            perm: (0..1usize << m).map(|j| j ^ (j >> 1)).collect(),
            kind: OrderingKind::Gray,
        }
    }

    pub fn explicit(m: usize, perm: Vec<usize>) -> Result<Self> {
        let n = 1usize << m;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(invalid(format!("not a permutation of [0, {n}): {p}")));
            }
            seen[p] = true;
        }
        Ok(Self {
            m,
            perm,
            kind: OrderingKind::Explicit,
        })
    }

    /// Uniformly random ordering; identical for identical `(seed, stream)`.
    pub fn sampled(m: usize, seed: u64, stream: u64) -> Self {
        let mut rng = stream_rng(seed, stream);
        let mut perm: Vec<usize> = (0..1 << m).collect();
        perm.shuffle(&mut rng);
        Self {
            m,
            perm,
            kind: OrderingKind::Sampled { seed, stream },
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Coordinate at position `j`.
    pub fn coordinate(&self, j: usize) -> usize {
        self.perm[j]
    }

    /// `inv[c]` is the position of coordinate `c`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (j, &c) in self.perm.iter().enumerate() {
            inv[c] = j;
        }
        inv
    }

    /// Reorders a word given in coordinate order into position order.
    pub fn apply(&self, w: &BitWord) -> Result<BitWord> {
        if w.len() != self.perm.len() {
            return Err(Error::DimensionMismatch {
                expected: self.perm.len(),
                found: w.len(),
            });
        }
        Ok(w.gather(&self.perm))
    }

    /// Reorders the columns of a generator matrix.
    pub fn apply_columns(&self, g: &BinaryMatrix) -> Result<BinaryMatrix> {
        if g.num_cols() != self.perm.len() {
            return Err(Error::DimensionMismatch {
                expected: self.perm.len(),
                found: g.num_cols(),
            });
        }
        g.select_columns(&self.perm)
    }

    /// Whether consecutive labels differ in exactly one bit.
    pub fn is_gray(&self) -> bool {
        self.perm
            .windows(2)
            .all(|p| (p[0] ^ p[1]).count_ones() == 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub len: usize,
}

impl Run {
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

/// Runs of an information set under an ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunProfile {
    pub runs: Vec<Run>,
    /// Runs whose last position has a successor.
    pub gamma_size: usize,
    /// Disjoint `(d+1)`-tuples of consecutive positions: `sum floor(len/(d+1))`.
    pub t_count: usize,
    /// Size of the information set.
    pub k: usize,
}

pub fn run_profile(info_set: &[usize], ord: &Ordering, spec: RllSpec) -> Result<RunProfile> {
    let n = ord.len();
    let mut member = vec![false; n];
    for &c in info_set {
        if c >= n {
            return Err(Error::IndexOutOfRange { index: c, len: n });
        }
        member[c] = true;
    }
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for j in 0..=n {
        let inside = j < n && member[ord.coordinate(j)];
        match (inside, start) {
            (true, None) => start = Some(j),
            (false, Some(s)) => {
                runs.push(Run {
                    start: s,
                    len: j - s,
                });
                start = None;
            }
            _ => {}
        }
    }
    let gamma_size = runs.iter().filter(|r| r.end() < n).count();
    let t_count = runs.iter().map(|r| r.len / (spec.d() + 1)).sum();
    Ok(RunProfile {
        runs,
        gamma_size,
        t_count,
        k: member.iter().filter(|&&b| b).count(),
    })
}

/// `C(m-1, r)`, the number of lexicographic runs of the weight-`<= r` information set.
pub fn lex_run_count(m: usize, r: usize) -> Result<u64> {
    if m == 0 || r >= m {
        return Err(invalid(format!(
            "run count needs 0 <= r <= m-1, got m = {m}, r = {r}"
        )));
    }
    Ok(binomial(m - 1, r))
}

/// `max{K - d*t, 0}`.
pub fn linear_subcode_dimension_bound(k: usize, t: usize, spec: RllSpec) -> usize {
    k.saturating_sub(spec.d() * t)
}

/// `R / (d+1)`.
pub fn asymptotic_linear_bound(rate: f64, spec: RllSpec) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(invalid(format!("rate must lie in (0,1), got {rate}")));
    }
    Ok(rate / (spec.d() + 1) as f64)
}

/// Dimension bound for one ordering of a code.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingBound {
    pub kind: OrderingKind,
    pub profile: RunProfile,
    pub bound_dim: usize,
    /// `bound_dim / 2^m`.
    pub bound_rate: f64,
}

pub fn ordering_bound(code: &RmCode, ord: &Ordering, spec: RllSpec) -> Result<OrderingBound> {
    if ord.m() != code.m() {
        return Err(Error::DimensionMismatch {
            expected: code.m(),
            found: ord.m(),
        });
    }
    let profile = run_profile(&code.information_set(), ord, spec)?;
    let bound_dim = linear_subcode_dimension_bound(profile.k, profile.t_count, spec);
    Ok(OrderingBound {
        kind: ord.kind(),
        profile,
        bound_dim,
        bound_rate: bound_dim as f64 / code.len() as f64,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationExperiment {
    pub samples: Vec<OrderingBound>,
    pub mean: f64,
    pub max: f64,
}

impl PermutationExperiment {
    /// Fraction of samples whose bound rate exceeds `threshold`.
    pub fn fraction_above(&self, threshold: f64) -> f64 {
        let above = self
            .samples
            .iter()
            .filter(|s| s.bound_rate > threshold)
            .count();
        above as f64 / self.samples.len() as f64
    }
}

/// Dimension bounds over `samples` random orderings. Sample `i` uses stream
/// `i` of `seed`; with `include_identity` sample 0 is the lexicographic
/// ordering instead.
pub fn permutation_bound_experiment(
    code: &RmCode,
    spec: RllSpec,
    samples: usize,
    seed: u64,
    include_identity: bool,
) -> Result<PermutationExperiment> {
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let m = code.m();
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let ord = if include_identity && i == 0 {
                Ordering::lexicographic(m)
            } else {
                Ordering::sampled(m, seed, i as u64)
            };
            ordering_bound(code, &ord, spec)
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = results.iter().map(|s| s.bound_rate).sum::<f64>() / samples as f64;
    let max = results
        .iter()
        .map(|s| s.bound_rate)
        .fold(f64::MIN, f64::max);
    Ok(PermutationExperiment {
        samples: results,
        mean,
        max,
    })
}
