//! Binary erasure and binary symmetric channels, and Monte-Carlo estimators
//! of block and bit error probability.
//!
//! Output symbols are kept in the bit domain: [`Symbol::Zero`], [`Symbol::One`]
//! and [`Symbol::Erased`]. Every trial draws from its own ChaCha stream derived
//! from `(seed, trial index)`, so estimates do not depend on how trials are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::gf2::BitWord;

/// Independent random stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Crossover probability `p` in `[0, 1/2]` with `1 - h(p) = capacity`.
pub fn bsc_parameter_for_capacity(capacity: f64, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&capacity) || (tol.is_nan() || tol <= 0.0) {
        return Err(invalid(format!("capacity {capacity} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if 1.0 - binary_entropy(mid) > capacity {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    Bec { epsilon: f64 },
    Bsc { p: f64 },
}

impl ChannelModel {
    pub fn bec(epsilon: f64) -> Result<Self> {
        check_probability(epsilon)?;
        Ok(Self::Bec { epsilon })
    }

    pub fn bsc(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(Self::Bsc { p })
    }

    pub fn capacity(&self) -> f64 {
        match *self {
            Self::Bec { epsilon } => 1.0 - epsilon,
            Self::Bsc { p } => 1.0 - binary_entropy(p),
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            Self::Bec { epsilon } => epsilon,
            Self::Bsc { p } => p,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Bec { .. } => "bec",
            Self::Bsc { .. } => "bsc",
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.parameter() == 0.0
    }

    /// Passes `x` through the channel, one independent use per symbol.
    pub fn transmit<R: Rng + ?Sized>(&self, x: &BitWord, rng: &mut R) -> ChannelObservation {
        let symbols = x
            .iter()
            .map(|bit| match *self {
                Self::Bec { epsilon } => {
                    if epsilon > 0.0 && rng.gen_bool(epsilon) {
                        Symbol::Erased
                    } else {
                        Symbol::from_bit(bit)
                    }
                }
                Self::Bsc { p } => Symbol::from_bit(bit ^ (p > 0.0 && rng.gen_bool(p))),
            })
            .collect();
        ChannelObservation { symbols }
    }

    /// `P(y | x)` for a single use.
    pub fn likelihood(&self, y: Symbol, x: bool) -> f64 {
        match (*self, y) {
            (Self::Bec { epsilon }, Symbol::Erased) => epsilon,
            (Self::Bec { epsilon }, s) => {
                if s.bit() == Some(x) {
                    1.0 - epsilon
                } else {
                    0.0
                }
            }
            (Self::Bsc { .. }, Symbol::Erased) => 0.0,
            (Self::Bsc { p }, s) => {
                if s.bit() == Some(x) {
                    1.0 - p
                } else {
                    p
                }
            }
        }
    }
}

fn check_probability(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(invalid(format!(
            "channel parameter must lie in [0,1], got {v}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    One,
    Erased,
}

impl Symbol {
    pub fn from_bit(b: bool) -> Self {
        if b {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn bit(&self) -> Option<bool> {
        match self {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            Symbol::Erased => None,
        }
    }

    /// Output of the same channel use had the input been flipped.
    pub fn mirrored(&self) -> Self {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
            Symbol::Erased => Symbol::Erased,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelObservation {
    pub symbols: Vec<Symbol>,
}

impl ChannelObservation {
    pub fn noiseless(x: &BitWord) -> Self {
        Self {
            symbols: x.iter().map(Symbol::from_bit).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.symbols
            .iter()
            .filter(|s| **s == Symbol::Erased)
            .count()
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self {
            symbols: self.symbols[start..end].to_vec(),
        }
    }

    /// Hard decisions with erasures read as zero, plus the unerased positions.
    pub fn hard_decisions(&self) -> (BitWord, Vec<usize>) {
        let mut w = BitWord::zeros(self.symbols.len());
        let mut known = Vec::with_capacity(self.symbols.len());
        for (i, s) in self.symbols.iter().enumerate() {
            if let Some(b) = s.bit() {
                known.push(i);
                if b {
                    w.set(i, true);
                }
            }
        }
        (w, known)
    }
}

/// Block error estimate with a 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockErrorEstimate {
    pub trials: u64,
    /// Trials whose decoder output differed from the transmitted message,
    /// including failures.
    pub errors: u64,
    /// Trials where the decoder returned a wrong message (not a failure).
    pub wrong_decodes: u64,
    pub estimate: f64,
    pub halfwidth: f64,
}

impl BlockErrorEstimate {
    fn from_counts(trials: u64, errors: u64, wrong_decodes: u64) -> Self {
        let p = errors as f64 / trials as f64;
        Self {
            trials,
            errors,
            wrong_decodes,
            estimate: p,
            halfwidth: 1.96 * (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }
}

/// Monte-Carlo block error rate. `sample` draws a message, `encode` maps it to
/// the channel input and `decode` returns the estimate, or `None` on failure.
pub fn estimate_block_error<M, S, E, D>(
    sample: S,
    encode: E,
    decode: D,
    channel: ChannelModel,
    trials: u64,
    seed: u64,
) -> Result<BlockErrorEstimate>
where
    M: PartialEq + Send,
    S: Fn(&mut ChaCha8Rng) -> M + Sync,
    E: Fn(&M) -> Result<BitWord> + Sync,
    D: Fn(&ChannelObservation) -> Result<Option<M>> + Sync,
{
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let (errors, wrong) = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, u64)> {
            let mut rng = stream_rng(seed, t);
            let msg = sample(&mut rng);
            let x = encode(&msg)?;
            let y = channel.transmit(&x, &mut rng);
            Ok(match decode(&y)? {
                Some(ref est) if *est == msg => (0, 0),
                Some(_) => (1, 1),
                None => (1, 0),
            })
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(BlockErrorEstimate::from_counts(trials, errors, wrong))
}

/// Largest codebook the exact posterior oracle accepts.
pub const MAX_POSTERIOR_CODEBOOK: usize = 1 << 16;

/// Exact per-coordinate posteriors `P(X_i = 1 | y)` for a uniformly used codebook.
pub fn bit_posteriors(
    codebook: &[BitWord],
    y: &ChannelObservation,
    channel: ChannelModel,
) -> Result<Vec<f64>> {
    let n = y.len();
    if let Some(bad) = codebook.iter().find(|c| c.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    // log-likelihoods; None for impossible codewords
    let logs: Vec<Option<f64>> = codebook
        .iter()
        .map(|c| {
            y.symbols.iter().enumerate().try_fold(0.0, |acc, (i, &s)| {
                let l = channel.likelihood(s, c.get(i));
                (l > 0.0).then(|| acc + l.ln())
            })
        })
        .collect();
    let top = logs
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Err(Error::Infeasible(
            "observation has zero likelihood under every codeword".into(),
        ));
    }
    let mut total = 0.0;
    let mut ones = vec![0.0; n];
    for (c, l) in codebook.iter().zip(&logs) {
        if let Some(l) = l {
            let weight = (l - top).exp();
            total += weight;
            for i in c.support() {
                ones[i] += weight;
            }
        }
    }
    Ok(ones.into_iter().map(|o| o / total).collect())
}

/// Monte-Carlo estimate of the bit-MAP error `1 - (1/n) sum_i E[max_x P(X_i = x | Y)]`
/// with exact posteriors over the whole codebook.
pub fn estimate_bit_error(
    codebook: &[BitWord],
    channel: ChannelModel,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    if codebook.is_empty() || codebook.len() > MAX_POSTERIOR_CODEBOOK {
        return Err(Error::Infeasible(format!(
            "exact posteriors need 1 to {MAX_POSTERIOR_CODEBOOK} codewords, got {}",
            codebook.len()
        )));
    }
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let n = codebook[0].len();
    let sum = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let mut rng = stream_rng(seed, t);
            let x = &codebook[rng.gen_range(0..codebook.len())];
            let y = channel.transmit(x, &mut rng);
            let post = bit_posteriors(codebook, &y, channel)?;
            let confident: f64 = post.iter().map(|&p| p.max(1.0 - p)).sum();
            Ok(1.0 - confident / n as f64)
        })
        .try_reduce(|| 0.0, |a, b| Ok(a + b))?;
    Ok(sum / trials as f64)
}
