//! Constrained transmission over cosets of a permuted Reed-Muller code.
//!
//! Encoding, for a `(d, inf)`-RLL constraint:
//!
//! 1. map the message to a constrained `K`-tuple `w` with the enumerative coder;
//! 2. encode `w` with a systematic generator of `RM(m, r)` whose coordinates
//!    are permuted so the information set `{i : wt(i) <= r}` comes first, giving
//!    `c` with `c[..K] = w`;
//! 3. send `x1 = w`;
//! 4. the tail `c[K..]` identifies the coset leader `0^K || c[K..]`; split it
//!    (zero padded) into `L` chunks and encode each with the explicit RLL
//!    subcode of `RM(n, r_inner)`, `n = m - tau + z`, sending the results as `x2`.
//!
//! Inner subcode codewords begin with at least `d` zeros, so `x1 || x2` is
//! constrained across every boundary. The decoder recovers the tail from `x2`
//! first and then solves for `w`.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::channel::{ChannelModel, ChannelObservation};
use crate::error::{invalid, Error, Result};
use crate::gf2::{BinaryMatrix, BitWord, Solution};
use crate::ordering::Ordering;
use crate::rll::{is_constrained, EnumerativeCoder, RllSpec};
use crate::rm::{binomial_sum, complement_basis, RmCode};
use crate::subcode::RllSubcode;

/// Largest inner dimension the exhaustive BSC part decoder accepts.
pub const BSC_INNER_MAX_DIMENSION: usize = 16;
/// Largest payload the exhaustive BSC outer decoder accepts.
pub const BSC_OUTER_MAX_PAYLOAD: usize = 20;

/// All derived parameters of one instance of the scheme.
#[derive(Debug)]
pub struct CosetPlan {
    m: usize,
    r: usize,
    spec: RllSpec,
    tau: usize,
    inner_r: usize,
    k: usize,
    parts: usize,
    pad_bits: usize,
    permutation: Ordering,
    systematic: BinaryMatrix,
    inner: RllSubcode,
    coder: EnumerativeCoder,
    inner_codebook: OnceLock<Vec<BitWord>>,
    outer_codebook: OnceLock<Vec<(BitWord, BitWord)>>,
}

impl CosetPlan {
    pub fn new(m: usize, r: usize, spec: RllSpec, tau: usize, inner_r: usize) -> Result<Self> {
        if r > m {
            return Err(invalid(format!("outer order r = {r} exceeds m = {m}")));
        }
        if tau == 0 {
            return Err(invalid("tau must be a positive integer"));
        }
        let z = spec.z();
        if m + z <= tau {
            return Err(Error::Infeasible(format!(
                "tau = {tau} leaves inner exponent n = m - tau + z <= 0 (m = {m}, z = {z})"
            )));
        }
        let n = m + z - tau;
        if inner_r > n {
            return Err(invalid(format!(
                "inner order {inner_r} exceeds inner m = {n}"
            )));
        }
        if inner_r < z || n < z {
            return Err(Error::Infeasible(format!(
                "inner RM({n}, {inner_r}) has a zero-dimensional (d = {},inf)-RLL subcode",
                spec.d()
            )));
        }
        let inner = RllSubcode::from_params(n, inner_r, spec)?;
        let inner_dim = inner.dimension();
        if inner_dim == 0 {
            return Err(Error::Infeasible("inner subcode has dimension 0".into()));
        }

        let code = RmCode::new(m, r)?;
        let k = code.dimension();
        let big_n = code.len();

        let mut order: Vec<usize> = (0..big_n).collect();
        order.sort_by_key(|&i| (i.count_ones(), i));
        let permutation = Ordering::explicit(m, order)?;

        let echelon = permutation.apply_columns(code.generator())?.row_reduce();
        if echelon.pivots != (0..k).collect::<Vec<_>>() {
            return Err(Error::Infeasible(
                "permuted generator is not systematic on its first K positions".into(),
            ));
        }

        let tail = big_n - k;
        let parts = tail.div_ceil(inner_dim);
        Ok(Self {
            m,
            r,
            spec,
            tau,
            inner_r,
            k,
            parts,
            pad_bits: parts * inner_dim - tail,
            permutation,
            systematic: echelon.matrix,
            inner,
            coder: EnumerativeCoder::new(k, spec),
            inner_codebook: OnceLock::new(),
            outer_codebook: OnceLock::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn spec(&self) -> RllSpec {
        self.spec
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn inner_r(&self) -> usize {
        self.inner_r
    }

    /// Inner exponent `n = m - tau + z`.
    pub fn n(&self) -> usize {
        self.inner.m()
    }

    /// Outer blocklength `N = 2^m`.
    pub fn big_n(&self) -> usize {
        1 << self.m
    }

    /// Outer dimension `K = C(m, <= r)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Channel uses per part, `2^n`.
    pub fn npart(&self) -> usize {
        self.inner.len()
    }

    pub fn inner_dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// Number of parts `L`.
    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn pad_bits(&self) -> usize {
        self.pad_bits
    }

    pub fn permutation(&self) -> &Ordering {
        &self.permutation
    }

    /// Systematic generator of the permuted outer code, identity on the first `K` columns.
    pub fn systematic_generator(&self) -> &BinaryMatrix {
        &self.systematic
    }

    pub fn inner_subcode(&self) -> &RllSubcode {
        &self.inner
    }

    /// Complement basis of `RM(m, r)` with columns in the plan's order.
    pub fn permuted_complement_basis(&self) -> Result<BinaryMatrix> {
        self.permutation
            .apply_columns(&complement_basis(self.m, self.r)?)
    }

    /// Message bits carried per block: `floor(log2 |S^(K)|)`.
    pub fn payload_bits(&self) -> usize {
        self.coder.payload_bits()
    }

    /// Total channel uses `K + L * Npart`.
    pub fn total_length(&self) -> usize {
        self.k + self.parts * self.npart()
    }

    pub fn realized_rate(&self) -> f64 {
        self.payload_bits() as f64 / self.total_length() as f64
    }

    pub fn message_count(&self) -> BigUint {
        BigUint::one() << self.payload_bits()
    }

    /// The outer codeword `w * G` for a constrained prefix `w`.
    pub fn outer_encode(&self, w: &BitWord) -> Result<BitWord> {
        self.systematic.mul_left(w)
    }

    pub fn encode(&self, message: &BigUint) -> Result<CosetTransmission> {
        if *message >= self.message_count() {
            return Err(invalid(format!(
                "message {message} needs more than {} payload bits",
                self.payload_bits()
            )));
        }
        let w = self.coder.encode(message)?;
        let c = self.outer_encode(&w)?;
        let x2_parts = self
            .split_tail(&c)
            .iter()
            .map(|chunk| self.inner.encode(chunk))
            .collect::<Result<Vec<_>>>()?;
        Ok(CosetTransmission {
            x1: w,
            x2_parts,
            outer_codeword: c,
            message: message.clone(),
        })
    }

    fn split_tail(&self, c: &BitWord) -> Vec<BitWord> {
        let mut tail = c.slice(self.k, self.big_n());
        tail.append(&BitWord::zeros(self.pad_bits));
        let dim = self.inner_dimension();
        (0..self.parts)
            .map(|i| tail.slice(i * dim, (i + 1) * dim))
            .collect()
    }

    /// Decodes a full observation of `x1 || x2`.
    pub fn decode(&self, y: &ChannelObservation, channel: ChannelModel) -> Result<DecodeOutcome> {
        if y.len() != self.total_length() {
            return Err(Error::DimensionMismatch {
                expected: self.total_length(),
                found: y.len(),
            });
        }
        let split = self.k;
        self.decode_parts(&y.slice(0, split), &y.slice(split, y.len()), channel)
    }

    /// Decodes the observations of `x1` and `x2` separately supplied.
    pub fn decode_parts(
        &self,
        y1: &ChannelObservation,
        y2: &ChannelObservation,
        channel: ChannelModel,
    ) -> Result<DecodeOutcome> {
        if y1.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: y1.len(),
            });
        }
        let x2_len = self.parts * self.npart();
        if y2.len() != x2_len {
            return Err(Error::DimensionMismatch {
                expected: x2_len,
                found: y2.len(),
            });
        }
        if matches!(channel, ChannelModel::Bsc { .. }) && (y1.erasures() > 0 || y2.erasures() > 0) {
            return Err(invalid("erasure symbol in a BSC observation"));
        }

        // stage 1: coset leader tail from the inner parts
        let dim = self.inner_dimension();
        let mut tail = BitWord::zeros(0);
        for i in 0..self.parts {
            let part = y2.slice(i * self.npart(), (i + 1) * self.npart());
            let chunk = match channel {
                ChannelModel::Bec { .. } => match self.decode_inner_erasures(&part)? {
                    Solution::Unique(u) => u,
                    Solution::Underdetermined { .. } => return Ok(DecodeOutcome::Ambiguous),
                    Solution::NoSolution => {
                        return Ok(DecodeOutcome::Failure(FailureStage::InnerPart(i)))
                    }
                },
                ChannelModel::Bsc { .. } => self.decode_inner_nearest(&part)?,
            };
            debug_assert_eq!(chunk.len(), dim);
            tail.append(&chunk);
        }
        let tail_len = self.big_n() - self.k;
        if tail.slice(tail_len, tail.len()).weight() != 0 {
            return Ok(DecodeOutcome::Failure(FailureStage::InnerPart(
                self.parts - 1,
            )));
        }
        let tail = tail.slice(0, tail_len);

        // stage 2: prefix
        let w = match channel {
            ChannelModel::Bec { .. } => match self.solve_prefix_erasures(y1, &tail)? {
                Solution::Unique(w) => w,
                Solution::Underdetermined { .. } => return Ok(DecodeOutcome::Ambiguous),
                Solution::NoSolution => return Ok(DecodeOutcome::Failure(FailureStage::Outer)),
            },
            ChannelModel::Bsc { .. } => match self.nearest_prefix(y1, &tail)? {
                Some(w) => w,
                None => return Ok(DecodeOutcome::Failure(FailureStage::Outer)),
            },
        };
        if !is_constrained(&w, self.spec) {
            return Ok(DecodeOutcome::Failure(FailureStage::Outer));
        }
        let message = self.coder.decode(&w)?;
        if message >= self.message_count() {
            return Ok(DecodeOutcome::Failure(FailureStage::Outer));
        }
        Ok(DecodeOutcome::Message(message))
    }

    fn decode_inner_erasures(&self, part: &ChannelObservation) -> Result<Solution> {
        let (bits, known) = part.hard_decisions();
        let g = self.inner.generator().select_columns(&known)?;
        g.solve_right(&bits.gather(&known))
    }

    fn inner_codebook(&self) -> Result<&[BitWord]> {
        let dim = self.inner_dimension();
        if dim > BSC_INNER_MAX_DIMENSION {
            return Err(Error::Infeasible(format!(
                "exhaustive part decoding needs inner dimension <= {BSC_INNER_MAX_DIMENSION}, got {dim}"
            )));
        }
        Ok(self.inner_codebook.get_or_init(|| {
            (0..1u64 << dim)
                .map(|u| {
                    self.inner
                        .encode(&BitWord::from_u64(u, dim))
                        .expect("message length matches inner dimension")
                })
                .collect()
        }))
    }

    fn decode_inner_nearest(&self, part: &ChannelObservation) -> Result<BitWord> {
        let (bits, _) = part.hard_decisions();
        let book = self.inner_codebook()?;
        let best = (0..book.len())
            .min_by_key(|&u| (book[u].hamming_distance(&bits), u))
            .expect("codebook is non-empty");
        Ok(BitWord::from_u64(best as u64, self.inner_dimension()))
    }

    fn solve_prefix_erasures(&self, y1: &ChannelObservation, tail: &BitWord) -> Result<Solution> {
        let (bits, known) = y1.hard_decisions();
        let mut columns = known.clone();
        columns.extend(self.k..self.big_n());
        let g = self.systematic.select_columns(&columns)?;
        let mut target = bits.gather(&known);
        target.append(tail);
        g.solve_right(&target)
    }

    fn outer_codebook(&self) -> Result<&[(BitWord, BitWord)]> {
        let payload = self.payload_bits();
        if payload > BSC_OUTER_MAX_PAYLOAD {
            return Err(Error::Infeasible(format!(
                "exhaustive prefix decoding needs payload <= {BSC_OUTER_MAX_PAYLOAD} bits, got {payload}"
            )));
        }
        Ok(self.outer_codebook.get_or_init(|| {
            (0..1u64 << payload)
                .map(|i| {
                    let w = self
                        .coder
                        .encode(&BigUint::from(i))
                        .expect("index in range");
                    let c = self.outer_encode(&w).expect("prefix length is K");
                    (w, c.slice(self.k, self.big_n()))
                })
                .collect()
        }))
    }

    /// Closest admissible prefix (Hamming distance on `x1`) among messages whose
    /// outer tail equals `tail`. Ties go to the smaller message.
    fn nearest_prefix(&self, y1: &ChannelObservation, tail: &BitWord) -> Result<Option<BitWord>> {
        let (bits, _) = y1.hard_decisions();
        let book = self.outer_codebook()?;
        Ok(book
            .iter()
            .filter(|(_, t)| t == tail)
            .min_by_key(|(w, _)| w.hamming_distance(&bits))
            .map(|(w, _)| w.clone()))
    }

    /// Fails early when the exhaustive BSC decoder would be infeasible.
    pub fn check_decodable(&self, channel: ChannelModel) -> Result<()> {
        if let ChannelModel::Bsc { .. } = channel {
            if self.inner_dimension() > BSC_INNER_MAX_DIMENSION {
                return Err(Error::Infeasible(format!(
                    "BSC decoding needs inner dimension <= {BSC_INNER_MAX_DIMENSION}, got {}",
                    self.inner_dimension()
                )));
            }
            if self.payload_bits() > BSC_OUTER_MAX_PAYLOAD {
                return Err(Error::Infeasible(format!(
                    "BSC decoding needs payload <= {BSC_OUTER_MAX_PAYLOAD} bits, got {}",
                    self.payload_bits()
                )));
            }
        }
        Ok(())
    }
}

/// Everything produced when encoding one message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTransmission {
    /// The constrained prefix `w`.
    pub x1: BitWord,
    /// Inner subcode codewords, one per part.
    pub x2_parts: Vec<BitWord>,
    /// The outer codeword `c = w * G`.
    pub outer_codeword: BitWord,
    pub message: BigUint,
}

impl CosetTransmission {
    /// The transmitted word `x1 || x2`.
    pub fn word(&self) -> BitWord {
        let mut out = self.x1.clone();
        for p in &self.x2_parts {
            out.append(p);
        }
        out
    }

    pub fn x2(&self) -> BitWord {
        BitWord::concat(&self.x2_parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureStage {
    InnerPart(usize),
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Message(BigUint),
    Ambiguous,
    Failure(FailureStage),
}

impl DecodeOutcome {
    pub fn message(&self) -> Option<&BigUint> {
        match self {
            DecodeOutcome::Message(m) => Some(m),
            _ => None,
        }
    }
}

/// The coset leader `0^K || c[K..]` of an outer codeword.
pub fn coset_leader_for(c: &BitWord, plan: &CosetPlan) -> Result<BitWord> {
    if c.len() != plan.big_n() {
        return Err(Error::DimensionMismatch {
            expected: plan.big_n(),
            found: c.len(),
        });
    }
    let mut v = BitWord::zeros(plan.k());
    v.append(&c.slice(plan.k(), plan.big_n()));
    Ok(v)
}

/// Asymptotic rate `C0 C^2 2^-z / (C^2 2^-z + 1 - C + 2^-tau)`.
pub fn coset_rate_lower_bound(c0: f64, capacity: f64, spec: RllSpec, tau: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&capacity) || !(c0 > 0.0 && c0 <= 1.0) || tau == 0 {
        return Err(invalid(format!(
            "need 0 <= C <= 1, 0 < C0 <= 1, tau >= 1 (got C = {capacity}, C0 = {c0}, tau = {tau})"
        )));
    }
    let scale = (-(spec.z() as f64)).exp2();
    let c2 = capacity * capacity * scale;
    Ok(c0 * c2 / (c2 + 1.0 - capacity + (-(tau as f64)).exp2()))
}

/// Smallest `L` with `(1 - R) / R <= L / 2^tau`, the asymptotic part count.
pub fn asymptotic_part_count(rate: f64, tau: usize) -> Result<u64> {
    if !(rate > 0.0 && rate < 1.0) || tau == 0 || tau > 52 {
        return Err(invalid(format!(
            "need R in (0,1) and 1 <= tau <= 52, got {rate}, {tau}"
        )));
    }
    Ok(((1.0 - rate) / rate * (tau as f64).exp2()).ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    At(f64),
    NoCrossover,
}

/// Capacity where the coset scheme's rate overtakes the linear subcode rate
/// `C 2^-z`, by bisection on `(0, 1]`.
pub fn crossover_capacity(spec: RllSpec, tau: usize, c0: f64, tol: f64) -> Result<Crossover> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let scale = (-(spec.z() as f64)).exp2();
    let gap = |c: f64| -> Result<f64> { Ok(coset_rate_lower_bound(c0, c, spec, tau)? - c * scale) };
    let (mut lo, mut hi) = (1e-9, 1.0);
    if gap(lo)? >= 0.0 || gap(hi)? <= 0.0 {
        return Ok(Crossover::NoCrossover);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Crossover::At(0.5 * (lo + hi)))
}

/// `C(n-z, <= r-z)`, the dimension of the inner subcode of a plan.
pub fn inner_dimension(n: usize, inner_r: usize, spec: RllSpec) -> u64 {
    let z = spec.z();
    if n < z {
        return 0;
    }
    binomial_sum(n - z, inner_r as i64 - z as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::stream_rng;
    use crate::channel::Symbol;
    use crate::rll::noiseless_capacity;
    use rand::Rng;

    fn plan_622() -> CosetPlan {
        CosetPlan::new(6, 2, RllSpec::new(1), 3, 2).unwrap()
    }

    #[test]
    fn plan_arithmetic() {
        let p = plan_622();
        assert_eq!(p.n(), 4);
        assert_eq!(p.npart(), 16);
        assert_eq!(p.k(), 22);
        assert_eq!(p.big_n() - p.k(), 42);
        assert_eq!(p.inner_dimension(), 4);
        assert_eq!(p.parts(), 11);
        assert_eq!(p.pad_bits(), 2);
        assert_eq!(p.total_length(), 198);
        assert_eq!(p.payload_bits(), 15);
        assert!((p.realized_rate() - 15.0 / 198.0).abs() < 1e-15);

        let q = CosetPlan::new(5, 2, RllSpec::new(3), 2, 2).unwrap();
        assert_eq!(q.n(), 5);
        assert_eq!(q.npart(), 32);
        assert_eq!(q.k(), 16);
        assert_eq!(q.inner_dimension(), 1);
        assert_eq!(q.parts(), 16);
        assert_eq!(q.pad_bits(), 0);
    }

    #[test]
    fn plan_rejections() {
        assert!(CosetPlan::new(6, 2, RllSpec::new(1), 7, 1).is_err());
        assert!(CosetPlan::new(6, 2, RllSpec::new(1), 3, 0).is_err());
        assert!(CosetPlan::new(6, 2, RllSpec::new(1), 0, 2).is_err());
        assert!(CosetPlan::new(6, 2, RllSpec::new(1), 3, 5).is_err());
        assert!(CosetPlan::new(6, 7, RllSpec::new(1), 3, 2).is_err());
    }

    #[test]
    fn plan_structure() {
        let p = plan_622();
        let g = p.systematic_generator();
        let head = g.select_columns(&(0..p.k()).collect::<Vec<_>>()).unwrap();
        assert_eq!(head, BinaryMatrix::identity(p.k()));
        let mut head_coords: Vec<usize> = p.permutation().as_slice()[..p.k()].to_vec();
        head_coords.sort_unstable();
        assert_eq!(head_coords, RmCode::new(6, 2).unwrap().information_set());
        let minimal = (p.parts() - 1) * p.inner_dimension() < p.big_n() - p.k();
        assert!(minimal && p.parts() * p.inner_dimension() >= p.big_n() - p.k());
    }

    #[test]
    fn zero_message() {
        let p = plan_622();
        let t = p.encode(&BigUint::from(0u32)).unwrap();
        assert!(t.x1.is_zero());
        assert!(t.outer_codeword.is_zero());
        assert!(t.x2_parts.iter().all(BitWord::is_zero));
        assert!(p.encode(&BigUint::from(1u64 << 15)).is_err());
    }

    #[test]
    fn encoded_words_are_constrained() {
        let p = plan_622();
        let spec = p.spec();
        let mut rng = stream_rng(99, 0);
        for _ in 0..100 {
            let msg = BigUint::from(rng.gen_range(0..1u64 << 15));
            let t = p.encode(&msg).unwrap();
            assert_eq!(t.word().len(), 198);
            assert!(is_constrained(&t.word(), spec));
            assert_eq!(t.outer_codeword.slice(0, p.k()), t.x1);
            for part in &t.x2_parts {
                assert!((0..spec.d()).all(|i| !part.get(i)));
            }
        }
    }

    #[test]
    fn coset_leaders() {
        let p = plan_622();
        let basis = p.permuted_complement_basis().unwrap();
        let zero = BitWord::zeros(64);
        assert_eq!(coset_leader_for(&zero, &p).unwrap(), zero);
        let ones = BitWord::ones(64);
        let v = coset_leader_for(&ones, &p).unwrap();
        assert_eq!(v.slice(0, 22), BitWord::zeros(22));
        assert_eq!(v.slice(22, 64), BitWord::ones(42));
        assert!(coset_leader_for(&BitWord::zeros(63), &p).is_err());

        let mut rng = stream_rng(5, 0);
        for _ in 0..20 {
            let u = BitWord::from_bools(&(0..22).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            let c = p.outer_encode(&u).unwrap();
            let v = coset_leader_for(&c, &p).unwrap();
            let sum = &c ^ &v;
            assert_eq!(sum.slice(0, 22), u);
            assert!(sum.slice(22, 64).is_zero());
            assert!(basis.row_space_contains(&v).unwrap());
        }
    }

    #[test]
    fn noiseless_round_trip() {
        let p = plan_622();
        let bec = ChannelModel::bec(0.0).unwrap();
        let bsc = ChannelModel::bsc(0.0).unwrap();
        for i in (0..1u64 << 15).step_by(331) {
            let msg = BigUint::from(i);
            let x = p.encode(&msg).unwrap().word();
            let y = ChannelObservation::noiseless(&x);
            assert_eq!(
                p.decode(&y, bec).unwrap(),
                DecodeOutcome::Message(msg.clone())
            );
            assert_eq!(p.decode(&y, bsc).unwrap(), DecodeOutcome::Message(msg));
        }
    }

    #[test]
    fn erasure_decoding_never_lies() {
        let p = plan_622();
        let ch = ChannelModel::bec(0.1).unwrap();
        for t in 0..300 {
            let mut rng = stream_rng(12, t);
            let msg = BigUint::from(rng.gen_range(0..1u64 << 15));
            let y = ch.transmit(&p.encode(&msg).unwrap().word(), &mut rng);
            if let DecodeOutcome::Message(got) = p.decode(&y, ch).unwrap() {
                assert_eq!(got, msg);
            }
        }
    }

    #[test]
    fn decode_rejects_bad_input() {
        let p = plan_622();
        let ch = ChannelModel::bsc(0.1).unwrap();
        let short = ChannelObservation::noiseless(&BitWord::zeros(197));
        assert!(p.decode(&short, ch).is_err());
        let mut y = ChannelObservation::noiseless(&BitWord::zeros(198));
        y.symbols[3] = Symbol::Erased;
        assert!(p.decode(&y, ch).is_err());
    }

    #[test]
    fn bsc_guard() {
        let big = CosetPlan::new(8, 4, RllSpec::new(1), 3, 3).unwrap();
        assert!(big.payload_bits() > BSC_OUTER_MAX_PAYLOAD);
        assert!(big
            .check_decodable(ChannelModel::bsc(0.01).unwrap())
            .is_err());
        assert!(big
            .check_decodable(ChannelModel::bec(0.01).unwrap())
            .is_ok());
    }

    #[test]
    fn rate_formula() {
        let c0 = noiseless_capacity(RllSpec::new(1), 1e-12).unwrap();
        let spec = RllSpec::new(1);
        let at_one = coset_rate_lower_bound(c0, 1.0, spec, 50).unwrap();
        assert!((at_one - 0.6942).abs() < 1e-3);
        let r9 = coset_rate_lower_bound(c0, 0.9, spec, 50).unwrap();
        assert!((r9 - 0.5568).abs() < 1e-3);
        assert_eq!(coset_rate_lower_bound(c0, 0.0, spec, 50).unwrap(), 0.0);
        assert!(coset_rate_lower_bound(c0, 1.2, spec, 50).is_err());
        // C0 / (1 + 2^(z - tau)) at C = 1
        let small_tau = coset_rate_lower_bound(c0, 1.0, spec, 3).unwrap();
        assert!((small_tau - c0 / (1.0 + 0.25)).abs() < 1e-12);
    }

    #[test]
    fn crossover_values() {
        let spec = RllSpec::new(1);
        let c0 = noiseless_capacity(spec, 1e-12).unwrap();
        match crossover_capacity(spec, 50, c0, 1e-9).unwrap() {
            Crossover::At(c) => assert!((c - 0.7613).abs() < 1e-3, "{c}"),
            Crossover::NoCrossover => panic!("expected a crossover"),
        }
        let spec0 = RllSpec::new(0);
        assert_eq!(
            crossover_capacity(spec0, 50, 1.0, 1e-9).unwrap(),
            Crossover::NoCrossover
        );
    }

    #[test]
    fn part_count() {
        assert_eq!(asymptotic_part_count(0.5, 3).unwrap(), 8);
        assert_eq!(asymptotic_part_count(0.8, 4).unwrap(), 4);
        assert!(asymptotic_part_count(0.0, 4).is_err());
    }
}
