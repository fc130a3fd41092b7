//! Computations behind the command-line tool, and the CSV table they print.
//!
//! Every function here is deterministic given its arguments; stochastic ones
//! take an explicit seed.

use std::io::{self, Write};

use num_bigint::BigUint;
use rand::RngCore;

use crate::channel::{
    binary_entropy, bsc_parameter_for_capacity, estimate_block_error, BlockErrorEstimate,
    ChannelModel,
};
use crate::coset::{coset_rate_lower_bound, crossover_capacity, CosetPlan, Crossover};
use crate::error::{invalid, Result};
use crate::gf2::{BinaryMatrix, BitWord};
use crate::ordering::{ordering_bound, permutation_bound_experiment, run_profile, Ordering};
use crate::rll::{noiseless_capacity, RllSpec};
use crate::rm::{binomial, complement_basis, RmCode};
use crate::subcode::{largest_linear_rll_subcode, RllSubcode};

/// Tolerance for every bisection the commands run.
pub const BISECTION_TOL: f64 = 1e-12;

/// Rates and probabilities in CSV output.
pub fn fmt_rate(x: f64) -> String {
    format!("{x:.6}")
}

/// A CSV body preceded by `# key=value` comment lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub comments: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, key: &str, value: impl ToString) {
        self.comments.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (k, v) in &self.comments {
            writeln!(out, "# {k}={v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub capacity: f64,
    pub subcode: f64,
    pub coset: f64,
    pub pvk: f64,
}

/// Capacity grid `0, step, 2 step, ..., 1`, always ending at exactly 1.
pub fn capacity_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(invalid(format!(
            "grid step must lie in (0, 0.1], got {step}"
        )));
    }
    let mut grid: Vec<f64> = (0..)
        .map(|k| k as f64 * step)
        .take_while(|&c| c < 1.0 - 1e-9)
        .collect();
    grid.push(1.0);
    Ok(grid)
}

pub fn rate_curves(spec: RllSpec, tau: usize, step: f64) -> Result<Vec<RateRow>> {
    let c0 = noiseless_capacity(spec, BISECTION_TOL)?;
    let scale = (-(spec.z() as f64)).exp2();
    capacity_grid(step)?
        .into_iter()
        .map(|c| {
            Ok(RateRow {
                capacity: c,
                subcode: c * scale,
                coset: coset_rate_lower_bound(c0, c, spec, tau)?,
                pvk: (c0 + c - 1.0).max(0.0),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    InformationSetRank,
    ComplementSpan,
    LexRunCount,
    GrayRunBound,
}

impl Lemma {
    pub fn label(&self) -> &'static str {
        match self {
            Lemma::InformationSetRank => "info-set-rank",
            Lemma::ComplementSpan => "complement-span",
            Lemma::LexRunCount => "lex-run-count",
            Lemma::GrayRunBound => "gray-run-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: Lemma,
    pub m: usize,
    pub r: usize,
    pub expected: u64,
    pub found: u64,
    pub pass: bool,
}

/// Ranges for [`verify_lemmas`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaConfig {
    /// Largest `m` for the information-set rank check.
    pub m_max: usize,
    /// Largest `m` for the complement span check.
    pub span_m_max: usize,
    /// Largest `m` for the two run-count checks.
    pub runs_m_max: usize,
    /// Corrupt every generator before the rank check (negative control).
    pub inject_fault: bool,
}

impl LemmaConfig {
    pub const MAX_M: usize = 12;

    pub fn new(m_max: usize) -> Self {
        Self {
            m_max,
            span_m_max: m_max.min(8),
            runs_m_max: m_max,
            inject_fault: false,
        }
    }
}

/// Exhaustive structural checks of RM codes and their orderings.
pub fn verify_lemmas(cfg: &LemmaConfig) -> Result<Vec<LemmaCheck>> {
    let top = cfg.m_max.max(cfg.span_m_max).max(cfg.runs_m_max);
    if top > LemmaConfig::MAX_M {
        return Err(invalid(format!(
            "lemma checks support m <= {}, got {top}",
            LemmaConfig::MAX_M
        )));
    }
    let mut checks = Vec::new();
    let mut record = |lemma, m, r, expected: u64, found: u64, pass: bool| {
        checks.push(LemmaCheck {
            lemma,
            m,
            r,
            expected,
            found,
            pass,
        })
    };

    for m in 1..=cfg.m_max {
        for r in 0..=m {
            let code = RmCode::new(m, r)?;
            let g = if cfg.inject_fault {
                corrupt(code.generator())
            } else {
                code.generator().clone()
            };
            let k = code.dimension() as u64;
            let rank = g.column_submatrix(&code.information_set())?.rank() as u64;
            record(Lemma::InformationSetRank, m, r, k, rank, rank == k);
        }
    }

    for m in 1..=cfg.span_m_max {
        for r in 0..m {
            let b = complement_basis(m, r)?;
            let high: Vec<usize> = (0..1usize << m)
                .filter(|i| i.count_ones() as usize > r)
                .collect();
            let rank = b.rank() as u64;
            let expected = high.len() as u64;
            // rows supported on the high-weight points, with full rank there
            let inside = b
                .rows()
                .iter()
                .all(|row| row.support().all(|i| i.count_ones() as usize > r));
            record(
                Lemma::ComplementSpan,
                m,
                r,
                expected,
                rank,
                inside && rank == expected && b.num_rows() as u64 == expected,
            );
        }
    }

    let spec = RllSpec::new(0);
    for m in 1..=cfg.runs_m_max {
        let lex = Ordering::lexicographic(m);
        let gray = Ordering::gray(m);
        for r in 0..m {
            let info: Vec<usize> = (0..1usize << m)
                .filter(|i| i.count_ones() as usize <= r)
                .collect();
            let lex_gamma = run_profile(&info, &lex, spec)?.gamma_size as u64;
            let expected = binomial(m - 1, r);
            record(
                Lemma::LexRunCount,
                m,
                r,
                expected,
                lex_gamma,
                lex_gamma == expected,
            );
            let gray_gamma = run_profile(&info, &gray, spec)?.gamma_size as u64;
            let bound = binomial(m, r + 1);
            record(
                Lemma::GrayRunBound,
                m,
                r,
                bound,
                gray_gamma,
                gray_gamma <= bound,
            );
        }
    }
    Ok(checks)
}

/// Makes the last row a copy of the first, or clears it for one-row generators.
fn corrupt(g: &BinaryMatrix) -> BinaryMatrix {
    let mut rows = g.rows().to_vec();
    let last = rows.len() - 1;
    rows[last] = if last == 0 {
        BitWord::zeros(g.num_cols())
    } else {
        rows[0].clone()
    };
    BinaryMatrix::from_rows(rows, g.num_cols()).expect("same shape")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleRow {
    pub m: usize,
    pub r: usize,
    pub d: usize,
    pub k: usize,
    pub run_bound: usize,
    pub oracle_dim: usize,
    pub construction_dim: usize,
}

impl OracleRow {
    /// `construction <= oracle <= bound`.
    pub fn is_sandwiched(&self) -> bool {
        self.construction_dim <= self.oracle_dim && self.oracle_dim <= self.run_bound
    }
}

/// Explicit subcode, exhaustive optimum and the lexicographic run bound for one code.
pub fn subcode_oracle(m: usize, r: usize, spec: RllSpec) -> Result<OracleRow> {
    let code = RmCode::new(m, r)?;
    let oracle = largest_linear_rll_subcode(&code, spec)?;
    let bound = ordering_bound(&code, &Ordering::lexicographic(m), spec)?;
    let construction_dim = if m >= spec.z() {
        RllSubcode::new(&code, spec)?.dimension()
    } else {
        0
    };
    Ok(OracleRow {
        m,
        r,
        d: spec.d(),
        k: code.dimension(),
        run_bound: bound.bound_dim,
        oracle_dim: oracle.dimension,
        construction_dim,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosetTrialReport {
    pub estimate: BlockErrorEstimate,
    pub realized_rate: f64,
}

/// A uniform `bits`-bit message.
pub fn random_message<R: RngCore + ?Sized>(rng: &mut R, bits: usize) -> BigUint {
    let words = bits.div_ceil(32);
    let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
    if !bits.is_multiple_of(32) {
        if let Some(top) = digits.last_mut() {
            *top &= (1u32 << (bits % 32)) - 1;
        }
    }
    BigUint::from_slice(&digits)
}

/// Monte-Carlo block error rate of a coset plan. Ambiguous and failed
/// decodes count as block errors; wrong messages are reported separately.
pub fn coset_trial(
    plan: &CosetPlan,
    channel: ChannelModel,
    trials: u64,
    seed: u64,
) -> Result<CosetTrialReport> {
    plan.check_decodable(channel)?;
    let bits = plan.payload_bits();
    let estimate = estimate_block_error(
        |rng| random_message(rng, bits),
        |msg| Ok(plan.encode(msg)?.word()),
        |y| Ok(plan.decode(y, channel)?.message().cloned()),
        channel,
        trials,
        seed,
    )?;
    Ok(CosetTrialReport {
        estimate,
        realized_rate: plan.realized_rate(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverReport {
    pub c0: f64,
    pub capacity: f64,
    /// Erasure probability with the same capacity, `1 - C*`.
    pub bec_epsilon: f64,
    /// Crossover probability in `(0, 1/2)` with `1 - h(p) = C*`.
    pub bsc_p: f64,
}

pub fn crossover(spec: RllSpec, tau: usize, tol: f64) -> Result<Option<CrossoverReport>> {
    let c0 = noiseless_capacity(spec, BISECTION_TOL)?;
    match crossover_capacity(spec, tau, c0, tol)? {
        Crossover::NoCrossover => Ok(None),
        Crossover::At(c) => {
            let p = bsc_parameter_for_capacity(c, BISECTION_TOL)?;
            debug_assert!((1.0 - binary_entropy(p) - c).abs() < 1e-6);
            Ok(Some(CrossoverReport {
                c0,
                capacity: c,
                bec_epsilon: 1.0 - c,
                bsc_p: p,
            }))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSample {
    pub index: usize,
    pub ordering: &'static str,
    pub gamma_size: usize,
    pub t_count: usize,
    pub bound_dim: usize,
    pub bound_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub samples: Vec<SweepSample>,
    pub mean: f64,
    pub max: f64,
    /// `K / 2^m / (d+1) + 0.05`.
    pub threshold: f64,
    pub fraction_above: f64,
}

pub const SWEEP_MAX_M: usize = 14;

/// Run bounds for random coordinate orderings of `RM(m, r)`.
pub fn permutation_sweep(
    m: usize,
    r: usize,
    spec: RllSpec,
    samples: usize,
    seed: u64,
    include_identity: bool,
) -> Result<SweepReport> {
    if m > SWEEP_MAX_M {
        return Err(invalid(format!(
            "sweep supports m <= {SWEEP_MAX_M}, got {m}"
        )));
    }
    let code = RmCode::new(m, r)?;
    let exp = permutation_bound_experiment(&code, spec, samples, seed, include_identity)?;
    let threshold = code.rate() / (spec.d() + 1) as f64 + 0.05;
    Ok(SweepReport {
        fraction_above: exp.fraction_above(threshold),
        samples: exp
            .samples
            .iter()
            .enumerate()
            .map(|(index, s)| SweepSample {
                index,
                ordering: s.kind.label(),
                gamma_size: s.profile.gamma_size,
                t_count: s.profile.t_count,
                bound_dim: s.bound_dim,
                bound_rate: s.bound_rate,
            })
            .collect(),
        mean: exp.mean,
        max: exp.max,
        threshold,
    })
}
