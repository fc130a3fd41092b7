use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use rm_rll::channel::ChannelModel;
use rm_rll::coset::CosetPlan;
use rm_rll::experiments::{
    coset_trial, crossover, fmt_rate, permutation_sweep, rate_curves, subcode_oracle,
    verify_lemmas, LemmaConfig, Table,
};
use rm_rll::rll::RllSpec;
use rm_rll::rm::{select_order, RmCode};
use rm_rll::Error;

#[derive(Parser)]
#[command(
    name = "rm-rll",
    version,
    about = "Reed-Muller codes under (d,inf)-RLL input constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// File of key=value lines; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the CSV here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Subcode, coset and coset-averaging rate bounds over a capacity grid.
    RateCurves {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        step: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive checks of information sets, complement bases and run counts.
    VerifyLemmas {
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        span_m_max: Option<usize>,
        #[arg(long)]
        runs_m_max: Option<usize>,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Explicit subcode, exhaustive optimum and run bound for one code.
    SubcodeOracle {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte-Carlo block error rate of the coset scheme.
    CosetTrial {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        inner_r: Option<usize>,
        /// bec or bsc
        #[arg(long)]
        channel: Option<String>,
        #[arg(long)]
        param: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Capacity above which the coset scheme beats the linear subcode.
    Crossover {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run bounds under random coordinate orderings.
    PermSweep {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Use the lexicographic ordering for sample 0.
        #[arg(long)]
        include_identity: bool,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Config(String),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Flag, then config file, then default; records every resolved value.
struct Resolver {
    file: BTreeMap<String, String>,
    resolved: Vec<(String, String)>,
}

impl Resolver {
    fn load(common: &Common, allowed: &[&str]) -> Result<Self, Failure> {
        let mut file = BTreeMap::new();
        if let Some(path) = &common.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            for (n, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    Failure::Config(format!("{}:{}: expected key=value", path.display(), n + 1))
                })?;
                let k = k.trim().replace('_', "-");
                if !allowed.contains(&k.as_str()) {
                    return Err(Failure::Config(format!("unknown config key '{k}'")));
                }
                file.insert(k, v.trim().to_string());
            }
        }
        Ok(Self {
            file,
            resolved: Vec::new(),
        })
    }

    fn get<T>(&mut self, key: &str, flag: Option<T>, default: Option<T>) -> Result<T, Failure>
    where
        T: FromStr + ToString,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.file.get(key) {
                Some(text) => text
                    .parse()
                    .map_err(|_| Failure::Config(format!("bad value '{text}' for {key}")))?,
                None => default.ok_or_else(|| Failure::Config(format!("--{key} is required")))?,
            },
        };
        self.resolved.push((key.to_string(), value.to_string()));
        Ok(value)
    }

    fn flag(&mut self, key: &str, flag: bool) -> Result<bool, Failure> {
        let from_file = match self.file.get(key) {
            Some(t) => t
                .parse()
                .map_err(|_| Failure::Config(format!("bad value '{t}' for {key}")))?,
            None => false,
        };
        let v = flag || from_file;
        self.resolved.push((key.to_string(), v.to_string()));
        Ok(v)
    }

    fn table(&self, command: &str, header: &[&str]) -> Table {
        let mut t = Table::new(header);
        t.comment("command", command);
        for (k, v) in &self.resolved {
            t.comment(k, v);
        }
        t
    }
}

fn emit(table: &Table, footer: &[(String, String)], common: &Common) -> Result<(), Failure> {
    let mut out: Box<dyn Write> = match &common.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    table.write_to(&mut out)?;
    for (k, v) in footer {
        writeln!(out, "# {k}={v}")?;
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::RateCurves {
            d,
            tau,
            step,
            common,
        } => {
            let mut res = Resolver::load(&common, &["d", "tau", "step"])?;
            let d = res.get("d", d, None)?;
            let tau = res.get("tau", tau, Some(50))?;
            let step = res.get("step", step, Some(0.01))?;
            let rows = rate_curves(RllSpec::new(d), tau, step)?;
            let mut t = res.table(
                "rate-curves",
                &["capacity", "subcode_bound", "coset_bound", "pvk_bound"],
            );
            for row in rows {
                t.push(vec![
                    fmt_rate(row.capacity),
                    fmt_rate(row.subcode),
                    fmt_rate(row.coset),
                    fmt_rate(row.pvk),
                ]);
            }
            emit(&t, &[], &common)
        }
        Command::VerifyLemmas {
            m_max,
            span_m_max,
            runs_m_max,
            inject_fault,
            common,
        } => {
            let keys = ["m-max", "span-m-max", "runs-m-max", "inject-fault"];
            let mut res = Resolver::load(&common, &keys)?;
            let m_max = res.get("m-max", m_max, Some(6))?;
            let defaults = LemmaConfig::new(m_max);
            let cfg = LemmaConfig {
                m_max,
                span_m_max: res.get("span-m-max", span_m_max, Some(defaults.span_m_max))?,
                runs_m_max: res.get("runs-m-max", runs_m_max, Some(defaults.runs_m_max))?,
                inject_fault: res.flag("inject-fault", inject_fault)?,
            };
            let checks = verify_lemmas(&cfg)?;
            let mut t = res.table(
                "verify-lemmas",
                &["check", "m", "r", "expected", "found", "pass"],
            );
            for c in &checks {
                t.push(vec![
                    c.lemma.label().to_string(),
                    c.m.to_string(),
                    c.r.to_string(),
                    c.expected.to_string(),
                    c.found.to_string(),
                    c.pass.to_string(),
                ]);
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            let footer = [
                ("checks".to_string(), checks.len().to_string()),
                ("failed".to_string(), failed.to_string()),
            ];
            emit(&t, &footer, &common)?;
            if failed > 0 {
                return Err(Failure::Verification(format!(
                    "{failed} of {} checks failed",
                    checks.len()
                )));
            }
            Ok(())
        }
        Command::SubcodeOracle { m, r, d, common } => {
            let mut res = Resolver::load(&common, &["m", "r", "d"])?;
            let m = res.get("m", m, None)?;
            let r = res.get("r", r, None)?;
            let d = res.get("d", d, None)?;
            let row = subcode_oracle(m, r, RllSpec::new(d))?;
            let mut t = res.table(
                "subcode-oracle",
                &[
                    "m",
                    "r",
                    "d",
                    "k",
                    "run_bound",
                    "oracle_dim",
                    "construction_dim",
                ],
            );
            t.push(
                [
                    row.m,
                    row.r,
                    row.d,
                    row.k,
                    row.run_bound,
                    row.oracle_dim,
                    row.construction_dim,
                ]
                .iter()
                .map(|v| v.to_string())
                .collect(),
            );
            emit(&t, &[], &common)?;
            if !row.is_sandwiched() {
                return Err(Failure::Verification(format!(
                    "expected construction {} <= oracle {} <= bound {}",
                    row.construction_dim, row.oracle_dim, row.run_bound
                )));
            }
            Ok(())
        }
        Command::CosetTrial {
            m,
            r,
            d,
            tau,
            inner_r,
            channel,
            param,
            trials,
            seed,
            common,
        } => {
            let keys = [
                "m", "r", "d", "tau", "inner-r", "channel", "param", "trials", "seed",
            ];
            let mut res = Resolver::load(&common, &keys)?;
            let m = res.get("m", m, None)?;
            let r = res.get("r", r, None)?;
            let d = res.get("d", d, None)?;
            let tau = res.get("tau", tau, None)?;
            let spec = RllSpec::new(d);
            let default_inner = if m + spec.z() > tau && r <= m {
                let n = m + spec.z() - tau;
                let rate = RmCode::new(m, r)?.rate();
                if rate < 1.0 {
                    Some(select_order(n, rate, 1e-12)?)
                } else {
                    Some(n)
                }
            } else {
                None
            };
            let inner_r = res.get("inner-r", inner_r, default_inner)?;
            let channel_name: String = res.get("channel", channel, None)?;
            let param = res.get("param", param, None)?;
            let trials = res.get("trials", trials, Some(1000))?;
            let seed = res.get("seed", seed, None)?;
            let model = match channel_name.as_str() {
                "bec" => ChannelModel::bec(param)?,
                "bsc" => ChannelModel::bsc(param)?,
                other => return Err(Failure::Config(format!("unknown channel '{other}'"))),
            };
            let plan = CosetPlan::new(m, r, spec, tau, inner_r)?;
            let rep = coset_trial(&plan, model, trials, seed)?;
            let mut t = res.table(
                "coset-trial",
                &[
                    "m",
                    "r",
                    "d",
                    "tau",
                    "inner_r",
                    "k",
                    "l",
                    "npart",
                    "payload_bits",
                    "realized_rate",
                    "channel",
                    "param",
                    "trials",
                    "block_errors",
                    "wrong_decodes",
                    "pb_estimate",
                    "pb_halfwidth",
                ],
            );
            let e = rep.estimate;
            t.push(vec![
                m.to_string(),
                r.to_string(),
                d.to_string(),
                tau.to_string(),
                inner_r.to_string(),
                plan.k().to_string(),
                plan.parts().to_string(),
                plan.npart().to_string(),
                plan.payload_bits().to_string(),
                fmt_rate(rep.realized_rate),
                model.label().to_string(),
                fmt_rate(param),
                e.trials.to_string(),
                e.errors.to_string(),
                e.wrong_decodes.to_string(),
                fmt_rate(e.estimate),
                fmt_rate(e.halfwidth),
            ]);
            emit(&t, &[], &common)?;
            if e.wrong_decodes > 0 {
                return Err(Failure::Verification(format!(
                    "{} decodes returned a wrong message",
                    e.wrong_decodes
                )));
            }
            Ok(())
        }
        Command::Crossover {
            d,
            tau,
            tol,
            common,
        } => {
            let mut res = Resolver::load(&common, &["d", "tau", "tol"])?;
            let d = res.get("d", d, None)?;
            let tau = res.get("tau", tau, Some(50))?;
            let tol = res.get("tol", tol, Some(1e-9))?;
            let mut t = res.table(
                "crossover",
                &["d", "tau", "c0", "c_star", "bec_epsilon", "bsc_p"],
            );
            let mut footer = Vec::new();
            match crossover(RllSpec::new(d), tau, tol)? {
                Some(rep) => {
                    t.push(vec![
                        d.to_string(),
                        tau.to_string(),
                        fmt_rate(rep.c0),
                        fmt_rate(rep.capacity),
                        fmt_rate(rep.bec_epsilon),
                        fmt_rate(rep.bsc_p),
                    ]);
                    footer.push((
                        "note".to_string(),
                        "bec_epsilon = 1 - c_star; the digit-swapped value 0.2837 is not equivalent"
                            .to_string(),
                    ));
                }
                None => {
                    t.push(vec![
                        d.to_string(),
                        tau.to_string(),
                        fmt_rate(1.0),
                        "none".into(),
                        "none".into(),
                        "none".into(),
                    ]);
                    footer.push((
                        "note".to_string(),
                        "no crossover: the subcode bound is never below the coset bound"
                            .to_string(),
                    ));
                }
            }
            emit(&t, &footer, &common)
        }
        Command::PermSweep {
            m,
            r,
            d,
            samples,
            seed,
            include_identity,
            common,
        } => {
            let keys = ["m", "r", "d", "samples", "seed", "include-identity"];
            let mut res = Resolver::load(&common, &keys)?;
            let m = res.get("m", m, None)?;
            let r = res.get("r", r, None)?;
            let d = res.get("d", d, None)?;
            let samples = res.get("samples", samples, Some(100))?;
            let seed = res.get("seed", seed, None)?;
            let include_identity = res.flag("include-identity", include_identity)?;
            let rep = permutation_sweep(m, r, RllSpec::new(d), samples, seed, include_identity)?;
            let mut t = res.table(
                "perm-sweep",
                &[
                    "sample",
                    "ordering",
                    "gamma_size",
                    "t_count",
                    "bound_dim",
                    "bound_rate",
                ],
            );
            for s in &rep.samples {
                t.push(vec![
                    s.index.to_string(),
                    s.ordering.to_string(),
                    s.gamma_size.to_string(),
                    s.t_count.to_string(),
                    s.bound_dim.to_string(),
                    fmt_rate(s.bound_rate),
                ]);
            }
            let footer = [
                ("mean".to_string(), fmt_rate(rep.mean)),
                ("max".to_string(), fmt_rate(rep.max)),
                ("threshold".to_string(), fmt_rate(rep.threshold)),
                ("fraction_above".to_string(), fmt_rate(rep.fraction_above)),
            ];
            emit(&t, &footer, &common)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
