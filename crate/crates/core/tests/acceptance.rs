//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use rm_rll::channel::{ChannelModel, ChannelObservation};
use rm_rll::coset::{coset_leader_for, CosetPlan, DecodeOutcome};
use rm_rll::experiments::{coset_trial, crossover, rate_curves, subcode_oracle};
use rm_rll::gf2::BitWord;
use rm_rll::rll::{
    count_constrained, is_constrained, noiseless_capacity, EnumerativeCoder, RllSpec,
};
use rm_rll::rm::RmCode;
use rm_rll::subcode::RllSubcode;

type Outcome = Result<String, String>;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rm-rll")
}

fn close(what: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what} = {got:.6}, expected {want} +/- {tol}"))
    }
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn binom_le(n: i64, k: i64) -> u64 {
    (0..=k).map(|i| binom(n, i)).sum()
}

fn noiseless_capacities() -> Outcome {
    let c1 = noiseless_capacity(RllSpec::new(1), 1e-12).map_err(|e| e.to_string())?;
    let c2 = noiseless_capacity(RllSpec::new(2), 1e-12).map_err(|e| e.to_string())?;
    close("C0(d=1)", c1, 0.6942, 1e-3)?;
    close("C0(d=2)", c2, 0.5515, 1e-3)?;
    for (d, c) in [(1, c1), (2, c2)] {
        let count = count_constrained(64, RllSpec::new(d));
        let empirical = count.to_string().parse::<f64>().unwrap().log2() / 64.0;
        close(&format!("log2 a(64) / 64 for d={d}"), empirical, c, 0.02)?;
    }
    Ok(format!("C0(1)={c1:.6}, C0(2)={c2:.6}"))
}

fn crossover_point() -> Outcome {
    let rep = crossover(RllSpec::new(1), 50, 1e-10)
        .map_err(|e| e.to_string())?
        .ok_or("no crossover found for d=1")?;
    close("C*", rep.capacity, 0.7613, 1e-3)?;
    close("p*", rep.bsc_p, 0.0392, 1e-3)?;
    Ok(format!(
        "C*={:.6}, p*={:.6}, eps*={:.6}",
        rep.capacity, rep.bsc_p, rep.bec_epsilon
    ))
}

fn lemma_suite() -> Outcome {
    let out = Command::new(bin())
        .args([
            "verify-lemmas",
            "--m-max",
            "10",
            "--span-m-max",
            "8",
            "--runs-m-max",
            "12",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if !out.status.success() {
        return Err(format!("exit status {:?}", out.status.code()));
    }
    let failed = text.lines().filter(|l| l.ends_with(",false")).count();
    let checks = text.lines().filter(|l| l.ends_with(",true")).count();
    // rank: m<=10, r<=m; span: m<=8, r<m; runs: two checks for m<=12, r<m
    let expected = (1..=10).map(|m| m + 1).sum::<usize>()
        + (1..=8).sum::<usize>()
        + 2 * (1..=12).sum::<usize>();
    if failed > 0 || checks != expected {
        return Err(format!(
            "{checks} passing rows, {failed} failing, expected {expected} passing"
        ));
    }
    Ok(format!("{checks} checks"))
}

/// Minimum nonzero weight by walking all messages in Gray order.
fn min_weight(code: &RmCode) -> usize {
    let k = code.dimension();
    let g = code.generator();
    let mut word = BitWord::zeros(code.len());
    let mut best = usize::MAX;
    for step in 1u64..1 << k {
        word ^= g.row(step.trailing_zeros() as usize);
        best = best.min(word.weight());
    }
    best
}

fn rm_structure() -> Outcome {
    let mut codes = 0;
    for m in 1..=15usize {
        for r in 0..=m {
            let k = binom_le(m as i64, r as i64);
            if k > 16 {
                continue;
            }
            let code = RmCode::new(m, r).map_err(|e| e.to_string())?;
            if code.dimension() as u64 != k || code.generator().rank() as u64 != k {
                return Err(format!(
                    "RM({m},{r}) has dimension {}, expected {k}",
                    code.dimension()
                ));
            }
            let dist = min_weight(&code);
            if dist != 1 << (m - r) {
                return Err(format!("RM({m},{r}) minimum distance {dist}"));
            }
            codes += 1;
        }
    }
    Ok(format!("{codes} codes"))
}

fn subcode_construction() -> Outcome {
    let mut checked = 0;
    for m in 0..=6usize {
        for r in 0..=m {
            for d in 0..=3usize {
                let spec = RllSpec::new(d);
                let z = spec.z();
                if m < z {
                    continue;
                }
                let want = binom_le((m - z) as i64, r as i64 - z as i64);
                if want > 16 {
                    continue;
                }
                let sub = RllSubcode::from_params(m, r, spec).map_err(|e| e.to_string())?;
                if sub.dimension() as u64 != want || sub.generator().rank() as u64 != want {
                    return Err(format!("m={m} r={r} d={d}: dimension {}", sub.dimension()));
                }
                let k = sub.dimension();
                for u in 0..1u64 << k {
                    let c = sub
                        .encode(&BitWord::from_u64(u, k))
                        .map_err(|e| e.to_string())?;
                    if !is_constrained(&c, spec) {
                        return Err(format!(
                            "m={m} r={r} d={d}: codeword {c} violates constraint"
                        ));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} subcodes"))
}

fn oracle_sandwich() -> Outcome {
    let mut rows = Vec::new();
    for (m, r) in [(3, 1), (4, 1)] {
        for d in [1, 2] {
            let row = subcode_oracle(m, r, RllSpec::new(d)).map_err(|e| e.to_string())?;
            if !row.is_sandwiched() {
                return Err(format!("{row:?} violates construction <= oracle <= bound"));
            }
            rows.push(format!(
                "RM({m},{r}) d={d}: {}<={}<={}",
                row.construction_dim, row.oracle_dim, row.run_bound
            ));
            if (m, r, d) == (3, 1, 1)
                && (row.construction_dim, row.oracle_dim, row.run_bound) != (1, 1, 3)
            {
                return Err(format!("RM(3,1) d=1 gave {row:?}"));
            }
        }
    }
    Ok(rows.join("; "))
}

fn enumerative_coder() -> Outcome {
    for d in 0..=3usize {
        let spec = RllSpec::new(d);
        for n in 0..=16usize {
            let brute = (0..1u64 << n)
                .filter(|&v| is_constrained(&BitWord::from_u64(v, n), spec))
                .count();
            if count_constrained(n, spec) != BigUint::from(brute) {
                return Err(format!("count mismatch at n={n}, d={d}"));
            }
            if n > 14 {
                continue;
            }
            let coder = EnumerativeCoder::new(n, spec);
            let mut seen = vec![false; 1 << n];
            for i in 0..brute as u64 {
                let w = coder.encode(&BigUint::from(i)).map_err(|e| e.to_string())?;
                let v = w.to_u64().unwrap() as usize;
                if !is_constrained(&w, spec) || seen[v] {
                    return Err(format!("n={n} d={d}: index {i} gives {w}"));
                }
                seen[v] = true;
                if coder.decode(&w).map_err(|e| e.to_string())? != BigUint::from(i) {
                    return Err(format!("n={n} d={d}: decode of {w} is not {i}"));
                }
            }
        }
    }
    Ok("n<=14 bijective, counts exact to n=16".into())
}

fn plan() -> Result<CosetPlan, String> {
    CosetPlan::new(6, 2, RllSpec::new(1), 3, 2).map_err(|e| e.to_string())
}

fn round_trip() -> Outcome {
    let p = plan()?;
    let shape = (
        p.k(),
        p.parts(),
        p.npart(),
        p.payload_bits(),
        p.total_length(),
    );
    if shape != (22, 11, 16, 15, 198) {
        return Err(format!(
            "plan shape (K, L, Npart, payload, length) = {shape:?}"
        ));
    }
    let bec = ChannelModel::bec(0.0).unwrap();
    let spec = RllSpec::new(1);
    for i in 0..1u64 << 15 {
        let msg = BigUint::from(i);
        let t = p.encode(&msg).map_err(|e| e.to_string())?;
        let x = t.word();
        if !is_constrained(&x, spec) {
            return Err(format!(
                "message {i}: transmitted word violates the constraint"
            ));
        }
        let v = coset_leader_for(&t.outer_codeword, &p).map_err(|e| e.to_string())?;
        let mut expected = t.x1.clone();
        expected.append(&BitWord::zeros(64 - 22));
        if &t.outer_codeword ^ &v != expected {
            return Err(format!("message {i}: c + v differs from w || 0"));
        }
        match p.decode(&ChannelObservation::noiseless(&x), bec) {
            Ok(DecodeOutcome::Message(got)) if got == msg => {}
            other => return Err(format!("message {i}: decoded {other:?}")),
        }
    }
    Ok(format!(
        "2^15 messages, rate {}/{}",
        p.payload_bits(),
        p.total_length()
    ))
}

fn bec_soundness() -> Outcome {
    let p = plan()?;
    let mut notes = Vec::new();
    for eps in [0.02, 0.05] {
        let ch = ChannelModel::bec(eps).unwrap();
        let rep = coset_trial(&p, ch, 10_000, 2024).map_err(|e| e.to_string())?;
        let e = rep.estimate;
        if e.wrong_decodes > 0 {
            return Err(format!("eps={eps}: {} silent mis-decodes", e.wrong_decodes));
        }
        notes.push(format!(
            "eps={eps}: P_B={:.6}+/-{:.6}",
            e.estimate, e.halfwidth
        ));
    }
    Ok(notes.join("; "))
}

fn rate_curve_endpoints() -> Outcome {
    let rows = rate_curves(RllSpec::new(1), 50, 0.01).map_err(|e| e.to_string())?;
    let last = rows.last().ok_or("empty grid")?;
    if last.capacity != 1.0 || last.subcode != 0.5 {
        return Err(format!("C=1 row: {last:?}"));
    }
    close("coset bound at C=1", last.coset, 0.6942, 1e-3)?;
    let nine = rows
        .iter()
        .find(|r| (r.capacity - 0.9).abs() < 1e-9)
        .ok_or("no C=0.9 row")?;
    close("coset bound at C=0.9", nine.coset, 0.5568, 1e-3)?;
    close("subcode bound at C=0.9", nine.subcode, 0.45, 1e-12)?;
    if nine.coset <= nine.subcode {
        return Err("coset bound does not exceed subcode bound at C=0.9".into());
    }
    Ok(format!(
        "C=1: {:.6}/{:.6}; C=0.9: {:.6}/{:.6}",
        last.coset, last.subcode, nine.coset, nine.subcode
    ))
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &[
            "coset-trial",
            "--m",
            "6",
            "--r",
            "2",
            "--d",
            "1",
            "--tau",
            "3",
            "--inner-r",
            "2",
            "--channel",
            "bec",
            "--param",
            "0.05",
            "--trials",
            "2000",
            "--seed",
            "11",
        ],
        &[
            "coset-trial",
            "--m",
            "6",
            "--r",
            "2",
            "--d",
            "1",
            "--tau",
            "3",
            "--inner-r",
            "2",
            "--channel",
            "bsc",
            "--param",
            "0.01",
            "--trials",
            "300",
            "--seed",
            "12",
        ],
        &[
            "perm-sweep",
            "--m",
            "8",
            "--r",
            "4",
            "--d",
            "1",
            "--samples",
            "200",
            "--seed",
            "13",
        ],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "4"] {
            let out = Command::new(bin())
                .args(args)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("{} exited with {:?}", args[0], out.status.code()));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{} output differs between runs", args[0]));
        }
    }
    Ok("coset-trial (bec, bsc) and perm-sweep byte-identical across runs and thread counts".into())
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "noiseless capacities",
            noiseless_capacities,
            Duration::from_secs(1),
        ),
        (
            "crossover capacity and BSC threshold",
            crossover_point,
            Duration::from_secs(1),
        ),
        ("lemma suite", lemma_suite, Duration::from_secs(60)),
        (
            "RM dimension and minimum distance",
            rm_structure,
            Duration::from_secs(30),
        ),
        (
            "explicit subcode construction",
            subcode_construction,
            Duration::from_secs(60),
        ),
        (
            "oracle between construction and bound",
            oracle_sandwich,
            Duration::from_secs(30),
        ),
        (
            "enumerative coder",
            enumerative_coder,
            Duration::from_secs(30),
        ),
        (
            "coset scheme noiseless round trip",
            round_trip,
            Duration::from_secs(120),
        ),
        (
            "BEC decoding soundness",
            bec_soundness,
            Duration::from_secs(300),
        ),
        (
            "rate-curve endpoints",
            rate_curve_endpoints,
            Duration::from_secs(1),
        ),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > *budget => Err(format!(
                "{detail}; took {:.2}s, budget {}s",
                took.as_secs_f64(),
                budget.as_secs()
            )),
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "PASS [{:>2}] {name} ({:.2}s): {detail}",
                i + 1,
                took.as_secs_f64()
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL [{:>2}] {name} ({:.2}s): {why}",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
