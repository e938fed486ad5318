//! Simulated master/worker runs with straggling workers.
//!
//! Time is simulated: each trial samples one latency per worker, delivers the
//! results in completion order and decodes from the earliest arrivals.
//!
//! Latencies come from xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Trial `t` of a run with seed `s`
//! uses seed `s + t·0x9E3779B97F4A7C15` (wrapping), and a uniform draw is
//! `(next_u64 >> 11) · 2^-53`.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::codec::{CodeScheme, WorkerResult};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

const TRIAL_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Completion order for the fixed model.
#[derive(Clone, Debug, PartialEq)]
pub enum Order {
    Identity,
    Reversed,
    /// Worker indices, fastest first.
    List(Vec<usize>),
}

/// How worker latencies are drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum StragglerModel {
    /// The worker at rank r finishes at time r + 1.
    Fixed(Order),
    /// τ + Exp(λ) per worker.
    ShiftedExp { tau: f64, lambda: f64 },
    /// 1 + U(0,1) per worker, times `slow` with probability `p`.
    Bernoulli { p: f64, slow: f64 },
}

impl fmt::Display for StragglerModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StragglerModel::Fixed(Order::Identity) => write!(f, "fixed:identity"),
            StragglerModel::Fixed(Order::Reversed) => write!(f, "fixed:reversed"),
            StragglerModel::Fixed(Order::List(v)) => {
                let parts: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "fixed:{}", parts.join(","))
            }
            StragglerModel::ShiftedExp { tau, lambda } => write!(f, "shifted-exp:tau={tau},lambda={lambda}"),
            StragglerModel::Bernoulli { p, slow } => write!(f, "bernoulli:p={p},slow={slow}"),
        }
    }
}

fn parse_params(body: &str, names: &[&str]) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::InvalidModel(msg);
    let mut out = vec![None; names.len()];
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
        let slot = names
            .iter()
            .position(|&n| n == k.trim())
            .ok_or_else(|| bad(format!("unknown parameter {k:?}")))?;
        let v: f64 = v.trim().parse().map_err(|_| bad(format!("bad number {v:?}")))?;
        if !v.is_finite() {
            return Err(bad(format!("{k} must be finite")));
        }
        out[slot] = Some(v);
    }
    out.into_iter()
        .zip(names)
        .map(|(v, n)| v.ok_or_else(|| bad(format!("missing parameter {n}"))))
        .collect()
}

impl FromStr for StragglerModel {
    type Err = Error;

    /// `fixed:identity`, `fixed:reversed`, `fixed:<i,j,...>`,
    /// `shifted-exp:tau=<t>,lambda=<l>` or `bernoulli:p=<p>,slow=<s>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, body) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidModel(format!("expected <model>:<params>, got {s:?}")))?;
        match name {
            "fixed" => Ok(StragglerModel::Fixed(match body {
                "identity" => Order::Identity,
                "reversed" => Order::Reversed,
                list => Order::List(
                    list.split(',')
                        .map(|x| {
                            x.trim()
                                .parse()
                                .map_err(|_| Error::InvalidModel(format!("bad worker index {x:?}")))
                        })
                        .collect::<Result<_>>()?,
                ),
            })),
            "shifted-exp" => {
                let v = parse_params(body, &["tau", "lambda"])?;
                if v[0] < 0.0 || v[1] <= 0.0 {
                    return Err(Error::InvalidModel("need tau >= 0 and lambda > 0".into()));
                }
                Ok(StragglerModel::ShiftedExp {
                    tau: v[0],
                    lambda: v[1],
                })
            }
            "bernoulli" => {
                let v = parse_params(body, &["p", "slow"])?;
                if !(0.0..=1.0).contains(&v[0]) || v[1] <= 1.0 {
                    return Err(Error::InvalidModel("need 0 <= p <= 1 and slow > 1".into()));
                }
                Ok(StragglerModel::Bernoulli { p: v[0], slow: v[1] })
            }
            other => Err(Error::InvalidModel(format!("unknown model {other:?}"))),
        }
    }
}

fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl StragglerModel {
    /// One latency per worker for the given trial.
    pub fn sample(&self, workers: usize, seed: u64, trial: u64) -> Result<Vec<f64>> {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed.wrapping_add(trial.wrapping_mul(TRIAL_STRIDE)));
        Ok(match self {
            StragglerModel::Fixed(order) => {
                let ranking: Vec<usize> = match order {
                    Order::Identity => (0..workers).collect(),
                    Order::Reversed => (0..workers).rev().collect(),
                    Order::List(v) => v.clone(),
                };
                let mut lat = vec![0.0; workers];
                let mut seen = vec![false; workers];
                if ranking.len() != workers {
                    return Err(Error::InvalidModel(format!(
                        "order lists {} workers, scheme has {workers}",
                        ranking.len()
                    )));
                }
                for (rank, &w) in ranking.iter().enumerate() {
                    if w >= workers || seen[w] {
                        return Err(Error::InvalidModel(format!("order is not a permutation (worker {w})")));
                    }
                    seen[w] = true;
                    lat[w] = (rank + 1) as f64;
                }
                lat
            }
            StragglerModel::ShiftedExp { tau, lambda } => (0..workers)
                .map(|_| {
                    // Shifted by half a step so the draw lies strictly inside (0, 1).
                    let u = uniform(&mut rng) + 0.5 / (1u64 << 53) as f64;
                    tau - u.ln() / lambda
                })
                .collect(),
            StragglerModel::Bernoulli { p, slow } => (0..workers)
                .map(|_| {
                    let base = 1.0 + uniform(&mut rng);
                    let coin = uniform(&mut rng);
                    if coin < *p {
                        base * slow
                    } else {
                        base
                    }
                })
                .collect(),
        })
    }
}

/// Worker indices sorted by completion time, ties by index.
pub fn arrival_order(latencies: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..latencies.len()).collect();
    order.sort_by(|&a, &b| latencies[a].total_cmp(&latencies[b]).then(a.cmp(&b)));
    order
}

/// Telemetry for one trial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub trial: u64,
    pub workers: usize,
    pub threshold: usize,
    pub completion_times: Vec<f64>,
    /// Arrival time of the threshold-th result.
    pub finish_time: f64,
    pub responders_used: Vec<usize>,
    pub decode_ok: bool,
    pub worker_mults: u64,
    pub decode_mults: u64,
}

/// Runs `trials` simulated multiplications of A and B.
pub fn simulate(
    scheme: &CodeScheme,
    a: &Matrix,
    b: &Matrix,
    model: &StragglerModel,
    seed: u64,
    trials: u64,
) -> Result<Vec<SimulationReport>> {
    let field = scheme.field();
    let want = a.mul(field, b)?.0;
    let results: Vec<WorkerResult> = scheme
        .encode(a, b)?
        .iter()
        .map(|s| crate::codec::worker_multiply(field, s))
        .collect::<Result<_>>()?;
    let worker_mults = results.iter().map(|r| r.mults).sum();
    (0..trials)
        .map(|trial| {
            let lat = model.sample(scheme.workers(), seed, trial)?;
            let order = arrival_order(&lat);
            let arrived: Vec<WorkerResult> = order.iter().map(|&i| results[i].clone()).collect();
            let decoded = scheme.decode(&arrived)?;
            Ok(SimulationReport {
                trial,
                workers: scheme.workers(),
                threshold: scheme.threshold(),
                finish_time: lat[order[scheme.threshold() - 1]],
                completion_times: lat,
                responders_used: decoded.responders_used,
                decode_ok: decoded.product == want,
                worker_mults,
                decode_mults: decoded.decode_mults,
            })
        })
        .collect()
}

/// Finish-time statistics against waiting for every worker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpeedupSummary {
    /// threshold / N.
    pub rho: f64,
    pub mean_finish: f64,
    pub p50: f64,
    pub p95: f64,
    /// Mean arrival time of the last worker.
    pub baseline_mean: f64,
    pub trials: usize,
}

/// Nearest-rank percentile of a sorted sample.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

fn summary_of(threshold: usize, workers: usize, finishes: &mut [f64], baselines: &[f64]) -> SpeedupSummary {
    let n = finishes.len() as f64;
    let mean_finish = finishes.iter().sum::<f64>() / n;
    finishes.sort_by(f64::total_cmp);
    SpeedupSummary {
        rho: threshold as f64 / workers as f64,
        mean_finish,
        p50: percentile(finishes, 0.5),
        p95: percentile(finishes, 0.95),
        baseline_mean: baselines.iter().sum::<f64>() / n,
        trials: finishes.len(),
    }
}

/// Summary over already simulated trials.
pub fn summarize(reports: &[SimulationReport]) -> Result<SpeedupSummary> {
    let first = reports
        .first()
        .ok_or_else(|| Error::InvalidModel("no trials to summarize".into()))?;
    let mut finishes: Vec<f64> = reports.iter().map(|r| r.finish_time).collect();
    let baselines: Vec<f64> = reports
        .iter()
        .map(|r| r.completion_times.iter().copied().fold(f64::MIN, f64::max))
        .collect();
    Ok(summary_of(first.threshold, first.workers, &mut finishes, &baselines))
}

/// Latency-only speedup estimate; needs at least 100 trials.
pub fn speedup_report(scheme: &CodeScheme, model: &StragglerModel, seed: u64, trials: u64) -> Result<SpeedupSummary> {
    if trials < 100 {
        return Err(Error::InvalidModel(format!(
            "speedup report needs at least 100 trials, got {trials}"
        )));
    }
    let (n, k) = (scheme.workers(), scheme.threshold());
    let mut finishes = Vec::with_capacity(trials as usize);
    let mut baselines = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let lat = model.sample(n, seed, t)?;
        let order = arrival_order(&lat);
        finishes.push(lat[order[k - 1]]);
        baselines.push(lat[order[n - 1]]);
    }
    Ok(summary_of(k, n, &mut finishes, &baselines))
}
