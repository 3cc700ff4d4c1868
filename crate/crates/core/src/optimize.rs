//! Derivative-free random-walk maximizer.
//!
//! From the current point a step of the current size is taken in a direction
//! drawn uniformly from the unit sphere. A move is kept only when the objective
//! strictly increases. After `iter_max` consecutive rejected moves the step is
//! halved, and the walk stops once the step falls below `step_min`.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub start: Vec<f64>,
    pub step_init: f64,
    pub step_min: f64,
    pub iter_max: usize,
    pub seed: u64,
}

impl WalkConfig {
    /// Step bounds 5 and 1e-2 with 100 tries per step size.
    pub fn with_start(start: Vec<f64>, seed: u64) -> Self {
        Self { start, step_init: 5.0, step_min: 1e-2, iter_max: 100, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.start.is_empty() {
            return invalid("start point has no coordinates");
        }
        if self.start.iter().any(|x| !x.is_finite()) {
            return invalid("start point is not finite");
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return invalid(format!("need 0 < step_min < step_init, got {} and {}", self.step_min, self.step_init));
        }
        if self.iter_max == 0 {
            return invalid("iter_max must be at least 1");
        }
        Ok(())
    }

    fn canonical(&self) -> String {
        let start: Vec<String> = self.start.iter().map(|x| format!("{x:?}")).collect();
        format!(
            "start=[{}];step_init={:?};step_min={:?};iter_max={};seed={}",
            start.join(","),
            self.step_init,
            self.step_min,
            self.iter_max,
            self.seed
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkResult {
    pub argmax: Vec<f64>,
    pub value: f64,
    /// Number of objective calls made by the walk.
    pub evaluations: usize,
}

fn evaluate<F>(objective: &F, point: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let v = objective(point)?;
    if !v.is_finite() {
        return Err(Error::Evaluation(format!("objective returned {v} at {point:?}")));
    }
    Ok(v)
}

/// Runs one seeded walk; identical inputs give bit-identical results.
pub fn optimize<F>(objective: F, cfg: &WalkConfig) -> Result<WalkResult>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    optimize_observed(objective, cfg, |_, _| {})
}

/// Like [`optimize`], calling `on_accept(point, value)` for the start point and every accepted move.
pub fn optimize_observed<F, O>(objective: F, cfg: &WalkConfig, mut on_accept: O) -> Result<WalkResult>
where
    F: Fn(&[f64]) -> Result<f64>,
    O: FnMut(&[f64], f64),
{
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dim = cfg.start.len();
    let mut point = cfg.start.clone();
    let mut value = evaluate(&objective, &point)?;
    let mut evaluations = 1;
    on_accept(&point, value);

    let mut step = cfg.step_init;
    let mut direction = vec![0.0; dim];
    let mut candidate = vec![0.0; dim];
    while step >= cfg.step_min {
        let mut rejections = 0;
        while rejections < cfg.iter_max {
            sample_unit_direction(&mut rng, &mut direction);
            for ((c, p), d) in candidate.iter_mut().zip(&point).zip(&direction) {
                *c = p + step * d;
            }
            let v = evaluate(&objective, &candidate)?;
            evaluations += 1;
            if v > value {
                std::mem::swap(&mut point, &mut candidate);
                value = v;
                rejections = 0;
                on_accept(&point, value);
            } else {
                rejections += 1;
            }
        }
        step /= 2.0;
    }

    let value = evaluate(&objective, &point)?;
    Ok(WalkResult { argmax: point, value, evaluations: evaluations + 1 })
}

fn sample_unit_direction(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    loop {
        for x in out.iter_mut() {
            *x = StandardNormal.sample(rng);
        }
        let norm = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.iter_mut().for_each(|x| *x /= norm);
            return;
        }
    }
}

/// Seed used by restart `index` of a multi-restart run.
pub fn restart_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

/// Runs `restarts` independent walks in parallel (restart `i` uses seed
/// `cfg.seed + i`) and keeps the best, ties going to the lowest index.
pub fn optimize_restarts<F>(objective: F, cfg: &WalkConfig, restarts: usize) -> Result<WalkResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if restarts == 0 {
        return invalid("at least one restart is required");
    }
    let runs: Vec<WalkResult> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let cfg = WalkConfig { seed: restart_seed(cfg.seed, i), ..cfg.clone() };
            optimize(&objective, &cfg)
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best].value {
            best = i;
        }
    }
    Ok(runs.into_iter().nth(best).expect("nonempty"))
}

/// On-disk memo of optimizer results, keyed by objective label and a digest of
/// the walk configuration. One entry per line:
///
/// ```text
/// <label>#<sha256 prefix>\t<value>\t<evaluations>\t<x0>,<x1>,...
/// ```
///
/// Floats are written in shortest round-trip form so cached results are
/// bit-identical to fresh ones. Deleting the file only costs recomputation.
#[derive(Debug)]
pub struct WalkCache {
    path: PathBuf,
    entries: BTreeMap<String, WalkResult>,
}

impl WalkCache {
    /// Loads `path` if it exists; malformed lines are skipped.
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        match fs::read_to_string(&path) {
            Ok(text) => {
                for line in text.lines() {
                    if let Some((k, r)) = parse_line(line) {
                        entries.insert(k, r);
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Self { path, entries })
    }

    pub fn key(label: &str, cfg: &WalkConfig, restarts: usize) -> String {
        let digest = Sha256::digest(format!("{};restarts={restarts}", cfg.canonical()).as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("{label}#{hex}")
    }

    pub fn get(&self, key: &str) -> Option<&WalkResult> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: String, result: WalkResult) {
        self.entries.insert(key, result);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn save(&self) -> io::Result<()> {
        let mut text = String::new();
        for (k, r) in &self.entries {
            let args: Vec<String> = r.argmax.iter().map(|x| format!("{x:?}")).collect();
            text.push_str(&format!("{k}\t{:?}\t{}\t{}\n", r.value, r.evaluations, args.join(",")));
        }
        fs::write(&self.path, text)
    }
}

fn parse_line(line: &str) -> Option<(String, WalkResult)> {
    let mut parts = line.split('\t');
    let key = parts.next()?.to_string();
    let value = parts.next()?.parse().ok()?;
    let evaluations = parts.next()?.parse().ok()?;
    let argmax = parts.next()?.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<f64>>>()?;
    if parts.next().is_some() || key.is_empty() {
        return None;
    }
    Some((key, WalkResult { argmax, value, evaluations }))
}

/// [`optimize_restarts`] behind an optional cache.
pub fn optimize_cached<F>(
    objective: F,
    cfg: &WalkConfig,
    restarts: usize,
    label: &str,
    cache: Option<&mut WalkCache>,
) -> Result<WalkResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let Some(cache) = cache else {
        return optimize_restarts(objective, cfg, restarts);
    };
    let key = WalkCache::key(label, cfg, restarts);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    let result = optimize_restarts(objective, cfg, restarts)?;
    cache.insert(key, result.clone());
    Ok(result)
}
