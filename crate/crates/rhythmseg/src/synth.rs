//! Seeded generators for synthetic rhythmic datasets: uniform intervals,
//! quantal intervals with uniform or geometric multiples, repeated rhythm
//! templates, and jittered grid events.
//!
//! All generators are pure functions of their parameters and seed, drawing
//! from a ChaCha8 stream so identical seeds reproduce identical sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Normal, Uniform};

use crate::error::{Error, Result};
use crate::sequence::{IntervalSequence, SequenceMeta};

/// Default occupancy probability per grid slot for [`gen_grid_events`].
pub const DEFAULT_OCCUPANCY: f64 = 0.5;

/// A fixed rhythm of quantum multiples, repeated with Gaussian noise.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeatTemplate {
    pub multiples: Vec<u32>,
    pub quantum: f64,
    pub noise_sigma: f64,
    pub repeats: u32,
}

impl RepeatTemplate {
    pub fn new(multiples: Vec<u32>, quantum: f64, noise_sigma: f64, repeats: u32) -> Result<Self> {
        let t = RepeatTemplate {
            multiples,
            quantum,
            noise_sigma,
            repeats,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.multiples.is_empty() {
            return Err(Error::invalid("template multiples must be non-empty"));
        }
        if self.multiples.iter().any(|&m| m < 1) {
            return Err(Error::invalid("template multiples must all be >= 1"));
        }
        if !self.quantum.is_finite() || self.quantum <= 0.0 {
            return Err(Error::invalid(format!(
                "template quantum must be finite and > 0, got {}",
                self.quantum
            )));
        }
        if !self.noise_sigma.is_finite() || self.noise_sigma < 0.0 {
            return Err(Error::invalid(format!(
                "template noise sigma must be finite and >= 0, got {}",
                self.noise_sigma
            )));
        }
        // Larger noise makes the data unrecognizably quantal.
        if self.noise_sigma >= self.quantum / 2.0 {
            return Err(Error::invalid(format!(
                "template noise sigma {} must be below quantum/2 = {}",
                self.noise_sigma,
                self.quantum / 2.0
            )));
        }
        if self.repeats < 1 {
            return Err(Error::invalid("template repeats must be >= 1"));
        }
        Ok(())
    }
}

impl Default for RepeatTemplate {
    /// The documented sub-rhythm 3:3:2:4:1 at a half-second quantum with
    /// quantum/20 noise and 200 repeats.
    fn default() -> Self {
        RepeatTemplate {
            multiples: vec![3, 3, 2, 4, 1],
            quantum: 0.5,
            noise_sigma: 0.5 / 20.0,
            repeats: 200,
        }
    }
}

fn check_noise_sigma(noise_sigma: f64) -> Result<()> {
    if !noise_sigma.is_finite() || noise_sigma < 0.0 {
        return Err(Error::invalid(format!(
            "noise sigma must be finite and >= 0, got {noise_sigma}"
        )));
    }
    Ok(())
}

fn noise_source(noise_sigma: f64) -> Option<Normal<f64>> {
    (noise_sigma > 0.0).then(|| Normal::new(0.0, noise_sigma).expect("validated sigma"))
}

/// Base value plus Gaussian noise; draws that would push the interval to
/// zero or below are resampled rather than clipped, so the residual
/// distribution stays Gaussian.
fn noisy(base: f64, noise: Option<&Normal<f64>>, rng: &mut ChaCha8Rng) -> f64 {
    match noise {
        None => base,
        Some(normal) => loop {
            let v = base + normal.sample(rng);
            if v > 0.0 {
                return v;
            }
        },
    }
}

/// `count` i.i.d. intervals uniform on [lo, hi).
pub fn gen_uniform(count: usize, lo: f64, hi: f64, seed: u64) -> Result<IntervalSequence> {
    if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi <= lo {
        return Err(Error::invalid(format!(
            "uniform bounds must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new(lo, hi).map_err(|e| Error::invalid(e.to_string()))?;
    let intervals = (0..count).map(|_| dist.sample(&mut rng)).collect();
    IntervalSequence::new(SequenceMeta::new("uniform"), intervals)
}

/// Quantal intervals `m * quantum + noise` with multiples m drawn from a
/// geometric distribution on {1, 2, ...}, favouring short intervals.
pub fn gen_quantal_geometric(
    count: usize,
    quantum: f64,
    success_p: f64,
    noise_sigma: f64,
    seed: u64,
) -> Result<IntervalSequence> {
    if !quantum.is_finite() || quantum <= 0.0 {
        return Err(Error::invalid(format!(
            "quantum must be finite and > 0, got {quantum}"
        )));
    }
    if !success_p.is_finite() || success_p <= 0.0 || success_p >= 1.0 {
        return Err(Error::invalid(format!(
            "geometric success probability must lie in (0, 1), got {success_p}"
        )));
    }
    check_noise_sigma(noise_sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geometric = Geometric::new(success_p).map_err(|e| Error::invalid(e.to_string()))?;
    let noise = noise_source(noise_sigma);
    let intervals = (0..count)
        .map(|_| {
            // Geometric samples failures before the first success; shift to {1, 2, ...}.
            let m = geometric.sample(&mut rng) + 1;
            noisy(m as f64 * quantum, noise.as_ref(), &mut rng)
        })
        .collect();
    IntervalSequence::new(SequenceMeta::new("quantal-geometric"), intervals)
}

/// Quantal intervals with multiples uniform on {1, ..., max_multiple}.
pub fn gen_quantal_uniform(
    count: usize,
    quantum: f64,
    max_multiple: u32,
    noise_sigma: f64,
    seed: u64,
) -> Result<IntervalSequence> {
    if !quantum.is_finite() || quantum <= 0.0 {
        return Err(Error::invalid(format!(
            "quantum must be finite and > 0, got {quantum}"
        )));
    }
    if max_multiple < 1 {
        return Err(Error::invalid("max multiple must be >= 1"));
    }
    check_noise_sigma(noise_sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = noise_source(noise_sigma);
    let intervals = (0..count)
        .map(|_| {
            let m = rng.random_range(1..=max_multiple);
            noisy(m as f64 * quantum, noise.as_ref(), &mut rng)
        })
        .collect();
    IntervalSequence::new(SequenceMeta::new("quantal-uniform"), intervals)
}

/// The template's multiples tiled `repeats` times, scaled by the quantum,
/// with Gaussian noise per interval.
pub fn gen_repeated(template: &RepeatTemplate, seed: u64) -> Result<IntervalSequence> {
    template.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = noise_source(template.noise_sigma);
    let mut intervals = Vec::with_capacity(template.repeats as usize * template.multiples.len());
    for _ in 0..template.repeats {
        for &m in &template.multiples {
            intervals.push(noisy(m as f64 * template.quantum, noise.as_ref(), &mut rng));
        }
    }
    IntervalSequence::new(SequenceMeta::new("repeated"), intervals)
}

/// Intervals between events that approximately fall on a grid. Each grid
/// slot is occupied independently with probability `occupancy`; event
/// times are jittered with Gaussian noise. Returns `count` intervals.
///
/// Intervals are computed from slot differences, so with zero jitter every
/// interval is exactly a multiple of the grid.
pub fn gen_grid_events(
    count: usize,
    grid: f64,
    jitter_sigma: f64,
    occupancy: f64,
    seed: u64,
) -> Result<IntervalSequence> {
    if !grid.is_finite() || grid <= 0.0 {
        return Err(Error::invalid(format!(
            "grid size must be finite and > 0, got {grid}"
        )));
    }
    check_noise_sigma(jitter_sigma)?;
    if !occupancy.is_finite() || occupancy <= 0.0 || occupancy > 1.0 {
        return Err(Error::invalid(format!(
            "occupancy must lie in (0, 1], got {occupancy}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = noise_source(jitter_sigma);
    let mut intervals = Vec::with_capacity(count);
    let mut prev: Option<(u64, f64)> = None;
    let mut slot: u64 = 0;
    while intervals.len() < count {
        let occupied = rng.random::<f64>() < occupancy;
        if occupied {
            let mut jitter = noise.as_ref().map_or(0.0, |n| n.sample(&mut rng));
            if let Some((prev_slot, prev_jitter)) = prev {
                let gap = (slot - prev_slot) as f64;
                // Resample the event's jitter until onsets stay ordered.
                loop {
                    let interval = gap * grid + (jitter - prev_jitter);
                    if interval > 0.0 {
                        intervals.push(interval);
                        break;
                    }
                    jitter = noise
                        .as_ref()
                        .expect("inversion needs jitter")
                        .sample(&mut rng);
                }
            }
            prev = Some((slot, jitter));
        }
        slot += 1;
    }
    IntervalSequence::new(SequenceMeta::new("grid"), intervals)
}
