//! Deterministic instance generators. Every draw is a pure function of
//! `(seed, index)` through a dedicated ChaCha substream, so suites are
//! reproducible regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::Result;
use crate::metrics::{build_instance, SendovInstance};
use crate::poly::{Polynomial, C64};

/// Distance below which zeros are resampled away from 0 and from `a`.
const EXCLUSION: f64 = 1e-3;

/// Stream-id spacing: retries after a (rare) root-finder failure move to a
/// sibling stream without colliding with other indices.
const STREAM_STRIDE: u64 = 16;

fn stream_rng(seed: u64, domain: u64, stream: u64) -> ChaCha12Rng {
    let mut rng =
        ChaCha12Rng::seed_from_u64(seed.wrapping_add(domain.wrapping_mul(0x9e3779b97f4a7c15)));
    rng.set_stream(stream);
    rng
}

fn uniform_disk(rng: &mut ChaCha12Rng) -> C64 {
    loop {
        let re: f64 = rng.gen_range(-1.0..=1.0);
        let im: f64 = rng.gen_range(-1.0..=1.0);
        if re * re + im * im <= 1.0 {
            return C64::new(re, im);
        }
    }
}

/// `a` uniform in [0.05, 0.95]; zeros i.i.d. uniform on the unit disk,
/// resampled while within 1e-3 of 0 or of `a`.
pub fn generate_random_instance(seed: u64, index: u64, n: usize) -> Result<SendovInstance> {
    let mut last_err = None;
    for attempt in 0..STREAM_STRIDE {
        let mut rng = stream_rng(seed, 1, index * STREAM_STRIDE + attempt);
        let a: f64 = rng.gen_range(0.05..=0.95);
        let av = C64::new(a, 0.0);
        let zeros: Vec<C64> = (0..n - 1)
            .map(|_| loop {
                let z = uniform_disk(&mut rng);
                if z.norm() >= EXCLUSION && (z - av).norm() >= EXCLUSION {
                    break z;
                }
            })
            .collect();
        match build_instance(a, &zeros) {
            Ok(inst) => return Ok(inst),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt ran"))
}

/// RNG substream for auxiliary draws tied to one suite instance (equal-value
/// pairs, rho/m parameters, composition pairs).
pub fn aux_rng(seed: u64, index: u64) -> ChaCha12Rng {
    stream_rng(seed, 2, index)
}

#[derive(Clone, Debug, Default)]
pub struct FromCriticalsStats {
    pub attempts: u64,
    pub prefilter_ok: u64,
    pub accepted: u64,
}

/// Targets the far-critical regime: samples critical points in the disk with
/// `|zeta - a| >= 1`, integrates the monic degree-9 derivative with the
/// antiderivative pinned at `a`, and accepts only if every zero of the result
/// stays in the closed unit disk. Rejection is the normal outcome.
pub fn generate_from_criticals(
    seed: u64,
    index: u64,
    a: f64,
    stats: &mut FromCriticalsStats,
) -> Option<SendovInstance> {
    const N: usize = 9;
    stats.attempts += 1;
    let mut rng = stream_rng(seed, 3, index);
    let av = C64::new(a, 0.0);

    // pre-filter: each critical must be in the disk and at distance >= 1
    // from a; the feasible region is empty only for a <= 0
    let mut criticals = Vec::with_capacity(N - 1);
    for _ in 0..N - 1 {
        let mut ok = None;
        for _ in 0..10_000 {
            let z = uniform_disk(&mut rng);
            if (z - av).norm() >= 1.0 {
                ok = Some(z);
                break;
            }
        }
        criticals.push(ok?);
    }
    stats.prefilter_ok += 1;

    let q = Polynomial::from_roots(&criticals, C64::new(N as f64, 0.0)).ok()?;
    let p = q.antiderivative_zero_at(av).ok()?;
    let roots = p.find_roots(1e-10).ok()?.roots;
    if roots.iter().any(|z| z.norm() > 1.0 + 1e-10) {
        return None;
    }
    // drop the root realizing p(a) = 0 and rebuild the instance from the rest
    let nearest = roots
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| (*p - av).norm().total_cmp(&(*q - av).norm()))
        .map(|(i, _)| i)?;
    let zeros: Vec<C64> = roots
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != nearest)
        .map(|(_, &z)| z)
        .collect();
    let inst = build_instance(a, &zeros).ok()?;
    stats.accepted += 1;
    Some(inst)
}
