//! Independent reference implementations used to check the library.

use facecrypt::chaos::{ChaoticParams, Digest};
use num_bigint::BigUint;
use rand::Rng;

/// Straight-line recurrence written without the library's types.
pub fn reference_states(x0: f64, r: f64, count: usize) -> Vec<f64> {
    let mut x = x0;
    (0..count)
        .map(|_| {
            x = (r * x) * (1.0 - x);
            x
        })
        .collect()
}

/// Sort (value, index) pairs and read off the indices.
pub fn argsort_oracle(values: &[f64]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize)> = values.iter().copied().zip(0..).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    pairs.into_iter().map(|(_, i)| i).collect()
}

pub fn random_params(rng: &mut impl Rng) -> ChaoticParams {
    ChaoticParams::new(rng.gen_range(1e-6..1.0 - 1e-6), rng.gen_range(3.9..4.0)).unwrap()
}

/// Exhaustive Otsu: evaluate every cut from scratch and keep the first maximum.
pub fn otsu_oracle(values: &[f64]) -> f64 {
    let mut hist = [0usize; 256];
    for &v in values {
        hist[((v * 256.0).floor() as usize).min(255)] += 1;
    }
    if hist.iter().filter(|&&c| c > 0).count() <= 1 {
        return 0.0;
    }
    let n = values.len() as f64;
    let mut best_t = 0;
    let mut best = -1.0;
    for t in 0..256 {
        let w0: usize = hist[..=t].iter().sum();
        let w1: usize = hist[t + 1..].iter().sum();
        let s0: f64 = (0..=t).map(|i| i as f64 * hist[i] as f64).sum();
        let s1: f64 = (t + 1..256).map(|i| i as f64 * hist[i] as f64).sum();
        let var = if w0 == 0 || w1 == 0 {
            0.0
        } else {
            let (p0, p1) = (w0 as f64 / n, w1 as f64 / n);
            let diff = s0 / w0 as f64 - s1 / w1 as f64;
            p0 * p1 * diff * diff
        };
        if var > best {
            best = var;
            best_t = t;
        }
    }
    (best_t + 1) as f64 / 256.0
}

pub fn bigint_mod_100(d: &Digest) -> u32 {
    let v = BigUint::from_bytes_be(&d.0) % BigUint::from(100u32);
    v.to_u32_digits().first().copied().unwrap_or(0)
}
