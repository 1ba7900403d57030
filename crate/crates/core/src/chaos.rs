//! Logistic-map primitives shared by every keyed stage.
//!
//! All arithmetic is plain IEEE-754 binary64 with the recurrence evaluated as
//! `(r * x) * (1 - x)`. Rust never contracts `a * b + c` into a fused
//! multiply-add on its own, so the produced trajectories are bit-identical on
//! every conforming target.

use sha2::{Digest as _, Sha256};

/// Lower clamp bound for the logistic state, `2^-32`.
pub const STATE_MIN: f64 = 1.0 / 4_294_967_296.0;
/// Upper clamp bound for the logistic state, `1 - 2^-32`.
pub const STATE_MAX: f64 = 1.0 - STATE_MIN;
/// Iterations discarded before any chaotic value is consumed.
pub const BURN_IN: usize = 100;

pub const R_MIN: f64 = 3.9;
pub const R_MAX: f64 = 4.0;

/// Logistic-map state `x` and control parameter `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaoticParams {
    x: f64,
    r: f64,
}

impl ChaoticParams {
    /// Returns `None` unless `0 < x < 1` and `3.9 <= r < 4.0`.
    pub fn new(x: f64, r: f64) -> Option<Self> {
        let x_ok = x > 0.0 && x < 1.0;
        let r_ok = (R_MIN..R_MAX).contains(&r);
        (x_ok && r_ok).then_some(Self { x, r })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Bit patterns of `(x, r)`, handy for exact comparisons and pinning.
    pub fn to_bits(&self) -> (u64, u64) {
        (self.x.to_bits(), self.r.to_bits())
    }
}

/// A SHA-256 output.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    pub fn of(data: &[u8]) -> Self {
        Self(Sha256::digest(data).into())
    }

    /// SHA-256 over the concatenation of `parts`.
    pub fn of_parts(parts: &[&[u8]]) -> Self {
        let mut hasher = Sha256::new();
        for part in parts {
            hasher.update(part);
        }
        Self(hasher.finalize().into())
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl std::fmt::Debug for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digest(")?;
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// One application of `x' = r x (1 - x)`.
#[inline]
pub fn logistic_step(p: ChaoticParams) -> ChaoticParams {
    let next = (p.r * p.x) * (1.0 - p.x);
    let x = if next <= 0.0 {
        STATE_MIN
    } else if next >= 1.0 {
        STATE_MAX
    } else {
        next
    };
    ChaoticParams { x, r: p.r }
}

/// Re-seeds the map from a digest.
///
/// The state comes from the top 64 bits of the digest scaled into (0,1), which
/// is all a binary64 quotient `H / 2^256` can resolve. The control parameter
/// uses the full 256-bit value reduced modulo 100.
pub fn hash_to_params(h: &Digest) -> ChaoticParams {
    let top = u64::from_be_bytes(h.0[..8].try_into().expect("8-byte prefix"));
    let x = (top as f64 / 18_446_744_073_709_551_616.0).clamp(STATE_MIN, STATE_MAX);
    let m = digest_mod_100(h);
    let r = R_MIN + 0.1 * (m as f64 / 100.0);
    ChaoticParams { x, r }
}

/// Big-endian digest value modulo 100, by Horner's rule over the bytes.
pub fn digest_mod_100(h: &Digest) -> u32 {
    h.0.iter()
        .fold(0u32, |acc, &b| (acc * 256 + u32::from(b)) % 100)
}

/// Iterator over logistic-map states after the burn-in period.
#[derive(Debug, Clone)]
pub struct LogisticOrbit {
    state: ChaoticParams,
}

impl LogisticOrbit {
    pub fn new(p: ChaoticParams) -> Self {
        let mut state = p;
        for _ in 0..BURN_IN {
            state = logistic_step(state);
        }
        Self { state }
    }
}

impl Iterator for LogisticOrbit {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        self.state = logistic_step(self.state);
        Some(self.state.x)
    }
}

/// The `n` states following a 100-step burn-in from `p`.
pub fn chaotic_sequence(p: ChaoticParams, n: usize) -> Vec<f64> {
    LogisticOrbit::new(p).take(n).collect()
}

/// Ascending argsort of `chaotic_sequence(p, n)`; equal values keep index order.
pub fn permutation_sequence(p: ChaoticParams, n: usize) -> Vec<usize> {
    let values = chaotic_sequence(p, n);
    let mut order: Vec<usize> = (0..n).collect();
    // sort_by is stable, so ties fall back to ascending index.
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

#[inline]
fn to_byte(value: f64) -> u8 {
    // `as` saturates, and the explicit min covers value == 1.0.
    ((256.0 * value).floor() as u32).min(255) as u8
}

/// Side length of a confusion seed matrix.
pub const SEED_DIM: usize = 16;

/// 16x16 byte matrix (row-major) of `floor(256 * x)` over 256 chaotic states.
pub fn seed_matrix(p: ChaoticParams) -> [u8; SEED_DIM * SEED_DIM] {
    let mut out = [0u8; SEED_DIM * SEED_DIM];
    for (slot, value) in out.iter_mut().zip(LogisticOrbit::new(p)) {
        *slot = to_byte(value);
    }
    out
}

/// `len` keystream bytes built the same way as a seed matrix.
pub fn keystream(p: ChaoticParams, len: usize) -> Vec<u8> {
    LogisticOrbit::new(p).take(len).map(to_byte).collect()
}
