//! Counter-based per-(edge, round) weight streams.
//!
//! Every weight is a pure function of `(seed, generator, edge, round)`, so the
//! values do not depend on how edges are split across workers or on the order
//! in which they are queried. The generator kind selects the mixing function
//! that turns the counter into random bits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// xorshift64* seeded from the hashed counter.
    Xorshift,
    /// Minimal standard Lehmer generator (multiplier 16807, modulus 2^31 - 1),
    /// two draws concatenated for 62 bits.
    ParkMiller,
    /// SplitMix64 finalizer applied directly to the counter.
    #[default]
    SplitMix,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Xorshift => "xorshift",
            GeneratorKind::ParkMiller => "park-miller",
            GeneratorKind::SplitMix => "splitmix",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "xorshift" => Ok(GeneratorKind::Xorshift),
            "park-miller" | "parkmiller" | "minstd" => Ok(GeneratorKind::ParkMiller),
            "splitmix" | "splitmix-counter" => Ok(GeneratorKind::SplitMix),
            other => Err(format!("unknown generator '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightMode {
    /// Base weight plus uniform noise from the configured interval.
    #[default]
    PerturbBase,
    /// Fresh uniform weight in (0, 1), ignoring the base weight.
    ReplaceUniform,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightStream {
    seed: u64,
    kind: GeneratorKind,
    noise_low: f64,
    noise_high: f64,
    mode: WeightMode,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const TIE_DOMAIN: u64 = 0x5851_f42d_4c95_7f2d;
const PM_MODULUS: u64 = (1 << 31) - 1;
const PM_MULTIPLIER: u64 = 16807;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn counter(edge: EdgeId, round: usize) -> u64 {
    ((round as u64) << 32) | edge as u64
}

impl Default for WeightStream {
    fn default() -> Self {
        WeightStream::new(0, GeneratorKind::default())
    }
}

impl WeightStream {
    /// Perturbs base weights with noise from [0, 100).
    pub fn new(seed: u64, kind: GeneratorKind) -> Self {
        WeightStream {
            seed,
            kind,
            noise_low: 0.0,
            noise_high: 100.0,
            mode: WeightMode::PerturbBase,
        }
    }

    /// Emits the base weights unchanged; ties fall through to the hashed
    /// tie-break.
    pub fn zero_noise(seed: u64) -> Self {
        WeightStream {
            noise_high: 0.0,
            ..WeightStream::new(seed, GeneratorKind::default())
        }
    }

    /// Fresh uniform (0, 1) weights every round.
    pub fn uniform(seed: u64, kind: GeneratorKind) -> Self {
        WeightStream {
            mode: WeightMode::ReplaceUniform,
            ..WeightStream::new(seed, kind)
        }
    }

    /// Sets the perturbation interval. Requires `0 <= low <= high`.
    pub fn with_noise(mut self, low: f64, high: f64) -> Result<Self> {
        if !(low.is_finite() && high.is_finite() && low >= 0.0 && low <= high) {
            return Err(Error::BadNoise { low, high });
        }
        self.noise_low = low;
        self.noise_high = high;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: WeightMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn noise(&self) -> (f64, f64) {
        (self.noise_low, self.noise_high)
    }

    /// 64 random bits for `(edge, round)`.
    #[inline]
    pub fn bits(&self, edge: EdgeId, round: usize) -> u64 {
        let state = splitmix64(self.seed) ^ counter(edge, round);
        match self.kind {
            GeneratorKind::SplitMix => splitmix64(state),
            GeneratorKind::Xorshift => {
                let mut x = splitmix64(state.wrapping_mul(GOLDEN)) | 1;
                for _ in 0..2 {
                    x ^= x >> 12;
                    x ^= x << 25;
                    x ^= x >> 27;
                }
                x.wrapping_mul(0x2545_f491_4f6c_dd1d)
            }
            GeneratorKind::ParkMiller => {
                let mut x = splitmix64(state) % (PM_MODULUS - 1) + 1;
                x = x * PM_MULTIPLIER % PM_MODULUS;
                let hi = x;
                x = x * PM_MULTIPLIER % PM_MODULUS;
                // two 31-bit draws, left aligned
                (hi << 33) | (x << 2)
            }
        }
    }

    /// Uniform value in the open interval (0, 1) with 53 bits of resolution.
    #[inline]
    pub fn unit(&self, edge: EdgeId, round: usize) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.bits(edge, round) >> 11) as f64 + 0.5) * SCALE
    }

    /// The weight of `edge` in `round`, given its base weight.
    #[inline]
    pub fn value(&self, edge: EdgeId, base: f64, round: usize) -> f64 {
        match self.mode {
            WeightMode::ReplaceUniform => self.unit(edge, round),
            WeightMode::PerturbBase => {
                let width = self.noise_high - self.noise_low;
                if width == 0.0 {
                    return base + self.noise_low;
                }
                let mut noise = width * self.unit(edge, round);
                if noise >= width {
                    noise = width * (1.0 - f64::EPSILON);
                }
                base + self.noise_low + noise
            }
        }
    }

    /// Per-round hash used to order edges of exactly equal weight.
    #[inline]
    pub fn tie_hash(&self, edge: EdgeId, round: usize) -> u64 {
        splitmix64(splitmix64(self.seed ^ TIE_DOMAIN) ^ counter(edge, round))
    }

    /// Total order over `(weight, edge)` pairs for this round; `Greater`
    /// means `a` wins.
    #[inline]
    pub fn compare(&self, round: usize, w_a: f64, a: EdgeId, w_b: f64, b: EdgeId) -> Ordering {
        w_a.total_cmp(&w_b)
            .then_with(|| {
                if a == b {
                    Ordering::Equal
                } else {
                    self.tie_hash(a, round).cmp(&self.tie_hash(b, round))
                }
            })
            .then_with(|| a.cmp(&b))
    }

    /// Fills `out[e]` for every edge with `active[e]` set; other slots are
    /// left untouched.
    pub fn round_weights(&self, h: &Hypergraph, round: usize, active: &[bool], out: &mut [f64]) {
        let base = h.base_weights();
        out.par_iter_mut()
            .zip(active.par_iter())
            .enumerate()
            .for_each(|(e, (w, &on))| {
                if on {
                    *w = self.value(e as EdgeId, base[e], round);
                }
            });
    }
}

/// Which of two weighted edges wins under `stream`'s order for `round`.
pub fn tie_break(
    w_a: f64,
    id_a: EdgeId,
    w_b: f64,
    id_b: EdgeId,
    stream: &WeightStream,
    round: usize,
) -> Ordering {
    stream.compare(round, w_a, id_a, w_b, id_b)
}
