//! Seeded synthetic relationships for the benchmark tables.
//!
//! Generation is pinned to ChaCha8 so identical `(kind, n, seed, noise)`
//! tuples produce bit-identical datasets across runs and platforms. The
//! functional kinds draw x uniformly on `[0, 1]` and apply a deterministic
//! `h(x)` rescaled into the unit square; the non-functional kinds combine a
//! random parameter with a random branch or angle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Stream separation constant so clean generation and noise injection never
/// share a PRNG stream.
const NOISE_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

// Shape parameters for the non-functional kinds. The y-scale factors shrink
// each relationship vertically (about the midline, leaving rank structure and
// grid scores of the clean data unchanged) so a fixed additive noise level has
// a realistic relative effect.
const CIRCLE_AXIS_RATIO: f64 = 0.37;
const CIRCLE_Y_SCALE: f64 = 0.3;
const SIN_MIX_AMPLITUDE: f64 = 0.6;
const SIN_MIX_GAP: f64 = 0.45;
const SIN_MIX_Y_SCALE: f64 = 0.5;
const TWO_LINES_GAP: f64 = 0.52;
const TWO_LINES_Y_SCALE: f64 = 0.78;

/// Shrink `y` toward 1/2 by factor `scale`.
fn squeeze(y: f64, scale: f64) -> f64 {
    scale * y + (1.0 - scale) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RelationshipKind {
    Linear,
    Parabolic,
    Periodic,
    Cubic,
    SinTwoFreq,
    SinSingleFreq,
    Circle,
    SinMixture,
    TwoLines,
    Random,
}

impl RelationshipKind {
    /// The six deterministic `y = h(x)` kinds, in benchmark-table order.
    pub const FUNCTIONAL: [RelationshipKind; 6] = [
        RelationshipKind::Linear,
        RelationshipKind::Parabolic,
        RelationshipKind::Periodic,
        RelationshipKind::Cubic,
        RelationshipKind::SinTwoFreq,
        RelationshipKind::SinSingleFreq,
    ];

    pub const NON_FUNCTIONAL: [RelationshipKind; 4] = [
        RelationshipKind::Circle,
        RelationshipKind::SinMixture,
        RelationshipKind::TwoLines,
        RelationshipKind::Random,
    ];

    /// The non-functional kinds that appear in the noisy tables.
    pub const NOISY: [RelationshipKind; 3] = [
        RelationshipKind::Circle,
        RelationshipKind::SinMixture,
        RelationshipKind::TwoLines,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationshipKind::Linear => "linear",
            RelationshipKind::Parabolic => "parabolic",
            RelationshipKind::Periodic => "periodic",
            RelationshipKind::Cubic => "cubic",
            RelationshipKind::SinTwoFreq => "sin-two-freq",
            RelationshipKind::SinSingleFreq => "sin-single-freq",
            RelationshipKind::Circle => "circle",
            RelationshipKind::SinMixture => "sin-mixture",
            RelationshipKind::TwoLines => "two-lines",
            RelationshipKind::Random => "random",
        }
    }

    pub fn is_functional(self) -> bool {
        Self::FUNCTIONAL.contains(&self)
    }

    /// `h(x)` for the functional kinds.
    pub fn apply(self, x: f64) -> Option<f64> {
        match self {
            RelationshipKind::Linear => Some(x),
            RelationshipKind::Parabolic => Some(x * x),
            RelationshipKind::Periodic => Some((2.0 * x).fract()),
            RelationshipKind::Cubic => {
                let t = 2.0 * x - 1.0;
                Some((t * t * t + 1.0) / 2.0)
            }
            RelationshipKind::SinTwoFreq => Some(if x < 0.5 {
                ((10.0 * x).sin() + 1.0) / 2.0
            } else {
                ((25.0 * x).sin() + 1.0) / 2.0
            }),
            RelationshipKind::SinSingleFreq => Some(((8.0 * x).sin() + 1.0) / 2.0),
            _ => None,
        }
    }
}

impl fmt::Display for RelationshipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationshipKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = RelationshipKind::FUNCTIONAL
            .iter()
            .chain(&RelationshipKind::NON_FUNCTIONAL);
        for &kind in all {
            if s.eq_ignore_ascii_case(kind.name()) {
                return Ok(kind);
            }
        }
        Err(Error::UnknownKind(format!("relationship kind '{s}'")))
    }
}

/// Additive y-noise.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum NoiseSpec {
    None,
    Uniform { half_width: f64 },
    Gaussian { sigma: f64 },
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseSpec::None => f.write_str("none"),
            NoiseSpec::Uniform { half_width } => write!(f, "uniform:{half_width}"),
            NoiseSpec::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
        }
    }
}

impl FromStr for NoiseSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("none") {
            return Ok(NoiseSpec::None);
        }
        let parse_amount = |v: &str, what: &str| {
            v.parse::<f64>()
                .ok()
                .filter(|a| a.is_finite() && *a >= 0.0)
                .ok_or_else(|| Error::UnknownKind(format!("{what} amount '{v}'")))
        };
        if let Some(v) = s.strip_prefix("uniform:") {
            return Ok(NoiseSpec::Uniform {
                half_width: parse_amount(v, "uniform noise")?,
            });
        }
        if let Some(v) = s.strip_prefix("gaussian:") {
            return Ok(NoiseSpec::Gaussian {
                sigma: parse_amount(v, "gaussian noise")?,
            });
        }
        Err(Error::UnknownKind(format!("noise '{s}'")))
    }
}

/// Deterministic synthetic dataset for `(kind, n, seed, noise)`.
pub fn generate(
    kind: RelationshipKind,
    n: usize,
    seed: u64,
    noise: &NoiseSpec,
) -> Result<Dataset<f64>> {
    if n < 4 {
        return Err(Error::TooFewPoints { min: 4, actual: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let point = match kind {
            RelationshipKind::Circle => {
                // Ellipse with axis ratio CIRCLE_AXIS_RATIO, tilted 45 degrees.
                let theta = 2.0 * PI * rng.random::<f64>();
                let (u, v) = (theta.cos(), CIRCLE_AXIS_RATIO * theta.sin());
                let a = (u - v) / std::f64::consts::SQRT_2;
                let b = (u + v) / std::f64::consts::SQRT_2;
                ((a + 1.0) / 2.0, squeeze((b + 1.0) / 2.0, CIRCLE_Y_SCALE))
            }
            RelationshipKind::SinMixture => {
                let x = rng.random::<f64>();
                let branch: bool = rng.random();
                let base = SIN_MIX_AMPLITUDE * ((2.0 * PI * x).sin() + 1.0) / 2.0;
                let offset = if branch { SIN_MIX_GAP } else { 0.0 };
                let y = (base + offset) / (SIN_MIX_AMPLITUDE + SIN_MIX_GAP);
                (x, squeeze(y, SIN_MIX_Y_SCALE))
            }
            RelationshipKind::TwoLines => {
                let x = rng.random::<f64>();
                let branch: bool = rng.random();
                let offset = if branch { TWO_LINES_GAP } else { 0.0 };
                (
                    x,
                    squeeze((x + offset) / (1.0 + TWO_LINES_GAP), TWO_LINES_Y_SCALE),
                )
            }
            RelationshipKind::Random => (rng.random::<f64>(), rng.random::<f64>()),
            functional => {
                let x = rng.random::<f64>();
                (x, functional.apply(x).expect("functional kind"))
            }
        };
        pts.push(point);
    }
    let clean = Dataset::new(pts)?;
    Ok(add_noise(&clean, noise, seed ^ NOISE_SEED_SALT))
}

/// Add i.i.d. y-noise; x values and point order are untouched.
pub fn add_noise(d: &Dataset<f64>, noise: &NoiseSpec, seed: u64) -> Dataset<f64> {
    match *noise {
        NoiseSpec::None => d.clone(),
        NoiseSpec::Uniform { half_width } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            map_y(d, |y| y + half_width * (2.0 * rng.random::<f64>() - 1.0))
        }
        NoiseSpec::Gaussian { sigma } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            map_y(d, |y| {
                let z: f64 = StandardNormal.sample(&mut rng);
                y + sigma * z
            })
        }
    }
}

fn map_y(d: &Dataset<f64>, mut f: impl FnMut(f64) -> f64) -> Dataset<f64> {
    let pts = d.points().iter().map(|&(x, y)| (x, f(y))).collect();
    Dataset::new(pts).expect("noise kept coordinates finite")
}
