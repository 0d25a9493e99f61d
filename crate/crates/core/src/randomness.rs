//! Seed-keyed shared randomness.
//!
//! Every random object the algorithm uses (the hop radius, center and mark
//! membership, cell ranks, exponential shifts) is a pure function of the master
//! seed, a purpose tag and an id. Independent oracle calls, threads and
//! processes holding the same seed therefore see the same random choices.
//!
//! The PRF is a keyed SplitMix64-style mixer. It is not cryptographic; it only
//! needs to be repeatable and well distributed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LssgError, Result};
use crate::graph::Vertex;
use crate::params::Params;

/// A 256-bit master seed, written as 64 hex digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed([u8; 32]);

impl Seed {
    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        Seed(bytes)
    }

    /// Seed whose hex form ends in the big-endian digits of `x`.
    pub fn from_u64(x: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[24..].copy_from_slice(&x.to_be_bytes());
        Seed(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    fn words(&self) -> [u64; 4] {
        let mut w = [0u64; 4];
        for (i, chunk) in self.0.chunks_exact(8).enumerate() {
            w[i] = u64::from_be_bytes(chunk.try_into().unwrap());
        }
        w
    }

    /// A child seed for the `index`-th trial under `tag`. Used for fresh seeds
    /// in restart loops and multi-seed experiments.
    pub fn child(&self, tag: &str, index: u64) -> Seed {
        let key = tag_key(self, tag);
        let mut bytes = [0u8; 32];
        for lane in 0..4u64 {
            let word = prf(key, index, lane);
            bytes[lane as usize * 8..][..8].copy_from_slice(&word.to_be_bytes());
        }
        Seed(bytes)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({self})")
    }
}

impl FromStr for Seed {
    type Err = LssgError;

    /// Accepts up to 64 hex digits, optionally prefixed by `0x`; shorter
    /// strings are left-padded with zeros.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("0x").unwrap_or(s);
        if s.is_empty() || s.len() > 64 {
            return Err(LssgError::InvalidInput(format!(
                "seed must be 1 to 64 hex digits, got {} characters",
                s.len()
            )));
        }
        let padded = format!("{s:0>64}");
        let mut bytes = [0u8; 32];
        hex::decode_to_slice(&padded, &mut bytes)
            .map_err(|e| LssgError::InvalidInput(format!("seed is not hex: {e}")))?;
        Ok(Seed(bytes))
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Explicit overrides for unit tests and hand-built scenarios.
///
/// Sets (`centers`, `marks`) replace the sampled set entirely. Maps (`ranks`,
/// `radii`) override the listed ids only.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<BTreeSet<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<BTreeSet<Vertex>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ranks: BTreeMap<Vertex, u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub radii: BTreeMap<Vertex, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LssgError::Fixture(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| LssgError::Fixture(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn with_centers(mut self, centers: impl IntoIterator<Item = Vertex>) -> Self {
        self.centers = Some(centers.into_iter().collect());
        self
    }

    pub fn with_marks(mut self, marks: impl IntoIterator<Item = Vertex>) -> Self {
        self.marks = Some(marks.into_iter().collect());
        self
    }

    pub fn with_ranks(mut self, ranks: impl IntoIterator<Item = (Vertex, u64)>) -> Self {
        self.ranks.extend(ranks);
        self
    }

    pub fn with_radii(mut self, radii: impl IntoIterator<Item = (Vertex, f64)>) -> Self {
        self.radii.extend(radii);
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }
}

/// Total order key of a Voronoi cell: the random rank, then the center id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRank {
    pub value: u128,
    pub center: Vertex,
}

pub mod tags {
    pub const ELL: &str = "ell";
    pub const CENTER: &str = "center";
    pub const RANK: &str = "rank";
    pub const MARK: &str = "mark";
    pub const EN: &str = "en";
}

#[derive(Debug, Clone, Copy)]
struct Keys {
    ell: u64,
    center: u64,
    rank: u64,
    mark: u64,
    en: u64,
}

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: Seed,
    keys: Keys,
    fixture: Option<Fixture>,
}

impl RandomSource {
    pub fn new(seed: Seed) -> Self {
        RandomSource {
            seed,
            keys: Keys {
                ell: tag_key(&seed, tags::ELL),
                center: tag_key(&seed, tags::CENTER),
                rank: tag_key(&seed, tags::RANK),
                mark: tag_key(&seed, tags::MARK),
                en: tag_key(&seed, tags::EN),
            },
            fixture: None,
        }
    }

    pub fn with_fixture(seed: Seed, fixture: Fixture) -> Self {
        let mut src = Self::new(seed);
        src.fixture = Some(fixture);
        src
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn fixture(&self) -> Option<&Fixture> {
        self.fixture.as_ref()
    }

    /// Raw 64-bit PRF output for `(tag, id)`.
    pub fn prf64(&self, tag: &str, id: u64) -> u64 {
        prf(self.key(tag), id, 0)
    }

    fn key(&self, tag: &str) -> u64 {
        match tag {
            tags::ELL => self.keys.ell,
            tags::CENTER => self.keys.center,
            tags::RANK => self.keys.rank,
            tags::MARK => self.keys.mark,
            tags::EN => self.keys.en,
            other => tag_key(&self.seed, other),
        }
    }

    pub fn fixture_ell(&self) -> Option<usize> {
        self.fixture.as_ref().and_then(|f| f.ell)
    }

    /// Uniform draw from the inclusive integer range `[lo, hi]`.
    pub fn draw_ell(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        let width = (hi - lo) as u64 + 1;
        lo + (prf(self.keys.ell, 0, 0) % width) as usize
    }

    pub fn is_center(&self, params: &Params, v: Vertex) -> bool {
        if let Some(centers) = self.fixture.as_ref().and_then(|f| f.centers.as_ref()) {
            return centers.contains(&v);
        }
        bernoulli(prf(self.keys.center, v as u64, 0), params.q)
    }

    pub fn is_marked(&self, params: &Params, center: Vertex) -> bool {
        if let Some(marks) = self.fixture.as_ref().and_then(|f| f.marks.as_ref()) {
            return marks.contains(&center);
        }
        bernoulli(prf(self.keys.mark, center as u64, 0), params.p)
    }

    /// 128-bit rank of the cell centered at `center`.
    pub fn cell_rank(&self, center: Vertex) -> CellRank {
        if let Some(&r) = self.fixture.as_ref().and_then(|f| f.ranks.get(&center)) {
            return CellRank {
                value: r as u128,
                center,
            };
        }
        let hi = prf(self.keys.rank, center as u64, 0) as u128;
        let lo = prf(self.keys.rank, center as u64, 1) as u128;
        CellRank {
            value: (hi << 64) | lo,
            center,
        }
    }

    /// Exponential shift `r_v = -ln(U) / beta` with `U` uniform on `(0, 1]`.
    pub fn exp_radius(&self, params: &Params, v: Vertex) -> f64 {
        if let Some(&r) = self.fixture.as_ref().and_then(|f| f.radii.get(&v)) {
            return r;
        }
        exp_from_bits(prf(self.keys.en, v as u64, 0), params.beta)
    }
}

/// Maps the top 53 bits of `bits` to `U` in `(0, 1]` and returns `-ln(U)/beta`.
pub fn exp_from_bits(bits: u64, beta: f64) -> f64 {
    let u = ((bits >> 11) + 1) as f64 / (1u64 << 53) as f64;
    -u.ln() / beta
}

/// `true` with probability `prob` for uniformly distributed `bits`.
pub fn bernoulli(bits: u64, prob: f64) -> bool {
    if prob >= 1.0 {
        return true;
    }
    if prob <= 0.0 || prob.is_nan() {
        return false;
    }
    // Saturating float-to-int cast; prob < 1 keeps the threshold below 2^64.
    let threshold = (prob * 18_446_744_073_709_551_616.0) as u64;
    bits < threshold
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn tag_key(seed: &Seed, tag: &str) -> u64 {
    // FNV-1a over the tag, then fold in the seed words.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    let mut state = splitmix64(h);
    for w in seed.words() {
        state = splitmix64(state ^ w);
    }
    state
}

fn prf(key: u64, id: u64, lane: u64) -> u64 {
    let x = splitmix64(key ^ splitmix64(id.wrapping_mul(0xD6E8_FEB8_6659_FD93) ^ lane));
    splitmix64(x ^ key.rotate_left(32))
}
