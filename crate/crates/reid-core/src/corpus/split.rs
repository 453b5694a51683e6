//! Deterministic stratified gallery/query split.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CropRecord;
use crate::error::{Error, Result};

/// Generator recorded in splits and reports. The shuffle is a hand-rolled
/// Fisher-Yates over a ChaCha8 stream, so the assignment depends only on the
/// seed and the input, never on library internals or platform.
pub const PRNG_NAME: &str = "chacha8-fisher-yates";

/// How the random stream is scoped. In `PerSequence` mode each sequence draws
/// from its own seed-derived stream, so re-ingesting one sequence never
/// perturbs another's split. `Global` uses a single stream over all
/// identities in sorted order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitScope {
    PerSequence,
    Global,
}

impl Default for SplitScope {
    fn default() -> Self {
        SplitScope::PerSequence
    }
}

/// Disjoint gallery/query partition of the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitAssignment {
    pub gallery: BTreeSet<usize>,
    pub query: BTreeSet<usize>,
    pub seed: u64,
    pub ratio: f64,
    pub scope: SplitScope,
    /// Name of the generator that produced the assignment.
    pub prng: String,
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn derive_seed(seed: u64, tag: &str) -> u64 {
    splitmix64(seed ^ fnv1a64(tag.as_bytes()))
}

fn fisher_yates(ids: &mut [usize], rng: &mut ChaCha8Rng) {
    for i in (1..ids.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        ids.swap(i, j);
    }
}

/// Gallery size for an identity with `n` crops: round-half-up of `ratio * n`,
/// clamped so that identities with at least two crops keep both sides
/// non-empty. Singleton identities go entirely to gallery, since a query with
/// no gallery positives cannot be scored.
fn gallery_count(n: usize, ratio: f64) -> usize {
    if n == 1 {
        return 1;
    }
    let g = (ratio * n as f64).round() as usize;
    g.clamp(1, n - 1)
}

/// Partition crops into gallery and query by per-identity stratified sampling.
/// Identities are scoped by `(sequence_id, track_id)`. The same records,
/// ratio, seed and scope always yield byte-identical output.
pub fn stratified_split(
    records: &[CropRecord],
    ratio: f64,
    seed: u64,
    scope: SplitScope,
) -> Result<SplitAssignment> {
    if records.is_empty() {
        return Err(Error::InvalidParam(
            "cannot split an empty corpus".to_string(),
        ));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidParam(format!(
            "split ratio must lie in (0,1), got {ratio}"
        )));
    }

    // Group crop ids per identity, keyed by sequence then track id so
    // iteration order is fixed.
    let mut groups: BTreeMap<(&str, u32), Vec<usize>> = BTreeMap::new();
    for rec in records {
        groups
            .entry((rec.sequence_id.as_str(), rec.identity))
            .or_default()
            .push(rec.crop_id);
    }

    let mut gallery = BTreeSet::new();
    let mut query = BTreeSet::new();

    match scope {
        SplitScope::Global => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for (_, mut ids) in groups {
                assign_group(&mut ids, ratio, &mut rng, &mut gallery, &mut query);
            }
        }
        SplitScope::PerSequence => {
            let mut by_sequence: BTreeMap<&str, Vec<Vec<usize>>> = BTreeMap::new();
            for ((seq, _), ids) in groups {
                by_sequence.entry(seq).or_default().push(ids);
            }
            for (seq, id_groups) in by_sequence {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, seq));
                for mut ids in id_groups {
                    assign_group(&mut ids, ratio, &mut rng, &mut gallery, &mut query);
                }
            }
        }
    }

    Ok(SplitAssignment {
        gallery,
        query,
        seed,
        ratio,
        scope,
        prng: PRNG_NAME.to_string(),
    })
}

fn assign_group(
    ids: &mut [usize],
    ratio: f64,
    rng: &mut ChaCha8Rng,
    gallery: &mut BTreeSet<usize>,
    query: &mut BTreeSet<usize>,
) {
    fisher_yates(ids, rng);
    let g = gallery_count(ids.len(), ratio);
    for (i, &id) in ids.iter().enumerate() {
        if i < g {
            gallery.insert(id);
        } else {
            query.insert(id);
        }
    }
}
