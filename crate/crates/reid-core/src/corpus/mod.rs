//! Crop corpus: annotation ingestion, preprocessing and the gallery/query split.
//!
//! A corpus is built from MOT-format annotation files. Each detection line
//! becomes a [`CropRecord`]; bounding boxes are padded, clamped to the frame
//! and size-filtered, and the retained crops are re-indexed densely. The
//! resulting manifest is the row-order contract for every embedding and mask
//! file consumed downstream.

mod manifest;
mod mot;
mod split;

pub use manifest::{ingest, CorpusManifest, SequenceInfo, SequenceSource};
pub use mot::parse_mot;
pub use split::{stratified_split, SplitAssignment, SplitScope, PRNG_NAME};

use serde::{Deserialize, Serialize};

/// Axis-aligned box in pixel coordinates. Coordinates stay real-valued;
/// rasterization to pixels is the extractor's job.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

/// One annotated bounding-box crop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CropRecord {
    /// Dense 0-based index within the corpus.
    pub crop_id: usize,
    pub sequence_id: String,
    /// 1-based frame number.
    pub frame: u32,
    /// Ground-truth track id. Identities are scoped per sequence: the same
    /// numeric id in two sequences names two different objects.
    pub identity: u32,
    pub bbox: BBox,
    /// (width, height) of the source frame in pixels.
    pub frame_dims: (u32, u32),
}

impl CropRecord {
    /// Key under which two crops count as the same physical instance.
    pub fn identity_key(&self) -> (&str, u32) {
        (&self.sequence_id, self.identity)
    }
}

/// Whether the minimum-size filter sees raw or padded boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterStage {
    /// Filter raw boxes, then pad the survivors.
    PrePad,
    /// Pad first and filter on the final crop extents (default).
    PostPad,
}

/// Preprocessing knobs applied between parsing and manifest construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreprocessParams {
    #[serde(default = "default_pad_frac")]
    pub pad_frac: f64,
    #[serde(default = "default_min_side")]
    pub min_side: u32,
    #[serde(default = "default_filter_stage")]
    pub filter_stage: FilterStage,
}

fn default_pad_frac() -> f64 {
    0.05
}
fn default_min_side() -> u32 {
    32
}
fn default_filter_stage() -> FilterStage {
    FilterStage::PostPad
}

impl Default for PreprocessParams {
    fn default() -> Self {
        PreprocessParams {
            pad_frac: default_pad_frac(),
            min_side: default_min_side(),
            filter_stage: default_filter_stage(),
        }
    }
}

/// Crops retained by [`filter_crops`] plus the old-id to new-id mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterResult {
    pub records: Vec<CropRecord>,
    /// Pairs `(old_crop_id, new_crop_id)` for every retained crop.
    pub id_map: Vec<(usize, usize)>,
}

/// Expand a box symmetrically by `pad_frac` on every side, keeping the center,
/// then clamp to the frame. Clamping may shrink the padded box at image edges;
/// a box entirely outside the frame degenerates to zero extent.
pub fn pad_bbox(bbox: &BBox, pad_frac: f64, frame_dims: (u32, u32)) -> BBox {
    let (fw, fh) = (f64::from(frame_dims.0), f64::from(frame_dims.1));
    let cx = bbox.x + bbox.w / 2.0;
    let cy = bbox.y + bbox.h / 2.0;
    let w = bbox.w * (1.0 + 2.0 * pad_frac);
    let h = bbox.h * (1.0 + 2.0 * pad_frac);
    let x0 = (cx - w / 2.0).max(0.0);
    let y0 = (cy - h / 2.0).max(0.0);
    let x1 = (cx + w / 2.0).min(fw);
    let y1 = (cy + h / 2.0).min(fh);
    BBox {
        x: x0,
        y: y0,
        w: (x1 - x0).max(0.0),
        h: (y1 - y0).max(0.0),
    }
}

/// Drop crops with either side below `min_side` pixels. Order is preserved and
/// the survivors are re-indexed to a dense 0-based range.
pub fn filter_crops(records: Vec<CropRecord>, min_side: u32) -> FilterResult {
    let min = f64::from(min_side);
    let mut retained = Vec::with_capacity(records.len());
    let mut id_map = Vec::with_capacity(records.len());
    for rec in records {
        if rec.bbox.w >= min && rec.bbox.h >= min {
            let old = rec.crop_id;
            let mut rec = rec;
            rec.crop_id = retained.len();
            id_map.push((old, rec.crop_id));
            retained.push(rec);
        }
    }
    FilterResult {
        records: retained,
        id_map,
    }
}

/// Apply padding and size filtering in the configured order.
pub fn preprocess(records: Vec<CropRecord>, params: &PreprocessParams) -> FilterResult {
    let pad = |mut rec: CropRecord| {
        rec.bbox = pad_bbox(&rec.bbox, params.pad_frac, rec.frame_dims);
        rec
    };
    match params.filter_stage {
        FilterStage::PostPad => {
            let padded: Vec<CropRecord> = records.into_iter().map(pad).collect();
            filter_crops(padded, params.min_side)
        }
        FilterStage::PrePad => {
            let mut result = filter_crops(records, params.min_side);
            result.records = result.records.into_iter().map(pad).collect();
            result
        }
    }
}
