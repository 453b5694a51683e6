//! Corpus manifest: the JSON document that fixes crop order for the run.
//!
//! Every embedding matrix and mask file is row-aligned to `crops` — crop ids
//! are dense indices into that list.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_mot, preprocess, CropRecord, PreprocessParams};
use crate::error::{Error, Result};

pub const MANIFEST_VERSION: u32 = 1;

/// One annotated video sequence contributing crops to the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceInfo {
    pub sequence_id: String,
    pub annotation_path: String,
    pub frame_width: u32,
    pub frame_height: u32,
}

/// Raw ingestion input: sequence metadata plus the annotation file contents.
#[derive(Debug, Clone)]
pub struct SequenceSource {
    pub info: SequenceInfo,
    pub annotations: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub version: u32,
    pub preprocessing: PreprocessParams,
    pub sequences: Vec<SequenceInfo>,
    /// Retained crops with final (padded, clamped) boxes and dense ids.
    pub crops: Vec<CropRecord>,
    /// `(pre_filter_id, crop_id)` pairs recording which raw detections survived.
    pub id_map: Vec<(usize, usize)>,
}

/// Parse and preprocess all sequences into a manifest. Crop ids are assigned
/// in sequence order, then line order, then re-densified by the size filter.
pub fn ingest(sources: &[SequenceSource], params: &PreprocessParams) -> Result<CorpusManifest> {
    let mut raw = Vec::new();
    for src in sources {
        let dims = (src.info.frame_width, src.info.frame_height);
        let records = parse_mot(&src.annotations, &src.info.sequence_id, dims)?;
        let offset = raw.len();
        for (i, mut rec) in records.into_iter().enumerate() {
            rec.crop_id = offset + i;
            raw.push(rec);
        }
    }
    let filtered = preprocess(raw, params);
    Ok(CorpusManifest {
        version: MANIFEST_VERSION,
        preprocessing: *params,
        sequences: sources.iter().map(|s| s.info.clone()).collect(),
        crops: filtered.records,
        id_map: filtered.id_map,
    })
}

impl CorpusManifest {
    pub fn retained_count(&self) -> usize {
        self.crops.len()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_vec_pretty(self)?;
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        let manifest: CorpusManifest = serde_json::from_slice(&bytes)?;
        manifest.validate()?;
        Ok(manifest)
    }

    /// Check the dense-id contract and basic geometry invariants.
    pub fn validate(&self) -> Result<()> {
        for (i, crop) in self.crops.iter().enumerate() {
            if crop.crop_id != i {
                return Err(Error::InvalidParam(format!(
                    "manifest crop at position {i} has crop_id {}; ids must be dense",
                    crop.crop_id
                )));
            }
            if !(crop.bbox.w > 0.0 && crop.bbox.h > 0.0) {
                return Err(Error::InvalidParam(format!(
                    "crop {i} has non-positive extent"
                )));
            }
        }
        Ok(())
    }
}
