//! MOT-format annotation parsing.
//!
//! One detection per line: `frame,track_id,x,y,w,h,...` — comma-separated,
//! at least six fields, anything after the sixth ignored.

use super::{BBox, CropRecord};
use crate::error::{Error, Result};

fn field_u32(raw: &str, name: &str, line: usize) -> Result<u32> {
    let value: i64 = raw.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("non-numeric {name} field {raw:?}"),
    })?;
    if value < 1 {
        return Err(Error::Parse {
            line,
            msg: format!("{name} must be a positive integer, got {value}"),
        });
    }
    u32::try_from(value).map_err(|_| Error::Parse {
        line,
        msg: format!("{name} out of range: {value}"),
    })
}

fn field_f64(raw: &str, name: &str, line: usize) -> Result<f64> {
    let value: f64 = raw.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("non-numeric {name} field {raw:?}"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("non-finite {name} field {raw:?}"),
        });
    }
    Ok(value)
}

/// Parse one annotation file into crop records. `crop_id`s are assigned in
/// line order starting at 0; boxes are kept exactly as written (padding and
/// clamping happen later). Blank lines are skipped.
pub fn parse_mot(
    text: &str,
    sequence_id: &str,
    frame_dims: (u32, u32),
) -> Result<Vec<CropRecord>> {
    let mut records = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 6 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected at least 6 fields, got {}", fields.len()),
            });
        }
        let frame = field_u32(fields[0], "frame", line_no)?;
        let identity = field_u32(fields[1], "track_id", line_no)?;
        let x = field_f64(fields[2], "x", line_no)?;
        let y = field_f64(fields[3], "y", line_no)?;
        let w = field_f64(fields[4], "w", line_no)?;
        let h = field_f64(fields[5], "h", line_no)?;
        if w <= 0.0 || h <= 0.0 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("bbox sides must be positive, got w={w} h={h}"),
            });
        }
        records.push(CropRecord {
            crop_id: records.len(),
            sequence_id: sequence_id.to_string(),
            frame,
            identity,
            bbox: BBox { x, y, w, h },
            frame_dims,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_line() {
        let recs = parse_mot("1,3,10,20,50,40,1,-1,-1,-1", "P01", (1920, 1080)).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.crop_id, 0);
        assert_eq!(r.frame, 1);
        assert_eq!(r.identity, 3);
        assert_eq!(
            r.bbox,
            BBox {
                x: 10.0,
                y: 20.0,
                w: 50.0,
                h: 40.0
            }
        );
        assert_eq!(r.frame_dims, (1920, 1080));
    }

    #[test]
    fn empty_file_yields_empty_list() {
        assert!(parse_mot("", "P01", (100, 100)).unwrap().is_empty());
        assert!(parse_mot("\n\n", "P01", (100, 100)).unwrap().is_empty());
    }

    #[test]
    fn non_numeric_field_reports_line_number() {
        let err = parse_mot("2,5,abc,0,10,10", "P01", (100, 100)).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn error_line_numbers_count_from_one() {
        let text = "1,1,0,0,40,40,1\n2,1,0,0,40,40,1\n3,x,0,0,40,40,1\n";
        let err = parse_mot(text, "P01", (100, 100)).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn too_few_fields_is_an_error() {
        assert!(parse_mot("1,2,3,4,5", "P01", (100, 100)).is_err());
    }

    #[test]
    fn negative_or_zero_sides_are_errors() {
        assert!(parse_mot("1,1,0,0,-5,10,1", "P01", (100, 100)).is_err());
        assert!(parse_mot("1,1,0,0,10,0,1", "P01", (100, 100)).is_err());
    }

    #[test]
    fn frame_and_track_must_be_positive_integers() {
        assert!(parse_mot("0,1,0,0,10,10,1", "P01", (100, 100)).is_err());
        assert!(parse_mot("1,0,0,0,10,10,1", "P01", (100, 100)).is_err());
        assert!(parse_mot("1.5,1,0,0,10,10,1", "P01", (100, 100)).is_err());
    }

    #[test]
    fn crop_ids_follow_line_order() {
        let text = "1,1,0,0,40,40,1\n\n2,2,5,5,40,40,1\n";
        let recs = parse_mot(text, "P01", (100, 100)).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].crop_id, 0);
        assert_eq!(recs[1].crop_id, 1);
        assert_eq!(recs[1].frame, 2);
    }

    #[test]
    fn fractional_coordinates_are_kept() {
        let recs = parse_mot("1,1,10.25,20.5,30.75,40.125,1", "P01", (100, 100)).unwrap();
        assert_eq!(recs[0].bbox.x, 10.25);
        assert_eq!(recs[0].bbox.h, 40.125);
    }
}
