//! Frame files and number rendering.
//!
//! Frame file layout:
//!
//! ```json
//! {"dim": 2, "vectors": [[1, 0], [0, 1], [0.7071067811865476, 0.7071067811865476]], "bounds": [1, 2]}
//! ```
//!
//! `bounds` is optional. Floats are written with 17 significant digits so
//! that every `f64` survives a write/read cycle bit for bit.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::frame::FrameSpec;

/// Formats with 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON formatter that renders floats with 17 significant digits.
#[derive(Clone, Copy, Debug, Default)]
pub struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as compact JSON with 17-digit floats.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
}

impl FrameFile {
    pub fn from_frame(frame: &FrameSpec) -> Self {
        Self {
            dim: frame.dim(),
            vectors: frame.vectors().iter().map(|v| v.to_vec()).collect(),
            bounds: frame.declared_bounds().map(|(a, b)| [a, b]),
        }
    }

    /// Validates dimensions and, when present, the declared bounds.
    pub fn into_frame(self) -> Result<FrameSpec> {
        if self.dim == 0 {
            return Err(Error::Empty("dim"));
        }
        let frame = FrameSpec::from_rows(self.vectors)?;
        if frame.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: frame.dim() });
        }
        match self.bounds {
            Some([a, b]) => frame.with_bounds(a, b),
            None => Ok(frame),
        }
    }
}

pub fn parse_frame(json: &str) -> Result<FrameSpec> {
    serde_json::from_str::<FrameFile>(json)?.into_frame()
}

pub fn frame_to_json(frame: &FrameSpec) -> Result<String> {
    to_json_string(&FrameFile::from_frame(frame))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE1: &str =
        r#"{"dim": 2, "vectors": [[1, 0], [0, 1], [0.7071067811865476, 0.7071067811865476]], "bounds": [1, 2]}"#;

    #[test]
    fn parses_example_file() {
        let frame = parse_frame(EXAMPLE1).unwrap();
        assert_eq!(frame.dim(), 2);
        assert_eq!(frame.len(), 3);
        assert_eq!(frame.declared_bounds(), Some((1.0, 2.0)));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_frame("{\"dim\": 2, \"vectors\": [[1, 0]"), Err(Error::Json(_))));
        assert!(matches!(parse_frame(r#"{"dim": 2, "vectors": [[1, 0]], "extra": 1}"#), Err(Error::Json(_))));
        assert!(matches!(
            parse_frame(r#"{"dim": 3, "vectors": [[1, 0], [0, 1]]}"#),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            parse_frame(r#"{"dim": 2, "vectors": [[1, 0], [0, 1]], "bounds": [1.5, 2]}"#),
            Err(Error::InvalidBounds { .. })
        ));
        assert!(matches!(parse_frame(r#"{"dim": 2, "vectors": []}"#), Err(Error::Empty(_))));
    }

    #[test]
    fn renders_seventeen_digits() {
        assert_eq!(format_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f64(-2.0), "-2.0000000000000000e0");
        let json = to_json_string(&[1.0f64 / 3.0]).unwrap();
        assert_eq!(json, "[3.3333333333333331e-1]");
    }

    proptest! {
        #[test]
        fn frame_files_round_trip_bit_exact(
            rows in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 3), 1..6)
        ) {
            let frame = FrameSpec::from_rows(rows).unwrap();
            let back = parse_frame(&frame_to_json(&frame).unwrap()).unwrap();
            prop_assert_eq!(back, frame);
        }
    }
}
