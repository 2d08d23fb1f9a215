//! Image files: JSON documents and ASCII grids.

use serde::{Deserialize, Serialize};

use freezeset::{DigitalImage, Point};

use crate::CliError;

/// How grid rows and columns map to coordinates.
pub const GRID_CONVENTION: &str = "grid row 0 is the top (largest y), the bottom row is y = 0, column 0 is x = 0";

/// The JSON image schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDocument {
    pub dim: usize,
    pub adjacency: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ImageDocument {
    pub fn from_image(image: &DigitalImage, name: Option<String>) -> Self {
        Self {
            dim: image.dim(),
            adjacency: image.adjacency(),
            points: image.points().iter().map(|p| p.coords().to_vec()).collect(),
            name,
        }
    }

    pub fn to_image(&self) -> Result<DigitalImage, CliError> {
        Ok(DigitalImage::new(
            self.dim,
            self.adjacency,
            self.points.iter().map(|c| Point::new(c.clone())),
        )?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    Json,
    Grid,
    Builtin,
}

impl SourceFormat {
    pub fn label(self) -> &'static str {
        match self {
            SourceFormat::Json => "json",
            SourceFormat::Grid => "grid",
            SourceFormat::Builtin => "built-in",
        }
    }
}

/// A parsed image with whatever naming information its source carried.
#[derive(Debug, Clone)]
pub struct LoadedImage {
    pub image: DigitalImage,
    pub name: Option<String>,
    pub format: SourceFormat,
}

/// Parses a JSON document (recognized by a leading `{`) or an ASCII grid.
/// `adjacency` is required for grids and overrides the document's value
/// for JSON.
pub fn parse_image(source: &str, adjacency: Option<usize>) -> Result<LoadedImage, CliError> {
    if source.trim_start().starts_with('{') {
        let mut doc: ImageDocument =
            serde_json::from_str(source).map_err(|e| CliError::Data(format!("malformed image document: {e}")))?;
        if let Some(u) = adjacency {
            doc.adjacency = u;
        }
        Ok(LoadedImage {
            image: doc.to_image()?,
            name: doc.name,
            format: SourceFormat::Json,
        })
    } else {
        let u = adjacency.ok_or_else(|| CliError::Usage("grid images need --adjacency".into()))?;
        Ok(LoadedImage {
            image: parse_grid(source, u)?,
            name: None,
            format: SourceFormat::Grid,
        })
    }
}

/// Parses a grid of `#` (point) and `.` (no point). Trailing blank lines are
/// ignored; rows may have different lengths.
pub fn parse_grid(source: &str, adjacency: usize) -> Result<DigitalImage, CliError> {
    let rows: Vec<&str> = source.trim_end_matches(['\n', '\r']).lines().map(|l| l.trim_end_matches('\r')).collect();
    let height = rows.len() as i64;
    let mut points = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '#' => points.push(Point::from([c as i64, height - 1 - r as i64])),
                '.' => {}
                other => {
                    return Err(CliError::Data(format!(
                        "unexpected character {other:?} in grid at row {r}, column {c}"
                    )))
                }
            }
        }
    }
    Ok(DigitalImage::new(2, adjacency, points)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use freezeset::fixtures;

    #[test]
    fn grid_square() {
        let x = parse_grid("##\n##\n", 1).unwrap();
        assert_eq!(x, DigitalImage::planar(1, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap());
    }

    #[test]
    fn grid_orientation() {
        // top row holds the largest y
        let x = parse_grid("#.\n.#", 2).unwrap();
        assert_eq!(x, DigitalImage::planar(2, &[(0, 1), (1, 0)]).unwrap());
    }

    #[test]
    fn grid_errors() {
        assert!(matches!(parse_grid("#x", 1), Err(CliError::Data(_))));
        assert!(matches!(parse_grid("..\n..", 1), Err(CliError::Data(_))));
        assert!(matches!(parse_image("##", None), Err(CliError::Usage(_))));
    }

    #[test]
    fn json_round_trip() {
        let kite = fixtures::kite();
        let doc = ImageDocument::from_image(&kite, Some("kite".into()));
        let loaded = parse_image(&doc.to_json(), None).unwrap();
        assert_eq!(loaded.image, kite);
        assert_eq!(loaded.name.as_deref(), Some("kite"));
    }

    #[test]
    fn json_errors() {
        let bad_u = r#"{"dim": 2, "adjacency": 3, "points": [[0,0]]}"#;
        assert!(matches!(parse_image(bad_u, None), Err(CliError::Data(_))));
        let dup = r#"{"dim": 2, "adjacency": 1, "points": [[0,0],[0,0]]}"#;
        assert!(matches!(parse_image(dup, None), Err(CliError::Data(_))));
        let empty = r#"{"dim": 2, "adjacency": 1, "points": []}"#;
        assert!(matches!(parse_image(empty, None), Err(CliError::Data(_))));
        assert!(matches!(parse_image("{\"dim\": 2", None), Err(CliError::Data(_))));
        let extra = r#"{"dim": 1, "adjacency": 1, "points": [[0]], "colour": "red"}"#;
        assert!(matches!(parse_image(extra, None), Err(CliError::Data(_))));
    }

    #[test]
    fn adjacency_override() {
        let src = r#"{"dim": 2, "adjacency": 2, "points": [[0,0],[1,1]]}"#;
        assert_eq!(parse_image(src, Some(1)).unwrap().image.adjacency(), 1);
    }
}
