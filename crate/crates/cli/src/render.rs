//! Planar drawings of an image with a highlighted subset.

use std::fmt::Write;

use freezeset::{DigitalImage, PointSet};

use crate::CliError;

const CELL: i64 = 32;
const MARGIN: i64 = 16;

fn bounds(image: &DigitalImage) -> Result<(i64, i64, i64, i64), CliError> {
    if image.dim() != 2 {
        return Err(CliError::Data(format!("can only render planar images, got dimension {}", image.dim())));
    }
    let xs = image.points().iter().map(|p| p.coord(0));
    let ys = image.points().iter().map(|p| p.coord(1));
    Ok((xs.clone().min().unwrap(), xs.max().unwrap(), ys.clone().min().unwrap(), ys.max().unwrap()))
}

/// Bounding-box grid, top row = largest y: `@` highlighted point, `#` other
/// point, `.` lattice point outside the image.
pub fn ascii(image: &DigitalImage, highlight: &PointSet) -> Result<String, CliError> {
    let (x0, x1, y0, y1) = bounds(image)?;
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            out.push(match image.index_of(&[x, y].into()) {
                Some(i) if highlight.contains(i) => '@',
                Some(_) => '#',
                None => '.',
            });
        }
        out.push('\n');
    }
    Ok(out)
}

/// SVG with adjacency edges, black points, and highlighted points in red.
pub fn svg(image: &DigitalImage, highlight: &PointSet) -> Result<String, CliError> {
    let (x0, x1, y0, y1) = bounds(image)?;
    let w = (x1 - x0) * CELL + 2 * MARGIN;
    let h = (y1 - y0) * CELL + 2 * MARGIN;
    let pos = |i: usize| {
        let p = image.point(i);
        ((p.coord(0) - x0) * CELL + MARGIN, (y1 - p.coord(1)) * CELL + MARGIN)
    };
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for y in y0..=y1 {
        for x in x0..=x1 {
            let (cx, cy) = ((x - x0) * CELL + MARGIN, (y1 - y) * CELL + MARGIN);
            writeln!(out, r##"<circle cx="{cx}" cy="{cy}" r="2" fill="#bbbbbb"/>"##).unwrap();
        }
    }
    for i in 0..image.len() {
        for &j in image.neighbors(i).iter().filter(|&&j| j > i) {
            let ((ax, ay), (bx, by)) = (pos(i), pos(j));
            writeln!(out, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="black" stroke-width="2"/>"#).unwrap();
        }
    }
    for i in 0..image.len() {
        let (cx, cy) = pos(i);
        let fill = if highlight.contains(i) { "#d62728" } else { "black" };
        writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="7" fill="{fill}"><title>{}</title></circle>"#, image.point(i)).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_grid;

    #[test]
    fn ascii_round_trips_through_grid() {
        let x = DigitalImage::planar(2, &[(0, 0), (1, 1), (2, 1), (2, 2)]).unwrap();
        let text = ascii(&x, &x.empty_set()).unwrap();
        assert_eq!(text, "..#\n.##\n#..\n");
        assert_eq!(parse_grid(&text, 2).unwrap(), x);
    }

    #[test]
    fn rejects_non_planar() {
        let x = DigitalImage::new(1, 1, [freezeset::Point::from([0])]).unwrap();
        assert!(ascii(&x, &x.empty_set()).is_err());
    }
}
