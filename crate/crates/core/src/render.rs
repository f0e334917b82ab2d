//! Text and SVG drawings of diagrams and ramified partitions.
//!
//! Points sit on two rows. Within a block, consecutive points of a row are
//! joined by arcs and the leftmost top point is joined to the leftmost bottom
//! point. For a ramified pair `(I, R)`, blocks of `I` lying in one block of
//! `R` are linked by dashed ties.

use std::fmt::Write;
use std::str::FromStr;

use crate::diagram::{Diagram, Point};
use crate::error::{Error, Result};
use crate::ramified::Ramified;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "svg" => Ok(Format::Svg),
            other => Err(Error::UnknownName(format!("render format {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stroke {
    /// A top point joined to a bottom point.
    Line(Point, Point),
    /// Two points of the same row.
    Arc(Point, Point),
    /// Dashed link between two blocks of `I` sharing a block of `R`.
    Tie(Point, Point),
}

/// The strokes that draw `d`, plus ties joining `groups` of its blocks.
fn strokes(d: &Diagram, ties: &[Vec<usize>]) -> Vec<Stroke> {
    let blocks = d.blocks();
    let mut out = Vec::new();
    for b in &blocks {
        let tops: Vec<Point> = b.iter().copied().filter(|p| p.is_top()).collect();
        let bottoms: Vec<Point> = b.iter().copied().filter(|p| !p.is_top()).collect();
        for row in [&tops, &bottoms] {
            for w in row.windows(2) {
                out.push(Stroke::Arc(w[0], w[1]));
            }
        }
        if let (Some(&t), Some(&u)) = (tops.first(), bottoms.first()) {
            out.push(Stroke::Line(t, u));
        }
    }
    for group in ties {
        for w in group.windows(2) {
            out.push(Stroke::Tie(blocks[w[0]][0], blocks[w[1]][0]));
        }
    }
    out
}

/// Blocks of `I` grouped by the block of `R` containing them.
fn tie_groups(r: &Ramified) -> Vec<Vec<usize>> {
    let fine = r.fine().blocks();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); r.coarse().num_blocks()];
    for (idx, b) in fine.iter().enumerate() {
        groups[r.coarse().block_of(b[0])].push(idx);
    }
    groups.retain(|g| g.len() > 1);
    groups
}

pub fn diagram_strokes(d: &Diagram) -> Vec<Stroke> {
    strokes(d, &[])
}

pub fn ramified_strokes(r: &Ramified) -> Vec<Stroke> {
    strokes(r.fine(), &tie_groups(r))
}

fn text(n: usize, strokes: &[Stroke]) -> String {
    let mut out = format!("n = {n}\n");
    for s in strokes {
        let _ = match s {
            Stroke::Line(a, b) => writeln!(out, "line {a} -- {b}"),
            Stroke::Arc(a, b) => writeln!(out, "arc  {a} -- {b}"),
            Stroke::Tie(a, b) => writeln!(out, "tie  {a} .. {b}"),
        };
    }
    out
}

const STEP: f64 = 40.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 130.0;

fn coords(p: Point) -> (f64, f64) {
    let x = STEP * p.index() as f64;
    (x, if p.is_top() { TOP } else { BOTTOM })
}

fn svg(n: usize, strokes: &[Stroke]) -> String {
    let width = STEP * (n as f64 + 1.0);
    let height = BOTTOM + TOP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n");
    for s in strokes {
        let _ = match s {
            Stroke::Line(a, b) => {
                let ((x1, y1), (x2, y2)) = (coords(*a), coords(*b));
                writeln!(out, r#"<line class="line" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#)
            }
            Stroke::Arc(a, b) => {
                let ((x1, y1), (x2, _)) = (coords(*a), coords(*b));
                let depth = 0.35 * (x2 - x1).abs().max(STEP);
                let cy = if a.is_top() { y1 + depth } else { y1 - depth };
                writeln!(
                    out,
                    r#"<path class="arc" d="M {x1} {y1} C {x1} {cy} {x2} {cy} {x2} {y1}"/>"#
                )
            }
            Stroke::Tie(a, b) => {
                let ((x1, y1), (x2, y2)) = (coords(*a), coords(*b));
                writeln!(
                    out,
                    r#"<line class="tie" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="red" stroke-dasharray="6 4"/>"#
                )
            }
        };
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for k in 1..=n {
        for p in [Point::Top(k), Point::Bottom(k)] {
            let (x, y) = coords(p);
            let _ = writeln!(out, r#"<circle class="point" cx="{x}" cy="{y}" r="4"/>"#);
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn render_diagram(d: &Diagram, format: Format) -> String {
    let s = diagram_strokes(d);
    match format {
        Format::Text => text(d.n(), &s),
        Format::Svg => svg(d.n(), &s),
    }
}

pub fn render_ramified(r: &Ramified, format: Format) -> String {
    let s = ramified_strokes(r);
    match format {
        Format::Text => text(r.n(), &s),
        Format::Svg => svg(r.n(), &s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, needle: &str) -> usize {
        s.matches(needle).count()
    }

    #[test]
    fn unity_is_straight_lines() {
        let d = Diagram::identity(4).unwrap();
        let strokes = diagram_strokes(&d);
        assert_eq!(strokes.len(), 4);
        assert!(strokes.iter().all(|s| matches!(s, Stroke::Line(a, b) if a.index() == b.index())));
        let t = render_diagram(&d, Format::Text);
        assert_eq!(count(&t, "line"), 4);
        let svg = render_diagram(&d, Format::Svg);
        assert_eq!(count(&svg, "class=\"line\""), 4);
        assert_eq!(count(&svg, "class=\"point\""), 8);
    }

    #[test]
    fn tangle_has_two_arcs() {
        let d = Diagram::h(4, 2).unwrap();
        let s = diagram_strokes(&d);
        assert!(s.contains(&Stroke::Arc(Point::Top(2), Point::Top(3))));
        assert!(s.contains(&Stroke::Arc(Point::Bottom(2), Point::Bottom(3))));
        assert_eq!(s.iter().filter(|x| matches!(x, Stroke::Line(..))).count(), 2);
        let svg = render_diagram(&d, Format::Svg);
        assert_eq!(count(&svg, "class=\"arc\""), 2);
        assert_eq!(svg, render_diagram(&d, Format::Svg));
    }

    #[test]
    fn multi_line_blocks_use_the_leftmost_line() {
        let d: Diagram = "1,2,1',2'|3,3'".parse().unwrap();
        let s = diagram_strokes(&d);
        assert!(s.contains(&Stroke::Line(Point::Top(1), Point::Bottom(1))));
        assert!(!s.contains(&Stroke::Line(Point::Top(2), Point::Bottom(2))));
    }

    #[test]
    fn extended_tie_is_dashed() {
        let r = Ramified::e_tilde(3, 1, 3).unwrap();
        let s = ramified_strokes(&r);
        assert_eq!(s.iter().filter(|x| matches!(x, Stroke::Tie(..))).count(), 1);
        assert!(s.contains(&Stroke::Tie(Point::Top(1), Point::Top(3))));
        let svg = render_ramified(&r, Format::Svg);
        assert_eq!(count(&svg, "stroke-dasharray"), 1);
        assert_eq!(count(&svg, "class=\"line\""), 3);
        assert!("png".parse::<Format>().is_err());
    }
}
