//! Plain-text formats. Everything after `#` on a line is a comment; blank
//! lines are ignored; numbers are exact integers or `p/q` rationals.
//!
//! | file      | record                                   |
//! |-----------|------------------------------------------|
//! | points    | `x y z`                                  |
//! | octants   | `x y z`, any coordinate may be `inf`     |
//! | coloring  | header `k=<k> guaranteed=<g> verified=<v|unverified>`, then `index color` with colors from 1 |
//! | triangles | `a b c`                                  |
//! | rects     | `left right top`                         |
//! | intervals | `left right time`                        |

use std::fmt::Write as _;
use std::str::FromStr;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::geometry::{Coord, ExtCoord, Octant, Point3, PointSet};
use crate::reductions::{BottomlessRect, NormalizedTriangle, TimedInterval};

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_tok<T: FromStr<Err = String>>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|message| Error::Parse { line, message })
}

fn triples<T: FromStr<Err = String>>(text: &str) -> Result<Vec<(usize, [T; 3])>> {
    records(text)
        .map(|(line, toks)| {
            if toks.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 3 numbers, found {}", toks.len()),
                });
            }
            Ok((
                line,
                [
                    parse_tok(line, toks[0])?,
                    parse_tok(line, toks[1])?,
                    parse_tok(line, toks[2])?,
                ],
            ))
        })
        .collect()
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let points = triples::<Coord>(text)?
        .into_iter()
        .map(|(_, [x, y, z])| Point3 { x, y, z })
        .collect();
    PointSet::new(points)
}

pub fn write_points(set: &PointSet) -> String {
    let mut out = String::new();
    for p in set {
        writeln!(out, "{p}").unwrap();
    }
    out
}

/// Negative octants, one apex per line.
pub fn parse_octants(text: &str) -> Result<Vec<Octant>> {
    Ok(triples::<ExtCoord>(text)?
        .into_iter()
        .map(|(_, [x, y, z])| Octant::negative(x, y, z))
        .collect())
}

pub fn write_octants(octants: &[Octant]) -> String {
    let mut out = String::new();
    for o in octants {
        writeln!(out, "{o}").unwrap();
    }
    out
}

pub fn parse_triangles(text: &str) -> Result<Vec<NormalizedTriangle>> {
    triples::<Coord>(text)?
        .into_iter()
        .map(|(_, [a, b, c])| NormalizedTriangle::new(a, b, c))
        .collect()
}

pub fn parse_rects(text: &str) -> Result<Vec<BottomlessRect>> {
    triples::<Coord>(text)?
        .into_iter()
        .map(|(_, [l, r, t])| BottomlessRect::new(l, r, t))
        .collect()
}

pub fn parse_intervals(text: &str) -> Result<Vec<TimedInterval>> {
    triples::<Coord>(text)?
        .into_iter()
        .map(|(_, [l, r, t])| TimedInterval::new(l, r, t))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFile {
    pub k: usize,
    pub guaranteed: u64,
    /// `None` when written without running the verifier.
    pub verified: Option<usize>,
    pub colors: Vec<Color>,
}

impl ColoringFile {
    pub fn coloring(&self) -> Result<Coloring> {
        Coloring::new(self.k, self.colors.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verified = self
            .verified
            .map_or_else(|| "unverified".to_string(), |v| v.to_string());
        writeln!(
            out,
            "k={} guaranteed={} verified={verified}",
            self.k, self.guaranteed
        )
        .unwrap();
        for (i, c) in self.colors.iter().enumerate() {
            writeln!(out, "{i} {}", c.label()).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<ColoringFile> {
        let mut recs = records(text);
        let (hline, header) = recs.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        let bad = |line: usize, message: String| Error::Parse { line, message };
        let (mut k, mut guaranteed, mut verified) = (None, None, None);
        for tok in header {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| bad(hline, format!("expected key=value, found '{tok}'")))?;
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| bad(hline, format!("bad value for {key}: '{v}'")))
            };
            match key {
                "k" => k = Some(num(value)? as usize),
                "guaranteed" => guaranteed = Some(num(value)?),
                "verified" => {
                    verified = Some(if value == "unverified" {
                        None
                    } else {
                        Some(num(value)? as usize)
                    })
                }
                _ => return Err(bad(hline, format!("unknown header key '{key}'"))),
            }
        }
        let k = k.ok_or_else(|| bad(hline, "header lacks k".into()))?;
        let mut colors = Vec::new();
        for (line, toks) in recs {
            if toks.len() != 2 {
                return Err(bad(line, "expected 'index color'".into()));
            }
            let index: usize = toks[0].parse().map_err(|_| bad(line, "bad index".into()))?;
            if index != colors.len() {
                return Err(bad(
                    line,
                    format!("expected index {}, found {index}", colors.len()),
                ));
            }
            let label: u32 = toks[1].parse().map_err(|_| bad(line, "bad color".into()))?;
            let color = Color::from_label(label)
                .filter(|c| (c.0 as usize) < k)
                .ok_or_else(|| bad(line, format!("color {label} outside 1..={k}")))?;
            colors.push(color);
        }
        Ok(ColoringFile {
            k,
            guaranteed: guaranteed.unwrap_or(0),
            verified: verified.flatten(),
            colors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_with_comments_and_rationals() {
        let set = parse_points("# header\n1 2 3\n\n  -1/2 4/6 0 # trailing\n").unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.get(1).y, Coord::new(2, 3));
        assert_eq!(write_points(&set), "1 2 3\n-1/2 2/3 0\n");
        assert_eq!(parse_points(&write_points(&set)).unwrap(), set);
    }

    #[test]
    fn point_errors_carry_line_numbers() {
        match parse_points("1 2 3\n1 2\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_points("1 2 3\n1 2 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_points("1 2 3\n1 2 3"),
            Err(Error::DuplicatePoint { .. })
        ));
    }

    #[test]
    fn octant_lines() {
        let text = "2 inf -1\ninf -2 inf\n";
        let octs = parse_octants(text).unwrap();
        assert_eq!(octs[0].apex()[1], ExtCoord::PlusInfinity);
        assert_eq!(write_octants(&octs), text);
    }

    #[test]
    fn coloring_round_trip() {
        let f = ColoringFile {
            k: 3,
            guaranteed: 276,
            verified: Some(4),
            colors: vec![Color(0), Color(2), Color(1)],
        };
        let text = f.to_text();
        assert_eq!(text, "k=3 guaranteed=276 verified=4\n0 1\n1 3\n2 2\n");
        assert_eq!(ColoringFile::parse(&text).unwrap(), f);
        let u = ColoringFile {
            verified: None,
            ..f
        };
        assert!(u
            .to_text()
            .starts_with("k=3 guaranteed=276 verified=unverified\n"));
        assert_eq!(ColoringFile::parse(&u.to_text()).unwrap(), u);
        assert!(ColoringFile::parse("k=2 guaranteed=2 verified=1\n0 3\n").is_err());
        assert!(ColoringFile::parse("k=2\n1 1\n").is_err());
    }

    #[test]
    fn family_files() {
        assert_eq!(parse_triangles("0 0 1\n1/2 0 0\n").unwrap().len(), 2);
        assert!(matches!(
            parse_triangles("0 0 -1\n"),
            Err(Error::EmptyHomothet { .. })
        ));
        assert_eq!(parse_rects("0 1 5\n").unwrap()[0].top(), &Coord::from(5));
        assert_eq!(
            parse_intervals("0 2 3\n").unwrap()[0].insert_time,
            Coord::from(3)
        );
    }
}
