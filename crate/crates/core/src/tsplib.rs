//! Readers and a writer for TSPLIB `NODE_COORD_SECTION` files and plain
//! coordinate lists.
//!
//! `EDGE_WEIGHT_TYPE` is recorded in the header but never selects the metric:
//! every parsed instance is Euclidean until the caller says otherwise via
//! [`Instance::with_metric`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{Instance, Metric, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsplibHeader {
    pub name: String,
    pub problem_type: Option<String>,
    pub comment: Option<String>,
    pub dimension: usize,
    pub edge_weight_type: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing DIMENSION header")]
    MissingDimension,

    #[error("line {line}: invalid DIMENSION `{value}`")]
    BadDimension { line: usize, value: String },

    #[error("line {line}: expected {expected} coordinate rows, found {found}")]
    RowCount {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: node index {index} appears twice")]
    DuplicateIndex { line: usize, index: usize },

    #[error("line {line}: node index {index} outside 1..={dimension}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        dimension: usize,
    },

    #[error("line {line}: cannot parse `{token}` as a number")]
    BadNumber { line: usize, token: String },

    #[error("line {line}: malformed row `{text}`")]
    BadRow { line: usize, text: String },

    #[error("need at least 2 locations, found {found}")]
    TooFewPoints { found: usize },
}

impl ParseError {
    /// 1-based line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match *self {
            ParseError::MissingDimension | ParseError::TooFewPoints { .. } => None,
            ParseError::BadDimension { line, .. }
            | ParseError::RowCount { line, .. }
            | ParseError::DuplicateIndex { line, .. }
            | ParseError::IndexOutOfRange { line, .. }
            | ParseError::BadNumber { line, .. }
            | ParseError::BadRow { line, .. } => Some(line),
        }
    }
}

fn parse_number<T: Scalar>(token: &str, line: usize) -> Result<T, ParseError> {
    T::from_str_radix(token, 10)
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ParseError::BadNumber {
            line,
            token: token.to_string(),
        })
}

fn split_header(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    Some((key.trim(), value.trim()))
}

/// Parses a TSPLIB document with a `NODE_COORD_SECTION`.
pub fn parse_tsplib<T: Scalar>(text: &str) -> Result<(TsplibHeader, Instance<T>), ParseError> {
    let mut header = TsplibHeader {
        name: String::from("unnamed"),
        problem_type: None,
        comment: None,
        dimension: 0,
        edge_weight_type: None,
    };
    let mut dimension: Option<usize> = None;
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let mut section_line = 0;
    let mut in_coords = false;

    for (line_no, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line == "NODE_COORD_SECTION" {
            section_line = line_no;
            in_coords = true;
            break;
        }
        if line == "EOF" {
            break;
        }
        match split_header(line) {
            Some(("NAME", v)) => header.name = v.to_string(),
            Some(("TYPE", v)) => header.problem_type = Some(v.to_string()),
            Some(("COMMENT", v)) => header.comment = Some(v.to_string()),
            Some(("EDGE_WEIGHT_TYPE", v)) => header.edge_weight_type = Some(v.to_string()),
            Some(("DIMENSION", v)) => {
                let d = v.parse::<usize>().map_err(|_| ParseError::BadDimension {
                    line: line_no,
                    value: v.to_string(),
                })?;
                dimension = Some(d);
            }
            Some(_) => {}
            None => {
                return Err(ParseError::BadRow {
                    line: line_no,
                    text: line.to_string(),
                })
            }
        }
    }

    let dimension = dimension.ok_or(ParseError::MissingDimension)?;
    header.dimension = dimension;

    let mut slots: Vec<Option<Point<T>>> = vec![None; dimension];
    let mut found = 0usize;
    let mut last_line = section_line;
    if in_coords {
        for (line_no, line) in lines {
            if line.is_empty() {
                continue;
            }
            if line == "EOF" || line.ends_with("_SECTION") {
                break;
            }
            last_line = line_no;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [index, x, y] = tokens.as_slice() else {
                return Err(ParseError::BadRow {
                    line: line_no,
                    text: line.to_string(),
                });
            };
            let index = index.parse::<usize>().map_err(|_| ParseError::BadRow {
                line: line_no,
                text: line.to_string(),
            })?;
            if index == 0 || index > dimension {
                return Err(ParseError::IndexOutOfRange {
                    line: line_no,
                    index,
                    dimension,
                });
            }
            let point = Point::new(parse_number(x, line_no)?, parse_number(y, line_no)?);
            if slots[index - 1].replace(point).is_some() {
                return Err(ParseError::DuplicateIndex {
                    line: line_no,
                    index,
                });
            }
            found += 1;
        }
    }
    if found != dimension {
        return Err(ParseError::RowCount {
            line: last_line,
            expected: dimension,
            found,
        });
    }
    if dimension < 2 {
        return Err(ParseError::TooFewPoints { found: dimension });
    }
    let points: Vec<Point<T>> = slots.into_iter().flatten().collect();
    let instance = Instance::new(header.name.clone(), points, Metric::Euclidean)
        .expect("finite points and default metric");
    Ok((header, instance))
}

/// Parses one `x y` or `x,y` pair per line; `#` starts a comment line.
pub fn parse_coord_list<T: Scalar>(text: &str, name: &str) -> Result<Instance<T>, ParseError> {
    let mut points = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let [x, y] = tokens.as_slice() else {
            return Err(ParseError::BadRow {
                line: line_no,
                text: line.to_string(),
            });
        };
        points.push(Point::new(
            parse_number(x, line_no)?,
            parse_number(y, line_no)?,
        ));
    }
    if points.len() < 2 {
        return Err(ParseError::TooFewPoints {
            found: points.len(),
        });
    }
    Ok(Instance::new(name, points, Metric::Euclidean).expect("finite points and default metric"))
}

/// True when the text looks like a TSPLIB document rather than a bare
/// coordinate list.
pub fn looks_like_tsplib(text: &str) -> bool {
    text.lines().map(str::trim).any(|line| {
        line == "NODE_COORD_SECTION"
            || split_header(line).is_some_and(|(key, _)| {
                matches!(key, "NAME" | "TYPE" | "DIMENSION" | "EDGE_WEIGHT_TYPE")
            })
    })
}

/// Auto-detects the format. `fallback_name` names coordinate lists.
pub fn parse_instance<T: Scalar>(
    text: &str,
    fallback_name: &str,
) -> Result<Instance<T>, ParseError> {
    if looks_like_tsplib(text) {
        parse_tsplib(text).map(|(_, instance)| instance)
    } else {
        parse_coord_list(text, fallback_name)
    }
}

/// Serialises an instance as a TSPLIB `EUC_2D` document.
pub fn write_tsplib<T: Scalar>(instance: &Instance<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME : {}", instance.name());
    let _ = writeln!(out, "TYPE : TSP");
    let _ = writeln!(out, "DIMENSION : {}", instance.len());
    let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
    let _ = writeln!(out, "NODE_COORD_SECTION");
    for (k, p) in instance.points().iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", k + 1, p.x, p.y);
    }
    out.push_str("EOF\n");
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::tour::Tour;

    const TRIANGLE: &str = "NAME: tri\nTYPE : TSP\nDIMENSION:3\nEDGE_WEIGHT_TYPE : EUC_2D\n\
                            NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";

    #[test]
    fn minimal_document() {
        let (header, inst) = parse_tsplib::<f64>(TRIANGLE).unwrap();
        assert_eq!(header.name, "tri");
        assert_eq!(header.dimension, 3);
        assert_eq!(header.edge_weight_type.as_deref(), Some("EUC_2D"));
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.metric(), Metric::Euclidean);
        assert_eq!(inst.tour_length(&Tour::identity(3)).unwrap(), 12.0);
    }

    #[test]
    fn rows_may_arrive_out_of_order_and_without_eof() {
        let doc = "DIMENSION : 3\nNODE_COORD_SECTION\n3 0 4\n1 0.5 0\n2 3e0 0\n";
        let (_, inst) = parse_tsplib::<f32>(doc).unwrap();
        assert_eq!(inst.points()[0], Point::new(0.5, 0.0));
        assert_eq!(inst.points()[2], Point::new(0.0, 4.0));
    }

    #[test]
    fn unknown_keys_and_trailing_sections_are_ignored() {
        let doc = "NAME : x\nFOO : bar\nDIMENSION : 2\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n\
                   DISPLAY_DATA_SECTION\n1 5 5\n";
        assert_eq!(parse_tsplib::<f64>(doc).unwrap().1.len(), 2);
    }

    #[test]
    fn error_cases_name_their_line() {
        let missing = "NAME : x\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n";
        assert_eq!(
            parse_tsplib::<f64>(missing).unwrap_err(),
            ParseError::MissingDimension
        );

        let dup = "DIMENSION : 2\nNODE_COORD_SECTION\n1 0 0\n1 1 1\n";
        assert_eq!(
            parse_tsplib::<f64>(dup).unwrap_err(),
            ParseError::DuplicateIndex { line: 4, index: 1 }
        );

        let range = "DIMENSION : 2\nNODE_COORD_SECTION\n1 0 0\n3 1 1\n";
        assert_eq!(
            parse_tsplib::<f64>(range).unwrap_err(),
            ParseError::IndexOutOfRange {
                line: 4,
                index: 3,
                dimension: 2
            }
        );

        let short = "DIMENSION : 3\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
        assert_eq!(
            parse_tsplib::<f64>(short).unwrap_err(),
            ParseError::RowCount {
                line: 4,
                expected: 3,
                found: 2
            }
        );

        let bad = "DIMENSION : 2\nNODE_COORD_SECTION\n1 0 0\n2 1 zz\n";
        let err = parse_tsplib::<f64>(bad).unwrap_err();
        assert_eq!(
            err,
            ParseError::BadNumber {
                line: 4,
                token: "zz".into()
            }
        );
        assert_eq!(err.line(), Some(4));

        let three_d = "DIMENSION : 2\nNODE_COORD_SECTION\n1 0 0 0\n2 1 1 1\n";
        assert!(matches!(
            parse_tsplib::<f64>(three_d).unwrap_err(),
            ParseError::BadRow { line: 3, .. }
        ));

        let bad_dim = "DIMENSION : many\n";
        assert!(matches!(
            parse_tsplib::<f64>(bad_dim).unwrap_err(),
            ParseError::BadDimension { line: 1, .. }
        ));
    }

    #[test]
    fn section_keyword_is_case_sensitive() {
        let doc = "DIMENSION : 2\nnode_coord_section\n1 0 0\n2 1 1\n";
        assert!(parse_tsplib::<f64>(doc).is_err());
    }

    #[test]
    fn coordinate_lists() {
        let square = parse_coord_list::<f64>("0 0\n1 0\n1 1\n0 1", "sq").unwrap();
        assert_eq!(square.len(), 4);
        assert_eq!(square.name(), "sq");
        assert_eq!(square.tour_length(&Tour::identity(4)).unwrap(), 4.0);

        let commented = parse_coord_list::<f64>("0 0\n# c\n3 4", "c").unwrap();
        assert_eq!(commented.len(), 2);

        let csv = parse_coord_list::<f64>("0,0\n3, 4\n", "c").unwrap();
        assert_eq!(csv.points()[1], Point::new(3.0, 4.0));

        assert_eq!(
            parse_coord_list::<f64>("", "e").unwrap_err(),
            ParseError::TooFewPoints { found: 0 }
        );
        assert_eq!(
            parse_coord_list::<f64>("0 0\n1 x\n", "e").unwrap_err(),
            ParseError::BadNumber {
                line: 2,
                token: "x".into()
            }
        );
    }

    #[test]
    fn format_detection() {
        assert!(looks_like_tsplib(TRIANGLE));
        assert!(!looks_like_tsplib("0 0\n1 1\n"));
        assert_eq!(
            parse_instance::<f64>(TRIANGLE, "ignored").unwrap().name(),
            "tri"
        );
        assert_eq!(
            parse_instance::<f64>("0 0\n1 1\n", "list").unwrap().name(),
            "list"
        );
    }

    #[test]
    fn integer_coordinates_keep_their_text() {
        let (_, inst) = parse_tsplib::<f64>(TRIANGLE).unwrap();
        let text = write_tsplib(&inst);
        assert!(text.contains("\n2 3 0\n"), "{text}");
    }

    proptest! {
        #[test]
        fn write_then_parse_round_trips(
            coords in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 2..40),
            integral in any::<bool>(),
        ) {
            let points: Vec<Point<f64>> = coords
                .into_iter()
                .map(|(x, y)| if integral { Point::new(x.round(), y.round()) } else { Point::new(x, y) })
                .collect();
            let inst = Instance::euclidean("rt", points).unwrap();
            let (header, back) = parse_tsplib::<f64>(&write_tsplib(&inst)).unwrap();
            prop_assert_eq!(header.dimension, inst.len());
            prop_assert_eq!(back.points(), inst.points());
        }
    }
}
