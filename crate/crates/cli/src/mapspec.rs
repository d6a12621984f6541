//! Text format for a linear map between two subspaces of `S_side`.
//!
//! ```text
//! # comments run to the end of the line
//! ambient 2
//! basis domain 2
//! 1 0
//! 0 0
//! 0 1
//! 0 0
//! basis codomain 1      (optional; defaults to the domain basis)
//! 1 0
//! 0 1
//! coeffs
//! 1 1
//! ```
//!
//! Each basis element is `side × side` complex literals read row by row.
//! The coefficient matrix has one row per codomain element and one column
//! per domain element: column `m` holds the image of domain element `m`.
//! Literals look like `1`, `-0.5`, `2i`, `-i`, `1.5-2e-3i`.

use std::fmt;
use std::fmt::Write as _;

use spinorlab::{Ambient, ComplexMatrix, SubspaceBasis, SubspaceMap, C64};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn tokenize(src: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            out.push(Token {
                text: &tail[..len],
                line: i + 1,
                column: line[..offset + start].chars().count() + 1,
            });
            offset += start + len;
            rest = &tail[len..];
        }
    }
    out
}

/// Parses a complex literal `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let finite = |x: f64| x.is_finite().then_some(x);
    let real = |t: &str| -> Option<f64> {
        if t.bytes().any(|b| b.is_ascii_alphabetic() && b != b'e' && b != b'E') {
            return None;
        }
        t.parse::<f64>().ok().and_then(finite)
    };
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => real(t),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Some(C64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Some(C64::new(0.0, imag(body)?)),
    }
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| ParseError {
            line: self.end.0,
            column: self.end.1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn keyword(&mut self, kw: &str) -> Result<Token<'a>, ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text != kw {
            return Err(t.error(format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(t)
    }

    fn count(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.next(what)?;
        match t.text.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(t.error(format!("expected a positive integer {what}, found `{}`", t.text))),
        }
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Result<ComplexMatrix, ParseError> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let t = self.next("a complex literal")?;
            data.push(parse_complex(t.text).ok_or_else(|| t.error(format!("invalid complex literal `{}`", t.text)))?);
        }
        Ok(ComplexMatrix::from_vec(rows, cols, data).expect("length checked"))
    }

    fn basis(&mut self, side: usize) -> Result<SubspaceBasis, ParseError> {
        let kw = self.keyword("basis")?;
        let name = self.next("a basis name")?;
        let count = self.count("element count")?;
        let elements = (0..count).map(|_| self.matrix(side, side)).collect::<Result<Vec<_>, _>>()?;
        SubspaceBasis::new(name.text, Ambient::matrices(side, side), elements).map_err(|e| kw.error(e.to_string()))
    }
}

/// Parses a map spec into a [`SubspaceMap`].
pub fn parse_map_spec(src: &str) -> Result<SubspaceMap, ParseError> {
    let tokens = tokenize(src);
    let end = tokens
        .last()
        .map(|t| (t.line, t.column + t.text.chars().count()))
        .unwrap_or((1, 1));
    let mut p = Parser { tokens, pos: 0, end };
    p.keyword("ambient")?;
    let side = p.count("ambient side")?;
    if side > spinorlab::linalg::DEFAULT_DIMENSION_CAP {
        let t = &p.tokens[p.pos - 1];
        return Err(t.error(format!("ambient side {side} exceeds the dimension cap")));
    }
    let domain = p.basis(side)?;
    let codomain = match p.peek() {
        Some(t) if t.text == "basis" => p.basis(side)?,
        _ => domain.clone(),
    };
    let kw = p.keyword("coeffs")?;
    let coeffs = p.matrix(codomain.dim(), domain.dim())?;
    if let Some(t) = p.peek() {
        return Err(t.error(format!("unexpected trailing token `{}`", t.text)));
    }
    SubspaceMap::new(domain, codomain, coeffs).map_err(|e| kw.error(e.to_string()))
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.re == 0.0 {
        format!("{:?}i", z.im)
    } else {
        format!("{:?}{}{:?}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

fn write_matrix(out: &mut String, m: &ComplexMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&z| fmt_complex(z)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Serializes a map whose bases live in a single square block. The trace
/// normalizer is dropped; it does not affect norm ratios.
pub fn format_map_spec(map: &SubspaceMap) -> Result<String, String> {
    let amb = map.domain().ambient();
    if amb.blocks().len() != 1 || amb.rows() != amb.cols() || map.codomain().ambient().shape() != amb.shape() {
        return Err("map spec files describe maps on a single square matrix space".into());
    }
    let mut out = String::new();
    let _ = writeln!(out, "ambient {}", amb.rows());
    let mut bases = vec![map.domain()];
    if map.codomain().elements() != map.domain().elements() {
        bases.push(map.codomain());
    }
    for b in bases {
        let name: String = b.name().chars().filter(|c| !c.is_whitespace() && *c != '#').collect();
        let _ = writeln!(out, "basis {} {}", if name.is_empty() { "basis" } else { &name }, b.dim());
        for e in b.elements() {
            write_matrix(&mut out, e);
        }
    }
    out.push_str("coeffs\n");
    write_matrix(&mut out, map.coeffs());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Some(C64::new(re, im));
        assert_eq!(parse_complex("1"), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5"), c(-2.5, 0.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("+3i"), c(0.0, 3.0));
        assert_eq!(parse_complex("1+2i"), c(1.0, 2.0));
        assert_eq!(parse_complex("1-i"), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3-2E+1i"), c(1e-3, -20.0));
        assert_eq!(parse_complex("-1e2i"), c(0.0, -100.0));
        for bad in ["", "x", "1+", "1+2j", "inf", "nan", "1..2", "2ii", "e5"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }

    #[test]
    fn literal_round_trip() {
        for z in [C64::new(0.1, -0.2), C64::new(-3.0, 0.0), C64::new(0.0, 1e-300), C64::new(5e20, 7.0)] {
            assert_eq!(parse_complex(&fmt_complex(z)), Some(z));
        }
    }

    #[test]
    fn error_positions() {
        let err = parse_map_spec("ambient 2\nbasis d 1\n1 0\n0 zz\ncoeffs\n1\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 3));
        let err = parse_map_spec("ambient 2\n  basis d 1\n1 0 0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("end of input"));
        let err = parse_map_spec("side 2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse_map_spec("ambient 2\nbasis d 2\n1 0 0 1\n2 0 0 2\ncoeffs 1 0 0 1").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        assert!(err.message.contains("dependent"));
        let err = parse_map_spec("ambient 1\nbasis d 1\n1\ncoeffs\n1 extra").unwrap_err();
        assert_eq!((err.line, err.column), (5, 3));
    }

    #[test]
    fn separate_codomain() {
        let src = "ambient 2\nbasis d 2\n1 0 0 0\n0 0 0 1\nbasis c 1\n1 0 0 1\ncoeffs\n1 1\n";
        let m = parse_map_spec(src).unwrap();
        assert_eq!((m.domain().dim(), m.codomain().dim()), (2, 1));
        let back = parse_map_spec(&format_map_spec(&m).unwrap()).unwrap();
        assert_eq!(back.coeff_distance(&m), 0.0);
        assert_eq!(back.codomain().elements(), m.codomain().elements());
    }
}
