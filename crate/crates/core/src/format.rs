//! Text formats: the `quandle-v1` table format, DOT export of skew graphs,
//! and the JSON report shapes printed by the command-line tool.
//!
//! A `quandle-v1` document is line oriented. `#` starts a comment that runs
//! to the end of the line, blank lines are ignored, and tokens are separated
//! by whitespace:
//!
//! ```text
//! quandle-v1
//! n 3
//! names a b c        # optional
//! inv 0 1 2
//! op 0 2 1
//! op 2 1 0
//! op 1 0 2
//! ```
//!
//! Row `a` of `op` lists ᵃ0 … ᵃ(m−1), all indices 0-based.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::derham::H1Dims;
use crate::presentation::{
    covering_analysis, enumerate_gc, AbelianInvariants, CoverError, Presentation,
};
use crate::quandle::{AxiomReport, IPQuandle, SkewAnalysis};

/// Largest element count accepted by the parser.
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> FormatError {
        FormatError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn keyword(&self) -> &str {
        self.tokens[0].text
    }

    fn args(&self) -> &[Token<'_>] {
        &self.tokens[1..]
    }

    /// The arguments as exactly `m` indices below `m`.
    fn indices(&self, m: usize) -> Result<Vec<usize>, FormatError> {
        let args = self.args();
        if args.len() != m {
            let column = args.get(m).map_or(self.end_column(), |t| t.column);
            return Err(self.err(
                column,
                format!(
                    "`{}` needs {m} entries, found {}",
                    self.keyword(),
                    args.len()
                ),
            ));
        }
        args.iter()
            .map(|t| match t.text.parse::<usize>() {
                Ok(v) if v < m && t.text.bytes().all(|b| b.is_ascii_digit()) => Ok(v),
                Ok(v) => Err(self.err(t.column, format!("index {v} is out of range 0..{m}"))),
                Err(_) => Err(self.err(t.column, format!("`{}` is not an index", t.text))),
            })
            .collect()
    }

    fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map_or(1, |t| t.column + t.text.chars().count())
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((b, c)) = start.take() {
                    tokens.push(Token {
                        text: &content[b..byte],
                        column: c + 1,
                    });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token {
                text: &content[b..],
                column: c + 1,
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

/// Parses a `quandle-v1` document. Only the shape is checked; axioms are
/// left to [`IPQuandle::verify_ip`].
pub fn parse_quandle_v1(text: &str) -> Result<IPQuandle, FormatError> {
    let all = lines(text);
    let last_line = text.split('\n').count();
    let mut it = all.iter().peekable();
    let eof = |what: &str| FormatError {
        line: last_line,
        column: 1,
        message: format!("unexpected end of input, expected {what}"),
    };
    let expect = |line: &Line, kw: &str| {
        if line.keyword() == kw {
            Ok(())
        } else {
            Err(line.err(1, format!("expected `{kw}`, found `{}`", line.keyword())))
        }
    };

    let header = it.next().ok_or_else(|| eof("`quandle-v1`"))?;
    if header.keyword() != "quandle-v1" || header.tokens.len() != 1 {
        return Err(header.err(1, "the first line must be `quandle-v1`"));
    }

    let count = it.next().ok_or_else(|| eof("`n <m>`"))?;
    expect(count, "n")?;
    let m = match count.args() {
        [t] => match t.text.parse::<usize>() {
            Ok(0) => return Err(count.err(t.column, "the element count must be positive")),
            Ok(v) if v <= MAX_ELEMENTS && t.text.bytes().all(|b| b.is_ascii_digit()) => v,
            Ok(_) => {
                return Err(count.err(
                    t.column,
                    format!("at most {MAX_ELEMENTS} elements are supported"),
                ))
            }
            Err(_) => return Err(count.err(t.column, format!("`{}` is not a count", t.text))),
        },
        _ => return Err(count.err(1, "`n` takes exactly one argument")),
    };

    let mut names = None;
    if let Some(line) = it.peek().filter(|l| l.keyword() == "names") {
        let args = line.args();
        if args.len() != m {
            return Err(line.err(
                1,
                format!("`names` needs {m} entries, found {}", args.len()),
            ));
        }
        let mut seen = HashSet::new();
        for t in args {
            if !seen.insert(t.text) {
                return Err(line.err(t.column, format!("name `{}` is repeated", t.text)));
            }
        }
        names = Some(args.iter().map(|t| t.text.to_string()).collect());
        it.next();
    }

    let inv_line = it.next().ok_or_else(|| eof("`inv`"))?;
    expect(inv_line, "inv")?;
    let inv = inv_line.indices(m)?;

    let mut op = Vec::with_capacity(m);
    for a in 0..m {
        let row = it.next().ok_or_else(|| eof(&format!("`op` row {a}")))?;
        expect(row, "op")?;
        op.push(row.indices(m)?);
    }
    if let Some(extra) = it.next() {
        return Err(extra.err(
            1,
            format!("unexpected `{}` after the last `op` row", extra.keyword()),
        ));
    }
    IPQuandle::new(op, inv, names).map_err(|e| FormatError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

fn is_name_token(s: &str) -> bool {
    !s.is_empty() && !s.contains('#') && !s.chars().any(char::is_whitespace)
}

/// Serializes a quandle. Names are written only when every name is a
/// single token.
pub fn write_quandle_v1(q: &IPQuandle) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::from("quandle-v1\n");
    let _ = writeln!(s, "n {}", q.len());
    if let Some(names) = q.names().filter(|n| n.iter().all(|x| is_name_token(x))) {
        let _ = writeln!(s, "names {}", names.join(" "));
    }
    let _ = writeln!(s, "inv {}", join(q.inverses()));
    for row in q.table() {
        let _ = writeln!(s, "op {}", join(row));
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// An undirected DOT graph with one vertex per label, in index order, and
/// edges in the given order.
pub fn skew_dot(labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut s = String::from("graph skew {\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(s, "  {i} [label=\"{}\"];", dot_escape(l));
    }
    for (a, b) in edges {
        let _ = writeln!(s, "  {a} -- {b};");
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomsJson {
    pub rack: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rack_counterexample: Option<Vec<usize>>,
    pub quandle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quandle_counterexample: Option<Vec<usize>>,
    pub ip: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ip_counterexample: Option<Vec<usize>>,
    pub derived_fixed_point: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_fixed_point_counterexample: Option<Vec<usize>>,
}

impl From<&AxiomReport> for AxiomsJson {
    fn from(r: &AxiomReport) -> Self {
        let (rack, quandle, ip) = (r.rack(), r.quandle(), r.ip());
        AxiomsJson {
            rack: rack.holds,
            rack_counterexample: rack.counterexample,
            quandle: quandle.holds,
            quandle_counterexample: quandle.counterexample,
            ip: ip.holds,
            ip_counterexample: ip.counterexample,
            derived_fixed_point: r.derived_fixed_point.holds,
            derived_fixed_point_counterexample: r.derived_fixed_point.counterexample.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewJson {
    pub is_skew: bool,
    pub is_locally_skew: bool,
    pub components: usize,
    pub edges: usize,
}

impl From<&SkewAnalysis> for SkewJson {
    fn from(s: &SkewAnalysis) -> Self {
        SkewJson {
            is_skew: s.is_skew,
            is_locally_skew: s.is_locally_skew,
            components: s.graph.components,
            edges: s.graph.edges.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverStatus {
    Complete,
    Exceeded,
}

/// Covering data. Fields that need the enumeration or the target group are
/// `null` when unavailable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverJson {
    pub order_gc: Option<usize>,
    pub order_g: Option<usize>,
    pub kernel_order: Option<usize>,
    pub kernel_central: Option<bool>,
    pub embeddable: Option<bool>,
    pub is_covering: Option<bool>,
    pub status: CoverStatus,
}

/// The cover section and the abelianization of G_C for any IP quandle.
pub fn cover_summary(q: &IPQuandle, max_cosets: usize) -> (CoverJson, AbelianInvariants) {
    let abelian = Presentation::from_quandle(q).abelianization();
    let exceeded = CoverJson {
        order_gc: None,
        order_g: None,
        kernel_order: None,
        kernel_central: None,
        embeddable: None,
        is_covering: None,
        status: CoverStatus::Exceeded,
    };
    let cover = if q.embedding().is_some() {
        match covering_analysis(q, max_cosets) {
            Ok(r) => CoverJson {
                order_gc: Some(r.order_gc),
                order_g: Some(r.order_g),
                kernel_order: Some(r.kernel_order),
                kernel_central: Some(r.kernel_central),
                embeddable: Some(r.embeddable),
                is_covering: Some(r.is_covering),
                status: CoverStatus::Complete,
            },
            Err(CoverError::EnumerationIncomplete(_)) => exceeded,
            Err(e) => unreachable!("covering analysis of an embedded quandle: {e}"),
        }
    } else {
        match enumerate_gc(q, max_cosets) {
            Ok(real) => CoverJson {
                order_gc: Some(real.order()),
                embeddable: Some(real.embeddable()),
                status: CoverStatus::Complete,
                ..exceeded
            },
            Err(_) => exceeded,
        }
    };
    (cover, abelian)
}

/// One report object; only the sections a command computes are present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skew: Option<SkewJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelianization: Option<AbelianInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1Dims>,
}

impl Report {
    pub fn new(input: impl Into<String>) -> Self {
        Report {
            input: input.into(),
            axioms: None,
            skew: None,
            cover: None,
            abelianization: None,
            h1: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "quandle-v1\nn 3\nnames a b c\ninv 0 1 2\nop 0 2 1\nop 2 1 0\nop 1 0 2\n";

    #[test]
    fn parses_and_writes_back() {
        let q = parse_quandle_v1(S3).unwrap();
        assert_eq!(q.len(), 3);
        assert_eq!(q.op(0, 1), 2);
        assert_eq!(q.name(2), "c");
        assert!(q.verify_ip().all_pass());
        assert_eq!(write_quandle_v1(&q), S3);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header comment\n\nquandle-v1   # v1\nn 1\ninv 0\n\nop 0 # row 0\n";
        assert_eq!(parse_quandle_v1(text).unwrap().len(), 1);
    }

    #[test]
    fn error_positions() {
        let e = parse_quandle_v1("quandle-v1\nn 2\ninv 0 1\nop 0 1\nop 1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 6));
        let e = parse_quandle_v1("quandle-v1\nn 2\ninv 0 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));
        let e = parse_quandle_v1("quandle-v1\nn 2\nnames a a\ninv 0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
        let e = parse_quandle_v1("quandle-v2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_quandle_v1("quandle-v1\nn 1\ninv 0\n").unwrap_err();
        assert!(e.message.contains("end of input"));
        let e = parse_quandle_v1("quandle-v1\nn 1\ninv 0\nop 0\nop 0\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(parse_quandle_v1("quandle-v1\nn 0\ninv\n").is_err());
        assert!(parse_quandle_v1("quandle-v1\nn +1\ninv 0\nop 0\n").is_err());
    }

    #[test]
    fn dot_output() {
        let dot = skew_dot(&["a\"".into(), "b".into()], &[(0, 1)]);
        assert_eq!(
            dot,
            "graph skew {\n  0 [label=\"a\\\"\"];\n  1 [label=\"b\"];\n  0 -- 1;\n}\n"
        );
    }

    #[test]
    fn report_keys() {
        let q = parse_quandle_v1(S3).unwrap();
        let mut r = Report::new("s3.q");
        r.axioms = Some((&q.verify_ip()).into());
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["axioms", "input"]);
        assert_eq!(v["axioms"]["rack"], true);
        assert!(v["axioms"].get("rack_counterexample").is_none());
    }

    #[test]
    fn cover_of_unembedded_table() {
        let q = parse_quandle_v1(S3).unwrap();
        let (c, ab) = cover_summary(&q, 1000);
        assert_eq!(c.order_gc, Some(6));
        assert_eq!(c.order_g, None);
        assert_eq!(c.status, CoverStatus::Complete);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion_u64(), vec![2]);
    }

    proptest::proptest! {
        #[test]
        fn random_tables_round_trip(
            m in 1usize..6,
            seed in proptest::collection::vec(0usize..1000, 42),
        ) {
            let inv: Vec<usize> = (0..m).map(|i| seed[i] % m).collect();
            let op: Vec<Vec<usize>> = (0..m)
                .map(|a| (0..m).map(|b| seed[6 + a * m + b] % m).collect())
                .collect();
            let q = IPQuandle::new(op, inv, None).unwrap();
            let again = parse_quandle_v1(&write_quandle_v1(&q)).unwrap();
            proptest::prop_assert_eq!(again.table(), q.table());
            proptest::prop_assert_eq!(again.inverses(), q.inverses());
        }

        #[test]
        fn arbitrary_text_never_panics(text in "(quandle-v1|n|inv|op|names|[0-9]{1,3}|#|[ \t\n]|\\PC){0,40}") {
            let _ = parse_quandle_v1(&text);
        }
    }
}
