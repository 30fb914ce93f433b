//! Graph files: a line format (`vertex a`, `edge a b`, `c2 K`) and a JSON
//! form, told apart by the first non-space byte.

use std::fmt::Write as _;

use cdm_core::Graph;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A graph plus the number of extra `C₂` factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphFile {
    pub graph: Graph,
    pub c2: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub c2: usize,
}

fn is_zero(k: &usize) -> bool {
    *k == 0
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_lines(text)
        }
    }

    pub fn parse_lines(text: &str) -> Result<Self, CliError> {
        let mut out = GraphFile::default();
        let mut seen_c2 = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| CliError::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["vertex", v] => {
                    if out.graph.has_vertex(v) {
                        return Err(err(format!("duplicate vertex `{v}`")));
                    }
                    out.graph.add_vertex(v).map_err(|e| err(e.to_string()))?;
                }
                ["edge", a, b] => {
                    if a == b {
                        return Err(err(format!("self-loop at `{a}`")));
                    }
                    for v in [a, b] {
                        if !out.graph.has_vertex(v) {
                            return Err(err(format!("unknown endpoint `{v}`")));
                        }
                    }
                    if out.graph.has_edge(a, b) {
                        return Err(err(format!("duplicate edge `{a} {b}`")));
                    }
                    out.graph.add_edge(a, b).map_err(|e| err(e.to_string()))?;
                }
                ["c2", k] => {
                    if seen_c2 {
                        return Err(err("`c2` given twice".into()));
                    }
                    seen_c2 = true;
                    out.c2 = k.parse().map_err(|_| err(format!("bad count `{k}`")))?;
                }
                _ => return Err(err(format!("expected `vertex NAME`, `edge NAME NAME` or `c2 K`, found `{line}`"))),
            }
        }
        Ok(out)
    }

    pub fn parse_json(text: &str) -> Result<Self, CliError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        Self::from_json(raw)
    }

    pub fn from_json(raw: GraphJson) -> Result<Self, CliError> {
        let err = |msg: String| CliError::Parse { line: 1, msg };
        let mut out = GraphFile {
            graph: Graph::default(),
            c2: raw.c2,
        };
        for v in &raw.vertices {
            if out.graph.has_vertex(v) {
                return Err(err(format!("duplicate vertex `{v}`")));
            }
            out.graph.add_vertex(v).map_err(|e| err(e.to_string()))?;
        }
        for (a, b) in &raw.edges {
            if a == b {
                return Err(err(format!("self-loop at `{a}`")));
            }
            for v in [a, b] {
                if !out.graph.has_vertex(v) {
                    return Err(err(format!("unknown endpoint `{v}`")));
                }
            }
            if out.graph.has_edge(a, b) {
                return Err(err(format!("duplicate edge `{a} {b}`")));
            }
            out.graph.add_edge(a, b).map_err(|e| err(e.to_string()))?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.graph.vertices().to_vec(),
            edges: self.graph.edges().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            c2: self.c2,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.graph.vertices() {
            let _ = writeln!(s, "vertex {v}");
        }
        for (a, b) in self.graph.edges() {
            let _ = writeln!(s, "edge {a} {b}");
        }
        if self.c2 > 0 {
            let _ = writeln!(s, "c2 {}", self.c2);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let g = GraphFile::parse("vertex a\nvertex b\nedge a b\n").unwrap();
        assert_eq!(g.graph.vertices(), ["a", "b"]);
        assert!(g.graph.has_edge("a", "b"));
        assert_eq!(g.c2, 0);
        assert_eq!(GraphFile::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vertex a\nedge a a\n", 2),
            ("vertex a\n\nedge a b\n", 3),
            ("vertex a\nvertex b\nedge a b\nedge b a\n", 4),
            ("vertex a\nc2 x\n", 2),
            ("vertices a\n", 1),
        ];
        for (text, want) in cases {
            match GraphFile::parse(text) {
                Err(CliError::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn json_form_is_sniffed() {
        let g = GraphFile::parse(r#"  {"vertices":["a","b"],"edges":[["a","b"]],"c2":1}"#).unwrap();
        assert!(g.graph.has_edge("a", "b"));
        assert_eq!(g.c2, 1);
        let back = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(back, r#"{"vertices":["a","b"],"edges":[["a","b"]],"c2":1}"#);
        assert!(matches!(
            GraphFile::parse(r#"{"vertices":["a"],"edges":[["a","z"]]}"#),
            Err(CliError::Parse { .. })
        ));
    }
}
