//! JSON and DOT ingestion for labeled graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GraphError, Labels, SimpleGraph};

/// Wire format: `{"vertices":[...],"edges":[["a","b"],...],"labels":{...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Labels::is_empty")]
    pub labels: Labels,
}

impl GraphDocument {
    pub fn from_graph(g: &SimpleGraph, labels: Option<&Labels>) -> Self {
        GraphDocument {
            vertices: g.vertices().to_vec(),
            edges: g.edges().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            labels: labels.cloned().unwrap_or_default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph document serializes")
    }

    /// Validates the document and returns the graph with its labels.
    pub fn into_graph(self) -> Result<(SimpleGraph, Labels), GraphError> {
        let g = SimpleGraph::new(
            self.vertices,
            self.edges.into_iter().map(|[a, b]| (a, b)),
        )?;
        for v in self.labels.keys() {
            g.index_of(v)?;
        }
        Ok((g, self.labels))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    Edge,
    Arrow,
}

fn tokenize(src: &str) -> Result<Vec<Token>, GraphError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '#' if out.is_empty() || chars[..i].iter().rev().take_while(|&&x| x != '\n').all(|x| x.is_whitespace()) => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err(GraphError::Parse("unterminated comment".into()));
                }
                i += 2;
            }
            '{' => {
                out.push(Token::LBrace);
                i += 1;
            }
            '}' => {
                out.push(Token::RBrace);
                i += 1;
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            ';' => {
                out.push(Token::Semi);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            '=' => {
                out.push(Token::Eq);
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push(Token::Edge);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token::Arrow);
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(GraphError::Parse("unterminated string".into())),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Token::Id(s));
            }
            _ if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                if i == start {
                    // lone '-' not followed by '-' or '>'
                    return Err(GraphError::Parse(format!("unexpected character {c:?}")));
                }
                out.push(Token::Id(chars[start..i].iter().collect()));
            }
            _ => return Err(GraphError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// Parses an undirected DOT graph. Node `label` attributes become vertex
/// labels; other attributes are ignored. Directed graphs, subgraphs,
/// self-loops and repeated edges are rejected.
pub fn parse_dot(src: &str) -> Result<(SimpleGraph, Labels), GraphError> {
    let toks = tokenize(src)?;
    let mut p = 0;
    let kw = |t: &Token, word: &str| matches!(t, Token::Id(s) if s.eq_ignore_ascii_case(word));

    if toks.get(p).is_some_and(|t| kw(t, "strict")) {
        p += 1;
    }
    match toks.get(p) {
        Some(t) if kw(t, "graph") => p += 1,
        Some(t) if kw(t, "digraph") => {
            return Err(GraphError::Parse("directed graphs are not accepted".into()))
        }
        _ => return Err(GraphError::Parse("expected `graph`".into())),
    }
    if let Some(Token::Id(_)) = toks.get(p) {
        p += 1;
    }
    if toks.get(p) != Some(&Token::LBrace) {
        return Err(GraphError::Parse("expected `{`".into()));
    }
    p += 1;

    let mut vertices: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut labels = Labels::new();
    let mut add_vertex = |v: &str, vertices: &mut Vec<String>| {
        if seen.insert(v.to_string()) {
            vertices.push(v.to_string());
        }
    };

    loop {
        match toks.get(p) {
            None => return Err(GraphError::Parse("missing `}`".into())),
            Some(Token::RBrace) => {
                p += 1;
                break;
            }
            Some(Token::Semi) | Some(Token::Comma) => p += 1,
            Some(Token::LBrace) => return Err(GraphError::Parse("subgraphs are not supported".into())),
            Some(Token::Id(first)) => {
                let first = first.clone();
                p += 1;
                if first.eq_ignore_ascii_case("subgraph") {
                    return Err(GraphError::Parse("subgraphs are not supported".into()));
                }
                let is_default = ["graph", "node", "edge"].iter().any(|w| first.eq_ignore_ascii_case(w));
                if is_default {
                    if toks.get(p) == Some(&Token::LBracket) {
                        parse_attrs(&toks, &mut p)?;
                    }
                    continue;
                }
                if toks.get(p) == Some(&Token::Eq) {
                    // graph-level `key = value`
                    p += 1;
                    match toks.get(p) {
                        Some(Token::Id(_)) => p += 1,
                        _ => return Err(GraphError::Parse("expected value after `=`".into())),
                    }
                    continue;
                }
                let mut chain = vec![first];
                loop {
                    match toks.get(p) {
                        Some(Token::Edge) => {
                            p += 1;
                            match toks.get(p) {
                                Some(Token::Id(next)) => {
                                    chain.push(next.clone());
                                    p += 1;
                                }
                                _ => return Err(GraphError::Parse("expected vertex after `--`".into())),
                            }
                        }
                        Some(Token::Arrow) => {
                            return Err(GraphError::Parse("directed edge `->` in undirected graph".into()))
                        }
                        _ => break,
                    }
                }
                let attrs = if toks.get(p) == Some(&Token::LBracket) {
                    parse_attrs(&toks, &mut p)?
                } else {
                    Vec::new()
                };
                for v in &chain {
                    add_vertex(v, &mut vertices);
                }
                if chain.len() == 1 {
                    if let Some((_, val)) = attrs.iter().find(|(k, _)| k == "label") {
                        labels.insert(chain[0].clone(), val.clone());
                    }
                } else {
                    for w in chain.windows(2) {
                        edges.push((w[0].clone(), w[1].clone()));
                    }
                }
            }
            Some(t) => return Err(GraphError::Parse(format!("unexpected token {t:?}"))),
        }
    }
    if p != toks.len() {
        return Err(GraphError::Parse("trailing input after `}`".into()));
    }
    let g = SimpleGraph::new(vertices, edges)?;
    Ok((g, labels))
}

fn parse_attrs(toks: &[Token], p: &mut usize) -> Result<Vec<(String, String)>, GraphError> {
    debug_assert_eq!(toks.get(*p), Some(&Token::LBracket));
    *p += 1;
    let mut attrs = Vec::new();
    loop {
        match toks.get(*p) {
            Some(Token::RBracket) => {
                *p += 1;
                return Ok(attrs);
            }
            Some(Token::Comma) | Some(Token::Semi) => *p += 1,
            Some(Token::Id(k)) => {
                let key = k.clone();
                *p += 1;
                if toks.get(*p) != Some(&Token::Eq) {
                    return Err(GraphError::Parse(format!("attribute {key:?} missing `=`")));
                }
                *p += 1;
                match toks.get(*p) {
                    Some(Token::Id(v)) => {
                        attrs.push((key, v.clone()));
                        *p += 1;
                    }
                    _ => return Err(GraphError::Parse(format!("attribute {key:?} missing value"))),
                }
            }
            _ => return Err(GraphError::Parse("malformed attribute list".into())),
        }
    }
}
