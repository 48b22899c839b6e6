//! Edge-list and DOT readers and writers.
//!
//! Edge lists: an optional `vertices: a b c` line, then one `u v` pair per
//! line. `#` starts a comment. Without a `vertices:` line the vertex set is
//! whatever the edges mention. Tokens that read back as integers become
//! integer labels, everything else a name.
//!
//! DOT: `[strict] graph [NAME] { ... }` with `a -- b -- c` chains, bare
//! identifiers for isolated vertices, and attribute lists, `key = value`
//! statements and `node`/`edge`/`graph` defaults ignored. `digraph` is
//! rejected.

use std::fmt;

use gfr_core::{Graph, GraphError, Label};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with 1-based columns, up to `#`.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, t)| (body[..byte].chars().count() + 1, t))
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<Vec<Label>> = None;
    let mut edges: Vec<(Label, Label)> = Vec::new();
    let mut positions: Vec<(usize, usize)> = Vec::new();
    let mut seen_content = false;
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(line);
        let Some(&(col, first)) = toks.first() else {
            continue;
        };
        if let Some(rest) = first.strip_prefix("vertices:") {
            if seen_content {
                return Err(err(ln, col, "`vertices:` must come before any edge"));
            }
            let mut vs: Vec<Label> = Vec::new();
            if !rest.is_empty() {
                vs.push(Label::parse(rest));
            }
            vs.extend(toks[1..].iter().map(|(_, t)| Label::parse(t)));
            declared = Some(vs);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if toks.len() != 2 {
            return Err(err(ln, col, format!("expected an edge `u v`, found {} tokens", toks.len())));
        }
        let (a, b) = (Label::parse(toks[0].1), Label::parse(toks[1].1));
        if a == b {
            return Err(err(ln, col, format!("self-loop at vertex {a}")));
        }
        edges.push((a, b));
        positions.push((ln, col));
    }
    if !seen_content {
        return Err(err(1, 1, "empty input: no `vertices:` line and no edges"));
    }
    let built = match declared {
        Some(vs) => Graph::from_edge_list(vs, edges.iter().cloned()),
        None => Graph::from_edges(Vec::<Label>::new(), edges.iter().cloned()),
    };
    built.map_err(|e| {
        let offending = match &e {
            GraphError::SelfLoop(v) | GraphError::UnknownVertex(v) => v.clone(),
        };
        let at = edges
            .iter()
            .position(|(a, b)| *a == offending || *b == offending)
            .map(|i| positions[i])
            .unwrap_or((1, 1));
        err(at.0, at.1, e.to_string())
    })
}

/// Edge-list text with a `vertices:` header, one edge per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = g.to_edge_list("\n");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// DOT

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Edge,
    Arc,
    Open,
    Close,
    OpenBracket,
    CloseBracket,
    Semi,
    Comma,
    Eq,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn run(mut self) -> Result<Vec<(usize, usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        let mut at_line_start = true;
        while let Some(&c) = self.chars.peek() {
            let (line, col) = (self.line, self.col);
            if c == '\n' {
                self.bump();
                at_line_start = true;
                continue;
            }
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            if c == '#' && at_line_start {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
                continue;
            }
            at_line_start = false;
            self.bump();
            let tok = match c {
                '{' => Tok::Open,
                '}' => Tok::Close,
                '[' => Tok::OpenBracket,
                ']' => Tok::CloseBracket,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                '/' if self.chars.peek() == Some(&'/') => {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                    continue;
                }
                '/' if self.chars.peek() == Some(&'*') => {
                    self.bump();
                    let mut prev = ' ';
                    loop {
                        match self.bump() {
                            None => return Err(err(line, col, "unterminated comment")),
                            Some('/') if prev == '*' => break,
                            Some(c) => prev = c,
                        }
                    }
                    continue;
                }
                '-' if self.chars.peek() == Some(&'-') => {
                    self.bump();
                    Tok::Edge
                }
                '-' if self.chars.peek() == Some(&'>') => {
                    self.bump();
                    Tok::Arc
                }
                '"' => {
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            None => return Err(err(line, col, "unterminated string")),
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => s.push('"'),
                                Some(c) => {
                                    s.push('\\');
                                    s.push(c);
                                }
                                None => return Err(err(line, col, "unterminated string")),
                            },
                            Some(c) => s.push(c),
                        }
                    }
                    Tok::Id(s)
                }
                c if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' => {
                    let mut s = String::from(c);
                    while let Some(&d) = self.chars.peek() {
                        if d.is_alphanumeric() || d == '_' || d == '.' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Id(s)
                }
                other => return Err(err(line, col, format!("unexpected character `{other}`"))),
            };
            out.push((line, col, tok));
        }
        Ok(out)
    }
}

struct DotParser {
    toks: Vec<(usize, usize, Tok)>,
    pos: usize,
    end: (usize, usize),
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.2)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.0, t.1)).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.2.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn skip_attributes(&mut self) -> Result<(), ParseError> {
        while self.peek() == Some(&Tok::OpenBracket) {
            self.pos += 1;
            loop {
                match self.next() {
                    Some(Tok::CloseBracket) => break,
                    Some(_) => {}
                    None => return self.fail("unterminated attribute list"),
                }
            }
        }
        Ok(())
    }
}

pub fn parse_dot(text: &str) -> Result<Graph, ParseError> {
    let lexer = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let toks = lexer.run()?;
    let end = toks.last().map(|t| (t.0, t.1)).unwrap_or((1, 1));
    let mut p = DotParser { toks, pos: 0, end };

    if matches!(p.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case("strict")) {
        p.pos += 1;
    }
    match p.peek() {
        Some(Tok::Id(s)) if s.eq_ignore_ascii_case("graph") => p.pos += 1,
        Some(Tok::Id(s)) if s.eq_ignore_ascii_case("digraph") => {
            return p.fail("directed graphs are not supported");
        }
        _ => return p.fail("expected `graph`"),
    }
    if let Some(Tok::Id(_)) = p.peek() {
        p.pos += 1;
    }
    p.expect(Tok::Open, "`{`")?;

    let mut vertices: Vec<Label> = Vec::new();
    let mut edges: Vec<(Label, Label)> = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Close) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Semi) | Some(Tok::Comma) => {
                p.pos += 1;
            }
            Some(Tok::Id(_)) => {
                let (line, col) = p.here();
                let Some(Tok::Id(first)) = p.next() else { unreachable!() };
                let lower = first.to_ascii_lowercase();
                if matches!(lower.as_str(), "node" | "edge" | "graph") && p.peek() == Some(&Tok::OpenBracket) {
                    p.skip_attributes()?;
                    continue;
                }
                if lower == "subgraph" {
                    return p.fail("subgraphs are not supported");
                }
                if p.peek() == Some(&Tok::Eq) {
                    p.pos += 1;
                    match p.next() {
                        Some(Tok::Id(_)) => continue,
                        _ => return p.fail("expected a value after `=`"),
                    }
                }
                let mut chain = vec![Label::parse(&first)];
                loop {
                    match p.peek() {
                        Some(Tok::Edge) => {
                            p.pos += 1;
                            match p.next() {
                                Some(Tok::Id(s)) => chain.push(Label::parse(&s)),
                                _ => {
                                    p.pos -= 1;
                                    return p.fail("expected a vertex after `--`");
                                }
                            }
                        }
                        Some(Tok::Arc) => return p.fail("`->` is only allowed in directed graphs"),
                        _ => break,
                    }
                }
                p.skip_attributes()?;
                for w in chain.windows(2) {
                    if w[0] == w[1] {
                        return Err(err(line, col, format!("self-loop at vertex {}", w[0])));
                    }
                    edges.push((w[0].clone(), w[1].clone()));
                }
                vertices.extend(chain);
            }
            Some(_) => return p.fail("unexpected token"),
            None => return p.fail("missing `}`"),
        }
    }
    if p.peek().is_some() {
        return p.fail("trailing input after `}`");
    }
    Graph::from_edges(vertices, edges).map_err(|e| err(1, 1, e.to_string()))
}

fn dot_id(l: &Label) -> String {
    match l {
        Label::Int(i) => i.to_string(),
        Label::Name(s) if !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') && !s.starts_with(|c: char| c.is_ascii_digit()) => {
            s.clone()
        }
        Label::Name(s) => format!("\"{}\"", s.replace('"', "\\\"")),
    }
}

pub fn write_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {name} {{\n");
    for (i, l) in g.labels().iter().enumerate() {
        if g.degree(i) == 0 {
            s.push_str(&format!("  {};\n", dot_id(l)));
        }
    }
    for (a, b) in g.edge_labels() {
        s.push_str(&format!("  {} -- {};\n", dot_id(&a), dot_id(&b)));
    }
    s.push_str("}\n");
    s
}

/// DOT if the text starts with a graph header, edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"))
        .unwrap_or("");
    let word = head.split(|c: char| c.is_whitespace() || c == '{').next().unwrap_or("").to_ascii_lowercase();
    if matches!(word.as_str(), "graph" | "digraph" | "strict") {
        parse_dot(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> Graph {
        Graph::from_edge_list(1..=3, [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("vertices: 1 2 3\n1 2\n2 3\n").unwrap(), l3());
        assert_eq!(parse_edge_list("# a path\n1 2 # first\n\n2 3\n").unwrap(), l3());
        let e = parse_edge_list("1 1\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(e.message.contains("self-loop"));
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("  # nothing\n").is_err());
        assert_eq!(parse_edge_list("vertices:\n").unwrap(), Graph::empty());
        let e = parse_edge_list("vertices: 1 2\n1 2\n2 3\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 1));
        let e = parse_edge_list("1 2\n  3 4 5\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_edge_list("1 2\nvertices: 1 2\n").is_err());
    }

    #[test]
    fn dot_examples() {
        let g = parse_dot("graph G { a -- b; b -- c; }").unwrap();
        assert_eq!(g, Graph::from_edge_list(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap());
        assert_eq!(parse_dot("graph { 1 -- 2 -- 3 [color=red]; node [shape=box]; 4 }").unwrap().order(), 4);
        assert!(parse_dot("digraph G { a -> b }").unwrap_err().message.contains("directed"));
        assert!(parse_dot("graph G { a -- a }").unwrap_err().message.contains("self-loop"));
        let e = parse_dot("graph G {\n a -- ;\n}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_dot("graph G { a -- b").is_err());
        let g = parse_dot("/* c */ strict graph \"x y\" {\n // comment\n rankdir = LR\n \"p q\" -- r\n}").unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn round_trips() {
        let g = Graph::from_edge_list(["a", "b", "c", "d"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_dot(&write_dot(&g, "G")).unwrap(), g);
        assert_eq!(parse_graph(&write_dot(&l3(), "G")).unwrap(), l3());
        assert_eq!(parse_graph(&write_edge_list(&l3())).unwrap(), l3());
    }
}
