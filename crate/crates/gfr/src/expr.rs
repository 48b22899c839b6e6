//! Text form of factor expressions: `1`, `R`, `LF(p/q)`, `T[..]`, `F[..]`
//! and `GP{<edge list>}` with `;` separating edge-list lines.

use gfr_core::factor::{integer, FactorExpr, Rational};

use crate::format::{parse_edge_list, ParseError};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn col(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: 1,
            col: self.col(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.fail(format!("expected `{s}`"))
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || c == '/' || c == '-' || c == '+'))
            .unwrap_or(rest.len());
        let text = &rest[..len];
        let parse = |t: &str| t.trim().parse::<i128>().ok();
        let value = match text.split_once('/') {
            Some((n, d)) => match (parse(n), parse(d)) {
                (Some(n), Some(d)) if d != 0 => Some(Rational::new(n, d)),
                _ => None,
            },
            None => parse(text).map(integer),
        };
        match value {
            Some(v) => {
                self.pos += len;
                Ok(v)
            }
            None => self.fail(format!("bad rational `{text}`")),
        }
    }

    fn list(&mut self, close: &str) -> Result<Vec<FactorExpr>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn expr(&mut self) -> Result<FactorExpr, ParseError> {
        self.skip_ws();
        if self.eat("LF(") {
            let at = self.col();
            let s = self.rational()?;
            self.expect(")")?;
            return FactorExpr::fgf(s).map_err(|e| ParseError {
                line: 1,
                col: at,
                message: e.to_string(),
            });
        }
        if self.eat("T[") {
            return Ok(FactorExpr::Tensor(self.list("]")?));
        }
        if self.eat("F[") {
            return Ok(FactorExpr::Free(self.list("]")?));
        }
        if self.eat("GP{") {
            let start = self.pos;
            let Some(len) = self.src[start..].find('}') else {
                return self.fail("missing `}`");
            };
            let body = self.src[start..start + len].replace(';', "\n");
            let at = self.col();
            let g = parse_edge_list(&body).map_err(|e| ParseError {
                line: 1,
                col: at,
                message: format!("in GP{{..}}: {}", e.message),
            })?;
            self.pos = start + len + 1;
            return Ok(FactorExpr::opaque(g));
        }
        if self.eat("R") {
            return Ok(FactorExpr::R);
        }
        if self.eat("1") {
            return Ok(FactorExpr::Unit);
        }
        self.fail("expected an expression")
    }
}

pub fn parse_expression(text: &str) -> Result<FactorExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gfr_core::factor::{rational, simplify};
    use gfr_core::Graph;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_expression("R").unwrap(), FactorExpr::R);
        assert_eq!(parse_expression(" 1 ").unwrap(), FactorExpr::Unit);
        assert_eq!(parse_expression("LF(7/2)").unwrap(), FactorExpr::Fgf(rational(7, 2)));
        assert_eq!(
            parse_expression("F[R,R,R,R]").unwrap(),
            FactorExpr::Free(vec![FactorExpr::R; 4])
        );
        assert_eq!(simplify(&parse_expression("F[R,R,R,R]").unwrap()).expr.to_string(), "LF(4)");
        assert_eq!(parse_expression("T[]").unwrap(), FactorExpr::Tensor(vec![]));
        let gp = parse_expression("GP{vertices: 1 2 3 4 5; 1 2; 2 3; 3 4; 4 5; 1 5}").unwrap();
        let z5 = Graph::from_edge_list(1..=5, (1..=5).map(|i| (i, i % 5 + 1))).unwrap();
        assert_eq!(gp, FactorExpr::opaque(z5));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_expression("LF(1)").is_err());
        assert!(parse_expression("LF(2/0)").is_err());
        assert!(parse_expression("LF(x)").is_err());
        assert!(parse_expression("T[R,").is_err());
        assert!(parse_expression("R R").is_err());
        assert!(parse_expression("Q").is_err());
        assert_eq!(parse_expression("T[R, Q]").unwrap_err().col, 6);
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "R", "LF(2)", "LF(7/3)", "T[R, LF(2)]", "F[R, T[R, LF(5/2)], 1]", "GP{vertices: a b c d; a b; b c; c d}"] {
            let e = parse_expression(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
        }
    }
}
