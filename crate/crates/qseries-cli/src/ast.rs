//! Expression surface syntax: lexer, recursive-descent parser, and the
//! canonical printer.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | call | IDENT | NUMBER | LIST | '(' expr ')'
//! call   := IDENT '(' expr (',' expr)* ')'
//! LIST   := '[' (expr (',' expr)*)? ']'
//! ```
//!
//! Numbers may carry an `i` suffix for imaginary literals, so the
//! complex literal `1.5+0.3i` parses through the ordinary addition rule.
//! Bare identifiers (such as `inf` or integrand names) are symbol nodes
//! consumed by specific operations.

use std::fmt;

/// Source location of a token: byte offset plus 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loc {
    pub offset: usize,
    pub line: u32,
    pub col: u32,
}

/// Parse failure with the location and the token set that would have
/// been accepted.
#[derive(Clone, Debug)]
pub struct ParseError {
    pub loc: Loc,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {} (offset {}): expected {}, found {}",
            self.loc.line,
            self.loc.col,
            self.loc.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Expression tree. Binary/unary arithmetic plus the call, list, and
/// symbol nodes the operation layer interprets.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Number(f64),
    /// Imaginary literal `Xi`.
    Imaginary(f64),
    Symbol(String),
    List(Vec<Ast>),
    Call {
        name: String,
        args: Vec<Ast>,
        loc: Loc,
    },
    Neg(Box<Ast>),
    Binary {
        op: char,
        lhs: Box<Ast>,
        rhs: Box<Ast>,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(f64, bool), // value, imaginary suffix
    Ident(String),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(v, false) => write!(f, "number {v}"),
            Tok::Number(v, true) => write!(f, "imaginary number {v}i"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn loc(&self) -> Loc {
        Loc {
            offset: self.pos,
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn next_token(&mut self) -> Result<(Tok, Loc), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.bump();
        }
        let loc = self.loc();
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, loc));
        }
        let c = self.src[self.pos];
        match c {
            b'+' | b'-' | b'*' | b'/' | b'(' | b')' | b'[' | b']' | b',' => {
                self.bump();
                Ok((Tok::Punct(c as char), loc))
            }
            b'0'..=b'9' | b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.bump();
                }
                if self.pos < self.src.len() && (self.src[self.pos] | 32) == b'e' {
                    let mark = (self.pos, self.line, self.col);
                    self.bump();
                    if self.pos < self.src.len()
                        && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
                    {
                        self.bump();
                    }
                    if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                            self.bump();
                        }
                    } else {
                        (self.pos, self.line, self.col) = mark;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value: f64 = text.parse().map_err(|_| ParseError {
                    loc,
                    expected: vec!["a number".into()],
                    found: format!("'{text}'"),
                })?;
                // an immediately following `i` marks an imaginary literal
                let imaginary = self.pos < self.src.len()
                    && self.src[self.pos] == b'i'
                    && !(self.pos + 1 < self.src.len()
                        && (self.src[self.pos + 1].is_ascii_alphanumeric()
                            || self.src[self.pos + 1] == b'_'));
                if imaginary {
                    self.bump();
                }
                Ok((Tok::Number(value, imaginary), loc))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok((Tok::Ident(text.to_string()), loc))
            }
            other => Err(ParseError {
                loc,
                expected: vec!["a number".into(), "an identifier".into(), "an operator".into()],
                found: format!("'{}'", other as char),
            }),
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, Loc)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Loc) {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> (Tok, Loc) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        let (tok, loc) = self.peek();
        ParseError {
            loc: *loc,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.to_string(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek().0 {
            Tok::Punct(p) if p == c => {
                self.advance();
                Ok(())
            }
            _ => Err(self.err(&[&format!("'{c}'")])),
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Punct(op @ ('+' | '-')) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Ast::Binary {
                        op,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().0 {
                Tok::Punct(op @ ('*' | '/')) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Ast::Binary {
                        op,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        match self.peek().0.clone() {
            Tok::Punct('-') => {
                self.advance();
                Ok(Ast::Neg(Box::new(self.factor()?)))
            }
            Tok::Punct('(') => {
                self.advance();
                let inner = self.expr()?;
                self.expect_punct(')')?;
                Ok(inner)
            }
            Tok::Punct('[') => {
                self.advance();
                let mut items = Vec::new();
                if matches!(self.peek().0, Tok::Punct(']')) {
                    self.advance();
                    return Ok(Ast::List(items));
                }
                loop {
                    items.push(self.expr()?);
                    match self.peek().0 {
                        Tok::Punct(',') => {
                            self.advance();
                        }
                        Tok::Punct(']') => {
                            self.advance();
                            return Ok(Ast::List(items));
                        }
                        _ => return Err(self.err(&["','", "']'"])),
                    }
                }
            }
            Tok::Number(v, imaginary) => {
                self.advance();
                Ok(if imaginary {
                    Ast::Imaginary(v)
                } else {
                    Ast::Number(v)
                })
            }
            Tok::Ident(name) => {
                let loc = self.peek().1;
                self.advance();
                if matches!(self.peek().0, Tok::Punct('(')) {
                    self.advance();
                    let mut args = Vec::new();
                    if matches!(self.peek().0, Tok::Punct(')')) {
                        self.advance();
                        return Ok(Ast::Call { name, args, loc });
                    }
                    loop {
                        args.push(self.expr()?);
                        match self.peek().0 {
                            Tok::Punct(',') => {
                                self.advance();
                            }
                            Tok::Punct(')') => {
                                self.advance();
                                return Ok(Ast::Call { name, args, loc });
                            }
                            _ => return Err(self.err(&["','", "')'"])),
                        }
                    }
                } else {
                    Ok(Ast::Symbol(name))
                }
            }
            _ => Err(self.err(&[
                "a number",
                "an identifier",
                "'('",
                "'['",
                "'-'",
            ])),
        }
    }
}

/// Parses a complete expression; trailing input is an error.
pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let (tok, loc) = lexer.next_token()?;
        let done = tok == Tok::Eof;
        tokens.push((tok, loc));
        if done {
            break;
        }
    }
    let mut parser = Parser { tokens, pos: 0 };
    let ast = parser.expr()?;
    match parser.peek().0 {
        Tok::Eof => Ok(ast),
        _ => Err(parser.err(&["end of input", "an operator"])),
    }
}

/// Canonical printer; `parse(print(parse(s)))` equals `parse(s)`.
pub fn print(ast: &Ast) -> String {
    match ast {
        Ast::Number(v) => format!("{v}"),
        Ast::Imaginary(v) => format!("{v}i"),
        Ast::Symbol(s) => s.clone(),
        Ast::List(items) => {
            let inner: Vec<String> = items.iter().map(print).collect();
            format!("[{}]", inner.join(","))
        }
        Ast::Call { name, args, .. } => {
            let inner: Vec<String> = args.iter().map(print).collect();
            format!("{name}({})", inner.join(","))
        }
        Ast::Neg(inner) => format!("-{}", print_grouped(inner)),
        Ast::Binary { op, lhs, rhs } => {
            let left = if matches!(**lhs, Ast::Binary { op: lop, .. }
                if precedence(lop) < precedence(*op))
            {
                format!("({})", print(lhs))
            } else {
                print(lhs)
            };
            let right = if matches!(**rhs, Ast::Binary { .. } | Ast::Neg(_)) {
                format!("({})", print(rhs))
            } else {
                print(rhs)
            };
            format!("{left}{op}{right}")
        }
    }
}

fn precedence(op: char) -> u8 {
    match op {
        '*' | '/' => 2,
        _ => 1,
    }
}

fn print_grouped(ast: &Ast) -> String {
    match ast {
        Ast::Binary { .. } | Ast::Neg(_) => format!("({})", print(ast)),
        other => print(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_calls_numbers_and_lists() {
        let ast = parse("qpoch(0.5,0.5,3)").unwrap();
        match &ast {
            Ast::Call { name, args, .. } => {
                assert_eq!(name, "qpoch");
                assert_eq!(args.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        let ast = parse("phi([0.3],[],0.5,0.2)").unwrap();
        match &ast {
            Ast::Call { name, args, .. } => {
                assert_eq!(name, "phi");
                assert_eq!(args[0], Ast::List(vec![Ast::Number(0.3)]));
                assert_eq!(args[1], Ast::List(vec![]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complex_literals_parse_through_addition() {
        let ast = parse("1.5+0.3i").unwrap();
        assert_eq!(
            ast,
            Ast::Binary {
                op: '+',
                lhs: Box::new(Ast::Number(1.5)),
                rhs: Box::new(Ast::Imaginary(0.3)),
            }
        );
    }

    #[test]
    fn malformed_input_reports_the_offset_and_expectations() {
        let err = parse("phi([0.3,0.5)").unwrap_err();
        assert_eq!(err.loc.offset, 12);
        assert_eq!(err.loc.line, 1);
        assert!(err.expected.iter().any(|e| e.contains("']'")));
        let err = parse("qpoch(1,2,").unwrap_err();
        assert!(!err.expected.is_empty());
        let err = parse("1 + ").unwrap_err();
        assert!(err.found.contains("end of input"));
    }

    #[test]
    fn printer_round_trips() {
        for text in [
            "qpoch(0.5,0.5,3)",
            "phi([0.3,0.4],[0.5],0.5,0.2)",
            "1.5+0.3i",
            "-(2*3)+4/5",
            "W(0.2,[0.3,0.4],0.5,0.1)",
            "qint(zero_to_one,0.5,monomial,2)",
            "qpoch(0.5,0.5,inf)",
            "(1+2)*3",
            "1-(2-3)",
        ] {
            let first = parse(text).unwrap();
            let printed = print(&first);
            let second = parse(&printed).unwrap();
            assert_eq!(first, second, "{text} -> {printed}");
        }
    }
}
