//! Text formats for formulas (`.pafml`) and proofs (`.paproof`).
//!
//! Formula grammar (ASCII, whitespace-insensitive):
//!
//! ```text
//! formula := '!' formula | 'forall' var formula | 'exists' var formula
//!          | '(' formula ')' | '(' formula '->' formula ')' | '(' formula '&' formula ')'
//!          | An_k '(' term, ... ')' | term ('=' | '!=' | '<') term | placeholder
//! term    := xk | ak | '0' | fn_k | fn_k '(' term, ... ')'
//! placeholder := uppercase letter other than A, followed by its odd code (B51)
//! ```
//!
//! `exists`, `&`, `=`, `!=`, `<` and `0` are abbreviations that expand to
//! the primitive connectives and the arithmetic signature in
//! [`crate::syntax::arith`]. [`render_formula`] only produces primitive
//! syntax, so `parse(render(f)) == f`.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{arith, Const, Expression, Formula, FuncLetter, PredLetter, Symbol, Term, Var};

/// Header line of both file formats.
pub const HEADER: &str = "#v1";

/// Header of a `.pafml` file whose body is a raw symbol string.
pub const RAW_HEADER: &str = "#v1 raw";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("line {line}, column {col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("line {line}, column {col}: {letter} takes {arity} argument(s), got {got}")]
    Arity { line: usize, col: usize, letter: String, arity: u32, got: usize },
    #[error("line {line}: {message}")]
    BadJustificationRef { line: usize, message: String },
    #[error("proof has no lines")]
    EmptyProof,
    #[error("missing `{HEADER}` header")]
    MissingHeader,
}

impl ReadError {
    fn at_line(self, line: usize, col_offset: usize) -> ReadError {
        match self {
            ReadError::Syntax { col, expected, .. } => ReadError::Syntax { line, col: col + col_offset, expected },
            ReadError::Arity { col, letter, arity, got, .. } => {
                ReadError::Arity { line, col: col + col_offset, letter, arity, got }
            }
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justification {
    /// Axiom, optionally naming the schema (`A1`..`A5`, `S1`..`S9`, `O1`, `O2`).
    Axiom(Option<String>),
    /// Modus ponens from lines `i` (antecedent) and `j` (implication), 1-based.
    Mp(usize, usize),
    /// Generalization of line `i` over a variable.
    Gen(usize, Var),
    Premise,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(None) => f.write_str("axiom"),
            Justification::Axiom(Some(id)) => write!(f, "axiom {id}"),
            Justification::Mp(i, j) => write!(f, "mp {i}, {j}"),
            Justification::Gen(i, v) => write!(f, "gen {i} x{}", v.0),
            Justification::Premise => f.write_str("premise"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// Numbered derivation. Line numbers are implicit: `lines[0]` is line 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a line and return its 1-based number.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(ProofLine { formula, justification });
        self.lines.len()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.lines.iter().map(|l| &l.formula)
    }

    pub fn last_formula(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn has_premises(&self) -> bool {
        self.lines.iter().any(|l| l.justification == Justification::Premise)
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Bang,
    Arrow,
    Amp,
    Eq,
    NotEq,
    Less,
    Word(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::NotEq => f.write_str("`!=`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Word(w) => write!(f, "`{w}`"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ReadError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let col = i + 1;
        let two = bytes.get(i + 1).copied();
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'&' => Tok::Amp,
            b'=' => Tok::Eq,
            b'<' => Tok::Less,
            b'!' if two == Some(b'=') => {
                i += 1;
                Tok::NotEq
            }
            b'!' => Tok::Bang,
            b'-' if two == Some(b'>') => {
                i += 1;
                Tok::Arrow
            }
            _ if b.is_ascii_alphanumeric() || b == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start + 1, Tok::Word(src[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ReadError::Syntax { line: 1, col, expected: "a formula token".into() });
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

enum Word {
    Var(Var),
    Const(Const),
    Zero,
    Func(FuncLetter),
    Pred(PredLetter),
    Placeholder(u64),
    Forall,
    Exists,
}

fn digits(s: &str) -> Option<u32> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

fn letter_pair(s: &str) -> Option<(u32, u32)> {
    let (n, k) = s.split_once('_')?;
    Some((digits(n)?, digits(k)?))
}

fn classify(w: &str) -> Option<Word> {
    match w {
        "forall" => return Some(Word::Forall),
        "exists" => return Some(Word::Exists),
        "0" => return Some(Word::Zero),
        _ => {}
    }
    let (head, rest) = w.split_at(1);
    match head {
        "x" => digits(rest).filter(|&k| k >= 1).map(|k| Word::Var(Var(k))),
        "a" => digits(rest).filter(|&k| k >= 1).map(|k| Word::Const(Const(k))),
        "f" => letter_pair(rest).filter(|&(_, k)| k >= 1).map(|(n, k)| Word::Func(FuncLetter::new(n, k))),
        "A" => letter_pair(rest).filter(|&(n, k)| n >= 1 && k >= 1).map(|(n, k)| Word::Pred(PredLetter::new(n, k))),
        h if h.as_bytes()[0].is_ascii_uppercase() => {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse::<u64>().ok().map(Word::Placeholder)
        }
        _ => None,
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ReadError> {
        Ok(Parser { toks: lex(src)?, pos: 0, end_col: src.len() + 1 })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn fail<T>(&self, expected: impl Into<String>) -> Result<T, ReadError> {
        let found = match self.peek() {
            Some(t) => format!(", found {t}"),
            None => ", found end of input".to_string(),
        };
        Err(ReadError::Syntax { line: 1, col: self.col(), expected: format!("{}{found}", expected.into()) })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ReadError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(t.to_string())
        }
    }

    fn word(&self) -> Option<Word> {
        match self.peek() {
            Some(Tok::Word(w)) => classify(w),
            _ => None,
        }
    }

    fn starts_term(&self) -> bool {
        matches!(self.word(), Some(Word::Var(_) | Word::Const(_) | Word::Zero | Word::Func(_)))
    }

    fn variable(&mut self) -> Result<Var, ReadError> {
        match self.word() {
            Some(Word::Var(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("a variable"),
        }
    }

    fn args(&mut self, letter: String, arity: u32, col: usize) -> Result<Vec<Term>, ReadError> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        if args.len() != arity as usize {
            return Err(ReadError::Arity { line: 1, col, letter, arity, got: args.len() });
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ReadError> {
        let col = self.col();
        match self.word() {
            Some(Word::Var(v)) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Word::Const(c)) => {
                self.pos += 1;
                Ok(Term::Const(c))
            }
            Some(Word::Zero) => {
                self.pos += 1;
                Ok(arith::zero())
            }
            Some(Word::Func(f)) => {
                self.pos += 1;
                if f.arity == 0 && self.peek() != Some(&Tok::LParen) {
                    return Ok(Term::App(f, Vec::new()));
                }
                let args = self.args(format!("f{}_{}", f.arity, f.index), f.arity, col)?;
                Ok(Term::App(f, args))
            }
            _ => self.fail("a term"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ReadError> {
        let col = self.col();
        if self.eat(&Tok::Bang) {
            return Ok(Formula::not(self.formula()?));
        }
        if self.eat(&Tok::LParen) {
            let a = self.formula()?;
            if self.eat(&Tok::RParen) {
                return Ok(a);
            }
            let f = if self.eat(&Tok::Arrow) {
                Formula::implies(a, self.formula()?)
            } else if self.eat(&Tok::Amp) {
                let b = self.formula()?;
                Formula::not(Formula::implies(a, Formula::not(b)))
            } else {
                return self.fail("`->`, `&` or `)`");
            };
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        if self.starts_term() {
            let lhs = self.term()?;
            let rel = self.peek().cloned();
            let f = match rel {
                Some(Tok::Eq) | Some(Tok::NotEq) | Some(Tok::Less) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    match rel {
                        Some(Tok::Eq) => arith::eq(lhs, rhs),
                        Some(Tok::NotEq) => Formula::not(arith::eq(lhs, rhs)),
                        _ => arith::less(lhs, rhs),
                    }
                }
                _ => return self.fail("`=`, `!=` or `<` after a term"),
            };
            return Ok(f);
        }
        match self.word() {
            Some(Word::Forall) => {
                self.pos += 1;
                let v = self.variable()?;
                Ok(Formula::forall(v, self.formula()?))
            }
            Some(Word::Exists) => {
                self.pos += 1;
                let v = self.variable()?;
                Ok(Formula::not(Formula::forall(v, Formula::not(self.formula()?))))
            }
            Some(Word::Pred(p)) => {
                self.pos += 1;
                let args = self.args(format!("A{}_{}", p.arity, p.index), p.arity, col)?;
                Ok(Formula::Atom(p, args))
            }
            Some(Word::Placeholder(c)) => {
                self.pos += 1;
                if c % 2 == 0 {
                    return Err(ReadError::Syntax { line: 1, col, expected: "an odd placeholder code".into() });
                }
                Ok(Formula::Placeholder(c))
            }
            _ => self.fail("a formula"),
        }
    }

    fn finish(&self) -> Result<(), ReadError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ReadError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ReadError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A formula, or a bare term when the input is one.
pub fn parse_expression(text: &str) -> Result<Expression, ReadError> {
    let mut p = Parser::new(text)?;
    if p.starts_term() {
        let save = p.pos;
        let t = p.term()?;
        if p.pos == p.toks.len() {
            return Ok(Expression::Term(t));
        }
        p.pos = save;
    }
    let f = p.formula()?;
    p.finish()?;
    Ok(Expression::Formula(f))
}

/// Strip the header and comment lines, yielding `(line number, text)`
/// and whether the header was the raw variant.
fn body_lines(text: &str) -> Result<(Vec<(usize, &str)>, bool), ReadError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let mut out = Vec::new();
    let mut seen_header = false;
    let mut raw = false;
    for (n, l) in &mut lines {
        let t = l.trim_start();
        if t.is_empty() {
            continue;
        }
        if !seen_header {
            match t {
                HEADER => {}
                RAW_HEADER => raw = true,
                _ => return Err(ReadError::MissingHeader),
            }
            seen_header = true;
            continue;
        }
        if t.starts_with('#') {
            continue;
        }
        out.push((n, l));
    }
    if !seen_header {
        return Err(ReadError::MissingHeader);
    }
    Ok((out, raw))
}

/// Contents of a `.pafml` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaFile {
    Formula(Formula),
    /// A symbol string taken verbatim, numbered without re-spelling.
    Raw(Vec<Symbol>),
}

/// Parse a `.pafml` file: header plus one formula (which may span lines).
/// Under the `#v1 raw` header the body is a raw symbol string.
pub fn parse_formula_file_any(text: &str) -> Result<FormulaFile, ReadError> {
    let (lines, raw) = body_lines(text)?;
    let Some(&(first, _)) = lines.first() else {
        return Err(ReadError::Syntax { line: 1, col: 1, expected: "a formula".into() });
    };
    let joined = lines.iter().map(|(_, l)| *l).collect::<Vec<_>>().join(" ");
    if raw {
        parse_symbols(&joined).map(FormulaFile::Raw).map_err(|e| e.at_line(first, 0))
    } else {
        parse_formula(&joined).map(FormulaFile::Formula).map_err(|e| e.at_line(first, 0))
    }
}

/// Parse a `.pafml` file that must hold a formula.
pub fn parse_formula_file(text: &str) -> Result<Formula, ReadError> {
    match parse_formula_file_any(text)? {
        FormulaFile::Formula(f) => Ok(f),
        FormulaFile::Raw(_) => Err(ReadError::Syntax { line: 1, col: 1, expected: "a `#v1` formula file".into() }),
    }
}

/// Read a raw symbol string such as `( ! B51 -> ! B51 )`. Spaces are
/// optional around punctuation.
pub fn parse_symbols(text: &str) -> Result<Vec<Symbol>, ReadError> {
    let toks = lex(text)?;
    let mut out = Vec::with_capacity(toks.len());
    for (col, tok) in toks {
        let sym = match &tok {
            Tok::LParen => Symbol::LParen,
            Tok::RParen => Symbol::RParen,
            Tok::Comma => Symbol::Comma,
            Tok::Bang => Symbol::Not,
            Tok::Arrow => Symbol::Implies,
            Tok::Word(w) => w
                .parse::<Symbol>()
                .map_err(|_| ReadError::Syntax { line: 1, col, expected: format!("a symbol, found {tok}") })?,
            _ => return Err(ReadError::Syntax { line: 1, col, expected: format!("a primitive symbol, found {tok}") }),
        };
        out.push(sym);
    }
    if out.is_empty() {
        return Err(ReadError::Syntax { line: 1, col: 1, expected: "a symbol".into() });
    }
    Ok(out)
}

pub fn render_symbols(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_justification(text: &str, line: usize, current: usize) -> Result<Justification, ReadError> {
    let bad = |message: String| ReadError::BadJustificationRef { line, message };
    let mut parts = text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty());
    let head = parts.next().ok_or_else(|| bad("missing justification".into()))?;
    let rest: Vec<&str> = parts.collect();
    let line_ref = |s: &str| -> Result<usize, ReadError> {
        let i: usize = s.parse().map_err(|_| bad(format!("`{s}` is not a line number")))?;
        if i == 0 || i >= current {
            return Err(bad(format!("line {current} cites line {i}, which is not an earlier line")));
        }
        Ok(i)
    };
    let j = match (head.to_ascii_lowercase().as_str(), rest.as_slice()) {
        ("axiom", []) => Justification::Axiom(None),
        ("axiom", [id]) => Justification::Axiom(Some(id.to_ascii_uppercase())),
        ("mp", [i, j]) => Justification::Mp(line_ref(i)?, line_ref(j)?),
        ("gen", [i, v]) => {
            let var = match classify(v) {
                Some(Word::Var(v)) => v,
                _ => return Err(bad(format!("`{v}` is not a variable"))),
            };
            Justification::Gen(line_ref(i)?, var)
        }
        ("premise", []) => Justification::Premise,
        _ => return Err(bad(format!("unrecognized justification `{}`", text.trim()))),
    };
    Ok(j)
}

/// Parse a `.paproof` file: header plus lines `<n>. <formula> ; <justification>`.
pub fn parse_proof(text: &str) -> Result<ProofScript, ReadError> {
    let mut script = ProofScript::new();
    let (lines, raw_header) = body_lines(text)?;
    if raw_header {
        return Err(ReadError::MissingHeader);
    }
    for (line, raw) in lines {
        let current = script.len() + 1;
        let syntax = |col: usize, expected: &str| ReadError::Syntax { line, col, expected: expected.into() };
        let (num, rest) = raw.split_once('.').ok_or_else(|| syntax(1, "`<n>.`"))?;
        let n: usize = num.trim().parse().map_err(|_| syntax(1, "a line number"))?;
        if n != current {
            return Err(ReadError::BadJustificationRef { line, message: format!("expected line number {current}, found {n}") });
        }
        let offset = num.len() + 1;
        let (fml, just) = rest.split_once(';').ok_or_else(|| syntax(raw.len() + 1, "`; <justification>`"))?;
        let formula = parse_formula(fml).map_err(|e| e.at_line(line, offset))?;
        let justification = parse_justification(just, line, current)?;
        script.push(formula, justification);
    }
    if script.is_empty() {
        return Err(ReadError::EmptyProof);
    }
    Ok(script)
}

// ---------------------------------------------------------------------------
// Rendering

pub fn render_term(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => write!(out, "x{}", v.0).unwrap(),
        Term::Const(c) => write!(out, "a{}", c.0).unwrap(),
        Term::App(f, args) => {
            write!(out, "f{}_{}(", f.arity, f.index).unwrap();
            write_args(out, args);
        }
    }
}

fn write_args(out: &mut String, args: &[Term]) {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, a);
    }
    out.push(')');
}

pub fn render_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f);
    s
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Placeholder(c) => write!(out, "B{c}").unwrap(),
        Formula::Atom(p, args) => {
            write!(out, "A{}_{}(", p.arity, p.index).unwrap();
            write_args(out, args);
        }
        Formula::Not(a) => {
            out.push_str("(!");
            write_formula(out, a);
            out.push(')');
        }
        Formula::Implies(a, b) => {
            out.push('(');
            write_formula(out, a);
            out.push_str(" -> ");
            write_formula(out, b);
            out.push(')');
        }
        Formula::Forall(v, body) => {
            write!(out, "forall x{} ", v.0).unwrap();
            write_formula(out, body);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

pub fn render_expression(e: &Expression) -> String {
    match e {
        Expression::Term(t) => render_term(t),
        Expression::Formula(f) => render_formula(f),
    }
}

pub fn render_formula_file(f: &Formula) -> String {
    format!("{HEADER}\n{}\n", render_formula(f))
}

pub fn render_proof(script: &ProofScript) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (i, line) in script.lines.iter().enumerate() {
        writeln!(out, "{}. {} ; {}", i + 1, render_formula(&line.formula), line.justification).unwrap();
    }
    out
}
