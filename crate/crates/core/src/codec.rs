//! Goedel numbering.
//!
//! Symbols receive odd codes from a [`SymbolTable`]. An expression
//! `X_0 X_1 ... X_n` is numbered `p_0^c(X_0) * ... * p_n^c(X_n)` and a
//! sequence of expressions `E_0 ... E_n` is numbered the same way with the
//! expression numbers as exponents. Proof numbers are therefore
//! double-exponential; [`GoedelNumber`] keeps them as a tree of exponents
//! ("exponent tower") and only [`GoedelNumber::materialize`] produces an
//! actual integer, under a decimal-digit cap.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::primes;
use crate::syntax::{flatten, Const, ExprRef, Expression, Formula, FuncLetter, PredLetter, Symbol, Term, Var};

/// Default decimal-digit cap for [`GoedelNumber::materialize`].
pub const DEFAULT_DIGIT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol {0} has no code in the active table")]
    UnmappedSymbol(Symbol),
    #[error("placeholder code {0} collides with a structured symbol")]
    PlaceholderCollision(u64),
    #[error("cannot number an empty sequence")]
    EmptySequence,
    #[error("not a sequence number (prime gap or zero exponent)")]
    NotASequence,
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not the code of an expression: {0}")]
    NotACode(String),
    #[error("integer would exceed {cap} decimal digits")]
    CapExceeded { cap: usize },
    #[error("integer too large to factor ({digits} digits, limit {limit})")]
    TooLarge { digits: usize, limit: usize },
    #[error("malformed factored number at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("symbol table line {line}: {message}")]
    Config { line: usize, message: String },
}

// ---------------------------------------------------------------------------
// Naturals

/// Arbitrary-precision natural with an inline fast path. Always normalized:
/// `Big` only holds values above `u64::MAX`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nat {
    Small(u64),
    Big(BigUint),
}

impl Nat {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Nat::Small(n) => Some(*n),
            Nat::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Nat::Small(n) => BigUint::from(*n),
            Nat::Big(b) => b.clone(),
        }
    }

    fn log10(&self) -> f64 {
        match self {
            Nat::Small(n) => (*n as f64).log10(),
            Nat::Big(b) => b.bits() as f64 * std::f64::consts::LOG10_2,
        }
    }
}

impl From<u64> for Nat {
    fn from(n: u64) -> Self {
        Nat::Small(n)
    }
}

impl From<BigUint> for Nat {
    fn from(b: BigUint) -> Self {
        match b.to_u64() {
            Some(n) => Nat::Small(n),
            None => Nat::Big(b),
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(n) => write!(f, "{n}"),
            Nat::Big(b) => write!(f, "{b}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Symbol table

/// Assignment of odd codes to symbols.
///
/// The canonical table is `( ↦ 3`, `) ↦ 5`, `, ↦ 7`, `¬ ↦ 9`, `→ ↦ 11`,
/// `∀ ↦ 13`, `x_k ↦ 13+8k`, `a_k ↦ 7+8k`, `f^n_k ↦ 1+8·2^n·3^k`,
/// `A^n_k ↦ 3+8·2^n·3^k`; placeholders carry their own code. Individual
/// symbols can be overridden from a config file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    overrides: BTreeMap<Symbol, u64>,
    reverse: HashMap<u64, Symbol>,
}

fn letter_code(base: u64, arity: u32, index: u32) -> Option<u64> {
    let m = 2u64.checked_pow(arity)?.checked_mul(3u64.checked_pow(index)?)?;
    m.checked_mul(8)?.checked_add(base)
}

/// `m = 2^n * 3^k`, if it has that shape.
fn split_2_3(mut m: u64) -> Option<(u32, u32)> {
    if m == 0 {
        return None;
    }
    let n = m.trailing_zeros();
    m >>= n;
    let mut k = 0;
    while m % 3 == 0 {
        m /= 3;
        k += 1;
    }
    (m == 1).then_some((n, k))
}

fn canonical_code(s: Symbol) -> Option<u64> {
    Some(match s {
        Symbol::LParen => 3,
        Symbol::RParen => 5,
        Symbol::Comma => 7,
        Symbol::Not => 9,
        Symbol::Implies => 11,
        Symbol::Forall => 13,
        Symbol::Variable(Var(k)) => 13u64.checked_add(8u64.checked_mul(k as u64)?)?,
        Symbol::Constant(Const(k)) => 7u64.checked_add(8u64.checked_mul(k as u64)?)?,
        Symbol::Func(f) => letter_code(1, f.arity, f.index)?,
        Symbol::Pred(p) => letter_code(3, p.arity, p.index)?,
        Symbol::Placeholder(c) => c,
    })
}

fn canonical_symbol(c: u64) -> Option<Symbol> {
    Some(match c {
        3 => Symbol::LParen,
        5 => Symbol::RParen,
        7 => Symbol::Comma,
        9 => Symbol::Not,
        11 => Symbol::Implies,
        13 => Symbol::Forall,
        _ if c % 8 == 5 && c >= 21 => Symbol::Variable(Var(u32::try_from((c - 13) / 8).ok()?)),
        _ if c % 8 == 7 && c >= 15 => Symbol::Constant(Const(u32::try_from((c - 7) / 8).ok()?)),
        _ if c % 8 == 1 => {
            let (n, k) = split_2_3((c - 1) / 8)?;
            if k == 0 {
                return None;
            }
            Symbol::Func(FuncLetter::new(n, k))
        }
        _ if c % 8 == 3 => {
            let (n, k) = split_2_3((c - 3) / 8)?;
            if n == 0 || k == 0 {
                return None;
            }
            Symbol::Pred(PredLetter::new(n, k))
        }
        _ => return None,
    })
}

impl SymbolTable {
    pub fn canonical() -> Self {
        SymbolTable::default()
    }

    /// Build a table from `symbol -> code` overrides on top of the canonical one.
    pub fn with_overrides(pairs: impl IntoIterator<Item = (Symbol, u64)>) -> Result<Self, CodecError> {
        let mut table = SymbolTable::default();
        for (i, (sym, code)) in pairs.into_iter().enumerate() {
            let line = i + 1;
            table.insert(sym, code).map_err(|message| CodecError::Config { line, message })?;
        }
        table.validate()?;
        Ok(table)
    }

    fn insert(&mut self, sym: Symbol, code: u64) -> Result<(), String> {
        if matches!(sym, Symbol::Placeholder(_)) {
            return Err("placeholders carry their own code and cannot be overridden".into());
        }
        if code % 2 == 0 {
            return Err(format!("code {code} for {sym} is even"));
        }
        if let Some(other) = self.reverse.get(&code) {
            if *other != sym {
                return Err(format!("code {code} assigned to both {other} and {sym}"));
            }
        }
        if let Some(old) = self.overrides.insert(sym, code) {
            self.reverse.remove(&old);
        }
        self.reverse.insert(code, sym);
        Ok(())
    }

    fn validate(&self) -> Result<(), CodecError> {
        for (&code, &sym) in &self.reverse {
            if let Some(canon) = canonical_symbol(code) {
                if canon != sym && !self.overrides.contains_key(&canon) {
                    return Err(CodecError::Config {
                        line: 0,
                        message: format!("code {code} for {sym} collides with canonical code of {canon}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Parse a config file: one `symbol = code` per line, `#` comments.
    pub fn parse_config(text: &str) -> Result<Self, CodecError> {
        let mut table = SymbolTable::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| CodecError::Config { line, message };
            let (lhs, rhs) = content.split_once('=').ok_or_else(|| err("expected `symbol = code`".into()))?;
            let sym = Symbol::from_str(lhs.trim()).map_err(|e| err(e.to_string()))?;
            let code: u64 = rhs.trim().parse().map_err(|_| err(format!("bad code `{}`", rhs.trim())))?;
            table.insert(sym, code).map_err(err)?;
        }
        table.validate()?;
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, anyhow::Error> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Ok(Self::parse_config(&text)?)
    }

    pub fn code(&self, s: Symbol) -> Result<u64, CodecError> {
        if let Some(&c) = self.overrides.get(&s) {
            return Ok(c);
        }
        canonical_code(s).ok_or(CodecError::UnmappedSymbol(s))
    }

    /// The structured symbol with this code, if any. Placeholders are not
    /// reported here; see [`SymbolTable::is_placeholder_code`].
    pub fn symbol(&self, code: u64) -> Option<Symbol> {
        if let Some(&s) = self.reverse.get(&code) {
            return Some(s);
        }
        let s = canonical_symbol(code)?;
        (!self.overrides.contains_key(&s)).then_some(s)
    }

    /// Odd codes that are free or belong to a predicate letter may name a
    /// placeholder; the grammar tells the two apart because a predicate
    /// letter is always followed by `(`.
    pub fn is_placeholder_code(&self, code: u64) -> bool {
        code % 2 == 1 && matches!(self.symbol(code), None | Some(Symbol::Pred(_)))
    }

    fn fixed(&self, s: Symbol) -> u64 {
        self.code(s).expect("punctuation always has a code")
    }
}

// ---------------------------------------------------------------------------
// Goedel numbers

/// A Goedel number kept in factored form.
///
/// `Seq([e_0, ..., e_n])` denotes `p_0^val(e_0) * ... * p_n^val(e_n)`.
/// Equality is equality of the denoted integers: a `Leaf` equals a `Seq`
/// exactly when the leaf's integer factors over consecutive primes into
/// the sequence's exponents.
#[derive(Clone, Debug)]
pub enum GoedelNumber {
    Leaf(Nat),
    Seq(Vec<GoedelNumber>),
}

impl PartialEq for GoedelNumber {
    fn eq(&self, other: &Self) -> bool {
        use GoedelNumber::*;
        match (self, other) {
            (Leaf(a), Leaf(b)) => a == b,
            (Seq(a), Seq(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y),
            (Leaf(_), Seq(b)) => self.components().is_some_and(|a| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)),
            (Seq(_), Leaf(_)) => other == self,
        }
    }
}

impl Eq for GoedelNumber {}

/// Exponents of `n` over consecutive primes from 2, or `None` on a gap.
fn split_u64(mut n: u64) -> Option<Vec<GoedelNumber>> {
    if n < 2 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 0;
    while n > 1 {
        let p = primes::nth(i);
        let mut e = 0u64;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e == 0 {
            return None;
        }
        out.push(GoedelNumber::Leaf(Nat::Small(e)));
        i += 1;
    }
    Some(out)
}

fn split_big(n: &BigUint) -> Option<Vec<GoedelNumber>> {
    if let Some(small) = n.to_u64() {
        return split_u64(small);
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while !n.is_one() {
        let p = BigUint::from(primes::nth(i));
        let mut e = 0u64;
        loop {
            let (q, r) = (&n / &p, &n % &p);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e == 0 {
            return None;
        }
        out.push(GoedelNumber::Leaf(Nat::Small(e)));
        i += 1;
    }
    Some(out)
}

impl GoedelNumber {
    pub fn leaf(n: u64) -> Self {
        GoedelNumber::Leaf(Nat::Small(n))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        GoedelNumber::Leaf(Nat::from(n))
    }

    /// `Seq` over the given components.
    pub fn seq(components: Vec<GoedelNumber>) -> Result<Self, CodecError> {
        if components.is_empty() {
            return Err(CodecError::EmptySequence);
        }
        Ok(GoedelNumber::Seq(components))
    }

    /// `2^code`: the number of the one-symbol expression with this code.
    pub fn single(code: u64) -> Self {
        GoedelNumber::Seq(vec![GoedelNumber::leaf(code)])
    }

    pub fn as_leaf(&self) -> Option<&Nat> {
        match self {
            GoedelNumber::Leaf(n) => Some(n),
            GoedelNumber::Seq(_) => None,
        }
    }

    /// The leaf value as a small integer; a `Seq` is never small here.
    pub fn leaf_u64(&self) -> Option<u64> {
        self.as_leaf().and_then(Nat::as_u64)
    }

    /// Sequence view. Leaves are split over consecutive primes on demand.
    pub fn components(&self) -> Option<Cow<'_, [GoedelNumber]>> {
        match self {
            GoedelNumber::Seq(v) => Some(Cow::Borrowed(v.as_slice())),
            GoedelNumber::Leaf(Nat::Small(n)) => split_u64(*n).map(Cow::Owned),
            GoedelNumber::Leaf(Nat::Big(b)) => split_big(b).map(Cow::Owned),
        }
    }

    pub fn is_sequence(&self) -> bool {
        match self {
            GoedelNumber::Seq(_) => true,
            GoedelNumber::Leaf(_) => self.components().is_some(),
        }
    }

    /// `lh(x)`: number of prime factors.
    pub fn lh(&self) -> Result<usize, CodecError> {
        self.components().map(|c| c.len()).ok_or(CodecError::NotASequence)
    }

    /// `(x)_j`, zero-based.
    pub fn component(&self, j: usize) -> Result<GoedelNumber, CodecError> {
        let comps = self.components().ok_or(CodecError::NotASequence)?;
        comps.get(j).cloned().ok_or(CodecError::IndexOutOfRange { index: j, len: comps.len() })
    }

    /// `x * y`: exponent-sequence concatenation.
    pub fn concat(&self, other: &GoedelNumber) -> Result<GoedelNumber, CodecError> {
        let a = self.components().ok_or(CodecError::NotASequence)?;
        let b = other.components().ok_or(CodecError::NotASequence)?;
        let mut out = Vec::with_capacity(a.len() + b.len());
        out.extend(a.iter().cloned());
        out.extend(b.iter().cloned());
        Ok(GoedelNumber::Seq(out))
    }

    /// Total node count of the exponent tree.
    pub fn tower_size(&self) -> usize {
        match self {
            GoedelNumber::Leaf(_) => 1,
            GoedelNumber::Seq(v) => 1 + v.iter().map(GoedelNumber::tower_size).sum::<usize>(),
        }
    }

    /// Upper estimate of `log10` of the denoted integer (may be infinite).
    pub fn log10_estimate(&self) -> f64 {
        match self {
            GoedelNumber::Leaf(n) => n.log10(),
            GoedelNumber::Seq(v) => v
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let le = e.log10_estimate();
                    let val = if le > 300.0 { f64::INFINITY } else { 10f64.powf(le) };
                    val * (primes::nth(i) as f64).log10()
                })
                .sum(),
        }
    }

    /// The denoted integer, if it has at most `digit_cap` decimal digits.
    pub fn materialize(&self, digit_cap: usize) -> Result<BigUint, CodecError> {
        let est = self.log10_estimate();
        if !est.is_finite() || est > digit_cap as f64 + 1.0 {
            return Err(CodecError::CapExceeded { cap: digit_cap });
        }
        let n = self.materialize_unchecked();
        if est > digit_cap as f64 - 1.0 && n >= BigUint::from(10u32).pow(digit_cap as u32) {
            return Err(CodecError::CapExceeded { cap: digit_cap });
        }
        Ok(n)
    }

    fn materialize_unchecked(&self) -> BigUint {
        match self {
            GoedelNumber::Leaf(n) => n.to_biguint(),
            GoedelNumber::Seq(v) => v.iter().enumerate().fold(BigUint::one(), |acc, (i, e)| {
                let exp = e.materialize_unchecked().to_u32().expect("exponent bounded by digit cap");
                acc * BigUint::from(primes::nth(i)).pow(exp)
            }),
        }
    }

    /// Collapse every component to a leaf holding its integer value when that
    /// value has at most `digit_cap` digits.
    pub fn normalize(&self, digit_cap: usize) -> GoedelNumber {
        match self {
            GoedelNumber::Leaf(_) => self.clone(),
            GoedelNumber::Seq(v) => GoedelNumber::Seq(
                v.iter()
                    .map(|e| match e.materialize(digit_cap) {
                        Ok(n) => GoedelNumber::from_biguint(n),
                        Err(_) => e.normalize(digit_cap),
                    })
                    .collect(),
            ),
        }
    }

    /// Structural equality (same tree, same leaves), stricter than `==`.
    pub fn same_shape(&self, other: &GoedelNumber) -> bool {
        match (self, other) {
            (GoedelNumber::Leaf(a), GoedelNumber::Leaf(b)) => a == b,
            (GoedelNumber::Seq(a), GoedelNumber::Seq(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    /// Leaf codes of a one-level sequence, if every component is a small odd leaf.
    pub fn symbol_codes(&self) -> Option<Vec<u64>> {
        let comps = self.components()?;
        comps.iter().map(|c| c.leaf_u64().filter(|n| n % 2 == 1)).collect()
    }
}

/// Factor `n` over consecutive primes from 2.
pub fn factorize(n: &BigUint, digit_limit: usize) -> Result<GoedelNumber, CodecError> {
    let digits = ((n.bits() as f64) * std::f64::consts::LOG10_2).floor() as usize + 1;
    if digits > digit_limit {
        return Err(CodecError::TooLarge { digits, limit: digit_limit });
    }
    split_big(n).map(GoedelNumber::Seq).ok_or(CodecError::NotASequence)
}

impl fmt::Display for GoedelNumber {
    /// Factored rendering: `2^3 * 3^9 * 5^51 * 7^5`, nested components in
    /// brackets, `2^[2^3 * 3^9] * 3^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoedelNumber::Leaf(n) => write!(f, "{n}"),
            GoedelNumber::Seq(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match e {
                        GoedelNumber::Leaf(n) => write!(f, "{}^{n}", primes::nth(i))?,
                        GoedelNumber::Seq(_) => write!(f, "{}^[{e}]", primes::nth(i))?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct FactoredParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl FactoredParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, CodecError> {
        Err(CodecError::Syntax { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigUint, CodecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii");
        Ok(text.parse().expect("digit string parses"))
    }

    fn product(&mut self) -> Result<GoedelNumber, CodecError> {
        let mut comps = Vec::new();
        loop {
            let at = self.pos;
            let base = self.number()?;
            if !self.eat(b'^') {
                return self.err("expected `^`");
            }
            let expected = primes::nth(comps.len());
            if base != BigUint::from(expected) {
                self.pos = at;
                return Err(CodecError::NotASequence);
            }
            let exp = if self.eat(b'[') {
                let inner = self.exponent_body()?;
                if !self.eat(b']') {
                    return self.err("expected `]`");
                }
                inner
            } else {
                let n = self.number()?;
                if n.is_zero() {
                    return Err(CodecError::NotASequence);
                }
                GoedelNumber::from_biguint(n)
            };
            comps.push(exp);
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(GoedelNumber::Seq(comps))
    }

    fn exponent_body(&mut self) -> Result<GoedelNumber, CodecError> {
        let save = self.pos;
        let n = self.number()?;
        if self.eat(b'^') {
            self.pos = save;
            self.product()
        } else {
            Ok(GoedelNumber::from_biguint(n))
        }
    }
}

impl FromStr for GoedelNumber {
    type Err = CodecError;

    /// Parses the factored rendering or a bare decimal integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = FactoredParser { src: s.as_bytes(), pos: 0 };
        let g = p.exponent_body()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("trailing input");
        }
        Ok(g)
    }
}

// ---------------------------------------------------------------------------
// Encoding

/// Number a raw symbol string, without any well-formedness requirement.
pub fn encode_symbols(symbols: &[Symbol], table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    if symbols.is_empty() {
        return Err(CodecError::EmptySequence);
    }
    symbols
        .iter()
        .map(|&s| {
            let code = table.code(s)?;
            if let Symbol::Placeholder(c) = s {
                if !table.is_placeholder_code(c) {
                    return Err(CodecError::PlaceholderCollision(c));
                }
            }
            Ok(GoedelNumber::leaf(code))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(GoedelNumber::Seq)
}

pub fn encode_expression<'a>(expr: impl Into<ExprRef<'a>>, table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    encode_symbols(&flatten(expr), table)
}

pub fn encode_formula(f: &Formula, table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    encode_expression(f, table)
}

pub fn encode_sequence<'a, E>(exprs: impl IntoIterator<Item = E>, table: &SymbolTable) -> Result<GoedelNumber, CodecError>
where
    E: Into<ExprRef<'a>>,
{
    let comps = exprs
        .into_iter()
        .map(|e| encode_expression(e, table))
        .collect::<Result<Vec<_>, _>>()?;
    GoedelNumber::seq(comps)
}

/// `Neg(v) = 2^c(() * 2^c(¬) * v * 2^c())`.
pub fn neg_code(v: &GoedelNumber, table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    let open = GoedelNumber::single(table.fixed(Symbol::LParen));
    let not = GoedelNumber::single(table.fixed(Symbol::Not));
    let close = GoedelNumber::single(table.fixed(Symbol::RParen));
    open.concat(&not)?.concat(v)?.concat(&close)
}

// ---------------------------------------------------------------------------
// Decoding

/// Result of [`decode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Expression(Expression),
    Sequence(Vec<Expression>),
}

struct CodeParser<'a> {
    codes: &'a [u64],
    pos: usize,
    table: &'a SymbolTable,
    lparen: u64,
    rparen: u64,
    comma: u64,
    not: u64,
    implies: u64,
    forall: u64,
}

type ParseResult<T> = Result<T, String>;

impl<'a> CodeParser<'a> {
    fn new(codes: &'a [u64], table: &'a SymbolTable) -> Self {
        CodeParser {
            codes,
            pos: 0,
            table,
            lparen: table.fixed(Symbol::LParen),
            rparen: table.fixed(Symbol::RParen),
            comma: table.fixed(Symbol::Comma),
            not: table.fixed(Symbol::Not),
            implies: table.fixed(Symbol::Implies),
            forall: table.fixed(Symbol::Forall),
        }
    }

    fn peek(&self, k: usize) -> Option<u64> {
        self.codes.get(self.pos + k).copied()
    }

    fn expect(&mut self, code: u64, what: &str) -> ParseResult<()> {
        match self.peek(0) {
            Some(c) if c == code => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(format!("expected {what} at position {}, found code {c}", self.pos)),
            None => Err(format!("expected {what} at position {}, found end", self.pos)),
        }
    }

    fn formula(&mut self) -> ParseResult<Formula> {
        let c = self.peek(0).ok_or_else(|| format!("expected formula at position {}, found end", self.pos))?;
        if c == self.lparen {
            if self.peek(1) == Some(self.not) {
                self.pos += 2;
                let a = self.formula()?;
                self.expect(self.rparen, "`)`")?;
                return Ok(Formula::not(a));
            }
            if self.peek(1) == Some(self.lparen) && self.peek(2) == Some(self.forall) {
                self.pos += 3;
                let v = match self.peek(0).and_then(|c| self.table.symbol(c)) {
                    Some(Symbol::Variable(v)) => v,
                    _ => return Err(format!("expected variable at position {}", self.pos)),
                };
                self.pos += 1;
                self.expect(self.rparen, "`)`")?;
                let body = self.formula()?;
                self.expect(self.rparen, "`)`")?;
                return Ok(Formula::forall(v, body));
            }
            self.pos += 1;
            let a = self.formula()?;
            self.expect(self.implies, "`→`")?;
            let b = self.formula()?;
            self.expect(self.rparen, "`)`")?;
            return Ok(Formula::implies(a, b));
        }
        if let Some(Symbol::Pred(p)) = self.table.symbol(c) {
            if self.peek(1) == Some(self.lparen) {
                self.pos += 1;
                let args = self.arguments(p.arity)?;
                return Ok(Formula::Atom(p, args));
            }
        }
        if self.table.is_placeholder_code(c) {
            self.pos += 1;
            return Ok(Formula::Placeholder(c));
        }
        Err(format!("code {c} at position {} cannot start a formula", self.pos))
    }

    fn arguments(&mut self, arity: u32) -> ParseResult<Vec<Term>> {
        self.expect(self.lparen, "`(`")?;
        let mut args = Vec::with_capacity(arity as usize);
        for i in 0..arity {
            if i > 0 {
                self.expect(self.comma, "`,`")?;
            }
            args.push(self.term()?);
        }
        self.expect(self.rparen, "`)`")?;
        Ok(args)
    }

    fn term(&mut self) -> ParseResult<Term> {
        let c = self.peek(0).ok_or_else(|| format!("expected term at position {}, found end", self.pos))?;
        match self.table.symbol(c) {
            Some(Symbol::Variable(v)) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Symbol::Constant(k)) => {
                self.pos += 1;
                Ok(Term::Const(k))
            }
            Some(Symbol::Func(f)) => {
                self.pos += 1;
                let args = if f.arity == 0 { Vec::new() } else { self.arguments(f.arity)? };
                Ok(Term::App(f, args))
            }
            _ => Err(format!("code {c} at position {} cannot start a term", self.pos)),
        }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek(0).and_then(|c| self.table.symbol(c)),
            Some(Symbol::Variable(_) | Symbol::Constant(_) | Symbol::Func(_))
        )
    }

    fn finish<T>(&self, value: T) -> ParseResult<T> {
        if self.pos == self.codes.len() {
            Ok(value)
        } else {
            Err(format!("trailing symbols from position {}", self.pos))
        }
    }
}

/// Read a symbol-code string as a term or formula.
pub fn parse_codes(codes: &[u64], table: &SymbolTable) -> Result<Expression, CodecError> {
    let mut p = CodeParser::new(codes, table);
    let result = if p.starts_term() {
        p.term().map(Expression::Term)
    } else {
        p.formula().map(Expression::Formula)
    };
    result.and_then(|e| p.finish(e)).map_err(CodecError::NotACode)
}

/// Read a symbol-code string as a formula.
pub fn parse_formula_codes(codes: &[u64], table: &SymbolTable) -> Result<Formula, CodecError> {
    let mut p = CodeParser::new(codes, table);
    p.formula().and_then(|f| p.finish(f)).map_err(CodecError::NotACode)
}

fn decode_expression(g: &GoedelNumber, table: &SymbolTable) -> Result<Expression, CodecError> {
    let codes = g
        .symbol_codes()
        .ok_or_else(|| CodecError::NotACode("exponents are not all odd symbol codes".into()))?;
    parse_codes(&codes, table)
}

/// Decode an expression or a sequence of expressions.
pub fn decode(g: &GoedelNumber, table: &SymbolTable) -> Result<Decoded, CodecError> {
    let comps = g.components().ok_or_else(|| CodecError::NotACode("not a sequence number".into()))?;
    let all_odd_leaves = comps.iter().all(|c| c.leaf_u64().is_some_and(|n| n % 2 == 1));
    if all_odd_leaves {
        return decode_expression(g, table).map(Decoded::Expression);
    }
    comps
        .iter()
        .map(|c| decode_expression(c, table))
        .collect::<Result<Vec<_>, _>>()
        .map(Decoded::Sequence)
}

/// Decode a formula code; `None` if `g` is not one.
pub fn decode_formula(g: &GoedelNumber, table: &SymbolTable) -> Option<Formula> {
    let codes = g.symbol_codes()?;
    parse_formula_codes(&codes, table).ok()
}
