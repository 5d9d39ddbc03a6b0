//! Abstract syntax for the first-order language of Peano Arithmetic.
//!
//! Terms and formulas are immutable trees. [`flatten`] produces the
//! primitive-symbol spelling that the codec numbers; the spelling is fully
//! parenthesized so that the arithmetized templates for negation, modus
//! ponens and generalization apply to it literally:
//!
//! * negation: `( ¬ φ )`
//! * implication: `( φ → ψ )`
//! * quantification: `( ( ∀ v ) φ )`

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Individual variable `x_k`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub u32);

/// Individual constant `a_k`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Const(pub u32);

/// Function letter `f^n_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FuncLetter {
    pub arity: u32,
    pub index: u32,
}

/// Predicate letter `A^n_k`, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PredLetter {
    pub arity: u32,
    pub index: u32,
}

impl FuncLetter {
    pub const fn new(arity: u32, index: u32) -> Self {
        FuncLetter { arity, index }
    }
}

impl PredLetter {
    pub const fn new(arity: u32, index: u32) -> Self {
        PredLetter { arity, index }
    }
}

/// A primitive symbol of the language.
///
/// `Placeholder` is a schematic sentence letter (such as the `B` of a
/// propositional example) that carries its own numeric code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    LParen,
    RParen,
    Comma,
    Not,
    Implies,
    Forall,
    Variable(Var),
    Constant(Const),
    Func(FuncLetter),
    Pred(PredLetter),
    Placeholder(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(Var),
    Const(Const),
    App(FuncLetter, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(PredLetter, Vec<Term>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Placeholder(u64),
}

/// Either kind of expression that receives a Goedel number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expression {
    Term(Term),
    Formula(Formula),
}

impl From<Term> for Expression {
    fn from(t: Term) -> Self {
        Expression::Term(t)
    }
}

impl From<Formula> for Expression {
    fn from(f: Formula) -> Self {
        Expression::Formula(f)
    }
}

impl Term {
    pub fn var(k: u32) -> Term {
        Term::Var(Var(k))
    }

    pub fn constant(k: u32) -> Term {
        Term::Const(Const(k))
    }

    pub fn app(letter: FuncLetter, args: Vec<Term>) -> Term {
        Term::App(letter, args)
    }

    pub fn well_formed(&self) -> bool {
        match self {
            Term::Var(v) => v.0 >= 1,
            Term::Const(c) => c.0 >= 1,
            Term::App(f, args) => {
                f.index >= 1 && args.len() == f.arity as usize && args.iter().all(Term::well_formed)
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn contains_var(&self, x: Var) -> bool {
        match self {
            Term::Var(v) => *v == x,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Replace every occurrence of `x` by `t`.
    pub fn substitute(&self, x: Var, t: &Term) -> Term {
        match self {
            Term::Var(v) if *v == x => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.substitute(x, t)).collect()),
        }
    }

    fn spell(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Var(v) => out.push(Symbol::Variable(*v)),
            Term::Const(c) => out.push(Symbol::Constant(*c)),
            Term::App(f, args) => {
                out.push(Symbol::Func(*f));
                if !args.is_empty() {
                    out.push(Symbol::LParen);
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(Symbol::Comma);
                        }
                        a.spell(out);
                    }
                    out.push(Symbol::RParen);
                }
            }
        }
    }
}

impl Formula {
    pub fn atom(letter: PredLetter, args: Vec<Term>) -> Formula {
        Formula::Atom(letter, args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(x: Var, body: Formula) -> Formula {
        Formula::Forall(x, Box::new(body))
    }

    pub fn placeholder(code: u64) -> Formula {
        Formula::Placeholder(code)
    }

    pub fn well_formed(&self) -> bool {
        match self {
            Formula::Atom(p, args) => {
                p.arity >= 1
                    && p.index >= 1
                    && args.len() == p.arity as usize
                    && args.iter().all(Term::well_formed)
            }
            Formula::Not(a) => a.well_formed(),
            Formula::Implies(a, b) => a.well_formed() && b.well_formed(),
            Formula::Forall(x, body) => x.0 >= 1 && body.well_formed(),
            Formula::Placeholder(c) => c % 2 == 1,
        }
    }

    /// Number of AST nodes, terms included.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Not(a) => 1 + a.size(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, body) => 1 + body.size(),
            Formula::Placeholder(_) => 1,
        }
    }

    pub fn is_free(&self, x: Var) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|t| t.contains_var(x)),
            Formula::Not(a) => a.is_free(x),
            Formula::Implies(a, b) => a.is_free(x) || b.is_free(x),
            Formula::Forall(y, body) => *y != x && body.is_free(x),
            Formula::Placeholder(_) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|t| t.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(y, body) => {
                let fresh = bound.insert(*y);
                body.collect_free(bound, out);
                if fresh {
                    bound.remove(y);
                }
            }
            Formula::Placeholder(_) => {}
        }
    }

    /// Every variable that occurs, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(&mut out)),
            Formula::Forall(y, _) => {
                out.insert(*y);
            }
            _ => {}
        });
        out
    }

    /// Pre-order walk over subformulas.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Forall(_, a) => a.visit(f),
            Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Atom(..) | Formula::Placeholder(_) => {}
        }
    }

    /// Every term occurring as an argument (recursively, subterms included).
    pub fn terms(&self) -> BTreeSet<Term> {
        fn subterms(t: &Term, out: &mut BTreeSet<Term>) {
            out.insert(t.clone());
            if let Term::App(_, args) = t {
                args.iter().for_each(|a| subterms(a, out));
            }
        }
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(_, args) = f {
                args.iter().for_each(|t| subterms(t, &mut out));
            }
        });
        out
    }

    /// `t` is free for `x` in `self`: no free occurrence of `x` lies within
    /// the scope of a quantifier binding a variable of `t`.
    pub fn free_for(&self, t: &Term, x: Var) -> bool {
        let mut tv = BTreeSet::new();
        t.collect_vars(&mut tv);
        self.free_for_inner(&tv, x, false)
    }

    fn free_for_inner(&self, tv: &BTreeSet<Var>, x: Var, captured: bool) -> bool {
        match self {
            Formula::Atom(_, args) => !captured || !args.iter().any(|a| a.contains_var(x)),
            Formula::Not(a) => a.free_for_inner(tv, x, captured),
            Formula::Implies(a, b) => {
                a.free_for_inner(tv, x, captured) && b.free_for_inner(tv, x, captured)
            }
            Formula::Forall(y, body) => {
                if *y == x {
                    true
                } else {
                    body.free_for_inner(tv, x, captured || tv.contains(y))
                }
            }
            Formula::Placeholder(_) => true,
        }
    }

    /// Substitute `t` for the free occurrences of `x`. No renaming is done;
    /// callers check [`Formula::free_for`] where capture matters.
    pub fn substitute(&self, x: Var, t: &Term) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(*p, args.iter().map(|a| a.substitute(x, t)).collect()),
            Formula::Not(a) => Formula::not(a.substitute(x, t)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(x, t), b.substitute(x, t)),
            Formula::Forall(y, body) => {
                if *y == x {
                    self.clone()
                } else {
                    Formula::forall(*y, body.substitute(x, t))
                }
            }
            Formula::Placeholder(_) => self.clone(),
        }
    }

    pub fn placeholders(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Placeholder(c) = f {
                out.insert(*c);
            }
        });
        out
    }

    fn spell(&self, out: &mut Vec<Symbol>) {
        match self {
            Formula::Atom(p, args) => {
                out.push(Symbol::Pred(*p));
                out.push(Symbol::LParen);
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(Symbol::Comma);
                    }
                    a.spell(out);
                }
                out.push(Symbol::RParen);
            }
            Formula::Not(a) => {
                out.push(Symbol::LParen);
                out.push(Symbol::Not);
                a.spell(out);
                out.push(Symbol::RParen);
            }
            Formula::Implies(a, b) => {
                out.push(Symbol::LParen);
                a.spell(out);
                out.push(Symbol::Implies);
                b.spell(out);
                out.push(Symbol::RParen);
            }
            Formula::Forall(x, body) => {
                out.extend([Symbol::LParen, Symbol::LParen, Symbol::Forall, Symbol::Variable(*x), Symbol::RParen]);
                body.spell(out);
                out.push(Symbol::RParen);
            }
            Formula::Placeholder(c) => out.push(Symbol::Placeholder(*c)),
        }
    }
}

impl Expression {
    pub fn well_formed(&self) -> bool {
        match self {
            Expression::Term(t) => t.well_formed(),
            Expression::Formula(f) => f.well_formed(),
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Expression::Formula(f) => Some(f),
            Expression::Term(_) => None,
        }
    }
}

/// Linear primitive-symbol spelling of a term or formula.
pub fn flatten<'a>(expr: impl Into<ExprRef<'a>>) -> Vec<Symbol> {
    let mut out = Vec::new();
    match expr.into() {
        ExprRef::Term(t) => t.spell(&mut out),
        ExprRef::Formula(f) => f.spell(&mut out),
    }
    out
}

/// Borrowed view used by [`flatten`] so both AST kinds are accepted.
#[derive(Clone, Copy, Debug)]
pub enum ExprRef<'a> {
    Term(&'a Term),
    Formula(&'a Formula),
}

impl<'a> From<&'a Term> for ExprRef<'a> {
    fn from(t: &'a Term) -> Self {
        ExprRef::Term(t)
    }
}

impl<'a> From<&'a Formula> for ExprRef<'a> {
    fn from(f: &'a Formula) -> Self {
        ExprRef::Formula(f)
    }
}

impl<'a> From<&'a Expression> for ExprRef<'a> {
    fn from(e: &'a Expression) -> Self {
        match e {
            Expression::Term(t) => ExprRef::Term(t),
            Expression::Formula(f) => ExprRef::Formula(f),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::LParen => f.write_str("("),
            Symbol::RParen => f.write_str(")"),
            Symbol::Comma => f.write_str(","),
            Symbol::Not => f.write_str("!"),
            Symbol::Implies => f.write_str("->"),
            Symbol::Forall => f.write_str("forall"),
            Symbol::Variable(v) => write!(f, "x{}", v.0),
            Symbol::Constant(c) => write!(f, "a{}", c.0),
            Symbol::Func(l) => write!(f, "f{}_{}", l.arity, l.index),
            Symbol::Pred(l) => write!(f, "A{}_{}", l.arity, l.index),
            Symbol::Placeholder(c) => write!(f, "B{c}"),
        }
    }
}

/// The arithmetic signature: `=` is `A^2_1`, `0` is `a_1`, successor is
/// `f^1_1`, addition `f^2_1`, multiplication `f^2_2`; the order `<` is the
/// primitive letter `A^2_3`.
pub mod arith {
    use super::*;

    pub const EQ: PredLetter = PredLetter::new(2, 1);
    pub const LESS: PredLetter = PredLetter::new(2, 3);
    pub const SUCC: FuncLetter = FuncLetter::new(1, 1);
    pub const PLUS: FuncLetter = FuncLetter::new(2, 1);
    pub const TIMES: FuncLetter = FuncLetter::new(2, 2);

    pub fn zero() -> Term {
        Term::constant(1)
    }

    pub fn succ(t: Term) -> Term {
        Term::App(SUCC, vec![t])
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::App(PLUS, vec![a, b])
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::App(TIMES, vec![a, b])
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(EQ, vec![a, b])
    }

    pub fn less(a: Term, b: Term) -> Formula {
        Formula::Atom(LESS, vec![a, b])
    }
}


/// Error from [`Symbol::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol `{0}`")]
pub struct UnknownSymbol(pub String);

impl std::str::FromStr for Symbol {
    type Err = UnknownSymbol;

    /// Accepts the ASCII spellings produced by `Display`: `(`, `)`, `,`,
    /// `!`, `->`, `forall`, `x3`, `a1`, `f2_3`, `A2_1`, `B51`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UnknownSymbol(s.to_string());
        let number = |t: &str| -> Result<u32, UnknownSymbol> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let letter = |t: &str| -> Result<(u32, u32), UnknownSymbol> {
            let (n, k) = t.split_once('_').ok_or_else(bad)?;
            Ok((number(n)?, number(k)?))
        };
        Ok(match s {
            "(" => Symbol::LParen,
            ")" => Symbol::RParen,
            "," => Symbol::Comma,
            "!" | "¬" => Symbol::Not,
            "->" | "→" => Symbol::Implies,
            "forall" | "∀" => Symbol::Forall,
            _ => {
                let (head, rest) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
                match head {
                    "x" => Symbol::Variable(Var(number(rest)?)),
                    "a" => Symbol::Constant(Const(number(rest)?)),
                    "f" => {
                        let (n, k) = letter(rest)?;
                        Symbol::Func(FuncLetter::new(n, k))
                    }
                    "A" => {
                        let (n, k) = letter(rest)?;
                        Symbol::Pred(PredLetter::new(n, k))
                    }
                    h if h.len() == 1 && h.as_bytes()[0].is_ascii_uppercase() => {
                        let code: u64 = rest
                            .parse()
                            .ok()
                            .filter(|_| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                            .ok_or_else(bad)?;
                        Symbol::Placeholder(code)
                    }
                    _ => return Err(bad()),
                }
            }
        })
    }
}
