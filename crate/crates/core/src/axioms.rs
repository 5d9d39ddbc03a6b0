//! Axiom schemas and recognizers.
//!
//! The axiom set is data: [`AxiomSet::parse`] reads lines `ID @schema` or
//! `ID <formula>`, and the recognizer reports the first entry that matches.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reader::{self, ReadError};
use crate::syntax::{arith, Formula, Term, Var};

const STANDARD: &str = include_str!("../data/axioms.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    /// `(B → (C → B))`
    PropositionalK,
    /// `((B → (C → D)) → ((B → C) → (B → D)))`
    PropositionalS,
    /// `((¬C → ¬B) → ((¬C → B) → C))`
    Contraposition,
    /// `(∀x B → B[t/x])`, `t` free for `x` in `B`.
    Instantiation,
    /// `(∀x (B → C) → (B → ∀x C))`, `x` not free in `B`.
    QuantifierDistribution,
    /// `(B[0/x] → (∀x (B → B[x'/x]) → ∀x B))`
    Induction,
}

impl Builtin {
    fn from_name(name: &str) -> Option<Builtin> {
        Some(match name {
            "propositional-k" => Builtin::PropositionalK,
            "propositional-s" => Builtin::PropositionalS,
            "contraposition" => Builtin::Contraposition,
            "instantiation" => Builtin::Instantiation,
            "quantifier-distribution" => Builtin::QuantifierDistribution,
            "induction" => Builtin::Induction,
            _ => return None,
        })
    }

    pub fn is_logical(self) -> bool {
        !matches!(self, Builtin::Induction)
    }

    pub fn matches(self, f: &Formula) -> bool {
        match self {
            Builtin::PropositionalK => is_k(f),
            Builtin::PropositionalS => is_s(f),
            Builtin::Contraposition => is_contraposition(f),
            Builtin::Instantiation => is_instantiation(f),
            Builtin::QuantifierDistribution => is_distribution(f),
            Builtin::Induction => is_induction(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schema {
    Builtin(Builtin),
    Fixed(Formula),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub id: String,
    pub schema: Schema,
}

impl Axiom {
    pub fn is_logical(&self) -> bool {
        matches!(self.schema, Schema::Builtin(b) if b.is_logical())
    }

    pub fn matches(&self, f: &Formula) -> bool {
        match &self.schema {
            Schema::Builtin(b) => b.matches(f),
            Schema::Fixed(g) => g == f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomSetError {
    #[error("axiom line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("axiom line {line}: {source}")]
    Formula { line: usize, source: ReadError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSet {
    axioms: Vec<Axiom>,
}

impl Default for AxiomSet {
    fn default() -> Self {
        AxiomSet::standard()
    }
}

impl AxiomSet {
    /// Logical axioms, arithmetic S1–S9 and the two order axioms.
    pub fn standard() -> Self {
        AxiomSet::parse(STANDARD).expect("bundled axiom set parses")
    }

    /// The standard set without the order axioms.
    pub fn peano() -> Self {
        let mut set = AxiomSet::standard();
        set.axioms.retain(|a| !a.id.starts_with('O'));
        set
    }

    pub fn parse(text: &str) -> Result<Self, AxiomSetError> {
        let mut axioms = Vec::new();
        let mut ids = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (id, body) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| AxiomSetError::Line { line, message: "expected `ID schema`".into() })?;
            let body = body.trim();
            let schema = match body.strip_prefix('@') {
                Some(name) => Schema::Builtin(
                    Builtin::from_name(name)
                        .ok_or_else(|| AxiomSetError::Line { line, message: format!("unknown schema `{name}`") })?,
                ),
                None => Schema::Fixed(
                    reader::parse_formula(body).map_err(|source| AxiomSetError::Formula { line, source })?,
                ),
            };
            if !ids.insert(id.to_string()) {
                return Err(AxiomSetError::Line { line, message: format!("duplicate id `{id}`") });
            }
            axioms.push(Axiom { id: id.to_string(), schema });
        }
        Ok(AxiomSet { axioms })
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn get(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    /// Id of the first axiom `f` is an instance of.
    pub fn recognize(&self, f: &Formula) -> Option<&str> {
        self.axioms.iter().find(|a| a.matches(f)).map(|a| a.id.as_str())
    }

    pub fn is_logical_axiom(&self, f: &Formula) -> bool {
        self.axioms.iter().any(|a| a.is_logical() && a.matches(f))
    }

    pub fn is_proper_axiom(&self, f: &Formula) -> bool {
        self.axioms.iter().any(|a| !a.is_logical() && a.matches(f))
    }

    /// The fixed (non-schematic) proper axioms.
    pub fn fixed_formulas(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.axioms.iter().filter_map(|a| match &a.schema {
            Schema::Fixed(f) => Some((a.id.as_str(), f)),
            Schema::Builtin(_) => None,
        })
    }

    pub fn has_builtin(&self, b: Builtin) -> Option<&str> {
        self.axioms
            .iter()
            .find(|a| a.schema == Schema::Builtin(b))
            .map(|a| a.id.as_str())
    }
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(a, b) => Some((a, b)),
        _ => None,
    }
}

fn neg(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn is_k(f: &Formula) -> bool {
    (|| {
        let (b, rest) = imp(f)?;
        let (_, b2) = imp(rest)?;
        Some(b == b2)
    })()
    .unwrap_or(false)
}

fn is_s(f: &Formula) -> bool {
    (|| {
        let (l, r) = imp(f)?;
        let (b, cd) = imp(l)?;
        let (c, d) = imp(cd)?;
        let (bc, bd) = imp(r)?;
        let (b2, c2) = imp(bc)?;
        let (b3, d2) = imp(bd)?;
        Some(b == b2 && b == b3 && c == c2 && d == d2)
    })()
    .unwrap_or(false)
}

fn is_contraposition(f: &Formula) -> bool {
    (|| {
        let (l, r) = imp(f)?;
        let (nc, nb) = imp(l)?;
        let c = neg(nc)?;
        let b = neg(nb)?;
        let (ncb, c2) = imp(r)?;
        let (nc2, b2) = imp(ncb)?;
        Some(nc2 == nc && b2 == b && c2 == c)
    })()
    .unwrap_or(false)
}

/// Find `t` with `pattern[t/x] == target`, where `None` inside means `x`
/// never occurs free (any `t` works).
struct Instantiation {
    x: Var,
    t: Option<Term>,
}

impl Instantiation {
    fn term(&mut self, p: &Term, g: &Term, bound: bool) -> bool {
        match p {
            Term::Var(v) if *v == self.x && !bound => match &self.t {
                Some(t) => t == g,
                None => {
                    self.t = Some(g.clone());
                    true
                }
            },
            Term::Var(_) | Term::Const(_) => p == g,
            Term::App(f, args) => match g {
                Term::App(f2, args2) if f == f2 && args.len() == args2.len() => {
                    args.iter().zip(args2).all(|(a, b)| self.term(a, b, bound))
                }
                _ => false,
            },
        }
    }

    fn formula(&mut self, p: &Formula, g: &Formula, bound: bool) -> bool {
        match (p, g) {
            (Formula::Atom(a, xs), Formula::Atom(b, ys)) => {
                a == b && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| self.term(s, t, bound))
            }
            (Formula::Not(a), Formula::Not(b)) => self.formula(a, b, bound),
            (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
                self.formula(a1, a2, bound) && self.formula(b1, b2, bound)
            }
            (Formula::Forall(y, a), Formula::Forall(z, b)) => y == z && self.formula(a, b, bound || *y == self.x),
            (Formula::Placeholder(a), Formula::Placeholder(b)) => a == b,
            _ => false,
        }
    }
}

/// The term `t` such that `body[t/x] == target` with `t` free for `x`, if
/// one exists; `Some(None)` when `x` does not occur free and the two are equal.
pub fn instantiation_term(body: &Formula, x: Var, target: &Formula) -> Option<Option<Term>> {
    let mut m = Instantiation { x, t: None };
    if !m.formula(body, target, false) {
        return None;
    }
    match m.t {
        Some(t) => body.free_for(&t, x).then_some(Some(t)),
        None => Some(None),
    }
}

fn is_instantiation(f: &Formula) -> bool {
    (|| {
        let (l, r) = imp(f)?;
        let Formula::Forall(x, body) = l else { return None };
        instantiation_term(body, *x, r).map(|_| true)
    })()
    .unwrap_or(false)
}

fn is_distribution(f: &Formula) -> bool {
    (|| {
        let (l, r) = imp(f)?;
        let Formula::Forall(x, bc) = l else { return None };
        let (b, c) = imp(bc)?;
        let (b2, fc) = imp(r)?;
        let Formula::Forall(x2, c2) = fc else { return None };
        Some(x == x2 && b == b2 && c == &**c2 && !b.is_free(*x))
    })()
    .unwrap_or(false)
}

fn is_induction(f: &Formula) -> bool {
    (|| {
        let (base, rest) = imp(f)?;
        let (step, concl) = imp(rest)?;
        let Formula::Forall(x, b) = concl else { return None };
        let Formula::Forall(x2, step_body) = step else { return None };
        if x != x2 {
            return None;
        }
        let (b2, bs) = imp(step_body)?;
        if b2 != &**b {
            return None;
        }
        let zero = arith::zero();
        let succ = arith::succ(Term::Var(*x));
        let ok = b.free_for(&succ, *x)
            && *base == b.substitute(*x, &zero)
            && *bs == b.substitute(*x, &succ);
        Some(ok)
    })()
    .unwrap_or(false)
}

/// The induction instance for `B` over `x`.
pub fn induction_instance(b: &Formula, x: Var) -> Formula {
    let succ = arith::succ(Term::Var(x));
    Formula::implies(
        b.substitute(x, &arith::zero()),
        Formula::implies(
            Formula::forall(x, Formula::implies(b.clone(), b.substitute(x, &succ))),
            Formula::forall(x, b.clone()),
        ),
    )
}
