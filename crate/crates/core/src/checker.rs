//! AST-level proof checking and compilation of scripts to proof numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axioms::AxiomSet;
use crate::codec::{self, CodecError, GoedelNumber, SymbolTable};
use crate::reader::{Justification, ProofScript};
use crate::syntax::{Formula, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineStatus {
    Accepted(String),
    Rejected(String),
}

impl LineStatus {
    pub fn is_accepted(&self) -> bool {
        matches!(self, LineStatus::Accepted(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    pub lines: Vec<(usize, LineStatus)>,
    pub theorem: Option<Formula>,
    /// Lines accepted by a rule other than the one cited.
    pub miscited: Vec<usize>,
}

impl CheckReport {
    /// Every line accepted by the rule it cites.
    pub fn ok_as_cited(&self) -> bool {
        self.ok && self.miscited.is_empty()
    }
}

impl fmt::Display for CheckReport {
    /// One line per proof line: `n: ACCEPT rule` or `n: REJECT reason`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, status) in &self.lines {
            match status {
                LineStatus::Accepted(rule) => writeln!(f, "{n}: ACCEPT {rule}")?,
                LineStatus::Rejected(reason) => writeln!(f, "{n}: REJECT {reason}")?,
            }
        }
        Ok(())
    }
}

/// First schema `phi` is an instance of, in the axiom set's order.
pub fn recognize_axiom<'a>(phi: &Formula, axioms: &'a AxiomSet) -> Option<&'a str> {
    axioms.recognize(phi)
}

/// Any rule that yields line `idx` from the lines before it.
fn any_rule(script: &ProofScript, idx: usize, axioms: &AxiomSet) -> Option<String> {
    let current = &script.lines[idx].formula;
    if let Some(id) = axioms.recognize(current) {
        return Some(format!("axiom {id}"));
    }
    let earlier = &script.lines[..idx];
    if let Formula::Forall(x, body) = current {
        if let Some(i) = earlier.iter().position(|l| l.formula == **body) {
            return Some(format!("gen {} x{}", i + 1, x.0));
        }
    }
    earlier.iter().enumerate().find_map(|(j, l)| match &l.formula {
        Formula::Implies(a, b) if **b == *current => {
            earlier.iter().position(|l| l.formula == **a).map(|i| format!("mp {}, {}", i + 1, j + 1))
        }
        _ => None,
    })
}

/// Status of one line and whether it was accepted despite its citation.
fn check_line(script: &ProofScript, idx: usize, axioms: &AxiomSet) -> (LineStatus, bool) {
    let line = &script.lines[idx];
    match cited_rule(script, idx, axioms) {
        Ok(rule) => (LineStatus::Accepted(rule), false),
        Err(reason) if line.formula.well_formed() && line.justification != Justification::Premise => {
            match any_rule(script, idx, axioms) {
                Some(rule) => (LineStatus::Accepted(format!("{rule} [cited {}: {reason}]", line.justification)), true),
                None => (LineStatus::Rejected(reason), false),
            }
        }
        Err(reason) => (LineStatus::Rejected(reason), false),
    }
}

fn cited_rule(script: &ProofScript, idx: usize, axioms: &AxiomSet) -> Result<String, String> {
    let line = &script.lines[idx];
    let current = &line.formula;
    if !current.well_formed() {
        return Err("ill-formed formula".into());
    }
    // 1-based citation, must be strictly earlier
    let cited = |i: usize| -> Result<&Formula, String> {
        if i == 0 || i > idx {
            Err(format!("line {i} is not an earlier line"))
        } else {
            Ok(&script.lines[i - 1].formula)
        }
    };
    match &line.justification {
        Justification::Axiom(None) => match axioms.recognize(current) {
            Some(id) => Ok(format!("axiom {id}")),
            None => Err("not an axiom".to_string()),
        },
        Justification::Axiom(Some(id)) => match axioms.get(id) {
            None => Err(format!("unknown axiom {id}")),
            Some(a) if a.matches(current) => Ok(format!("axiom {id}")),
            Some(_) => Err(format!("not an instance of {id}")),
        },
        Justification::Mp(i, j) => cited(*i).and_then(|a| {
            let imp = cited(*j)?;
            match imp {
                Formula::Implies(l, r) if **l == *a && **r == *current => Ok(format!("mp {i}, {j}")),
                _ => Err(format!("line {j} is not (line {i} -> line {})", idx + 1)),
            }
        }),
        Justification::Gen(i, v) => cited(*i).and_then(|a| match current {
            Formula::Forall(x, body) if x == v && **body == *a => Ok(format!("gen {i} x{}", v.0)),
            _ => Err(format!("not forall x{} of line {i}", v.0)),
        }),
        Justification::Premise => Ok("premise".to_string()),
    }
}

/// Check each line against its cited justification. A line whose citation
/// fails is still accepted if some other axiom, MP or Gen step yields it,
/// and is then listed in `miscited`. Premise lines are accepted.
pub fn check_proof(script: &ProofScript, axioms: &AxiomSet) -> CheckReport {
    let mut miscited = Vec::new();
    let mut lines = Vec::with_capacity(script.len());
    for i in 0..script.len() {
        let (status, wrong_citation) = check_line(script, i, axioms);
        if wrong_citation {
            miscited.push(i + 1);
        }
        lines.push((i + 1, status));
    }
    let ok = !lines.is_empty() && lines.iter().all(|(_, s)| s.is_accepted());
    CheckReport { ok, theorem: if ok { script.last_formula().cloned() } else { None }, lines, miscited }
}

/// Number the script's formulas as a sequence, valid or not.
pub fn compile_proof(script: &ProofScript, table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    codec::encode_sequence(script.formulas(), table)
}

/// Number a script given as raw symbol strings, one per line, without
/// re-spelling them.
pub fn compile_symbols(lines: &[Vec<Symbol>], table: &SymbolTable) -> Result<GoedelNumber, CodecError> {
    let comps = lines.iter().map(|l| codec::encode_symbols(l, table)).collect::<Result<Vec<_>, _>>()?;
    GoedelNumber::seq(comps)
}
