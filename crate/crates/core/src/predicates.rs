//! The arithmetized relations Gd, EVbl, Fml, MP, Gen, LAx, PrAx, Ax, Prf,
//! Pf and Rf as decision procedures on [`GoedelNumber`]s, plus the
//! characteristic functions of Pf and Rf.
//!
//! Everything works on exponent sequences. Bounded quantifiers become
//! iteration over components, so each predicate is polynomial in the tower
//! size of its arguments. Malformed input yields `false`.

use serde::{Deserialize, Serialize};

use crate::axioms::AxiomSet;
use crate::codec::{self, GoedelNumber, SymbolTable};
use crate::syntax::{Formula, Symbol};

/// Value of a characteristic function: 0 when the relation holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharValue(pub u8);

impl CharValue {
    pub fn of(holds: bool) -> Self {
        CharValue(if holds { 0 } else { 1 })
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

/// Structured record of one predicate evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub predicate: String,
    pub arguments: Vec<String>,
    pub result: bool,
    pub steps: u64,
}

/// Counts elementary operations (symbol comparisons and decodes).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Meter {
    pub steps: u64,
}

impl Meter {
    fn add(&mut self, n: usize) {
        self.steps += n as u64;
    }
}

struct Punct {
    lparen: u64,
    rparen: u64,
    implies: u64,
    forall: u64,
}

/// Symbol table plus axiom set: everything the predicates depend on.
#[derive(Clone, Debug, Default)]
pub struct Kernel {
    pub table: SymbolTable,
    pub axioms: AxiomSet,
}

impl Kernel {
    pub fn new(table: SymbolTable, axioms: AxiomSet) -> Self {
        Kernel { table, axioms }
    }

    fn punct(&self) -> Punct {
        let c = |s| self.table.code(s).expect("punctuation has a code");
        Punct {
            lparen: c(Symbol::LParen),
            rparen: c(Symbol::RParen),
            implies: c(Symbol::Implies),
            forall: c(Symbol::Forall),
        }
    }

    fn codes(&self, x: &GoedelNumber, m: &mut Meter) -> Option<Vec<u64>> {
        let codes = x.symbol_codes();
        m.add(codes.as_ref().map_or(1, Vec::len));
        codes
    }

    fn gd_codes(&self, codes: &[u64], m: &mut Meter) -> bool {
        m.add(codes.len());
        codec::parse_codes(codes, &self.table).is_ok()
    }

    fn fml_codes(&self, codes: &[u64], m: &mut Meter) -> Option<Formula> {
        m.add(codes.len());
        codec::parse_formula_codes(codes, &self.table).ok()
    }

    fn is_var(&self, code: u64) -> bool {
        matches!(self.table.symbol(code), Some(Symbol::Variable(_)))
    }

    /// `y = 2^( * x * 2^→ * z * 2^)`, without the Gd side conditions.
    fn mp_shape(&self, p: &Punct, x: &[u64], y: &[u64], z: &[u64], m: &mut Meter) -> bool {
        m.add(y.len());
        y.len() == x.len() + z.len() + 3
            && y[0] == p.lparen
            && y[1..=x.len()] == *x
            && y[x.len() + 1] == p.implies
            && y[x.len() + 2..y.len() - 1] == *z
            && y[y.len() - 1] == p.rparen
    }

    /// `y = 2^( * 2^( * 2^∀ * v * 2^) * x * 2^)` with `v` a variable.
    fn gen_shape(&self, p: &Punct, x: &[u64], y: &[u64], m: &mut Meter) -> bool {
        m.add(y.len());
        y.len() == x.len() + 6
            && y[0] == p.lparen
            && y[1] == p.lparen
            && y[2] == p.forall
            && self.is_var(y[3])
            && y[4] == p.rparen
            && y[5..y.len() - 1] == *x
            && y[y.len() - 1] == p.rparen
    }

    // -- metered forms -------------------------------------------------------

    pub fn gd_m(&self, x: &GoedelNumber, m: &mut Meter) -> bool {
        self.codes(x, m).is_some_and(|c| self.gd_codes(&c, m))
    }

    pub fn evbl_m(&self, v: &GoedelNumber, m: &mut Meter) -> bool {
        m.add(1);
        matches!(self.codes(v, m).as_deref(), Some([c]) if self.is_var(*c))
    }

    pub fn fml_m(&self, x: &GoedelNumber, m: &mut Meter) -> bool {
        self.codes(x, m).is_some_and(|c| self.fml_codes(&c, m).is_some())
    }

    pub fn mp_m(&self, x: &GoedelNumber, y: &GoedelNumber, z: &GoedelNumber, m: &mut Meter) -> bool {
        let (Some(x), Some(y), Some(z)) = (self.codes(x, m), self.codes(y, m), self.codes(z, m)) else {
            return false;
        };
        self.mp_shape(&self.punct(), &x, &y, &z, m) && self.gd_codes(&x, m) && self.gd_codes(&z, m)
    }

    pub fn gen_m(&self, x: &GoedelNumber, y: &GoedelNumber, m: &mut Meter) -> bool {
        let (Some(x), Some(y)) = (self.codes(x, m), self.codes(y, m)) else {
            return false;
        };
        self.gen_shape(&self.punct(), &x, &y, m) && self.gd_codes(&x, m)
    }

    fn axiom_by(&self, y: &GoedelNumber, m: &mut Meter, pick: impl Fn(&AxiomSet, &Formula) -> bool) -> bool {
        match self.codes(y, m).and_then(|c| self.fml_codes(&c, m)) {
            Some(f) => {
                m.add(f.size());
                pick(&self.axioms, &f)
            }
            None => false,
        }
    }

    pub fn lax_m(&self, y: &GoedelNumber, m: &mut Meter) -> bool {
        self.axiom_by(y, m, AxiomSet::is_logical_axiom)
    }

    pub fn prax_m(&self, y: &GoedelNumber, m: &mut Meter) -> bool {
        self.axiom_by(y, m, AxiomSet::is_proper_axiom)
    }

    pub fn ax_m(&self, y: &GoedelNumber, m: &mut Meter) -> bool {
        self.axiom_by(y, m, |a, f| a.recognize(f).is_some())
    }

    pub fn prf_m(&self, x: &GoedelNumber, m: &mut Meter) -> bool {
        let Some(comps) = x.components() else {
            m.add(1);
            return false;
        };
        let p = self.punct();
        let mut lines: Vec<Vec<u64>> = Vec::with_capacity(comps.len());
        for e in comps.iter() {
            let Some(codes) = self.codes(e, m) else { return false };
            let Some(f) = self.fml_codes(&codes, m) else { return false };
            m.add(f.size());
            let ok = self.axioms.recognize(&f).is_some()
                || lines.iter().any(|u| self.gen_shape(&p, u, &codes, m))
                || lines.iter().any(|w| {
                    // w = (u → v): locate u by length, then look it up.
                    w.len() > codes.len() + 2
                        && w[w.len() - codes.len() - 2] == p.implies
                        && {
                            let u = &w[1..w.len() - codes.len() - 2];
                            lines.iter().any(|cand| *cand == u) && self.mp_shape(&p, u, w, &codes, m)
                        }
                });
            if !ok {
                return false;
            }
            lines.push(codes);
        }
        true
    }

    pub fn pf_m(&self, x: &GoedelNumber, v: &GoedelNumber, m: &mut Meter) -> bool {
        let last = match x.lh() {
            Ok(n) => x.component(n - 1).ok(),
            Err(_) => None,
        };
        m.add(1);
        match last {
            Some(last) => last == *v && self.prf_m(x, m),
            None => false,
        }
    }

    pub fn rf_m(&self, x: &GoedelNumber, v: &GoedelNumber, m: &mut Meter) -> bool {
        match codec::neg_code(v, &self.table) {
            Ok(z) => self.pf_m(x, &z, m),
            Err(_) => false,
        }
    }

    // -- plain forms ---------------------------------------------------------

    pub fn gd(&self, x: &GoedelNumber) -> bool {
        self.gd_m(x, &mut Meter::default())
    }

    pub fn evbl(&self, v: &GoedelNumber) -> bool {
        self.evbl_m(v, &mut Meter::default())
    }

    pub fn fml(&self, x: &GoedelNumber) -> bool {
        self.fml_m(x, &mut Meter::default())
    }

    pub fn mp(&self, x: &GoedelNumber, y: &GoedelNumber, z: &GoedelNumber) -> bool {
        self.mp_m(x, y, z, &mut Meter::default())
    }

    pub fn gen(&self, x: &GoedelNumber, y: &GoedelNumber) -> bool {
        self.gen_m(x, y, &mut Meter::default())
    }

    pub fn lax(&self, y: &GoedelNumber) -> bool {
        self.lax_m(y, &mut Meter::default())
    }

    pub fn prax(&self, y: &GoedelNumber) -> bool {
        self.prax_m(y, &mut Meter::default())
    }

    pub fn ax(&self, y: &GoedelNumber) -> bool {
        self.ax_m(y, &mut Meter::default())
    }

    pub fn prf(&self, x: &GoedelNumber) -> bool {
        self.prf_m(x, &mut Meter::default())
    }

    pub fn pf(&self, x: &GoedelNumber, v: &GoedelNumber) -> bool {
        self.pf_m(x, v, &mut Meter::default())
    }

    pub fn rf(&self, x: &GoedelNumber, v: &GoedelNumber) -> bool {
        self.rf_m(x, v, &mut Meter::default())
    }

    pub fn c_pf(&self, x: &GoedelNumber, v: &GoedelNumber) -> CharValue {
        CharValue::of(self.pf(x, v))
    }

    pub fn c_rf(&self, x: &GoedelNumber, v: &GoedelNumber) -> CharValue {
        CharValue::of(self.rf(x, v))
    }

    /// Evaluate one predicate by name and record the result.
    pub fn evaluate(&self, predicate: &str, args: &[&GoedelNumber]) -> Option<Evaluation> {
        let mut m = Meter::default();
        let result = match (predicate, args) {
            ("Gd", [x]) => self.gd_m(x, &mut m),
            ("EVbl", [v]) => self.evbl_m(v, &mut m),
            ("Fml", [x]) => self.fml_m(x, &mut m),
            ("MP", [x, y, z]) => self.mp_m(x, y, z, &mut m),
            ("Gen", [x, y]) => self.gen_m(x, y, &mut m),
            ("LAx", [y]) => self.lax_m(y, &mut m),
            ("PrAx", [y]) => self.prax_m(y, &mut m),
            ("Ax", [y]) => self.ax_m(y, &mut m),
            ("Prf", [x]) => self.prf_m(x, &mut m),
            ("Pf", [x, v]) => self.pf_m(x, v, &mut m),
            ("Rf", [x, v]) => self.rf_m(x, v, &mut m),
            _ => return None,
        };
        Some(Evaluation {
            predicate: predicate.to_string(),
            arguments: args.iter().map(|a| a.to_string()).collect(),
            result,
            steps: m.steps,
        })
    }
}
