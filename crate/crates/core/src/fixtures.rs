//! Stored worked examples and a deterministic proof corpus.
//!
//! The printed code sequences are kept verbatim: they spell `¬` without
//! its own parentheses, so they are raw symbol strings rather than codes
//! of canonical formulas.

use crate::reader::{parse_formula, Justification, ProofScript};
use crate::syntax::{arith, Formula, Term, Var};

/// The five printed symbol-code sequences of the first worked example.
pub const EXAMPLE1_PRINTED: [&[u64]; 5] = [
    &[3, 9, 51, 11, 9, 9, 51, 5, 11, 3, 3, 9, 51, 11, 9, 51, 5, 11, 51, 5],
    &[3, 9, 51, 11, 9, 51, 5],
    &[3, 9, 51, 11, 9, 9, 51, 5, 11, 5],
    &[9, 9, 51, 11, 3, 9, 51, 11, 9, 9, 51, 5],
    &[3, 9, 9, 51, 11, 51, 5],
];

/// The same five lines as printed formula text, one raw symbol string each.
pub const EXAMPLE1_TEXT: [&str; 5] = [
    "( ! B51 -> ! ! B51 ) -> ( ( ! B51 -> ! B51 ) -> B51 )",
    "( ! B51 -> ! B51 )",
    "( ! B51 -> ! ! B51 ) -> B51",
    "! ! B51 -> ( ! B51 -> ! ! B51 )",
    "! ! B51 -> B51",
];

/// The printed sequences read back as symbols under `table`.
pub fn example1_printed_symbols(table: &crate::codec::SymbolTable) -> Vec<Vec<crate::syntax::Symbol>> {
    EXAMPLE1_PRINTED
        .iter()
        .map(|codes| codes.iter().map(|&c| table.symbol(c).expect("printed code is in the table")).collect())
        .collect()
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("fixture formula {s:?}: {e}"))
}

fn b() -> Formula {
    Formula::placeholder(51)
}

fn imp(a: Formula, c: Formula) -> Formula {
    Formula::implies(a, c)
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}

fn ax(id: &str) -> Justification {
    Justification::Axiom(Some(id.to_string()))
}

/// The first worked example as a canonical script with the justifications
/// the text suggests. Lines 2 and 5 are not axioms of the system, so the
/// script is rejected.
pub fn example1_script() -> ProofScript {
    let (nb, nnb) = (not(b()), not(not(b())));
    let mut s = ProofScript::new();
    s.push(imp(imp(nb.clone(), nnb.clone()), imp(imp(nb.clone(), nb.clone()), b())), ax("A3"));
    s.push(imp(nb.clone(), nb.clone()), Justification::Axiom(None));
    s.push(imp(imp(nb.clone(), nnb.clone()), b()), Justification::Mp(2, 1));
    s.push(imp(nnb.clone(), imp(nb.clone(), nnb.clone())), ax("A1"));
    s.push(imp(nnb, b()), Justification::Mp(4, 3));
    s
}

/// A `(p -> p)` proof from A1, A2 and two detachments, for any formula `p`.
pub fn identity_proof(p: &Formula) -> ProofScript {
    let pp = imp(p.clone(), p.clone());
    let mut s = ProofScript::new();
    s.push(imp(p.clone(), imp(pp.clone(), p.clone())), ax("A1"));
    s.push(
        imp(imp(p.clone(), imp(pp.clone(), p.clone())), imp(imp(p.clone(), pp.clone()), pp.clone())),
        ax("A2"),
    );
    s.push(imp(imp(p.clone(), pp.clone()), pp.clone()), Justification::Mp(1, 2));
    s.push(imp(p.clone(), pp.clone()), ax("A1"));
    s.push(pp, Justification::Mp(4, 3));
    s
}

/// A strict 17-line proof of `¬¬B → B`.
pub fn double_negation_proof() -> ProofScript {
    let (bb, n, nn) = (b(), not(b()), not(not(b())));
    let nn_b = || imp(n.clone(), n.clone());
    let n_nn = || imp(n.clone(), nn.clone());
    let mut s = ProofScript::new();
    // 1-6: ¬B → ¬B
    s.push(imp(n_nn(), imp(nn_b(), bb.clone())), ax("A3"));
    s.push(imp(n.clone(), imp(nn_b(), n.clone())), ax("A1"));
    s.push(
        imp(imp(n.clone(), imp(nn_b(), n.clone())), imp(imp(n.clone(), nn_b()), nn_b())),
        ax("A2"),
    );
    s.push(imp(imp(n.clone(), nn_b()), nn_b()), Justification::Mp(2, 3));
    s.push(imp(n.clone(), nn_b()), ax("A1"));
    s.push(nn_b(), Justification::Mp(5, 4));
    // 7-11: (¬B → ¬¬B) → B
    s.push(imp(nn_b(), imp(n_nn(), nn_b())), ax("A1"));
    s.push(imp(n_nn(), nn_b()), Justification::Mp(6, 7));
    s.push(
        imp(imp(n_nn(), imp(nn_b(), bb.clone())), imp(imp(n_nn(), nn_b()), imp(n_nn(), bb.clone()))),
        ax("A2"),
    );
    s.push(imp(imp(n_nn(), nn_b()), imp(n_nn(), bb.clone())), Justification::Mp(1, 9));
    s.push(imp(n_nn(), bb.clone()), Justification::Mp(8, 10));
    // 12-17: ¬¬B → B
    s.push(imp(nn.clone(), n_nn()), ax("A1"));
    s.push(imp(imp(n_nn(), bb.clone()), imp(nn.clone(), imp(n_nn(), bb.clone()))), ax("A1"));
    s.push(imp(nn.clone(), imp(n_nn(), bb.clone())), Justification::Mp(11, 13));
    s.push(
        imp(imp(nn.clone(), imp(n_nn(), bb.clone())), imp(imp(nn.clone(), n_nn()), imp(nn.clone(), bb.clone()))),
        ax("A2"),
    );
    s.push(imp(imp(nn.clone(), n_nn()), imp(nn.clone(), bb.clone())), Justification::Mp(14, 15));
    s.push(imp(nn, bb), Justification::Mp(12, 16));
    s
}

/// The closed term written `t` in the examples.
pub fn t() -> Term {
    Term::app(crate::syntax::FuncLetter::new(0, 1), vec![])
}

/// The informal eleven-line argument of the second worked example, every
/// line taken as a premise.
pub fn example2_script() -> ProofScript {
    let lines = [
        "f0_1 < f0_1",
        "exists x1 (x1 != 0 & f2_1(x1, f0_1) = f0_1)",
        "(a2 != 0 & f2_1(a2, f0_1) = f0_1)",
        "f2_1(a2, f0_1) = f0_1",
        "f0_1 = f2_1(0, f0_1)",
        "f2_1(a2, f0_1) = f2_1(0, f0_1)",
        "a2 = 0",
        "a2 != 0",
        "(a2 = 0 & a2 != 0)",
        "(0 = 0 & 0 != 0)",
        "!f0_1 < f0_1",
    ];
    let mut s = ProofScript::new();
    for l in lines {
        s.push(f(l), Justification::Premise);
    }
    s
}

/// Instantiate a closed axiom `∀x φ` style theorem at `term`: the axiom
/// line, its generalization over `x`, the A4 instance and one detachment.
fn instantiate(axiom: Formula, id: &str, x: Var, term: &Term) -> ProofScript {
    let gen = Formula::forall(x, axiom.clone());
    let inst = axiom.substitute(x, term);
    let mut s = ProofScript::new();
    s.push(axiom, ax(id));
    s.push(gen.clone(), Justification::Gen(1, x));
    s.push(imp(gen, inst.clone()), ax("A4"));
    s.push(inst, Justification::Mp(2, 3));
    s
}

/// The strict four-line refutation of `t < t` for a term `t`.
pub fn irreflexive_refutation(term: &Term) -> ProofScript {
    instantiate(not(arith::less(Term::var(1), Term::var(1))), "O1", Var(1), term)
}

/// What a corpus entry is meant to exhibit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Proof,
    Refutation,
    Mutant,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Proof => "proof",
            EntryKind::Refutation => "refutation",
            EntryKind::Mutant => "mutant",
        }
    }
}

/// One corpus item: a script and the formula `α` the lemmas are run on.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub script: ProofScript,
    pub alpha: Formula,
}

fn entry(name: impl Into<String>, kind: EntryKind, script: ProofScript, alpha: Formula) -> CorpusEntry {
    CorpusEntry { name: name.into(), kind, script, alpha }
}

fn one_line(formula: Formula, id: &str) -> ProofScript {
    let mut s = ProofScript::new();
    s.push(formula, ax(id));
    s
}

fn proofs() -> Vec<CorpusEntry> {
    use EntryKind::Proof;
    let mut out = Vec::new();
    let theorem = |s: &ProofScript| s.last_formula().cloned().expect("non-empty");
    let mut push = |name: String, s: ProofScript| {
        let alpha = theorem(&s);
        out.push(entry(name, Proof, s, alpha));
    };
    push("a1".into(), one_line(f("(B51 -> (B59 -> B51))"), "A1"));
    push(
        "a2".into(),
        one_line(f("((B51 -> (B59 -> B67)) -> ((B51 -> B59) -> (B51 -> B67)))"), "A2"),
    );
    push("a3".into(), one_line(f("((!B59 -> !B51) -> ((!B59 -> B51) -> B59))"), "A3"));
    push("a4".into(), one_line(f("(forall x1 x1 = x1 -> 0 = 0)"), "A4"));
    push("a5".into(), one_line(f("(forall x1 (B51 -> x1 = x1) -> (B51 -> forall x1 x1 = x1))"), "A5"));
    for (i, p) in ["B51", "!B51", "(B51 -> B59)", "x1 = x2", "forall x1 x1 < x2"].iter().enumerate() {
        push(format!("identity_{i}"), identity_proof(&f(p)));
    }
    push("double_negation".into(), double_negation_proof());
    let axioms = crate::axioms::AxiomSet::standard();
    for (id, phi) in axioms.fixed_formulas() {
        if id.starts_with('S') {
            push(format!("fixed_{}", id.to_lowercase()), one_line(phi.clone(), id));
        }
    }
    push("induction".into(), one_line(crate::axioms::induction_instance(&f("x1 = x1"), Var(1)), "S9"));
    let s5 = f("f2_1(x1, 0) = x1");
    for (i, term) in [arith::zero(), t(), Term::var(2)].iter().enumerate() {
        push(format!("plus_zero_{i}"), instantiate(s5.clone(), "S5", Var(1), term));
    }
    out
}

fn refutations() -> Vec<CorpusEntry> {
    use EntryKind::Refutation;
    let mut out = Vec::new();
    let o1 = not(arith::less(Term::var(1), Term::var(1)));
    out.push(entry("irreflexive_x1", Refutation, one_line(o1, "O1"), f("x1 < x1")));
    let terms = [t(), arith::zero(), Term::var(2), arith::succ(arith::zero()), arith::plus(Term::var(1), arith::zero()), Term::var(3)];
    for (i, term) in terms.iter().enumerate() {
        out.push(entry(
            format!("irreflexive_{i}"),
            Refutation,
            irreflexive_refutation(term),
            arith::less(term.clone(), term.clone()),
        ));
    }
    let s3 = f("0 != f1_1(x1)");
    out.push(entry("zero_not_succ_x1", Refutation, one_line(s3.clone(), "S3"), f("0 = f1_1(x1)")));
    for (i, term) in [arith::zero(), t(), Term::var(2)].iter().enumerate() {
        let alpha = arith::eq(arith::zero(), arith::succ(term.clone()));
        out.push(entry(format!("zero_not_succ_{i}"), Refutation, instantiate(s3.clone(), "S3", Var(1), term), alpha));
    }
    out
}

fn mutate_line(script: &ProofScript, line: usize, g: impl Fn(&Formula) -> Formula) -> ProofScript {
    let mut s = script.clone();
    let l = &mut s.lines[line];
    l.formula = g(&l.formula);
    s
}

fn mutants(base: &[CorpusEntry]) -> Vec<CorpusEntry> {
    use EntryKind::Mutant;
    let mut out = Vec::new();
    for e in base {
        let n = e.script.len();
        let last = n - 1;
        out.push(entry(
            format!("{}_negated", e.name),
            Mutant,
            mutate_line(&e.script, last, |p| not(p.clone())),
            e.alpha.clone(),
        ));
        out.push(entry(
            format!("{}_converse", e.name),
            Mutant,
            mutate_line(&e.script, 0, |p| match p {
                Formula::Implies(a, c) => imp((**c).clone(), (**a).clone()),
                other => not(other.clone()),
            }),
            e.alpha.clone(),
        ));
        let mut truncated = e.script.clone();
        if n > 1 {
            truncated.lines.truncate(n / 2);
        } else {
            truncated.push(Formula::placeholder(75), Justification::Premise);
        }
        out.push(entry(format!("{}_{}", e.name, if n > 1 { "truncated" } else { "extended" }), Mutant, truncated, e.alpha.clone()));
    }
    let junk = ["B51", "x1 = x2", "(B51 -> B59)", "forall x1 B51", "!0 = 0"];
    for (i, j) in junk.iter().enumerate() {
        out.push(entry(format!("junk_{i}"), Mutant, one_line(f(j), "A1"), f(j)));
    }
    out.push(entry("literal_example1", Mutant, example1_script(), f("(!(!B51) -> B51)")));
    out
}

/// The corpus used by the lemma checks: proofs, refutations and variants
/// of both that prove nothing about their `α` (truncations may still be
/// valid derivations of something else).
pub fn corpus() -> Vec<CorpusEntry> {
    let mut base = proofs();
    base.extend(refutations());
    let extra = mutants(&base);
    base.extend(extra);
    base
}
