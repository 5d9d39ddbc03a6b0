//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use goedelkit::axioms::induction_instance;
use goedelkit::codec::GoedelNumber;
use goedelkit::reader::{Justification, ProofScript};
use goedelkit::syntax::{arith, Const, FuncLetter, Formula, PredLetter, Term, Var};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Oracles, written against the numbering's definition only.

/// First `n` primes by trial division.
pub fn oracle_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn func_code(arity: u32, index: u32) -> u64 {
    1 + 8 * 2u64.pow(arity) * 3u64.pow(index)
}

fn pred_code(arity: u32, index: u32) -> u64 {
    3 + 8 * 2u64.pow(arity) * 3u64.pow(index)
}

fn oracle_term(t: &Term, out: &mut Vec<u64>) {
    match t {
        Term::Var(Var(k)) => out.push(13 + 8 * *k as u64),
        Term::Const(Const(k)) => out.push(7 + 8 * *k as u64),
        Term::App(f, args) => {
            out.push(func_code(f.arity, f.index));
            if !args.is_empty() {
                out.push(3);
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(7);
                    }
                    oracle_term(a, out);
                }
                out.push(5);
            }
        }
    }
}

fn oracle_formula(f: &Formula, out: &mut Vec<u64>) {
    match f {
        Formula::Atom(p, args) => {
            out.push(pred_code(p.arity, p.index));
            out.push(3);
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(7);
                }
                oracle_term(a, out);
            }
            out.push(5);
        }
        Formula::Not(a) => {
            out.extend([3, 9]);
            oracle_formula(a, out);
            out.push(5);
        }
        Formula::Implies(a, b) => {
            out.push(3);
            oracle_formula(a, out);
            out.push(11);
            oracle_formula(b, out);
            out.push(5);
        }
        Formula::Forall(Var(k), a) => {
            out.extend([3, 3, 13, 13 + 8 * *k as u64, 5]);
            oracle_formula(a, out);
            out.push(5);
        }
        Formula::Placeholder(c) => out.push(*c),
    }
}

/// Symbol codes of a formula under the canonical table.
pub fn oracle_codes(f: &Formula) -> Vec<u64> {
    let mut out = Vec::new();
    oracle_formula(f, &mut out);
    out
}

/// `2^c1 * 3^c2 * ...` for a flat code list.
pub fn oracle_factored(codes: &[u64]) -> String {
    oracle_primes(codes.len())
        .iter()
        .zip(codes)
        .map(|(p, c)| format!("{p}^{c}"))
        .collect::<Vec<_>>()
        .join(" * ")
}

/// The integer `∏ p_i^{c_i}`.
pub fn oracle_integer(codes: &[u64]) -> BigUint {
    oracle_primes(codes.len())
        .iter()
        .zip(codes)
        .fold(BigUint::from(1u32), |acc, (&p, &c)| acc * BigUint::from(p).pow(c as u32))
}

// ---------------------------------------------------------------------------
// Random syntax

pub const PLACEHOLDERS: [u64; 4] = [51, 59, 67, 75];

pub fn closed_term(rng: &mut impl Rng, depth: u32) -> Term {
    match if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) } {
        0 => arith::zero(),
        1 => Term::app(FuncLetter::new(0, 1), vec![]),
        2 => arith::succ(closed_term(rng, depth - 1)),
        _ => arith::plus(closed_term(rng, depth - 1), closed_term(rng, depth - 1)),
    }
}

pub fn term(rng: &mut impl Rng, depth: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Term::var(rng.gen_range(1..=3)),
            1 => Term::constant(rng.gen_range(1..=2)),
            2 => arith::zero(),
            _ => Term::app(FuncLetter::new(0, 1), vec![]),
        };
    }
    match rng.gen_range(0..3) {
        0 => arith::succ(term(rng, depth - 1)),
        1 => arith::plus(term(rng, depth - 1), term(rng, depth - 1)),
        _ => arith::times(term(rng, depth - 1), term(rng, depth - 1)),
    }
}

pub fn formula(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 | 1 => Formula::placeholder(*PLACEHOLDERS.choose(rng).unwrap()),
            2 => arith::eq(term(rng, 1), term(rng, 1)),
            _ => Formula::atom(PredLetter::new(2, 3), vec![term(rng, 1), term(rng, 1)]),
        };
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(formula(rng, depth - 1)),
        1 => Formula::implies(formula(rng, depth - 1), formula(rng, depth - 1)),
        _ => Formula::forall(Var(rng.gen_range(1..=3)), formula(rng, depth - 1)),
    }
}

/// Placeholder-only formula, so no variable is free in it.
pub fn sentence(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::placeholder(*PLACEHOLDERS.choose(rng).unwrap());
    }
    if rng.gen_bool(0.4) {
        Formula::not(sentence(rng, depth - 1))
    } else {
        Formula::implies(sentence(rng, depth - 1), sentence(rng, depth - 1))
    }
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}

fn ax(id: &str) -> Justification {
    Justification::Axiom(Some(id.into()))
}

/// A random instance of some axiom, with the id it was built from.
pub fn axiom_instance(rng: &mut impl Rng) -> (Formula, String) {
    let d = 2;
    match rng.gen_range(0..9) {
        0 => {
            let (p, q) = (formula(rng, d), formula(rng, d));
            (imp(p.clone(), imp(q, p)), "A1".into())
        }
        1 => {
            let (p, q, r) = (formula(rng, 1), formula(rng, 1), formula(rng, 1));
            (
                imp(imp(p.clone(), imp(q.clone(), r.clone())), imp(imp(p.clone(), q), imp(p, r))),
                "A2".into(),
            )
        }
        2 => {
            let (p, q) = (formula(rng, d), formula(rng, d));
            (imp(imp(not(p.clone()), not(q.clone())), imp(imp(not(p.clone()), q), p)), "A3".into())
        }
        3 => {
            let x = Var(rng.gen_range(1..=3));
            let body = formula(rng, d);
            let t = closed_term(rng, 1);
            (imp(Formula::forall(x, body.clone()), body.substitute(x, &t)), "A4".into())
        }
        4 => {
            let x = Var(rng.gen_range(1..=3));
            let (b, c) = (sentence(rng, 1), formula(rng, 1));
            (imp(Formula::forall(x, imp(b.clone(), c.clone())), imp(b, Formula::forall(x, c))), "A5".into())
        }
        5 => {
            let axioms = goedelkit::axioms::AxiomSet::standard();
            let fixed: Vec<_> = axioms.fixed_formulas().map(|(id, f)| (id.to_string(), f.clone())).collect();
            let (id, f) = fixed.choose(rng).unwrap().clone();
            (f, id)
        }
        6 => {
            let body = Formula::atom(PredLetter::new(2, 1), vec![term(rng, 1), term(rng, 1)]);
            (induction_instance(&body, Var(rng.gen_range(1..=3))), "S9".into())
        }
        7 => (not(arith::less(Term::var(1), Term::var(1))), "O1".into()),
        _ => {
            let p = formula(rng, 1);
            let pp = imp(p.clone(), p.clone());
            (imp(p.clone(), imp(pp, p)), "A1".into())
        }
    }
}

/// A valid script of about `steps` moves: axiom instances, A1 weakenings
/// discharged by MP, generalizations and A4 instantiations.
pub fn valid_script(rng: &mut impl Rng, steps: usize) -> ProofScript {
    let mut s = ProofScript::new();
    let (f, id) = axiom_instance(rng);
    s.push(f, ax(&id));
    for _ in 1..steps {
        let i = rng.gen_range(0..s.len());
        let phi = s.lines[i].formula.clone();
        match rng.gen_range(0..5) {
            0 => {
                let (f, id) = axiom_instance(rng);
                s.push(f, ax(&id));
            }
            1 if phi.size() < 30 => {
                let q = formula(rng, 1);
                let a1 = s.push(imp(phi.clone(), imp(q.clone(), phi)), ax("A1"));
                s.push(
                    imp(q, s.lines[i].formula.clone()),
                    Justification::Mp(i + 1, a1),
                );
            }
            2 if phi.size() < 30 => {
                let x = Var(rng.gen_range(1..=3));
                s.push(Formula::forall(x, phi), Justification::Gen(i + 1, x));
            }
            3 => {
                if let Formula::Forall(x, body) = &phi {
                    let t = closed_term(rng, 1);
                    let inst = body.substitute(*x, &t);
                    let a4 = s.push(imp(phi.clone(), inst.clone()), ax("A4"));
                    s.push(inst, Justification::Mp(i + 1, a4));
                }
            }
            _ => {
                // Any available detachment.
                let found = (0..s.len()).find_map(|j| match &s.lines[j].formula {
                    Formula::Implies(a, b) => {
                        (0..s.len()).find(|&k| s.lines[k].formula == **a).map(|k| (k, j, (**b).clone()))
                    }
                    _ => None,
                });
                if let Some((k, j, b)) = found {
                    if rng.gen_bool(0.5) {
                        s.push(b, Justification::Mp(k + 1, j + 1));
                    }
                }
            }
        }
    }
    s
}

/// Replace the `target`-th leaf symbol (placeholder, variable, constant,
/// 0-ary letter or predicate letter) by a different one of its kind.
fn flip_leaf(f: &Formula, target: &mut usize, rng: &mut impl Rng) -> Formula {
    fn flip_term(t: &Term, target: &mut usize, rng: &mut impl Rng) -> Term {
        match t {
            Term::Var(Var(k)) => {
                if take(target) {
                    return Term::var(other(*k, 1..=4, rng));
                }
                t.clone()
            }
            Term::Const(Const(k)) => {
                if take(target) {
                    return Term::constant(other(*k, 1..=3, rng));
                }
                t.clone()
            }
            Term::App(l, args) if args.is_empty() => {
                if take(target) {
                    return Term::app(FuncLetter::new(0, other(l.index, 1..=3, rng)), vec![]);
                }
                t.clone()
            }
            Term::App(l, args) => Term::app(*l, args.iter().map(|a| flip_term(a, target, rng)).collect()),
        }
    }
    match f {
        Formula::Placeholder(c) => {
            if take(target) {
                let choices: Vec<u64> = PLACEHOLDERS.iter().copied().filter(|p| p != c).collect();
                return Formula::placeholder(*choices.choose(rng).unwrap());
            }
            f.clone()
        }
        Formula::Atom(p, args) => {
            let letter = if take(target) { PredLetter::new(p.arity, other(p.index, 1..=3, rng)) } else { *p };
            Formula::atom(letter, args.iter().map(|a| flip_term(a, target, rng)).collect())
        }
        Formula::Not(a) => not(flip_leaf(a, target, rng)),
        Formula::Implies(a, b) => {
            let a = flip_leaf(a, target, rng);
            imp(a, flip_leaf(b, target, rng))
        }
        Formula::Forall(x, a) => {
            let v = if take(target) { Var(other(x.0, 1..=4, rng)) } else { *x };
            Formula::forall(v, flip_leaf(a, target, rng))
        }
    }
}

fn take(target: &mut usize) -> bool {
    if *target == 0 {
        *target = usize::MAX;
        true
    } else {
        if *target != usize::MAX {
            *target -= 1;
        }
        false
    }
}

fn other(k: u32, range: std::ops::RangeInclusive<u32>, rng: &mut impl Rng) -> u32 {
    let choices: Vec<u32> = range.filter(|&c| c != k).collect();
    *choices.choose(rng).unwrap()
}

fn leaf_count(f: &Formula) -> usize {
    fn count_term(t: &Term) -> usize {
        match t {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(_, a) if a.is_empty() => 1,
            Term::App(_, a) => a.iter().map(count_term).sum(),
        }
    }
    match f {
        Formula::Placeholder(_) => 1,
        Formula::Atom(_, a) => 1 + a.iter().map(count_term).sum::<usize>(),
        Formula::Not(a) => leaf_count(a),
        Formula::Implies(a, b) => leaf_count(a) + leaf_count(b),
        Formula::Forall(_, a) => 1 + leaf_count(a),
    }
}

/// One symbol of one line replaced; justifications kept as they were.
pub fn single_symbol_mutant(rng: &mut impl Rng, script: &ProofScript) -> ProofScript {
    let mut s = script.clone();
    let line = rng.gen_range(0..s.len());
    let leaves = leaf_count(&s.lines[line].formula);
    let mut target = rng.gen_range(0..leaves);
    s.lines[line].formula = flip_leaf(&s.lines[line].formula, &mut target, rng);
    s
}

/// A random nested sequence number, not necessarily coding anything.
pub fn random_tower(rng: &mut impl Rng, depth: u32) -> GoedelNumber {
    let len = rng.gen_range(1..=6);
    let comps = (0..len)
        .map(|_| {
            if depth > 0 && rng.gen_bool(0.5) {
                random_tower(rng, depth - 1)
            } else {
                GoedelNumber::leaf(*[3u64, 5, 7, 9, 11, 13, 21, 25, 51, 59, 81, 99, 867].choose(rng).unwrap())
            }
        })
        .collect();
    GoedelNumber::seq(comps).unwrap()
}
