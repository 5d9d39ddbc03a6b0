//! Budgeted enumeration of theorems and refutations, and proof search.
//!
//! Theorems are generated by given-clause saturation. Propositional axioms
//! enter as schemas with formula metavariables and are combined by
//! condensed detachment (modus ponens with most general unification);
//! fixed proper axioms enter as ground formulas; generalization and
//! quantifier axioms are applied to ground theorems as they appear, and
//! instances relevant to a search target are seeded up front. Items
//! are processed in order of (derivation-tree size, formula size,
//! flattened codes). Every theorem is turned into a strict ground proof by
//! instantiating its derivation tree, and every emitted proof is checked
//! with the proof predicate before it leaves the stream.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axioms::{self, Builtin};
use crate::codec::{self, GoedelNumber};
use crate::par::Exec;
use crate::predicates::Kernel;
use crate::reader::{Justification, ProofScript};
use crate::syntax::{arith, Formula, PredLetter, Term, Var};

/// Limits on a run. `max_depth` bounds the size of the derivation tree,
/// which is an upper bound on the length of the emitted proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_steps: usize,
    pub max_depth: usize,
    pub max_formula_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 5_000, max_depth: 32, max_formula_size: 21 }
    }
}

impl Budget {
    pub fn new(max_steps: usize, max_depth: usize, max_formula_size: usize) -> Self {
        Budget { max_steps, max_depth, max_formula_size }
    }
}

// ---------------------------------------------------------------------------
// Schematic formulas

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Pat {
    Meta(u32),
    Ph(u64),
    Atom(PredLetter, Vec<Term>),
    Not(Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
    Forall(Var, Box<Pat>),
}

fn m(i: u32) -> Pat {
    Pat::Meta(i)
}

fn not(p: Pat) -> Pat {
    Pat::Not(Box::new(p))
}

fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Imp(Box::new(a), Box::new(b))
}

impl Pat {
    fn from_formula(f: &Formula) -> Pat {
        match f {
            Formula::Atom(p, args) => Pat::Atom(*p, args.clone()),
            Formula::Not(a) => not(Pat::from_formula(a)),
            Formula::Implies(a, b) => imp(Pat::from_formula(a), Pat::from_formula(b)),
            Formula::Forall(x, b) => Pat::Forall(*x, Box::new(Pat::from_formula(b))),
            Formula::Placeholder(c) => Pat::Ph(*c),
        }
    }

    /// Replace metavariables by `env[i]`, or `default` when unbound.
    fn to_formula(&self, env: &[Option<Formula>], default: &Formula) -> Formula {
        match self {
            Pat::Meta(i) => env.get(*i as usize).cloned().flatten().unwrap_or_else(|| default.clone()),
            Pat::Ph(c) => Formula::Placeholder(*c),
            Pat::Atom(p, args) => Formula::Atom(*p, args.clone()),
            Pat::Not(a) => Formula::not(a.to_formula(env, default)),
            Pat::Imp(a, b) => Formula::implies(a.to_formula(env, default), b.to_formula(env, default)),
            Pat::Forall(x, b) => Formula::forall(*x, b.to_formula(env, default)),
        }
    }

    fn size(&self) -> usize {
        match self {
            Pat::Meta(_) | Pat::Ph(_) => 1,
            Pat::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Pat::Not(a) | Pat::Forall(_, a) => 1 + a.size(),
            Pat::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn meta_bound(&self) -> u32 {
        match self {
            Pat::Meta(i) => i + 1,
            Pat::Ph(_) | Pat::Atom(..) => 0,
            Pat::Not(a) | Pat::Forall(_, a) => a.meta_bound(),
            Pat::Imp(a, b) => a.meta_bound().max(b.meta_bound()),
        }
    }

    fn is_ground(&self) -> bool {
        self.meta_bound() == 0
    }

    fn rename(&self, map: &mut Vec<Option<u32>>, next: &mut u32) -> Pat {
        match self {
            Pat::Meta(i) => {
                let i = *i as usize;
                if map.len() <= i {
                    map.resize(i + 1, None);
                }
                let j = *map[i].get_or_insert_with(|| {
                    *next += 1;
                    *next - 1
                });
                Pat::Meta(j)
            }
            Pat::Ph(_) | Pat::Atom(..) => self.clone(),
            Pat::Not(a) => not(a.rename(map, next)),
            Pat::Imp(a, b) => {
                let a = a.rename(map, next);
                imp(a, b.rename(map, next))
            }
            Pat::Forall(x, a) => Pat::Forall(*x, Box::new(a.rename(map, next))),
        }
    }

    #[cfg(test)]
    fn canonical(&self) -> Pat {
        self.rename(&mut Vec::new(), &mut 0)
    }
}

/// Bindings for unification with structure sharing: metavariable `i` of a
/// pattern read at offset `o` is slot `i + o`, bound to a subpattern of one
/// of the inputs together with that subpattern's offset.
type Bindings<'a> = Vec<Option<(&'a Pat, u32)>>;

fn walk<'a>(mut p: &'a Pat, mut off: u32, s: &Bindings<'a>) -> (&'a Pat, u32) {
    while let Pat::Meta(i) = p {
        match s[(i + off) as usize] {
            Some((q, o)) => {
                p = q;
                off = o;
            }
            None => break,
        }
    }
    (p, off)
}

fn occurs<'a>(v: u32, p: &'a Pat, off: u32, s: &Bindings<'a>) -> bool {
    let (p, off) = walk(p, off, s);
    match p {
        Pat::Meta(i) => i + off == v,
        Pat::Ph(_) | Pat::Atom(..) => false,
        Pat::Not(a) | Pat::Forall(_, a) => occurs(v, a, off, s),
        Pat::Imp(a, b) => occurs(v, a, off, s) || occurs(v, b, off, s),
    }
}

fn unify<'a>(a: &'a Pat, ao: u32, b: &'a Pat, bo: u32, s: &mut Bindings<'a>) -> bool {
    let (a, ao) = walk(a, ao, s);
    let (b, bo) = walk(b, bo, s);
    match (a, b) {
        (Pat::Meta(i), Pat::Meta(j)) if i + ao == j + bo => true,
        (Pat::Meta(i), _) => {
            let v = i + ao;
            if occurs(v, b, bo, s) {
                return false;
            }
            s[v as usize] = Some((b, bo));
            true
        }
        (_, Pat::Meta(_)) => unify(b, bo, a, ao, s),
        (Pat::Not(x), Pat::Not(y)) => unify(x, ao, y, bo, s),
        (Pat::Imp(x1, y1), Pat::Imp(x2, y2)) => unify(x1, ao, x2, bo, s) && unify(y1, ao, y2, bo, s),
        (Pat::Forall(v, x), Pat::Forall(w, y)) => v == w && unify(x, ao, y, bo, s),
        (Pat::Ph(x), Pat::Ph(y)) => x == y,
        (Pat::Atom(p, xs), Pat::Atom(q, ys)) => p == q && xs == ys,
        _ => false,
    }
}

fn resolve<'a>(p: &'a Pat, off: u32, s: &Bindings<'a>) -> Pat {
    let (p, off) = walk(p, off, s);
    match p {
        Pat::Meta(i) => Pat::Meta(i + off),
        Pat::Ph(_) | Pat::Atom(..) => p.clone(),
        Pat::Not(a) => not(resolve(a, off, s)),
        Pat::Imp(a, b) => imp(resolve(a, off, s), resolve(b, off, s)),
        Pat::Forall(x, a) => Pat::Forall(*x, Box::new(resolve(a, off, s))),
    }
}

/// One-way matching: does `general` have `specific` as an instance?
fn subsumes<'a>(general: &Pat, specific: &'a Pat, env: &mut Vec<Option<&'a Pat>>) -> bool {
    match (general, specific) {
        (Pat::Meta(i), _) => {
            let i = *i as usize;
            if env.len() <= i {
                env.resize(i + 1, None);
            }
            match env[i] {
                Some(bound) => bound == specific,
                None => {
                    env[i] = Some(specific);
                    true
                }
            }
        }
        (Pat::Not(a), Pat::Not(b)) => subsumes(a, b, env),
        (Pat::Imp(a1, b1), Pat::Imp(a2, b2)) => subsumes(a1, a2, env) && subsumes(b1, b2, env),
        (Pat::Forall(x, a), Pat::Forall(y, b)) => x == y && subsumes(a, b, env),
        _ => general == specific,
    }
}

/// Matching against a ground formula, binding metavariables to subformulas.
fn match_formula(p: &Pat, f: &Formula, env: &mut Vec<Option<Formula>>) -> bool {
    match (p, f) {
        (Pat::Meta(i), _) => {
            let i = *i as usize;
            if env.len() <= i {
                env.resize(i + 1, None);
            }
            match &env[i] {
                Some(bound) => bound == f,
                None => {
                    env[i] = Some(f.clone());
                    true
                }
            }
        }
        (Pat::Ph(a), Formula::Placeholder(b)) => a == b,
        (Pat::Atom(p, xs), Formula::Atom(q, ys)) => p == q && xs == ys,
        (Pat::Not(a), Formula::Not(b)) => match_formula(a, b, env),
        (Pat::Imp(a1, b1), Formula::Implies(a2, b2)) => match_formula(a1, a2, env) && match_formula(b1, b2, env),
        (Pat::Forall(x, a), Formula::Forall(y, b)) => x == y && match_formula(a, b, env),
        _ => false,
    }
}

fn is_instance_of(p: &Pat, f: &Formula) -> Option<Vec<Option<Formula>>> {
    let mut env = Vec::new();
    match_formula(p, f, &mut env).then_some(env)
}

// ---------------------------------------------------------------------------
// Derivations

#[derive(Clone, Debug)]
enum Deriv {
    Axiom(String),
    /// `major_inst` is the instance of the major premise used, in the
    /// result's metavariable numbering; its antecedent is the minor instance.
    Mp { major: usize, minor: usize, major_inst: Pat },
    Gen { premise: usize, var: Var },
    /// A ground instance of a schematic theorem.
    Instance { source: usize },
}

#[derive(Clone, Debug)]
struct Item {
    pat: Pat,
    meta_bound: u32,
    lines: usize,
    size: usize,
    key: Vec<u64>,
    deriv: Deriv,
}

struct Entry {
    seq: u64,
    item: Item,
}

impl Entry {
    fn rank(&self) -> (usize, usize, &[u64], u64) {
        (self.item.lines, self.item.size, &self.item.key, self.seq)
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.rank().cmp(&self.rank())
    }
}

/// New theorem candidate produced while processing one item.
struct Candidate {
    pat: Pat,
    lines: usize,
    deriv: Deriv,
}

/// Proof of a ground formula assembled from a derivation tree.
struct ProofBuilder {
    script: ProofScript,
    proved: HashMap<Formula, usize>,
}

impl ProofBuilder {
    fn push(&mut self, f: Formula, j: Justification) -> usize {
        if let Some(&n) = self.proved.get(&f) {
            return n;
        }
        let n = self.script.push(f.clone(), j);
        self.proved.insert(f, n);
        n
    }
}

// ---------------------------------------------------------------------------
// Saturation

/// Placeholder codes standing for metavariables in emitted proofs: 51
/// first, then codes `3 + 8m` that belong to no symbol.
fn grounding_codes(kernel: &Kernel, n: usize) -> Vec<u64> {
    let mut out = vec![51];
    let mut c = 59u64;
    while out.len() < n {
        if kernel.table.symbol(c).is_none() && kernel.table.is_placeholder_code(c) {
            out.push(c);
        }
        c += 8;
    }
    out.truncate(n.max(1));
    out
}

/// Given-clause saturation state shared by the streams and search.
pub struct Saturation<'k> {
    kernel: &'k Kernel,
    budget: Budget,
    exec: Exec,
    processed: Vec<Item>,
    heap: BinaryHeap<Entry>,
    seen: HashMap<Pat, usize>,
    seq: u64,
    steps: usize,
    gen_vars: Vec<Var>,
    target_vars: BTreeSet<Var>,
    terms: Vec<Term>,
    target_subformulas: Vec<Formula>,
    default_ground: Formula,
    propositional_only: bool,
}

impl<'k> Saturation<'k> {
    pub fn new(kernel: &'k Kernel, budget: Budget, exec: Exec) -> Self {
        Self::with_targets(kernel, budget, exec, &[])
    }

    /// Start a run whose seeding is driven by the given target formulas.
    pub fn with_targets(kernel: &'k Kernel, budget: Budget, exec: Exec, targets: &[Formula]) -> Self {
        Self::build(kernel, budget, exec, targets, false)
    }

    /// A run over A1-A3 and MP only, whose schematic theorems are still
    /// instantiated to the targets' subformulas. Finds exactly the targets
    /// that are instances of tautologies.
    pub fn propositional(kernel: &'k Kernel, budget: Budget, exec: Exec, targets: &[Formula]) -> Self {
        Self::build(kernel, budget, exec, targets, true)
    }

    fn build(kernel: &'k Kernel, budget: Budget, exec: Exec, targets: &[Formula], force_propositional: bool) -> Self {
        let mut target_vars = BTreeSet::new();
        let mut terms: BTreeSet<Term> = BTreeSet::new();
        let mut subs: BTreeSet<Formula> = BTreeSet::new();
        for t in targets {
            target_vars.extend(t.all_vars());
            terms.extend(t.terms());
            t.visit(&mut |f| {
                subs.insert(f.clone());
            });
        }
        let mut gen_vars: BTreeSet<Var> = (1..=3).map(Var).collect();
        gen_vars.extend(target_vars.iter().copied());
        terms.insert(arith::zero());
        terms.extend(gen_vars.iter().map(|v| Term::Var(*v)));
        // Placeholders occur in no fixed axiom, so a placeholder-only target
        // built from ¬ and → is provable iff it is a tautology, and A1-A3
        // suffice for it.
        let propositional_only =
            force_propositional || (!targets.is_empty() && targets.iter().all(is_propositional));
        let mut sat = Saturation {
            kernel,
            budget,
            exec,
            processed: Vec::new(),
            heap: BinaryHeap::new(),
            seen: HashMap::new(),
            seq: 0,
            steps: 0,
            gen_vars: gen_vars.into_iter().collect(),
            target_vars,
            terms: terms.into_iter().filter(|t| t.size() <= budget.max_formula_size).collect(),
            target_subformulas: subs.into_iter().collect(),
            default_ground: Formula::Placeholder(51),
            propositional_only,
        };
        sat.seed();
        sat
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn seed(&mut self) {
        let axioms = &self.kernel.axioms;
        let schemas = [
            (Builtin::PropositionalK, imp(m(0), imp(m(1), m(0)))),
            (
                Builtin::PropositionalS,
                imp(imp(m(0), imp(m(1), m(2))), imp(imp(m(0), m(1)), imp(m(0), m(2)))),
            ),
            (Builtin::Contraposition, imp(imp(not(m(0)), not(m(1))), imp(imp(not(m(0)), m(1)), m(0)))),
        ];
        let mut seeds = Vec::new();
        for (b, pat) in schemas {
            if let Some(id) = axioms.has_builtin(b) {
                seeds.push(Candidate { pat, lines: 1, deriv: Deriv::Axiom(id.to_string()) });
            }
        }
        for (id, f) in axioms.fixed_formulas().filter(|_| !self.propositional_only) {
            seeds.push(Candidate { pat: Pat::from_formula(f), lines: 1, deriv: Deriv::Axiom(id.to_string()) });
        }
        let subs = if self.propositional_only { Vec::new() } else { self.target_subformulas.clone() };
        for s in &subs {
            seeds.extend(self.quantifier_axioms(s));
            if let (Formula::Forall(x, b), Some(id)) = (s, axioms.has_builtin(Builtin::Induction)) {
                if b.free_for(&arith::succ(Term::Var(*x)), *x) {
                    let inst = axioms::induction_instance(b, *x);
                    seeds.push(Candidate { pat: Pat::from_formula(&inst), lines: 1, deriv: Deriv::Axiom(id.to_string()) });
                }
            }
        }
        for c in seeds {
            self.push(c);
        }
    }

    /// Instantiation and distribution axioms whose antecedent is `f`.
    fn quantifier_axioms(&self, f: &Formula) -> Vec<Candidate> {
        let axioms = &self.kernel.axioms;
        let mut out = Vec::new();
        let Formula::Forall(x, b) = f else { return out };
        if let Some(id) = axioms.has_builtin(Builtin::Instantiation) {
            let mut instances = BTreeSet::new();
            for t in &self.terms {
                if b.free_for(t, *x) {
                    instances.insert(b.substitute(*x, t));
                }
            }
            for inst in instances {
                out.push(Candidate {
                    pat: Pat::from_formula(&Formula::implies(f.clone(), inst)),
                    lines: 1,
                    deriv: Deriv::Axiom(id.to_string()),
                });
            }
        }
        if let (Formula::Implies(p, q), Some(id)) = (&**b, axioms.has_builtin(Builtin::QuantifierDistribution)) {
            if !p.is_free(*x) {
                let inst = Formula::implies(f.clone(), Formula::implies((**p).clone(), Formula::forall(*x, (**q).clone())));
                out.push(Candidate { pat: Pat::from_formula(&inst), lines: 1, deriv: Deriv::Axiom(id.to_string()) });
            }
        }
        out
    }

    fn sort_key(&self, pat: &Pat) -> Vec<u64> {
        let n = pat.meta_bound() as usize;
        let env: Vec<Option<Formula>> =
            grounding_codes(self.kernel, n).into_iter().map(|c| Some(Formula::Placeholder(c))).collect();
        let f = pat.to_formula(&env, &self.default_ground);
        crate::syntax::flatten(&f)
            .into_iter()
            .map(|s| self.kernel.table.code(s).unwrap_or(u64::MAX))
            .collect()
    }

    fn push(&mut self, c: Candidate) {
        let size = c.pat.size();
        if size > self.budget.max_formula_size || c.lines > self.budget.max_depth {
            return;
        }
        if let Some(&lines) = self.seen.get(&c.pat) {
            if lines <= c.lines {
                return;
            }
        }
        self.seen.insert(c.pat.clone(), c.lines);
        let key = self.sort_key(&c.pat);
        self.seq += 1;
        self.heap.push(Entry { seq: self.seq, item: Item { meta_bound: c.pat.meta_bound(), pat: c.pat, lines: c.lines, size, key, deriv: c.deriv } });
    }

    /// Pop and process the next item not subsumed by an earlier one.
    /// Returns its index, or `None` when the budget or the queue runs out.
    pub fn step(&mut self) -> Option<usize> {
        loop {
            if self.steps >= self.budget.max_steps {
                return None;
            }
            let entry = self.heap.pop()?;
            self.steps += 1;
            let item = entry.item;
            let pat = &item.pat;
            let subsumed = self.exec.any(&self.processed, |g| g.size <= item.size && subsumes(&g.pat, pat, &mut Vec::new()));
            if subsumed {
                continue;
            }
            let idx = self.processed.len();
            self.processed.push(item);
            self.infer(idx);
            return Some(idx);
        }
    }

    fn infer(&mut self, idx: usize) {
        let budget = self.budget;
        let given = &self.processed[idx];
        let indices: Vec<usize> = (0..=idx).collect();
        let processed = &self.processed;
        let seen = &self.seen;
        let max_size = budget.max_formula_size;
        let mut out: Vec<Candidate> = self.exec.flat_map(&indices, |&j| {
            let other = &processed[j];
            let mut cands = Vec::new();
            if given.lines + other.lines < budget.max_depth {
                if let Some(c) = detach(processed, idx, j, max_size, seen) {
                    cands.push(c);
                }
                if j != idx {
                    if let Some(c) = detach(processed, j, idx, max_size, seen) {
                        cands.push(c);
                    }
                }
            }
            cands
        });
        if given.pat.is_ground() && !self.propositional_only {
            let f = given.pat.to_formula(&[], &self.default_ground);
            if given.lines < budget.max_depth {
                for &x in &self.gen_vars {
                    let vacuous = !f.is_free(x);
                    if vacuous && (!self.target_vars.contains(&x) || matches!(&f, Formula::Forall(y, _) if *y == x)) {
                        continue;
                    }
                    out.push(Candidate {
                        pat: Pat::from_formula(&Formula::forall(x, f.clone())),
                        lines: given.lines + 1,
                        deriv: Deriv::Gen { premise: idx, var: x },
                    });
                }
            }
            out.extend(self.quantifier_axioms(&f));
        } else if !given.pat.is_ground() {
            for s in &self.target_subformulas {
                if is_instance_of(&given.pat, s).is_some() {
                    out.push(Candidate {
                        pat: Pat::from_formula(s),
                        lines: given.lines,
                        deriv: Deriv::Instance { source: idx },
                    });
                }
            }
        }
        for c in out {
            self.push(c);
        }
    }

    pub fn theorem_pattern_is_ground(&self, idx: usize) -> bool {
        self.processed[idx].pat.is_ground()
    }

    /// The emitted formula for item `idx`: metavariables become distinct placeholders.
    pub fn grounded(&self, idx: usize) -> Formula {
        let pat = &self.processed[idx].pat;
        let env: Vec<Option<Formula>> = grounding_codes(self.kernel, pat.meta_bound() as usize)
            .into_iter()
            .map(|c| Some(Formula::Placeholder(c)))
            .collect();
        pat.to_formula(&env, &self.default_ground)
    }

    /// If `f` is an instance of theorem `idx`, a strict proof of `f`.
    pub fn proof_of(&self, idx: usize, f: &Formula) -> Option<ProofScript> {
        is_instance_of(&self.processed[idx].pat, f)?;
        let mut b = ProofBuilder { script: ProofScript::new(), proved: HashMap::new() };
        self.ground_into(idx, f, &mut b);
        Some(b.script)
    }

    fn ground_into(&self, idx: usize, target: &Formula, b: &mut ProofBuilder) -> usize {
        if let Some(&n) = b.proved.get(target) {
            return n;
        }
        let item = &self.processed[idx];
        match &item.deriv {
            Deriv::Axiom(id) => b.push(target.clone(), Justification::Axiom(Some(id.clone()))),
            Deriv::Instance { source } => self.ground_into(*source, target, b),
            Deriv::Gen { premise, var } => {
                let Formula::Forall(_, body) = target else { unreachable!("generalization grounds to a quantifier") };
                let n = self.ground_into(*premise, body, b);
                b.push(target.clone(), Justification::Gen(n, *var))
            }
            Deriv::Mp { major, minor, major_inst } => {
                let env = is_instance_of(&item.pat, target).expect("target is an instance of the theorem");
                let major_f = major_inst.to_formula(&env, &self.default_ground);
                let Formula::Implies(antecedent, _) = &major_f else { unreachable!("major premise is an implication") };
                let i = self.ground_into(*minor, antecedent, b);
                let j = self.ground_into(*major, &major_f, b);
                b.push(target.clone(), Justification::Mp(i, j))
            }
        }
    }

    /// Index of the first processed theorem having `f` as an instance.
    pub fn covers(&self, idx: usize, f: &Formula) -> bool {
        is_instance_of(&self.processed[idx].pat, f).is_some()
    }

    pub fn tree_lines(&self, idx: usize) -> usize {
        self.processed[idx].lines
    }
}

fn is_propositional(f: &Formula) -> bool {
    match f {
        Formula::Placeholder(_) => true,
        Formula::Atom(..) | Formula::Forall(..) => false,
        Formula::Not(a) => is_propositional(a),
        Formula::Implies(a, b) => is_propositional(a) && is_propositional(b),
    }
}

/// Condensed detachment: `major` must be an implication whose antecedent
/// unifies with `minor`. Results over the size limit, or already seen with
/// a derivation no larger, are dropped before the major instance is built.
fn detach(
    processed: &[Item],
    major: usize,
    minor: usize,
    max_size: usize,
    seen: &HashMap<Pat, usize>,
) -> Option<Candidate> {
    let maj = &processed[major];
    let min = &processed[minor];
    let Pat::Imp(ant, consequent) = &maj.pat else { return None };
    if !compatible(ant, &min.pat) {
        return None;
    }
    let k = maj.meta_bound;
    let mut s: Bindings<'_> = vec![None; (k + min.meta_bound) as usize];
    if !unify(ant, 0, &min.pat, k, &mut s) {
        return None;
    }
    if resolved_size(consequent, 0, &s, max_size + 1) > max_size {
        return None;
    }
    let lines = maj.lines + min.lines + 1;
    let mut map = Vec::new();
    let mut next = 0;
    let pat = resolve(consequent, 0, &s).rename(&mut map, &mut next);
    if seen.get(&pat).is_some_and(|&l| l <= lines) {
        return None;
    }
    let major_inst = resolve(&maj.pat, 0, &s).rename(&mut map, &mut next);
    Some(Candidate { pat, lines, deriv: Deriv::Mp { major, minor, major_inst } })
}

/// Size of `p` under the bindings, counting no further than `cap`.
fn resolved_size(p: &Pat, off: u32, s: &Bindings<'_>, cap: usize) -> usize {
    let (p, off) = walk(p, off, s);
    match p {
        Pat::Meta(_) | Pat::Ph(_) | Pat::Atom(..) => p.size(),
        Pat::Not(a) | Pat::Forall(_, a) => 1 + resolved_size(a, off, s, cap.saturating_sub(1)),
        Pat::Imp(a, b) => {
            let l = resolved_size(a, off, s, cap.saturating_sub(1));
            if 1 + l >= cap {
                return 1 + l;
            }
            1 + l + resolved_size(b, off, s, cap - 1 - l)
        }
    }
}

/// Cheap pre-check: top-level constructors can unify.
fn compatible(a: &Pat, b: &Pat) -> bool {
    matches!(
        (a, b),
        (Pat::Meta(_), _)
            | (_, Pat::Meta(_))
            | (Pat::Not(_), Pat::Not(_))
            | (Pat::Imp(..), Pat::Imp(..))
            | (Pat::Forall(..), Pat::Forall(..))
            | (Pat::Ph(_), Pat::Ph(_))
            | (Pat::Atom(..), Pat::Atom(..))
    )
}

// ---------------------------------------------------------------------------
// Streams

/// One element of list i) or ii): a proof number and the proved (or refuted) formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    pub x: GoedelNumber,
    pub v: GoedelNumber,
    pub formula: Formula,
    pub script: ProofScript,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StreamKind {
    Pf,
    Rf,
}

impl Emission {
    /// `PF <x> |- <formula>` or `RF <x> |- <formula>`.
    pub fn record(&self, kind: StreamKind) -> String {
        let tag = match kind {
            StreamKind::Pf => "PF",
            StreamKind::Rf => "RF",
        };
        format!("{tag} {} |- {}", self.x, self.formula)
    }
}

/// Counters for a stream run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamStats {
    pub emitted: usize,
    /// Candidates whose compiled proof failed the predicate check. Never
    /// emitted; nonzero only if the generator has a bug.
    pub rejected: usize,
}

/// List i): theorems with their proof numbers, each checked with `pf`.
pub struct TheoremStream<'k> {
    sat: Saturation<'k>,
    stats: StreamStats,
}

impl<'k> TheoremStream<'k> {
    pub fn stats(&self) -> StreamStats {
        self.stats
    }

    pub fn steps(&self) -> usize {
        self.sat.steps()
    }
}

fn emit(sat: &Saturation<'_>, idx: usize) -> Option<Emission> {
    let formula = sat.grounded(idx);
    let script = sat.proof_of(idx, &formula)?;
    let table = &sat.kernel.table;
    let x = crate::checker::compile_proof(&script, table).ok()?;
    let v = codec::encode_formula(&formula, table).ok()?;
    sat.kernel.pf(&x, &v).then_some(Emission { x, v, formula, script })
}

impl Iterator for TheoremStream<'_> {
    type Item = Emission;

    fn next(&mut self) -> Option<Emission> {
        loop {
            let idx = self.sat.step()?;
            match emit(&self.sat, idx) {
                Some(e) => {
                    self.stats.emitted += 1;
                    return Some(e);
                }
                None => self.stats.rejected += 1,
            }
        }
    }
}

pub fn enumerate_theorems(kernel: &Kernel, budget: Budget, exec: Exec) -> TheoremStream<'_> {
    TheoremStream { sat: Saturation::new(kernel, budget, exec), stats: StreamStats::default() }
}

/// List ii): theorems of the form `(¬α)`, reported with `v = ⌜α⌝`.
pub struct RefutationStream<'k> {
    inner: TheoremStream<'k>,
    rejected: usize,
}

impl RefutationStream<'_> {
    pub fn rejected(&self) -> usize {
        self.rejected + self.inner.stats.rejected
    }
}

impl Iterator for RefutationStream<'_> {
    type Item = Emission;

    fn next(&mut self) -> Option<Emission> {
        loop {
            let e = self.inner.next()?;
            let Formula::Not(alpha) = &e.formula else { continue };
            let kernel = self.inner.sat.kernel;
            let Ok(v) = codec::encode_formula(alpha, &kernel.table) else { continue };
            if kernel.rf(&e.x, &v) {
                return Some(Emission { formula: (**alpha).clone(), v, ..e });
            }
            self.rejected += 1;
        }
    }
}

pub fn enumerate_refutations(kernel: &Kernel, budget: Budget, exec: Exec) -> RefutationStream<'_> {
    RefutationStream { inner: enumerate_theorems(kernel, budget, exec), rejected: 0 }
}

/// Which complement list: iii) `¬Rf(n, ⌜α⌝)` or iv) `¬Pf(n, ⌜α⌝)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplementKind {
    PfSide,
    RfSide,
}

/// Does candidate `n` belong to the complement list for `alpha`?
pub fn complement_holds(kernel: &Kernel, kind: ComplementKind, n: &GoedelNumber, alpha: &GoedelNumber) -> bool {
    match kind {
        ComplementKind::PfSide => !kernel.rf(n, alpha),
        ComplementKind::RfSide => !kernel.pf(n, alpha),
    }
}

/// Candidates in saturation order, seeded towards `alpha` and `(¬alpha)`,
/// that satisfy the complement predicate against `alpha`. Each step offers
/// its generic proof number and, where the new theorem covers a goal, the
/// proof number of that goal's instance, so search witnesses appear here.
pub fn enumerate_complements<'k>(
    kernel: &'k Kernel,
    kind: ComplementKind,
    alpha: &Formula,
    budget: Budget,
    exec: Exec,
) -> impl Iterator<Item = GoedelNumber> + 'k {
    let v = codec::encode_formula(alpha, &kernel.table).ok();
    let goals = [alpha.clone(), Formula::not(alpha.clone())];
    let mut runs = Dovetail::new(kernel, budget, exec, &goals);
    let mut pending: Vec<GoedelNumber> = Vec::new();
    std::iter::from_fn(move || loop {
        if let Some(n) = pending.pop() {
            return Some(n);
        }
        let v = v.as_ref()?;
        let (r, idx) = runs.step()?;
        let sat = &runs.runs[r];
        let mut found: Vec<GoedelNumber> = emit(sat, idx).map(|e| e.x).into_iter().collect();
        for g in &goals {
            if let Some(x) = sat.proof_of(idx, g).and_then(|s| crate::checker::compile_proof(&s, &kernel.table).ok()) {
                if !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        found.retain(|n| complement_holds(kernel, kind, n, v));
        found.reverse();
        pending = found;
    })
}

// ---------------------------------------------------------------------------
// Search

/// Round-robin over a full run and, when the targets go beyond placeholder
/// logic, a propositional run that reaches tautology instances without the
/// noise of the proper axioms. The step budget is shared.
struct Dovetail<'k> {
    runs: Vec<Saturation<'k>>,
    live: Vec<bool>,
    turn: usize,
    max_steps: usize,
}

impl<'k> Dovetail<'k> {
    fn new(kernel: &'k Kernel, budget: Budget, exec: Exec, targets: &[Formula]) -> Self {
        let mut runs = vec![Saturation::with_targets(kernel, budget, exec, targets)];
        let has_k = kernel.axioms.has_builtin(Builtin::PropositionalK).is_some();
        if !runs[0].propositional_only && has_k {
            runs.push(Saturation::propositional(kernel, budget, exec, targets));
        }
        let live = vec![true; runs.len()];
        Dovetail { runs, live, turn: 0, max_steps: budget.max_steps }
    }

    fn steps(&self) -> usize {
        self.runs.iter().map(Saturation::steps).sum()
    }

    fn step(&mut self) -> Option<(usize, usize)> {
        while self.steps() < self.max_steps && self.live.iter().any(|&l| l) {
            let r = self.turn;
            self.turn = (self.turn + 1) % self.runs.len();
            if !self.live[r] {
                continue;
            }
            match self.runs[r].step() {
                Some(idx) => return Some((r, idx)),
                None => self.live[r] = false,
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    Proved { witness: GoedelNumber, script: ProofScript, steps: usize },
    Refuted { witness: GoedelNumber, script: ProofScript, steps: usize },
    Unknown { steps: usize },
}

impl SearchVerdict {
    pub fn witness(&self) -> Option<&GoedelNumber> {
        match self {
            SearchVerdict::Proved { witness, .. } | SearchVerdict::Refuted { witness, .. } => Some(witness),
            SearchVerdict::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchVerdict::Proved { witness, .. } => write!(f, "PROVED n={witness}"),
            SearchVerdict::Refuted { witness, .. } => write!(f, "REFUTED n={witness}"),
            SearchVerdict::Unknown { .. } => f.write_str("UNKNOWN"),
        }
    }
}

/// Look for a proof of `alpha` or of `(¬alpha)`, checking each new theorem
/// against both; the first hit wins.
pub fn search(kernel: &Kernel, alpha: &Formula, budget: Budget, exec: Exec) -> SearchVerdict {
    let neg = Formula::not(alpha.clone());
    let table = &kernel.table;
    let (Ok(v), Ok(nv)) = (codec::encode_formula(alpha, table), codec::encode_formula(&neg, table)) else {
        return SearchVerdict::Unknown { steps: 0 };
    };
    let mut runs = Dovetail::new(kernel, budget, exec, &[alpha.clone(), neg.clone()]);
    while let Some((r, idx)) = runs.step() {
        for (goal, code, proved) in [(alpha, &v, true), (&neg, &nv, false)] {
            let Some(script) = runs.runs[r].proof_of(idx, goal) else { continue };
            let Ok(x) = crate::checker::compile_proof(&script, table) else { continue };
            if !kernel.pf(&x, code) {
                continue;
            }
            let steps = runs.steps();
            return if proved {
                SearchVerdict::Proved { witness: x, script, steps }
            } else {
                SearchVerdict::Refuted { witness: x, script, steps }
            };
        }
    }
    SearchVerdict::Unknown { steps: runs.steps() }
}

/// A per-witness statement: at `n`, the dual predicate fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    /// `n` proves α, and `¬Rf(n, ⌜α⌝)` was checked.
    NoRefutationWitnessAt(String),
    /// `n` refutes α, and `¬Pf(n, ⌜α⌝)` was checked.
    NoProofWitnessAt(String),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::NoRefutationWitnessAt(n) => write!(f, "not Rf at n={n} (no refutation witness at n)"),
            Claim::NoProofWitnessAt(n) => write!(f, "not Pf at n={n} (no proof witness at n)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrant {
    pub proved_at: Option<GoedelNumber>,
    pub refuted_at: Option<GoedelNumber>,
    pub per_n_claims: Vec<Claim>,
}

/// Witness indices found within budget and the per-n complements they
/// entail. Only facts about the witnesses are recorded.
pub fn quadrant(kernel: &Kernel, alpha: &Formula, budget: Budget, exec: Exec) -> Quadrant {
    let mut q = Quadrant { proved_at: None, refuted_at: None, per_n_claims: Vec::new() };
    let Ok(v) = codec::encode_formula(alpha, &kernel.table) else { return q };
    match search(kernel, alpha, budget, exec) {
        SearchVerdict::Proved { witness, .. } => {
            if !kernel.rf(&witness, &v) {
                q.per_n_claims.push(Claim::NoRefutationWitnessAt(witness.to_string()));
            }
            q.proved_at = Some(witness);
        }
        SearchVerdict::Refuted { witness, .. } => {
            if !kernel.pf(&witness, &v) {
                q.per_n_claims.push(Claim::NoProofWitnessAt(witness.to_string()));
            }
            q.refuted_at = Some(witness);
        }
        SearchVerdict::Unknown { .. } => {}
    }
    q
}
