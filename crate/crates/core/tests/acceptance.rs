//! Acceptance suite: one timed check per criterion, one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use common::*;
use goedelkit::checker::{check_proof, compile_proof, compile_symbols};
use goedelkit::codec::{self, GoedelNumber, SymbolTable};
use goedelkit::enumerator::{self, Budget, SearchVerdict};
use goedelkit::fixtures::{self, EntryKind};
use goedelkit::lemmas::{self, Lemma, Status};
use goedelkit::par::Exec;
use goedelkit::predicates::Kernel;
use goedelkit::reader::parse_formula;
use goedelkit::syntax::{Formula, FuncLetter, Symbol};
use rand::seq::SliceRandom;
use rand::Rng;

/// The five printed sequences of the first worked proof, verbatim.
const PRINTED_TEX: [&str; 5] = [
    "2^{3} 3^{9} 5^{51} 7^{11} 11^{9} 13^{9} 17^{51} 19^{5}  23^{11} 29^{3} 31^{3} 37^{9} 41^{51} 43^{11} 47^{9} 53^{51} 59^{5} 61^{11} 67^{51} 71^{5}",
    "2^{3} 3^{9} 5^{51} 7^{11} 11^{9} 13^{51} 17^{5}",
    "2^{3} 3^{9} 5^{51} 7^{11} 11^{9} 13^{9} 17^{51} 19^{5}  23^{11} 29^{5}",
    "2^{9} 3^{9} 5^{51} 7^{11} 11^{3} 13^{9} 17^{51} 19^{11} 23^{9} 29^{9} 31^{51} 37^{5}",
    "2^{3} 3^{9} 5^{9} 7^{51} 11^{11} 13^{51} 17^{5}",
];

/// `2^{3} 3^{9}` becomes `2^3 * 3^9`.
fn tex_to_factored(tex: &str) -> String {
    tex.split_whitespace().map(|t| t.replace(['{', '}'], "")).collect::<Vec<_>>().join(" * ")
}

fn tex_exponents(tex: &str) -> Vec<u64> {
    tex.split_whitespace()
        .map(|t| t.split('^').nth(1).unwrap().trim_matches(['{', '}']).parse().unwrap())
        .collect()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kernel() -> Kernel {
    Kernel::default()
}

fn example1_number() -> GoedelNumber {
    let t = SymbolTable::canonical();
    compile_symbols(&fixtures::example1_printed_symbols(&t), &t).unwrap()
}

fn c1() -> Outcome {
    let x = example1_number();
    for (i, tex) in PRINTED_TEX.iter().enumerate() {
        let g = x.component(i).unwrap();
        ensure(g.symbol_codes().unwrap() == tex_exponents(tex), || format!("g({}) exponents differ", i + 1))?;
        ensure(g.to_string() == tex_to_factored(tex), || format!("g({}) renders as {g}", i + 1))?;
    }
    Ok("g(1)..g(5) byte-identical".into())
}

fn c2() -> Outcome {
    let x = example1_number();
    ensure(x.lh() == Ok(5), || format!("lh = {:?}", x.lh()))?;
    let g5 = x.component(4).unwrap();
    ensure(g5.to_string() == tex_to_factored(PRINTED_TEX[4]), || format!("component 4 = {g5}"))?;
    let comps: Vec<_> = (0..5).map(|i| x.component(i).unwrap()).collect();
    ensure(GoedelNumber::seq(comps).unwrap() == x, || "x is not Seq[g(1)..g(5)]".into())?;
    Ok("lh(x)=5, component(x,4)=g(5)".into())
}

fn c3() -> Outcome {
    let k = kernel();
    let code = k.table.code(Symbol::Func(FuncLetter::new(2, 3))).map_err(|e| e.to_string())?;
    ensure(code == 865, || format!("f2_3 = {code}"))?;
    let t = k.table.code(Symbol::Func(FuncLetter::new(0, 1))).map_err(|e| e.to_string())?;
    let x = compile_proof(&fixtures::example2_script(), &k.table).map_err(|e| e.to_string())?;
    ensure(x.lh() == Ok(11), || "second worked script is not 11 components".into())?;
    let y = codec::encode_formula(&parse_formula("f0_1 < f0_1").unwrap(), &k.table).unwrap();
    Ok(format!("f2_3 = 865; t = f0_1 has code {t} (printed as 33); y = {y}"))
}

fn c4() -> Outcome {
    let k = kernel();
    let x = compile_proof(&fixtures::double_negation_proof(), &k.table).unwrap();
    let g5 = codec::encode_formula(&parse_formula("((!(!B51)) -> B51)").unwrap(), &k.table).unwrap();
    ensure(k.pf(&x, &g5), || "pf(x, g(5)) is false".into())?;
    let r = compile_proof(&fixtures::irreflexive_refutation(&fixtures::t()), &k.table).unwrap();
    let tt = codec::encode_formula(&parse_formula("f0_1 < f0_1").unwrap(), &k.table).unwrap();
    ensure(k.rf(&r, &tt), || "rf(x, t<t) is false".into())?;
    Ok("pf(strict, g(5)) and rf(strict, t<t) hold".into())
}

/// Flip one symbol code inside one component of a proof number.
fn code_mutant(rng: &mut impl Rng, x: &GoedelNumber) -> GoedelNumber {
    let mut comps: Vec<GoedelNumber> = x.components().unwrap().into_owned();
    let i = rng.gen_range(0..comps.len());
    let mut codes = comps[i].symbol_codes().unwrap();
    let j = rng.gen_range(0..codes.len());
    let pool = [3u64, 5, 7, 9, 11, 13, 15, 21, 25, 29, 51, 59, 67, 99, 867];
    codes[j] = *pool.iter().filter(|&&c| c != codes[j]).collect::<Vec<_>>().choose(rng).unwrap().to_owned();
    comps[i] = GoedelNumber::seq(codes.into_iter().map(GoedelNumber::leaf).collect()).unwrap();
    GoedelNumber::seq(comps).unwrap()
}

/// Pairs over valid proofs, refutations, code-level mutants and towers.
fn generated_pairs(count: usize) -> Vec<(GoedelNumber, GoedelNumber)> {
    let k = kernel();
    let enc = |f: &Formula| codec::encode_formula(f, &k.table).unwrap();
    let mut r = rng(0xACCE);
    let refutations: Vec<_> = fixtures::corpus().into_iter().filter(|e| e.kind == EntryKind::Refutation).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (script, alpha) = match r.gen_range(0..4) {
            0 => {
                let e = refutations.choose(&mut r).unwrap();
                (e.script.clone(), e.alpha.clone())
            }
            _ => {
                let s = valid_script(&mut r, 6);
                let last = s.last_formula().unwrap().clone();
                let alpha = match &last {
                    Formula::Not(a) if r.gen_bool(0.5) => (**a).clone(),
                    _ => last,
                };
                (s, alpha)
            }
        };
        let x = compile_proof(&script, &k.table).unwrap();
        let v = if r.gen_bool(0.8) { enc(&alpha) } else { enc(&formula(&mut r, 3)) };
        out.push((x.clone(), v.clone()));
        out.push((code_mutant(&mut r, &x), v.clone()));
        out.push((random_tower(&mut r, 2), v.clone()));
        // The negation of α exercises the refutation side of the same proof.
        out.push((x, codec::neg_code(&v, &k.table).unwrap()));
    }
    out
}

fn c5() -> Outcome {
    let k = kernel();
    let pairs = generated_pairs(10_000);
    let (mut pf, mut rf) = (0, 0);
    for (x, v) in &pairs {
        let (p, q) = (k.pf(x, v), k.rf(x, v));
        ensure(!(p && q), || format!("pf and rf both hold at n={x}"))?;
        pf += usize::from(p);
        rf += usize::from(q);
    }
    ensure(pf > 1000 && rf > 100, || format!("too few positive pairs (pf {pf}, rf {rf})"))?;
    Ok(format!("{} pairs, 0 violations ({pf} with pf, {rf} with rf)", pairs.len()))
}

fn c6() -> Outcome {
    let k = kernel();
    let corpus = fixtures::corpus();
    let proofs = corpus.iter().filter(|e| e.kind == EntryKind::Proof).count();
    let refuts = corpus.iter().filter(|e| e.kind == EntryKind::Refutation).count();
    ensure(proofs >= 20 && refuts >= 10, || format!("{proofs} proofs, {refuts} refutations"))?;
    let items: Vec<_> = corpus.into_iter().map(|e| (e.script, e.alpha)).collect();
    let summary = lemmas::run_corpus(&k, &items, Exec::Parallel);
    ensure(summary.passed(), || summary.failures().map(|r| r.to_string()).collect::<Vec<_>>().join("; "))?;
    let applied = |l: Lemma| summary.reports.iter().filter(|r| r.lemma == l && r.status() == Status::Holds).count();
    for l in [Lemma::Complete1, Lemma::AntiDiagIII] {
        ensure(applied(l) >= proofs, || format!("{l} applied {} times", applied(l)))?;
    }
    for l in [Lemma::Complete2, Lemma::AntiDiagII] {
        ensure(applied(l) >= refuts, || format!("{l} applied {} times", applied(l)))?;
    }
    // One-way consequences at every pair, checked directly.
    for (script, alpha) in &items {
        let x = compile_proof(script, &k.table).unwrap();
        let v = codec::encode_formula(alpha, &k.table).unwrap();
        let (p, q) = (k.pf(&x, &v), k.rf(&x, &v));
        ensure(!p || !q, || "pf => !rf fails".into())?;
        ensure(!q || !p, || "rf => !pf fails".into())?;
    }
    Ok(format!(
        "{} items, {} checks, {} hold, {} n/a, 0 fail",
        summary.items,
        summary.reports.len(),
        summary.count(Status::Holds),
        summary.count(Status::HypothesisNotMet)
    ))
}

fn c7() -> Outcome {
    let k = kernel();
    let mut r = rng(0xD1FF);
    let (mut valid, mut mutated, mut rejected) = (0, 0, 0);
    for i in 0..1200 {
        let base = valid_script(&mut r, 10);
        let s = if i % 2 == 0 { base } else { single_symbol_mutant(&mut r, &base) };
        let ok = check_proof(&s, &k.axioms).ok;
        let prf = k.prf(&compile_proof(&s, &k.table).unwrap());
        ensure(ok == prf, || format!("disagreement on script {i}: checker {ok}, prf {prf}"))?;
        if i % 2 == 0 {
            valid += 1;
        } else {
            mutated += 1;
            rejected += usize::from(!ok);
        }
    }
    Ok(format!("{} scripts ({valid} valid, {mutated} mutated, {rejected} rejected), 0 disagreements", valid + mutated))
}

fn c8() -> Outcome {
    let t = SymbolTable::canonical();
    let mut r = rng(0x2017);
    let cap = 10_000;
    let mut materialized = 0;
    for i in 0..10_000 {
        let f = formula(&mut r, 4);
        let g = codec::encode_formula(&f, &t).unwrap();
        ensure(codec::decode_formula(&g, &t).as_ref() == Some(&f), || format!("round trip fails for formula {i}"))?;
        if let Ok(n) = g.materialize(cap) {
            let back = codec::factorize(&n, cap).map_err(|e| e.to_string())?;
            ensure(back.normalize(cap) == g.normalize(cap), || format!("factorize(materialize) differs for {g}"))?;
            materialized += 1;
        }
    }
    for i in 0..500 {
        let x = random_tower(&mut r, 1);
        if let Ok(n) = x.materialize(cap) {
            let back = codec::factorize(&n, cap).map_err(|e| e.to_string())?;
            ensure(back.normalize(cap) == x.normalize(cap), || format!("tower {i} differs"))?;
            materialized += 1;
        }
    }
    Ok(format!("10000 formulas round-trip; {materialized} codes under the cap re-factored"))
}

fn c9() -> Outcome {
    let k = kernel();
    let budget = Budget::default();
    let mut pf_stream = enumerator::enumerate_theorems(&k, budget, Exec::Parallel);
    let mut emitted = 0;
    for e in pf_stream.by_ref() {
        ensure(k.pf(&e.x, &e.v), || format!("emitted pair fails pf: {}", e.formula))?;
        emitted += 1;
    }
    ensure(pf_stream.stats().rejected == 0, || "theorem stream rejected candidates".into())?;
    let mut rf_stream = enumerator::enumerate_refutations(&k, budget, Exec::Parallel);
    let mut refuted = 0;
    for e in rf_stream.by_ref() {
        ensure(k.rf(&e.x, &e.v), || format!("emitted pair fails rf: {}", e.formula))?;
        refuted += 1;
    }
    ensure(rf_stream.rejected() == 0, || "refutation stream rejected candidates".into())?;

    let nnb = parse_formula("((!(!B51)) -> B51)").unwrap();
    let depth = fixtures::double_negation_proof().len();
    let v = enumerator::search(&k, &nnb, Budget { max_depth: depth, ..budget }, Exec::Parallel);
    ensure(matches!(v, SearchVerdict::Proved { .. }), || format!("search(nnB->B) = {v}"))?;
    let tt = parse_formula("f0_1 < f0_1").unwrap();
    let depth = fixtures::irreflexive_refutation(&fixtures::t()).len();
    let v = enumerator::search(&k, &tt, Budget { max_depth: depth, ..budget }, Exec::Parallel);
    ensure(matches!(v, SearchVerdict::Refuted { .. }), || format!("search(t<t) = {v}"))?;
    let b = Formula::placeholder(51);
    for bb in [Budget::new(100, 4, 9), Budget::new(2000, 12, 17), budget] {
        let v = enumerator::search(&k, &b, bb, Exec::Parallel);
        ensure(matches!(v, SearchVerdict::Unknown { .. }), || format!("search(B51) = {v} at {bb:?}"))?;
    }
    Ok(format!("{emitted} theorems and {refuted} refutations emitted, all checked; verdicts as expected"))
}

fn c10() -> Outcome {
    let k = kernel();
    let pairs = generated_pairs(4_000);
    for (x, v) in &pairs {
        let (c_pf, c_rf) = (k.c_pf(x, v).value(), k.c_rf(x, v).value());
        ensure(c_pf <= 1 && c_rf <= 1, || format!("value outside {{0,1}} at n={x}"))?;
        ensure((c_pf == 0) == k.pf(x, v), || format!("c_pf disagrees at n={x}"))?;
        ensure((c_rf == 0) == k.rf(x, v), || format!("c_rf disagrees at n={x}"))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("printed encoding golden", 1, c1),
        ("printed proof number", 1, c2),
        ("ordering example partial golden", 1, c3),
        ("strict-fixture Pf/Rf", 5, c4),
        ("not-both property suite", 60, c5),
        ("completeness and anti-diagonal suite", 30, c6),
        ("checker/predicate differential", 60, c7),
        ("round-trip", 60, c8),
        ("enumerator soundness and reachability", 120, c9),
        ("characteristic-function contract", 10, c10),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let verdict = match (&outcome, in_time) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        let detail = match outcome {
            Ok(d) => d,
            Err(e) => format!("error: {e}"),
        };
        let timing = format!("{:.3}s of {limit}s", took.as_secs_f64());
        println!("criterion {:>2} {verdict} [{timing}] {name}: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
