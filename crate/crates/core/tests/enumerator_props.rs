use goedelkit::checker::check_proof;
use goedelkit::codec;
use goedelkit::enumerator::{
    self, enumerate_complements, enumerate_refutations, enumerate_theorems, quadrant, search, Budget, Claim,
    ComplementKind, SearchVerdict,
};
use goedelkit::fixtures::{self, EntryKind};
use goedelkit::par::Exec;
use goedelkit::predicates::Kernel;
use goedelkit::reader::parse_formula;
use goedelkit::syntax::Formula;

#[test]
fn streams_are_sound() {
    let k = Kernel::default();
    let budget = Budget::new(400, 6, 13);
    let mut stream = enumerate_theorems(&k, budget, Exec::Parallel);
    let mut n = 0;
    for e in stream.by_ref() {
        assert!(k.pf(&e.x, &e.v));
        assert_eq!(codec::encode_formula(&e.formula, &k.table).unwrap(), e.v);
        assert!(check_proof(&e.script, &k.axioms).ok);
        n += 1;
    }
    assert!(n > 50, "{n}");
    assert_eq!(stream.stats().rejected, 0);
    let mut refs = enumerate_refutations(&k, budget, Exec::Parallel);
    let mut m = 0;
    for e in refs.by_ref() {
        assert!(k.rf(&e.x, &e.v));
        m += 1;
    }
    assert!(m > 0);
    assert_eq!(refs.rejected(), 0);
}

#[test]
fn streams_are_deterministic() {
    let k = Kernel::default();
    let budget = Budget::new(300, 6, 13);
    let run = |exec| enumerate_theorems(&k, budget, exec).map(|e| e.record(enumerator::StreamKind::Pf)).collect::<Vec<_>>();
    let seq = run(Exec::Sequential);
    assert_eq!(seq, run(Exec::Parallel));
    assert_eq!(seq, run(Exec::Sequential));
    let f = parse_formula("((!(!B51)) -> B51)").unwrap();
    assert_eq!(
        search(&k, &f, Budget::default(), Exec::Sequential),
        search(&k, &f, Budget::default(), Exec::Parallel)
    );
}

fn max_size(s: &goedelkit::reader::ProofScript) -> usize {
    s.formulas().map(Formula::size).max().unwrap_or(0)
}

#[test]
fn budget_completeness_on_corpus() {
    let k = Kernel::default();
    for e in fixtures::corpus().iter().filter(|e| e.kind != EntryKind::Mutant) {
        let b = Budget::new(20_000, e.script.len(), max_size(&e.script));
        let v = search(&k, &e.alpha, b, Exec::Parallel);
        match (e.kind, &v) {
            (EntryKind::Proof, SearchVerdict::Proved { witness, .. }) => {
                assert!(k.pf(witness, &codec::encode_formula(&e.alpha, &k.table).unwrap()))
            }
            (EntryKind::Refutation, SearchVerdict::Refuted { witness, .. }) => {
                assert!(k.rf(witness, &codec::encode_formula(&e.alpha, &k.table).unwrap()))
            }
            _ => panic!("{}: {v} with {b:?}", e.name),
        }
    }
}

#[test]
fn never_both_verdicts() {
    let k = Kernel::default();
    for e in fixtures::corpus().iter().filter(|e| e.kind != EntryKind::Mutant) {
        for b in [Budget::new(300, 4, 13), Budget::new(1500, 8, 17)] {
            let v = search(&k, &e.alpha, b, Exec::Parallel);
            let contradicts = match e.kind {
                EntryKind::Proof => matches!(v, SearchVerdict::Refuted { .. }),
                _ => matches!(v, SearchVerdict::Proved { .. }),
            };
            assert!(!contradicts, "{}: {v}", e.name);
        }
    }
}

#[test]
fn complements_contain_witnesses() {
    let k = Kernel::default();
    let nnb = parse_formula("((!(!B51)) -> B51)").unwrap();
    let b = Budget::new(2000, 17, 21);
    let SearchVerdict::Proved { witness, .. } = search(&k, &nnb, b, Exec::Parallel) else { panic!() };
    assert!(enumerate_complements(&k, ComplementKind::PfSide, &nnb, b, Exec::Parallel).any(|n| n == witness));

    let tt = parse_formula("f0_1 < f0_1").unwrap();
    let b = Budget::new(2000, 8, 15);
    let SearchVerdict::Refuted { witness, .. } = search(&k, &tt, b, Exec::Parallel) else { panic!() };
    assert!(enumerate_complements(&k, ComplementKind::RfSide, &tt, b, Exec::Parallel).any(|n| n == witness));
    let v = codec::encode_formula(&tt, &k.table).unwrap();
    for n in enumerate_complements(&k, ComplementKind::PfSide, &tt, Budget::new(200, 6, 13), Exec::Parallel) {
        assert!(!k.rf(&n, &v));
    }
}

#[test]
fn quadrant_claims_are_per_n() {
    let k = Kernel::default();
    let nnb = parse_formula("((!(!B51)) -> B51)").unwrap();
    let q = quadrant(&k, &nnb, Budget::new(2000, 17, 21), Exec::Parallel);
    assert!(q.proved_at.is_some() && q.refuted_at.is_none());
    assert!(matches!(q.per_n_claims.as_slice(), [Claim::NoRefutationWitnessAt(_)]));
    let tt = parse_formula("f0_1 < f0_1").unwrap();
    let q = quadrant(&k, &tt, Budget::new(2000, 8, 15), Exec::Parallel);
    assert!(q.refuted_at.is_some() && q.proved_at.is_none());
    assert!(matches!(q.per_n_claims.as_slice(), [Claim::NoProofWitnessAt(_)]));
    assert!(q.per_n_claims[0].to_string().contains("no proof witness at n"));
}
