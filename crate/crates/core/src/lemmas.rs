//! Per-instance checks of the not-both, completeness and anti-diagonal
//! lemmas, run over single pairs or whole corpora.

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::checker::compile_proof;
use crate::codec::{self, GoedelNumber};
use crate::par::Exec;
use crate::predicates::Kernel;
use crate::reader::ProofScript;
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lemma {
    NotBoth,
    Complete1,
    Complete2,
    #[serde(rename = "AntiDiag_I")]
    AntiDiagI,
    #[serde(rename = "AntiDiag_II")]
    AntiDiagII,
    #[serde(rename = "AntiDiag_III")]
    AntiDiagIII,
}

impl Lemma {
    pub const ALL: [Lemma; 6] =
        [Lemma::NotBoth, Lemma::Complete1, Lemma::Complete2, Lemma::AntiDiagI, Lemma::AntiDiagII, Lemma::AntiDiagIII];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::NotBoth => "NotBoth",
            Lemma::Complete1 => "Complete1",
            Lemma::Complete2 => "Complete2",
            Lemma::AntiDiagI => "AntiDiag_I",
            Lemma::AntiDiagII => "AntiDiag_II",
            Lemma::AntiDiagIII => "AntiDiag_III",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "FAILS")]
    Fails,
    /// The lemma's hypothesis is false at this pair.
    #[serde(rename = "N/A")]
    HypothesisNotMet,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::HypothesisNotMet => "N/A",
        })
    }
}

/// Outcome of one lemma at one `(n, α)`.
///
/// `holds` is false only for a genuine violation. When the hypothesis is
/// not met, `applicable` is false and `holds` records the unconditional
/// one-way consequence where the lemma has one (always true otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub n: GoedelNumber,
    pub alpha: Formula,
    pub applicable: bool,
    pub holds: bool,
    pub details: String,
}

impl LemmaReport {
    pub fn status(&self) -> Status {
        match (self.holds, self.applicable) {
            (false, _) => Status::Fails,
            (true, true) => Status::Holds,
            (true, false) => Status::HypothesisNotMet,
        }
    }

    /// Short stable digest of `n` (SHA-256 of its factored rendering).
    pub fn n_hash(&self) -> String {
        n_hash(&self.n)
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            lemma: self.lemma,
            n_hash: self.n_hash(),
            n: self.n.to_string(),
            alpha: self.alpha.to_string(),
            status: self.status(),
            applicable: self.applicable,
            holds: self.holds,
            details: self.details.clone(),
        }
    }

    /// Recompute from `(lemma, n, alpha)` alone.
    pub fn recompute(&self, kernel: &Kernel) -> Result<LemmaReport, codec::CodecError> {
        check(kernel, self.lemma, &self.n, &self.alpha)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LEMMA {} n={} alpha={} {}", self.lemma, self.n_hash(), self.alpha, self.status())
    }
}

/// Serializable form of a report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRecord {
    pub lemma: Lemma,
    pub n_hash: String,
    pub n: String,
    pub alpha: String,
    pub status: Status,
    pub applicable: bool,
    pub holds: bool,
    pub details: String,
}

pub fn n_hash(n: &GoedelNumber) -> String {
    let digest = Sha256::digest(n.to_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Facts {
    pf: bool,
    rf: bool,
    c_pf: u8,
    c_rf: u8,
}

fn facts(kernel: &Kernel, n: &GoedelNumber, v: &GoedelNumber) -> Facts {
    let (pf, rf) = (kernel.pf(n, v), kernel.rf(n, v));
    Facts { pf, rf, c_pf: kernel.c_pf(n, v).value(), c_rf: kernel.c_rf(n, v).value() }
}

fn report(lemma: Lemma, n: &GoedelNumber, alpha: &Formula, applicable: bool, holds: bool, details: String) -> LemmaReport {
    LemmaReport { lemma, n: n.clone(), alpha: alpha.clone(), applicable, holds, details }
}

fn evaluate(lemma: Lemma, n: &GoedelNumber, alpha: &Formula, x: &Facts) -> LemmaReport {
    let base = format!("pf={} rf={}", x.pf, x.rf);
    match lemma {
        Lemma::NotBoth | Lemma::AntiDiagI => report(lemma, n, alpha, true, !(x.pf && x.rf), base),
        Lemma::Complete1 => {
            let ok = x.c_pf == 0 && x.c_rf == 1;
            report(lemma, n, alpha, x.pf, !x.pf || ok, format!("{base} c_pf={} c_rf={}", x.c_pf, x.c_rf))
        }
        Lemma::Complete2 => {
            let ok = x.c_rf == 0 && x.c_pf == 1;
            report(lemma, n, alpha, x.rf, !x.rf || ok, format!("{base} c_pf={} c_rf={}", x.c_pf, x.c_rf))
        }
        Lemma::AntiDiagII => {
            let one_way = !x.rf || !x.pf;
            if x.rf {
                report(lemma, n, alpha, true, x.rf == !x.pf, format!("{base} rf <=> !pf"))
            } else {
                report(lemma, n, alpha, false, one_way, format!("{base} rf => !pf"))
            }
        }
        Lemma::AntiDiagIII => {
            let one_way = !x.pf || !x.rf;
            if x.pf {
                report(lemma, n, alpha, true, x.pf == !x.rf, format!("{base} pf <=> !rf"))
            } else {
                report(lemma, n, alpha, false, one_way, format!("{base} pf => !rf"))
            }
        }
    }
}

/// Run one lemma at `(n, α)`.
pub fn check(kernel: &Kernel, lemma: Lemma, n: &GoedelNumber, alpha: &Formula) -> Result<LemmaReport, codec::CodecError> {
    let v = codec::encode_formula(alpha, &kernel.table)?;
    Ok(evaluate(lemma, n, alpha, &facts(kernel, n, &v)))
}

pub fn lemma_not_both(kernel: &Kernel, n: &GoedelNumber, alpha: &Formula) -> Result<LemmaReport, codec::CodecError> {
    check(kernel, Lemma::NotBoth, n, alpha)
}

pub fn lemma_complete1(kernel: &Kernel, n: &GoedelNumber, alpha: &Formula) -> Result<LemmaReport, codec::CodecError> {
    check(kernel, Lemma::Complete1, n, alpha)
}

pub fn lemma_complete2(kernel: &Kernel, n: &GoedelNumber, alpha: &Formula) -> Result<LemmaReport, codec::CodecError> {
    check(kernel, Lemma::Complete2, n, alpha)
}

/// Parts I, II and III.
pub fn lemma_antidiag(kernel: &Kernel, n: &GoedelNumber, alpha: &Formula) -> Result<[LemmaReport; 3], codec::CodecError> {
    let v = codec::encode_formula(alpha, &kernel.table)?;
    let x = facts(kernel, n, &v);
    Ok([Lemma::AntiDiagI, Lemma::AntiDiagII, Lemma::AntiDiagIII].map(|l| evaluate(l, n, alpha, &x)))
}

/// All six checks at one pair, sharing one predicate evaluation.
pub fn check_all(kernel: &Kernel, n: &GoedelNumber, alpha: &Formula) -> Result<Vec<LemmaReport>, codec::CodecError> {
    let v = codec::encode_formula(alpha, &kernel.table)?;
    let x = facts(kernel, n, &v);
    Ok(Lemma::ALL.iter().map(|&l| evaluate(l, n, alpha, &x)).collect())
}

#[derive(Clone, Debug, Default)]
pub struct CorpusSummary {
    pub items: usize,
    pub reports: Vec<LemmaReport>,
    /// Items that could not be compiled, by index.
    pub errors: Vec<(usize, String)>,
}

impl CorpusSummary {
    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status() == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaReport> {
        self.reports.iter().filter(|r| !r.holds)
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.failures().next().is_none()
    }

    /// Report lines followed by a summary block.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        for (i, e) in &self.errors {
            out.push_str(&format!("ERROR item {i}: {e}\n"));
        }
        out.push_str(&format!(
            "summary: items={} checks={} holds={} fails={} n/a={} errors={}\n",
            self.items,
            self.reports.len(),
            self.count(Status::Holds),
            self.count(Status::Fails),
            self.count(Status::HypothesisNotMet),
            self.errors.len()
        ));
        for l in Lemma::ALL {
            let of = |s| self.reports.iter().filter(|r| r.lemma == l && r.status() == s).count();
            out.push_str(&format!(
                "  {:<13} holds={} fails={} n/a={}\n",
                l.name(),
                of(Status::Holds),
                of(Status::Fails),
                of(Status::HypothesisNotMet)
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "items": self.items,
            "holds": self.count(Status::Holds),
            "fails": self.count(Status::Fails),
            "not_applicable": self.count(Status::HypothesisNotMet),
            "errors": self.errors.iter().map(|(i, e)| serde_json::json!({"item": i, "error": e})).collect::<Vec<_>>(),
            "reports": self.reports.iter().map(LemmaReport::record).collect::<Vec<_>>(),
        })
    }
}

/// Compile every script and run all six checks against its `α`. Items are
/// independent; the result is in corpus order whatever `exec` is.
pub fn run_corpus(kernel: &Kernel, corpus: &[(ProofScript, Formula)], exec: Exec) -> CorpusSummary {
    let per_item = exec.map(corpus, |(script, alpha)| {
        compile_proof(script, &kernel.table)
            .and_then(|n| check_all(kernel, &n, alpha))
            .map_err(|e| e.to_string())
    });
    let mut summary = CorpusSummary { items: corpus.len(), ..Default::default() };
    for (i, r) in per_item.into_iter().enumerate() {
        match r {
            Ok(reports) => summary.reports.extend(reports),
            Err(e) => summary.errors.push((i, e)),
        }
    }
    summary
}
