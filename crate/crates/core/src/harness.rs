//! Compares the combinatorial predictions for `R/J_t(G)` with the Betti
//! table oracle.
//!
//! For chordal `G` and nonzero `J_t(G)`:
//!
//! * `reg = (t - 1)·ν_t`
//! * `pd = bight`
//! * linear resolution iff `ν_t = 1`
//! * Cohen-Macaulay iff unmixed
//!
//! For every graph, `reg >= (t - 1)·ν_t` and `pd >= bight`. Failures are
//! returned as data with enough information to reproduce them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{chordality, erdos_renyi, random_chordal, Graph};
use crate::homology::{
    betti_table_with, homological_invariants, EulerAudit, FieldSpec, OracleOptions,
    DEFAULT_ORACLE_CAP,
};
use crate::ideal::{t_clique_ideal, t_connected_ideal};
use crate::matching::{hypergraph_induced_matching_number, nu_t};

/// Combinatorial side only; the `predicted_*` fields are `None` unless `G`
/// is chordal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predictions {
    pub t: usize,
    pub is_chordal: bool,
    pub nu_t: usize,
    /// Induced matching number of the generator hypergraph; `None` when there
    /// are more than `HYPERGRAPH_NU_LIMIT` generators. Should equal `nu_t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypergraph_nu: Option<usize>,
    pub height: usize,
    pub bight: usize,
    pub unmixed: bool,
    pub generators_count: usize,
    pub predicted_reg: Option<usize>,
    pub predicted_pd: Option<usize>,
    pub predicted_linear: Option<bool>,
    #[serde(rename = "predicted_CM")]
    pub predicted_cm: Option<bool>,
}

impl Predictions {
    pub fn zero_ideal(&self) -> bool {
        self.generators_count == 0
    }

    /// Whether the two matching numbers were both computed and differ.
    pub fn nu_mismatch(&self) -> bool {
        self.hypergraph_nu.is_some_and(|h| h != self.nu_t)
    }
}

/// Generator count above which the hypergraph cross-check of `nu_t` is skipped.
pub const HYPERGRAPH_NU_LIMIT: usize = 300;

/// Predictions from `ν_t` and the minimal primes of `J_t(G)`.
pub fn predict(g: &Graph, t: usize) -> Result<Predictions> {
    let ideal = t_connected_ideal(g, t)?;
    let nu = nu_t(g, t)?.value;
    let stats = ideal.cover_stats();
    let is_chordal = chordality(g).is_chordal;
    Ok(Predictions {
        t,
        is_chordal,
        nu_t: nu,
        hypergraph_nu: (ideal.len() <= HYPERGRAPH_NU_LIMIT)
            .then(|| hypergraph_induced_matching_number(ideal.gens(), ideal.n())),
        height: stats.height,
        bight: stats.bight,
        unmixed: stats.unmixed,
        generators_count: ideal.len(),
        predicted_reg: is_chordal.then_some((t - 1) * nu),
        predicted_pd: is_chordal.then_some(stats.bight),
        predicted_linear: is_chordal.then_some(nu == 1),
        predicted_cm: is_chordal.then_some(stats.unmixed),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub statement: String,
    pub status: Status,
    pub reason: String,
}

impl Verdict {
    fn new(statement: &str, status: Status, reason: String) -> Self {
        Verdict {
            statement: statement.to_string(),
            status,
            reason,
        }
    }

    fn check(statement: &str, ok: bool, reason: String) -> Self {
        Self::new(statement, if ok { Status::Pass } else { Status::Fail }, reason)
    }
}

pub const REG_EQUALITY: &str = "reg = (t-1)*nu_t";
pub const PD_EQUALITY: &str = "pd = bight";
pub const LINEAR_IFF: &str = "linear resolution iff nu_t = 1";
pub const CM_IFF: &str = "Cohen-Macaulay iff unmixed";
pub const REG_BOUND: &str = "reg >= (t-1)*nu_t";
pub const PD_BOUND: &str = "pd >= bight";
pub const FIELD_INDEPENDENCE: &str = "(reg, pd) independent of field";

/// Invariants computed by the oracle over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub field: FieldSpec,
    pub reg: usize,
    pub pd: usize,
    pub depth: usize,
    #[serde(rename = "CM")]
    pub cm: bool,
    pub linear: Option<bool>,
    pub audit: EulerAudit,
}

/// Where a graph came from, with its full edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphDescriptor {
    pub name: String,
    /// Corpus position, for generated graphs.
    pub index: Option<usize>,
    /// Generator seed, for generated graphs.
    pub seed: Option<u64>,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDescriptor {
    pub fn named(name: impl Into<String>, g: &Graph) -> Self {
        GraphDescriptor {
            name: name.into(),
            index: None,
            seed: None,
            n: g.n(),
            edges: g.edges(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub graph: GraphDescriptor,
    pub t: usize,
    pub fields: Vec<FieldSpec>,
    pub zero_ideal: bool,
    /// One entry per field, in the order requested.
    pub oracle: Vec<OracleSummary>,
    /// Why the oracle did not run, when it did not.
    pub oracle_skipped: Option<String>,
    pub predictions: Predictions,
    pub verdicts: Vec<Verdict>,
    /// Present only on failure: seed, index and the graph in edge-list
    /// format.
    pub reproducer: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn audit(&self) -> EulerAudit {
        self.oracle.iter().fold(EulerAudit::default(), |a, o| EulerAudit {
            evaluations: a.evaluations + o.audit.evaluations,
            failures: a.failures + o.audit.failures,
        })
    }

    pub fn verdict(&self, statement: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.statement == statement)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// The first field is the primary one; further fields add a
    /// field-independence verdict.
    pub fields: Vec<FieldSpec>,
    pub cap: usize,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fields: vec![FieldSpec::GF2],
            cap: DEFAULT_ORACLE_CAP,
            timing: false,
        }
    }
}

/// Runs the oracle on `J_t(G)` and records a verdict for every statement.
///
/// Zero ideals and graphs above the oracle cap are reported without oracle
/// data; every verdict then reads not-applicable.
pub fn verify_graph(
    g: &Graph,
    desc: GraphDescriptor,
    t: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let ideal = t_connected_ideal(g, t)?;
    let predictions = predict(g, t)?;
    let fields = if opts.fields.is_empty() {
        vec![FieldSpec::GF2]
    } else {
        opts.fields.clone()
    };
    let mut report = VerificationReport {
        graph: desc,
        t,
        fields: fields.clone(),
        zero_ideal: ideal.is_zero(),
        oracle: Vec::new(),
        oracle_skipped: None,
        predictions,
        verdicts: Vec::new(),
        reproducer: None,
        elapsed_ms: None,
    };
    let skip_reason = if ideal.is_zero() {
        Some(format!("J_{t} is the zero ideal"))
    } else if g.n() > opts.cap {
        Some(format!("{} variables exceed the oracle cap {}", g.n(), opts.cap))
    } else {
        None
    };
    if let Some(reason) = skip_reason {
        for s in [REG_EQUALITY, PD_EQUALITY, LINEAR_IFF, CM_IFF, REG_BOUND, PD_BOUND] {
            report
                .verdicts
                .push(Verdict::new(s, Status::NotApplicable, reason.clone()));
        }
        report.oracle_skipped = Some(reason);
        return Ok(finish(report, start, opts.timing));
    }

    let height = report.predictions.height;
    for &field in &fields {
        let b = betti_table_with(&ideal, field, OracleOptions { cap: opts.cap })?;
        let inv = homological_invariants(&b, height);
        report.oracle.push(OracleSummary {
            field,
            reg: inv.reg,
            pd: inv.pd,
            depth: inv.depth,
            cm: inv.is_cm,
            linear: inv.has_linear_resolution,
            audit: b.audit,
        });
    }
    let p = &report.predictions;
    let o = &report.oracle[0];
    let lower_reg = (t - 1) * p.nu_t;
    let mut verdicts = Vec::new();
    if p.is_chordal {
        verdicts.push(Verdict::check(
            REG_EQUALITY,
            o.reg == lower_reg,
            format!("oracle {} vs (t-1)*nu_t = {}", o.reg, lower_reg),
        ));
        verdicts.push(Verdict::check(
            PD_EQUALITY,
            o.pd == p.bight,
            format!("oracle {} vs bight {}", o.pd, p.bight),
        ));
        let linear = o.linear.unwrap_or(false);
        verdicts.push(Verdict::check(
            LINEAR_IFF,
            linear == (p.nu_t == 1),
            format!("linear {linear}, nu_t {}", p.nu_t),
        ));
        verdicts.push(Verdict::check(
            CM_IFF,
            o.cm == p.unmixed,
            format!("CM {}, unmixed {}", o.cm, p.unmixed),
        ));
    } else {
        for s in [REG_EQUALITY, PD_EQUALITY, LINEAR_IFF, CM_IFF] {
            verdicts.push(Verdict::new(
                s,
                Status::NotApplicable,
                "graph is not chordal".into(),
            ));
        }
    }
    let strict = |a: usize, b: usize| if a > b { " (strict)" } else { "" };
    verdicts.push(Verdict::check(
        REG_BOUND,
        o.reg >= lower_reg,
        format!("{} >= {}{}", o.reg, lower_reg, strict(o.reg, lower_reg)),
    ));
    verdicts.push(Verdict::check(
        PD_BOUND,
        o.pd >= p.bight,
        format!("{} >= {}{}", o.pd, p.bight, strict(o.pd, p.bight)),
    ));
    if report.oracle.len() > 1 {
        let pairs: Vec<String> = report
            .oracle
            .iter()
            .map(|o| format!("{}: ({}, {})", o.field, o.reg, o.pd))
            .collect();
        let same = report
            .oracle
            .iter()
            .all(|x| (x.reg, x.pd) == (o.reg, o.pd));
        let status = match (same, p.is_chordal) {
            (true, _) => Status::Pass,
            (false, true) => Status::Fail,
            // only claimed for chordal graphs
            (false, false) => Status::NotApplicable,
        };
        verdicts.push(Verdict::new(FIELD_INDEPENDENCE, status, pairs.join(", ")));
    }
    report.verdicts = verdicts;
    Ok(finish(report, start, opts.timing))
}

fn finish(mut report: VerificationReport, start: Instant, timing: bool) -> VerificationReport {
    if report.failed() {
        let g = &report.graph;
        let mut text = format!("{}\n", g.n);
        for (u, v) in &g.edges {
            text.push_str(&format!("{u} {v}\n"));
        }
        report.reproducer = Some(format!(
            "graph {} index {:?} seed {:?} t {}\n{}",
            g.name, g.index, g.seed, report.t, text
        ));
    }
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// Random graph family for a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GraphFamily {
    /// [`random_chordal`] with the given clique cap.
    Chordal { max_clique: usize },
    /// `G(n, p)`.
    ErdosRenyi { p: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchConfig {
    pub count: usize,
    /// Graph sizes are drawn uniformly from `min(4, n_max)..=n_max`.
    pub n_max: usize,
    pub t_set: Vec<usize>,
    pub seed: u64,
    pub fields: Vec<FieldSpec>,
    pub family: GraphFamily,
    pub cap: usize,
    pub timing: bool,
}

impl BatchConfig {
    /// Random chordal corpus over GF(2) with clique cap 4.
    pub fn chordal(count: usize, n_max: usize, t_set: Vec<usize>, seed: u64) -> Self {
        BatchConfig {
            count,
            n_max,
            t_set,
            seed,
            fields: vec![FieldSpec::GF2],
            family: GraphFamily::Chordal { max_clique: 4 },
            cap: DEFAULT_ORACLE_CAP,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    /// Verdicts that passed.
    pub pass: usize,
    /// Verdicts that failed.
    pub fail: usize,
    /// Items whose oracle was skipped for size.
    pub skipped: usize,
    /// Items whose ideal was zero.
    pub zero_ideal: usize,
    /// Items where the graph-side and hypergraph matching numbers differ.
    pub nu_mismatches: usize,
    pub euler_evaluations: u64,
    pub euler_failures: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub config: BatchConfig,
    pub items: Vec<VerificationReport>,
    pub summary: CorpusSummary,
}

impl CorpusReport {
    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.items.iter().filter(|r| r.failed())
    }
}

/// The `index`-th graph of a corpus with its generator seed. Sizes and
/// per-graph seeds come from one ChaCha stream seeded with `config.seed`,
/// so the corpus does not depend on how it is processed.
pub fn corpus_graphs(config: &BatchConfig) -> Result<Vec<(u64, Graph)>> {
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let hi = config.n_max.max(1);
    let lo = hi.min(4);
    let draws: Vec<(usize, u64)> = (0..config.count)
        .map(|_| (master.gen_range(lo..=hi), master.gen()))
        .collect();
    draws
        .into_iter()
        .map(|(n, seed)| {
            let g = match config.family {
                GraphFamily::Chordal { max_clique } => random_chordal(n, seed, max_clique),
                GraphFamily::ErdosRenyi { p } => {
                    erdos_renyi(n, p, &mut ChaCha8Rng::seed_from_u64(seed))?
                }
            };
            Ok((seed, g))
        })
        .collect()
}

/// Verifies every corpus graph at every `t`. Items are processed in
/// parallel and reported in `(index, t)` order.
pub fn batch_verify(config: &BatchConfig) -> Result<CorpusReport> {
    if let Some(&t) = config.t_set.iter().find(|&&t| t < 2) {
        return Err(Error::BlockSize { t, min: 2 });
    }
    let graphs = corpus_graphs(config)?;
    let name = match config.family {
        GraphFamily::Chordal { .. } => "random_chordal",
        GraphFamily::ErdosRenyi { .. } => "erdos_renyi",
    };
    let opts = VerifyOptions {
        fields: config.fields.clone(),
        cap: config.cap,
        timing: config.timing,
    };
    let jobs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| config.t_set.iter().map(move |&t| (i, t)))
        .collect();
    let items = jobs
        .par_iter()
        .map(|&(i, t)| {
            let (seed, g) = &graphs[i];
            let desc = GraphDescriptor {
                index: Some(i),
                seed: Some(*seed),
                ..GraphDescriptor::named(name, g)
            };
            verify_graph(g, desc, t, &opts)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = CorpusSummary::default();
    for item in &items {
        for v in &item.verdicts {
            match v.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::NotApplicable => {}
            }
        }
        if item.predictions.nu_mismatch() {
            summary.nu_mismatches += 1;
        }
        if item.zero_ideal {
            summary.zero_ideal += 1;
        } else if item.oracle_skipped.is_some() {
            summary.skipped += 1;
        }
        let audit = item.audit();
        summary.euler_evaluations += audit.evaluations;
        summary.euler_failures += audit.failures;
    }
    Ok(CorpusReport {
        config: config.clone(),
        items,
        summary,
    })
}

/// Regularity of the `t`-clique ideal of `clique_star(t, r)` against its
/// hypergraph induced matching number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueGapReport {
    pub t: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub reg: usize,
    pub hypergraph_nu: usize,
    /// `reg - (t-1)·ν`.
    pub gap: isize,
    pub expected_reg: usize,
    pub expected_gap: usize,
    pub audit: EulerAudit,
}

impl CliqueGapReport {
    pub fn pass(&self) -> bool {
        self.reg == self.expected_reg && self.gap == self.expected_gap as isize
    }
}

/// `r + 1` copies of `K_t` glued at one vertex: the clique ideal has
/// regularity `(t-2)(r+1) + 1`, while its hypergraph has induced matching
/// number 1.
pub fn clique_gap(t: usize, r: usize, field: FieldSpec, cap: usize) -> Result<CliqueGapReport> {
    use crate::graph::{fixture, Fixture};
    let g = fixture(Fixture::CliqueStar { t, r })?;
    let ideal = t_clique_ideal(&g, t)?;
    let b = betti_table_with(&ideal, field, OracleOptions { cap })?;
    let nu = hypergraph_induced_matching_number(ideal.gens(), ideal.n());
    let reg = b.reg();
    Ok(CliqueGapReport {
        t,
        r,
        field,
        reg,
        hypergraph_nu: nu,
        gap: reg as isize - ((t - 1) * nu) as isize,
        expected_reg: (t - 2) * (r + 1) + 1,
        expected_gap: (t - 2) * r,
        audit: b.audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, Fixture};

    fn verify_fixture(fx: Fixture, t: usize) -> VerificationReport {
        let g = fixture(fx).unwrap();
        verify_graph(&g, GraphDescriptor::named(fx.to_string(), &g), t, &VerifyOptions::default())
            .unwrap()
    }

    #[test]
    fn fig1_predictions() {
        let g = fixture(Fixture::Fig1).unwrap();
        let p = predict(&g, 4).unwrap();
        assert_eq!((p.predicted_reg, p.predicted_pd), (Some(6), Some(8)));
        for t in 2..=16 {
            let p = predict(&g, t).unwrap();
            assert_eq!(p.predicted_linear, Some((7..=14).contains(&t)), "t = {t}");
        }
    }

    #[test]
    fn non_chordal_predictions_are_withheld() {
        let c5 = fixture(Fixture::Cycle(5)).unwrap();
        let p = predict(&c5, 3).unwrap();
        assert!(!p.is_chordal);
        assert_eq!(p.predicted_reg, None);
        assert_eq!(p.predicted_pd, None);
        assert_eq!(p.predicted_linear, None);
        assert_eq!(p.predicted_cm, None);
        let json = serde_json::to_value(&p).unwrap();
        assert!(json["predicted_CM"].is_null());
    }

    #[test]
    fn five_cycle_is_strict() {
        let r = verify_fixture(Fixture::Cycle(5), 3);
        assert!(!r.failed());
        assert_eq!((r.oracle[0].pd, r.predictions.bight), (3, 2));
        let pd = r.verdict(PD_BOUND).unwrap();
        assert_eq!(pd.status, Status::Pass);
        assert!(pd.reason.contains("strict"));
        assert_eq!(r.verdict(PD_EQUALITY).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn path_passes_everything() {
        let r = verify_fixture(Fixture::Path(4), 3);
        assert_eq!((r.oracle[0].reg, r.oracle[0].pd), (2, 2));
        assert!(r.verdicts.iter().all(|v| v.status == Status::Pass));
        assert!(r.reproducer.is_none());
    }

    #[test]
    fn zero_ideal_and_cap() {
        let r = verify_fixture(Fixture::Path(3), 4);
        assert!(r.zero_ideal);
        assert!(r.oracle.is_empty());
        assert!(r.verdicts.iter().all(|v| v.status == Status::NotApplicable));

        let r = verify_fixture(Fixture::Fig1, 4);
        assert!(r.oracle_skipped.unwrap().contains("cap"));
        assert_eq!(r.predictions.predicted_pd, Some(8));
    }

    #[test]
    fn clique_star_gap() {
        for field in [FieldSpec::GF2, FieldSpec::Rationals] {
            let r = clique_gap(3, 2, field, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!((r.reg, r.hypergraph_nu, r.gap), (4, 1, 2));
            assert!(r.pass());
        }
    }

    #[test]
    fn small_corpus_is_deterministic_and_clean() {
        let mut cfg = BatchConfig::chordal(8, 8, vec![2, 3], 5);
        cfg.fields = vec![FieldSpec::GF2, FieldSpec::GF3];
        let a = batch_verify(&cfg).unwrap();
        let b = batch_verify(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.items.len(), 16);
        assert_eq!(a.summary.fail, 0);
        assert_eq!(a.summary.euler_failures, 0);
        assert_eq!(a.summary.nu_mismatches, 0);
        assert!(a.summary.pass > 0);
    }

    #[test]
    fn empty_corpus() {
        let r = batch_verify(&BatchConfig::chordal(0, 10, vec![2, 3, 4], 1)).unwrap();
        assert!(r.items.is_empty());
        assert_eq!(r.summary, CorpusSummary::default());
    }

    #[test]
    fn rejects_small_t() {
        assert!(batch_verify(&BatchConfig::chordal(1, 5, vec![1], 0)).is_err());
    }
}
