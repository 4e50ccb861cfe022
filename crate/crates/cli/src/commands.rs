//! Command execution over a loaded workspace.

use serde_json::json;

use perfrank::axioms::{
    check_lemma_suite, check_rank_axioms, check_sylvester_axioms, AxiomReport, SampleConfig,
};
use perfrank::fdalg::local_matrix_rank_of;
use perfrank::homalg::{homological_epi_check, tor_dims};
use perfrank::rank::{
    classify_idempotent, classify_morphism, classify_object, full_square_submatrix,
    localizing_diagnostic, RankFunction, SylvesterRank, WitnessSource,
};
use perfrank::{Period, RankPoly, Rational, Scalar};

use crate::args::{Command, ExampleName, RankCommand, Suite};
use crate::report::Report;
use crate::workspace::Workspace;

pub const DEFAULT_DEPTH: usize = 6;

/// Global settings from the command line.
#[derive(Clone, Debug)]
pub struct Settings {
    pub period: Option<Period>,
    pub depth: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl Settings {
    fn period<F>(&self, ws: &Workspace<F>) -> Period {
        self.period.unwrap_or(ws.default_period)
    }

    fn depth<F>(&self, ws: &Workspace<F>) -> usize {
        self.depth.or(ws.default_depth).unwrap_or(DEFAULT_DEPTH)
    }
}

/// An input error: bad references, precondition violations. Exit code 2.
pub type Failure = String;

fn fail(e: impl std::fmt::Display) -> Failure {
    e.to_string()
}

fn sylvester<F: Scalar>(ws: &Workspace<F>, hom: &str) -> Result<SylvesterRank<F>, Failure> {
    SylvesterRank::new(ws.hom(hom)?.clone()).map_err(fail)
}

pub fn execute<F: Scalar>(
    ws: &Workspace<F>,
    cmd: &Command,
    s: &Settings,
) -> Result<Report, Failure> {
    match cmd {
        Command::Rank(r) => rank(ws, r, s),
        Command::Classify { target, hom } => {
            let sigma = sylvester(ws, hom)?;
            let d = s.period(ws);
            let (name, (r, c)) = if let Some(n) = &target.complex {
                let r = match ws.idempotents.get(n) {
                    Some(p) => classify_idempotent(&sigma, p, d),
                    None => classify_object(&sigma, ws.complex(n)?, d),
                };
                (n, r.map_err(fail)?)
            } else if let Some(n) = &target.map {
                (
                    n,
                    classify_morphism(&sigma, ws.chain_map(n)?, d).map_err(fail)?,
                )
            } else {
                let n = target
                    .idempotent
                    .as_ref()
                    .expect("clap requires one target");
                (
                    n,
                    classify_idempotent(&sigma, ws.idempotent(n)?, d).map_err(fail)?,
                )
            };
            let mut rep = Report::new("classify");
            rep.line(format!("rank of {name} under {hom} at period {d}: {r}"));
            rep.verdict = format!("{name}: {c}");
            rep.rank = Some(r);
            rep.classification = Some(serde_json::to_value(&c).expect("serializes"));
            Ok(rep)
        }
        Command::Axioms { hom, suite } => axioms(ws, hom, *suite, s),
        Command::Tor { first, second } => {
            let depth = s.depth(ws);
            let dims = tor_dims(ws.module(first)?, ws.module(second)?, depth).map_err(fail)?;
            let mut rep = Report::new("tor");
            rep.evidence(
                json!({"first": first, "second": second, "depth": depth, "tor_dims": dims}),
            );
            rep.verdict = format!("dim Tor_i({first}, {second}) for i = 0..{depth}: {dims:?}");
            Ok(rep)
        }
        Command::Epicheck { hom } => {
            let e = homological_epi_check(ws.hom(hom)?, s.depth(ws)).map_err(fail)?;
            let mut rep = Report::new("epicheck");
            rep.line(format!(
                "dim B (x)_A B = {}, dim B = {}",
                e.tensor_dim, e.dim_b
            ));
            rep.line(format!(
                "dim Tor_i(B, B) for i = 1..{}: {:?}",
                e.depth, e.tor_vanishing
            ));
            rep.passed = e.passes;
            rep.verdict = e.verdict.clone();
            rep.evidence(&e);
            Ok(rep)
        }
        Command::Localizing { hom } => {
            let l = localizing_diagnostic(&sylvester(ws, hom)?, s.depth(ws)).map_err(fail)?;
            let mut rep = Report::new("localizing");
            rep.line(format!(
                "normalized: {}, integral: {}",
                l.normalized, l.integral
            ));
            rep.line(format!("homological epimorphism check: {}", l.epi.verdict));
            rep.passed = l.localizing;
            rep.verdict = l.conclusion.clone();
            rep.evidence(&l);
            Ok(rep)
        }
        Command::Submatrix { matrix, hom } => {
            let sigma = sylvester(ws, hom)?;
            let m = ws.matrix(matrix)?;
            let w = full_square_submatrix(&sigma, m).map_err(fail)?;
            let source = match w.source {
                WitnessSource::OverA => "over A",
                WitnessSource::BaseChanged => "of the base-changed matrix",
            };
            let mut rep = Report::new("submatrix");
            rep.line(format!("rank of {matrix} under {hom}: {}", w.rank));
            rep.verdict = format!(
                "square submatrix {source} with rows {:?} and columns {:?} realizes rho = {}",
                w.rows, w.cols, w.rank
            );
            rep.rank = Some(RankPoly::constant(w.rank.clone(), Period::Infinite));
            rep.evidence(json!({"source": w.source, "rows": w.rows, "cols": w.cols, "rank": w.rank.to_string()}));
            Ok(rep)
        }
        Command::Example { .. } => Err("examples run on their bundled workspace".into()),
    }
}

fn rank<F: Scalar>(ws: &Workspace<F>, r: &RankCommand, s: &Settings) -> Result<Report, Failure> {
    let d = s.period(ws);
    let (what, name, hom, value) = match r {
        RankCommand::Object { complex, hom } => {
            let sigma = sylvester(ws, hom)?;
            let v = match ws.idempotents.get(complex) {
                Some(p) => sigma.idempotent_rank(p, d),
                None => sigma.object_rank(ws.complex(complex)?, d),
            };
            ("object", complex, hom, v.map_err(fail)?)
        }
        RankCommand::Morphism { map, hom } => {
            let v = sylvester(ws, hom)?
                .morphism_rank(ws.chain_map(map)?, d)
                .map_err(fail)?;
            ("morphism", map, hom, v)
        }
        RankCommand::Module { module, hom } => {
            let v = sylvester(ws, hom)?
                .sylvester_module_rank(ws.module(module)?)
                .map_err(fail)?;
            (
                "module",
                module,
                hom,
                RankPoly::constant(v, Period::Infinite),
            )
        }
        RankCommand::Idempotent { idempotent, hom } => {
            let v = sylvester(ws, hom)?
                .idempotent_rank(ws.idempotent(idempotent)?, d)
                .map_err(fail)?;
            ("idempotent", idempotent, hom, v)
        }
    };
    let mut rep = Report::new(format!("rank {what}"));
    rep.line(format!(
        "{what} {name}, hom {hom}, period {}",
        value.period()
    ));
    rep.verdict = format!("rho({name}) = {value}");
    rep.rank = Some(value);
    Ok(rep)
}

fn axioms<F: Scalar>(
    ws: &Workspace<F>,
    hom: &str,
    suite: Suite,
    s: &Settings,
) -> Result<Report, Failure> {
    let sigma = sylvester(ws, hom)?;
    let algebra = sigma.hom().source().clone();
    let d = s.period(ws);
    let cfg = SampleConfig {
        seed: s.seed,
        samples: s.samples,
        ..SampleConfig::default()
    };
    let mut reports: Vec<AxiomReport> = Vec::new();
    if matches!(suite, Suite::Rank | Suite::All) {
        reports.push(check_rank_axioms(&sigma, &algebra, d, &cfg).map_err(fail)?);
    }
    if matches!(suite, Suite::Lemmas | Suite::All) {
        reports.push(check_lemma_suite(&sigma, &algebra, d, &cfg).map_err(fail)?);
    }
    if matches!(suite, Suite::Sylvester | Suite::All) {
        reports.push(check_sylvester_axioms(&sigma, &algebra, hom, &cfg).map_err(fail)?);
    }
    let mut rep = Report::new("axioms");
    for r in &reports {
        let period = r
            .period
            .map(|p| format!(", period {p}"))
            .unwrap_or_default();
        rep.line(format!(
            "suite {} for {hom}{period}, seed {}, {} samples",
            r.suite, r.seed, r.samples
        ));
        for t in &r.tallies {
            rep.line(format!(
                "  {:<16} {} passed, {} failed",
                t.axiom, t.passed, t.failed
            ));
        }
        if let Some(c) = &r.first_counterexample {
            rep.line(format!(
                "  first counterexample: {} at sample {} (seed {}): {}",
                c.axiom, c.sample, c.seed, c.detail
            ));
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failed_axioms().into_iter().map(String::from))
        .collect();
    rep.passed = failed.is_empty();
    rep.verdict = if rep.passed {
        "all axioms pass".into()
    } else {
        format!("failed: {}", failed.join(", "))
    };
    for r in &reports {
        rep.evidence(r);
    }
    Ok(rep)
}

/// The worked examples, checked against their known answers.
pub fn example(
    ws: &Workspace<Rational>,
    name: ExampleName,
    s: &Settings,
) -> Result<Report, Failure> {
    let depth = s.depth(ws);
    let mut rep = Report::new(format!("example {}", example_name(name)));
    let expect = |rep: &mut Report, ok: bool, what: String| {
        rep.line(format!("[{}] {what}", if ok { "ok" } else { "MISMATCH" }));
        rep.passed &= ok;
    };
    let alternating = |n: usize| (0..=n).map(|i| usize::from(i % 2 == 0)).collect::<Vec<_>>();
    match name {
        ExampleName::SmallexampleM2 | ExampleName::SmallexampleAug => {
            let m2 = name == ExampleName::SmallexampleM2;
            let hom = if m2 { "loc-m2" } else { "aug" };
            let sigma = sylvester(ws, hom)?;
            let tau = ws.idempotent("twoterm-alpha2")?;
            let r = sigma.idempotent_rank(tau, Period::Infinite).map_err(fail)?;
            if m2 {
                let e = homological_epi_check(sigma.hom(), depth).map_err(fail)?;
                expect(
                    &mut rep,
                    e.tensor_dim == 4 && e.mult_iso,
                    format!(
                        "dim B (x)_A B = {}, multiplication bijective: {}",
                        e.tensor_dim, e.mult_iso
                    ),
                );
                expect(
                    &mut rep,
                    e.first_obstruction.is_none(),
                    format!("dim Tor_i(B, B) for i = 1..{depth}: {:?}", e.tor_vanishing),
                );
                expect(
                    &mut rep,
                    r.is_zero(),
                    format!("rank of the two-term complex summand under {hom}: {r}"),
                );
                rep.evidence(&e);
            } else {
                let dims =
                    tor_dims(ws.module("S1")?, ws.module("S1-left")?, depth).map_err(fail)?;
                expect(
                    &mut rep,
                    dims == alternating(depth),
                    format!("dim Tor_i(S1, S1) for i = 0..{depth}: {dims:?}"),
                );
                expect(
                    &mut rep,
                    r == RankPoly::one(Period::Infinite),
                    format!("rank of the two-term complex summand under {hom}: {r}"),
                );
                rep.evidence(json!({"tor_dims": dims}));
            }
            let l = localizing_diagnostic(&sigma, depth).map_err(fail)?;
            let ok = if m2 {
                l.localizing
            } else {
                !l.localizing && l.epi.first_obstruction == Some(2)
            };
            expect(
                &mut rep,
                ok,
                format!("localizing diagnostic for {hom}: {}", l.conclusion),
            );
            rep.rank = Some(r);
            rep.verdict = l.conclusion.clone();
            rep.evidence(&l);
        }
        ExampleName::Fiedorowicz => {
            let dims = tor_dims(ws.module("k")?, ws.module("k-left")?, depth).map_err(fail)?;
            let sphere: Vec<usize> = (0..=depth).map(|i| usize::from(i == 0 || i == 2)).collect();
            expect(
                &mut rep,
                dims == sphere,
                format!("dim Tor_i(k, k) for i = 0..{depth}: {dims:?}"),
            );
            rep.verdict = format!("Tor(k, k) = {dims:?}, the homology of the 2-sphere");
            rep.evidence(json!({"tor_dims": dims}));
        }
        ExampleName::Dualnumbers => {
            let dims = tor_dims(ws.module("k")?, ws.module("k-left")?, depth).map_err(fail)?;
            expect(
                &mut rep,
                dims.iter().all(|&t| t == 1),
                format!("dim Tor_i(k, k) for i = 0..{depth}: {dims:?}"),
            );
            let sigma = sylvester(ws, "residue")?;
            for (mname, m) in &ws.matrices {
                let local = local_matrix_rank_of(m.algebra(), m).map_err(fail)?;
                let syl = sigma.sylvester_morphism_rank(m).map_err(fail)?;
                expect(
                    &mut rep,
                    local == syl,
                    format!("matrix {mname}: local rank {local}, Sylvester rank {syl}"),
                );
            }
            let l = localizing_diagnostic(&sigma, depth).map_err(fail)?;
            expect(
                &mut rep,
                l.epi.first_obstruction == Some(1),
                format!("localizing diagnostic for residue: {}", l.conclusion),
            );
            rep.verdict = l.conclusion.clone();
            rep.evidence(json!({"tor_dims": dims}));
            rep.evidence(&l);
        }
    }
    if !rep.passed {
        rep.verdict = format!("example does not reproduce: {}", rep.verdict);
    }
    Ok(rep)
}

pub fn example_name(name: ExampleName) -> &'static str {
    match name {
        ExampleName::SmallexampleM2 => "smallexample-m2",
        ExampleName::SmallexampleAug => "smallexample-aug",
        ExampleName::Fiedorowicz => "fiedorowicz",
        ExampleName::Dualnumbers => "dualnumbers",
    }
}
