mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use factorcrit::configurations::{
    certify_minimal_edges, classify_residual, config_predicates, ConfigError, EdgeOutcome, Family,
    Label, ResidualInstance,
};
use factorcrit::criticality::{
    is_k_factor_critical, is_minimally_kfc, kfc_via_tutte, minimality_certificate, minimality_witness,
    minimality_witnesses, validate_k, CriticalityReport,
};
use factorcrit::graph::{encode_graph6, Graph};
use factorcrit::matching::{maximum_matching, tutte_violators, TutteMode};
use factorcrit::search::{
    generate, hunt_counterexamples, ingest, survey_with, Catalog, DedupMode, KRule, SearchError,
    SurveyOptions, SurveyReport,
};
use factorcrit::verifiers::{
    check_conjecture, check_connectivity, check_degree_bounds, check_edge_addition,
    check_maxdeg_profile, check_n4_characterization, check_star_structure, TheoremVerdict,
};

use input::{parse_edge, Input};

const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "factorcrit", version, about = "Perfect matchings and k-factor-criticality of small graphs")]
struct Cli {
    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to FACTORCRIT_JOBS, then to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a graph has a perfect matching.
    Pm {
        #[command(flatten)]
        input: Input,
    },
    /// Decide k-factor-criticality.
    Kfc {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Definitional)]
        method: MethodArg,
    },
    /// Decide minimal k-factor-criticality, with one witness per edge.
    Minimal {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Find a k-set whose removal forces an edge into every perfect matching.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_edge)]
        edge: (usize, usize),
        /// List every witness, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Classify a residual graph with a designated non-edge.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_edge)]
        edge: (usize, usize),
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Classify every edge of a minimally k-critical graph and check the
    /// non-neighbourhood predicates of its configuration.
    Predicates {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Only this edge.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
    },
    /// Run every applicable degree and structure checker.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Survey a whole catalog at one k.
    Survey {
        /// Generate every graph of this order.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        gen: Option<usize>,
        /// Read the catalog from a graph6 file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = DedupArg::Canonical)]
        dedup: DedupArg,
        #[arg(long)]
        lenient: bool,
        /// Write one JSON record per graph to this file.
        #[arg(long)]
        lines: Option<PathBuf>,
    },
    /// Search generated or supplied catalogs for minimal graphs failing any
    /// checker.
    Hunt {
        #[arg(long, default_value_t = 4)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
        /// A single k at every order.
        #[arg(long, conflicts_with = "offset")]
        k: Option<usize>,
        /// k = n - offset at every order.
        #[arg(long)]
        offset: Option<usize>,
        /// Catalog files to search instead of generating orders.
        #[arg(long)]
        file: Vec<PathBuf>,
        /// Flip the minimum-degree check, to see the hunt report plants.
        #[arg(long)]
        invert: bool,
    },
    /// Print every graph of order n up to isomorphism.
    Gen { n: usize },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Definitional,
    Tutte,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
    C,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
            FamilyArg::C => Family::C,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DedupArg {
    AsIs,
    Canonical,
}

/// Outcome of one check, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Holds,
    Fails,
    Violated,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Violated => 3,
        }
    }
}

/// Usage, parse and precondition errors all exit with 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Res<T> = Result<T, UsageError>;

struct Out {
    json: bool,
    multiple: bool,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    /// Prints one record: the JSON object, or the text lines, prefixed by
    /// the graph when the input holds several.
    fn record(&mut self, command: &str, graph6: Option<&str>, body: Value, text: &[String]) {
        if self.json {
            let mut map = Map::new();
            map.insert("schema".into(), json!(SCHEMA));
            map.insert("command".into(), json!(command));
            if let Some(g6) = graph6 {
                map.insert("graph6".into(), json!(g6));
            }
            if let Value::Object(fields) = body {
                map.extend(fields);
            }
            let _ = writeln!(self.stdout, "{}", Value::Object(map));
            return;
        }
        for line in text {
            match graph6 {
                Some(g6) if self.multiple => {
                    let _ = writeln!(self.stdout, "{g6}: {line}");
                }
                _ => {
                    let _ = writeln!(self.stdout, "{line}");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_jobs(jobs: Option<usize>) -> Res<()> {
    let jobs = match jobs {
        Some(j) => Some(j),
        None => match std::env::var("FACTORCRIT_JOBS") {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|e| UsageError(format!("FACTORCRIT_JOBS={v:?}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(j) = jobs {
        if j == 0 {
            return Err(UsageError("jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Res<Status> {
    configure_jobs(cli.jobs)?;
    let mut out = Out {
        json: cli.json,
        multiple: false,
        stdout: io::stdout().lock(),
    };
    match cli.command {
        Command::Pm { input } => per_graph(&input, &mut out, pm),
        Command::Kfc { input, k, method } => per_graph(&input, &mut out, |g, o| kfc(g, k, method, o)),
        Command::Minimal { input, k } => per_graph(&input, &mut out, |g, o| minimal(g, k, o)),
        Command::Witness { input, k, edge, all } => {
            per_graph(&input, &mut out, |g, o| witness(g, k, edge, all, o))
        }
        Command::Classify { input, edge, family } => {
            per_graph(&input, &mut out, |g, o| classify(g, edge, family.into(), o))
        }
        Command::Predicates { input, k, edge } => {
            per_graph(&input, &mut out, |g, o| predicates(g, k, edge, o))
        }
        Command::Verify { input, k } => per_graph(&input, &mut out, |g, o| verify(g, k, o)),
        Command::Survey {
            gen,
            file,
            k,
            dedup,
            lenient,
            lines,
        } => {
            let catalog = match (gen, file) {
                (Some(n), _) => generate(n)?,
                (None, Some(path)) => {
                    let mode = match dedup {
                        DedupArg::AsIs => DedupMode::AsIs,
                        DedupArg::Canonical => DedupMode::Canonical,
                    };
                    let ingested = ingest(&path, mode, lenient)?;
                    for s in &ingested.skipped {
                        eprintln!("skipped {s}");
                    }
                    ingested.catalog
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            survey(&catalog, k, lines, &mut out)
        }
        Command::Hunt {
            from,
            to,
            k,
            offset,
            file,
            invert,
        } => {
            let rule = match (k, offset) {
                (Some(k), _) => KRule::Fixed(k),
                (None, Some(c)) => KRule::Offset(c),
                (None, None) => KRule::AllValid,
            };
            let catalogs: Vec<Catalog> = if file.is_empty() {
                (from..=to).map(generate).collect::<Result<_, _>>()?
            } else {
                file.iter()
                    .map(|p| ingest(p, DedupMode::Canonical, false).map(|i| i.catalog))
                    .collect::<Result<_, _>>()?
            };
            hunt(&catalogs, rule, invert, &mut out)
        }
        Command::Gen { n } => {
            let cat = generate(n)?;
            if out.json {
                let graphs: Vec<String> = cat.graphs.iter().map(encode_graph6).collect();
                out.record("gen", None, json!({"n": n, "count": graphs.len(), "graphs": graphs}), &[]);
            } else {
                for g in &cat.graphs {
                    let _ = writeln!(out.stdout, "{}", encode_graph6(g));
                }
            }
            Ok(Status::Holds)
        }
    }
}

fn per_graph(input: &Input, out: &mut Out, mut f: impl FnMut(&Graph, &mut Out) -> Res<Status>) -> Res<Status> {
    let graphs = input.graphs().map_err(UsageError)?;
    out.multiple = graphs.len() > 1;
    let mut worst = Status::Holds;
    for g in &graphs {
        worst = worst.max(f(g, out)?);
    }
    Ok(worst)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn holds_if(b: bool) -> Status {
    if b {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn edge_text((u, v): (usize, usize)) -> String {
    format!("{u}-{v}")
}

fn pm(g: &Graph, out: &mut Out) -> Res<Status> {
    let m = maximum_matching(g);
    let perfect = m.is_perfect();
    let mut text = vec![format!("perfect matching: {}", yes_no(perfect))];
    let cert = if perfect {
        let edges: Vec<String> = m.edges().iter().map(|&e| edge_text(e)).collect();
        text.push(format!("matching: {}", edges.join(" ")));
        None
    } else {
        let c = tutte_violators(g, TutteMode::FirstMinimal)?.into_iter().next();
        if let Some(c) = &c {
            text.push(format!(
                "removing {} leaves {} odd components (deficit {})",
                c.x, c.partition.odd_count, c.deficit
            ));
        }
        c
    };
    text.push(format!("maximum matching size: {}", m.len()));
    let body = json!({"perfect": perfect, "matching": m, "tutte_certificate": cert});
    out.record("pm", Some(&encode_graph6(g)), body, &text);
    Ok(holds_if(perfect))
}

fn criticality_text(r: &CriticalityReport) -> Vec<String> {
    let mut text = vec![format!("{}-factor-critical: {}", r.k, yes_no(r.verdict))];
    if let Some(s) = r.failing_set {
        text.push(match r.method {
            factorcrit::criticality::Method::Definitional => {
                format!("failing set: {s} (no perfect matching after removal)")
            }
            factorcrit::criticality::Method::TutteType => {
                format!("failing set: {s} (too many odd components after removal)")
            }
        });
    }
    text
}

fn kfc(g: &Graph, k: usize, method: MethodArg, out: &mut Out) -> Res<Status> {
    validate_k(g, k)?;
    let report = match method {
        MethodArg::Definitional => is_k_factor_critical(g, k)?,
        MethodArg::Tutte => kfc_via_tutte(g, k)?,
    };
    out.record("kfc", Some(&encode_graph6(g)), to_value(&report), &criticality_text(&report));
    Ok(holds_if(report.verdict))
}

fn minimal(g: &Graph, k: usize, out: &mut Out) -> Res<Status> {
    validate_k(g, k)?;
    let report = is_k_factor_critical(g, k)?;
    let g6 = encode_graph6(g);
    if !report.verdict {
        let mut text = criticality_text(&report);
        text.push(format!("minimally {k}-factor-critical: no"));
        let body = json!({"k": k, "kfc": false, "minimal": false, "failing_set": report.failing_set});
        out.record("minimal", Some(&g6), body, &text);
        return Ok(Status::Fails);
    }
    match minimality_certificate(g, k)? {
        Some(cert) => {
            let mut text = vec![format!("minimally {k}-factor-critical: yes")];
            text.extend(
                cert.witnesses
                    .iter()
                    .map(|(&e, s)| format!("edge {}: witness {s}", edge_text(e))),
            );
            let body = json!({"k": k, "kfc": true, "minimal": true, "certificate": cert});
            out.record("minimal", Some(&g6), body, &text);
            Ok(Status::Holds)
        }
        None => {
            let removable = g
                .edges()
                .find(|&e| matches!(minimality_witness(g, k, e), Ok(None)));
            let mut text = vec![format!("minimally {k}-factor-critical: no")];
            if let Some(e) = removable {
                text.push(format!("edge {} can be removed", edge_text(e)));
            }
            let body = json!({"k": k, "kfc": true, "minimal": false, "removable_edge": removable});
            out.record("minimal", Some(&g6), body, &text);
            Ok(Status::Fails)
        }
    }
}

fn witness(g: &Graph, k: usize, edge: (usize, usize), all: bool, out: &mut Out) -> Res<Status> {
    validate_k(g, k)?;
    let found = if all {
        minimality_witnesses(g, k, edge)?
    } else {
        minimality_witness(g, k, edge)?.into_iter().collect()
    };
    let text = if found.is_empty() {
        vec![format!("no witness: {}-factor-criticality survives removing {}", k, edge_text(edge))]
    } else {
        found.iter().map(|s| format!("witness: {s}")).collect()
    };
    let body = json!({"k": k, "edge": edge, "witnesses": found});
    out.record("witness", Some(&encode_graph6(g)), body, &text);
    Ok(holds_if(!found.is_empty()))
}

fn classify(g: &Graph, (u, v): (usize, usize), family: Family, out: &mut Out) -> Res<Status> {
    let inst = ResidualInstance {
        gprime: g.clone(),
        u,
        v,
        family,
    };
    let m = classify_residual(&inst)?;
    let mut text = vec![format!("configuration: {}", m.label)];
    text.push(format!("tutte set: {}", m.x));
    if m.ambiguity_flag {
        text.push("another minimum Tutte set gives a different label".into());
    }
    let roles: Vec<String> = m.roles.iter().map(|(r, w)| format!("{r}={w}")).collect();
    if !roles.is_empty() {
        text.push(format!("roles: {}", roles.join(" ")));
    }
    let status = holds_if(m.label != Label::Unclassified);
    out.record("classify", Some(&encode_graph6(g)), to_value(&m), &text);
    Ok(status)
}

fn predicates(g: &Graph, k: usize, only: Option<(usize, usize)>, out: &mut Out) -> Res<Status> {
    validate_k(g, k)?;
    if let Some((u, v)) = only {
        if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
            return Err(UsageError(format!("{u}-{v} is not an edge")));
        }
    }
    let only = only.map(|(u, v)| (u.min(v), u.max(v)));
    let mut status = Status::Holds;
    let mut text = Vec::new();
    let mut records = Vec::new();
    for cert in certify_minimal_edges(g, k)? {
        if only.is_some_and(|e| e != cert.edge) {
            continue;
        }
        let head = format!("edge {} witness {}", edge_text(cert.edge), cert.witness);
        let mut record = json!({"edge": cert.edge, "witness": cert.witness, "outcome": cert.outcome});
        match &cert.outcome {
            EdgeOutcome::Classified { configuration: m } => {
                match config_predicates(g, cert.edge, cert.witness, m) {
                    Ok(report) => {
                        let checks: Vec<String> = report
                            .checks
                            .iter()
                            .map(|c| format!("{} {}", c.name, if c.pass { "pass" } else { "FAIL" }))
                            .collect();
                        text.push(format!("{head}: {}: {}", m.label, checks.join(", ")));
                        if !report.all_pass() {
                            status = Status::Violated;
                        }
                        record["predicates"] = to_value(&report);
                    }
                    Err(ConfigError::HypothesisUnmet(why)) => {
                        text.push(format!("{head}: {}: vacuous ({why})", m.label));
                        record["vacuous"] = json!(why);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            EdgeOutcome::Unclassified { reason } => text.push(format!("{head}: unclassified ({reason})")),
            EdgeOutcome::NotApplicable { residual_order } => {
                text.push(format!("{head}: no configuration family for residual order {residual_order}"))
            }
        }
        records.push(record);
    }
    out.record("predicates", Some(&encode_graph6(g)), json!({"k": k, "edges": records}), &text);
    Ok(status)
}

fn verdict_status(verdicts: &[TheoremVerdict]) -> Status {
    verdicts
        .iter()
        .filter(|v| v.failed_check())
        .map(|v| if v.theorem.is_proven() { Status::Violated } else { Status::Fails })
        .max()
        .unwrap_or(Status::Holds)
}

fn verify(g: &Graph, k: Option<usize>, out: &mut Out) -> Res<Status> {
    let n = g.order();
    let mut verdicts = Vec::new();
    if n >= 6 && k.is_none_or(|k| k + 4 == n) {
        verdicts.push(check_n4_characterization(g)?);
    }
    match k {
        Some(k) => {
            validate_k(g, k)?;
            let kfc = is_k_factor_critical(g, k)?.verdict;
            verdicts.push(check_edge_addition(g, k)?);
            if kfc {
                verdicts.push(check_connectivity(g, k)?);
                if g.max_degree() + 1 == n && n > k + 2 {
                    verdicts.push(check_star_structure(g, k)?);
                }
                if is_minimally_kfc(g, k)? {
                    verdicts.push(check_conjecture(g, k)?);
                    verdicts.push(check_degree_bounds(g, k)?);
                    if k + 6 == n {
                        verdicts.extend(check_maxdeg_profile(g)?);
                    }
                }
            }
        }
        None => {
            if n >= 7 && is_minimally_kfc(g, n - 6)? {
                verdicts.extend(check_maxdeg_profile(g)?);
            }
        }
    }
    let g6 = encode_graph6(g);
    let text: Vec<String> = verdicts
        .iter()
        .map(|v| {
            let result = match v.pass {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "not applicable",
            };
            match (&v.witness, v.pass) {
                (Some(w), Some(false)) => format!("{}: {result} {}", v.theorem, to_value(w)),
                _ => format!("{}: {result}", v.theorem),
            }
        })
        .collect();
    let records: Vec<Value> = verdicts
        .iter()
        .map(|v| {
            let mut r = to_value(v);
            r["graph6"] = json!(g6);
            r
        })
        .collect();
    out.record("verify", Some(&g6), json!({"k": k, "verdicts": records}), &text);
    Ok(verdict_status(&verdicts))
}

fn survey_text(r: &SurveyReport) -> Vec<String> {
    let mut text = vec![
        format!("catalog {} (order {}), k = {}", r.source, r.n, r.k),
        format!(
            "graphs: {}  {}-factor-critical: {}  minimal: {}",
            r.counts.total, r.k, r.counts.kfc, r.counts.minimal
        ),
    ];
    let degrees: Vec<String> = r
        .min_degree_distribution
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    text.push(format!("minimum degrees of minimal graphs: {}", degrees.join(" ")));
    for p in &r.profile_histogram {
        let profile: Vec<String> = p.profile.iter().map(|(d, c)| format!("{d}^{c}")).collect();
        text.push(format!("  profile {}: {}", profile.join(" "), p.count));
    }
    for (t, v) in &r.verdicts {
        text.push(format!("{t}: pass {} fail {} n/a {}", v.pass, v.fail, v.not_applicable));
    }
    if !r.configurations.is_empty() {
        let labels: Vec<String> = r.configurations.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        text.push(format!("configurations: {}", labels.join(" ")));
        text.push(format!(
            "predicates: pass {} fail {} vacuous {}; ambiguous labels {}; C2' {}",
            r.predicates.pass, r.predicates.fail, r.predicates.vacuous, r.ambiguous_configurations, r.c2_prime
        ));
    }
    for c in &r.counterexamples {
        text.push(format!("counterexample {} ({})", c.graph6, c.theorem));
    }
    for e in &r.errors {
        text.push(format!("error on {}: {}", e.graph6, e.message));
    }
    text
}

fn survey(catalog: &Catalog, k: usize, lines: Option<PathBuf>, out: &mut Out) -> Res<Status> {
    let mut sink = match &lines {
        Some(p) => Some(BufWriter::new(File::create(p).map_err(|e| {
            UsageError(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => None,
    };
    let result = survey_with(
        catalog,
        k,
        SurveyOptions::default(),
        sink.as_mut().map(|w| w as &mut dyn Write),
    );
    if let Some(mut w) = sink {
        w.flush()?;
    }
    match result {
        Ok(report) => {
            let status = holds_if(report.counterexamples.is_empty());
            out.record("survey", None, to_value(&report), &survey_text(&report));
            Ok(status)
        }
        Err(e @ (SearchError::TheoremViolated { .. } | SearchError::PredicateFailed { .. })) => {
            eprintln!("{e}");
            Ok(Status::Violated)
        }
        Err(e) => Err(e.into()),
    }
}

fn hunt(catalogs: &[Catalog], rule: KRule, invert: bool, out: &mut Out) -> Res<Status> {
    let found = hunt_counterexamples(catalogs, rule, invert)?;
    let orders: Vec<usize> = catalogs.iter().map(|c| c.order).collect();
    let mut text = vec![format!(
        "searched orders {:?}: {} counterexamples",
        orders,
        found.len()
    )];
    text.extend(
        found
            .iter()
            .map(|c| format!("{} n={} k={} fails {}", c.graph6, c.n, c.k, c.theorem)),
    );
    let status = if found.iter().any(|c| c.theorem.is_proven() && !invert) {
        Status::Violated
    } else {
        holds_if(found.is_empty())
    };
    out.record("hunt", None, json!({"orders": orders, "counterexamples": found}), &text);
    Ok(status)
}
