use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Catalog, SearchError};
use crate::configurations::{certify_minimal_edges, config_predicates, ConfigError, EdgeOutcome, Label};
use crate::criticality::{is_k_factor_critical, is_minimally_kfc, validate_k};
use crate::graph::{encode_graph6, DegreeProfile, Graph};
use crate::verifiers::{
    check_connectivity, check_n4_characterization, conjecture, degree_bounds, maxdeg_profile,
    star_structure, TheoremId, TheoremVerdict,
};

/// Graphs handed to the worker pool at a time; records stream out between
/// batches.
const BATCH: usize = 4096;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCounts {
    pub total: usize,
    pub kfc: usize,
    pub minimal: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictTally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTally {
    pub pass: usize,
    pub fail: usize,
    /// The ambient degree hypothesis failed, so nothing was claimed.
    pub vacuous: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCount {
    pub profile: DegreeProfile,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub theorem: TheoremId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFailure {
    pub graph6: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub n: usize,
    pub k: usize,
    pub source: String,
    pub counts: SurveyCounts,
    /// Degree profiles of the minimal graphs, most frequent first.
    pub profile_histogram: Vec<ProfileCount>,
    /// Minimum degree of the minimal graphs.
    pub min_degree_distribution: BTreeMap<usize, usize>,
    pub verdicts: BTreeMap<TheoremId, VerdictTally>,
    /// Residual labels over all edges of all minimal graphs, when
    /// `n - k` is 6 or 8.
    pub configurations: BTreeMap<String, usize>,
    pub ambiguous_configurations: usize,
    pub predicates: PredicateTally,
    pub c2_prime: usize,
    pub counterexamples: Vec<Counterexample>,
    pub errors: Vec<GraphFailure>,
}

/// One line of the verbose stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub index: usize,
    pub graph6: String,
    pub kfc: bool,
    pub minimal: bool,
    pub min_degree: usize,
    /// Applicable verdicts only.
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub configurations: Vec<EdgeLabel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub edge: (usize, usize),
    /// Configuration label, `unclassified` or `not-applicable`.
    pub label: String,
    pub ambiguous: bool,
    /// Names of failed predicate checks; `None` when vacuous.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failed_predicates: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SurveyOptions {
    /// Collect proven-statement failures as counterexamples instead of
    /// stopping at the first.
    pub keep_going: bool,
    /// Skip edge certification and predicates.
    pub skip_configurations: bool,
    /// Treat `δ = k+1` as the failure; only for checking that the hunt
    /// reports what it finds.
    pub invert_conjecture: bool,
}

/// Runs criticality, minimality and every applicable checker over the
/// catalog. Stops with [`SearchError::TheoremViolated`] at the first
/// failure of a proven statement (in catalog order).
pub fn survey(cat: &Catalog, k: usize) -> Result<SurveyReport, SearchError> {
    survey_with(cat, k, SurveyOptions::default(), None)
}

/// [`survey`] with options, optionally writing one JSON line per graph.
pub fn survey_with(
    cat: &Catalog,
    k: usize,
    opts: SurveyOptions,
    mut lines: Option<&mut dyn Write>,
) -> Result<SurveyReport, SearchError> {
    let n = cat.order;
    if k == 0 || k + 2 > n {
        return Err(SearchError::InvalidK { order: n, k });
    }
    if let Some(g) = cat.graphs.first() {
        validate_k(g, k).map_err(|_| SearchError::InvalidK { order: n, k })?;
    }
    let mut agg = Aggregate::default();
    for (b, batch) in cat.graphs.chunks(BATCH).enumerate() {
        let outcomes: Vec<Outcome> = batch
            .par_iter()
            .enumerate()
            .map(|(i, g)| examine(b * BATCH + i, g, k, opts))
            .collect();
        for o in outcomes {
            if let Some(out) = lines.as_deref_mut() {
                serde_json::to_writer(&mut *out, &o.record)
                    .map_err(|e| SearchError::Output(e.to_string()))?;
                writeln!(out).map_err(|e| SearchError::Output(e.to_string()))?;
            }
            agg.absorb(o, n, k, opts)?;
        }
    }
    Ok(agg.finish(n, k, cat.source.to_string()))
}

struct Outcome {
    record: GraphRecord,
    profile: Option<DegreeProfile>,
    c2_prime: usize,
    ambiguous: usize,
    predicates: PredicateTally,
    /// Edge and check name of failed predicates.
    failed_predicates: Vec<String>,
}

fn examine(index: usize, g: &Graph, k: usize, opts: SurveyOptions) -> Outcome {
    let n = g.order();
    let mut out = Outcome {
        record: GraphRecord {
            index,
            graph6: encode_graph6(g),
            kfc: false,
            minimal: false,
            min_degree: g.min_degree(),
            verdicts: Vec::new(),
            configurations: Vec::new(),
            error: None,
        },
        profile: None,
        c2_prime: 0,
        ambiguous: 0,
        predicates: PredicateTally::default(),
        failed_predicates: Vec::new(),
    };
    let rec = &mut out.record;
    if k + 4 == n && n >= 6 {
        match check_n4_characterization(g) {
            Ok(v) => rec.verdicts.push(v),
            Err(e) => rec.error = Some(e.to_string()),
        }
    }
    rec.kfc = match is_k_factor_critical(g, k) {
        Ok(r) => r.verdict,
        Err(e) => {
            rec.error = Some(e.to_string());
            return out;
        }
    };
    if !rec.kfc {
        return out;
    }
    match check_connectivity(g, k) {
        Ok(v) => rec.verdicts.push(v),
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec.minimal = is_minimally_kfc(g, k).unwrap_or(false);
    if g.max_degree() + 1 == n && n > k + 2 {
        rec.verdicts.push(star_structure(g, k, rec.minimal));
    }
    if !rec.minimal {
        rec.verdicts.retain(|v| v.applicable);
        return out;
    }
    out.profile = Some(g.degree_profile());
    let mut c = conjecture(g, k);
    if opts.invert_conjecture {
        c.pass = c.pass.map(|p| !p);
    }
    rec.verdicts.push(c);
    rec.verdicts.push(degree_bounds(g, k));
    if k + 6 == n {
        // the universal-vertex case is already covered above
        rec.verdicts.extend(
            maxdeg_profile(g)
                .into_iter()
                .filter(|v| v.theorem != TheoremId::UniversalVertex),
        );
    }
    rec.verdicts.retain(|v| v.applicable);
    if opts.skip_configurations || !(n - k == 6 || n - k == 8) {
        return out;
    }
    let certs = match certify_minimal_edges(g, k) {
        Ok(c) => c,
        Err(e) => {
            rec.error = Some(e.to_string());
            return out;
        }
    };
    for cert in certs {
        let mut entry = EdgeLabel {
            edge: cert.edge,
            label: String::new(),
            ambiguous: false,
            failed_predicates: None,
        };
        match &cert.outcome {
            EdgeOutcome::Classified { configuration: m } => {
                entry.label = m.label.to_string();
                entry.ambiguous = m.ambiguity_flag;
                out.ambiguous += usize::from(m.ambiguity_flag);
                out.c2_prime += usize::from(m.label == Label::C2Prime);
                match config_predicates(g, cert.edge, cert.witness, m) {
                    Ok(report) => {
                        let failed: Vec<String> = report
                            .checks
                            .iter()
                            .filter(|c| !c.pass)
                            .map(|c| c.name.clone())
                            .collect();
                        if failed.is_empty() {
                            out.predicates.pass += 1;
                        } else {
                            out.predicates.fail += 1;
                            out.failed_predicates.extend(
                                failed
                                    .iter()
                                    .map(|f| format!("{} {:?}: {f}", m.label, cert.edge)),
                            );
                        }
                        entry.failed_predicates = Some(failed);
                    }
                    Err(ConfigError::HypothesisUnmet(_)) => out.predicates.vacuous += 1,
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            EdgeOutcome::Unclassified { .. } => entry.label = "unclassified".into(),
            EdgeOutcome::NotApplicable { .. } => entry.label = "not-applicable".into(),
        }
        rec.configurations.push(entry);
    }
    out
}

#[derive(Default)]
struct Aggregate {
    counts: SurveyCounts,
    profiles: BTreeMap<DegreeProfile, usize>,
    min_degrees: BTreeMap<usize, usize>,
    verdicts: BTreeMap<TheoremId, VerdictTally>,
    configurations: BTreeMap<String, usize>,
    ambiguous: usize,
    predicates: PredicateTally,
    c2_prime: usize,
    counterexamples: Vec<Counterexample>,
    errors: Vec<GraphFailure>,
}

impl Aggregate {
    fn absorb(&mut self, o: Outcome, n: usize, k: usize, opts: SurveyOptions) -> Result<(), SearchError> {
        let rec = o.record;
        self.counts.total += 1;
        self.counts.kfc += usize::from(rec.kfc);
        self.counts.minimal += usize::from(rec.minimal);
        if let Some(p) = o.profile {
            *self.profiles.entry(p).or_default() += 1;
            *self.min_degrees.entry(rec.min_degree).or_default() += 1;
        }
        for v in &rec.verdicts {
            let t = self.verdicts.entry(v.theorem).or_default();
            match v.pass {
                Some(true) => t.pass += 1,
                Some(false) => t.fail += 1,
                None => t.not_applicable += 1,
            }
            if v.failed_check() {
                if v.theorem.is_proven() && !opts.keep_going {
                    return Err(SearchError::TheoremViolated {
                        theorem: v.theorem,
                        graph6: rec.graph6.clone(),
                        detail: serde_json::to_string(&v.witness).unwrap_or_default(),
                    });
                }
                self.counterexamples.push(Counterexample {
                    graph6: rec.graph6.clone(),
                    n,
                    k,
                    theorem: v.theorem,
                });
            }
        }
        if let Some(first) = o.failed_predicates.first() {
            if !opts.keep_going {
                return Err(SearchError::PredicateFailed {
                    graph6: rec.graph6.clone(),
                    detail: first.clone(),
                });
            }
        }
        for e in &rec.configurations {
            *self.configurations.entry(e.label.clone()).or_default() += 1;
        }
        self.ambiguous += o.ambiguous;
        self.c2_prime += o.c2_prime;
        self.predicates.pass += o.predicates.pass;
        self.predicates.fail += o.predicates.fail;
        self.predicates.vacuous += o.predicates.vacuous;
        if let Some(message) = rec.error {
            self.errors.push(GraphFailure {
                graph6: rec.graph6,
                message,
            });
        }
        Ok(())
    }

    fn finish(self, n: usize, k: usize, source: String) -> SurveyReport {
        let mut profile_histogram: Vec<ProfileCount> = self
            .profiles
            .into_iter()
            .map(|(profile, count)| ProfileCount { profile, count })
            .collect();
        profile_histogram.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.profile.cmp(&b.profile)));
        SurveyReport {
            n,
            k,
            source,
            counts: self.counts,
            profile_histogram,
            min_degree_distribution: self.min_degrees,
            verdicts: self.verdicts,
            configurations: self.configurations,
            ambiguous_configurations: self.ambiguous,
            predicates: self.predicates,
            c2_prime: self.c2_prime,
            counterexamples: self.counterexamples,
            errors: self.errors,
        }
    }
}

/// Which `k` to try at each order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KRule {
    /// Every `k` with `1 <= k <= n - 2` and `k ≡ n (mod 2)`.
    AllValid,
    /// `k = n - c`.
    Offset(usize),
    Fixed(usize),
}

impl KRule {
    pub fn values(self, n: usize) -> Vec<usize> {
        let valid = |k: usize| k >= 1 && k + 2 <= n && (n - k).is_multiple_of(2);
        match self {
            KRule::AllValid => (1..n).filter(|&k| valid(k)).collect(),
            KRule::Offset(c) => n.checked_sub(c).filter(|&k| valid(k)).into_iter().collect(),
            KRule::Fixed(k) => Some(k).filter(|&k| valid(k)).into_iter().collect(),
        }
    }
}

/// Every minimal graph failing the minimum-degree statement or any proven
/// statement, over the given catalogs, in catalog order. Orders with no
/// valid `k` under the rule are skipped.
pub fn hunt_counterexamples<'a, I>(
    catalogs: I,
    rule: KRule,
    invert_conjecture: bool,
) -> Result<Vec<Counterexample>, SearchError>
where
    I: IntoIterator<Item = &'a Catalog>,
{
    let opts = SurveyOptions {
        keep_going: true,
        skip_configurations: true,
        invert_conjecture,
    };
    let mut found = Vec::new();
    for cat in catalogs {
        for k in rule.values(cat.order) {
            found.extend(survey_with(cat, k, opts, None)?.counterexamples);
        }
    }
    Ok(found)
}
