//! Closed-form intersection bounds and the verdicts that compare them
//! with measured longest-path data.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::claims::{check_graph, ClaimsSummary};
use crate::connectivity::vertex_connectivity;
use crate::error::Result;
use crate::graph::{Graph, GraphId};
use crate::longest::{
    census, has_hamiltonian_cycle, min_pairwise_intersection, min_pairwise_intersection_streaming,
    Engine, LongestPathCensus,
};

pub type Rational = Ratio<i64>;

fn int(x: usize) -> i64 {
    i64::try_from(x).expect("size fits in i64")
}

/// `2L + 2 - n`.
pub fn bound_prop3(n: usize, l: usize) -> Rational {
    Rational::from_integer(2 * int(l) + 2 - int(n))
}

/// `2k - L/2`.
pub fn bound_lemma4(k: usize, l: usize) -> Rational {
    Rational::from_integer(2 * int(k)) - Rational::new(int(l), 2)
}

/// `(8k - n + 2) / 5`.
pub fn bound_main(n: usize, k: usize) -> Rational {
    Rational::new(8 * int(k) - int(n) + 2, 5)
}

/// `(n - 2) / 3`: from this connectivity on, every two longest paths
/// share at least `k` vertices.
pub fn corollary_threshold(n: usize) -> Rational {
    Rational::new(int(n) - 2, 3)
}

/// `n / 3`, the weaker form of the same threshold that is also quoted.
pub fn corollary_threshold_weak(n: usize) -> Rational {
    Rational::new(int(n), 3)
}

/// The integer actually compared: `ceil(bound)` clamped to `[1, n]` on
/// connected graphs, 0 otherwise. The upper clamp only matters when the
/// literal bound exceeds `n`, which forces `L < 2k`; such graphs are
/// Hamiltonian and any two longest paths share all `n` vertices.
pub fn effective(bound: Rational, n: usize, connected: bool) -> i64 {
    if connected {
        bound.ceil().to_integer().clamp(1, int(n).max(1))
    } else {
        0
    }
}

fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "ser_ratio")]
    pub exact: Rational,
    pub effective: i64,
    /// The exact value exceeds `n`.
    pub exceeds_n: bool,
}

impl BoundValue {
    fn new(exact: Rational, n: usize, connected: bool) -> Self {
        Self {
            exact,
            effective: effective(exact, n, connected),
            exceeds_n: exact > Rational::from_integer(int(n)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    /// Holds with equality: a tightness witness.
    #[serde(rename = "equality")]
    Equality,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Verdict {
    pub fn compare(measured: i64, bound: i64) -> Self {
        match measured.cmp(&bound) {
            std::cmp::Ordering::Greater => Verdict::Pass,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Less => Verdict::Fail,
        }
    }

    fn when(applicable: bool, measured: i64, bound: i64) -> Self {
        if applicable {
            Self::compare(measured, bound)
        } else {
            Verdict::NotApplicable
        }
    }

    pub fn failed(self) -> bool {
        self == Verdict::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Equality => "eq",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "na",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// `L >= 2k` for graphs without a Hamiltonian cycle.
    pub prop2: Verdict,
    pub prop3: Verdict,
    pub lemma4: Verdict,
    pub main: Verdict,
    pub hippchen: Verdict,
    /// `min >= k` once `k >= (n-2)/3`.
    pub corollary: Verdict,
    /// `min >= 4` once `k >= 4`.
    pub theorem7: Verdict,
    /// `min >= k` once `k >= n/4`.
    pub conj9: Verdict,
    /// `min >= 5` once `k >= 5`.
    pub conj10: Verdict,
}

impl Verdicts {
    pub fn entries(&self) -> [(&'static str, Verdict); 9] {
        [
            ("prop2", self.prop2),
            ("prop3", self.prop3),
            ("lemma4", self.lemma4),
            ("main", self.main),
            ("hippchen", self.hippchen),
            ("corollary", self.corollary),
            ("theorem7", self.theorem7),
            ("conj9", self.conj9),
            ("conj10", self.conj10),
        ]
    }

    /// `key=value;` pairs in fixed order.
    pub fn flags(&self) -> String {
        self.entries()
            .iter()
            .map(|(k, v)| format!("{k}={v};"))
            .collect()
    }

    pub fn equalities(&self) -> Vec<&'static str> {
        self.entries()
            .iter()
            .filter(|(_, v)| *v == Verdict::Equality)
            .map(|(k, _)| *k)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Pass,
    /// An open conjecture failed: a counterexample candidate.
    ConjectureCandidate,
    /// A proven statement failed, which can only be a bug.
    TheoremFailure,
}

impl Classification {
    pub fn exit_code(self) -> i32 {
        match self {
            Classification::Pass => 0,
            Classification::TheoremFailure => 2,
            Classification::ConjectureCandidate => 3,
        }
    }
}

/// Hippchen's statement is proven for `k <= 4` and for `k >= (n-2)/3`.
pub fn hippchen_proven(n: usize, k: usize) -> bool {
    k <= 4 || 3 * k + 2 >= n
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Elapsed {
    pub connectivity_ms: u64,
    pub census_ms: u64,
    pub hamiltonian_ms: u64,
    pub claims_ms: u64,
    pub total_ms: u64,
}

fn ms(d: Duration) -> u64 {
    u64::try_from(d.as_millis()).unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub prop3: BoundValue,
    pub lemma4: BoundValue,
    pub main: BoundValue,
    pub hippchen: BoundValue,
    #[serde(serialize_with = "ser_ratio")]
    pub corollary_threshold: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub corollary_threshold_weak: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub graph_id: GraphId,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub length: usize,
    pub census_count: u128,
    pub census_truncated: bool,
    pub min_intersection: usize,
    /// Set when the minimum came from a truncated listing.
    pub min_intersection_upper_bound: bool,
    pub bounds: Bounds,
    pub ham_cycle: bool,
    pub ham_path: bool,
    pub verdicts: Verdicts,
    pub classification: Classification,
    pub diagnosis: Option<String>,
    pub elapsed: Elapsed,
    pub proof_claims: Option<ClaimsSummary>,
}

pub const CSV_HEADER: [&str; 15] = [
    "graph_id",
    "n",
    "m",
    "k",
    "L",
    "census_count",
    "min_intersection",
    "prop3",
    "lemma4",
    "main",
    "hippchen",
    "ham_cycle",
    "ham_path",
    "verdict_flags",
    "elapsed_ms",
];

impl BoundReport {
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.graph_id.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.k.to_string(),
            self.length.to_string(),
            self.census_count.to_string(),
            self.min_intersection.to_string(),
            self.bounds.prop3.effective.to_string(),
            self.bounds.lemma4.effective.to_string(),
            self.bounds.main.effective.to_string(),
            self.bounds.hippchen.effective.to_string(),
            self.ham_cycle.to_string(),
            self.ham_path.to_string(),
            self.verdicts.flags(),
            self.elapsed.total_ms.to_string(),
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        self.classification.exit_code()
    }
}

#[derive(Clone, Debug)]
pub struct EvaluateOptions {
    pub engine: Engine,
    pub cap: Option<usize>,
    /// Take the minimum over the exhaustive vertex-set family instead of
    /// the path listing.
    pub streaming: bool,
    pub allow_truncated: bool,
    pub time_budget: Option<Duration>,
    /// Run the proof-claim sweep when the census lists at most this many
    /// paths; `None` skips it.
    pub claims_max_paths: Option<usize>,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        Self {
            engine: Engine::Dfs,
            cap: None,
            streaming: true,
            allow_truncated: false,
            time_budget: None,
            claims_max_paths: None,
        }
    }
}

/// The intersection-bound verdicts for given measurements.
pub fn verdicts(n: usize, k: usize, l: usize, min: usize, ham_cycle: bool, connected: bool) -> Verdicts {
    let min = int(min);
    let ki = int(k);
    let eff = |b| effective(b, n, connected);
    Verdicts {
        prop2: Verdict::when(n >= 3 && !ham_cycle, int(l), 2 * ki),
        prop3: Verdict::compare(min, eff(bound_prop3(n, l))),
        lemma4: Verdict::compare(min, eff(bound_lemma4(k, l))),
        main: Verdict::compare(min, eff(bound_main(n, k))),
        hippchen: Verdict::compare(min, ki),
        corollary: Verdict::when(k >= 1 && 3 * k + 2 >= n, min, ki),
        theorem7: Verdict::when(k >= 4, min, 4),
        conj9: Verdict::when(k >= 1 && 4 * k >= n, min, ki),
        conj10: Verdict::when(k >= 5, min, 5),
    }
}

pub fn classify(n: usize, k: usize, v: &Verdicts, claims: Option<&ClaimsSummary>) -> Classification {
    let theorem = v.prop2.failed()
        || v.prop3.failed()
        || v.lemma4.failed()
        || v.main.failed()
        || v.corollary.failed()
        || v.theorem7.failed()
        || (v.hippchen.failed() && hippchen_proven(n, k))
        || claims.is_some_and(|c| c.failures() > 0);
    if theorem {
        Classification::TheoremFailure
    } else if v.conj9.failed() || v.conj10.failed() || v.hippchen.failed() {
        Classification::ConjectureCandidate
    } else {
        Classification::Pass
    }
}

fn diagnosis(v: &Verdicts, c: Classification) -> Option<String> {
    let failed: Vec<&str> = v
        .entries()
        .iter()
        .filter(|(_, x)| x.failed())
        .map(|(k, _)| *k)
        .collect();
    match c {
        Classification::Pass => None,
        Classification::TheoremFailure => Some(format!(
            "proven bound violated ({}): this is an implementation bug, not new mathematics",
            if failed.is_empty() {
                "proof claims".to_string()
            } else {
                failed.join(", ")
            }
        )),
        Classification::ConjectureCandidate => Some(format!(
            "conjecture counterexample candidate ({}); re-verify independently",
            failed.join(", ")
        )),
    }
}

pub fn evaluate(g: &Graph) -> Result<BoundReport> {
    evaluate_with(g, &EvaluateOptions::default())
}

pub fn evaluate_with(g: &Graph, opts: &EvaluateOptions) -> Result<BoundReport> {
    let start = Instant::now();
    let budget = match opts.time_budget {
        Some(d) => Budget::with_timeout(d),
        None => Budget::unlimited(),
    };
    let n = g.n();
    let connected = g.is_connected();

    let t = Instant::now();
    let k = vertex_connectivity(g)?;
    let connectivity_ms = ms(t.elapsed());
    budget.check()?;

    let t = Instant::now();
    let c: LongestPathCensus = census(g, opts.engine, opts.cap, &budget)?;
    let min = if !c.truncated {
        min_pairwise_intersection(&c, false)?
    } else if opts.streaming {
        min_pairwise_intersection_streaming(&c)?
    } else {
        min_pairwise_intersection(&c, opts.allow_truncated)?
    };
    let census_ms = ms(t.elapsed());

    let t = Instant::now();
    let ham_path = c.length + 1 == n;
    let ham_cycle = ham_path && has_hamiltonian_cycle(g, &budget)?;
    let hamiltonian_ms = ms(t.elapsed());

    let t = Instant::now();
    let proof_claims = match opts.claims_max_paths {
        Some(limit) if !c.truncated && c.paths.len() <= limit && connected => {
            Some(check_graph(g, &c, k)?)
        }
        _ => None,
    };
    let claims_ms = ms(t.elapsed());

    let l = c.length;
    let v = verdicts(n, k, l, min.value, ham_cycle, connected);
    let classification = classify(n, k, &v, proof_claims.as_ref());
    Ok(BoundReport {
        graph_id: c.graph_id.clone(),
        n,
        m: g.m(),
        k,
        length: l,
        census_count: c.count,
        census_truncated: c.truncated,
        min_intersection: min.value,
        min_intersection_upper_bound: min.upper_bound,
        bounds: Bounds {
            prop3: BoundValue::new(bound_prop3(n, l), n, connected),
            lemma4: BoundValue::new(bound_lemma4(k, l), n, connected),
            main: BoundValue::new(bound_main(n, k), n, connected),
            hippchen: BoundValue::new(Rational::from_integer(int(k)), n, connected),
            corollary_threshold: corollary_threshold(n),
            corollary_threshold_weak: corollary_threshold_weak(n),
        },
        ham_cycle,
        ham_path,
        verdicts: v,
        diagnosis: diagnosis(&v, classification),
        classification,
        elapsed: Elapsed {
            connectivity_ms,
            census_ms,
            hamiltonian_ms,
            claims_ms,
            total_ms: ms(start.elapsed()),
        },
        proof_claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::families::{complete_bipartite, tight_family};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(bound_prop3(5, 4), r(5, 1));
        assert_eq!(bound_prop3(8, 4), r(2, 1));
        assert_eq!(bound_prop3(1, 0), r(1, 1));
        assert_eq!(bound_lemma4(2, 4), r(2, 1));
        assert_eq!(bound_lemma4(4, 8), r(4, 1));
        assert_eq!(bound_lemma4(3, 9), r(3, 2));
        assert_eq!(bound_main(8, 2), r(2, 1));
        assert_eq!(bound_main(20, 1), r(-2, 1));
        assert_eq!(bound_main(20, 2), r(-2, 5));
        for k in 1..30 {
            assert_eq!(bound_main(3 * k + 2, k), r(k as i64, 1));
        }
        assert_eq!(corollary_threshold(8), r(2, 1));
        assert_eq!(corollary_threshold(5), r(1, 1));
        assert_eq!(corollary_threshold(14), r(4, 1));
    }

    #[test]
    fn effective_bounds() {
        assert_eq!(effective(r(-7, 5), 20, true), 1);
        assert_eq!(effective(r(3, 2), 10, true), 2);
        assert_eq!(effective(r(2, 1), 10, true), 2);
        assert_eq!(effective(r(3, 2), 10, false), 0);
        assert_eq!(effective(r(29, 5), 5, true), 5);
    }

    #[test]
    fn c5_report() {
        let rep = evaluate(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (2, 4, 5));
        assert!(rep.ham_cycle && rep.ham_path);
        assert_eq!(rep.verdicts.prop2, Verdict::NotApplicable);
        assert_eq!(rep.verdicts.prop3, Verdict::Equality);
        assert_eq!(rep.classification, Classification::Pass);
        assert!(rep.diagnosis.is_none());
    }

    #[test]
    fn k26_is_tight_for_hippchen() {
        let rep = evaluate(&complete_bipartite(2, 6).unwrap()).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (2, 4, 2));
        assert_eq!(rep.verdicts.hippchen, Verdict::Equality);
        assert_eq!(rep.verdicts.corollary, Verdict::Equality);
        assert_eq!(rep.verdicts.prop2, Verdict::Equality);
        assert!(rep.verdicts.equalities().contains(&"hippchen"));
    }

    #[test]
    fn k4_10_is_tight_for_theorem7() {
        let rep = evaluate(&complete_bipartite(4, 10).unwrap()).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (4, 8, 4));
        assert_eq!(rep.verdicts.theorem7, Verdict::Equality);
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn petersen_report() {
        let rep = evaluate(&Graph::petersen()).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (3, 9, 10));
        assert!(!rep.ham_cycle);
        assert_eq!(rep.bounds.lemma4.exact, r(3, 2));
        assert_eq!(rep.bounds.lemma4.effective, 2);
        assert_eq!(rep.classification, Classification::Pass);
    }

    #[test]
    fn tight_k3_ell2() {
        let f = tight_family(3, 2).unwrap();
        let rep = evaluate(&f.graph).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (3, 10, 3));
        assert_eq!(rep.verdicts.hippchen, Verdict::Equality);
    }

    #[test]
    fn complete_graph_bounds_exceed_n() {
        // K_5: the literal bounds ask for 6 of 5 vertices.
        let rep = evaluate(&Graph::complete(5)).unwrap();
        assert_eq!((rep.k, rep.length, rep.min_intersection), (4, 4, 5));
        assert_eq!(rep.bounds.main.exact, r(29, 5));
        assert_eq!(rep.bounds.lemma4.exact, r(6, 1));
        assert!(rep.bounds.main.exceeds_n && rep.bounds.lemma4.exceeds_n);
        assert!(rep.ham_cycle);
        assert_eq!(rep.verdicts.main, Verdict::Equality);
        assert_eq!(rep.classification, Classification::Pass);
    }

    #[test]
    fn disconnected_graph_passes_trivially() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let rep = evaluate(&g).unwrap();
        assert_eq!((rep.k, rep.min_intersection), (0, 0));
        assert_eq!(rep.bounds.main.effective, 0);
        assert_eq!(rep.classification, Classification::Pass);
    }

    #[test]
    fn k2_is_exempt_from_prop2() {
        let v = verdicts(2, 1, 1, 2, false, true);
        assert_eq!(v.prop2, Verdict::NotApplicable);
    }

    #[test]
    fn classification_and_flags() {
        let v = verdicts(30, 5, 16, 4, false, true);
        assert_eq!(v.conj10, Verdict::Fail);
        assert_eq!(classify(30, 5, &v, None), Classification::ConjectureCandidate);
        let v = verdicts(12, 4, 8, 3, false, true);
        assert_eq!(v.theorem7, Verdict::Fail);
        assert_eq!(classify(12, 4, &v, None), Classification::TheoremFailure);
        assert!(diagnosis(&v, Classification::TheoremFailure).unwrap().contains("bug"));
        assert_eq!(
            verdicts(5, 2, 4, 5, true, true).flags(),
            "prop2=na;prop3=eq;lemma4=pass;main=pass;hippchen=pass;corollary=pass;theorem7=na;conj9=pass;conj10=na;"
        );
    }

    #[test]
    fn truncated_census_needs_streaming_or_permission() {
        let g = Graph::complete(5);
        let strict = EvaluateOptions {
            cap: Some(3),
            streaming: false,
            ..EvaluateOptions::default()
        };
        assert_eq!(evaluate_with(&g, &strict).unwrap_err(), Error::TruncatedCensus);
        let loose = EvaluateOptions {
            allow_truncated: true,
            ..strict.clone()
        };
        assert!(evaluate_with(&g, &loose).unwrap().min_intersection_upper_bound);
        let streaming = EvaluateOptions {
            cap: Some(3),
            ..EvaluateOptions::default()
        };
        let rep = evaluate_with(&g, &streaming).unwrap();
        assert_eq!(rep.min_intersection, 5);
        assert!(!rep.min_intersection_upper_bound);
    }

    #[test]
    fn report_json_and_csv() {
        let opts = EvaluateOptions {
            claims_max_paths: Some(1000),
            ..EvaluateOptions::default()
        };
        let rep = evaluate_with(&complete_bipartite(2, 6).unwrap(), &opts).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["L"], 4);
        assert_eq!(v["bounds"]["main"]["exact"], "2");
        assert_eq!(v["verdicts"]["hippchen"], "equality");
        assert_eq!(v["proof_claims"]["endpoint_failures"], 0);
        let rec = rep.csv_record();
        assert_eq!(rec.len(), CSV_HEADER.len());
        assert_eq!(rec[6], "2");
    }
}
