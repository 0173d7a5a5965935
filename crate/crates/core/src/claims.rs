//! Executable versions of the length inequalities that tie a fan to a
//! longest path.
//!
//! Take a longest path `P` with extremes `p1`, `p2` and a vertex `q` off
//! `P`. A fan `R_1..R_k` from `q` into `V(P)`, ordered by where it lands
//! on `P` (`v_1..v_k` by distance from `p1`), must satisfy
//!
//! * `dist_P(p1, v_1) >= |R_1|` and `dist_P(v_k, p2) >= |R_k|`,
//! * `dist_P(v_i, v_{i+1}) >= |R_i| + |R_{i+1}|`,
//! * and, when `q` is an extreme of a second longest path `Q`, every fan
//!   path landing outside `X = V(P) ∩ V(Q)` has length at least 2.
//!
//! Each check returns a longer path as a certificate when it fails, so a
//! failure always points at a concrete bug.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::connectivity::{fan, FanResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::longest::LongestPathCensus;
use crate::path::{find_exchange_config, intersection, posa_rotate, Path};

/// A fan from `q` into `V(P)` with its attachments sorted along `P`.
#[derive(Clone, Debug)]
pub struct FanAgainstPath<'g> {
    pub graph: &'g Graph,
    pub p: Path,
    pub q: Vertex,
    pub fan: FanResult,
    /// Fan path indices ordered by `dist_P(p1, v_i)`, strictly increasing.
    pub attachment_order: Vec<usize>,
}

impl FanAgainstPath<'_> {
    pub fn k(&self) -> usize {
        self.attachment_order.len()
    }

    /// `R_i` (1-based, in attachment order), oriented from `q` to `v_i`.
    pub fn r(&self, i: usize) -> &Path {
        &self.fan.paths[self.attachment_order[i - 1]]
    }

    /// `v_i` (1-based).
    pub fn v(&self, i: usize) -> Vertex {
        self.r(i).last()
    }

    pub fn total_fan_length(&self) -> usize {
        self.fan.paths.iter().map(Path::len).sum()
    }
}

pub fn build_fan_against_path<'g>(
    g: &'g Graph,
    p: &Path,
    q: Vertex,
    k: usize,
) -> Result<FanAgainstPath<'g>> {
    if p.contains(q) {
        return Err(Error::InvalidParameter(format!("q={q} lies on P")));
    }
    let targets: BTreeSet<Vertex> = p.vertices().iter().copied().collect();
    let fan = fan(g, q, &targets, k)?;
    let mut attachment_order: Vec<usize> = (0..fan.paths.len()).collect();
    attachment_order.sort_by_key(|&i| p.position(fan.paths[i].last()));
    Ok(FanAgainstPath {
        graph: g,
        p: p.clone(),
        q,
        fan,
        attachment_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ClaimVerdict {
    Pass,
    Fail { detail: String, certificate: Path },
}

impl ClaimVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ClaimVerdict::Pass)
    }
}

fn require_longest(p: &Path, longest: usize) -> Result<()> {
    if p.len() != longest {
        return Err(Error::NotLongest {
            length: p.len(),
            longest,
        });
    }
    Ok(())
}

fn join(g: &Graph, parts: &[&[Vertex]]) -> Result<Path> {
    let mut seq: Vec<Vertex> = Vec::new();
    for part in parts {
        for &v in *part {
            if seq.last() != Some(&v) {
                seq.push(v);
            }
        }
    }
    Path::new(g, seq)
}

/// Both end segments of `P` are at least as long as the fan paths that
/// land closest to them. `longest` is the certified `L` from a census.
pub fn check_endpoint_claims(fap: &FanAgainstPath<'_>, longest: usize) -> Result<ClaimVerdict> {
    require_longest(&fap.p, longest)?;
    let p = &fap.p;
    let k = fap.k();
    let (p1, p2) = (p.first(), p.last());
    let (v1, vk) = (fap.v(1), fap.v(k));
    let (r1, rk) = (fap.r(1), fap.r(k));
    if p.dist(p1, v1)? < r1.len() {
        let rest = p.subpath(v1, p2)?;
        let cert = join(fap.graph, &[r1.vertices(), rest.vertices()])?;
        return Ok(ClaimVerdict::Fail {
            detail: format!("dist_P(p1, v1) < |R_1| = {}", r1.len()),
            certificate: cert,
        });
    }
    if p.dist(vk, p2)? < rk.len() {
        let rest = p.subpath(vk, p1)?;
        let cert = join(fap.graph, &[rk.vertices(), rest.vertices()])?;
        return Ok(ClaimVerdict::Fail {
            detail: format!("dist_P(v_k, p2) < |R_k| = {}", rk.len()),
            certificate: cert,
        });
    }
    Ok(ClaimVerdict::Pass)
}

/// Consecutive attachments are separated on `P` by at least the sum of
/// their fan path lengths.
pub fn check_gap_claims(fap: &FanAgainstPath<'_>, longest: usize) -> Result<ClaimVerdict> {
    require_longest(&fap.p, longest)?;
    let p = &fap.p;
    for i in 1..fap.k() {
        let (vi, vj) = (fap.v(i), fap.v(i + 1));
        let (ri, rj) = (fap.r(i), fap.r(i + 1));
        if p.dist(vi, vj)? < ri.len() + rj.len() {
            let head = p.subpath(p.first(), vi)?;
            let tail = p.subpath(vj, p.last())?;
            let cert = join(
                fap.graph,
                &[
                    head.vertices(),
                    ri.reversed().vertices(),
                    rj.vertices(),
                    tail.vertices(),
                ],
            )?;
            return Ok(ClaimVerdict::Fail {
                detail: format!(
                    "dist_P(v_{i}, v_{}) < |R_{i}| + |R_{}| = {}",
                    i + 1,
                    i + 1,
                    ri.len() + rj.len()
                ),
                certificate: cert,
            });
        }
    }
    Ok(ClaimVerdict::Pass)
}

fn oriented_from(path: &Path, start: Vertex) -> Result<Path> {
    if path.first() == start {
        Ok(path.clone())
    } else if path.last() == start {
        Ok(path.reversed())
    } else {
        Err(Error::InvalidParameter(format!(
            "{start} is not an extreme of the path"
        )))
    }
}

/// Fan paths landing outside `X = V(P) ∩ V(Q)` have length at least 2,
/// where `q` is an extreme of `q_path`. A length-1 violation certifies
/// `Q + qb` as a longer path.
pub fn check_detached_fan_claim(fap: &FanAgainstPath<'_>, q_path: &Path) -> Result<ClaimVerdict> {
    let q_from_end = oriented_from(q_path, fap.q)?;
    let x = intersection(&fap.p, q_path);
    for r in &fap.fan.paths {
        let b = r.last();
        if x.contains(&b) || r.len() >= 2 {
            continue;
        }
        let mut seq = vec![b];
        seq.extend_from_slice(q_from_end.vertices());
        return Ok(ClaimVerdict::Fail {
            detail: format!("fan path {r} lands outside X with length 1"),
            certificate: Path::new(fap.graph, seq)?,
        });
    }
    Ok(ClaimVerdict::Pass)
}

/// The counting chain `L >= 2 Σ|R_i| >= 2|A| + 4|B| = 4k - 2|A| >= 4k - 2|X|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub length: usize,
    pub k: usize,
    pub fan_total: usize,
    /// Fan paths landing in `X`.
    pub attached: usize,
    /// Fan paths landing outside `X`.
    pub detached: usize,
    pub x: usize,
    pub holds: bool,
}

pub fn lemma_chain(fap: &FanAgainstPath<'_>, q_path: &Path) -> ChainReport {
    let x = intersection(&fap.p, q_path);
    let attached = fap
        .fan
        .paths
        .iter()
        .filter(|r| x.contains(&r.last()))
        .count();
    let detached = fap.k() - attached;
    let length = fap.p.len();
    let fan_total = fap.total_fan_length();
    let k = fap.k();
    let holds = length >= 2 * fan_total
        && fan_total >= attached + 2 * detached
        && attached <= x.len()
        && 2 * x.len() + length >= 4 * k;
    ChainReport {
        length,
        k,
        fan_total,
        attached,
        detached,
        x: x.len(),
        holds,
    }
}

/// Outcome of trying to move the extreme of `Q` off `X` by one rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum RotationOutcome {
    /// Every neighbour of the extreme follows some vertex of `X` along
    /// `Q`, which forces `|X| >= k`.
    Saturated { x: usize, k: usize, holds: bool },
    /// A rotation produced a longest path `rotated` whose new extreme lies
    /// outside `X`.
    Rotated { rotated: Path, holds: bool },
}

impl RotationOutcome {
    pub fn holds(&self) -> bool {
        match self {
            RotationOutcome::Saturated { holds, .. } | RotationOutcome::Rotated { holds, .. } => {
                *holds
            }
        }
    }
}

/// For an extreme `q` of `q_path` lying in `X = V(P) ∩ V(Q)`: either some
/// neighbour `r` of `q` on `Q` is not a successor of an `X` vertex (then
/// one rotation yields an extreme outside `X`), or `|X| >= k`.
pub fn rotation_fallback(
    g: &Graph,
    p: &Path,
    q_path: &Path,
    q: Vertex,
    k: usize,
) -> Result<RotationOutcome> {
    let oriented = oriented_from(q_path, q)?;
    let x = intersection(p, q_path);
    let seq = oriented.vertices();
    let successors: BTreeSet<Vertex> = seq
        .windows(2)
        .filter(|w| x.contains(&w[0]))
        .map(|w| w[1])
        .collect();
    let free = g
        .neighbors(q)
        .iter()
        .copied()
        .find(|&r| oriented.contains(r) && !successors.contains(&r));
    match free {
        None => Ok(RotationOutcome::Saturated {
            x: x.len(),
            k,
            holds: x.len() >= k,
        }),
        Some(r) => {
            let rotated = posa_rotate(g, &oriented, r)?;
            let holds = rotated.len() == oriented.len()
                && rotated.vertex_set() == oriented.vertex_set()
                && !x.contains(&rotated.first());
            Ok(RotationOutcome::Rotated { rotated, holds })
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimsSummary {
    pub path_pairs: usize,
    pub fans_built: usize,
    pub endpoint_checks: usize,
    pub endpoint_failures: usize,
    pub gap_checks: usize,
    pub gap_failures: usize,
    pub detached_checks: usize,
    pub detached_failures: usize,
    pub chain_checks: usize,
    pub chain_failures: usize,
    pub rotation_checks: usize,
    pub rotation_failures: usize,
    pub exchange_pairs: usize,
    pub exchange_hits: usize,
    /// First few failure certificates, for diagnosis.
    pub certificates: Vec<Path>,
}

impl ClaimsSummary {
    pub fn failures(&self) -> usize {
        self.endpoint_failures
            + self.gap_failures
            + self.detached_failures
            + self.chain_failures
            + self.rotation_failures
            + self.exchange_hits
    }

    fn record(&mut self, verdict: &ClaimVerdict) {
        if let ClaimVerdict::Fail { certificate, .. } = verdict {
            if self.certificates.len() < 8 {
                self.certificates.push(certificate.clone());
            }
        }
    }
}

/// Runs every claim over all ordered pairs `(P, Q)` of listed longest
/// paths and both extremes of `Q`, following the proof's flow: an extreme
/// inside `X` is first rotated out (or shown to force `|X| >= k`). Also
/// checks that no exchange configuration exists between any two longest
/// paths. Requires an exhaustive census.
pub fn check_graph(g: &Graph, census: &LongestPathCensus, k: usize) -> Result<ClaimsSummary> {
    if census.truncated {
        return Err(Error::TruncatedCensus);
    }
    let longest = census.length;
    let mut summary = ClaimsSummary::default();
    let mut fans: HashMap<(usize, Vertex), Option<FanAgainstPath<'_>>> = HashMap::new();

    let paths = &census.paths;
    for (i, p) in paths.iter().enumerate() {
        for (j, q_path) in paths.iter().enumerate() {
            summary.path_pairs += 1;
            if j > i && !intersection(p, q_path).is_empty() {
                summary.exchange_pairs += 1;
                if let Some(cfg) = find_exchange_config(g, p, q_path) {
                    summary.exchange_hits += 1;
                    if summary.certificates.len() < 8 {
                        summary.certificates.push(cfg.r.clone());
                    }
                }
            }
            if k == 0 {
                continue;
            }
            let extremes: BTreeSet<Vertex> = [q_path.first(), q_path.last()].into();
            for q in extremes {
                let (q, q_path) = if p.contains(q) {
                    summary.rotation_checks += 1;
                    match rotation_fallback(g, p, q_path, q, k)? {
                        RotationOutcome::Rotated { rotated, holds } if holds => {
                            (rotated.first(), rotated)
                        }
                        outcome => {
                            if !outcome.holds() {
                                summary.rotation_failures += 1;
                            }
                            continue;
                        }
                    }
                } else {
                    (q, q_path.clone())
                };
                let key = (i, q);
                if !fans.contains_key(&key) {
                    let fap = build_fan_against_path(g, p, q, k)?;
                    summary.fans_built += 1;
                    summary.endpoint_checks += 1;
                    let v = check_endpoint_claims(&fap, longest)?;
                    summary.endpoint_failures += usize::from(!v.passed());
                    summary.record(&v);
                    summary.gap_checks += 1;
                    let v = check_gap_claims(&fap, longest)?;
                    summary.gap_failures += usize::from(!v.passed());
                    summary.record(&v);
                    fans.insert(key, Some(fap));
                }
                let fap = fans[&key].as_ref().expect("fan cached");
                summary.detached_checks += 1;
                let v = check_detached_fan_claim(fap, &q_path)?;
                summary.detached_failures += usize::from(!v.passed());
                summary.record(&v);
                summary.chain_checks += 1;
                if !lemma_chain(fap, &q_path).holds {
                    summary.chain_failures += 1;
                }
            }
        }
    }
    Ok(summary)
}
