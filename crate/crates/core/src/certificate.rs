//! JSON certificate documents and their independent re-checks.
//!
//! A bare box representation is `{"b": 2, "reps": [[[v, l, r], ...], ...]}`.
//! Certificates add a `kind` tag and bind to a labelled graph through
//! `graph_hash`, the SHA-256 of the graph's sorted edge list.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::FamilyGraph;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Side};
use crate::interval::{is_interval_graph, verify_box_representation, BoxRep, Interval, IntervalRep, IntervalVerdict};
use crate::io::write_edge_list;
use crate::recognition::{is_simple_vertex, split_completion, EliminationCertificate, EliminationKind};
use crate::solver::boxicity::{refute_boxicity_at_most, BoxicityCertificate, CertificateKind, RefuteOutcome, SolverConfig};

/// `sha256:<hex>` of the edge-list serialization.
pub fn graph_hash(g: &Graph) -> String {
    let digest = Sha256::digest(write_edge_list(g).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

type RepRows = Vec<Vec<(usize, i64, i64)>>;

fn rows_of(reps: &[IntervalRep]) -> RepRows {
    reps.iter()
        .map(|r| {
            r.intervals()
                .iter()
                .enumerate()
                .map(|(v, iv)| (v, iv.l, iv.r))
                .collect()
        })
        .collect()
}

fn reps_from_rows(b: usize, rows: &RepRows) -> Result<Vec<IntervalRep>> {
    if rows.len() != b {
        return Err(Error::Certificate(format!("b = {b} but {} reps given", rows.len())));
    }
    let n = rows.first().map_or(0, Vec::len);
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::Certificate(format!("rep {i} covers {} vertices, expected {n}", row.len())));
            }
            let mut slots: Vec<Option<Interval>> = vec![None; n];
            for &(v, l, r) in row {
                if l > r {
                    return Err(Error::Certificate(format!("rep {i}: vertex {v} has l = {l} > r = {r}")));
                }
                match slots.get_mut(v) {
                    Some(slot @ None) => *slot = Some(Interval { l, r }),
                    Some(Some(_)) => return Err(Error::Certificate(format!("rep {i}: vertex {v} listed twice"))),
                    None => return Err(Error::Certificate(format!("rep {i}: vertex {v} out of range"))),
                }
            }
            Ok(IntervalRep::from_intervals(slots.into_iter().map(|s| s.expect("all slots filled")).collect()))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct BoxRepDoc {
    b: usize,
    reps: RepRows,
}

pub fn box_rep_to_json(rep: &BoxRep) -> String {
    let doc = BoxRepDoc {
        b: rep.b(),
        reps: rows_of(rep.reps()),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Reads a bare box representation or the representation inside an `upper` certificate.
pub fn box_rep_from_json(text: &str) -> Result<BoxRep> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
    let (b, rows) = if value.get("kind").is_some() {
        match Certificate::from_value(value)? {
            Certificate::Upper { b, reps, .. } => (b, reps),
            other => return Err(Error::Certificate(format!("expected a box representation, got {}", other.kind()))),
        }
    } else {
        let doc: BoxRepDoc = serde_json::from_value(value).map_err(|e| Error::Certificate(e.to_string()))?;
        (doc.b, doc.reps)
    };
    let reps = reps_from_rows(b, &rows)?;
    BoxRep::new(reps).map_err(|e| Error::Certificate(e.to_string()))
}

/// Every certificate the library and CLI emit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Box representation; `b = 0` with no reps stands for a complete graph.
    Upper {
        b: usize,
        reps: RepRows,
        nodes_explored: u64,
        graph_hash: String,
    },
    /// No representation with `b` coordinates exists.
    Refutation {
        b: usize,
        nodes_explored: u64,
        graph_hash: String,
    },
    /// Perfect elimination ordering.
    Perfect { ordering: Vec<usize>, graph_hash: String },
    /// Simple elimination ordering.
    Simple { ordering: Vec<usize>, graph_hash: String },
    /// Induced cycle of length at least 4.
    ChordlessCycle { cycle: Vec<usize>, graph_hash: String },
    /// Induced cycle of length at least 6.
    LongCycle { cycle: Vec<usize>, graph_hash: String },
    OddCycle { cycle: Vec<usize>, graph_hash: String },
    /// Simple elimination ordering of `C_A(G)` for the given side `A`.
    ChordalBipartite {
        side_a: Vec<usize>,
        ordering: Vec<usize>,
        graph_hash: String,
    },
    /// Vertex set whose induced subgraph has no simple vertex; taken in
    /// `C_A(G)` when `split_side_a` is present, otherwise in `G`.
    Stuck {
        residual: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        split_side_a: Option<Vec<usize>>,
        graph_hash: String,
    },
    /// Chordal but the maximal cliques admit no consecutive arrangement.
    NoConsecutiveArrangement {
        cliques: usize,
        states_explored: u64,
        graph_hash: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Accepted,
    Rejected(String),
}

impl Verification {
    pub fn is_accepted(&self) -> bool {
        *self == Verification::Accepted
    }
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Upper { .. } => "upper",
            Certificate::Refutation { .. } => "refutation",
            Certificate::Perfect { .. } => "perfect",
            Certificate::Simple { .. } => "simple",
            Certificate::ChordlessCycle { .. } => "chordless-cycle",
            Certificate::LongCycle { .. } => "long-cycle",
            Certificate::OddCycle { .. } => "odd-cycle",
            Certificate::ChordalBipartite { .. } => "chordal-bipartite",
            Certificate::Stuck { .. } => "stuck",
            Certificate::NoConsecutiveArrangement { .. } => "no-consecutive-arrangement",
        }
    }

    pub fn graph_hash(&self) -> &str {
        match self {
            Certificate::Upper { graph_hash, .. }
            | Certificate::Refutation { graph_hash, .. }
            | Certificate::Perfect { graph_hash, .. }
            | Certificate::Simple { graph_hash, .. }
            | Certificate::ChordlessCycle { graph_hash, .. }
            | Certificate::LongCycle { graph_hash, .. }
            | Certificate::OddCycle { graph_hash, .. }
            | Certificate::ChordalBipartite { graph_hash, .. }
            | Certificate::Stuck { graph_hash, .. }
            | Certificate::NoConsecutiveArrangement { graph_hash, .. } => graph_hash,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value = serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
        let cert = Self::from_value(value)?;
        cert.check_shape()?;
        Ok(cert)
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        serde_json::from_value(value).map_err(|e| Error::Certificate(e.to_string()))
    }

    /// Structural checks that do not need the graph.
    fn check_shape(&self) -> Result<()> {
        if let Certificate::Upper { b, reps, .. } = self {
            if *b > 0 || !reps.is_empty() {
                reps_from_rows(*b, reps)?;
            }
        }
        Ok(())
    }

    pub fn from_boxicity(cert: &BoxicityCertificate) -> Self {
        match &cert.kind {
            CertificateKind::Upper(reps) => Certificate::Upper {
                b: cert.b,
                reps: rows_of(reps),
                nodes_explored: cert.nodes_explored,
                graph_hash: cert.graph_hash.clone(),
            },
            CertificateKind::Refutation => Certificate::Refutation {
                b: cert.b,
                nodes_explored: cert.nodes_explored,
                graph_hash: cert.graph_hash.clone(),
            },
        }
    }

    pub fn from_elimination(g: &Graph, cert: &EliminationCertificate) -> Self {
        let ordering = cert.ordering.clone();
        let graph_hash = graph_hash(g);
        match cert.kind {
            EliminationKind::Perfect => Certificate::Perfect { ordering, graph_hash },
            EliminationKind::Simple => Certificate::Simple { ordering, graph_hash },
        }
    }

    /// Re-checks the certificate against `g` without trusting how it was made.
    ///
    /// Malformed certificates (bad shape, vertices outside `g`) are errors;
    /// well-formed certificates that do not hold for `g` are rejections.
    /// Refutations are re-derived by running the search again under `config`.
    pub fn verify(&self, g: &Graph, config: &SolverConfig) -> Result<Verification> {
        self.check_shape()?;
        if self.graph_hash() != graph_hash(g) {
            return Ok(Verification::Rejected("graph hash does not match".into()));
        }
        let n = g.n();
        let in_range = |vs: &[usize]| -> Result<()> {
            match vs.iter().find(|&&v| v >= n) {
                Some(v) => Err(Error::Certificate(format!("vertex {v} out of range for n = {n}"))),
                None => Ok(()),
            }
        };
        let verdict = |ok: bool, why: &str| {
            if ok {
                Verification::Accepted
            } else {
                Verification::Rejected(why.to_string())
            }
        };
        Ok(match self {
            Certificate::Upper { b: 0, reps, .. } if reps.is_empty() => {
                verdict(g.is_complete(), "empty representation but graph is not complete")
            }
            Certificate::Upper { b, reps, .. } => {
                let reps = reps_from_rows(*b, reps)?;
                let rep = BoxRep::new(reps).map_err(|e| Error::Certificate(e.to_string()))?;
                if rep.n() != n {
                    return Err(Error::Certificate(format!("representation has {} vertices, graph has {n}", rep.n())));
                }
                match verify_box_representation(g, &rep)? {
                    None => Verification::Accepted,
                    Some(d) => Verification::Rejected(Error::from(d).to_string()),
                }
            }
            Certificate::Refutation { b, .. } => match *b {
                0 => verdict(!g.is_complete(), "graph is complete"),
                1 => verdict(!is_interval_graph(g).is_interval(), "graph is an interval graph"),
                b => match refute_boxicity_at_most(g, b, config)? {
                    RefuteOutcome::Refuted { .. } => Verification::Accepted,
                    RefuteOutcome::Representation { .. } => Verification::Rejected(format!("a {b}-representation exists")),
                    RefuteOutcome::Exceeded { nodes } => {
                        Verification::Rejected(format!("re-check exceeded budget after {nodes} nodes"))
                    }
                },
            },
            Certificate::Perfect { ordering, .. } | Certificate::Simple { ordering, .. } => {
                in_range(ordering)?;
                let kind = if matches!(self, Certificate::Perfect { .. }) {
                    EliminationKind::Perfect
                } else {
                    EliminationKind::Simple
                };
                let cert = EliminationCertificate {
                    ordering: ordering.clone(),
                    kind,
                };
                match cert.verify(g) {
                    Ok(()) => Verification::Accepted,
                    Err(step) => Verification::Rejected(format!("elimination fails at step {step}")),
                }
            }
            Certificate::ChordlessCycle { cycle, .. } | Certificate::LongCycle { cycle, .. } => {
                in_range(cycle)?;
                let min = if matches!(self, Certificate::LongCycle { .. }) { 6 } else { 4 };
                verdict(
                    cycle.len() >= min && g.is_induced_cycle(cycle),
                    "not an induced cycle of the required length",
                )
            }
            Certificate::OddCycle { cycle, .. } => {
                in_range(cycle)?;
                let mut distinct = cycle.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let closed = (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                verdict(
                    cycle.len() % 2 == 1 && cycle.len() >= 3 && distinct.len() == cycle.len() && closed,
                    "not an odd cycle",
                )
            }
            Certificate::ChordalBipartite { side_a, ordering, .. } => {
                in_range(side_a)?;
                in_range(ordering)?;
                let Ok(p) = Bipartition::new(g, side_a) else {
                    return Ok(Verification::Rejected("side_a is not a bipartition side".into()));
                };
                let split = split_completion(g, &p, Side::A)?;
                let cert = EliminationCertificate {
                    ordering: ordering.clone(),
                    kind: EliminationKind::Simple,
                };
                match cert.verify(&split) {
                    Ok(()) => Verification::Accepted,
                    Err(step) => Verification::Rejected(format!("elimination of C_A(G) fails at step {step}")),
                }
            }
            Certificate::Stuck { residual, split_side_a, .. } => {
                in_range(residual)?;
                let host = match split_side_a {
                    None => g.clone(),
                    Some(side_a) => {
                        in_range(side_a)?;
                        let Ok(p) = Bipartition::new(g, side_a) else {
                            return Ok(Verification::Rejected("split_side_a is not a bipartition side".into()));
                        };
                        split_completion(g, &p, Side::A)?
                    }
                };
                let sub = host.induced_subgraph(residual)?;
                let no_simple = sub.graph.n() > 0 && (0..sub.graph.n()).all(|v| is_simple_vertex(&sub.graph, v).is_err());
                verdict(no_simple, "residual graph has a simple vertex")
            }
            Certificate::NoConsecutiveArrangement { .. } => match is_interval_graph(g) {
                IntervalVerdict::NoConsecutiveArrangement { .. } => Verification::Accepted,
                _ => Verification::Rejected("graph is interval or not chordal".into()),
            },
        })
    }
}

/// `{"k": k, "layers": {"<vertex>": [layer, column], ...}}` in vertex order.
pub fn labels_to_json(fg: &FamilyGraph) -> String {
    let mut layers = serde_json::Map::new();
    for (v, l) in fg.labels.iter().enumerate() {
        layers.insert(v.to_string(), serde_json::json!([l.layer, l.column]));
    }
    serde_json::json!({ "k": fg.k, "layers": layers }).to_string()
}

/// Parses a labels sidecar back into `(k, labels)`.
pub fn labels_from_json(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    #[derive(Deserialize)]
    struct Doc {
        k: usize,
        layers: std::collections::BTreeMap<String, (usize, usize)>,
    }
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
    let mut out = vec![None; doc.layers.len()];
    for (key, label) in doc.layers {
        let v: usize = key.parse().map_err(|_| Error::Certificate(format!("bad vertex key {key:?}")))?;
        match out.get_mut(v) {
            Some(slot @ None) => *slot = Some(label),
            _ => return Err(Error::Certificate(format!("vertex key {v} out of range or repeated"))),
        }
    }
    Ok((doc.k, out.into_iter().map(|l| l.expect("keys cover 0..n")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_x;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn c4_rep() -> BoxRep {
        BoxRep::new(vec![
            IntervalRep::new(&[(0, 1), (0, 3), (2, 3), (0, 3)]).unwrap(),
            IntervalRep::new(&[(0, 3), (0, 1), (0, 3), (2, 3)]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn hash_depends_on_labelling() {
        let a = c4();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(graph_hash(&a), graph_hash(&c4()));
        assert_ne!(graph_hash(&a), graph_hash(&b));
        assert!(graph_hash(&a).starts_with("sha256:"));
        assert_eq!(graph_hash(&a).len(), 7 + 64);
    }

    #[test]
    fn box_rep_json_round_trip() {
        let rep = c4_rep();
        let text = box_rep_to_json(&rep);
        assert!(text.starts_with(r#"{"b":2,"reps":[[[0,0,1],"#));
        assert_eq!(box_rep_from_json(&text).unwrap(), rep);
    }

    #[test]
    fn upper_certificate_layout_and_verification() {
        let g = c4();
        let cert = Certificate::Upper {
            b: 2,
            reps: rows_of(c4_rep().reps()),
            nodes_explored: 7,
            graph_hash: graph_hash(&g),
        };
        let text = cert.to_json();
        assert!(text.starts_with(r#"{"kind":"upper","b":2,"reps":"#));
        assert!(text.ends_with(&format!(r#""nodes_explored":7,"graph_hash":"{}"}}"#, graph_hash(&g))));
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        let cfg = SolverConfig::default();
        assert!(back.verify(&g, &cfg).unwrap().is_accepted());
        assert!(!back.verify(&Graph::complete(4), &cfg).unwrap().is_accepted());
        assert_eq!(box_rep_from_json(&text).unwrap(), c4_rep());
    }

    #[test]
    fn malformed_reps_are_errors() {
        let bad = r#"{"kind":"upper","b":1,"reps":[[[0,3,1],[1,0,0]]],"nodes_explored":0,"graph_hash":"x"}"#;
        assert!(matches!(Certificate::from_json(bad), Err(Error::Certificate(_))));
        let missing = r#"{"b":1,"reps":[[[0,0,1],[2,0,0]]]}"#;
        assert!(box_rep_from_json(missing).is_err());
        let wrong_b = r#"{"b":2,"reps":[[[0,0,1]]]}"#;
        assert!(box_rep_from_json(wrong_b).is_err());
        assert!(Certificate::from_json("{").is_err());
        assert!(Certificate::from_json(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn witness_certificates() {
        let g = c4();
        let h = graph_hash(&g);
        let cfg = SolverConfig::default();
        let cyc = Certificate::ChordlessCycle {
            cycle: vec![0, 1, 2, 3],
            graph_hash: h.clone(),
        };
        assert!(cyc.verify(&g, &cfg).unwrap().is_accepted());
        let long = Certificate::LongCycle {
            cycle: vec![0, 1, 2, 3],
            graph_hash: h.clone(),
        };
        assert!(!long.verify(&g, &cfg).unwrap().is_accepted());
        let refute = Certificate::Refutation {
            b: 1,
            nodes_explored: 0,
            graph_hash: h.clone(),
        };
        assert!(refute.verify(&g, &cfg).unwrap().is_accepted());
        let refute2 = Certificate::Refutation {
            b: 2,
            nodes_explored: 0,
            graph_hash: h.clone(),
        };
        assert!(!refute2.verify(&g, &cfg).unwrap().is_accepted());
        let out_of_range = Certificate::OddCycle {
            cycle: vec![0, 1, 9],
            graph_hash: h,
        };
        assert!(out_of_range.verify(&g, &cfg).is_err());
        let tri = Graph::complete(3);
        let odd = Certificate::OddCycle {
            cycle: vec![0, 1, 2],
            graph_hash: graph_hash(&tri),
        };
        assert!(odd.verify(&tri, &cfg).unwrap().is_accepted());
    }

    #[test]
    fn labels_sidecar_round_trip() {
        let x = build_x(1, false).unwrap();
        let text = labels_to_json(&x);
        assert_eq!(text, r#"{"k":1,"layers":{"0":[1,1],"1":[1,2],"2":[2,1],"3":[2,2]}}"#);
        let (k, labels) = labels_from_json(&text).unwrap();
        assert_eq!(k, 1);
        let expect: Vec<_> = x.labels.iter().map(|l| (l.layer, l.column)).collect();
        assert_eq!(labels, expect);
    }
}
