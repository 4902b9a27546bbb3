//! Machine-readable output: certificate JSON and the verification run
//! report with its stable hash.
//!
//! The report separates stable content (config, records, summary) from
//! timing; the hash covers only the stable part, so identical runs produce
//! identical hashes regardless of wall-clock noise.

use serde::Serialize;
use sha2::{Digest, Sha256};

use chromabound_core::colorers::{Certificate, ExactReason, Piece, Step};
use chromabound_core::patterns::ClassId;

pub const SCHEMA_VERSION: &str = "1.0";

/// Harness configuration echoed into reports.
#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub oracle_node_budget: u64,
    pub time_hint_ms: Option<u64>,
    /// Oracle chi comparison is attempted only up to this order.
    pub chi_tier: usize,
    /// Perfection certification tier.
    pub perfect_tier: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            oracle_node_budget: 50_000_000,
            time_hint_ms: None,
            chi_tier: 24,
            perfect_tier: 40,
            seed: 0,
            threads: 1,
        }
    }
}

// -------------------------------------------------------------------
// Certificate serialization
// -------------------------------------------------------------------

#[derive(Serialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
enum PieceDto {
    RLowWithCyclePair,
    RHighPair { anchor: Option<usize> },
    CliqueResidue { anchor: Option<usize> },
    NeighborhoodMatching { center: usize },
    NonNeighborhoodExact { center: usize },
}

impl From<&Piece> for PieceDto {
    fn from(p: &Piece) -> Self {
        match p {
            Piece::RLowWithCyclePair => PieceDto::RLowWithCyclePair,
            Piece::RHighPair { anchor } => PieceDto::RHighPair { anchor: *anchor },
            Piece::CliqueResidue { anchor } => PieceDto::CliqueResidue { anchor: *anchor },
            Piece::NeighborhoodMatching { center } => {
                PieceDto::NeighborhoodMatching { center: *center }
            }
            Piece::NonNeighborhoodExact { center } => {
                PieceDto::NonNeighborhoodExact { center: *center }
            }
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
enum StepDto {
    PeelMinDegree { vertex: usize, degree_bound: usize },
    PerfectBase { chi: usize },
    ExactBase { reason: String, chi: usize },
    GoodPartitionUsed { q1: Vec<usize>, q2: Vec<usize>, q3: Vec<usize> },
    C7Isomorphic { cycle: Vec<usize> },
    ExplicitStableSets { sets: Vec<Vec<usize>> },
    MaxCliqueAnchor { c: Vec<usize> },
    PieceColoring { piece: PieceDto, palette_offset: usize },
    LFound { l: usize },
    CoBipartiteBase,
}

impl From<&Step> for StepDto {
    fn from(s: &Step) -> Self {
        match s {
            Step::PeelMinDegree { vertex, degree_bound } => StepDto::PeelMinDegree {
                vertex: *vertex,
                degree_bound: *degree_bound,
            },
            Step::PerfectBase { chi } => StepDto::PerfectBase { chi: *chi },
            Step::ExactBase { reason, chi } => StepDto::ExactBase {
                reason: reason.to_string(),
                chi: *chi,
            },
            Step::GoodPartitionUsed { q1, q2, q3 } => StepDto::GoodPartitionUsed {
                q1: q1.clone(),
                q2: q2.clone(),
                q3: q3.clone(),
            },
            Step::C7Isomorphic { cycle } => StepDto::C7Isomorphic { cycle: cycle.to_vec() },
            Step::ExplicitStableSets { sets } => {
                StepDto::ExplicitStableSets { sets: sets.clone() }
            }
            Step::MaxCliqueAnchor { c } => StepDto::MaxCliqueAnchor { c: c.to_vec() },
            Step::PieceColoring { piece, palette_offset } => StepDto::PieceColoring {
                piece: piece.into(),
                palette_offset: *palette_offset,
            },
            Step::LFound { l } => StepDto::LFound { l: *l },
            Step::CoBipartiteBase => StepDto::CoBipartiteBase,
        }
    }
}

#[derive(Serialize)]
struct CertificateDto {
    schema_version: &'static str,
    steps: Vec<StepDto>,
}

/// Certificate as a stable JSON document.
pub fn certificate_json(cert: &Certificate) -> String {
    let dto = CertificateDto {
        schema_version: SCHEMA_VERSION,
        steps: cert.steps.iter().map(StepDto::from).collect(),
    };
    serde_json::to_string_pretty(&dto).expect("certificate serializes")
}

/// Sanity check that an exact-base reason round-trips through its display
/// form (the JSON carries the display string).
pub fn exact_reason_label(r: &ExactReason) -> String {
    r.to_string()
}

// -------------------------------------------------------------------
// Run report
// -------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub id: String,
    pub class: String,
    pub n: usize,
    pub omega: Option<usize>,
    pub chi_algorithm: Option<usize>,
    pub chi_oracle: Option<usize>,
    pub bound_target: Option<usize>,
    pub pass: bool,
    pub certificate_path: Option<String>,
    pub flags: Vec<String>,
    pub error: Option<String>,
    /// graph6 of the graph when a record fails or raises flags.
    pub witness_g6: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaletteCell {
    pub class: String,
    pub omega: usize,
    pub max_palette: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Observed palette maxima per (class, omega) cell, sorted.
    pub max_palette: Vec<PaletteCell>,
}

#[derive(Serialize)]
struct StablePart<'a> {
    schema_version: &'static str,
    config: &'a Config,
    records: &'a [RunRecord],
    summary: &'a Summary,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub generated_at_unix_ms: u128,
    pub per_record_ms: Vec<u64>,
    pub total_ms: u64,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub config: Config,
    pub records: Vec<RunRecord>,
    pub summary: Summary,
    /// SHA-256 over the canonical JSON of (schema_version, config, records,
    /// summary); timing is excluded.
    pub stable_hash: String,
    pub timing: Timing,
}

impl RunReport {
    pub fn assemble(config: Config, records: Vec<RunRecord>, timing: Timing) -> RunReport {
        let mut cells: std::collections::BTreeMap<(String, usize), usize> =
            std::collections::BTreeMap::new();
        for r in &records {
            if let (Some(omega), Some(chi)) = (r.omega, r.chi_algorithm) {
                let cell = cells.entry((r.class.clone(), omega)).or_insert(0);
                *cell = (*cell).max(chi);
            }
        }
        let summary = Summary {
            total: records.len(),
            passed: records.iter().filter(|r| r.pass).count(),
            failed: records.iter().filter(|r| !r.pass).count(),
            max_palette: cells
                .into_iter()
                .map(|((class, omega), max_palette)| PaletteCell { class, omega, max_palette })
                .collect(),
        };
        let stable = StablePart {
            schema_version: SCHEMA_VERSION,
            config: &config,
            records: &records,
            summary: &summary,
        };
        let canonical = serde_json::to_string(&stable).expect("stable part serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let stable_hash = format!("{:x}", hasher.finalize());
        RunReport {
            schema_version: SCHEMA_VERSION,
            config,
            records,
            summary,
            stable_hash,
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn class_label(class: ClassId) -> String {
    class.cli_name().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use chromabound_core::colorers::{ExactReason, Step};

    fn record(id: &str, pass: bool) -> RunRecord {
        RunRecord {
            id: id.into(),
            class: "p12p2".into(),
            n: 5,
            omega: Some(2),
            chi_algorithm: Some(3),
            chi_oracle: Some(3),
            bound_target: Some(3),
            pass,
            certificate_path: None,
            flags: vec![],
            error: None,
            witness_g6: None,
        }
    }

    #[test]
    fn stable_hash_ignores_timing() {
        let recs = vec![record("a", true), record("b", true)];
        let t1 = Timing { generated_at_unix_ms: 1, per_record_ms: vec![5, 6], total_ms: 11 };
        let t2 = Timing { generated_at_unix_ms: 999, per_record_ms: vec![7, 8], total_ms: 15 };
        let r1 = RunReport::assemble(Config::default(), recs.clone(), t1);
        let r2 = RunReport::assemble(Config::default(), recs, t2);
        assert_eq!(r1.stable_hash, r2.stable_hash);
        assert_ne!(r1.to_json(), r2.to_json());
    }

    #[test]
    fn summary_counts_and_cells() {
        let recs = vec![record("a", true), record("b", false)];
        let t = Timing { generated_at_unix_ms: 0, per_record_ms: vec![1, 2], total_ms: 3 };
        let report = RunReport::assemble(Config::default(), recs, t);
        assert_eq!(report.summary.total, 2);
        assert_eq!(report.summary.passed, 1);
        assert_eq!(report.summary.failed, 1);
        assert_eq!(report.summary.max_palette.len(), 1);
        assert_eq!(report.summary.max_palette[0].max_palette, 3);
        assert!(!report.all_pass());
    }

    #[test]
    fn certificate_json_schema() {
        let cert = Certificate {
            steps: vec![
                Step::PeelMinDegree { vertex: 4, degree_bound: 5 },
                Step::ExactBase { reason: ExactReason::StructureTheoremFallback, chi: 6 },
            ],
        };
        let json = certificate_json(&cert);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema_version"], "1.0");
        assert_eq!(value["steps"][0]["step"], "peel_min_degree");
        assert_eq!(value["steps"][0]["vertex"], 4);
        assert_eq!(value["steps"][1]["reason"], "structure-theorem fallback");
    }
}
