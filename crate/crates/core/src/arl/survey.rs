use super::{
    ArlAssessment, Compilability, Connectivity, EvidenceRecord, ExtendedLabels, Parallelizability, Robustness,
    ScalingExpr,
};
use Compilability::*;
use Connectivity::*;
use Parallelizability::*;
use Robustness::*;

struct Row {
    id: &'static str,
    name: &'static str,
    extrapolation: bool,
    cells: [&'static str; 3],
    compilability: Compilability,
    connectivity: Connectivity,
    robustness: Robustness,
    parallelizability: Parallelizability,
    citations: &'static [&'static str],
}

const ROWS: [Row; 11] = [
    Row {
        id: "vqe",
        name: "VQE",
        extrapolation: true,
        cells: ["O(N)", "O(N)", "O(1)"],
        compilability: Native,
        connectivity: Linear,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["Peruzzo et al. 2014"],
    },
    Row {
        id: "qrbm",
        name: "QRBM",
        extrapolation: false,
        cells: ["O(1)", "O(nm)", "O(binom(n,n_p))"],
        compilability: ClassicalControl,
        connectivity: AllToAll,
        robustness: Variational,
        parallelizability: ShotBased,
        citations: &["Xia and Kais 2018"],
    },
    Row {
        id: "varqite",
        name: "VarQiTE",
        extrapolation: false,
        cells: ["O(tq(q+p))", "O(q)", "O(1)"],
        compilability: NonNative1q2q,
        connectivity: AllToAll,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["McArdle et al. 2019"],
    },
    Row {
        id: "qk",
        name: "QK",
        extrapolation: false,
        cells: ["O(binom(|T|,2))", "O(N)", "O(2^N)"],
        compilability: NonNative1q2q,
        connectivity: Linear,
        robustness: NonVariational,
        parallelizability: CircuitBased,
        citations: &["Schuld and Killoran 2019"],
    },
    Row {
        id: "qvc",
        name: "QVC",
        extrapolation: false,
        cells: ["O(|T|)", "O(N)", "O(1)"],
        compilability: NonNative1q2q,
        connectivity: Linear,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["Schuld and Killoran 2019", "Havlicek et al. 2019"],
    },
    Row {
        id: "reuploading",
        name: "Re-Uploading",
        extrapolation: false,
        cells: ["O(|T|)", "O(L)", "O(1)"],
        compilability: NonNative1q2q,
        connectivity: Circular,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["Perez-Salinas et al. 2020"],
    },
    Row {
        id: "qcbm",
        name: "QCBM",
        extrapolation: false,
        cells: ["O(1)", "O(N)", "O(2^N)"],
        compilability: Native,
        connectivity: Linear,
        robustness: Variational,
        parallelizability: ShotBased,
        citations: &["Benedetti et al. 2019", "Gili et al. 2022"],
    },
    Row {
        id: "qnbm",
        name: "QNBM",
        extrapolation: false,
        cells: ["O(1)", "O(E)", "O(2^{n_out})"],
        compilability: ClassicalControl,
        connectivity: AllToAll,
        robustness: Variational,
        parallelizability: ShotBased,
        citations: &["Gili et al. 2023"],
    },
    Row {
        id: "qcnn",
        name: "QCNN",
        extrapolation: false,
        cells: ["O(|T|)", "O(N ceil(log_{1/r}(N)))", "O(1)"],
        compilability: ClassicalControl,
        connectivity: AllToAll,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["Cong et al. 2019"],
    },
    Row {
        id: "qgnn",
        name: "QGNN",
        extrapolation: false,
        cells: ["O(|T|)", "O(p)", "O(1)"],
        compilability: NonNative1q2q,
        connectivity: AllToAll,
        robustness: Variational,
        parallelizability: CircuitBased,
        citations: &["Verdon et al. 2019"],
    },
    Row {
        id: "nisq-tda",
        name: "NISQ-TDA",
        extrapolation: false,
        cells: ["O(n_v)", "O(V)", "O(2^V)"],
        compilability: ClassicalControl,
        connectivity: AllToAll,
        robustness: NonVariational,
        parallelizability: CircuitBased,
        citations: &["Akhalwaya et al. 2022"],
    },
];

/// The eleven surveyed applications in table order.
pub fn builtin_survey() -> Vec<ArlAssessment> {
    ROWS.iter()
        .map(|r| {
            let parse = |s: &str| ScalingExpr::parse(s).expect("built-in expression parses");
            let labels = ExtendedLabels {
                circuits: parse(r.cells[0]),
                depth: parse(r.cells[1]),
                shots: parse(r.cells[2]),
                compilability: r.compilability,
                connectivity: r.connectivity,
                robustness: r.robustness,
                parallelizability: r.parallelizability,
            };
            let evidence = EvidenceRecord {
                has_concept: true,
                poc_benefit_vs_scaled_classical: true,
                extrapolation_shows_advantage: r.extrapolation,
                citations: r.citations.iter().map(|c| c.to_string()).collect(),
                ..Default::default()
            };
            ArlAssessment::new(r.id, r.name, labels, evidence).expect("built-in evidence has a concept")
        })
        .collect()
}

/// Survey row by id or display name, case-insensitively.
pub fn survey_entry(app: &str) -> Option<ArlAssessment> {
    let key = app.trim().to_ascii_lowercase();
    builtin_survey()
        .into_iter()
        .find(|a| a.id == key || a.name.to_ascii_lowercase() == key)
}
