//! The JSON spectral report.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{Hypergraph, StructureLimits, StructureReport};
use crate::solvers::{
    brute_force_z_oracle, classify_positivity, closed_form_regular_z, complete_graph_z,
    h_residual, nqz_h_spectral_radius, spectrum_symmetry_check, z_residual, z_spectral_radius,
    Bracket, BoundsReport, EigenPair, NqzConfig, OracleConfig, PositivityClass, ShiftPolicy,
    ZStarConfig, CERTIFICATION_BOUND, DEFAULT_ZERO_TOL, VALUE_CLUSTER_TOL,
};
use crate::tensor::SymmetricTensor;

pub const SCHEMA_VERSION: u32 = 1;

/// Oracle values closer than this to their negation count as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub h_radius: bool,
    pub z_star: bool,
    pub oracle: bool,
    /// Iterate tolerance for NQZ brackets and SS-HOPM value changes.
    pub tol: f64,
    /// Residual an SS-HOPM run must reach to count as converged. Kept below
    /// the certification bound so that rounding the emitted vector cannot
    /// push it over.
    pub residual_tol: f64,
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub shift: ShiftPolicy,
    pub mu: Vec<f64>,
    pub limits: StructureLimits,
    pub oracle_max_n: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            h_radius: false,
            z_star: false,
            oracle: false,
            tol: 1e-10,
            residual_tol: 1e-9,
            starts: 32,
            seed: 0,
            max_iter: 10_000,
            shift: ShiftPolicy::Ceiling,
            mu: NqzConfig::default().mu_schedule,
            limits: StructureLimits::default(),
            oracle_max_n: OracleConfig::default().max_n,
        }
    }
}

impl AnalyzeOptions {
    pub fn everything() -> Self {
        AnalyzeOptions {
            h_radius: true,
            z_star: true,
            oracle: true,
            ..Self::default()
        }
    }

    fn zstar_config(&self) -> ZStarConfig {
        ZStarConfig {
            n_starts: self.starts,
            seed: self.seed,
            tol: self.tol,
            residual_tol: self.residual_tol,
            max_iter: self.max_iter,
            shift: self.shift,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HRadius {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// Final Collatz-Wielandt bracket at the smallest perturbation.
    pub brackets: Option<Bracket>,
    pub extrapolated: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZStar {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub bounds: BoundsReport,
    pub bounds_hold: bool,
    pub positivity: Option<PositivityClass>,
    pub starts: usize,
    pub converged_starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    /// Present for positive values with a nonnegative eigenvector.
    pub positivity: Option<PositivityClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedForms {
    /// `r` for a simple r-regular m-graph.
    pub regular_h: Option<f64>,
    /// `r n^{-(m-2)/2}` for a simple r-regular m-graph.
    pub regular_z: Option<f64>,
    /// `C(n-1, m-1) n^{-(m-2)/2}` for a complete m-graph.
    pub complete_z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub bound: f64,
    pub pairs: usize,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub schema_version: u32,
    pub structure: StructureReport,
    pub h_radius: Option<HRadius>,
    pub z_star: Option<ZStar>,
    pub z_spectrum_sample: Option<Vec<SpectrumEntry>>,
    pub symmetry: Option<bool>,
    pub closed_forms: Option<ClosedForms>,
    pub certification: Certification,
    pub warnings: Vec<String>,
}

impl SpectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Rounds to 12 significant digits, the precision vectors are emitted at.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| round_sig(x)).collect()
}

/// Positivity class of a Z-pair whose vector (up to sign, for even order) is
/// nonnegative and whose value is positive. Values within the zero tolerance
/// are treated as zero.
fn positivity_of(h: &Hypergraph, pair: &EigenPair) -> Option<PositivityClass> {
    if !(pair.value > DEFAULT_ZERO_TOL) {
        return None;
    }
    let nonneg = |v: &[f64]| v.iter().all(|&x| x >= -DEFAULT_ZERO_TOL);
    let mut candidate = pair.clone();
    if !nonneg(&candidate.vector) {
        if h.order() % 2 == 1 {
            return None;
        }
        candidate.vector.iter_mut().for_each(|x| *x = -*x);
        if !nonneg(&candidate.vector) {
            return None;
        }
    }
    classify_positivity(h, &candidate, DEFAULT_ZERO_TOL).ok()
}

struct Ledger {
    pairs: usize,
    max_residual: f64,
}

impl Ledger {
    fn record(&mut self, residual: f64) -> f64 {
        self.pairs += 1;
        self.max_residual = self.max_residual.max(residual);
        residual
    }
}

/// Runs structure analysis and the requested solvers. Solver failures become
/// warnings; the remaining sections are still filled in.
pub fn analyze(h: &Hypergraph, opts: &AnalyzeOptions) -> SpectralReport {
    let (structure, mut warnings) = h.structure(&opts.limits);
    let mut ledger = Ledger {
        pairs: 0,
        max_residual: 0.0,
    };
    let mut report = SpectralReport {
        schema_version: SCHEMA_VERSION,
        structure,
        h_radius: None,
        z_star: None,
        z_spectrum_sample: None,
        symmetry: None,
        closed_forms: None,
        certification: Certification {
            bound: CERTIFICATION_BOUND,
            pairs: 0,
            max_residual: 0.0,
            passed: true,
        },
        warnings: Vec::new(),
    };

    if h.edge_count() == 0 {
        warnings.push("no edges".into());
        report.warnings = warnings;
        return report;
    }

    let a = SymmetricTensor::adjacency(h);
    if opts.h_radius {
        match h_radius_section(&a, opts, &mut ledger) {
            Ok(section) => report.h_radius = Some(section),
            Err(e) => warnings.push(format!("h_radius: {e}")),
        }
    }
    if opts.z_star {
        match z_star_section(h, &a, opts, &mut ledger) {
            Ok(section) => {
                let b = section.bounds;
                if b.lower_degree_sum < b.lower_sharp - 1e-12 {
                    warnings.push(format!(
                        "degree lower bound {:.12} is weaker than A x^m at the uniform vector, {:.12}",
                        b.lower_degree_sum, b.lower_sharp
                    ));
                }
                report.z_star = Some(section);
            }
            Err(e) => warnings.push(format!("z_star: {e}")),
        }
    }
    if opts.oracle {
        if h.vertex_count() > opts.oracle_max_n {
            warnings.push(format!(
                "oracle skipped: n = {} exceeds the limit of {}",
                h.vertex_count(),
                opts.oracle_max_n
            ));
        } else {
            let cfg = OracleConfig {
                seed: opts.seed,
                max_n: opts.oracle_max_n,
                ..OracleConfig::default()
            };
            match brute_force_z_oracle(&a, &cfg) {
                Ok(sample) => {
                    let entries: Vec<SpectrumEntry> = sample
                        .pairs
                        .iter()
                        .map(|p| {
                            let vector = rounded(&p.vector);
                            let residual = ledger.record(
                                z_residual(&a, p.value, &vector).expect("dimension matches"),
                            );
                            SpectrumEntry {
                                value: p.value,
                                vector,
                                residual,
                                positivity: positivity_of(h, p),
                            }
                        })
                        .collect();
                    if h.order() % 2 == 1 || report.structure.partition.is_some() {
                        let values = sample.distinct_values(VALUE_CLUSTER_TOL);
                        report.symmetry =
                            Some(spectrum_symmetry_check(&values, SYMMETRY_TOL).symmetric);
                    }
                    report.z_spectrum_sample = Some(entries);
                }
                Err(e) => warnings.push(format!("oracle: {e}")),
            }
        }
    }

    let n = h.vertex_count();
    let closed = ClosedForms {
        regular_h: report
            .structure
            .regular_degree
            .filter(|_| h.is_simple())
            .map(|r| r as f64),
        regular_z: closed_form_regular_z(h).ok().flatten().map(|p| p.value),
        complete_z: report
            .structure
            .complete
            .then(|| complete_graph_z(n, h.order())),
    };
    if closed.regular_h.is_some() || closed.regular_z.is_some() || closed.complete_z.is_some() {
        report.closed_forms = Some(closed);
    }

    report.certification = Certification {
        bound: CERTIFICATION_BOUND,
        pairs: ledger.pairs,
        max_residual: ledger.max_residual,
        passed: ledger.max_residual <= CERTIFICATION_BOUND,
    };
    if !report.certification.passed {
        warnings.push(format!(
            "certification failed: residual {:e} exceeds {:e}",
            ledger.max_residual, CERTIFICATION_BOUND
        ));
    }
    report.warnings = warnings;
    report
}

fn h_radius_section(a: &SymmetricTensor, opts: &AnalyzeOptions, ledger: &mut Ledger) -> Result<HRadius> {
    let cfg = NqzConfig {
        mu_schedule: opts.mu.clone(),
        tol: opts.tol,
        max_iter: opts.max_iter,
        ..NqzConfig::default()
    };
    let res = nqz_h_spectral_radius(a, &cfg)?;
    let vector = rounded(&res.pair.vector);
    let residual = ledger.record(h_residual(a, res.rho, &vector)?);
    Ok(HRadius {
        value: res.rho,
        vector,
        residual,
        iterations: res.iterations(),
        brackets: res.certificate(),
        extrapolated: res.extrapolated,
        converged: res.converged,
    })
}

fn z_star_section(
    h: &Hypergraph,
    a: &SymmetricTensor,
    opts: &AnalyzeOptions,
    ledger: &mut Ledger,
) -> Result<ZStar> {
    let res = z_spectral_radius(h, &opts.zstar_config())?;
    let vector = rounded(&res.pair.vector);
    let residual = ledger.record(z_residual(a, res.lambda_star, &vector)?);
    Ok(ZStar {
        value: res.lambda_star,
        positivity: positivity_of(h, &res.pair),
        vector,
        residual,
        bounds: res.bounds,
        bounds_hold: res.bounds_hold,
        starts: res.starts,
        converged_starts: res.converged_starts,
    })
}
