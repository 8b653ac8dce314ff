//! Invariant battery run by `hyperspectra verify`.

use std::fmt::Write as _;

use serde::Serialize;

use super::analyze::{analyze, AnalyzeOptions, SpectralReport, SYMMETRY_TOL};
use super::exit;
use crate::hypergraph::Hypergraph;
use crate::solvers::{
    h_residual, spectrum_symmetry_check, z_bounds, z_residual, CERTIFICATION_BOUND,
    VALUE_CLUSTER_TOL,
};
use crate::tensor::SymmetricTensor;

/// Agreement required between an estimate and a closed form or second solver.
pub const VALUE_TOL: f64 = 1e-6;
/// Slack in the bound sandwich.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    Invariant,
    /// A failed residual bound on an emitted eigenpair.
    Certification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, kind: CheckKind, passed: bool, detail: String) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Check {
            name,
            kind,
            status,
            detail,
        }
    }

    fn skip(name: &'static str, detail: &str) -> Self {
        Check {
            name,
            kind: CheckKind::Invariant,
            status: Status::Skip,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// 2 if any certification check failed, 1 for any other failure, else 0.
    pub fn exit_code(&self) -> i32 {
        let failed = |kind| {
            self.checks
                .iter()
                .any(|c| c.status == Status::Fail && c.kind == kind)
        };
        if failed(CheckKind::Certification) {
            exit::CERTIFICATION
        } else if failed(CheckKind::Invariant) {
            exit::VERIFICATION
        } else {
            exit::OK
        }
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = writeln!(out, "{status}  {:width$}  {}", c.name, c.detail);
        }
        out
    }
}

/// Analyzes `h` with every solver enabled and checks the result.
pub fn verify(h: &Hypergraph, opts: &AnalyzeOptions) -> Verification {
    let opts = AnalyzeOptions {
        h_radius: true,
        z_star: true,
        oracle: true,
        ..opts.clone()
    };
    let report = analyze(h, &opts);
    let mut checks = vec![connectivity_check(h)];
    checks.extend(report_checks(h, &report));
    Verification { checks }
}

/// Checks a report produced elsewhere against `h`, and against a fresh
/// analysis with the same options. Every failure counts as a verification
/// failure, including residuals: the report, not this run, emitted the pair.
pub fn verify_report(h: &Hypergraph, report: &SpectralReport, opts: &AnalyzeOptions) -> Verification {
    let mut checks = vec![connectivity_check(h)];
    checks.extend(report_checks(h, report));
    let fresh = analyze(h, opts);
    checks.push(Check::new(
        "structure matches",
        CheckKind::Invariant,
        fresh.structure == report.structure,
        "structure section recomputed from the hypergraph".into(),
    ));
    match (&report.z_star, &fresh.z_star) {
        (Some(claimed), Some(ours)) => checks.push(Check::new(
            "z-star matches",
            CheckKind::Invariant,
            (claimed.value - ours.value).abs() <= VALUE_TOL,
            format!("reported {:.12}, recomputed {:.12}", claimed.value, ours.value),
        )),
        (Some(_), None) => checks.push(Check::new(
            "z-star matches",
            CheckKind::Invariant,
            false,
            "report has z_star; rerun with --z-star to compare".into(),
        )),
        _ => {}
    }
    for c in &mut checks {
        c.kind = CheckKind::Invariant;
    }
    Verification { checks }
}

fn connectivity_check(h: &Hypergraph) -> Check {
    let a = SymmetricTensor::adjacency(h);
    match a.is_weakly_irreducible() {
        Ok(irreducible) => Check::new(
            "connected iff weakly irreducible",
            CheckKind::Invariant,
            h.is_connected() == irreducible,
            format!("connected = {}, weakly irreducible = {irreducible}", h.is_connected()),
        ),
        Err(e) => Check::new(
            "connected iff weakly irreducible",
            CheckKind::Invariant,
            false,
            e.to_string(),
        ),
    }
}

struct PairRef<'a> {
    label: String,
    value: f64,
    vector: &'a [f64],
    h_kind: bool,
}

fn report_checks(h: &Hypergraph, report: &SpectralReport) -> Vec<Check> {
    let a = SymmetricTensor::adjacency(h);
    let m = h.order();
    let mut checks = Vec::new();

    // residuals recomputed from the emitted vectors, never read from the report
    let mut pairs = Vec::new();
    if let Some(hr) = &report.h_radius {
        pairs.push(PairRef {
            label: "h_radius".into(),
            value: hr.value,
            vector: &hr.vector,
            h_kind: true,
        });
    }
    if let Some(z) = &report.z_star {
        pairs.push(PairRef {
            label: "z_star".into(),
            value: z.value,
            vector: &z.vector,
            h_kind: false,
        });
    }
    for (i, e) in report.z_spectrum_sample.iter().flatten().enumerate() {
        pairs.push(PairRef {
            label: format!("z_spectrum_sample[{i}]"),
            value: e.value,
            vector: &e.vector,
            h_kind: false,
        });
    }
    if pairs.is_empty() {
        checks.push(Check::skip("residual certification", "no eigenpairs"));
    } else {
        let mut worst = (0.0f64, String::new());
        for p in &pairs {
            let defect = if p.vector.len() != h.vertex_count() {
                f64::INFINITY
            } else if p.h_kind {
                let norm: f64 = p.vector.iter().map(|v| v.abs().powi(m as i32)).sum();
                let r = h_residual(&a, p.value, p.vector).unwrap_or(f64::INFINITY);
                r.max((norm - 1.0).abs())
            } else {
                let norm: f64 = p.vector.iter().map(|v| v * v).sum::<f64>().sqrt();
                let r = z_residual(&a, p.value, p.vector).unwrap_or(f64::INFINITY);
                r.max((norm - 1.0).abs())
            };
            if !(defect <= worst.0) {
                worst = (defect, p.label.clone());
            }
        }
        checks.push(Check::new(
            "residual certification",
            CheckKind::Certification,
            worst.0 <= CERTIFICATION_BOUND,
            format!("{} pairs, worst {:.3e} ({})", pairs.len(), worst.0, worst.1),
        ));
    }

    match &report.z_star {
        Some(z) => {
            let b = z_bounds(h);
            checks.push(Check::new(
                "bound sandwich",
                CheckKind::Invariant,
                b.sandwiches(z.value, BOUND_SLACK),
                format!(
                    "{:.9} <= {:.9} <= {:.9} <= min({:.9}, {})",
                    b.lower_degree_sum, b.lower_sharp, z.value, b.upper_degree, b.upper_edges
                ),
            ));
        }
        None => checks.push(Check::skip("bound sandwich", "no z_star")),
    }

    let closed = report.closed_forms.as_ref();
    match (closed.and_then(|c| c.regular_h), &report.h_radius) {
        (Some(r), Some(hr)) => checks.push(Check::new(
            "h radius equals degree",
            CheckKind::Invariant,
            (hr.value - r).abs() <= VALUE_TOL,
            format!("{:.12} vs {r}", hr.value),
        )),
        _ => checks.push(Check::skip("h radius equals degree", "not regular")),
    }
    for (name, target) in [
        ("z-star equals regular closed form", closed.and_then(|c| c.regular_z)),
        ("z-star equals complete closed form", closed.and_then(|c| c.complete_z)),
    ] {
        match (target, &report.z_star) {
            (Some(t), Some(z)) => checks.push(Check::new(
                name,
                CheckKind::Invariant,
                (z.value - t).abs() <= VALUE_TOL,
                format!("{:.12} vs {t:.12}", z.value),
            )),
            _ => checks.push(Check::skip(name, "not applicable")),
        }
    }

    let Some(sample) = &report.z_spectrum_sample else {
        checks.push(Check::skip("oracle checks", "no spectrum sample"));
        return checks;
    };
    let top = sample.iter().map(|e| e.value).fold(f64::NEG_INFINITY, f64::max);
    match &report.z_star {
        Some(z) => checks.push(Check::new(
            "z-star equals oracle maximum",
            CheckKind::Invariant,
            (z.value - top).abs() <= VALUE_TOL,
            format!("{:.12} vs {top:.12}", z.value),
        )),
        None => checks.push(Check::skip("z-star equals oracle maximum", "no z_star")),
    }
    if m % 2 == 1 || report.structure.partition.is_some() {
        let mut values: Vec<f64> = Vec::new();
        let mut sorted: Vec<f64> = sample.iter().map(|e| e.value).collect();
        sorted.sort_by(|x, y| y.total_cmp(x));
        for v in sorted {
            if values.last().is_none_or(|&u| (u - v).abs() > VALUE_CLUSTER_TOL) {
                values.push(v);
            }
        }
        let sym = spectrum_symmetry_check(&values, SYMMETRY_TOL);
        checks.push(Check::new(
            "spectrum symmetric",
            CheckKind::Invariant,
            sym.symmetric && report.symmetry != Some(false),
            format!("{} distinct values, sum {:.3e}", values.len(), sym.sum),
        ));
    } else {
        checks.push(Check::skip("spectrum symmetric", "even order without m-partition"));
    }

    let classes: Vec<_> = report
        .z_spectrum_sample
        .iter()
        .flatten()
        .filter_map(|e| e.positivity.as_ref())
        .chain(report.z_star.as_ref().and_then(|z| z.positivity.as_ref()))
        .collect();
    let consistent = classes
        .iter()
        .all(|c| c.zero_set.is_empty() || h.is_witness(&c.zero_set).unwrap_or(false));
    checks.push(Check::new(
        "zero sets are witnesses",
        CheckKind::Invariant,
        consistent,
        format!("{} nonnegative pairs", classes.len()),
    ));
    if report.structure.nicely_connected == Some(true) {
        let positive = classes.iter().all(|c| c.strictly_positive);
        checks.push(Check::new(
            "nicely connected implies positive",
            CheckKind::Invariant,
            positive,
            format!("{} nonnegative pairs", classes.len()),
        ));
    }
    checks
}
