//! Machine-readable verification reports with a stable, versioned schema.
//!
//! Every symbolic value is serialized as an expression string in the same
//! grammar the parser accepts, never rounded; maps are keyed by 1-based index
//! tuples like `"(1,2,3)"` and kept in `BTreeMap`s so serialization is
//! byte-deterministic for fixed inputs.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use symcon_core::display::{rational_function_string, superfunction_string};
use symcon_core::{
    Chart, Connection, NTensor, Parity, SCochain, STensor, TwoForm, VerificationReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub command: String,
    pub chart: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_connection: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_cochain: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_tensor: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<ChecksSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestSection>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OmegaSection {
    pub parity: String,
    /// Nonzero Gram entries on or above the diagonal; the rest follow by
    /// graded antisymmetry.
    pub entries: BTreeMap<String, String>,
    pub antisymmetric: bool,
    pub closed: bool,
    pub nondegenerate: bool,
    /// Determinant of the body matrix: the symbolic locus of validity.
    pub body_determinant: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChecksSection {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub pass: bool,
    /// Exact expression string of the worst residual; `"0"` when passing.
    pub worst_residual: String,
    /// 1-based coordinate indices of the worst residual; empty when passing.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DeformationSection {
    pub seed: u64,
    pub degree: u32,
    pub cochain: BTreeMap<String, String>,
    pub s_tensor: BTreeMap<String, String>,
    pub admissibility: ChecksSection,
    pub verification: ChecksSection,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SelftestSection {
    pub charts: usize,
    pub seed: u64,
    pub degree: u32,
    pub instances: Vec<InstanceReport>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceReport {
    pub index: usize,
    pub p: usize,
    pub q: usize,
    pub omega_parity: String,
    pub seed: u64,
    pub checks: Vec<NamedCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
}

pub fn parity_str(parity: Parity) -> String {
    parity.to_string()
}

pub fn chart_echo(chart: &Chart) -> Vec<(String, String)> {
    chart
        .coordinates()
        .iter()
        .map(|(name, parity)| (name.clone(), parity.to_string()))
        .collect()
}

pub fn omega_section(omega: &TwoForm) -> OmegaSection {
    let chart = omega.chart();
    let mut entries = BTreeMap::new();
    for i in 0..chart.dim() {
        for j in i..chart.dim() {
            let entry = omega.entry(i, j);
            if !entry.is_zero() {
                entries.insert(
                    format!("({},{})", i + 1, j + 1),
                    superfunction_string(chart, entry),
                );
            }
        }
    }
    OmegaSection {
        parity: parity_str(omega.parity()),
        entries,
        antisymmetric: true,
        closed: true,
        nondegenerate: true,
        body_determinant: rational_function_string(&chart.even_names(), omega.body_determinant()),
    }
}

pub fn connection_entries(connection: &Connection) -> BTreeMap<String, String> {
    let chart = connection.chart();
    let mut out = BTreeMap::new();
    for i in 0..chart.dim() {
        for j in 0..chart.dim() {
            for k in 0..chart.dim() {
                let gamma = connection.christoffel(i, j, k);
                if !gamma.is_zero() {
                    out.insert(
                        format!("({},{},{})", i + 1, j + 1, k + 1),
                        superfunction_string(chart, gamma),
                    );
                }
            }
        }
    }
    out
}

pub fn n_tensor_entries(n_tensor: &NTensor) -> BTreeMap<String, String> {
    let chart = n_tensor.chart();
    let mut out = BTreeMap::new();
    for i in 0..chart.dim() {
        for j in 0..chart.dim() {
            for k in 0..chart.dim() {
                let entry = n_tensor.component(i, j, k);
                if !entry.is_zero() {
                    out.insert(
                        format!("({},{},{})", i + 1, j + 1, k + 1),
                        superfunction_string(chart, entry),
                    );
                }
            }
        }
    }
    out
}

pub fn s_tensor_entries(tensor: &STensor) -> BTreeMap<String, String> {
    let chart = tensor.chart();
    let mut out = BTreeMap::new();
    for i in 0..chart.dim() {
        for j in 0..chart.dim() {
            for k in 0..chart.dim() {
                let entry = tensor.component(i, j, k);
                if !entry.is_zero() {
                    out.insert(
                        format!("({},{},{})", i + 1, j + 1, k + 1),
                        superfunction_string(chart, entry),
                    );
                }
            }
        }
    }
    out
}

pub fn cochain_entries(cochain: &SCochain) -> BTreeMap<String, String> {
    let chart = cochain.chart();
    let mut out = BTreeMap::new();
    for i in 0..chart.dim() {
        for j in 0..chart.dim() {
            for k in 0..chart.dim() {
                let entry = cochain.component(i, j, k);
                if !entry.is_zero() {
                    out.insert(
                        format!("({},{},{})", i + 1, j + 1, k + 1),
                        superfunction_string(chart, entry),
                    );
                }
            }
        }
    }
    out
}

pub fn checks_section(chart: &Chart, report: &VerificationReport) -> ChecksSection {
    ChecksSection {
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckReport {
                identity: c.identity.clone(),
                pass: c.pass,
                worst_residual: superfunction_string(chart, &c.worst_residual),
                indices: c.indices.iter().map(|&i| i + 1).collect(),
            })
            .collect(),
    }
}

impl Report {
    pub fn new(command: &str, chart: &Chart) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "symcon".to_string(),
            command: command.to_string(),
            chart: chart_echo(chart),
            omega: None,
            base_connection: None,
            input_cochain: None,
            n_tensor: None,
            connection: None,
            verification: None,
            deformation: None,
            selftest: None,
            passed: false,
        }
    }

    /// Serialized report plus trailing newline; byte-identical for equal
    /// reports.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }

    /// Human-readable rendering of the same content.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "symcon {} report (schema v{})",
            self.command, self.schema_version
        );
        if !self.chart.is_empty() {
            let coords: Vec<String> = self
                .chart
                .iter()
                .map(|(n, p)| format!("{n} ({p})"))
                .collect();
            let _ = writeln!(out, "chart: {}", coords.join(", "));
        }
        if let Some(omega) = &self.omega {
            let _ = writeln!(out, "omega parity: {}", omega.parity);
            for (key, value) in &omega.entries {
                let _ = writeln!(out, "  omega{key} = {value}");
            }
            let _ = writeln!(out, "closed: {}", if omega.closed { "yes" } else { "NO" });
            let _ = writeln!(
                out,
                "nondegenerate: {} (body determinant = {})",
                if omega.nondegenerate { "yes" } else { "NO" },
                omega.body_determinant
            );
        }
        if let Some(base) = &self.base_connection {
            let _ = writeln!(out, "base connection ({} nonzero entries):", base.len());
            for (key, value) in base {
                let _ = writeln!(out, "  Gamma0{key} = {value}");
            }
        }
        if let Some(cochain) = &self.input_cochain {
            let _ = writeln!(out, "input cochain ({} nonzero entries):", cochain.len());
            for (key, value) in cochain {
                let _ = writeln!(out, "  B{key} = {value}");
            }
        }
        if let Some(n_tensor) = &self.n_tensor {
            let _ = writeln!(out, "N-tensor ({} nonzero entries):", n_tensor.len());
            for (key, value) in n_tensor {
                let _ = writeln!(out, "  N{key} = {value}");
            }
        }
        if let Some(connection) = &self.connection {
            let _ = writeln!(out, "connection ({} nonzero entries):", connection.len());
            for (key, value) in connection {
                let _ = writeln!(out, "  Gamma{key} = {value}");
            }
        }
        if let Some(verification) = &self.verification {
            let _ = writeln!(out, "verification:");
            write_checks(&mut out, verification, "  ");
        }
        if let Some(deformation) = &self.deformation {
            let _ = writeln!(
                out,
                "deformation (seed {}, degree {}):",
                deformation.seed, deformation.degree
            );
            for (key, value) in &deformation.s_tensor {
                let _ = writeln!(out, "  S{key} = {value}");
            }
            let _ = writeln!(out, "  admissibility:");
            write_checks(&mut out, &deformation.admissibility, "    ");
            let _ = writeln!(out, "  re-verification:");
            write_checks(&mut out, &deformation.verification, "    ");
        }
        if let Some(selftest) = &self.selftest {
            let _ = writeln!(
                out,
                "selftest: {} instances, seed {}, degree {}",
                selftest.charts, selftest.seed, selftest.degree
            );
            for inst in &selftest.instances {
                let summary: Vec<String> = inst
                    .checks
                    .iter()
                    .map(|c| format!("{}={}", c.name, if c.pass { "ok" } else { "FAIL" }))
                    .collect();
                let _ = writeln!(
                    out,
                    "  [{:>3}] R^({}|{}) {} seed={} {} -> {}",
                    inst.index,
                    inst.p,
                    inst.q,
                    inst.omega_parity,
                    inst.seed,
                    summary.join(" "),
                    if inst.passed { "PASS" } else { "FAIL" }
                );
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn write_checks(out: &mut String, section: &ChecksSection, indent: &str) {
    for check in &section.checks {
        if check.pass {
            let _ = writeln!(out, "{indent}{}: PASS", check.identity);
        } else {
            let indices: Vec<String> = check.indices.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(
                out,
                "{indent}{}: FAIL at ({}) with residual {}",
                check.identity,
                indices.join(","),
                check.worst_residual
            );
        }
    }
}
