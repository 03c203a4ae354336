//! Chart-spec files: a small TOML format describing a chart, a symplectic
//! form, and optionally a base connection and a deformation cochain.
//!
//! ```toml
//! [chart]
//! coordinates = [["x1", "even"], ["x2", "even"], ["th1", "odd"]]
//!
//! [omega]
//! parity = "even"
//!
//! [omega.entries]
//! "(1,2)" = "1 + x1"
//! "(3,3)" = "1"
//!
//! [connection.entries]        # optional; Gamma^k_ij keyed "(i,j,k)"
//! "(1,1,1)" = "0"
//!
//! [cochain.entries]           # optional; B_ijk keyed "(i,j,k)"
//! "(1,1,2)" = "x1"
//! ```
//!
//! Indices are 1-based in coordinate order. Unspecified mirror entries are
//! filled by graded antisymmetry (omega), Christoffel symmetry (connection),
//! and the full signed orbit (cochain); entries given on both sides must
//! agree. Every module invariant is validated on load and violations are
//! reported with the offending indices, so a loaded spec is always a valid
//! model.

use crate::expr::{parse_expression, ExprError};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use symcon_core::display::superfunction_string;
use symcon_core::{
    BilinearForm, Chart, Connection, Error as CoreError, Parity, SCochain, Superfunction, TwoForm,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid TOML: {0}")]
    Toml(String),

    #[error("coordinate `{0}` has invalid parity `{1}` (expected \"even\" or \"odd\")")]
    BadParity(String, String),

    #[error("coordinate name `{0}` is not a valid identifier")]
    BadName(String),

    #[error("invalid entry key `{key}`: {reason}")]
    BadKey { key: String, reason: String },

    #[error("entry {key}: index {index} out of range 1..={dim}")]
    IndexRange {
        key: String,
        index: usize,
        dim: usize,
    },

    #[error("entry {key}: {source}")]
    Expr {
        key: String,
        #[source]
        source: ExprError,
    },

    #[error("entries {key} and {mirror} are inconsistent: the mirror must equal {expected}")]
    Inconsistent {
        key: String,
        mirror: String,
        expected: String,
    },

    #[error("entry {key} must vanish: the graded symmetry maps it to its own negative")]
    ForcedZero { key: String },

    #[error("omega entry ({i},{j}) has the wrong parity for a form of parity {parity}")]
    OmegaEntryParity { i: usize, j: usize, parity: Parity },

    #[error("omega is not closed: residual {residual} at coordinate triple ({i},{j},{k})")]
    NotClosed {
        i: usize,
        j: usize,
        k: usize,
        residual: String,
    },

    #[error("omega is degenerate: no invertible-body pivot at elimination step {step}")]
    Degenerate { step: usize },

    #[error("Christoffel entry ({i},{j},{k}) violates the parity-even connection rule")]
    ChristoffelParity { i: usize, j: usize, k: usize },

    #[error("cochain entry ({i},{j},{k}) has the wrong parity")]
    CochainParity { i: usize, j: usize, k: usize },

    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Deserialize)]
struct SpecFile {
    chart: ChartSection,
    omega: OmegaSection,
    connection: Option<TableSection>,
    cochain: Option<TableSection>,
}

#[derive(Debug, Deserialize)]
struct ChartSection {
    coordinates: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct OmegaSection {
    parity: String,
    #[serde(default)]
    entries: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
struct TableSection {
    #[serde(default)]
    entries: BTreeMap<String, String>,
}

/// A fully validated model: the chart, the symplectic form, and the optional
/// connection and cochain sections.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub chart: Chart,
    pub omega: TwoForm,
    pub connection: Option<Connection>,
    pub cochain: Option<SCochain>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_parity(name: &str, text: &str) -> Result<Parity, SpecError> {
    match text {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(SpecError::BadParity(name.to_string(), other.to_string())),
    }
}

/// Parses a key like `"(1,2,3)"` into 0-based indices, validating arity and
/// range.
fn parse_key(key: &str, arity: usize, dim: usize) -> Result<Vec<usize>, SpecError> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| SpecError::BadKey {
            key: key.to_string(),
            reason: "expected parenthesized indices like (1,2)".to_string(),
        })?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != arity {
        return Err(SpecError::BadKey {
            key: key.to_string(),
            reason: format!("expected {arity} comma-separated indices"),
        });
    }
    let mut out = Vec::with_capacity(arity);
    for part in parts {
        let index: usize = part.trim().parse().map_err(|_| SpecError::BadKey {
            key: key.to_string(),
            reason: format!("`{}` is not an index", part.trim()),
        })?;
        if index == 0 || index > dim {
            return Err(SpecError::IndexRange {
                key: key.to_string(),
                index,
                dim,
            });
        }
        out.push(index - 1);
    }
    Ok(out)
}

fn parse_entry(key: &str, text: &str, chart: &Chart) -> Result<Superfunction, SpecError> {
    parse_expression(text, chart).map_err(|source| SpecError::Expr {
        key: key.to_string(),
        source,
    })
}

fn key2(i: usize, j: usize) -> String {
    format!("({},{})", i + 1, j + 1)
}

fn key3(i: usize, j: usize, k: usize) -> String {
    format!("({},{},{})", i + 1, j + 1, k + 1)
}

/// Fills one slot of a sparse table, checking agreement when the slot is
/// already populated by another entry's completion.
fn fill(
    slot: &mut Option<Superfunction>,
    value: Superfunction,
    chart: &Chart,
    key: String,
    mirror: String,
) -> Result<(), SpecError> {
    match slot {
        None => {
            *slot = Some(value);
            Ok(())
        }
        Some(existing) if *existing == value => Ok(()),
        Some(existing) => {
            if key == mirror {
                return Err(SpecError::ForcedZero { key });
            }
            Err(SpecError::Inconsistent {
                key,
                mirror,
                expected: superfunction_string(chart, existing),
            })
        }
    }
}

fn build_omega(chart: &Chart, section: &OmegaSection) -> Result<TwoForm, SpecError> {
    let parity = parse_parity("omega", &section.parity)?;
    let n = chart.dim();
    let mut slots: Vec<Vec<Option<Superfunction>>> = vec![vec![None; n]; n];
    for (key, text) in &section.entries {
        let idx = parse_key(key, 2, n)?;
        let (i, j) = (idx[0], idx[1]);
        let value = parse_entry(key, text, chart)?;
        let sign = chart.parity(i).koszul(chart.parity(j));
        let mirrored = value.neg_if(-sign);
        fill(&mut slots[i][j], value, chart, key.clone(), key2(j, i))?;
        fill(&mut slots[j][i], mirrored, chart, key2(j, i), key.clone())?;
    }
    let gram: Vec<Vec<Superfunction>> = slots
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|s| s.unwrap_or_else(|| chart.zero()))
                .collect()
        })
        .collect();
    let form = BilinearForm::new(chart.clone(), parity, gram).map_err(|e| match e {
        CoreError::EntryParity { i, j, .. } => SpecError::OmegaEntryParity {
            i: i + 1,
            j: j + 1,
            parity,
        },
        other => SpecError::Core(other),
    })?;
    // Closedness with the residual echoed back.
    let check = form.closedness();
    if let Some(v) = check.violations.first() {
        return Err(SpecError::NotClosed {
            i: v.i + 1,
            j: v.j + 1,
            k: v.k + 1,
            residual: superfunction_string(chart, &v.residual),
        });
    }
    TwoForm::new(form).map_err(|e| match e {
        CoreError::DegenerateForm { step } => SpecError::Degenerate { step },
        other => SpecError::Core(other),
    })
}

fn build_connection(chart: &Chart, section: &TableSection) -> Result<Connection, SpecError> {
    let n = chart.dim();
    let mut slots: Vec<Vec<Vec<Option<Superfunction>>>> = vec![vec![vec![None; n]; n]; n];
    for (key, text) in &section.entries {
        let idx = parse_key(key, 3, n)?;
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let value = parse_entry(key, text, chart)?;
        let sign = chart.parity(i).koszul(chart.parity(j));
        let mirrored = value.neg_if(sign);
        fill(
            &mut slots[i][j][k],
            value,
            chart,
            key.clone(),
            key3(j, i, k),
        )?;
        fill(
            &mut slots[j][i][k],
            mirrored,
            chart,
            key3(j, i, k),
            key.clone(),
        )?;
    }
    let table: Vec<Vec<Vec<Superfunction>>> = slots
        .into_iter()
        .map(|plane| {
            plane
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|s| s.unwrap_or_else(|| chart.zero()))
                        .collect()
                })
                .collect()
        })
        .collect();
    Connection::new(chart.clone(), table).map_err(|e| match e {
        CoreError::ChristoffelParity { i, j, k } => SpecError::ChristoffelParity {
            i: i + 1,
            j: j + 1,
            k: k + 1,
        },
        other => SpecError::Core(other),
    })
}

fn build_cochain(
    chart: &Chart,
    parity: Parity,
    section: &TableSection,
) -> Result<SCochain, SpecError> {
    let n = chart.dim();
    let mut slots: Vec<Vec<Vec<Option<Superfunction>>>> = vec![vec![vec![None; n]; n]; n];
    for (key, text) in &section.entries {
        let idx = parse_key(key, 3, n)?;
        let value = parse_entry(key, text, chart)?;
        // Walk the signed orbit of the entry under both adjacent swaps.
        let mut pending = vec![((idx[0], idx[1], idx[2]), value)];
        while let Some(((i, j, k), v)) = pending.pop() {
            match &slots[i][j][k] {
                Some(existing) if *existing == v => continue,
                Some(_) => {
                    return Err(if (i, j, k) == (idx[0], idx[1], idx[2]) {
                        SpecError::ForcedZero { key: key.clone() }
                    } else {
                        SpecError::Inconsistent {
                            key: key.clone(),
                            mirror: key3(i, j, k),
                            expected: superfunction_string(chart, &v),
                        }
                    });
                }
                None => {
                    slots[i][j][k] = Some(v.clone());
                    let s12 = chart.parity(i).koszul(chart.parity(j));
                    pending.push(((j, i, k), v.neg_if(s12)));
                    let s23 = chart.parity(j).koszul(chart.parity(k));
                    pending.push(((i, k, j), v.neg_if(s23)));
                }
            }
        }
    }
    let table: Vec<Vec<Vec<Superfunction>>> = slots
        .into_iter()
        .map(|plane| {
            plane
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|s| s.unwrap_or_else(|| chart.zero()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let cochain = SCochain::new(chart.clone(), parity, table)?;
    cochain.validate().map_err(|e| match e {
        CoreError::TensorParity { i, j, k } => SpecError::CochainParity {
            i: i + 1,
            j: j + 1,
            k: k + 1,
        },
        other => SpecError::Core(other),
    })?;
    Ok(cochain)
}

/// Loads and validates a chart-spec file.
pub fn load_chart_spec(path: &Path) -> Result<LoadedSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_chart_spec_str(&text)
}

/// Loads a chart spec from already-read file contents.
pub fn load_chart_spec_str(text: &str) -> Result<LoadedSpec, SpecError> {
    let file: SpecFile = toml::from_str(text).map_err(|e| SpecError::Toml(e.to_string()))?;

    let mut coords = Vec::with_capacity(file.chart.coordinates.len());
    for (name, parity) in &file.chart.coordinates {
        if !is_identifier(name) {
            return Err(SpecError::BadName(name.clone()));
        }
        coords.push((name.clone(), parse_parity(name, parity)?));
    }
    let chart = Chart::new(coords)?;

    let omega = build_omega(&chart, &file.omega)?;
    let connection = file
        .connection
        .as_ref()
        .map(|section| build_connection(&chart, section))
        .transpose()?;
    let cochain = file
        .cochain
        .as_ref()
        .map(|section| build_cochain(&chart, omega.parity(), section))
        .transpose()?;

    Ok(LoadedSpec {
        chart,
        omega,
        connection,
        cochain,
    })
}
