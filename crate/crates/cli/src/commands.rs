//! Command pipelines behind the CLI surface; each returns a full [`Report`]
//! so callers (and tests) can inspect results without going through stdout.

use crate::chartspec::{load_chart_spec, LoadedSpec, SpecError};
use crate::report::{
    checks_section, cochain_entries, connection_entries, n_tensor_entries, omega_section,
    parity_str, s_tensor_entries, ChecksSection, DeformationSection, InstanceReport, NamedCheck,
    Report, SelftestSection,
};
use std::path::Path;
use symcon_core::corpus::{corpus_instance, instance_grid};
use symcon_core::{
    apply_correction, check_admissible, deform, extract_n, n_antisymmetry_residual,
    n_cyclic_residual, random_cochain, s_from_cochain, verify_symplectic, Connection,
    Error as CoreError, STensor, TwoForm,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),

    #[error(transparent)]
    Core(#[from] CoreError),
}

fn base_connection(spec: &LoadedSpec) -> Connection {
    spec.connection
        .clone()
        .unwrap_or_else(|| Connection::flat(&spec.chart))
}

/// `validate`: form checks only. Antisymmetry, parity, closedness, and
/// nondegeneracy are all enforced during load, so reaching this point means
/// the spec is a valid model; the report echoes what was checked.
pub fn run_validate(path: &Path) -> Result<Report, CliError> {
    let spec = load_chart_spec(path)?;
    let mut report = Report::new("validate", &spec.chart);
    report.omega = Some(omega_section(&spec.omega));
    if let Some(connection) = &spec.connection {
        report.base_connection = Some(connection_entries(connection));
    }
    if let Some(cochain) = &spec.cochain {
        report.input_cochain = Some(cochain_entries(cochain));
    }
    report.passed = true;
    Ok(report)
}

/// `fedosov`: extract the N-tensor from the base connection, apply the
/// 1/3-correction, and verify both halves of the symplectic property.
pub fn run_fedosov(path: &Path) -> Result<Report, CliError> {
    let spec = load_chart_spec(path)?;
    let base = base_connection(&spec);
    let mut report = Report::new("fedosov", &spec.chart);
    report.omega = Some(omega_section(&spec.omega));
    if spec.connection.is_some() {
        report.base_connection = Some(connection_entries(&base));
    }
    let n_tensor = extract_n(&base, &spec.omega)?;
    let corrected = apply_correction(&base, &n_tensor)?;
    let verification = verify_symplectic(&corrected, &spec.omega)?;
    report.n_tensor = Some(n_tensor_entries(&n_tensor));
    report.connection = Some(connection_entries(&corrected));
    let checks = checks_section(&spec.chart, &verification);
    report.passed = checks.passed;
    report.verification = Some(checks);
    Ok(report)
}

/// `deform`: build the corrected connection, draw a random admissible
/// deformation for the given seed, and re-verify the deformed connection.
pub fn run_deform(path: &Path, seed: u64, degree: u32) -> Result<Report, CliError> {
    let spec = load_chart_spec(path)?;
    let base = base_connection(&spec);
    let mut report = Report::new("deform", &spec.chart);
    report.omega = Some(omega_section(&spec.omega));
    let corrected = fedosov_pipeline(&base, &spec, &mut report)?;

    let cochain = random_cochain(&spec.chart, spec.omega.parity(), degree, seed);
    let tensor = s_from_cochain(&spec.omega, &cochain)?;
    let admissibility = checks_section(&spec.chart, &check_admissible(&spec.omega, &tensor)?);
    let deformed = deform(&corrected, &tensor)?;
    let verification = checks_section(&spec.chart, &verify_symplectic(&deformed, &spec.omega)?);
    report.connection = Some(connection_entries(&deformed));
    report.passed = admissibility.passed && verification.passed;
    report.deformation = Some(DeformationSection {
        seed,
        degree,
        cochain: cochain_entries(&cochain),
        s_tensor: s_tensor_entries(&tensor),
        admissibility,
        verification,
    });
    Ok(report)
}

fn fedosov_pipeline(
    base: &Connection,
    spec: &LoadedSpec,
    report: &mut Report,
) -> Result<Connection, CliError> {
    let n_tensor = extract_n(base, &spec.omega)?;
    let corrected = apply_correction(base, &n_tensor)?;
    report.n_tensor = Some(n_tensor_entries(&n_tensor));
    Ok(corrected)
}

fn instance_checks(
    chart: &symcon_core::Chart,
    omega: &TwoForm,
    deform_seed: u64,
    degree: u32,
) -> Result<Vec<NamedCheck>, CliError> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(NamedCheck {
            name: name.to_string(),
            pass,
        })
    };

    push("closedness", omega.form().is_closed());
    push("nondegeneracy", !omega.body_determinant().is_zero());

    let flat = Connection::flat(chart);
    let n_tensor = extract_n(&flat, omega)?;
    let n = chart.dim();
    let mut antisym_ok = true;
    let mut cyclic_ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                antisym_ok &= n_antisymmetry_residual(omega, &n_tensor, i, j, k)?.is_zero();
                cyclic_ok &= n_cyclic_residual(omega, &n_tensor, i, j, k)?.is_zero();
            }
        }
    }
    push("n-antisymmetry", antisym_ok);
    push("n-cyclic", cyclic_ok);

    let corrected = apply_correction(&flat, &n_tensor)?;
    push("existence", verify_symplectic(&corrected, omega)?.passed());

    let cochain = random_cochain(chart, omega.parity(), degree, deform_seed);
    let tensor = s_from_cochain(omega, &cochain)?;
    let deformed = deform(&corrected, &tensor)?;
    push(
        "deform-admissible",
        check_admissible(omega, &tensor)?.passed(),
    );
    push(
        "deform-symplectic",
        verify_symplectic(&deformed, omega)?.passed(),
    );

    let difference = STensor::from_connection_difference(&deformed, &corrected)?;
    push(
        "difference-admissible",
        check_admissible(omega, &difference)?.passed(),
    );

    let mut affine_ok = true;
    for t in [
        num_rational::BigRational::new(1.into(), 2.into()),
        num_rational::BigRational::from_integer((-1).into()),
        num_rational::BigRational::from_integer(2.into()),
    ] {
        let combo = Connection::affine_combination(&corrected, &deformed, &t)?;
        affine_ok &= verify_symplectic(&combo, omega)?.passed();
    }
    push("affine-combinations", affine_ok);

    Ok(checks)
}

/// `selftest`: run the randomized corpus property suite over `charts`
/// instances drawn deterministically from the `(p, q, parity)` grid.
pub fn run_selftest(charts: usize, seed: u64, degree: u32) -> Result<Report, CliError> {
    let grid = instance_grid();
    let mut instances = Vec::with_capacity(charts);
    let mut all_passed = true;
    for index in 0..charts {
        let (p, q, parity) = grid[index % grid.len()];
        let instance_seed = seed.wrapping_add(index as u64);
        let instance = corpus_instance(p, q, parity, degree, instance_seed)?;
        let checks = instance_checks(
            &instance.chart,
            &instance.omega,
            instance_seed.wrapping_add(0x5eed),
            degree,
        )?;
        let passed = checks.iter().all(|c| c.pass);
        all_passed &= passed;
        instances.push(InstanceReport {
            index,
            p,
            q,
            omega_parity: parity_str(parity),
            seed: instance_seed,
            checks,
            passed,
        });
    }

    // selftest has no single input chart; the echo stays empty
    let mut report = Report::new("selftest", &symcon_core::Chart::standard(0, 0));
    report.passed = all_passed;
    report.selftest = Some(SelftestSection {
        charts,
        seed,
        degree,
        instances,
        all_passed,
    });
    Ok(report)
}

/// Exit code for a finished run: 0 on full success, 1 when any verification
/// failed. Load and usage errors exit 2 before a report exists.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        1
    }
}

/// Convenience used by tests: checks the exit-code contract, i.e. the exit
/// code is zero exactly when every residual in the report is zero.
pub fn all_residuals_zero(report: &Report) -> bool {
    fn section_zero(section: &ChecksSection) -> bool {
        section
            .checks
            .iter()
            .all(|c| c.pass && c.worst_residual == "0")
    }
    let verification = report.verification.as_ref().is_none_or(section_zero);
    let deformation = report
        .deformation
        .as_ref()
        .is_none_or(|d| section_zero(&d.admissibility) && section_zero(&d.verification));
    let selftest = report
        .selftest
        .as_ref()
        .is_none_or(|s| s.instances.iter().all(|i| i.checks.iter().all(|c| c.pass)));
    verification && deformation && selftest
}
