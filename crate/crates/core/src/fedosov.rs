//! Construction and verification of symplectic connections: extraction of the
//! N-tensor from a symmetric base connection, the 1/3-correction that makes it
//! symplectic, and the admissible deformations that sweep out the affine space
//! of all solutions.

use crate::bilinear::TwoForm;
use crate::chart::Chart;
use crate::connection::{eval_tensor21, Connection};
use crate::corpus::random_superfunction;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::superfunction::Superfunction;
use crate::vector_field::VectorField;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Table3 = Vec<Vec<Vec<Superfunction>>>;

fn zero_table(chart: &Chart) -> Table3 {
    let n = chart.dim();
    vec![vec![vec![chart.zero(); n]; n]; n]
}

fn check_tensor_parity(chart: &Chart, table: &Table3, extra: Parity) -> Result<()> {
    let n = chart.dim();
    if table.len() != n
        || table
            .iter()
            .any(|p| p.len() != n || p.iter().any(|r| r.len() != n))
    {
        return Err(Error::ComponentCount {
            expected: n,
            found: table.len(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                chart.check_scalar(&table[i][j][k])?;
                let expected = extra + chart.parity(i) + chart.parity(j) + chart.parity(k);
                if !table[i][j][k].parity_class().matches(expected) {
                    return Err(Error::TensorParity { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// The `(2,1)` tensor measuring the failure of a symmetric connection to be
/// compatible with the form, defined by
/// `nabla0_X omega(Y,Z) = (-1)^{|omega||X|} omega(N(X,Y), Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NTensor {
    chart: Chart,
    components: Table3,
}

impl NTensor {
    pub fn new(chart: Chart, components: Table3) -> Result<NTensor> {
        check_tensor_parity(&chart, &components, Parity::Even)?;
        Ok(NTensor { chart, components })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> &Superfunction {
        &self.components[i][j][k]
    }

    pub fn table(&self) -> &Table3 {
        &self.components
    }

    /// `N(d_i, d_j)` as a vector field.
    pub fn field(&self, i: usize, j: usize) -> VectorField {
        VectorField::new(self.chart.clone(), self.components[i][j].clone())
            .expect("component table is chart-sized")
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        eval_tensor21(&self.chart, &self.components, x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .flatten()
            .flatten()
            .all(Superfunction::is_zero)
    }
}

/// A `(2,1)` deformation tensor. Supersymmetry is an admissibility condition
/// reported by [`check_admissible`], not a construction invariant, so that
/// failing deformations can be represented and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STensor {
    chart: Chart,
    components: Table3,
}

impl STensor {
    pub fn new(chart: Chart, components: Table3) -> Result<STensor> {
        check_tensor_parity(&chart, &components, Parity::Even)?;
        Ok(STensor { chart, components })
    }

    pub fn zero(chart: &Chart) -> STensor {
        STensor {
            chart: chart.clone(),
            components: zero_table(chart),
        }
    }

    /// The difference of two connections is a `(2,1)` tensor.
    pub fn from_connection_difference(a: &Connection, b: &Connection) -> Result<STensor> {
        if a.chart() != b.chart() {
            return Err(Error::ChartMismatch);
        }
        let chart = a.chart().clone();
        let n = chart.dim();
        let mut components = zero_table(&chart);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    components[i][j][k] = a.christoffel(i, j, k) - b.christoffel(i, j, k);
                }
            }
        }
        STensor::new(chart, components)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> &Superfunction {
        &self.components[i][j][k]
    }

    pub fn field(&self, i: usize, j: usize) -> VectorField {
        VectorField::new(self.chart.clone(), self.components[i][j].clone())
            .expect("component table is chart-sized")
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        eval_tensor21(&self.chart, &self.components, x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .flatten()
            .flatten()
            .all(Superfunction::is_zero)
    }
}

/// The scalar table `B_ijk = omega(S(d_i, d_j), d_k)` of an admissible
/// deformation: totally graded symmetric of parity `|B| = |omega|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCochain {
    chart: Chart,
    parity: Parity,
    components: Table3,
}

impl SCochain {
    pub fn new(chart: Chart, parity: Parity, components: Table3) -> Result<SCochain> {
        let n = chart.dim();
        if components.len() != n {
            return Err(Error::ComponentCount {
                expected: n,
                found: components.len(),
            });
        }
        for plane in &components {
            if plane.len() != n {
                return Err(Error::ComponentCount {
                    expected: n,
                    found: plane.len(),
                });
            }
            for row in plane {
                if row.len() != n {
                    return Err(Error::ComponentCount {
                        expected: n,
                        found: row.len(),
                    });
                }
                for entry in row {
                    chart.check_scalar(entry)?;
                }
            }
        }
        Ok(SCochain {
            chart,
            parity,
            components,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> &Superfunction {
        &self.components[i][j][k]
    }

    pub fn table(&self) -> &Table3 {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .flatten()
            .flatten()
            .all(Superfunction::is_zero)
    }

    /// Validates total graded symmetry under both adjacent transpositions and
    /// the entry parity rule `|B_ijk| = |B| + |d_i| + |d_j| + |d_k|`.
    pub fn validate(&self) -> Result<()> {
        let n = self.chart.dim();
        check_tensor_parity(&self.chart, &self.components, self.parity)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s12 = self.chart.parity(i).koszul(self.chart.parity(j));
                    if self.components[i][j][k] != self.components[j][i][k].neg_if(s12) {
                        return Err(Error::CochainNotSymmetric { i, j, k });
                    }
                    let s23 = self.chart.parity(j).koszul(self.chart.parity(k));
                    if self.components[i][j][k] != self.components[i][k][j].neg_if(s23) {
                        return Err(Error::CochainNotSymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }
}

/// One identity family of a verification run: its name, whether every
/// residual vanished, and the worst offending residual with its index triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
    pub worst_residual: Superfunction,
    pub indices: Vec<usize>,
}

/// Structured pass/fail record; a check passes exactly when its residual is
/// the zero superfunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, identity: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}

struct ResidualCollector {
    identity: &'static str,
    zero: Superfunction,
    worst: Option<(Vec<usize>, Superfunction)>,
}

impl ResidualCollector {
    fn new(identity: &'static str, chart: &Chart) -> ResidualCollector {
        ResidualCollector {
            identity,
            zero: chart.zero(),
            worst: None,
        }
    }

    fn add(&mut self, indices: Vec<usize>, residual: Superfunction) {
        if residual.is_zero() {
            return;
        }
        let bigger = self
            .worst
            .as_ref()
            .is_none_or(|(_, w)| residual.term_count() > w.term_count());
        if bigger {
            self.worst = Some((indices, residual));
        }
    }

    fn finish(self) -> IdentityCheck {
        match self.worst {
            None => IdentityCheck {
                identity: self.identity.to_string(),
                pass: true,
                worst_residual: self.zero,
                indices: Vec::new(),
            },
            Some((indices, worst_residual)) => IdentityCheck {
                identity: self.identity.to_string(),
                pass: false,
                worst_residual,
                indices,
            },
        }
    }
}

/// Extracts the N-tensor of a symmetric connection against a two-form by
/// solving `omega(N(d_i, d_j), d_k) = (-1)^{|omega||d_i|}
/// (nabla0_{d_i} omega)(d_j, d_k)` per coordinate pair.
pub fn extract_n(base: &Connection, omega: &TwoForm) -> Result<NTensor> {
    if base.chart() != omega.chart() {
        return Err(Error::ChartMismatch);
    }
    if let Some((i, j, k)) = base.first_asymmetry() {
        return Err(Error::NotSymmetric { i, j, k });
    }
    let chart = omega.chart().clone();
    let n = chart.dim();
    let basis: Vec<VectorField> = (0..n).map(|i| chart.basis_vector(i)).collect();
    let mut components = zero_table(&chart);
    for i in 0..n {
        let sign = omega.parity().koszul(chart.parity(i));
        for j in 0..n {
            let mut targets = Vec::with_capacity(n);
            for k in 0..n {
                let nabla = base.covariant_derivative_bilinear(
                    omega.form(),
                    &basis[i],
                    &basis[j],
                    &basis[k],
                )?;
                targets.push(nabla.neg_if(sign));
            }
            let field = omega.solve(&targets)?;
            components[i][j] = field.components().to_vec();
        }
    }
    NTensor::new(chart, components)
}

/// The corrected connection
/// `nabla_X Y = nabla0_X Y + (1/3) N(X,Y) + ((-1)^{|X||Y|}/3) N(Y,X)`;
/// symmetric and compatible with the form whenever `nabla0` is symmetric and
/// the form is closed.
pub fn fedosov_correct(base: &Connection, omega: &TwoForm) -> Result<Connection> {
    let n_tensor = extract_n(base, omega)?;
    apply_correction(base, &n_tensor)
}

/// The 1/3-correction applied to an already-extracted N-tensor; callers that
/// also report N avoid extracting it twice.
pub fn apply_correction(base: &Connection, n_tensor: &NTensor) -> Result<Connection> {
    if base.chart() != n_tensor.chart() {
        return Err(Error::ChartMismatch);
    }
    let chart = base.chart().clone();
    let n = chart.dim();
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let mut table = zero_table(&chart);
    for i in 0..n {
        for j in 0..n {
            let sign = chart.parity(i).koszul(chart.parity(j));
            for k in 0..n {
                let correction = &n_tensor.component(i, j, k).scale(&third)
                    + &n_tensor.component(j, i, k).scale(&third).neg_if(sign);
                table[i][j][k] = base.christoffel(i, j, k) + &correction;
            }
        }
    }
    Connection::new(chart, table)
}

/// Checks both halves of the symplectic-connection definition on coordinate
/// fields: vanishing torsion on all pairs and vanishing covariant derivative
/// of the form on all triples. Failures are report entries, never errors.
pub fn verify_symplectic(connection: &Connection, omega: &TwoForm) -> Result<VerificationReport> {
    if connection.chart() != omega.chart() {
        return Err(Error::ChartMismatch);
    }
    let chart = omega.chart().clone();
    let n = chart.dim();
    let basis: Vec<VectorField> = (0..n).map(|i| chart.basis_vector(i)).collect();

    let mut torsion = ResidualCollector::new("torsion", &chart);
    for i in 0..n {
        for j in 0..n {
            let t = connection.torsion(&basis[i], &basis[j])?;
            for k in 0..n {
                torsion.add(vec![i, j, k], t.component(k).clone());
            }
        }
    }

    let mut compat = ResidualCollector::new("compatibility", &chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = connection.covariant_derivative_bilinear(
                    omega.form(),
                    &basis[i],
                    &basis[j],
                    &basis[k],
                )?;
                compat.add(vec![i, j, k], r);
            }
        }
    }

    Ok(VerificationReport {
        checks: vec![torsion.finish(), compat.finish()],
    })
}

/// Residual of the antisymmetry identity
/// `omega(N(X,Y),Z) + (-1)^{|Y||Z|} omega(N(X,Z),Y) = 0` at one triple.
pub fn n_antisymmetry_residual(
    omega: &TwoForm,
    n_tensor: &NTensor,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Superfunction> {
    let chart = omega.chart();
    let basis_j = chart.basis_vector(j);
    let basis_k = chart.basis_vector(k);
    let a = omega.eval(&n_tensor.field(i, j), &basis_k)?;
    let b = omega.eval(&n_tensor.field(i, k), &basis_j)?;
    Ok(&a + &b.neg_if(chart.parity(j).koszul(chart.parity(k))))
}

/// Residual of the cyclic identity, which holds when the form is closed:
///
/// ```text
/// omega(N(X,Y),Z) + (-1)^{|X|(|Y|+|Z|)} omega(N(Y,Z),X)
///                 + (-1)^{|Z|(|X|+|Y|)} omega(N(Z,X),Y) = 0
/// ```
pub fn n_cyclic_residual(
    omega: &TwoForm,
    n_tensor: &NTensor,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Superfunction> {
    let chart = omega.chart();
    let pi = chart.parity(i);
    let pj = chart.parity(j);
    let pk = chart.parity(k);
    let a = omega.eval(&n_tensor.field(i, j), &chart.basis_vector(k))?;
    let b = omega
        .eval(&n_tensor.field(j, k), &chart.basis_vector(i))?
        .neg_if(pi.koszul(pj + pk));
    let c = omega
        .eval(&n_tensor.field(k, i), &chart.basis_vector(j))?
        .neg_if(pk.koszul(pi + pj));
    Ok(&(&a + &b) + &c)
}

/// Recovers the deformation tensor from its cochain:
/// `omega(S(d_i, d_j), d_k) = B_ijk` solved per coordinate pair. The
/// supersymmetry of the result is inherited from the symmetry of `B`.
pub fn s_from_cochain(omega: &TwoForm, cochain: &SCochain) -> Result<STensor> {
    if cochain.chart() != omega.chart() {
        return Err(Error::ChartMismatch);
    }
    cochain.validate()?;
    let chart = omega.chart().clone();
    let n = chart.dim();
    let mut components = zero_table(&chart);
    for i in 0..n {
        for j in 0..n {
            let targets: Vec<Superfunction> =
                (0..n).map(|k| cochain.component(i, j, k).clone()).collect();
            let field = omega.solve(&targets)?;
            components[i][j] = field.components().to_vec();
        }
    }
    STensor::new(chart, components)
}

/// Reports the two admissibility families for a deformation tensor:
/// supersymmetry `S(X,Y) = (-1)^{|X||Y|} S(Y,X)` and total graded symmetry of
/// `omega(S(X,Y),Z)` in its last two slots.
pub fn check_admissible(omega: &TwoForm, tensor: &STensor) -> Result<VerificationReport> {
    if tensor.chart() != omega.chart() {
        return Err(Error::ChartMismatch);
    }
    let chart = omega.chart().clone();
    let n = chart.dim();
    let basis: Vec<VectorField> = (0..n).map(|i| chart.basis_vector(i)).collect();

    let mut supersym = ResidualCollector::new("supersymmetry", &chart);
    for i in 0..n {
        for j in 0..n {
            let sign = chart.parity(i).koszul(chart.parity(j));
            for k in 0..n {
                let r = tensor.component(i, j, k) - &tensor.component(j, i, k).neg_if(sign);
                supersym.add(vec![i, j, k], r);
            }
        }
    }

    let mut omega_sym = ResidualCollector::new("omega-symmetry", &chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = omega.eval(&tensor.field(i, j), &basis[k])?;
                let b = omega
                    .eval(&tensor.field(i, k), &basis[j])?
                    .neg_if(chart.parity(j).koszul(chart.parity(k)));
                omega_sym.add(vec![i, j, k], &a - &b);
            }
        }
    }

    Ok(VerificationReport {
        checks: vec![supersym.finish(), omega_sym.finish()],
    })
}

/// The deformed connection `nabla'_X Y = nabla_X Y + S(X,Y)`.
pub fn deform(connection: &Connection, tensor: &STensor) -> Result<Connection> {
    if connection.chart() != tensor.chart() {
        return Err(Error::ChartMismatch);
    }
    let chart = connection.chart().clone();
    let n = chart.dim();
    let mut table = zero_table(&chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                table[i][j][k] = connection.christoffel(i, j, k) + tensor.component(i, j, k);
            }
        }
    }
    Connection::new(chart, table)
}

fn swap_slot(chart: &Chart, table: &Table3, slot: usize) -> Table3 {
    let n = chart.dim();
    let mut out = zero_table(chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j][k] = match slot {
                    0 => table[j][i][k].neg_if(chart.parity(i).koszul(chart.parity(j))),
                    _ => table[i][k][j].neg_if(chart.parity(j).koszul(chart.parity(k))),
                };
            }
        }
    }
    out
}

/// Graded symmetrization: the average of the six signed slot permutations,
/// generated by the two adjacent transpositions. Idempotent, and its image is
/// exactly the totally graded symmetric tables.
pub fn graded_symmetrize(chart: &Chart, table: &Table3) -> Table3 {
    let e = table.clone();
    let s12 = swap_slot(chart, &e, 0);
    let s23 = swap_slot(chart, &e, 1);
    let s12_23 = swap_slot(chart, &s23, 0);
    let s23_12 = swap_slot(chart, &s12, 1);
    let s13 = swap_slot(chart, &s23_12, 0);
    let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
    let n = chart.dim();
    let mut out = zero_table(chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let sum = &(&(&(&(&e[i][j][k] + &s12[i][j][k]) + &s23[i][j][k])
                    + &s12_23[i][j][k])
                    + &s23_12[i][j][k])
                    + &s13[i][j][k];
                out[i][j][k] = sum.scale(&sixth);
            }
        }
    }
    out
}

/// Draws a deterministic random cochain for a given seed: each raw entry is a
/// bounded-degree random superfunction of the parity its slot demands, then
/// the table is graded-symmetrized.
pub fn random_cochain(chart: &Chart, omega_parity: Parity, degree: u32, seed: u64) -> SCochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let _n = chart.dim();
    let mut raw = zero_table(chart);
    for (i, plane) in raw.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                let parity = omega_parity + chart.parity(i) + chart.parity(j) + chart.parity(k);
                *entry = random_superfunction(&mut rng, chart.p(), chart.q(), parity, degree, 2);
            }
        }
    }
    let symmetrized = graded_symmetrize(chart, &raw);
    SCochain::new(chart.clone(), omega_parity, symmetrized)
        .expect("symmetrized table is chart-sized")
}
