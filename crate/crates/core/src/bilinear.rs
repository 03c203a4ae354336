//! Bilinear forms, the symplectic two-form, closedness, the one-form
//! differential, and linear solves against a nondegenerate form.
//!
//! The evaluation sign rules
//!
//! ```text
//! g(fX, Y) = (-1)^{|f||g|}          f g(X, Y)
//! g(X, fY) = (-1)^{|f|(|g|+|X|)}    f g(X, Y)
//! ```
//!
//! are the single source of truth here; the covariant derivative of a form,
//! the closedness residual, and the solver signs are all derived from them.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::RationalFunction;
use crate::superfunction::Superfunction;
use crate::vector_field::VectorField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    chart: Chart,
    parity: Parity,
    gram: Vec<Vec<Superfunction>>,
}

/// One nonzero closedness residual, reported with its coordinate triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Superfunction,
}

/// Outcome of the closedness check: a pass flag plus the residual table
/// restricted to its nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessCheck {
    pub passed: bool,
    pub violations: Vec<ClosednessViolation>,
}

impl BilinearForm {
    /// Builds a form from its Gram matrix `gram[i][j] = g(d_i, d_j)`,
    /// validating the entry parity rule `|g_ij| = |g| + |d_i| + |d_j|`.
    pub fn new(
        chart: Chart,
        parity: Parity,
        gram: Vec<Vec<Superfunction>>,
    ) -> Result<BilinearForm> {
        let n = chart.dim();
        if gram.len() != n {
            return Err(Error::ComponentCount {
                expected: n,
                found: gram.len(),
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ComponentCount {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, entry) in row.iter().enumerate() {
                chart.check_scalar(entry)?;
                let expected = parity + chart.parity(i) + chart.parity(j);
                if !entry.parity_class().matches(expected) {
                    return Err(Error::EntryParity {
                        i,
                        j,
                        form_parity: parity,
                    });
                }
            }
        }
        Ok(BilinearForm {
            chart,
            parity,
            gram,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entry(&self, i: usize, j: usize) -> &Superfunction {
        &self.gram[i][j]
    }

    pub fn gram(&self) -> &Vec<Vec<Superfunction>> {
        &self.gram
    }

    /// Graded-bilinear evaluation on homogeneous vector fields.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<Superfunction> {
        if x.chart() != &self.chart || y.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        x.homogeneous_parity("vector field")?;
        y.homogeneous_parity("vector field")?;
        let mut acc = self.chart.zero();
        for i in 0..self.chart.dim() {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            let xi = xi.twist(self.parity);
            for j in 0..self.chart.dim() {
                let entry = &self.gram[i][j];
                if entry.is_zero() {
                    continue;
                }
                let yj = y.component(j);
                if yj.is_zero() {
                    continue;
                }
                let yj = yj.twist(self.parity + self.chart.parity(i));
                acc = &acc + &(&(&xi * &yj) * entry);
            }
        }
        Ok(acc)
    }

    /// Checks `g_ij = -(-1)^{|d_i||d_j|} g_ji` entrywise.
    pub fn check_antisymmetric(&self) -> Result<()> {
        for i in 0..self.chart.dim() {
            for j in i..self.chart.dim() {
                let sign = self.chart.parity(i).koszul(self.chart.parity(j));
                let mirrored = self.gram[j][i].neg_if(-sign);
                if self.gram[i][j] != mirrored {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    /// Closedness residual at one coordinate triple; on coordinate fields the
    /// bracket terms of the exterior derivative vanish, leaving
    /// `(-1)^{|w||d_i|} d_i w_jk - (-1)^{|d_j|(|w|+|d_i|)} d_j w_ik
    ///  + (-1)^{|d_k|(|w|+|d_i|+|d_j|)} d_k w_ij`.
    pub fn closedness_residual(&self, i: usize, j: usize, k: usize) -> Result<Superfunction> {
        let w = self.parity;
        let pi = self.chart.parity(i);
        let pj = self.chart.parity(j);
        let pk = self.chart.parity(k);
        let t1 = self.gram[j][k]
            .partial(self.chart.var(i))?
            .neg_if(w.koszul(pi));
        let t2 = self.gram[i][k]
            .partial(self.chart.var(j))?
            .neg_if(pj.koszul(w + pi));
        let t3 = self.gram[i][j]
            .partial(self.chart.var(k))?
            .neg_if(pk.koszul(w + pi + pj));
        Ok(&(&t1 - &t2) + &t3)
    }

    /// Full closedness check over all coordinate triples.
    pub fn closedness(&self) -> ClosednessCheck {
        let n = self.chart.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let residual = self
                        .closedness_residual(i, j, k)
                        .expect("coordinate indices are in range");
                    if !residual.is_zero() {
                        violations.push(ClosednessViolation { i, j, k, residual });
                    }
                }
            }
        }
        ClosednessCheck {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closedness().passed
    }
}

/// The differential of a one-form given by its covector components, with the
/// form-degree convention in which `d` is odd: the input of parity `|a|` has
/// components of parity `|a| + 1 + |d_i|` and the output is a graded
/// antisymmetric form of parity `|a| + 1` that is closed for every input.
pub fn d_one_form(
    chart: &Chart,
    alpha: &[Superfunction],
    alpha_parity: Parity,
) -> Result<BilinearForm> {
    let n = chart.dim();
    if alpha.len() != n {
        return Err(Error::ComponentCount {
            expected: n,
            found: alpha.len(),
        });
    }
    let beta_parity = alpha_parity + Parity::Odd;
    for (j, a) in alpha.iter().enumerate() {
        chart.check_scalar(a)?;
        if !a.parity_class().matches(beta_parity + chart.parity(j)) {
            return Err(Error::MixedParity {
                role: "one-form component",
            });
        }
    }
    let mut gram = vec![vec![chart.zero(); n]; n];
    for i in 0..n {
        let pi = chart.parity(i);
        for j in 0..n {
            let pj = chart.parity(j);
            let t1 = alpha[j]
                .partial(chart.var(i))?
                .neg_if(beta_parity.koszul(pi));
            let t2 = alpha[i]
                .partial(chart.var(j))?
                .neg_if(pj.koszul(beta_parity + pi));
            gram[i][j] = &t1 - &t2;
        }
    }
    BilinearForm::new(chart.clone(), beta_parity, gram)
}

/// Solver for `form_eval(w, V, d_k) = t_k`, factored once per form.
///
/// Writing `V = sum_i V^i d_i`, the equations read
/// `sum_i twist_{|w|}(V^i) w_ik = t_k`: an honest linear system over the
/// supercommutative scalar ring after substituting `U^i = twist(V^i)`.
/// Gauss-Jordan elimination with invertible-body pivots computes the rows
/// `R_m` with `R_m . M = e_m`; then `U = t . R` for any target vector, and
/// the grade involution is undone at the end when `|w|` is odd.
#[derive(Debug, Clone)]
pub struct OmegaSolver {
    chart: Chart,
    parity: Parity,
    inverse_rows: Vec<Vec<Superfunction>>,
    body_det: RationalFunction,
}

impl OmegaSolver {
    pub fn new(form: &BilinearForm) -> Result<OmegaSolver> {
        let chart = form.chart().clone();
        let n = chart.dim();
        let mut a: Vec<Vec<Superfunction>> = (0..n)
            .map(|i| (0..n).map(|k| form.entry(i, k).clone()).collect())
            .collect();
        let mut t: Vec<Vec<Superfunction>> = (0..n)
            .map(|m| {
                (0..n)
                    .map(|k| if m == k { chart.one() } else { chart.zero() })
                    .collect()
            })
            .collect();
        let mut used_row = vec![false; n];
        let mut pivot_row_of_col = vec![0usize; n];
        let mut det = RationalFunction::one(chart.p());

        for col in 0..n {
            let pivot_row = (0..n)
                .find(|&i| !used_row[i] && !a[i][col].body().is_zero())
                .ok_or(Error::DegenerateForm { step: col })?;
            used_row[pivot_row] = true;
            pivot_row_of_col[col] = pivot_row;
            det = &det * &a[pivot_row][col].body();

            let pinv = a[pivot_row][col]
                .invert()
                .expect("pivot body is invertible");
            for row in 0..n {
                a[row][col] = a[row][col].try_mul(&pinv)?;
            }
            for m in 0..n {
                t[m][col] = t[m][col].try_mul(&pinv)?;
            }
            for k in 0..n {
                if k == col {
                    continue;
                }
                let factor = a[pivot_row][k].clone();
                if factor.is_zero() {
                    continue;
                }
                for row in 0..n {
                    let sub = a[row][col].try_mul(&factor)?;
                    a[row][k] = &a[row][k] - &sub;
                }
                for m in 0..n {
                    let sub = t[m][col].try_mul(&factor)?;
                    t[m][k] = &t[m][k] - &sub;
                }
            }
        }

        // det(body matrix) = product of pivot bodies times the sign of the
        // column -> pivot-row assignment.
        let mut inversions = 0usize;
        for c1 in 0..n {
            for c2 in (c1 + 1)..n {
                if pivot_row_of_col[c1] > pivot_row_of_col[c2] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 1 {
            det = -&det;
        }

        let mut inverse_rows = vec![vec![chart.zero(); n]; n];
        for col in 0..n {
            for (m, targets) in t.iter().enumerate() {
                inverse_rows[m][pivot_row_of_col[col]] = targets[col].clone();
            }
        }
        Ok(OmegaSolver {
            chart,
            parity: form.parity(),
            inverse_rows,
            body_det: det,
        })
    }

    /// Determinant of the body matrix; its zero locus bounds where the
    /// symbolic solution is pointwise valid.
    pub fn body_determinant(&self) -> &RationalFunction {
        &self.body_det
    }

    /// The unique `V` with `form_eval(w, V, d_k) = targets[k]` for all `k`.
    pub fn solve(&self, targets: &[Superfunction]) -> Result<VectorField> {
        let n = self.chart.dim();
        if targets.len() != n {
            return Err(Error::ComponentCount {
                expected: n,
                found: targets.len(),
            });
        }
        for t in targets {
            self.chart.check_scalar(t)?;
        }
        let mut comps = vec![self.chart.zero(); n];
        for i in 0..n {
            let mut acc = self.chart.zero();
            for (m, target) in targets.iter().enumerate() {
                if target.is_zero() || self.inverse_rows[m][i].is_zero() {
                    continue;
                }
                acc = &acc + &target.try_mul(&self.inverse_rows[m][i])?;
            }
            comps[i] = acc.twist(self.parity);
        }
        VectorField::new(self.chart.clone(), comps)
    }
}

/// A homogeneous two-form that is graded antisymmetric, closed, and
/// nondegenerate; all three are validated at construction and the elimination
/// data is kept for later solves.
#[derive(Debug, Clone)]
pub struct TwoForm {
    form: BilinearForm,
    solver: OmegaSolver,
}

impl TwoForm {
    pub fn new(form: BilinearForm) -> Result<TwoForm> {
        form.check_antisymmetric()?;
        let check = form.closedness();
        if let Some(v) = check.violations.first() {
            return Err(Error::NotClosed {
                i: v.i,
                j: v.j,
                k: v.k,
            });
        }
        let solver = OmegaSolver::new(&form)?;
        Ok(TwoForm { form, solver })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn chart(&self) -> &Chart {
        self.form.chart()
    }

    pub fn parity(&self) -> Parity {
        self.form.parity()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Superfunction {
        self.form.entry(i, j)
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<Superfunction> {
        self.form.eval(x, y)
    }

    pub fn body_determinant(&self) -> &RationalFunction {
        self.solver.body_determinant()
    }

    pub fn solve(&self, targets: &[Superfunction]) -> Result<VectorField> {
        self.solver.solve(targets)
    }
}

impl PartialEq for TwoForm {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
    }
}

impl Eq for TwoForm {}

/// One-shot linear solve against a two-form; reuse [`TwoForm::solve`] when
/// solving repeatedly against the same form.
pub fn solve_against_omega(omega: &TwoForm, targets: &[Superfunction]) -> Result<VectorField> {
    omega.solve(targets)
}
