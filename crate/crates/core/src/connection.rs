//! Connections on a chart, realized by Christoffel tables, together with
//! torsion and the covariant derivative of bilinear forms.

use crate::bilinear::BilinearForm;
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::superfunction::Superfunction;
use crate::vector_field::VectorField;
use num_rational::BigRational;
use num_traits::One;

/// A parity-even connection `nabla`, stored as the Christoffel table
/// `christoffel[i][j][k] = Gamma^k_ij` with `nabla_{d_i} d_j = Gamma^k_ij d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    chart: Chart,
    christoffel: Vec<Vec<Vec<Superfunction>>>,
}

impl Connection {
    /// Validates the parity-even rule `|Gamma^k_ij| = |d_i| + |d_j| + |d_k|`.
    pub fn new(chart: Chart, christoffel: Vec<Vec<Vec<Superfunction>>>) -> Result<Connection> {
        let n = chart.dim();
        if christoffel.len() != n {
            return Err(Error::ComponentCount {
                expected: n,
                found: christoffel.len(),
            });
        }
        for (i, plane) in christoffel.iter().enumerate() {
            if plane.len() != n {
                return Err(Error::ComponentCount {
                    expected: n,
                    found: plane.len(),
                });
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::ComponentCount {
                        expected: n,
                        found: row.len(),
                    });
                }
                for (k, entry) in row.iter().enumerate() {
                    chart.check_scalar(entry)?;
                    let expected = chart.parity(i) + chart.parity(j) + chart.parity(k);
                    if !entry.parity_class().matches(expected) {
                        return Err(Error::ChristoffelParity { i, j, k });
                    }
                }
            }
        }
        Ok(Connection { chart, christoffel })
    }

    /// The flat chart connection (all Christoffel symbols zero); symmetric.
    pub fn flat(chart: &Chart) -> Connection {
        let n = chart.dim();
        Connection {
            chart: chart.clone(),
            christoffel: vec![vec![vec![chart.zero(); n]; n]; n],
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &Superfunction {
        &self.christoffel[i][j][k]
    }

    pub fn table(&self) -> &Vec<Vec<Vec<Superfunction>>> {
        &self.christoffel
    }

    /// Whether `Gamma^k_ij = (-1)^{|d_i||d_j|} Gamma^k_ji` holds everywhere;
    /// equivalent to vanishing torsion on all coordinate pairs.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First index triple violating Christoffel symmetry, if any.
    pub fn first_asymmetry(&self) -> Option<(usize, usize, usize)> {
        let n = self.chart.dim();
        for i in 0..n {
            for j in 0..n {
                let sign = self.chart.parity(i).koszul(self.chart.parity(j));
                for k in 0..n {
                    if self.christoffel[i][j][k] != self.christoffel[j][i][k].neg_if(sign) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Covariant derivative on vector fields:
    /// `nabla_X Y = sum_i X^i [ (d_i Y^k) d_k
    ///   + (-1)^{|d_i||Y^j|} Y^j Gamma^k_ij d_k ]`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        self.check_fields(x, y)?;
        x.homogeneous_parity("vector field")?;
        y.homogeneous_parity("vector field")?;
        let n = self.chart.dim();
        let mut comps = vec![self.chart.zero(); n];
        for i in 0..n {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            for k in 0..n {
                let dy = y.component(k).partial(self.chart.var(i))?;
                comps[k] = &comps[k] + &xi.try_mul(&dy)?;
            }
            let pi = self.chart.parity(i);
            for j in 0..n {
                let yj = y.component(j);
                if yj.is_zero() {
                    continue;
                }
                let yj = yj.twist(pi);
                for k in 0..n {
                    let gamma = &self.christoffel[i][j][k];
                    if gamma.is_zero() {
                        continue;
                    }
                    comps[k] = &comps[k] + &(&(xi * &yj) * gamma);
                }
            }
        }
        VectorField::new(self.chart.clone(), comps)
    }

    /// Torsion `T(X,Y) = nabla_X Y - (-1)^{|X||Y|} nabla_Y X - [X,Y]`.
    pub fn torsion(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        self.check_fields(x, y)?;
        let px = x.homogeneous_parity("vector field")?;
        let py = y.homogeneous_parity("vector field")?;
        let sign = px.koszul(py);
        let a = self.covariant_derivative(x, y)?;
        let b = self.covariant_derivative(y, x)?.neg_if(sign);
        let bracket = x.lie_bracket(y)?;
        Ok(&(&a - &b) - &bracket)
    }

    /// The covariant derivative of a twice covariant homogeneous tensor:
    /// `(nabla_X g)(Y,Z) = X(g(Y,Z)) - (-1)^{|X||g|} g(nabla_X Y, Z)
    ///   - (-1)^{|X|(|Y|+|g|)} g(Y, nabla_X Z)`.
    pub fn covariant_derivative_bilinear(
        &self,
        g: &BilinearForm,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
    ) -> Result<Superfunction> {
        if g.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        self.check_fields(x, y)?;
        self.check_fields(x, z)?;
        let px = x.homogeneous_parity("vector field")?;
        let py = y.homogeneous_parity("vector field")?;
        z.homogeneous_parity("vector field")?;
        let pg = g.parity();
        let t1 = x.apply(&g.eval(y, z)?)?;
        let t2 = g
            .eval(&self.covariant_derivative(x, y)?, z)?
            .neg_if(px.koszul(pg));
        let t3 = g
            .eval(y, &self.covariant_derivative(x, z)?)?
            .neg_if(px.koszul(py + pg));
        Ok(&(&t1 - &t2) - &t3)
    }

    /// Componentwise affine combination `t * a + (1 - t) * b`.
    pub fn affine_combination(
        a: &Connection,
        b: &Connection,
        t: &BigRational,
    ) -> Result<Connection> {
        if a.chart != b.chart {
            return Err(Error::ChartMismatch);
        }
        let n = a.chart.dim();
        let s = BigRational::one() - t;
        let mut table = vec![vec![vec![a.chart.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    table[i][j][k] =
                        &a.christoffel[i][j][k].scale(t) + &b.christoffel[i][j][k].scale(&s);
                }
            }
        }
        Connection::new(a.chart.clone(), table)
    }

    fn check_fields(&self, x: &VectorField, y: &VectorField) -> Result<()> {
        if x.chart() != &self.chart || y.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }
}

/// Evaluates a `(2,1)` component table as a tensor on vector fields, with the
/// same coefficient-extraction signs as the Christoffel term of the covariant
/// derivative: `T(X,Y)^k = sum_{i,j} X^i (-1)^{|d_i||Y^j|} Y^j T^k_ij`.
pub fn eval_tensor21(
    chart: &Chart,
    table: &[Vec<Vec<Superfunction>>],
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField> {
    if x.chart() != chart || y.chart() != chart {
        return Err(Error::ChartMismatch);
    }
    x.homogeneous_parity("vector field")?;
    y.homogeneous_parity("vector field")?;
    let n = chart.dim();
    let mut comps = vec![chart.zero(); n];
    for i in 0..n {
        let xi = x.component(i);
        if xi.is_zero() {
            continue;
        }
        let pi = chart.parity(i);
        for j in 0..n {
            let yj = y.component(j);
            if yj.is_zero() {
                continue;
            }
            let yj = yj.twist(pi);
            let pair = xi * &yj;
            for k in 0..n {
                let entry = &table[i][j][k];
                if entry.is_zero() {
                    continue;
                }
                comps[k] = &comps[k] + &(&pair * entry);
            }
        }
    }
    VectorField::new(chart.clone(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::TwoForm;
    use crate::parity::Parity;

    fn r20() -> Chart {
        Chart::standard(2, 0)
    }

    #[test]
    fn flat_derivative_is_the_plain_derivative() {
        let chart = r20();
        let flat = Connection::flat(&chart);
        let d1 = chart.basis_vector(0);
        let x1 = chart.coordinate_function(0);
        let y = d1.scale_sf(&x1).unwrap();
        // nabla_{d1}(x1 d1) = d1
        assert_eq!(flat.covariant_derivative(&d1, &y).unwrap(), d1);
    }

    #[test]
    fn flat_derivative_with_odd_coefficient() {
        // nabla_{d_th}(th d_x) = d_x for the flat connection; cross-checked
        // against the bracket since flat is symmetric.
        let chart = Chart::standard(1, 1);
        let flat = Connection::flat(&chart);
        let dth = chart.basis_vector(1);
        let dx = chart.basis_vector(0);
        let y = dx.scale_sf(&chart.coordinate_function(1)).unwrap();
        let nabla = flat.covariant_derivative(&dth, &y).unwrap();
        assert_eq!(nabla, dx);
        let sign = Parity::Odd.koszul(Parity::Odd);
        let reverse = flat.covariant_derivative(&y, &dth).unwrap().neg_if(sign);
        assert_eq!(&nabla - &reverse, dth.lie_bracket(&y).unwrap());
    }

    #[test]
    fn torsion_of_flat_vanishes() {
        let chart = r20();
        let flat = Connection::flat(&chart);
        let t = flat
            .torsion(&chart.basis_vector(0), &chart.basis_vector(1))
            .unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn torsion_reads_the_asymmetry() {
        // Gamma^1_12 = 1 only: T(d1, d2) = d1.
        let chart = r20();
        let mut table = vec![vec![vec![chart.zero(); 2]; 2]; 2];
        table[0][1][0] = chart.one();
        let c = Connection::new(chart.clone(), table).unwrap();
        assert!(!c.is_symmetric());
        let t = c
            .torsion(&chart.basis_vector(0), &chart.basis_vector(1))
            .unwrap();
        assert_eq!(t, chart.basis_vector(0));
    }

    #[test]
    fn odd_odd_torsion_doubles() {
        // Gamma^1_thth = c on R^{1|1}: T(d_th, d_th) = 2c d_1.
        let chart = Chart::standard(1, 1);
        let coeff = chart.coordinate_function(0); // even scalar, entry parity odd+odd+even
        let mut table = vec![vec![vec![chart.zero(); 2]; 2]; 2];
        table[1][1][0] = coeff.clone();
        let c = Connection::new(chart.clone(), table).unwrap();
        let dth = chart.basis_vector(1);
        let t = c.torsion(&dth, &dth).unwrap();
        let expected = chart
            .basis_vector(0)
            .scale_sf(&coeff.scale(&BigRational::from_integer(2.into())))
            .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn nabla_omega_flat_constant_vanishes() {
        let chart = r20();
        let mut gram = vec![vec![chart.zero(); 2]; 2];
        gram[0][1] = chart.one();
        gram[1][0] = -&chart.one();
        let w =
            TwoForm::new(BilinearForm::new(chart.clone(), Parity::Even, gram).unwrap()).unwrap();
        let flat = Connection::flat(&chart);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let r = flat
                        .covariant_derivative_bilinear(
                            w.form(),
                            &chart.basis_vector(i),
                            &chart.basis_vector(j),
                            &chart.basis_vector(k),
                        )
                        .unwrap();
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn nabla_omega_sees_the_derivative_term() {
        // omega_12 = 1 + x1, flat: residual at (d1, d1, d2) is exactly 1.
        let chart = r20();
        let wexpr = &chart.one() + &chart.coordinate_function(0);
        let mut gram = vec![vec![chart.zero(); 2]; 2];
        gram[0][1] = wexpr.clone();
        gram[1][0] = -&wexpr;
        let w =
            TwoForm::new(BilinearForm::new(chart.clone(), Parity::Even, gram).unwrap()).unwrap();
        let flat = Connection::flat(&chart);
        let r = flat
            .covariant_derivative_bilinear(
                w.form(),
                &chart.basis_vector(0),
                &chart.basis_vector(0),
                &chart.basis_vector(1),
            )
            .unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn parity_validation_rejects_bad_entries() {
        let chart = Chart::standard(1, 1);
        let mut table = vec![vec![vec![chart.zero(); 2]; 2]; 2];
        // Gamma^th_xx must be odd; the constant 1 is even.
        table[0][0][1] = chart.one();
        assert_eq!(
            Connection::new(chart, table).unwrap_err(),
            Error::ChristoffelParity { i: 0, j: 0, k: 1 }
        );
    }
}
