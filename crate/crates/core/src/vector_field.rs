//! Vector fields on a chart: `X = sum_i X^i d_i` with coefficients on the left.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::parity::{Parity, ParityClass};
use crate::superfunction::Superfunction;
use num_rational::BigRational;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    components: Vec<Superfunction>,
}

impl VectorField {
    pub fn new(chart: Chart, components: Vec<Superfunction>) -> Result<VectorField> {
        if components.len() != chart.dim() {
            return Err(Error::ComponentCount {
                expected: chart.dim(),
                found: components.len(),
            });
        }
        for c in &components {
            chart.check_scalar(c)?;
        }
        Ok(VectorField { chart, components })
    }

    pub fn zero(chart: &Chart) -> VectorField {
        VectorField {
            chart: chart.clone(),
            components: vec![chart.zero(); chart.dim()],
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, i: usize) -> &Superfunction {
        &self.components[i]
    }

    pub fn components(&self) -> &[Superfunction] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Superfunction::is_zero)
    }

    /// Parity of the field: `|X|` with `parity(X^i) = |X| + |d_i|` for every
    /// nonzero component, `Mixed` when the components disagree.
    pub fn parity_class(&self) -> ParityClass {
        let mut class: Option<Parity> = None;
        for (i, comp) in self.components.iter().enumerate() {
            let contribution = match comp.parity_class() {
                ParityClass::Zero => continue,
                ParityClass::Mixed => return ParityClass::Mixed,
                ParityClass::Even => Parity::Even + self.chart.parity(i),
                ParityClass::Odd => Parity::Odd + self.chart.parity(i),
            };
            match class {
                None => class = Some(contribution),
                Some(c) if c == contribution => {}
                Some(_) => return ParityClass::Mixed,
            }
        }
        match class {
            None => ParityClass::Zero,
            Some(Parity::Even) => ParityClass::Even,
            Some(Parity::Odd) => ParityClass::Odd,
        }
    }

    pub(crate) fn homogeneous_parity(&self, role: &'static str) -> Result<Parity> {
        self.parity_class()
            .sign_parity()
            .ok_or(Error::MixedParity { role })
    }

    pub(crate) fn check_chart(&self, other: &VectorField) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    /// The derivation `X(f) = sum_i X^i d_i f`.
    pub fn apply(&self, f: &Superfunction) -> Result<Superfunction> {
        self.chart.check_scalar(f)?;
        let mut acc = self.chart.zero();
        for (i, comp) in self.components.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let df = f.partial(self.chart.var(i))?;
            acc = &acc + &comp.try_mul(&df)?;
        }
        Ok(acc)
    }

    /// Super Lie bracket `[X, Y]`, recovered from the action on coordinate
    /// functions: `[X,Y]^k = X(Y^k) - (-1)^{|X||Y|} Y(X^k)`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.check_chart(other)?;
        let px = self.homogeneous_parity("vector field")?;
        let py = other.homogeneous_parity("vector field")?;
        let sign = px.koszul(py);
        let mut comps = Vec::with_capacity(self.chart.dim());
        for k in 0..self.chart.dim() {
            let a = self.apply(other.component(k))?;
            let b = other.apply(self.component(k))?;
            comps.push(&a - &b.neg_if(sign));
        }
        VectorField::new(self.chart.clone(), comps)
    }

    /// Left multiplication by a scalar: `(fX)^i = f * X^i`.
    pub fn scale_sf(&self, f: &Superfunction) -> Result<VectorField> {
        self.chart.check_scalar(f)?;
        let comps = self.components.iter().map(|c| f * c).collect();
        VectorField::new(self.chart.clone(), comps)
    }

    pub fn scale(&self, c: &BigRational) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn neg_if(&self, sign: i8) -> VectorField {
        if sign < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;

    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.chart, rhs.chart, "vector fields on different charts");
        VectorField {
            chart: self.chart.clone(),
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;

    fn sub(self, rhs: &VectorField) -> VectorField {
        self + &(-rhs)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;

    fn neg(self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| -c).collect(),
        }
    }
}
