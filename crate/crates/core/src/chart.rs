//! Coordinate superdomains: a single global chart with named, ordered,
//! parity-tagged coordinates.

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::superfunction::{Superfunction, Var};
use crate::vector_field::VectorField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<(String, Parity)>,
    vars: Vec<Var>,
    p: usize,
    q: usize,
}

impl Chart {
    /// Builds a chart from an ordered coordinate list. Names must be unique;
    /// coordinate indices `0..dim` refer to this order.
    pub fn new(coords: Vec<(String, Parity)>) -> Result<Chart> {
        let mut vars = Vec::with_capacity(coords.len());
        let mut p = 0;
        let mut q = 0;
        for (name, parity) in &coords {
            if coords.iter().filter(|(n, _)| n == name).count() > 1 {
                return Err(Error::DuplicateCoordinate(name.clone()));
            }
            match parity {
                Parity::Even => {
                    vars.push(Var::Even(p));
                    p += 1;
                }
                Parity::Odd => {
                    vars.push(Var::Odd(q));
                    q += 1;
                }
            }
        }
        Ok(Chart { coords, vars, p, q })
    }

    /// The chart `R^{p|q}` with coordinates `x1..xp, th1..thq`.
    pub fn standard(p: usize, q: usize) -> Chart {
        let mut coords = Vec::with_capacity(p + q);
        for i in 0..p {
            coords.push((format!("x{}", i + 1), Parity::Even));
        }
        for m in 0..q {
            coords.push((format!("th{}", m + 1), Parity::Odd));
        }
        Chart::new(coords).expect("standard names are unique")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn name(&self, i: usize) -> &str {
        &self.coords[i].0
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.coords[i].1
    }

    pub fn coordinates(&self) -> &[(String, Parity)] {
        &self.coords
    }

    /// The scalar-ring slot backing coordinate `i`.
    pub fn var(&self, i: usize) -> Var {
        self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|(n, _)| n == name)
    }

    pub fn even_names(&self) -> Vec<String> {
        self.coords
            .iter()
            .filter(|(_, p)| *p == Parity::Even)
            .map(|(n, _)| n.clone())
            .collect()
    }

    pub fn zero(&self) -> Superfunction {
        Superfunction::zero(self.p, self.q)
    }

    pub fn one(&self) -> Superfunction {
        Superfunction::one(self.p, self.q)
    }

    /// The coordinate function attached to index `i`.
    pub fn coordinate_function(&self, i: usize) -> Superfunction {
        match self.vars[i] {
            Var::Even(k) => Superfunction::even_var(self.p, self.q, k),
            Var::Odd(m) => Superfunction::odd_var(self.p, self.q, m),
        }
    }

    /// The coordinate vector field `d/d(coordinate i)`.
    pub fn basis_vector(&self, i: usize) -> VectorField {
        let mut comps = vec![self.zero(); self.dim()];
        comps[i] = self.one();
        VectorField::new(self.clone(), comps).expect("basis components are valid")
    }

    pub(crate) fn check_scalar(&self, f: &Superfunction) -> Result<()> {
        let (p, q) = f.signature();
        if p != self.p || q != self.q {
            return Err(Error::SignatureMismatch(self.p, self.q, p, q));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_chart_layout() {
        let c = Chart::standard(2, 1);
        assert_eq!(c.dim(), 3);
        assert_eq!((c.p(), c.q()), (2, 1));
        assert_eq!(c.name(2), "th1");
        assert_eq!(c.parity(2), Parity::Odd);
        assert_eq!(c.var(1), Var::Even(1));
        assert_eq!(c.var(2), Var::Odd(0));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Chart::new(vec![("x".into(), Parity::Even), ("x".into(), Parity::Odd)]);
        assert_eq!(err, Err(Error::DuplicateCoordinate("x".into())));
    }

    #[test]
    fn interleaved_order_is_preserved() {
        let c = Chart::new(vec![
            ("a".into(), Parity::Even),
            ("t".into(), Parity::Odd),
            ("b".into(), Parity::Even),
        ])
        .unwrap();
        assert_eq!(c.var(0), Var::Even(0));
        assert_eq!(c.var(1), Var::Odd(0));
        assert_eq!(c.var(2), Var::Even(1));
    }
}
