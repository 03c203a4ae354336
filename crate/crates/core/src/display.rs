//! Canonical expression strings for scalars, chosen so that re-parsing the
//! output with the expression grammar reproduces an equal value.

use crate::chart::Chart;
use crate::parity::Parity;
use crate::poly::Polynomial;
use crate::rational::RationalFunction;
use crate::superfunction::Superfunction;
use num_rational::BigRational;
use num_traits::Signed;

fn monomial_body(names: &[String], exp: &[u32]) -> Vec<String> {
    let mut factors = Vec::new();
    for (k, &e) in exp.iter().enumerate() {
        if e == 1 {
            factors.push(names[k].clone());
        } else if e > 1 {
            factors.push(format!("{}^{}", names[k], e));
        }
    }
    factors
}

/// One polynomial term as `(is_negative, absolute value string)`.
fn term_string(names: &[String], exp: &[u32], coeff: &BigRational) -> (bool, String) {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    let mut factors = Vec::new();
    let vars = monomial_body(names, exp);
    if vars.is_empty() || abs != BigRational::from_integer(1.into()) {
        factors.push(abs.to_string());
    }
    factors.extend(vars);
    (neg, factors.join("*"))
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (idx, (neg, s)) in parts.into_iter().enumerate() {
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&s);
    }
    out
}

/// A polynomial in the expression grammar, terms in ascending lex order.
pub fn polynomial_string(names: &[String], poly: &Polynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    join_signed(
        poly.terms()
            .map(|(e, c)| term_string(names, e, c))
            .collect(),
    )
}

/// True when the polynomial prints as a single product of factors, safe to
/// embed in a `*`/`/` chain without parentheses.
fn is_single_term(poly: &Polynomial) -> bool {
    poly.nterms() == 1
}

/// A rational function in the expression grammar. Both sides are scaled to
/// integer coefficients with overall content one and a positive leading
/// denominator coefficient.
pub fn rational_function_string(names: &[String], rf: &RationalFunction) -> String {
    if rf.is_zero() {
        return "0".to_string();
    }
    let (num, den) = rf.integer_normalized();
    if den.is_one() {
        return polynomial_string(names, &num);
    }
    let num_str = if is_single_term(&num) {
        polynomial_string(names, &num)
    } else {
        format!("({})", polynomial_string(names, &num))
    };
    let den_str = match den.constant_value() {
        Some(c) if !c.is_negative() => c.to_string(),
        _ => format!("({})", polynomial_string(names, &den)),
    };
    format!("{}/{}", num_str, den_str)
}

/// A rational function as a `(sign, product-chain)` pair that can be embedded
/// directly in front of a Grassmann monomial.
fn rf_factor(names: &[String], rf: &RationalFunction) -> (bool, String) {
    let (num, den) = rf.integer_normalized();
    if den.is_one() {
        if is_single_term(&num) {
            let (e, c) = num.terms().next().expect("nonzero");
            return term_string(names, e, c);
        }
        return (false, format!("({})", polynomial_string(names, &num)));
    }
    let den_str = match den.constant_value() {
        Some(c) if !c.is_negative() => c.to_string(),
        _ => format!("({})", polynomial_string(names, &den)),
    };
    if is_single_term(&num) {
        let (e, c) = num.terms().next().expect("nonzero");
        let (neg, abs) = term_string(names, e, c);
        (neg, format!("{}/{}", abs, den_str))
    } else {
        (
            false,
            format!("({})/{}", polynomial_string(names, &num), den_str),
        )
    }
}

/// Canonical expression string for a superfunction on a chart. Components are
/// emitted in ascending Grassmann-monomial order with coefficients on the
/// left; the output parses back to an equal superfunction.
pub fn superfunction_string(chart: &Chart, f: &Superfunction) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let even_names = chart.even_names();
    let odd_names: Vec<String> = chart
        .coordinates()
        .iter()
        .filter(|(_, p)| *p == Parity::Odd)
        .map(|(n, _)| n.clone())
        .collect();

    // A body-only superfunction prints as its rational function.
    if f.components().count() == 1 {
        if let Some(rf) = f.component(0) {
            return rational_function_string(&even_names, rf);
        }
    }

    let mut parts = Vec::new();
    for (mask, rf) in f.components() {
        if mask == 0 {
            let (num, den) = rf.integer_normalized();
            if den.is_one() && !is_single_term(&num) {
                parts.push((false, format!("({})", polynomial_string(&even_names, &num))));
            } else {
                parts.push(rf_factor(&even_names, rf));
            }
            continue;
        }
        let theta: Vec<String> = (0..32)
            .filter(|m| mask & (1 << m) != 0)
            .map(|m| odd_names[m as usize].clone())
            .collect();
        let theta = theta.join("*");
        if rf.is_one() {
            parts.push((false, theta));
        } else if (-rf).is_one() {
            parts.push((true, theta));
        } else {
            let (neg, factor) = rf_factor(&even_names, rf);
            parts.push((neg, format!("{}*{}", factor, theta)));
        }
    }
    join_signed(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_polynomials_in_ascending_order() {
        let chart = Chart::standard(2, 1);
        let f =
            &(&chart.one() + &chart.coordinate_function(0).pow(2)) - &chart.coordinate_function(1);
        assert_eq!(superfunction_string(&chart, &f), "1 - x2 + x1^2");
    }

    #[test]
    fn prints_rational_coefficients() {
        let chart = Chart::standard(1, 2);
        let inv = (&chart.one() + &chart.coordinate_function(0))
            .invert()
            .unwrap();
        assert_eq!(superfunction_string(&chart, &inv), "1/(1 + x1)");
        let two_thirds = inv.scale(&BigRational::new(2.into(), 3.into()));
        assert_eq!(superfunction_string(&chart, &two_thirds), "2/(3 + 3*x1)");
    }

    #[test]
    fn prints_grassmann_terms() {
        let chart = Chart::standard(1, 2);
        let th1 = chart.coordinate_function(1);
        let th2 = chart.coordinate_function(2);
        let f = &(&th1 * &th2).scale(&BigRational::from_integer((-2).into()))
            + &chart.coordinate_function(0);
        assert_eq!(superfunction_string(&chart, &f), "x1 - 2*th1*th2");
    }

    #[test]
    fn zero_prints_as_zero() {
        let chart = Chart::standard(1, 1);
        assert_eq!(superfunction_string(&chart, &chart.zero()), "0");
    }
}
