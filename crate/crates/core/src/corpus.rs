//! Deterministic random instances for property suites and the self-test
//! corpus: Darboux-type forms perturbed by exact differentials, random
//! homogeneous scalars, fields, and connections.

use crate::bilinear::{d_one_form, BilinearForm, TwoForm};
use crate::chart::Chart;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::poly::Polynomial;
use crate::rational::RationalFunction;
use crate::superfunction::Superfunction;
use crate::vector_field::VectorField;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RESAMPLE_ATTEMPTS: usize = 64;

/// A single random polynomial term of bounded total degree with a small
/// nonzero integer coefficient.
fn random_term(rng: &mut ChaCha8Rng, p: usize, degree: u32) -> Polynomial {
    let mut exp = vec![0u32; p];
    if p > 0 {
        let total = rng.gen_range(0..=degree);
        for _ in 0..total {
            exp[rng.gen_range(0..p)] += 1;
        }
    }
    let mut c: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c = -c;
    }
    Polynomial::monomial(p, exp, BigRational::from_integer(c.into()))
}

/// A random homogeneous superfunction of the given parity; zero when the
/// parity is odd and there are no odd generators.
pub fn random_superfunction(
    rng: &mut ChaCha8Rng,
    p: usize,
    q: usize,
    parity: Parity,
    degree: u32,
    max_terms: usize,
) -> Superfunction {
    if parity.is_odd() && q == 0 {
        return Superfunction::zero(p, q);
    }
    let want = if parity.is_odd() { 1 } else { 0 };
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut acc = Superfunction::zero(p, q);
    for _ in 0..nterms {
        let mask = loop {
            let m: u32 = rng.gen_range(0..(1u32 << q));
            if m.count_ones() % 2 == want {
                break m;
            }
        };
        let poly = random_term(rng, p, degree);
        acc = &acc + &Superfunction::monomial(p, q, mask, RationalFunction::from_poly(poly));
    }
    acc
}

/// A homogeneous vector field of the given parity with sparse polynomial
/// components.
pub fn random_vector_field(
    rng: &mut ChaCha8Rng,
    chart: &Chart,
    parity: Parity,
    degree: u32,
) -> VectorField {
    let n = chart.dim();
    let mut comps = Vec::with_capacity(n);
    for i in 0..n {
        if rng.gen_bool(0.4) {
            comps.push(chart.zero());
        } else {
            comps.push(random_superfunction(
                rng,
                chart.p(),
                chart.q(),
                parity + chart.parity(i),
                degree,
                1,
            ));
        }
    }
    VectorField::new(chart.clone(), comps).expect("components are chart-sized")
}

/// A random parity-even connection (no symmetry imposed).
pub fn random_connection(rng: &mut ChaCha8Rng, chart: &Chart, degree: u32) -> Connection {
    let n = chart.dim();
    let mut table = vec![vec![vec![chart.zero(); n]; n]; n];
    for (i, plane) in table.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let parity = chart.parity(i) + chart.parity(j) + chart.parity(k);
                *entry = random_superfunction(rng, chart.p(), chart.q(), parity, degree, 1);
            }
        }
    }
    Connection::new(chart.clone(), table).expect("entries were drawn with valid parity")
}

/// A random symmetric connection, obtained by graded-symmetrizing the first
/// two slots of a random parity-even table.
pub fn random_symmetric_connection(rng: &mut ChaCha8Rng, chart: &Chart, degree: u32) -> Connection {
    let raw = random_connection(rng, chart, degree);
    let n = chart.dim();
    let half = BigRational::new(1.into(), 2.into());
    let mut table = vec![vec![vec![chart.zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = chart.parity(i).koszul(chart.parity(j));
            for k in 0..n {
                let sym = raw.christoffel(i, j, k) + &raw.christoffel(j, i, k).neg_if(sign);
                table[i][j][k] = sym.scale(&half);
            }
        }
    }
    Connection::new(chart.clone(), table).expect("symmetrization preserves parity")
}

/// The constant Darboux-type two-form on a chart: paired even coordinates
/// plus a unit odd-odd diagonal for even parity, or an even-odd pairing
/// (requiring `p = q`) for odd parity.
pub fn darboux_two_form(chart: &Chart, parity: Parity) -> Result<TwoForm> {
    let gram = darboux_gram(chart, parity)?;
    TwoForm::new(BilinearForm::new(chart.clone(), parity, gram)?)
}

fn darboux_gram(chart: &Chart, parity: Parity) -> Result<Vec<Vec<Superfunction>>> {
    let n = chart.dim();
    let evens: Vec<usize> = (0..n)
        .filter(|&i| chart.parity(i) == Parity::Even)
        .collect();
    let odds: Vec<usize> = (0..n).filter(|&i| chart.parity(i) == Parity::Odd).collect();
    let mut gram = vec![vec![chart.zero(); n]; n];
    match parity {
        Parity::Even => {
            if !evens.len().is_multiple_of(2) {
                return Err(Error::DarbouxShape {
                    p: evens.len(),
                    q: odds.len(),
                    parity,
                });
            }
            for pair in evens.chunks(2) {
                gram[pair[0]][pair[1]] = chart.one();
                gram[pair[1]][pair[0]] = -&chart.one();
            }
            for &o in &odds {
                gram[o][o] = chart.one();
            }
        }
        Parity::Odd => {
            if evens.len() != odds.len() {
                return Err(Error::DarbouxShape {
                    p: evens.len(),
                    q: odds.len(),
                    parity,
                });
            }
            for (&e, &o) in evens.iter().zip(odds.iter()) {
                gram[e][o] = chart.one();
                gram[o][e] = -&chart.one();
            }
        }
    }
    Ok(gram)
}

/// A random one-form suitable for perturbing a form of parity `omega_parity`:
/// component `i` is homogeneous of parity `omega_parity + |d_i|`.
pub fn random_one_form(
    rng: &mut ChaCha8Rng,
    chart: &Chart,
    omega_parity: Parity,
    degree: u32,
) -> Vec<Superfunction> {
    let n = chart.dim();
    let mut alpha = Vec::with_capacity(n);
    for i in 0..n {
        if rng.gen_bool(0.25) {
            alpha.push(chart.zero());
        } else {
            alpha.push(random_superfunction(
                rng,
                chart.p(),
                chart.q(),
                omega_parity + chart.parity(i),
                degree,
                1,
            ));
        }
    }
    alpha
}

/// Darboux plus the differential of a random bounded-degree one-form,
/// resampled until the body determinant is not identically zero.
pub fn random_symplectic_form(
    rng: &mut ChaCha8Rng,
    chart: &Chart,
    parity: Parity,
    degree: u32,
) -> Result<TwoForm> {
    let base = darboux_gram(chart, parity)?;
    for _ in 0..RESAMPLE_ATTEMPTS {
        let alpha = random_one_form(rng, chart, parity, degree);
        let beta = d_one_form(chart, &alpha, parity.flip())?;
        let _n = chart.dim();
        let mut gram = base.clone();
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = &*entry + beta.entry(i, j);
            }
        }
        match TwoForm::new(BilinearForm::new(chart.clone(), parity, gram)?) {
            Ok(omega) => return Ok(omega),
            Err(Error::DegenerateForm { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::CorpusExhausted {
        attempts: RESAMPLE_ATTEMPTS,
    })
}

/// One corpus instance: a standard chart with a random symplectic form.
#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub chart: Chart,
    pub omega: TwoForm,
    pub p: usize,
    pub q: usize,
    pub omega_parity: Parity,
    pub seed: u64,
}

pub fn corpus_instance(
    p: usize,
    q: usize,
    omega_parity: Parity,
    degree: u32,
    seed: u64,
) -> Result<CorpusInstance> {
    let chart = Chart::standard(p, q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = random_symplectic_form(&mut rng, &chart, omega_parity, degree)?;
    Ok(CorpusInstance {
        chart,
        omega,
        p,
        q,
        omega_parity,
        seed,
    })
}

/// The `(p, q, |omega|)` combinations sampled by the self-test corpus: every
/// dimensionally admissible pairing of `p` in {2,4}, `q` in {0..3}, both
/// parities (odd forms need `p = q`).
pub fn instance_grid() -> Vec<(usize, usize, Parity)> {
    let mut grid = Vec::new();
    for &p in &[2usize, 4] {
        for q in 0usize..=3 {
            grid.push((p, q, Parity::Even));
        }
    }
    grid.push((2, 2, Parity::Odd));
    grid
}
