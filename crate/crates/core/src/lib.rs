//! Exact symbolic kernel for symplectic connections on coordinate
//! superdomains.
//!
//! The crate is layered bottom-up:
//!
//! * scalars: sparse polynomials over Q, rational functions compared by
//!   cross-multiplication, and Grassmann-valued superfunctions;
//! * geometry: charts, vector fields, bilinear forms, connections, torsion,
//!   the closedness residual, and linear solves against a nondegenerate form;
//! * constructions: extraction of the N-tensor from a symmetric base
//!   connection, the 1/3-correction producing a symplectic connection, and
//!   admissible deformations spanning the affine space of all of them.
//!
//! All arithmetic is exact; residuals either vanish symbolically or are
//! reported verbatim. Values are immutable and every operation is a pure
//! function, so everything here is safe to use from multiple threads.
//!
//! ```
//! use symcon_core::{
//!     fedosov_correct, verify_symplectic, BilinearForm, Chart, Connection, Parity, TwoForm,
//! };
//!
//! // omega = (1 + x1) dx1 ^ dx2 on R^{2|0}
//! let chart = Chart::standard(2, 0);
//! let scale = &chart.one() + &chart.coordinate_function(0);
//! let mut gram = vec![vec![chart.zero(); 2]; 2];
//! gram[0][1] = scale.clone();
//! gram[1][0] = -&scale;
//! let omega = TwoForm::new(BilinearForm::new(chart.clone(), Parity::Even, gram)?)?;
//!
//! // the flat connection is not compatible, but its correction is
//! let flat = Connection::flat(&chart);
//! assert!(!verify_symplectic(&flat, &omega)?.passed());
//! let corrected = fedosov_correct(&flat, &omega)?;
//! assert!(verify_symplectic(&corrected, &omega)?.passed());
//! # Ok::<(), symcon_core::Error>(())
//! ```

pub mod bilinear;
pub mod chart;
pub mod connection;
pub mod corpus;
pub mod display;
pub mod error;
pub mod fedosov;
pub mod parity;
pub mod poly;
pub mod rational;
pub mod superfunction;
pub mod vector_field;

pub use bilinear::{
    d_one_form, solve_against_omega, BilinearForm, ClosednessCheck, OmegaSolver, TwoForm,
};
pub use chart::Chart;
pub use connection::{eval_tensor21, Connection};
pub use error::{Error, Result};
pub use fedosov::{
    apply_correction, check_admissible, deform, extract_n, fedosov_correct, graded_symmetrize,
    n_antisymmetry_residual, n_cyclic_residual, random_cochain, s_from_cochain, verify_symplectic,
    IdentityCheck, NTensor, SCochain, STensor, VerificationReport,
};
pub use parity::{Parity, ParityClass};
pub use poly::Polynomial;
pub use rational::RationalFunction;
pub use superfunction::{Superfunction, Var};
pub use vector_field::VectorField;
