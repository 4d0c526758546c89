//! Exact computations around maximal automorphisms of Calabi-Yau threefolds:
//! K3 lattice isometries and their eigenspace forms, complex-ball period
//! points, weight-3 Hodge structures built from K3 × elliptic quotients,
//! monodromy block tests and the classification of admissible actions.

pub mod classify;
pub mod error;
pub mod exactnum;
pub mod forms;
pub mod hodge;
pub mod intlin;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod monodromy;
pub mod polyalg;
pub mod quotient;
pub mod report;
pub mod sampling;
pub mod suite;

pub use error::{Error, Result};
