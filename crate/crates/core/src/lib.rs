//! Regularized integrals, polyhomogeneous index-set algebra, spectral zeta
//! continuation and analytic torsion on model geometries with explicit spectra.

pub mod cli;
pub mod expr;
pub mod glue;
pub mod index_set;
pub mod quad;
pub mod reg;
pub mod special;
pub mod spectra;
pub mod verify;
pub mod zeta;
