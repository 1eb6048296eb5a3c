//! Exact computations with the operad structures on cochains of a finite
//! poset: simplicial cochains of the nerve, relative Hochschild cochains of
//! the incidence algebra, the isomorphism between them, and formal
//! deformations of the incidence algebra classified by Witt-vector
//! cohomology.

pub mod cli;
pub mod deform;
pub mod error;
pub mod gsiso;
pub mod hochschild;
pub mod io;
pub mod linalg;
pub mod numkit;
pub mod opcore;
pub mod poset;
pub mod simplicial;
pub mod suites;
