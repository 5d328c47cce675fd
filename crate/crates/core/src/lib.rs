//! Z2-cohomology colourings, canonical normal surfaces, layered solid tori,
//! edge flips and complexity certificates for closed orientable 3-manifold
//! triangulations.

pub mod tri;
mod uf;
pub mod cohomology;
pub mod gf2;
pub mod generators;
pub mod colouring;
pub mod normal;
pub mod lst;
pub mod flips;
pub mod report;
pub mod cli;
