//! Exact combinatorics of hyperplane arrangements and related order theory.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactgeom`] — rational linear algebra: hyperplanes in canonical integer
//!   form, sign evaluation, exact feasibility of sign systems, affine flats.
//! * [`arrangement`] — fans (cells) of an arrangement in a bounded region, the
//!   dual complex on chambers, gates/projections, separation distance, bounded
//!   fans, local arrangements at a point.
//! * [`salvetti`] — the Salvetti complex of an arrangement, standard
//!   subcomplexes, cellular retractions, and braid presentations of labeled
//!   graphs.
//! * [`families`] — the two arrangement families studied here (odd coordinate
//!   levels with diagonals; all-integer levels with congruence diagonals) and
//!   the classifier of central arrangements into reflection-type blocks.
//! * [`coxmodel`] — the cube model: sign-vector complexes on {−1,0,1}^n∖{0}
//!   with s/u-orders, fake-vertex calculus, subdivision of the fork-diagram
//!   sphere, products, positive part.
//! * [`posetlab`] — finite posets (bowtie-freeness, flag conditions, lattice
//!   test, order complexes) and the ℓ∞-orthoscheme realization with a sampled
//!   string metric and Helly checks.
//! * [`artinball`] — Garside normal forms for small spherical Artin groups,
//!   Cayley balls, coset-complex (Deligne-type) balls with their subdivision,
//!   and the in-ball order/cycle/flag experiments.
//! * [`report`] — deterministic JSON report containers shared by the CLI.
//!
//! Everything is exact (integer/rational arithmetic); floating point appears
//! only when printing approximate summaries.

pub mod arrangement;
pub mod artinball;
pub mod coxmodel;
pub mod exactgeom;
pub mod families;
pub mod posetlab;
pub mod report;
pub mod salvetti;
