//! Exact generating functions for distance statistics of planar maps, with
//! independent brute-force oracles and scaling-limit numerics.
//!
//! The crate has three layers:
//! - exact series arithmetic over rationals or z-polynomials ([`series`], [`ring`]),
//!   with order-by-order solvers for the implicit parametrizations ([`params`]);
//! - closed-form evaluation of the two- and three-point generating functions and
//!   verification of the recursion identities that characterize them
//!   ([`formulas`], [`identities`]);
//! - ground truth and applications: exhaustive enumeration of rooted planar maps
//!   ([`oracle`]), the local-rule correspondences on labelled quadrangulations
//!   ([`bijection`]), and numeric scaling-limit evaluation ([`scaling`]).

pub mod bijection;
pub mod formulas;
pub mod goldens;
pub mod identities;
pub mod oracle;
pub mod params;
pub mod ring;
pub mod scaling;
pub mod series;
