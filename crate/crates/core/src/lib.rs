//! Mining and analysis toolkit for microservice ownership in open-source projects.
//!
//! The pipeline runs in four stages:
//!
//! - [`miner`] reads a local git clone and attributes every commit to the
//!   microservices listed in a project manifest.
//! - [`metrics`] turns the attributed touches into ownership statistics:
//!   per-developer coverage, shared microservices, the commit-back metric,
//!   project selection and the collaboration-strategy label.
//! - [`efa`] runs exploratory factor analysis over per-contributor language
//!   contributions (Bartlett, KMO, parallel analysis, principal-axis
//!   extraction and varimax rotation).
//! - [`roles`] maps factors to developer roles with Kumar–Hassebrook
//!   similarity and profiles every contributor.
//!
//! [`report`] orchestrates the stages and writes the report bundle.

pub mod efa;
pub mod error;
pub mod languages;
pub mod metrics;
pub mod miner;
pub mod report;
pub mod roles;

pub use error::{Error, Result};
