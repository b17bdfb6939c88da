//! metromodel-core: a modeling engine for metro-area networks.
//!
//! The crate models a network as G.805-style layer networks (transmission
//! media at the bottom, path layers above) populated with sites, elements,
//! links, typed reference points, and operator segments. On top of that it
//! provides:
//!
//! - [`schema`]: a canonical JSON document format with full-path parse errors,
//! - [`catalog`]: ready-made access-architecture templates,
//! - [`validate`]: reference-configuration lint rules with standards anchors,
//! - [`recompose`]: serial recomposition of segments into the powered
//!   elements they enclose, plus path expansion and hidden-consumer detection,
//! - [`energy`]: measured-profile energy integration and attribution,
//! - [`mec`]: edge-compute site candidacy evaluation and ranking.

pub mod catalog;
pub mod energy;
pub mod mec;
pub mod model;
pub mod recompose;
pub mod schema;
pub mod validate;

pub use model::{build_model, Model, ModelParts};
