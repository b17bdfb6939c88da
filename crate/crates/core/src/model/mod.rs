//! Model core: typed records, structural validation, and basic queries.
//!
//! The only way to obtain a [`Model`] is [`build_model`], which checks every
//! structural invariant and canonicalizes collection order, so downstream
//! analyses can assume referential integrity and determinism.

mod build;
mod types;

pub use build::{build_model, Violation, ViolationCode};
pub use types::*;

use thiserror::Error;

/// Errors from the basic model queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("E-MEDIA-HAS-NO-SERVER: link {0} is at a transmission-media layer and has no server trail")]
    MediaHasNoServer(String),
    #[error("unknown link {0}")]
    UnknownLink(String),
}

impl Model {
    /// Bottom-up topological order of layers: transmission-media layers
    /// first, then path layers as their servers complete; ties break by id.
    pub fn layer_order(&self) -> &[String] {
        &self.layer_order
    }

    /// The declared server trail of a path-layer link, ordered from
    /// `endpoint_a` to `endpoint_b`.
    pub fn server_trail(&self, link_id: &str) -> Result<&[String], QueryError> {
        let link = self
            .links
            .get(link_id)
            .ok_or_else(|| QueryError::UnknownLink(link_id.to_string()))?;
        let layer = &self.layers[&link.layer_id];
        if layer.kind == LayerKind::TransmissionMedia {
            return Err(QueryError::MediaHasNoServer(link_id.to_string()));
        }
        Ok(&link.server_trail)
    }
}
