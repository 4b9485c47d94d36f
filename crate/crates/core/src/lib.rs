//! Dataset quality metadata as RDF Data Cube observations in named graphs.

pub mod analytics;
pub mod charts;
pub mod metrics;
pub mod mock_http;
pub mod rdf;
pub mod store;
pub mod vocab;
