//! The daQ vocabulary: namespaces, the built-in TBox and data structure
//! definition, RDFS-lite closure, and extension loading.

mod extension;
pub mod ns;
mod tbox;

pub use extension::{
    load_extension, shipped_catalog, shipped_catalog_turtle, shipped_descriptors, ExtensionDefect,
    ExtensionError, MetricDescriptor,
};
pub use tbox::{builtin_daq_tbox, dsd_definition, instances_of, TBox};
