//! Deterministic serialization, the content-addressed cache, and exports.

pub mod cache;
pub mod descriptor;
pub mod export;

pub use descriptor::GeometryDescriptor;

/// Canonical JSON: sorted keys (via the BTree-backed `serde_json::Value`),
/// no whitespace.  Every artifact this crate writes goes through here.
pub fn to_canonical_json<T: serde::Serialize>(value: &T) -> crate::Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(v.to_string())
}
