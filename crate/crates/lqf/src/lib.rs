//! IO companion to `lqf-core`: JSON file formats, shipped proof fixtures,
//! and seeded random structure sampling for the property suites.

pub mod fixtures;
pub mod json;
pub mod sample;

/// Report schema tag carried by every JSON report the CLI emits.
pub const SCHEMA: &str = "lqf/1";
