//! Spec files, corpora and property suites behind the `laxcomma` binary.

pub mod commands;
pub mod corpus;
pub mod env;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod suites;

pub use env::{load_spec, validate_spec, Env};
pub use fixtures::{kz_fixture, KzFixture};
pub use format::{parse_spec_file, serialize_spec_file, Block, SpecFile};
pub use report::{Record, SuiteReport, Totals};
pub use suites::{run_suite, Mutation, SuiteOptions, SUITES};
