//! Scenario runner, ad-hoc queries and collection files for the
//! `towercoh` engine.

pub mod collection_file;
pub mod report;
pub mod scenarios;
