//! Batch front end: bounds, screens, inequality suites, group corpora and
//! golden-file reproduction, rendered as CSV, JSON or Markdown.

pub mod cmd;
pub mod golden;

pub use cmd::run;
