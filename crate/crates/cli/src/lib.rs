//! Command-line front end: image ingestion, cubical complexes with the
//! geometric vector field, homology reports with generators, and demo
//! commands for filling sequences and Eilenberg-Zilber checks.

pub mod cubical;
pub mod image;
pub mod matrixfile;
pub mod report;
