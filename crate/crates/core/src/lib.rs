pub mod ir;
pub mod ingest;
pub mod kbgen;
pub mod ontology;
pub mod query;
pub mod solver;
pub mod pipeline;
pub mod eval;
