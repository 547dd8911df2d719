use std::fmt::Write as _;

use crate::ir::{print_program, Program};
use crate::query::Query;

/// Program text followed by each query as a `?-` line, for cross-checking
/// with an external ASP system.
pub fn emit_lp(p: &Program, queries: &[&Query]) -> String {
    let mut out = print_program(p);
    for q in queries {
        let _ = writeln!(out, "% {} variant {}", q.confidence.tag(), q.variant_index);
        let _ = writeln!(out, "{q}");
    }
    out
}
