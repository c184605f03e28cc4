//! Shared fixtures for the criterion benches.

use liewedge_core::catalog;
use liewedge_core::cones::{witness_3grading, ConeQuery};
use liewedge_core::derivations::build_classified;
use liewedge_core::Rat;

/// Everything `certify_span` needs for the `+1` side of a catalog entry.
pub struct SpanFixture {
    pub query: ConeQuery,
    pub subspace: Vec<Vec<Rat>>,
    pub witness: Vec<Rat>,
}

impl SpanFixture {
    /// Panics if the entry has no grading data; benches only use entries that do.
    pub fn plus_side(name: &str) -> Self {
        let entry = catalog::get(name).expect("catalog entry");
        let query = entry.query().expect("functional is valid").expect("entry has a functional");
        let gd = entry.grading.as_ref().expect("entry has grading data");
        let (c, _, grading) =
            build_classified(&entry.algebra, gd.h.clone(), gd.d_v.clone(), gd.d_z.clone()).expect("grading derivation");
        let y = witness_3grading(&query, &grading, &c, 1, &gd.plus.jordan_units, gd.plus.central.as_deref())
            .expect("witness");
        SpanFixture { subspace: grading.plus.clone(), witness: y.coords().to_vec(), query }
    }
}
