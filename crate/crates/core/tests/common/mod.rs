#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use zosc_core::{ArithTables, ZeroTable};

pub fn zeros_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

pub fn zeros() -> &'static ZeroTable {
    static Z: OnceLock<ZeroTable> = OnceLock::new();
    Z.get_or_init(|| ZeroTable::load(zeros_path(), None).expect("zero table"))
}

pub fn tables(n_max: usize) -> ArithTables {
    ArithTables::build(n_max, true).expect("arithmetic tables")
}

/// `count` log-spaced points on [lo, hi].
pub fn log_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| (lo.ln() + (hi.ln() - lo.ln()) * k as f64 / (count - 1) as f64).exp())
        .collect()
}
