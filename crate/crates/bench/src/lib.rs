//! Inputs shared by the benchmarks.

use std::sync::Arc;

use zgroupoid::builders::{pair_groupoid, GroupTable, ProductForm};
use zgroupoid::{Groupoid, Universe};

pub fn pair(n: usize) -> Arc<Groupoid> {
    let x = Universe::new("X", (1..=n).map(|i| i.to_string())).expect("distinct names");
    Arc::new(pair_groupoid(&x).expect("pair groupoid"))
}

/// `E × Z_k × E` on `n` units.
pub fn product_form(n: usize, k: usize) -> Arc<Groupoid> {
    let e = Arc::new(Universe::new("E", (1..=n).map(|i| format!("u{i}"))).expect("distinct names"));
    let form = ProductForm::new(e, GroupTable::cyclic(k)).expect("product form");
    Arc::new(form.groupoid().clone())
}
