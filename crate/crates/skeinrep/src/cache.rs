//! Shared cyclotomic fields, keyed by modulus.
//!
//! Entries are inserted once and only read afterwards.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use skeinrep_core::{CycloField, RootChoice, RootField};

fn fields() -> &'static RwLock<HashMap<u32, Arc<CycloField>>> {
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    FIELDS.get_or_init(Default::default)
}

pub fn cyclo_field(modulus: u32) -> Arc<CycloField> {
    if let Some(f) = fields().read().unwrap_or_else(|e| e.into_inner()).get(&modulus) {
        return f.clone();
    }
    let mut w = fields().write().unwrap_or_else(|e| e.into_inner());
    w.entry(modulus).or_insert_with(|| CycloField::new(modulus)).clone()
}

/// A [`RootField`] sharing its reduction tables with every other root of
/// the same order.
pub fn field_for(root: RootChoice) -> RootField {
    RootField::with_field(cyclo_field(root.modulus()), root).expect("modulus matches by construction")
}
