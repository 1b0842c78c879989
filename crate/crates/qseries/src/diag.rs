//! Lightweight work counters for truncation diagnostics.
//!
//! The verification harness reports how many series terms and infinite
//! product factors each sample consumed. Counters are thread-local, so
//! concurrent verification of distinct samples on separate threads stays
//! correct; the harness resets them around each evaluation.

use std::cell::Cell;

thread_local! {
    static SERIES_TERMS: Cell<u64> = const { Cell::new(0) };
    static PRODUCT_FACTORS: Cell<u64> = const { Cell::new(0) };
}

pub fn reset() {
    SERIES_TERMS.with(|c| c.set(0));
    PRODUCT_FACTORS.with(|c| c.set(0));
}

pub fn add_series_terms(n: u64) {
    SERIES_TERMS.with(|c| c.set(c.get() + n));
}

pub fn add_product_factors(n: u64) {
    PRODUCT_FACTORS.with(|c| c.set(c.get() + n));
}

/// (series terms, product factors) accumulated since the last reset.
pub fn snapshot() -> (u64, u64) {
    (
        SERIES_TERMS.with(|c| c.get()),
        PRODUCT_FACTORS.with(|c| c.get()),
    )
}
