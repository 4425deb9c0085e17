//! Checked energy arithmetic. Overflow aborts with a diagnostic instead of
//! wrapping; weights are scaled by reductions so this is reachable on
//! adversarial inputs.

#[track_caller]
pub(crate) fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("energy arithmetic overflow: {a} + {b}"))
}

#[track_caller]
pub(crate) fn sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b)
        .unwrap_or_else(|| panic!("energy arithmetic overflow: {a} - {b}"))
}

#[track_caller]
pub(crate) fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("energy arithmetic overflow: {a} * {b}"))
}
