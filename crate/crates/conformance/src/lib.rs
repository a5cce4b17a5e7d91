//! Empty; the acceptance checks live in `tests/acceptance.rs`.
