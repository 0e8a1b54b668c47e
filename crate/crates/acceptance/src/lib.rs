//! Intentionally empty: this crate exists for its integration tests
//! (`tests/acceptance.rs`), which run the end-to-end acceptance criteria.
