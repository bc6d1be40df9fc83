//! The four shipped problem domains.

pub mod binpacking;
pub mod flowshop;
pub mod maxsat;
pub mod personnel;
