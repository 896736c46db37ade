//! Instance files, reports and fuzzing behind the `ellgroup` binary.

pub mod format;
pub mod fuzz;
pub mod report;

/// Frame-size cap, overridable with `ELLGROUP_FRAME_CAP`.
pub fn frame_cap_from_env() -> usize {
    std::env::var("ELLGROUP_FRAME_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(ellgroup::DEFAULT_FRAME_CAP)
}
