use std::sync::OnceLock;

/// Expensive invariant checks run in debug builds, or in release when
/// `GB_DEBUG_ASSERT=1` is set.
pub(crate) fn strict_checks() -> bool {
    static FORCED: OnceLock<bool> = OnceLock::new();
    cfg!(debug_assertions)
        || *FORCED.get_or_init(|| std::env::var_os("GB_DEBUG_ASSERT").is_some_and(|v| v == "1"))
}
