//! Size bounds for the exponential enumerations.

/// Largest ground set the complex code enumerates unless overridden.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Hard ceiling imposed by the 64-bit vertex masks.
pub const MAX_ENUMERATION_BOUND: usize = 64;

/// `LBCA_MAX_N` if it is set to a number, otherwise the default, capped at
/// [`MAX_ENUMERATION_BOUND`].
pub fn enumeration_bound() -> usize {
    std::env::var("LBCA_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
        .min(MAX_ENUMERATION_BOUND)
}
