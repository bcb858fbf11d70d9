//! Scalar math shim: platform implementations under `std`, `libm` otherwise.
//!
//! `sin`/`cos`/`sqrt` are the only operations whose bit patterns may vary
//! across platforms; everything else in the crate is plain IEEE-754
//! arithmetic. `abs` is implemented as a sign-bit mask so it is byte-exact
//! and identical in both build modes.

#[cfg(feature = "std")]
pub(crate) fn sin(x: f64) -> f64 {
    f64::sin(x)
}

#[cfg(feature = "std")]
pub(crate) fn cos(x: f64) -> f64 {
    f64::cos(x)
}

#[cfg(feature = "std")]
pub(crate) fn sqrt(x: f64) -> f64 {
    f64::sqrt(x)
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Absolute value via sign-bit mask: exact, branch-free, build-mode independent.
pub(crate) fn abs(x: f64) -> f64 {
    f64::from_bits(x.to_bits() & 0x7fff_ffff_ffff_ffff)
}

#[cfg(test)]
mod tests {
    use super::abs;

    #[test]
    fn abs_clears_sign_only() {
        assert_eq!(abs(-1.5).to_bits(), 1.5f64.to_bits());
        assert_eq!(abs(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(abs(f64::MIN_POSITIVE / 2.0), f64::MIN_POSITIVE / 2.0);
    }
}
