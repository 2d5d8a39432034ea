//! Presentation helpers shared by reports.

/// Decimals used for scores and weights in reports, and for tie detection when ranking.
pub const DEFAULT_PRECISION: u32 = 3;

/// Rounds half away from zero to `decimals` places.
pub fn round_to(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).round() / scale
}

/// Integer key for comparing values at `decimals` places.
pub(crate) fn rounded_key(x: f64, decimals: u32) -> i64 {
    (x * 10f64.powi(decimals as i32)).round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_to(0.07468, 4), 0.0747);
        assert_eq!(round_to(0.8817, 3), 0.882);
        assert_eq!(round_to(-0.0004, 3), -0.0);
        assert_eq!(rounded_key(0.88174, 3), rounded_key(0.88182, 3));
    }
}
