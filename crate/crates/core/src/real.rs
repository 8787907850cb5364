//! Small helpers for arbitrary-precision floats.

use rug::Float;

/// New float of the given precision from anything `Float::with_val` accepts.
pub(crate) fn fl<T>(prec: u32, value: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(prec, value)
}

/// Zero at the given precision.
pub(crate) fn zero(prec: u32) -> Float {
    Float::new(prec)
}

/// `2^(-bits)` as a float, used for relative stopping thresholds.
pub(crate) fn eps(prec: u32, bits: u32) -> Float {
    let mut e = Float::with_val(prec, 1u32);
    e >>= bits;
    e
}

/// n! at the given precision.
pub(crate) fn factorial(prec: u32, n: u32) -> Float {
    Float::with_val(prec, Float::factorial(n))
}

/// Relative difference |a - b| / max(|a|, |b|), as f64. Zero when both vanish.
pub fn rel_diff(a: &Float, b: &Float) -> f64 {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let mag = {
        let aa = Float::with_val(prec, a.abs_ref());
        let bb = Float::with_val(prec, b.abs_ref());
        aa.max(&bb)
    };
    if mag.is_zero() {
        return 0.0;
    }
    Float::with_val(prec, diff / mag).to_f64()
}
