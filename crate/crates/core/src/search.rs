//! Bisection on a monotone predicate.

use crate::error::{Error, Result};

/// Locates the point in `[lo, hi]` where `pred` switches from `false` to
/// `true`, to within `width`. Requires `pred(lo) == false` and
/// `pred(hi) == true`.
pub fn bisect<F>(mut pred: F, lo: f64, hi: f64, width: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    let (mut a, mut b) = (lo, hi);
    if pred(a)? || !pred(b)? {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > width {
        let mid = 0.5 * (a + b);
        if pred(mid)? {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Scans `steps` equal cells of `[lo, hi]` for the first point where `pred`
/// holds, then bisects inside that cell.
pub fn first_crossing<F>(mut pred: F, lo: f64, hi: f64, steps: usize, width: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    if pred(lo)? {
        return Err(Error::NoSignChange { lo, hi });
    }
    let h = (hi - lo) / steps as f64;
    let mut prev = lo;
    for k in 1..=steps {
        let x = if k == steps { hi } else { lo + h * k as f64 };
        if pred(x)? {
            return bisect(&mut pred, prev, x, width);
        }
        prev = x;
    }
    Err(Error::NoSignChange { lo, hi })
}
