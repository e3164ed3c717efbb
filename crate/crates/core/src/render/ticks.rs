//! Nice axis ticks on the 1/2/5 ladder.

/// Domain and tick positions for a linear axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ticks {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

const MIN_TICKS: usize = 5;
const MAX_TICKS: usize = 8;

fn candidates(span: f64) -> impl Iterator<Item = f64> {
    let top = span.log10().ceil() as i32 + 1;
    (top - 4..=top).rev().flat_map(|e| [5.0, 2.0, 1.0].map(|m| m * 10f64.powi(e)))
}

fn ticks_between(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    // k * step keeps values free of accumulated error; + 0.0 folds -0 into 0
    (first..=last).map(|k| k as f64 * step + 0.0).collect()
}

/// Between 5 and 8 round ticks covering `[lo, hi]`. The returned domain is the
/// data range, widened to the outer ticks when that is what keeps the count in range.
pub fn nice_ticks(lo: f64, hi: f64) -> Ticks {
    let (mut lo, mut hi) = if lo.is_finite() && hi.is_finite() { (lo.min(hi), lo.max(hi)) } else { (0.0, 1.0) };
    if hi - lo <= f64::EPSILON * lo.abs().max(hi.abs()).max(1e-300) {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.5 };
        lo -= pad;
        hi += pad;
    }
    let span = hi - lo;
    let fits = |n: usize| (MIN_TICKS..=MAX_TICKS).contains(&n);
    let mut fallback: Option<Ticks> = None;
    for step in candidates(span) {
        let inner = ticks_between(lo, hi, step);
        if fits(inner.len()) {
            return Ticks { lo, hi, step, values: inner };
        }
        let (wlo, whi) = ((lo / step).floor() * step, (hi / step).ceil() * step);
        let outer = ticks_between(wlo, whi, step);
        if fits(outer.len()) {
            return Ticks { lo: wlo, hi: whi, step, values: outer };
        }
        if fallback.is_none() && inner.len() > MAX_TICKS {
            fallback = Some(Ticks { lo, hi, step, values: inner });
        }
    }
    fallback.unwrap_or(Ticks { lo, hi, step: span, values: vec![lo, hi] })
}

/// Tick label with as many decimals as the step needs.
pub fn format_tick(v: f64, step: f64) -> String {
    let mag = v.abs().max(step.abs());
    if mag != 0.0 && !(1e-4..1e6).contains(&mag) {
        return format!("{v:.1e}");
    }
    let decimals = (-step.abs().log10().floor()).max(0.0) as usize;
    format!("{:.*}", decimals, v + 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn on_ladder(step: f64) -> bool {
        let e = step.log10().floor();
        let m = step / 10f64.powf(e);
        [1.0, 2.0, 5.0, 10.0].iter().any(|c| (m - c).abs() < 1e-9)
    }

    #[test]
    fn simple_ranges() {
        let t = nice_ticks(0.0, 100.0);
        assert_eq!(t.values, [0.0, 20.0, 40.0, 60.0, 80.0, 100.0]);
        let t = nice_ticks(0.5, 23.0);
        assert!((5..=8).contains(&t.values.len()), "{t:?}");
        let t = nice_ticks(3.0, 3.0);
        assert!(t.lo < 3.0 && t.hi > 3.0);
        assert_eq!(format_tick(0.30000000000000004, 0.1), "0.3");
        assert_eq!(format_tick(-0.0, 1.0), "0");
    }

    proptest! {
        #[test]
        fn count_and_ladder(lo in -1e6f64..1e6, span in 1e-6f64..1e6) {
            let t = nice_ticks(lo, lo + span);
            prop_assert!((5..=8).contains(&t.values.len()), "{:?}", t);
            prop_assert!(on_ladder(t.step));
            prop_assert!(t.lo <= lo && t.hi >= lo + span);
            for v in &t.values {
                prop_assert!(*v >= t.lo - 1e-9 * span && *v <= t.hi + 1e-9 * span);
            }
        }
    }
}
