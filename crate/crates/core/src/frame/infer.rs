use super::DType;

pub const DEFAULT_NUMERIC_THRESHOLD: f64 = 0.95;

/// Parse a decimal or scientific literal, accepting `inf`/`-inf`. `NaN` is rejected.
pub fn parse_number(raw: &str) -> Option<f64> {
    let t = raw.trim();
    if t.is_empty() {
        return None;
    }
    match t.parse::<f64>() {
        Ok(v) if !v.is_nan() => Some(v),
        _ => None,
    }
}

/// Numerical iff at least 95% of the (non-missing) values parse as numbers.
pub fn infer_dtype<S: AsRef<str>>(raw_values: &[S]) -> DType {
    infer_dtype_with_threshold(raw_values, DEFAULT_NUMERIC_THRESHOLD)
}

pub fn infer_dtype_with_threshold<S: AsRef<str>>(raw_values: &[S], threshold: f64) -> DType {
    if raw_values.is_empty() {
        return DType::Categorical;
    }
    let parsed = raw_values.iter().filter(|s| parse_number(s.as_ref()).is_some()).count();
    if parsed as f64 >= threshold * raw_values.len() as f64 {
        DType::Numerical
    } else {
        DType::Categorical
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(infer_dtype(&["1.5", "2", "-3e2"]), DType::Numerical);
        assert_eq!(infer_dtype(&["a", "b", "a"]), DType::Categorical);
        let empty: [&str; 0] = [];
        assert_eq!(infer_dtype(&empty), DType::Categorical);
        assert_eq!(infer_dtype(&["inf", "-inf", "1"]), DType::Numerical);
    }

    #[test]
    fn ninety_five_percent_boundary() {
        // oracle: successes / non-missing >= 0.95
        let mut v: Vec<String> = (0..96).map(|i| i.to_string()).collect();
        v.extend(["a", "b", "c", "d"].iter().map(|s| s.to_string()));
        assert_eq!(infer_dtype(&v), DType::Numerical);
        let mut w: Vec<String> = (0..94).map(|i| i.to_string()).collect();
        w.extend((0..6).map(|i| format!("x{i}")));
        assert_eq!(infer_dtype(&w), DType::Categorical);
    }

    proptest! {
        #[test]
        fn permutation_invariant(mut vals in proptest::collection::vec(prop_oneof!["[0-9]{1,3}", "[a-c]{1,2}"], 1..60), seed in any::<u64>()) {
            let before = infer_dtype(&vals);
            let n = vals.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(before, infer_dtype(&vals));
        }
    }
}
