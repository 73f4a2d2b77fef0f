/// Deterministic fresh-name generation: strip trailing digits from `base`
/// and append the smallest positive counter not rejected by `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1u64..)
        .map(|n| format!("{stem}{n}"))
        .find(|candidate| !taken(candidate))
        .expect("counter space exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_skip_taken_names() {
        assert_eq!(fresh_name("b", |n| n == "b1"), "b2");
        assert_eq!(fresh_name("x12", |_| false), "x1");
        assert_eq!(fresh_name("7", |_| false), "v1");
    }
}
