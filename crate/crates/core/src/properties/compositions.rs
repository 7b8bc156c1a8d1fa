/// All ordered compositions of `total` into positive parts that are multiples
/// of `granularity`, in canonical order: fewest parts first, then smallest
/// largest part, then lexicographic.
///
/// The single-part composition always comes first, and the most even
/// two-part split second.
pub fn compositions(total: usize, granularity: usize) -> Vec<Vec<usize>> {
    let granularity = granularity.max(1);
    if total == 0 || !total.is_multiple_of(granularity) {
        return Vec::new();
    }
    let units = total / granularity;
    let mut out = Vec::with_capacity(1 << (units - 1));
    // Bit i of `cuts` places a boundary after unit i + 1.
    for cuts in 0u64..(1u64 << (units - 1)) {
        let mut parts = Vec::with_capacity(cuts.count_ones() as usize + 1);
        let mut run = 0;
        for i in 0..units {
            run += granularity;
            if i + 1 == units || cuts >> i & 1 == 1 {
                parts.push(run);
                run = 0;
            }
        }
        out.push(parts);
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().max().cmp(&b.iter().max()))
            .then_with(|| a.cmp(b))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_of_four() {
        let c = compositions(4, 1);
        assert_eq!(c.len(), 8);
        assert_eq!(c[0], vec![4]);
        assert_eq!(c[1], vec![2, 2]);
        assert_eq!(c[2], vec![1, 3]);
        assert_eq!(c[3], vec![3, 1]);
        assert_eq!(c[7], vec![1, 1, 1, 1]);
    }

    #[test]
    fn granularity_two() {
        assert_eq!(compositions(6, 2), vec![vec![6], vec![2, 4], vec![4, 2], vec![2, 2, 2]]);
        assert!(compositions(5, 2).is_empty());
    }

    #[test]
    fn counts_match_powers_of_two() {
        for q in 1..=10 {
            assert_eq!(compositions(q, 1).len(), 1 << (q - 1));
        }
        assert!(compositions(0, 1).is_empty());
    }
}
