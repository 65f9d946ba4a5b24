use num_integer::Integer;

use super::Rat;

/// Every reduced `p/q` with `max(|p|, q) ≤ height_bound`, ordered by
/// (height, numerator, denominator). Zero leads the list: it is ranked as
/// height 0 here.
pub fn enumerate_rationals(height_bound: u64) -> Vec<Rat> {
    let mut out = Vec::new();
    if height_bound >= 1 {
        out.push(Rat::zero());
    }
    for h in 1..=height_bound as i64 {
        let mut level: Vec<(i64, i64)> = Vec::new();
        // denominator exactly h
        for p in -h..=h {
            if p != 0 && p.gcd(&h) == 1 {
                level.push((p, h));
            }
        }
        // numerator ±h with smaller denominator
        for q in 1..h {
            if h.gcd(&q) == 1 {
                level.push((h, q));
                level.push((-h, q));
            }
        }
        level.sort_unstable();
        out.extend(level.into_iter().map(|(p, q)| Rat::frac(p, q)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        let show = |n| enumerate_rationals(n).iter().map(|r| r.to_string()).collect::<Vec<_>>();
        assert_eq!(show(1), ["0", "-1", "1"]);
        assert_eq!(show(2), ["0", "-1", "1", "-2", "-1/2", "1/2", "2"]);
        assert!(enumerate_rationals(0).is_empty());
    }

    #[test]
    fn cardinality_matches_brute_force() {
        for n in 1..=50i64 {
            let mut brute = std::collections::BTreeSet::new();
            for p in -n..=n {
                for q in 1..=n {
                    brute.insert(Rat::frac(p, q));
                }
            }
            let got = enumerate_rationals(n as u64);
            assert_eq!(got.len(), brute.len(), "n = {n}");
            let set: std::collections::BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len());
        }
    }

    #[test]
    fn nested_prefixes() {
        for n in 1..20 {
            let a = enumerate_rationals(n);
            let b = enumerate_rationals(n + 1);
            assert_eq!(&b[..a.len()], &a[..]);
        }
    }
}
