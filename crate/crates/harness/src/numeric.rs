//! Arithmetic of the discriminants of special cubic fourfolds.

/// Whether `d` is even, `d > 6`, and divisible neither by 4, nor by 9, nor
/// by an odd prime `p = 2 mod 3`.
pub fn admissible(d: u64) -> bool {
    if d <= 6 || d % 2 != 0 || d % 4 == 0 || d % 9 == 0 {
        return false;
    }
    let mut m = d;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3;
    while p * p <= m {
        if m % p == 0 {
            if p % 3 == 2 {
                return false;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 2;
    }
    !(m > 1 && m % 3 == 2)
}

/// Discriminant `3 S^2 - deg(S)^2` of a cubic fourfold containing `S`.
pub fn d_invariant(deg: i64, self_intersection: i64) -> i64 {
    3 * self_intersection - deg * deg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_admissible_values() {
        let first: Vec<u64> = (1..=50).filter(|&d| admissible(d)).collect();
        assert_eq!(first[..4], [14, 26, 38, 42]);
        assert!(!admissible(12));
        assert!(!admissible(20));
    }

    #[test]
    fn admissible_matches_sieve() {
        let prime = |p: u64| p > 1 && (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0);
        for d in 1..2000u64 {
            let bad_prime = (3..=d).any(|p| prime(p) && p % 3 == 2 && d % p == 0);
            let oracle = d % 2 == 0 && d > 6 && d % 4 != 0 && d % 9 != 0 && !bad_prime;
            assert_eq!(admissible(d), oracle, "d = {d}");
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(d_invariant(8, 34), 38);
        assert_eq!(d_invariant(5, 13), 14);
        assert_eq!(d_invariant(0, 0), 0);
    }
}
